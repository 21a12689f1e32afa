//! The batched queue: two lists, amortized unit-cost operations.
//!
//! Elements arrive on the back list (most recent first) for free and leave
//! from the front list (next out first) for free. When the front runs dry
//! the whole back list is reversed in one batch, paying its length. The
//! stored potential of a state is the back-list length: exactly the cost
//! of the reversal that state may still owe. Retiring the queue pays out
//! the remaining potential, so no cost ever escapes the accounting.

use std::sync::Arc;

use crate::cost::Cost;
use crate::queue::{Element, QueueBehavior, QueueObj};

/// Back list (most recent at the head) and front list (next out at the head).
/// Logical contents are `front ++ reverse(back)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BatchedState {
    back: Vec<Element>,
    front: Vec<Element>,
}

impl BatchedState {
    pub fn new(back: impl Into<Vec<Element>>, front: impl Into<Vec<Element>>) -> BatchedState {
        BatchedState {
            back: back.into(),
            front: front.into(),
        }
    }

    pub fn back(&self) -> &[Element] {
        &self.back
    }

    pub fn front(&self) -> &[Element] {
        &self.front
    }

    /// Contents in dequeue order.
    pub fn contents(&self) -> Vec<Element> {
        let mut items = self.front.clone();
        items.extend(self.back.iter().rev());
        items
    }
}

/// Stored potential: the length of the back list. The front list never
/// owes anything.
pub fn potential(back: &[Element], _front: &[Element]) -> Cost {
    Cost::new(back.len() as u64)
}

impl QueueBehavior for BatchedState {
    fn quit_cost(&self) -> Cost {
        potential(&self.back, &self.front)
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let mut back = Vec::with_capacity(self.back.len() + 1);
        back.push(elem);
        back.extend_from_slice(&self.back);
        (
            Cost::ZERO,
            Arc::new(BatchedState {
                back,
                front: self.front.clone(),
            }),
        )
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        if let Some((head, tail)) = self.front.split_first() {
            let rest = BatchedState {
                back: self.back.clone(),
                front: tail.to_vec(),
            };
            return (Cost::ZERO, Some(*head), Arc::new(rest));
        }
        let mut reversed: Vec<Element> = self.back.iter().rev().copied().collect();
        if reversed.is_empty() {
            return (Cost::ZERO, None, Arc::new(BatchedState::new([], [])));
        }
        let paid = Cost::new(self.back.len() as u64);
        let head = reversed.remove(0);
        (
            paid,
            Some(head),
            Arc::new(BatchedState {
                back: Vec::new(),
                front: reversed,
            }),
        )
    }

    fn potential(&self) -> Cost {
        potential(&self.back, &self.front)
    }
}

/// A batched queue over the given lists, with no pending cost.
pub fn batched_queue(back: impl Into<Vec<Element>>, front: impl Into<Vec<Element>>) -> QueueObj {
    QueueObj::from_behavior(BatchedState::new(back, front))
}
