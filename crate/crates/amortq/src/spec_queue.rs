//! The single-list queue that serves as the cost specification.
//!
//! One element list, oldest first. Enqueue appends and charges a latent
//! unit cost; dequeue hands out the head for free; quit is free. Under
//! this discipline the total cost of any run equals the number of
//! enqueues, which is the budget the batched queue must amortize into.

use std::sync::Arc;

use crate::cost::Cost;
use crate::queue::{Element, QueueBehavior, QueueObj};

#[derive(Debug, Clone)]
struct SpecList {
    items: Vec<Element>,
}

impl QueueBehavior for SpecList {
    fn quit_cost(&self) -> Cost {
        Cost::ZERO
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let mut items = self.items.clone();
        items.push(elem);
        (Cost::new(1), Arc::new(SpecList { items }))
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        match self.items.split_first() {
            None => (Cost::ZERO, None, Arc::new(SpecList { items: Vec::new() })),
            Some((head, tail)) => (
                Cost::ZERO,
                Some(*head),
                Arc::new(SpecList {
                    items: tail.to_vec(),
                }),
            ),
        }
    }
}

/// A specification queue holding `items`, oldest first, with no pending cost.
pub fn spec_queue(items: impl Into<Vec<Element>>) -> QueueObj {
    QueueObj::from_behavior(SpecList {
        items: items.into(),
    })
}
