//! Deliberately broken queue variants.
//!
//! Each mutant forks one decision of the real implementations: a payment
//! skipped, doubled, or misplaced, or the two lists swapped. The checkers
//! must refute every one of them; a checker that passes a mutant is not
//! measuring anything. Mutant states keep their own copy of the queue
//! logic so the fault survives through successor states.

use std::sync::Arc;

use crate::batched::{BatchedState, batched_queue, potential};
use crate::cost::Cost;
use crate::queue::{Element, QueueBehavior, QueueObj};
use crate::spec_queue::spec_queue;

/// The built-in mutant set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// Batched queue whose quit never pays the stored potential.
    FreeQuit,
    /// Batched queue whose batch reversal forgets to charge.
    NoReversalCost,
    /// Batched queue whose batch reversal charges twice over.
    DoubleReversalCost,
    /// Specification queue that charges two per enqueue instead of one.
    CostlyEnqueue,
    /// Batched queue built with back and front lists swapped.
    SwappedLists,
}

impl Mutant {
    pub const ALL: [Mutant; 5] = [
        Mutant::FreeQuit,
        Mutant::NoReversalCost,
        Mutant::DoubleReversalCost,
        Mutant::CostlyEnqueue,
        Mutant::SwappedLists,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Mutant::FreeQuit => "mutant-free-quit",
            Mutant::NoReversalCost => "mutant-no-reversal-cost",
            Mutant::DoubleReversalCost => "mutant-double-reversal-cost",
            Mutant::CostlyEnqueue => "mutant-costly-enqueue",
            Mutant::SwappedLists => "mutant-swapped-lists",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            Mutant::FreeQuit => "quit never pays the stored potential",
            Mutant::NoReversalCost => "batch reversal forgets to charge",
            Mutant::DoubleReversalCost => "batch reversal charges twice over",
            Mutant::CostlyEnqueue => "specification enqueue charges two",
            Mutant::SwappedLists => "back and front lists swapped at construction",
        }
    }

    pub fn from_name(name: &str) -> Option<Mutant> {
        Mutant::ALL.into_iter().find(|m| m.name() == name)
    }

    /// The flush-equivalence claim pair for this mutant over the given
    /// initial lists. Four mutants replace the batched side; the costly
    /// enqueue replaces the specification side.
    pub fn claim_pair(self, back: &[Element], front: &[Element]) -> (QueueObj, QueueObj) {
        let state = BatchedState::new(back, front);
        let rhs = spec_queue(state.contents()).step(potential(back, front));
        let lhs = match self {
            Mutant::FreeQuit => QueueObj::from_behavior(FreeQuitState(state)),
            Mutant::NoReversalCost => QueueObj::from_behavior(NoReversalCostState(state)),
            Mutant::DoubleReversalCost => QueueObj::from_behavior(DoubleReversalCostState(state)),
            Mutant::SwappedLists => batched_queue(front, back),
            Mutant::CostlyEnqueue => {
                let rhs = QueueObj::from_behavior(CostlyEnqueueList {
                    items: state.contents(),
                })
                .step(potential(back, front));
                return (batched_queue(back, front), rhs);
            }
        };
        (lhs, rhs)
    }
}

#[derive(Debug, Clone)]
struct FreeQuitState(BatchedState);

impl QueueBehavior for FreeQuitState {
    fn quit_cost(&self) -> Cost {
        Cost::ZERO
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let (back, front) = push_back(&self.0, elem);
        (
            Cost::ZERO,
            Arc::new(FreeQuitState(BatchedState::new(back, front))),
        )
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        let (cost, elem, back, front) = pop(&self.0);
        (
            cost,
            elem,
            Arc::new(FreeQuitState(BatchedState::new(back, front))),
        )
    }

    fn potential(&self) -> Cost {
        self.0.potential()
    }
}

#[derive(Debug, Clone)]
struct NoReversalCostState(BatchedState);

impl QueueBehavior for NoReversalCostState {
    fn quit_cost(&self) -> Cost {
        self.0.quit_cost()
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let (back, front) = push_back(&self.0, elem);
        (
            Cost::ZERO,
            Arc::new(NoReversalCostState(BatchedState::new(back, front))),
        )
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        let (_paid, elem, back, front) = pop(&self.0);
        (
            Cost::ZERO,
            elem,
            Arc::new(NoReversalCostState(BatchedState::new(back, front))),
        )
    }

    fn potential(&self) -> Cost {
        self.0.potential()
    }
}

#[derive(Debug, Clone)]
struct DoubleReversalCostState(BatchedState);

impl QueueBehavior for DoubleReversalCostState {
    fn quit_cost(&self) -> Cost {
        self.0.quit_cost()
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let (back, front) = push_back(&self.0, elem);
        (
            Cost::ZERO,
            Arc::new(DoubleReversalCostState(BatchedState::new(back, front))),
        )
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        let (paid, elem, back, front) = pop(&self.0);
        (
            paid + paid,
            elem,
            Arc::new(DoubleReversalCostState(BatchedState::new(back, front))),
        )
    }

    fn potential(&self) -> Cost {
        self.0.potential()
    }
}

#[derive(Debug, Clone)]
struct CostlyEnqueueList {
    items: Vec<Element>,
}

impl QueueBehavior for CostlyEnqueueList {
    fn quit_cost(&self) -> Cost {
        Cost::ZERO
    }

    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>) {
        let mut items = self.items.clone();
        items.push(elem);
        (Cost::new(2), Arc::new(CostlyEnqueueList { items }))
    }

    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>) {
        match self.items.split_first() {
            None => (
                Cost::ZERO,
                None,
                Arc::new(CostlyEnqueueList { items: Vec::new() }),
            ),
            Some((head, tail)) => (
                Cost::ZERO,
                Some(*head),
                Arc::new(CostlyEnqueueList {
                    items: tail.to_vec(),
                }),
            ),
        }
    }
}

/// Standard batched enqueue on a mutant's state.
fn push_back(state: &BatchedState, elem: Element) -> (Vec<Element>, Vec<Element>) {
    let mut back = Vec::with_capacity(state.back().len() + 1);
    back.push(elem);
    back.extend_from_slice(state.back());
    (back, state.front().to_vec())
}

/// Standard batched dequeue on a mutant's state: the honest reversal cost,
/// the element, and the successor lists.
fn pop(state: &BatchedState) -> (Cost, Option<Element>, Vec<Element>, Vec<Element>) {
    if let Some((head, tail)) = state.front().split_first() {
        return (
            Cost::ZERO,
            Some(*head),
            state.back().to_vec(),
            tail.to_vec(),
        );
    }
    let mut reversed: Vec<Element> = state.back().iter().rev().copied().collect();
    if reversed.is_empty() {
        return (Cost::ZERO, None, Vec::new(), Vec::new());
    }
    let paid = Cost::new(state.back().len() as u64);
    let head = reversed.remove(0);
    (paid, Some(head), Vec::new(), reversed)
}
