//! Seeded random inputs for the randomized checks.
//!
//! Everything here is deterministic in the seed, so a failing sample can
//! be reproduced by rerunning with the same one.

use rand::Rng;
use rand::SeedableRng;
use rand::rngs::StdRng;

use crate::batched::batched_queue;
use crate::cost::Cost;
use crate::program::Program;
use crate::queue::{Alphabet, Element, QueueObj};
use crate::spec_queue::spec_queue;
use crate::trace::TraceOp;

pub fn rng_from_seed(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_cost(rng: &mut impl Rng, max: u64) -> Cost {
    Cost::new(rng.random_range(0..=max))
}

pub fn random_element(rng: &mut impl Rng, alphabet: Alphabet) -> Element {
    Element::new(rng.random_range(0..alphabet.size()))
}

pub fn random_list(rng: &mut impl Rng, alphabet: Alphabet, max_len: usize) -> Vec<Element> {
    let len = rng.random_range(0..=max_len);
    (0..len).map(|_| random_element(rng, alphabet)).collect()
}

/// A specification or batched queue over random contents, possibly with
/// some cost already pending.
pub fn random_queue(rng: &mut impl Rng, alphabet: Alphabet) -> QueueObj {
    let mut queue = if rng.random_bool(0.5) {
        spec_queue(random_list(rng, alphabet, 6))
    } else {
        batched_queue(random_list(rng, alphabet, 4), random_list(rng, alphabet, 4))
    };
    for _ in 0..rng.random_range(0..=2u32) {
        queue = queue.step(random_cost(rng, 100));
    }
    queue
}

/// A program with at most `max_ops` instructions and continuation costs
/// drawn from `0..=3`.
pub fn random_program(rng: &mut impl Rng, max_ops: usize, alphabet: Alphabet) -> Program {
    if max_ops == 0 || rng.random_range(0..4u32) == 0 {
        return Program::Return(());
    }
    if rng.random_bool(0.5) {
        return Program::Enqueue {
            elem: random_element(rng, alphabet),
            rest: Box::new(random_program(rng, max_ops - 1, alphabet)),
        };
    }
    // Split the remaining budget across the none branch and one branch
    // per element, so the whole tree stays within `max_ops`.
    let mut remaining = max_ops - 1;
    let mut budgets = Vec::with_capacity(alphabet.size() as usize + 1);
    for _ in 0..=alphabet.size() {
        let taken = rng.random_range(0..=remaining);
        remaining -= taken;
        budgets.push(taken);
    }
    Program::Dequeue {
        cont_cost: random_cost(rng, 3),
        on_none: Box::new(random_program(rng, budgets[0], alphabet)),
        on_some: budgets[1..]
            .iter()
            .map(|&budget| random_program(rng, budget, alphabet))
            .collect(),
    }
}

/// A random enqueue/dequeue sequence for trace runs.
pub fn random_ops(rng: &mut impl Rng, len: usize, alphabet: Alphabet) -> Vec<TraceOp> {
    (0..len)
        .map(|_| {
            if rng.random_bool(0.5) {
                TraceOp::Enqueue {
                    elem: random_element(rng, alphabet),
                }
            } else {
                TraceOp::Dequeue
            }
        })
        .collect()
}
