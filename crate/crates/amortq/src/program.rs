//! Client programs over the queue interface, and their evaluation.
//!
//! A [`Program`] is a finite tree of queue instructions: push an element,
//! pop with one continuation per possible outcome, or stop and retire the
//! queue. Evaluating a program against a queue runs one root-to-leaf path
//! and produces a single [`Comp`]: the answer plus every cost the queue
//! emitted along the way, ending with the final quit.
//!
//! Programs are how equivalence claims get cashed out. Two queues that an
//! observation-by-observation check calls equivalent should be impossible
//! to tell apart by any program, and a disagreement found by either method
//! should be reproducible by the other. [`theorem2_check`] runs both sides
//! over a bounded program supply and reports whether they agree.

use std::collections::BTreeMap;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::cost::{Comp, Cost};
use crate::equiv::{EquivReport, Verdict, approx_check};
use crate::queue::{Alphabet, Element, QueueObj};

/// One queue-instruction tree. `Dequeue` carries a continuation for the
/// empty case and one for every element of the alphabet; `cont_cost` is
/// charged whenever the dequeue runs, on top of what the queue emits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Program<A = ()> {
    Return(A),
    Enqueue {
        elem: Element,
        rest: Box<Program<A>>,
    },
    Dequeue {
        cont_cost: Cost,
        on_none: Box<Program<A>>,
        on_some: Vec<Program<A>>,
    },
}

impl<A> Program<A> {
    /// Number of instruction nodes: every `Enqueue` and `Dequeue` in the
    /// tree. Terminal `Return`s are free.
    pub fn op_nodes(&self) -> usize {
        match self {
            Program::Return(_) => 0,
            Program::Enqueue { rest, .. } => 1 + rest.op_nodes(),
            Program::Dequeue {
                on_none, on_some, ..
            } => 1 + on_none.op_nodes() + on_some.iter().map(Program::op_nodes).sum::<usize>(),
        }
    }

    /// Check that every enqueued element fits the alphabet and every
    /// dequeue branch table covers it exactly.
    pub fn validate(&self, alphabet: Alphabet) -> Result<(), ProgramError> {
        match self {
            Program::Return(_) => Ok(()),
            Program::Enqueue { elem, rest } => {
                if !alphabet.contains(*elem) {
                    return Err(ProgramError::ElementOutOfRange {
                        elem: elem.value(),
                        size: alphabet.size(),
                    });
                }
                rest.validate(alphabet)
            }
            Program::Dequeue {
                on_none, on_some, ..
            } => {
                if on_some.len() != alphabet.size() as usize {
                    return Err(ProgramError::BranchTableSize {
                        got: on_some.len(),
                        size: alphabet.size(),
                    });
                }
                on_none.validate(alphabet)?;
                on_some.iter().try_for_each(|p| p.validate(alphabet))
            }
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProgramError {
    #[error("element {elem} does not fit an alphabet of size {size}")]
    ElementOutOfRange { elem: u8, size: u8 },
    #[error("dequeue branch table has {got} entries, alphabet has {size}")]
    BranchTableSize { got: usize, size: u8 },
}

/// Run the program against the queue: enqueues and dequeues drive the
/// queue, the final return retires it. The result carries the sum of all
/// emitted costs, continuation costs, and the closing quit.
pub fn evaluate<A: Clone>(program: &Program<A>, queue: &QueueObj) -> Comp<A> {
    match program {
        Program::Return(value) => Comp::new(queue.quit(), value.clone()),
        Program::Enqueue { elem, rest } => evaluate(rest, &queue.enqueue(*elem)),
        Program::Dequeue {
            cont_cost,
            on_none,
            on_some,
        } => {
            let d = queue.dequeue();
            let branch = match d.elem {
                None => on_none.as_ref(),
                Some(elem) => on_some
                    .get(elem.value() as usize)
                    .expect("dequeue branch table must cover the alphabet"),
            };
            evaluate(branch, &d.rest).step(d.cost + *cont_cost)
        }
    }
}

/// Charging a queue before a run is the same as charging the run's result:
/// `evaluate(p, q.step(c)) == evaluate(p, q).step(c)`.
pub fn lemma_check<A: Clone + PartialEq>(
    extra: Cost,
    program: &Program<A>,
    queue: &QueueObj,
) -> bool {
    evaluate(program, &queue.step(extra)) == evaluate(program, queue).step(extra)
}

/// Every program with at most `max_nodes` instruction nodes and zero
/// continuation costs, each exactly once. Deterministic order: instruction
/// count ascending, then enqueues (element order, continuations in this
/// same order) before dequeues (budget splits in lexicographic order,
/// branch tables in row-major order).
pub fn enumerate_programs(max_nodes: usize, alphabet: Alphabet) -> Vec<Program> {
    let mut by_ops: Vec<Vec<Program>> = vec![vec![Program::Return(())]];
    for ops in 1..=max_nodes {
        let mut level = Vec::new();
        for elem in alphabet.elements() {
            for rest in &by_ops[ops - 1] {
                level.push(Program::Enqueue {
                    elem,
                    rest: Box::new(rest.clone()),
                });
            }
        }
        let parts = alphabet.size() as usize + 1;
        for split in budget_splits(parts, ops - 1) {
            let branch_sets: Vec<&Vec<Program>> = split.iter().map(|&n| &by_ops[n]).collect();
            push_dequeues(&mut level, &branch_sets);
        }
        by_ops.push(level);
    }
    by_ops.into_iter().flatten().collect()
}

/// Cartesian product over the per-branch program sets, first branch is the
/// empty-case continuation.
fn push_dequeues(level: &mut Vec<Program>, branch_sets: &[&Vec<Program>]) {
    let mut index = vec![0usize; branch_sets.len()];
    loop {
        let on_none = branch_sets[0][index[0]].clone();
        let on_some: Vec<Program> = (1..branch_sets.len())
            .map(|i| branch_sets[i][index[i]].clone())
            .collect();
        level.push(Program::Dequeue {
            cont_cost: Cost::ZERO,
            on_none: Box::new(on_none),
            on_some,
        });
        // Row-major increment, last branch fastest.
        let mut pos = branch_sets.len();
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < branch_sets[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// All ways to split `total` instruction nodes over `parts` branches, in
/// lexicographic order.
fn budget_splits(parts: usize, total: usize) -> Vec<Vec<usize>> {
    if parts == 1 {
        return vec![vec![total]];
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut tail in budget_splits(parts - 1, total - first) {
            let mut split = Vec::with_capacity(parts);
            split.push(first);
            split.append(&mut tail);
            out.push(split);
        }
    }
    out
}

/// How many programs [`enumerate_programs`] yields, without building them.
/// Saturates instead of overflowing.
pub fn count_programs(max_nodes: usize, alphabet: Alphabet) -> u128 {
    counts_by_ops(max_nodes, alphabet)
        .into_iter()
        .fold(0u128, u128::saturating_add)
}

/// Total instruction nodes across the enumeration, the cost measure used
/// by the resource guard.
pub fn enumeration_nodes(max_nodes: usize, alphabet: Alphabet) -> u128 {
    counts_by_ops(max_nodes, alphabet)
        .into_iter()
        .enumerate()
        .fold(0u128, |acc, (ops, count)| {
            acc.saturating_add(count.saturating_mul(ops as u128 + 1))
        })
}

fn counts_by_ops(max_nodes: usize, alphabet: Alphabet) -> Vec<u128> {
    let k = alphabet.size() as u128;
    let mut counts: Vec<u128> = vec![1];
    for ops in 1..=max_nodes {
        let enqueues = k.saturating_mul(counts[ops - 1]);
        let parts = alphabet.size() as usize + 1;
        let dequeues = budget_splits(parts, ops - 1)
            .into_iter()
            .map(|split| {
                split
                    .into_iter()
                    .fold(1u128, |acc, n| acc.saturating_mul(counts[n]))
            })
            .fold(0u128, u128::saturating_add);
        counts.push(enqueues.saturating_add(dequeues));
    }
    counts
}

/// The first enumerated program telling the two queues apart, if any.
/// Result values are unit here, so only costs can differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProgramWitness {
    pub program: Program,
    pub lhs_cost: Cost,
    pub rhs_cost: Cost,
}

/// Outcome of checking both characterizations of equivalence against each
/// other: the bounded observation check and the program sweep must reach
/// the same verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theorem2Report {
    pub approx: EquivReport,
    pub max_nodes: usize,
    pub programs_checked: u64,
    pub witness: Option<ProgramWitness>,
    pub consistent: bool,
}

/// Run [`approx_check`] at `depth` and sweep all programs with up to
/// `max_nodes` instructions, then compare verdicts. The sweep stops at the
/// first discriminating program. Callers should keep `depth >= max_nodes`
/// so neither side can see past the other.
pub fn theorem2_check(
    lhs: &QueueObj,
    rhs: &QueueObj,
    max_nodes: usize,
    depth: u32,
    alphabet: Alphabet,
) -> Theorem2Report {
    let approx = approx_check(lhs, rhs, depth, alphabet);
    let mut programs_checked = 0u64;
    let mut witness = None;
    for program in enumerate_programs(max_nodes, alphabet) {
        programs_checked += 1;
        let l = evaluate(&program, lhs);
        let r = evaluate(&program, rhs);
        if l != r {
            witness = Some(ProgramWitness {
                program,
                lhs_cost: l.cost,
                rhs_cost: r.cost,
            });
            break;
        }
    }
    let consistent = (approx.verdict == Verdict::Inequivalent) == witness.is_some();
    Theorem2Report {
        approx,
        max_nodes,
        programs_checked,
        witness,
        consistent,
    }
}

/// Wire format mirror. Programs serialize as
/// `{"op":"return"}`, `{"op":"enqueue","elem":e,"rest":p}`, or
/// `{"op":"dequeue","cost":c,"none":p,"some":{"0":p,..}}`.
#[derive(Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
enum ProgramRepr {
    Return,
    Enqueue {
        elem: u8,
        rest: Box<ProgramRepr>,
    },
    // Branch keys are decimal strings: JSON objects only have string
    // keys, and the internally tagged decoding would not coerce them.
    Dequeue {
        cost: u64,
        none: Box<ProgramRepr>,
        some: BTreeMap<String, ProgramRepr>,
    },
}

impl From<&Program> for ProgramRepr {
    fn from(p: &Program) -> ProgramRepr {
        match p {
            Program::Return(()) => ProgramRepr::Return,
            Program::Enqueue { elem, rest } => ProgramRepr::Enqueue {
                elem: elem.value(),
                rest: Box::new(rest.as_ref().into()),
            },
            Program::Dequeue {
                cont_cost,
                on_none,
                on_some,
            } => ProgramRepr::Dequeue {
                cost: cont_cost.value(),
                none: Box::new(on_none.as_ref().into()),
                some: on_some
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i.to_string(), p.into()))
                    .collect(),
            },
        }
    }
}

impl ProgramRepr {
    fn into_program<E: serde::de::Error>(self) -> Result<Program, E> {
        match self {
            ProgramRepr::Return => Ok(Program::Return(())),
            ProgramRepr::Enqueue { elem, rest } => Ok(Program::Enqueue {
                elem: Element::new(elem),
                rest: Box::new(rest.into_program()?),
            }),
            ProgramRepr::Dequeue { cost, none, some } => {
                let mut branches = BTreeMap::new();
                for (key, value) in some {
                    let index: u8 = key.parse().map_err(|_| {
                        E::custom(format!("dequeue branch key {key:?} is not an element"))
                    })?;
                    branches.insert(index, value);
                }
                for (expected, key) in branches.keys().enumerate() {
                    if *key as usize != expected {
                        return Err(E::custom(format!(
                            "dequeue branch keys must be contiguous from 0, missing {expected}"
                        )));
                    }
                }
                let on_some = branches
                    .into_values()
                    .map(ProgramRepr::into_program)
                    .collect::<Result<Vec<_>, E>>()?;
                Ok(Program::Dequeue {
                    cont_cost: Cost::new(cost),
                    on_none: Box::new(none.into_program()?),
                    on_some,
                })
            }
        }
    }
}

impl Serialize for Program {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        ProgramRepr::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Program {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Program, D::Error> {
        ProgramRepr::deserialize(deserializer)?.into_program::<D::Error>()
    }
}
