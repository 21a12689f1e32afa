//! Suite drivers behind the CLI verification targets.
//!
//! Each driver sweeps a family of inputs, aggregates the per-input checks
//! into a serializable report with a single `pass` flag, and exposes a
//! node estimate so callers can refuse searches that would blow a budget.

use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

use crate::equiv::{Counterexample, EquivReport, approx_check, cong_check, theorem1_pair};
use crate::laws::{LawReport, run_all_laws};
use crate::mutants::Mutant;
use crate::program::{
    Program, ProgramWitness, Theorem2Report, enumeration_nodes, lemma_check, theorem2_check,
};
use crate::queue::{Alphabet, Element, QueueObj};
use crate::sample::{random_cost, random_list, random_program, random_queue, rng_from_seed};

use rand::Rng;

/// All element lists up to the given length, shortest first and
/// lexicographic within a length.
pub fn lists_up_to(alphabet: Alphabet, max_len: usize) -> Vec<Vec<Element>> {
    let mut lists = vec![Vec::new()];
    for len in 1..=max_len {
        lists.extend(itertools::repeat_n(alphabet.elements(), len).multi_cartesian_product());
    }
    lists
}

fn raw(list: &[Element]) -> Vec<u8> {
    list.iter().map(|e| e.value()).collect()
}

/// The claimed-equivalent pair for the implementation under test: the
/// honest batched queue against the potential-charged flat queue, or a
/// mutant's version of that claim.
pub fn claim_pair(
    mutant: Option<Mutant>,
    back: &[Element],
    front: &[Element],
) -> (QueueObj, QueueObj) {
    match mutant {
        None => theorem1_pair(back, front),
        Some(m) => m.claim_pair(back, front),
    }
}

fn implementation_name(mutant: Option<Mutant>) -> String {
    mutant.map_or("batched", Mutant::name).to_string()
}

/// First initial state on which the claim broke, if any.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Failure {
    pub back: Vec<u8>,
    pub front: Vec<u8>,
    pub report: EquivReport,
}

/// Flush equivalence swept over every pair of initial lists.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem1Report {
    pub target: String,
    pub implementation: String,
    pub alphabet: u8,
    pub max_init_len: usize,
    pub depth: u32,
    pub pairs: u64,
    pub inequivalent: u64,
    pub nodes: u64,
    pub first_failure: Option<Theorem1Failure>,
    pub pass: bool,
}

/// Checks every `(back, front)` pair of lists up to `max_init_len` for
/// amortized equivalence with the charged flat queue, to `depth`.
pub fn verify_theorem1(
    mutant: Option<Mutant>,
    alphabet: Alphabet,
    max_init_len: usize,
    depth: u32,
) -> Theorem1Report {
    let lists = lists_up_to(alphabet, max_init_len);
    let mut pairs = 0u64;
    let mut inequivalent = 0u64;
    let mut nodes = 0u64;
    let mut first_failure = None;
    for back in &lists {
        for front in &lists {
            let (lhs, rhs) = claim_pair(mutant, back, front);
            let report = approx_check(&lhs, &rhs, depth, alphabet);
            pairs += 1;
            nodes += report.nodes;
            if !report.is_equivalent() {
                inequivalent += 1;
                if first_failure.is_none() {
                    first_failure = Some(Theorem1Failure {
                        back: raw(back),
                        front: raw(front),
                        report,
                    });
                }
            }
        }
    }
    Theorem1Report {
        target: "theorem1".to_string(),
        implementation: implementation_name(mutant),
        alphabet: alphabet.size(),
        max_init_len,
        depth,
        pairs,
        inequivalent,
        nodes,
        first_failure,
        pass: inequivalent == 0,
    }
}

/// Observation search and program sweep compared at matched bounds
/// `1..=max_nodes` on the empty initial state.
#[derive(Debug, Clone, Serialize)]
pub struct Theorem2Suite {
    pub target: String,
    pub implementation: String,
    pub alphabet: u8,
    pub max_nodes: usize,
    pub levels: Vec<Theorem2Report>,
    pub pass: bool,
}

/// At every bound `d` up to `max_nodes`, the depth-`d` observation verdict
/// must agree with whether some program of at most `d` instructions
/// separates the pair.
pub fn verify_theorem2(
    mutant: Option<Mutant>,
    alphabet: Alphabet,
    max_nodes: usize,
) -> Theorem2Suite {
    let levels: Vec<Theorem2Report> = (1..=max_nodes)
        .map(|d| {
            let (lhs, rhs) = claim_pair(mutant, &[], &[]);
            theorem2_check(&lhs, &rhs, d, d as u32, alphabet)
        })
        .collect();
    let pass = levels.iter().all(|level| level.consistent);
    Theorem2Suite {
        target: "theorem2".to_string(),
        implementation: implementation_name(mutant),
        alphabet: alphabet.size(),
        max_nodes,
        levels,
        pass,
    }
}

/// A sample on which evaluating under a pre-stepped queue disagreed with
/// stepping afterwards.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaFailure {
    pub extra: u64,
    pub program: Program,
    pub queue: String,
}

/// Randomized check that evaluation commutes with stepping.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub target: String,
    pub samples: u64,
    pub seed: u64,
    pub failures: u64,
    pub first_failure: Option<LemmaFailure>,
    pub pass: bool,
}

/// Samples random `(cost, program, queue)` triples and requires
/// `evaluate(p, step c q) == step c (evaluate(p, q))` on each.
pub fn verify_lemma(samples: u64, seed: u64, alphabet: Alphabet) -> LemmaReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0u64;
    let mut first_failure = None;
    for _ in 0..samples {
        let extra = random_cost(&mut rng, 100);
        let program = random_program(&mut rng, 8, alphabet);
        let queue = random_queue(&mut rng, alphabet);
        if !lemma_check(extra, &program, &queue) {
            failures += 1;
            if first_failure.is_none() {
                first_failure = Some(LemmaFailure {
                    extra: extra.value(),
                    program: program.clone(),
                    queue: format!("{queue:?}"),
                });
            }
        }
    }
    LemmaReport {
        target: "lemma".to_string(),
        samples,
        seed,
        failures,
        first_failure,
        pass: failures == 0,
    }
}

/// Randomized check that equivalence verdicts survive a common step.
#[derive(Debug, Clone, Serialize)]
pub struct CongReport {
    pub target: String,
    pub samples: u64,
    pub seed: u64,
    pub depth: u32,
    pub alphabet: u8,
    pub failures: u64,
    pub pass: bool,
}

/// Samples queue pairs of all stripes (unrelated, claimed-equivalent,
/// mutant-broken) and requires the verdict at `depth` to be unchanged
/// after stepping both sides by the same random cost.
pub fn verify_cong(samples: u64, seed: u64, depth: u32, alphabet: Alphabet) -> CongReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0u64;
    for _ in 0..samples {
        let extra = random_cost(&mut rng, 100);
        let (lhs, rhs) = match rng.random_range(0..4u32) {
            0 | 1 => (
                random_queue(&mut rng, alphabet),
                random_queue(&mut rng, alphabet),
            ),
            2 => {
                let back = random_list(&mut rng, alphabet, 3);
                let front = random_list(&mut rng, alphabet, 3);
                theorem1_pair(&back, &front)
            }
            _ => {
                let mutant = Mutant::ALL[rng.random_range(0..Mutant::ALL.len())];
                let back = random_list(&mut rng, alphabet, 2);
                let front = random_list(&mut rng, alphabet, 2);
                mutant.claim_pair(&back, &front)
            }
        };
        if !cong_check(extra, &lhs, &rhs, depth, alphabet) {
            failures += 1;
        }
    }
    CongReport {
        target: "cong".to_string(),
        samples,
        seed,
        depth,
        alphabet: alphabet.size(),
        failures,
        pass: failures == 0,
    }
}

/// All law suites under one `pass` flag.
#[derive(Debug, Clone, Serialize)]
pub struct LawsReport {
    pub target: String,
    pub cases: u64,
    pub seed: u64,
    pub laws: Vec<LawReport>,
    pub pass: bool,
}

pub fn verify_laws(cases: u64, seed: u64, alphabet: Alphabet) -> LawsReport {
    let laws = run_all_laws(cases, seed, alphabet);
    let pass = laws.iter().all(LawReport::passed);
    LawsReport {
        target: "laws".to_string(),
        cases,
        seed,
        laws,
        pass,
    }
}

/// How one seeded fault fared against both detection methods.
#[derive(Debug, Clone, Serialize)]
pub struct MutantReport {
    pub name: String,
    pub description: String,
    /// Some initial state's observation search refuted the claim.
    pub killed: bool,
    pub kill_back: Option<Vec<u8>>,
    pub kill_front: Option<Vec<u8>>,
    pub counterexample: Option<Counterexample>,
    /// An enumerated program separates the pair on that same state.
    pub program_witness: Option<ProgramWitness>,
    /// Killed by observations and confirmed by a program.
    pub detected: bool,
}

/// The full mutation run: the honest implementation must survive, every
/// mutant must be detected both ways.
#[derive(Debug, Clone, Serialize)]
pub struct MutantsReport {
    pub target: String,
    pub alphabet: u8,
    pub max_init_len: usize,
    pub depth: u32,
    pub max_nodes: usize,
    pub baseline_survives: bool,
    pub mutants: Vec<MutantReport>,
    pub pass: bool,
}

/// Runs the claim sweep for the honest implementation and every mutant.
/// A mutant counts as detected when some initial state yields a
/// counterexample path and a program witness confirms the gap there.
pub fn run_mutants(
    alphabet: Alphabet,
    max_init_len: usize,
    depth: u32,
    max_nodes: usize,
) -> MutantsReport {
    let lists = lists_up_to(alphabet, max_init_len);
    let baseline_survives = verify_theorem1(None, alphabet, max_init_len, depth).pass;

    let mutants: Vec<MutantReport> = Mutant::ALL
        .iter()
        .map(|&mutant| {
            let mut report = MutantReport {
                name: mutant.name().to_string(),
                description: mutant.description().to_string(),
                killed: false,
                kill_back: None,
                kill_front: None,
                counterexample: None,
                program_witness: None,
                detected: false,
            };
            'scan: for back in &lists {
                for front in &lists {
                    let (lhs, rhs) = mutant.claim_pair(back, front);
                    let approx = approx_check(&lhs, &rhs, depth, alphabet);
                    if approx.is_equivalent() {
                        continue;
                    }
                    report.killed = true;
                    report.kill_back = Some(raw(back));
                    report.kill_front = Some(raw(front));
                    report.counterexample = approx.counterexample;
                    let t2 = theorem2_check(&lhs, &rhs, max_nodes, depth, alphabet);
                    report.program_witness = t2.witness;
                    break 'scan;
                }
            }
            report.detected = report.killed && report.program_witness.is_some();
            report
        })
        .collect();

    let pass = baseline_survives && mutants.iter().all(|m| m.detected);
    MutantsReport {
        target: "mutants".to_string(),
        alphabet: alphabet.size(),
        max_init_len,
        depth,
        max_nodes,
        baseline_survives,
        mutants,
        pass,
    }
}

/// A search was refused because its size estimate exceeded the budget.
#[derive(Debug, Error)]
#[error(
    "estimated {estimate} search nodes exceed the budget of {budget}; raise --budget or lower the bounds"
)]
pub struct BudgetError {
    pub estimate: u128,
    pub budget: u128,
}

pub fn ensure_within_budget(estimate: u128, budget: u128) -> Result<(), BudgetError> {
    if estimate > budget {
        Err(BudgetError { estimate, budget })
    } else {
        Ok(())
    }
}

/// Nodes in one observation tree: `sum((k+1)^i, i = 0..=depth)`.
pub fn approx_tree_nodes(alphabet: Alphabet, depth: u32) -> u128 {
    let branch = alphabet.size() as u128 + 1;
    let mut total = 0u128;
    let mut level = 1u128;
    for _ in 0..=depth {
        total = total.saturating_add(level);
        level = level.saturating_mul(branch);
    }
    total
}

pub fn list_count(alphabet: Alphabet, max_len: usize) -> u128 {
    let k = alphabet.size() as u128;
    let mut total = 0u128;
    let mut level = 1u128;
    for _ in 0..=max_len {
        total = total.saturating_add(level);
        level = level.saturating_mul(k);
    }
    total
}

/// Worst-case node count for [`verify_theorem1`]: every pair may pay for
/// a full search twice (verdict pass and shortest-path rerun).
pub fn theorem1_node_estimate(alphabet: Alphabet, max_init_len: usize, depth: u32) -> u128 {
    let lists = list_count(alphabet, max_init_len);
    lists
        .saturating_mul(lists)
        .saturating_mul(2)
        .saturating_mul(approx_tree_nodes(alphabet, depth))
}

/// Worst-case node count for [`verify_theorem2`] across all matched levels.
pub fn theorem2_node_estimate(alphabet: Alphabet, max_nodes: usize) -> u128 {
    let mut total = 0u128;
    for d in 1..=max_nodes {
        total = total
            .saturating_add(enumeration_nodes(d, alphabet))
            .saturating_add(approx_tree_nodes(alphabet, d as u32).saturating_mul(2));
    }
    total
}

/// Worst-case node count for [`verify_cong`]: two searches per sample,
/// each possibly rerun for a counterexample.
pub fn cong_node_estimate(samples: u64, depth: u32, alphabet: Alphabet) -> u128 {
    (samples as u128)
        .saturating_mul(4)
        .saturating_mul(approx_tree_nodes(alphabet, depth))
}

/// Worst-case node count for [`run_mutants`].
pub fn mutants_node_estimate(
    alphabet: Alphabet,
    max_init_len: usize,
    depth: u32,
    max_nodes: usize,
) -> u128 {
    let sweep = theorem1_node_estimate(alphabet, max_init_len, depth);
    // Baseline sweep, then per mutant at worst a full sweep plus one
    // program pass at the kill state.
    let per_mutant = sweep.saturating_add(enumeration_nodes(max_nodes, alphabet));
    sweep.saturating_add(per_mutant.saturating_mul(Mutant::ALL.len() as u128))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2() -> Alphabet {
        Alphabet::new(2)
    }

    #[test]
    fn lists_are_ordered_by_length_then_lexicographically() {
        let lists = lists_up_to(k2(), 2);
        let raw: Vec<Vec<u8>> = lists.iter().map(|l| super::raw(l)).collect();
        assert_eq!(
            raw,
            vec![
                vec![],
                vec![0],
                vec![1],
                vec![0, 0],
                vec![0, 1],
                vec![1, 0],
                vec![1, 1]
            ]
        );
        assert_eq!(lists_up_to(k2(), 3).len() as u128, list_count(k2(), 3));
    }

    #[test]
    fn the_batched_claim_survives_a_small_sweep() {
        let report = verify_theorem1(None, k2(), 2, 4);
        assert!(report.pass);
        assert_eq!(report.pairs, 49);
        assert_eq!(report.inequivalent, 0);
        assert!(report.first_failure.is_none());
    }

    #[test]
    fn every_mutant_fails_its_sweep() {
        for mutant in Mutant::ALL {
            let report = verify_theorem1(Some(mutant), k2(), 2, 6);
            assert!(!report.pass, "{} survived", mutant.name());
            let failure = report.first_failure.expect("a failing pair");
            assert!(failure.report.counterexample.is_some());
        }
    }

    #[test]
    fn matched_bounds_agree_for_the_batched_claim() {
        let suite = verify_theorem2(None, k2(), 4);
        assert!(suite.pass);
        assert_eq!(suite.levels.len(), 4);
        for level in &suite.levels {
            assert!(level.approx.is_equivalent());
            assert!(level.witness.is_none());
        }
    }

    #[test]
    fn matched_bounds_agree_for_every_mutant() {
        for mutant in Mutant::ALL {
            let suite = verify_theorem2(Some(mutant), k2(), 4);
            assert!(suite.pass, "{} had a mismatched level", mutant.name());
        }
    }

    #[test]
    fn lemma_and_cong_hold_on_random_samples() {
        let lemma = verify_lemma(300, 11, k2());
        assert!(lemma.pass, "failures: {}", lemma.failures);
        let cong = verify_cong(150, 12, 3, k2());
        assert!(cong.pass, "failures: {}", cong.failures);
    }

    #[test]
    fn the_full_mutation_run_detects_everything() {
        let report = run_mutants(k2(), 2, 6, 6);
        assert!(report.baseline_survives);
        assert_eq!(report.mutants.len(), 5);
        for mutant in &report.mutants {
            assert!(mutant.killed, "{} not killed", mutant.name);
            assert!(
                mutant.program_witness.is_some(),
                "{} lacks a witness",
                mutant.name
            );
        }
        assert!(report.pass);
    }

    #[test]
    fn budget_guard_math_is_sane() {
        assert_eq!(approx_tree_nodes(k2(), 0), 1);
        assert_eq!(approx_tree_nodes(k2(), 2), 13);
        assert_eq!(list_count(k2(), 2), 7);
        assert_eq!(theorem1_node_estimate(k2(), 2, 2), 49 * 2 * 13);
        assert!(ensure_within_budget(100, 100).is_ok());
        let err = ensure_within_budget(101, 100).unwrap_err();
        assert!(err.to_string().contains("101"));
    }
}
