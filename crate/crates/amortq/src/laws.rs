//! Randomized checks for the algebraic laws the checker leans on:
//! the cost monoid, the cost-writer monad, step fusion, and the
//! distribution of step over the queue operations.

use serde::Serialize;

use crate::cost::{Comp, Cost};
use crate::equiv::approx_check;
use crate::queue::Alphabet;
use crate::sample::{random_cost, random_element, random_queue, rng_from_seed};

use rand::Rng;

/// Outcome of one law suite.
#[derive(Debug, Clone, Serialize)]
pub struct LawReport {
    pub law: String,
    pub cases: u64,
    pub failures: u64,
}

impl LawReport {
    fn new(law: &str, cases: u64, failures: u64) -> Self {
        LawReport {
            law: law.to_string(),
            cases,
            failures,
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

// Large enough to be interesting, small enough that three-way sums
// cannot overflow.
const MAX_LAW_COST: u64 = 1 << 40;

/// Costs form a commutative monoid under addition with identity zero.
pub fn check_cost_monoid(cases: u64, seed: u64) -> LawReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let a = random_cost(&mut rng, MAX_LAW_COST);
        let b = random_cost(&mut rng, MAX_LAW_COST);
        let c = random_cost(&mut rng, MAX_LAW_COST);
        let ok = (a + b) + c == a + (b + c)
            && a + b == b + a
            && a + Cost::ZERO == a
            && Cost::ZERO + a == a;
        if !ok {
            failures += 1;
        }
    }
    LawReport::new("cost-monoid", cases, failures)
}

/// Cost-counting computations satisfy the monad laws.
pub fn check_comp_monad(cases: u64, seed: u64) -> LawReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let a: i64 = rng.random_range(-1_000_000..=1_000_000);
        let m = Comp::new(random_cost(&mut rng, MAX_LAW_COST), a);
        let (fc, fm) = (
            random_cost(&mut rng, MAX_LAW_COST),
            rng.random_range(-9..=9i64),
        );
        let (gc, gm) = (
            random_cost(&mut rng, MAX_LAW_COST),
            rng.random_range(-9..=9i64),
        );
        let f = |x: i64| Comp::new(fc, x.wrapping_mul(fm));
        let g = |x: i64| Comp::new(gc, x.wrapping_add(gm));

        let ok = Comp::pure(a).bind(f) == f(a)
            && m.bind(Comp::pure) == m
            && m.bind(f).bind(g) == m.bind(|x| f(x).bind(g));
        if !ok {
            failures += 1;
        }
    }
    LawReport::new("comp-monad", cases, failures)
}

/// Consecutive steps fuse into a single step of the summed cost, both on
/// computations and on queues.
pub fn check_step_fusion(cases: u64, seed: u64, alphabet: Alphabet) -> LawReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let a = random_cost(&mut rng, MAX_LAW_COST);
        let b = random_cost(&mut rng, MAX_LAW_COST);
        let m = Comp::new(
            random_cost(&mut rng, MAX_LAW_COST),
            rng.random_range(0..100u8),
        );
        let q = random_queue(&mut rng, alphabet);

        let fused = q.step(a + b);
        let chained = q.step(b).step(a);
        let ok = m.step(b).step(a) == m.step(a + b)
            && chained.pending() == fused.pending()
            && chained.quit() == fused.quit();
        if !ok {
            failures += 1;
        }
    }
    LawReport::new("step-fusion", cases, failures)
}

/// Stepping commutes with the queue operations: quit and dequeue surface
/// the stepped cost immediately, enqueue carries it along.
pub fn check_step_distribution(cases: u64, seed: u64, alphabet: Alphabet) -> LawReport {
    let mut rng = rng_from_seed(seed);
    let mut failures = 0;
    for _ in 0..cases {
        let q = random_queue(&mut rng, alphabet);
        let c = random_cost(&mut rng, 100);
        let e = random_element(&mut rng, alphabet);

        let quit_ok = q.step(c).quit() == c + q.quit();

        let stepped = q.step(c).dequeue();
        let plain = q.dequeue();
        let dequeue_ok = stepped.cost == c + plain.cost
            && stepped.elem == plain.elem
            && approx_check(&stepped.rest, &plain.rest, 2, alphabet).is_equivalent();

        let left = q.step(c).enqueue(e);
        let right = q.enqueue(e).step(c);
        let enqueue_ok = left.pending() == right.pending()
            && approx_check(&left, &right, 2, alphabet).is_equivalent();

        if !(quit_ok && dequeue_ok && enqueue_ok) {
            failures += 1;
        }
    }
    LawReport::new("step-distribution", cases, failures)
}

/// Runs every law suite with distinct seeds derived from `seed`.
pub fn run_all_laws(cases: u64, seed: u64, alphabet: Alphabet) -> Vec<LawReport> {
    vec![
        check_cost_monoid(cases, seed),
        check_comp_monad(cases, seed.wrapping_add(1)),
        check_step_fusion(cases, seed.wrapping_add(2), alphabet),
        check_step_distribution(cases, seed.wrapping_add(3), alphabet),
    ]
}
