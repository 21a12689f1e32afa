//! Property tests for the structural invariants: the batched queue must
//! track the flat one observation for observation, costs must fuse, and
//! counterexamples must replay to real disagreements.

use proptest::prelude::*;

use amortq::equiv::{approx_check, replay};
use amortq::mutants::Mutant;
use amortq::program::enumerate_programs;
use amortq::queue::{Alphabet, Element};
use amortq::{Comp, Cost, batched_queue, spec_queue};

/// A script step: enqueue this element, or dequeue.
fn scripts() -> impl Strategy<Value = Vec<Option<u8>>> {
    prop::collection::vec(prop::option::of(0u8..4), 0..40)
}

fn small_lists() -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0u8..2, 0..3)
}

proptest! {
    /// Same elements out, same settled total, whatever the script.
    #[test]
    fn batched_and_flat_queues_agree_elementwise_and_in_total(script in scripts()) {
        let mut batched = batched_queue([], []);
        let mut flat = spec_queue([]);
        let mut batched_total = 0u64;
        let mut flat_total = 0u64;
        for op in script {
            match op {
                Some(elem) => {
                    batched = batched.enqueue(Element::new(elem));
                    flat = flat.enqueue(Element::new(elem));
                }
                None => {
                    let b = batched.dequeue();
                    let f = flat.dequeue();
                    prop_assert_eq!(b.elem, f.elem);
                    batched_total += b.cost.value();
                    flat_total += f.cost.value();
                    batched = b.rest;
                    flat = f.rest;
                }
            }
        }
        batched_total += batched.quit().value();
        flat_total += flat.quit().value();
        prop_assert_eq!(batched_total, flat_total);
    }

    /// The batched queue's stored potential never exceeds what enqueues
    /// have paid in, so the final quit can always be covered.
    #[test]
    fn potential_stays_within_the_banked_enqueues(script in scripts()) {
        let mut queue = batched_queue([], []);
        let mut enqueues = 0u64;
        let mut paid = 0u64;
        for op in script {
            match op {
                Some(elem) => {
                    queue = queue.enqueue(Element::new(elem));
                    enqueues += 1;
                }
                None => {
                    let d = queue.dequeue();
                    paid += d.cost.value();
                    queue = d.rest;
                }
            }
            prop_assert!(paid + queue.potential().value() <= enqueues);
        }
    }

    /// Step fusion on computations and queues, for arbitrary costs.
    #[test]
    fn steps_fuse_into_their_sum(a in 0u64..1 << 40, b in 0u64..1 << 40, v in any::<u16>()) {
        let comp = Comp::new(Cost::new(7), v);
        prop_assert_eq!(
            comp.step(Cost::new(b)).step(Cost::new(a)),
            comp.step(Cost::new(a + b))
        );
        let queue = batched_queue([Element::new(0)], []);
        let chained = queue.step(Cost::new(b)).step(Cost::new(a));
        let fused = queue.step(Cost::new(a + b));
        prop_assert_eq!(chained.pending(), fused.pending());
        prop_assert_eq!(chained.quit(), fused.quit());
    }

    /// Whatever the checker reports against a mutant, an `inequivalent`
    /// verdict must come with a path that replays to a genuine
    /// observation mismatch on fresh queues.
    #[test]
    fn counterexamples_replay_to_real_disagreements(
        which in 0usize..Mutant::ALL.len(),
        back in small_lists(),
        front in small_lists(),
        depth in 2u32..5,
    ) {
        let k = Alphabet::new(2);
        let back: Vec<Element> = back.into_iter().map(Element::new).collect();
        let front: Vec<Element> = front.into_iter().map(Element::new).collect();
        let (lhs, rhs) = Mutant::ALL[which].claim_pair(&back, &front);
        let report = approx_check(&lhs, &rhs, depth, k);
        if let Some(ce) = report.counterexample {
            let (l, r) = replay(&ce.path, &lhs, &rhs).expect("reported paths are well formed");
            prop_assert_ne!(l, r);
            prop_assert_eq!(l, ce.lhs);
            prop_assert_eq!(r, ce.rhs);
        }
    }

    /// Every enumerated program survives a JSON round trip unchanged.
    #[test]
    fn enumerated_programs_round_trip_through_json(max_nodes in 0usize..4) {
        for program in enumerate_programs(max_nodes, Alphabet::new(2)) {
            let json = serde_json::to_string(&program).unwrap();
            let back: amortq::Program = serde_json::from_str(&json).unwrap();
            prop_assert_eq!(back, program);
        }
    }
}
