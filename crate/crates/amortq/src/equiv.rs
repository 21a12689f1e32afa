//! Bounded check for amortized equivalence of two queues.
//!
//! Two queues are compared observation by observation. Quit costs must
//! agree at every reachable state and dequeues must hand out the same
//! elements, but dequeue costs are not compared on the spot: each side's
//! emitted cost is pushed onto its own residual with [`QueueObj::step`],
//! so a cost mismatch only counts if it survives to some later quit.
//! This deferral is what lets an implementation that saves up for a batch
//! be equivalent to one that pays as it goes.
//!
//! The search explores every observation path of bounded length:
//! depth-first for the verdict, in alphabet order with dequeue last, and
//! if any disagreement is found a breadth-first pass reruns the search so
//! the reported counterexample is a shortest one.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::batched::{batched_queue, potential};
use crate::cost::Cost;
use crate::queue::{Alphabet, Element, QueueObj};
use crate::spec_queue::spec_queue;

/// One observation along a counterexample path. `Quit` and `Dequeue` are
/// the comparable observations; a path ends with one of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "lowercase")]
pub enum ObsLabel {
    Enqueue { elem: Element },
    Dequeue,
    Quit,
}

pub type ObsPath = Vec<ObsLabel>;

/// What one side observed at the point of disagreement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "observation", rename_all = "lowercase")]
pub enum ObsOutcome {
    Quit { cost: Cost },
    Dequeue { cost: Cost, elem: Option<Element> },
}

/// A replayable disagreement: follow `path` from the two initial queues
/// and the final observation differs as recorded.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub path: ObsPath,
    pub lhs: ObsOutcome,
    pub rhs: ObsOutcome,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Equivalent,
    Inequivalent,
}

/// Result of a bounded equivalence check. `nodes` counts the queue pairs
/// examined, including the counterexample-minimization pass.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivReport {
    pub verdict: Verdict,
    pub depth: u32,
    pub alphabet: Alphabet,
    pub counterexample: Option<Counterexample>,
    pub nodes: u64,
}

impl EquivReport {
    pub fn is_equivalent(&self) -> bool {
        self.verdict == Verdict::Equivalent
    }
}

struct Search {
    alphabet: Alphabet,
    nodes: u64,
}

impl Search {
    /// Compare quit costs at the current pair. Every reachable pair gets
    /// this check, including the roots.
    fn quit_mismatch(
        &mut self,
        lhs: &QueueObj,
        rhs: &QueueObj,
        path: &[ObsLabel],
    ) -> Option<Counterexample> {
        self.nodes += 1;
        let (lq, rq) = (lhs.quit(), rhs.quit());
        if lq == rq {
            return None;
        }
        let mut path = path.to_vec();
        path.push(ObsLabel::Quit);
        Some(Counterexample {
            path,
            lhs: ObsOutcome::Quit { cost: lq },
            rhs: ObsOutcome::Quit { cost: rq },
        })
    }

    fn dfs(
        &mut self,
        lhs: &QueueObj,
        rhs: &QueueObj,
        remaining: u32,
        path: &mut ObsPath,
    ) -> Option<Counterexample> {
        if let Some(ce) = self.quit_mismatch(lhs, rhs, path) {
            return Some(ce);
        }
        if remaining == 0 {
            return None;
        }
        for elem in self.alphabet.elements() {
            path.push(ObsLabel::Enqueue { elem });
            let found = self.dfs(&lhs.enqueue(elem), &rhs.enqueue(elem), remaining - 1, path);
            path.pop();
            if found.is_some() {
                return found;
            }
        }
        let l = lhs.dequeue();
        let r = rhs.dequeue();
        path.push(ObsLabel::Dequeue);
        let found = if l.elem != r.elem {
            Some(Counterexample {
                path: path.clone(),
                lhs: ObsOutcome::Dequeue {
                    cost: l.cost,
                    elem: l.elem,
                },
                rhs: ObsOutcome::Dequeue {
                    cost: r.cost,
                    elem: r.elem,
                },
            })
        } else {
            // Costs are deferred: both sides carry theirs into the residual.
            self.dfs(
                &l.rest.step(l.cost),
                &r.rest.step(r.cost),
                remaining - 1,
                path,
            )
        };
        path.pop();
        found
    }

    /// Level-order rerun over the same bounded tree; the first disagreement
    /// it meets has a shortest path.
    fn bfs(&mut self, lhs: &QueueObj, rhs: &QueueObj, depth: u32) -> Option<Counterexample> {
        let mut frontier: VecDeque<(QueueObj, QueueObj, ObsPath, u32)> = VecDeque::new();
        frontier.push_back((lhs.clone(), rhs.clone(), Vec::new(), depth));
        while let Some((l, r, path, remaining)) = frontier.pop_front() {
            if let Some(ce) = self.quit_mismatch(&l, &r, &path) {
                return Some(ce);
            }
            if remaining == 0 {
                continue;
            }
            for elem in self.alphabet.elements() {
                let mut next = path.clone();
                next.push(ObsLabel::Enqueue { elem });
                frontier.push_back((l.enqueue(elem), r.enqueue(elem), next, remaining - 1));
            }
            let dl = l.dequeue();
            let dr = r.dequeue();
            let mut next = path.clone();
            next.push(ObsLabel::Dequeue);
            if dl.elem != dr.elem {
                return Some(Counterexample {
                    path: next,
                    lhs: ObsOutcome::Dequeue {
                        cost: dl.cost,
                        elem: dl.elem,
                    },
                    rhs: ObsOutcome::Dequeue {
                        cost: dr.cost,
                        elem: dr.elem,
                    },
                });
            }
            frontier.push_back((
                dl.rest.step(dl.cost),
                dr.rest.step(dr.cost),
                next,
                remaining - 1,
            ));
        }
        None
    }
}

/// Check the two queues for amortized equivalence on all observation paths
/// of at most `depth` transitions. An `inequivalent` verdict comes with a
/// shortest counterexample; `equivalent` only speaks for the explored depth.
pub fn approx_check(lhs: &QueueObj, rhs: &QueueObj, depth: u32, alphabet: Alphabet) -> EquivReport {
    let mut search = Search { alphabet, nodes: 0 };
    let mut path = Vec::new();
    let counterexample = search.dfs(lhs, rhs, depth, &mut path).map(|_| {
        search
            .bfs(lhs, rhs, depth)
            .expect("rerun must rediscover the disagreement")
    });
    EquivReport {
        verdict: if counterexample.is_some() {
            Verdict::Inequivalent
        } else {
            Verdict::Equivalent
        },
        depth,
        alphabet,
        counterexample,
        nodes: search.nodes,
    }
}

/// The flush-equivalence claim for a batched queue over the given lists:
/// it should be indistinguishable from the specification queue holding the
/// same contents, pre-charged with the batched queue's stored potential.
pub fn theorem1_pair(back: &[Element], front: &[Element]) -> (QueueObj, QueueObj) {
    let mut contents: Vec<Element> = front.to_vec();
    contents.extend(back.iter().rev());
    (
        batched_queue(back, front),
        spec_queue(contents).step(potential(back, front)),
    )
}

/// Bounded check of the flush-equivalence claim for one initial state.
pub fn theorem1_check(
    back: &[Element],
    front: &[Element],
    depth: u32,
    alphabet: Alphabet,
) -> EquivReport {
    let (lhs, rhs) = theorem1_pair(back, front);
    approx_check(&lhs, &rhs, depth, alphabet)
}

/// Stepping both sides by the same cost must not change the verdict.
pub fn cong_check(
    extra: Cost,
    lhs: &QueueObj,
    rhs: &QueueObj,
    depth: u32,
    alphabet: Alphabet,
) -> bool {
    let plain = approx_check(lhs, rhs, depth, alphabet);
    let stepped = approx_check(&lhs.step(extra), &rhs.step(extra), depth, alphabet);
    plain.verdict == stepped.verdict
}

/// Re-run a counterexample path against fresh queues and report the final
/// observation on each side. Returns `None` if the path is not well formed
/// (only the last label may be `Quit`, and the last label must observe).
pub fn replay(
    path: &[ObsLabel],
    lhs: &QueueObj,
    rhs: &QueueObj,
) -> Option<(ObsOutcome, ObsOutcome)> {
    let (last, prefix) = path.split_last()?;
    let mut l = lhs.clone();
    let mut r = rhs.clone();
    for label in prefix {
        match label {
            ObsLabel::Enqueue { elem } => {
                l = l.enqueue(*elem);
                r = r.enqueue(*elem);
            }
            ObsLabel::Dequeue => {
                let dl = l.dequeue();
                let dr = r.dequeue();
                l = dl.rest.step(dl.cost);
                r = dr.rest.step(dr.cost);
            }
            ObsLabel::Quit => return None,
        }
    }
    match last {
        ObsLabel::Quit => Some((
            ObsOutcome::Quit { cost: l.quit() },
            ObsOutcome::Quit { cost: r.quit() },
        )),
        ObsLabel::Dequeue => {
            let dl = l.dequeue();
            let dr = r.dequeue();
            Some((
                ObsOutcome::Dequeue {
                    cost: dl.cost,
                    elem: dl.elem,
                },
                ObsOutcome::Dequeue {
                    cost: dr.cost,
                    elem: dr.elem,
                },
            ))
        }
        ObsLabel::Enqueue { .. } => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mutants::Mutant;
    use serde_json::json;

    fn e(v: u8) -> Element {
        Element::new(v)
    }

    fn k(size: u8) -> Alphabet {
        Alphabet::new(size)
    }

    #[test]
    fn identical_queues_are_equivalent() {
        let q = batched_queue([e(1)], [e(0)]);
        let report = approx_check(&q, &q.clone(), 4, k(2));
        assert!(report.is_equivalent());
        assert_eq!(report.counterexample, None);
    }

    #[test]
    fn depth_zero_checks_exactly_the_root_quit() {
        let report = approx_check(&spec_queue([]), &spec_queue([]), 0, k(2));
        assert!(report.is_equivalent());
        assert_eq!(report.nodes, 1);
    }

    #[test]
    fn node_count_at_depth_one_covers_all_branches() {
        // Root plus two enqueue children plus one dequeue child.
        let report = approx_check(&spec_queue([]), &spec_queue([]), 1, k(2));
        assert_eq!(report.nodes, 4);
    }

    #[test]
    fn uncharged_batched_queue_differs_from_specification_at_the_root() {
        let report = approx_check(&batched_queue([e(0)], []), &spec_queue([e(0)]), 1, k(1));
        assert_eq!(report.verdict, Verdict::Inequivalent);
        let ce = report
            .counterexample
            .expect("inequivalent verdicts carry a counterexample");
        assert_eq!(ce.path, vec![ObsLabel::Quit]);
        assert_eq!(ce.lhs, ObsOutcome::Quit { cost: Cost::new(1) });
        assert_eq!(ce.rhs, ObsOutcome::Quit { cost: Cost::ZERO });
    }

    #[test]
    fn charging_the_potential_restores_equivalence() {
        let lhs = batched_queue([e(0)], []);
        let rhs = spec_queue([e(0)]).step(Cost::new(1));
        for depth in [0, 1, 3, 6] {
            assert!(
                approx_check(&lhs, &rhs, depth, k(2)).is_equivalent(),
                "depth {depth}"
            );
        }
    }

    #[test]
    fn flush_equivalence_holds_on_mixed_initial_lists() {
        assert!(theorem1_check(&[], &[], 6, k(2)).is_equivalent());
        assert!(theorem1_check(&[e(1), e(0)], &[e(1)], 4, k(2)).is_equivalent());
        assert!(theorem1_check(&[e(0), e(0), e(1)], &[], 4, k(2)).is_equivalent());
    }

    #[test]
    fn free_quit_mutant_is_caught_right_after_an_enqueue() {
        let (lhs, rhs) = Mutant::FreeQuit.claim_pair(&[], &[]);
        let report = approx_check(&lhs, &rhs, 4, k(2));
        let ce = report.counterexample.expect("mutant must be refuted");
        assert_eq!(
            ce.path,
            vec![ObsLabel::Enqueue { elem: e(0) }, ObsLabel::Quit]
        );
        assert_eq!(ce.lhs, ObsOutcome::Quit { cost: Cost::ZERO });
        assert_eq!(ce.rhs, ObsOutcome::Quit { cost: Cost::new(1) });
    }

    #[test]
    fn uncharged_reversal_shows_up_one_dequeue_later() {
        let (lhs, rhs) = Mutant::NoReversalCost.claim_pair(&[], &[]);
        let report = approx_check(&lhs, &rhs, 6, k(2));
        let ce = report.counterexample.expect("mutant must be refuted");
        assert_eq!(
            ce.path,
            vec![
                ObsLabel::Enqueue { elem: e(0) },
                ObsLabel::Dequeue,
                ObsLabel::Quit
            ]
        );
        assert_eq!(ce.lhs, ObsOutcome::Quit { cost: Cost::ZERO });
        assert_eq!(ce.rhs, ObsOutcome::Quit { cost: Cost::new(1) });
    }

    #[test]
    fn swapped_lists_are_refuted_by_an_element_not_a_cost() {
        let (lhs, rhs) = Mutant::SwappedLists.claim_pair(&[e(0)], &[e(1)]);
        let report = approx_check(&lhs, &rhs, 4, k(2));
        let ce = report.counterexample.expect("mutant must be refuted");
        // The shortest disagreement is the very first dequeue; every quit
        // cost along the way matches because the swap preserves lengths.
        assert_eq!(ce.path, vec![ObsLabel::Dequeue]);
        assert_eq!(
            ce.lhs,
            ObsOutcome::Dequeue {
                cost: Cost::ZERO,
                elem: Some(e(0))
            }
        );
        assert_eq!(
            ce.rhs,
            ObsOutcome::Dequeue {
                cost: Cost::new(1),
                elem: Some(e(1))
            }
        );
    }

    #[test]
    fn counterexamples_replay_to_a_genuine_disagreement() {
        for mutant in Mutant::ALL {
            for (back, front) in [
                (vec![], vec![]),
                (vec![e(0)], vec![]),
                (vec![e(0)], vec![e(1)]),
            ] {
                let (lhs, rhs) = mutant.claim_pair(&back, &front);
                let report = approx_check(&lhs, &rhs, 5, k(2));
                let Some(ce) = report.counterexample else {
                    continue;
                };
                let (got_l, got_r) =
                    replay(&ce.path, &lhs, &rhs).expect("reported path must be well formed");
                assert_eq!((got_l, got_r), (ce.lhs, ce.rhs), "{}", mutant.name());
                assert_ne!(got_l, got_r, "{}", mutant.name());
            }
        }
    }

    #[test]
    fn verdicts_are_monotone_in_depth() {
        let (lhs, rhs) = Mutant::FreeQuit.claim_pair(&[], &[]);
        assert!(approx_check(&lhs, &rhs, 0, k(2)).is_equivalent());
        for depth in 1..5 {
            assert_eq!(
                approx_check(&lhs, &rhs, depth, k(2)).verdict,
                Verdict::Inequivalent
            );
        }
    }

    #[test]
    fn stepping_both_sides_preserves_the_verdict() {
        let q = batched_queue([e(0)], []);
        assert!(cong_check(Cost::ZERO, &q, &q, 3, k(2)));
        let (lhs, rhs) = theorem1_pair(&[e(0)], &[]);
        assert!(cong_check(Cost::new(5), &lhs, &rhs, 4, k(2)));
        // Also on an inequivalent pair: both verdicts stay inequivalent.
        assert!(cong_check(
            Cost::new(3),
            &batched_queue([e(0)], []),
            &spec_queue([e(0)]),
            2,
            k(1)
        ));
    }

    #[test]
    fn report_serializes_to_the_documented_shape() {
        let report = approx_check(&batched_queue([e(0)], []), &spec_queue([e(0)]), 1, k(1));
        let value = serde_json::to_value(&report).unwrap();
        assert_eq!(
            value,
            json!({
                "verdict": "inequivalent",
                "depth": 1,
                "alphabet": 1,
                "counterexample": {
                    "path": [{"op": "quit"}],
                    "lhs": {"observation": "quit", "cost": 1},
                    "rhs": {"observation": "quit", "cost": 0},
                },
                "nodes": 2,
            })
        );
        let back: EquivReport = serde_json::from_value(value).unwrap();
        assert_eq!(back, report);
    }

    #[test]
    fn path_labels_serialize_like_ops_files() {
        let path = vec![
            ObsLabel::Enqueue { elem: e(1) },
            ObsLabel::Dequeue,
            ObsLabel::Quit,
        ];
        assert_eq!(
            serde_json::to_value(&path).unwrap(),
            json!([{"op": "enqueue", "elem": 1}, {"op": "dequeue"}, {"op": "quit"}])
        );
    }
}
