//! Cost-instrumented persistent queues with an executable
//! amortized-equivalence checker.
//!
//! The library pairs a naive single-list queue, whose every enqueue costs
//! one unit, with a batched two-list queue that pays nothing on enqueue
//! and settles its debt in bulk when a dequeue has to reverse the back
//! list. The central claim is that the batched queue is observationally
//! interchangeable with the naive one once the naive side is pre-charged
//! with the batched queue's stored potential (the length of its back
//! list). Costs that an implementation has incurred but not yet surfaced
//! ride along as a `pending` balance and are only emitted when a `dequeue`
//! or final `quit` observation flushes them.
//!
//! Three executable checks make the claim falsifiable at bounded size:
//!
//! * [`harness::verify_theorem1`] searches all observation sequences up
//!   to a depth, over all small initial states, for a cost or element
//!   disagreement, and reports a shortest counterexample when one exists.
//! * [`harness::verify_lemma`] samples random client programs and checks
//!   that evaluation commutes with charging extra cost up front.
//! * [`harness::verify_theorem2`] cross-validates the observation search
//!   against straight-line client programs: at matched bounds, the two
//!   notions of "distinguishable" must agree.
//!
//! Five deliberately faulty variants of the batched queue
//! ([`mutants::Mutant`]) keep the checker honest: each one must be caught
//! by a counterexample path and confirmed by a discriminating program.
//!
//! The `amortq` binary exposes all of this as `verify`, `trace`, and
//! `mutants` subcommands emitting JSON reports and CSV cost traces.

pub mod batched;
pub mod cost;
pub mod equiv;
pub mod harness;
pub mod laws;
pub mod mutants;
pub mod program;
pub mod queue;
pub mod sample;
pub mod spec_queue;
pub mod trace;

pub use batched::{BatchedState, batched_queue, potential};
pub use cost::{Comp, Cost};
pub use equiv::{
    Counterexample, EquivReport, ObsLabel, ObsOutcome, ObsPath, Verdict, approx_check, cong_check,
    replay, theorem1_check, theorem1_pair,
};
pub use mutants::Mutant;
pub use program::{
    Program, ProgramError, ProgramWitness, Theorem2Report, count_programs, enumerate_programs,
    enumeration_nodes, evaluate, lemma_check, theorem2_check,
};
pub use queue::{Alphabet, Dequeued, Element, QueueBehavior, QueueObj};
pub use spec_queue::spec_queue;
