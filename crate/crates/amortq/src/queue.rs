//! The observable queue protocol.
//!
//! A queue is an object that answers three observations:
//!
//! * `quit`: retire the queue and report a final cost,
//! * `enqueue`: push an element, charging a latent cost,
//! * `dequeue`: emit a cost now and surrender the next element, if any.
//!
//! Latent costs accumulate in a `pending` counter carried by [`QueueObj`]
//! and are only emitted by the flushing observations `quit` and `dequeue`.
//! [`QueueObj::step`] charges an extra pending cost without observing
//! anything, which is how deferred costs from earlier dequeues are pushed
//! back onto the residual queue during equivalence checking.
//!
//! All values are immutable: every observation leaves the receiver intact
//! and returns fresh handles, so histories can be branched freely.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::cost::Cost;

/// A queue element: a small non-negative integer drawn from an [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(u8);

impl Element {
    pub const fn new(value: u8) -> Element {
        Element(value)
    }

    pub const fn value(self) -> u8 {
        self.0
    }
}

impl From<u8> for Element {
    fn from(value: u8) -> Element {
        Element(value)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// The finite element domain `{0, .., k-1}` a run is configured with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Alphabet(u8);

impl Alphabet {
    /// Panics if `size` is zero; every run needs at least one element.
    pub fn new(size: u8) -> Alphabet {
        assert!(size >= 1, "alphabet must contain at least one element");
        Alphabet(size)
    }

    pub const fn size(self) -> u8 {
        self.0
    }

    pub fn elements(self) -> impl Iterator<Item = Element> + Clone {
        (0..self.0).map(Element)
    }

    pub fn contains(self, elem: Element) -> bool {
        elem.0 < self.0
    }
}

/// Implementation half of the protocol: state plus the cost discipline.
///
/// Costs reported here exclude any pending cost held by the wrapping
/// [`QueueObj`]; the wrapper does that bookkeeping uniformly.
pub trait QueueBehavior: fmt::Debug + Send + Sync {
    /// Cost this implementation pays when the queue is retired.
    fn quit_cost(&self) -> Cost;

    /// Latent cost of the push and the successor state.
    fn enqueue(&self, elem: Element) -> (Cost, Arc<dyn QueueBehavior>);

    /// Cost emitted now, the element handed out, and the successor state.
    fn dequeue(&self) -> (Cost, Option<Element>, Arc<dyn QueueBehavior>);

    /// Stored potential of the state, for amortization traces. Zero unless
    /// the implementation maintains one.
    fn potential(&self) -> Cost {
        Cost::ZERO
    }
}

/// An immutable queue handle: implementation state plus the latent cost
/// accumulated so far.
#[derive(Clone, Debug)]
pub struct QueueObj {
    pending: Cost,
    state: Arc<dyn QueueBehavior>,
}

/// Everything a dequeue observation yields. `rest` always starts with zero
/// pending cost: the dequeue has just flushed it.
#[derive(Clone, Debug)]
pub struct Dequeued {
    pub cost: Cost,
    pub elem: Option<Element>,
    pub rest: QueueObj,
}

impl QueueObj {
    pub fn new(state: Arc<dyn QueueBehavior>) -> QueueObj {
        QueueObj {
            pending: Cost::ZERO,
            state,
        }
    }

    pub fn from_behavior(state: impl QueueBehavior + 'static) -> QueueObj {
        QueueObj::new(Arc::new(state))
    }

    /// Latent cost charged but not yet emitted.
    pub fn pending(&self) -> Cost {
        self.pending
    }

    /// Charge an extra latent cost without observing the queue.
    #[must_use]
    pub fn step(&self, extra: Cost) -> QueueObj {
        QueueObj {
            pending: self.pending + extra,
            state: Arc::clone(&self.state),
        }
    }

    /// Retire the queue: flushes pending cost plus the implementation's own
    /// quit cost.
    pub fn quit(&self) -> Cost {
        self.pending + self.state.quit_cost()
    }

    /// Push an element. The operation's cost stays latent: it joins
    /// `pending` instead of being emitted.
    #[must_use]
    pub fn enqueue(&self, elem: Element) -> QueueObj {
        let (latent, state) = self.state.enqueue(elem);
        QueueObj {
            pending: self.pending + latent,
            state,
        }
    }

    /// Pop the next element. Emits all pending cost plus whatever the
    /// implementation pays for this dequeue.
    pub fn dequeue(&self) -> Dequeued {
        let (paid, elem, state) = self.state.dequeue();
        Dequeued {
            cost: self.pending + paid,
            elem,
            rest: QueueObj::new(state),
        }
    }

    /// Stored potential of the current state.
    pub fn potential(&self) -> Cost {
        self.state.potential()
    }
}
