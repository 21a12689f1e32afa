//! Abstract cost accounting.
//!
//! [`Cost`] is a commutative monoid of non-negative integers under addition.
//! [`Comp`] pairs a value with the cost spent producing it, in writer-monad
//! style: `pure` spends nothing, `bind` adds the costs of both stages, and
//! `step` charges an extra amount without touching the value.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// A non-negative cost. Addition is checked: overflow aborts instead of
/// wrapping, so totals can be trusted in every build profile.
#[derive(
    Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Cost(u64);

impl Cost {
    pub const ZERO: Cost = Cost(0);

    pub const fn new(value: u64) -> Cost {
        Cost(value)
    }

    pub const fn value(self) -> u64 {
        self.0
    }
}

impl From<u64> for Cost {
    fn from(value: u64) -> Cost {
        Cost(value)
    }
}

impl Add for Cost {
    type Output = Cost;

    fn add(self, rhs: Cost) -> Cost {
        Cost(self.0.checked_add(rhs.0).expect("cost overflow"))
    }
}

impl AddAssign for Cost {
    fn add_assign(&mut self, rhs: Cost) {
        *self = *self + rhs;
    }
}

impl Sum for Cost {
    fn sum<I: Iterator<Item = Cost>>(iter: I) -> Cost {
        iter.fold(Cost::ZERO, Add::add)
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A finished computation: the value returned and the cost charged for it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Comp<A> {
    pub cost: Cost,
    pub value: A,
}

impl<A> Comp<A> {
    pub fn new(cost: Cost, value: A) -> Comp<A> {
        Comp { cost, value }
    }

    /// Return without spending.
    pub fn pure(value: A) -> Comp<A> {
        Comp {
            cost: Cost::ZERO,
            value,
        }
    }

    /// Charge `extra` on top of whatever the computation already cost.
    #[must_use]
    pub fn step(self, extra: Cost) -> Comp<A> {
        Comp {
            cost: self.cost + extra,
            value: self.value,
        }
    }

    /// Sequence another cost-charging stage; costs add.
    pub fn bind<B>(self, f: impl FnOnce(A) -> Comp<B>) -> Comp<B> {
        let next = f(self.value);
        Comp {
            cost: self.cost + next.cost,
            value: next.value,
        }
    }

    pub fn map<B>(self, f: impl FnOnce(A) -> B) -> Comp<B> {
        Comp {
            cost: self.cost,
            value: f(self.value),
        }
    }
}
