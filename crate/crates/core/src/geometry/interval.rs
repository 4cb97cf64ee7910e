use crate::scalar::Real;

/// Closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval<T> {
    pub lo: T,
    pub hi: T,
}

impl<T: Real> Interval<T> {
    /// Orders the endpoints if necessary.
    pub fn new(a: T, b: T) -> Self {
        if a <= b {
            Self { lo: a, hi: b }
        } else {
            Self { lo: b, hi: a }
        }
    }

    pub fn unit() -> Self {
        Self {
            lo: T::zero(),
            hi: T::one(),
        }
    }

    pub fn point(x: T) -> Self {
        Self { lo: x, hi: x }
    }

    pub fn diameter(&self) -> T {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> T {
        self.lo + (self.hi - self.lo) / T::lit(2.0)
    }

    pub fn contains(&self, x: T) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// `self ⊆ other`, allowing `slack` at both ends.
    pub fn is_within(&self, other: &Self, slack: T) -> bool {
        self.lo >= other.lo - slack && self.hi <= other.hi + slack
    }

    /// True when the open interiors do not intersect (touching is allowed).
    pub fn interiors_disjoint(&self, other: &Self, slack: T) -> bool {
        self.hi <= other.lo + slack || other.hi <= self.lo + slack
    }
}
