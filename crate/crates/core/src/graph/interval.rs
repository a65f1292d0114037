use std::fmt;

use serde::Serialize;

/// A closed time interval `[start, end]` over the extended reals.
///
/// Either endpoint may be infinite. Degenerate intervals (`start == end`) are
/// allowed; they arise from time-point edges widened by a zero window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeInterval {
    start: f64,
    end: f64,
}

impl TimeInterval {
    /// The indefinite interval `(-inf, inf)` carried by persistent edges.
    pub const ALWAYS: TimeInterval = TimeInterval {
        start: f64::NEG_INFINITY,
        end: f64::INFINITY,
    };

    /// Returns `None` if either endpoint is NaN or `start > end`.
    pub fn new(start: f64, end: f64) -> Option<Self> {
        if start.is_nan() || end.is_nan() || start > end {
            return None;
        }
        Some(TimeInterval { start, end })
    }

    pub fn point(t: f64) -> Option<Self> {
        Self::new(t, t)
    }

    #[inline]
    pub fn start(&self) -> f64 {
        self.start
    }

    #[inline]
    pub fn end(&self) -> f64 {
        self.end
    }

    pub fn is_finite(&self) -> bool {
        self.start.is_finite() && self.end.is_finite()
    }

    /// Closed-endpoint intersection test: touching intervals intersect.
    #[inline]
    pub fn intersects(&self, other: &TimeInterval) -> bool {
        self.start.max(other.start) <= self.end.min(other.end)
    }

    pub fn contains(&self, other: &TimeInterval) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn contains_time(&self, t: f64) -> bool {
        self.start <= t && t <= self.end
    }

    /// Extends both ends by `lambda`. Infinite endpoints stay infinite.
    pub fn widen(&self, lambda: f64) -> TimeInterval {
        TimeInterval {
            start: self.start - lambda,
            end: self.end + lambda,
        }
    }
}

impl fmt::Display for TimeInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.start, self.end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn iv(a: f64, b: f64) -> TimeInterval {
        TimeInterval::new(a, b).unwrap()
    }

    #[test]
    fn rejects_reversed_and_nan() {
        assert!(TimeInterval::new(3.0, 2.0).is_none());
        assert!(TimeInterval::new(f64::NAN, 2.0).is_none());
        assert!(TimeInterval::new(2.0, 2.0).is_some());
    }

    #[test]
    fn touching_endpoints_intersect() {
        assert!(iv(-2.0, 3.0).intersects(&iv(3.0, 8.0)));
        assert!(!iv(0.0, 1.0).intersects(&iv(5.0, 6.0)));
        assert!(iv(3.0, 3.0).intersects(&iv(3.0, 3.0)));
    }

    #[test]
    fn always_intersects_everything() {
        assert!(TimeInterval::ALWAYS.intersects(&iv(1e300, 1e300)));
        assert!(TimeInterval::ALWAYS.intersects(&TimeInterval::ALWAYS));
        assert_eq!(TimeInterval::ALWAYS.widen(5.0), TimeInterval::ALWAYS);
    }

    proptest! {
        #[test]
        fn intersection_symmetric_and_reflexive(
            a in -100.0f64..100.0, la in 0.0f64..50.0,
            b in -100.0f64..100.0, lb in 0.0f64..50.0,
        ) {
            let x = iv(a, a + la);
            let y = iv(b, b + lb);
            prop_assert_eq!(x.intersects(&y), y.intersects(&x));
            prop_assert!(x.intersects(&x));
        }
    }
}
