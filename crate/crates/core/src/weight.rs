//! Scalar abstraction for edge weights.
//!
//! Every algorithm in the crate is generic over [`Weight`]. Integer and
//! rational implementations are exact, so ratio bounds such as `5/6` are
//! checked by cross-multiplication with no tolerance. Float implementations
//! exist for convenience and compare with a small relative slack.

use std::fmt::{Debug, Display};

use num_rational::Ratio;
use num_traits::{FromPrimitive, NumAssign, ToPrimitive};

/// Exact rational used in reports and bound coefficients.
pub type Fraction = Ratio<i128>;

/// Rational coefficient of a bound, e.g. `5/6` in `alg >= 5/6 * opt`.
pub type Coef = Ratio<i64>;

/// A non-negative edge weight.
pub trait Weight:
    Copy
    + PartialOrd
    + Debug
    + Display
    + NumAssign
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    /// Whether `+`, `-`, `*` and exact division by small integers are exact.
    const EXACT: bool;

    /// Embeds a small integer.
    fn of(n: i64) -> Self {
        Self::from_i64(n).expect("small integer constant must be representable")
    }

    /// Exact (or, for floats, closest small-denominator) rational value.
    fn to_fraction(self) -> Option<Fraction>;

    /// `self >= other`, with a relative slack for inexact types.
    fn approx_ge(self, other: Self) -> bool {
        self >= other
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }
}

macro_rules! int_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            const EXACT: bool = true;
            fn to_fraction(self) -> Option<Fraction> {
                Some(Fraction::from_integer(self as i128))
            }
        }
    )*};
}

int_weight!(i32, i64, i128);

macro_rules! ratio_weight {
    ($($t:ty),*) => {$(
        impl Weight for Ratio<$t> {
            const EXACT: bool = true;
            fn to_fraction(self) -> Option<Fraction> {
                Some(Fraction::new(*self.numer() as i128, *self.denom() as i128))
            }
        }
    )*};
}

ratio_weight!(i32, i64);

macro_rules! float_weight {
    ($($t:ty),*) => {$(
        impl Weight for $t {
            const EXACT: bool = false;
            fn to_fraction(self) -> Option<Fraction> {
                Fraction::approximate_float(self)
            }
            fn approx_ge(self, other: Self) -> bool {
                let scale = 1.0 + self.abs().max(other.abs());
                self >= other - 1e-9 * scale
            }
        }
    )*};
}

float_weight!(f32, f64);

/// Sum of an iterator of weights.
pub fn total<W: Weight>(iter: impl IntoIterator<Item = W>) -> W {
    iter.into_iter().fold(W::zero(), |acc, w| acc + w)
}

/// Multiplies a weight by a rational coefficient; exact when `W::EXACT` and
/// the result is representable (integer weights require `den | value*num`).
pub fn scale<W: Weight>(value: W, coef: Coef) -> W {
    value * W::of(*coef.numer()) / W::of(*coef.denom())
}

/// `lhs >= coef * rhs`, decided by cross-multiplication so that integer
/// weights never round.
pub fn ge_scaled<W: Weight>(lhs: W, rhs: W, coef: Coef) -> bool {
    let den = W::of(*coef.denom());
    let num = W::of(*coef.numer());
    (lhs * den).approx_ge(rhs * num)
}

/// Exact value of `coef * value` as a fraction, for reporting.
pub fn scaled_fraction<W: Weight>(value: W, coef: Coef) -> Option<Fraction> {
    value.to_fraction().map(|f| {
        f * Fraction::new(*coef.numer() as i128, *coef.denom() as i128)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cross_multiplied_comparison_is_exact_for_integers() {
        // 5 >= 5/6 * 6 holds exactly; 4 does not.
        assert!(ge_scaled(5i64, 6, Coef::new(5, 6)));
        assert!(!ge_scaled(4i64, 6, Coef::new(5, 6)));
        assert!(ge_scaled(20i64, 24, Coef::new(5, 6)));
        assert!(!ge_scaled(19i64, 24, Coef::new(5, 6)));
    }

    #[test]
    fn rational_weights_are_exact() {
        let third = Ratio::new(1i64, 3);
        assert!(ge_scaled(third, Ratio::from_integer(1), Coef::new(1, 3)));
        assert_eq!(third.to_fraction(), Some(Fraction::new(1, 3)));
    }

    #[test]
    fn float_comparison_tolerates_rounding() {
        let a = 0.1f64 + 0.2;
        assert!(a.approx_ge(0.3));
        assert!(0.3f64.approx_ge(a));
        assert!(!0.29f64.approx_ge(0.3));
    }

    #[test]
    fn total_sums() {
        assert_eq!(total([1i64, 2, 3]), 6);
        assert_eq!(total(Vec::<i64>::new()), 0);
    }
}
