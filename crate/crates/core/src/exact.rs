//! The cylinder map in exact rational arithmetic.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Default bound on the decimal digits of any numerator or denominator
/// produced by [`iterate_exact`].
pub const DEFAULT_MAX_DIGITS: u64 = 1_000_000;

/// Builds `num/den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Fractional part in `[0, 1)`, also for negative inputs.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// A phase point on the cylinder `[0,1) x R`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CylinderPoint {
    x: Rational,
    y: Rational,
}

impl CylinderPoint {
    /// Creates a point, reducing `x` modulo 1.
    pub fn new(x: Rational, y: Rational) -> Self {
        CylinderPoint { x: frac(&x), y }
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    /// The point reflected through `(1/2, 0)`, i.e. `(1, 0) - self` with `x` read mod 1.
    pub fn reflected(&self) -> CylinderPoint {
        CylinderPoint::new(Rational::one() - &self.x, -&self.y)
    }

    fn max_bits(&self) -> u64 {
        [self.x.numer(), self.x.denom(), self.y.numer(), self.y.denom()]
            .iter()
            .map(|n| n.bits())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for CylinderPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// `sgn(x - 1/2)` with the singular lines `x = 0` and `x = 1/2` both mapped to 0.
pub fn sign_against_half(x: &Rational) -> i8 {
    if x.is_zero() {
        return 0;
    }
    let half = Rational::new(BigInt::one(), BigInt::from(2));
    match x.cmp(&half) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}

/// One application of the map with twist `alpha`.
pub fn step_exact(pt: &CylinderPoint, alpha: &Rational) -> CylinderPoint {
    let x = frac(&(&pt.x + alpha * &pt.y));
    let dy = sign_against_half(&x);
    let y = &pt.y + Rational::from_integer(BigInt::from(dy));
    CylinderPoint { x, y }
}

/// Returns `n + 1` points starting at `pt`, guarded by [`DEFAULT_MAX_DIGITS`].
pub fn iterate_exact(pt: &CylinderPoint, alpha: &Rational, n: usize) -> Result<Vec<CylinderPoint>> {
    iterate_exact_with_limit(pt, alpha, n, DEFAULT_MAX_DIGITS)
}

pub fn iterate_exact_with_limit(
    pt: &CylinderPoint,
    alpha: &Rational,
    n: usize,
    max_digits: u64,
) -> Result<Vec<CylinderPoint>> {
    // log2(10) ~ 3.3219; round the bit budget up.
    let max_bits = max_digits.saturating_mul(33_220) / 10_000 + 1;
    let check = |p: &CylinderPoint| {
        if p.max_bits() > max_bits {
            Err(Error::resource(format!(
                "rational components exceed {max_digits} decimal digits"
            )))
        } else {
            Ok(())
        }
    };
    check(pt)?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(pt.clone());
    for _ in 0..n {
        let next = step_exact(out.last().expect("non-empty"), alpha);
        check(&next)?;
        out.push(next);
    }
    Ok(out)
}

/// Vertical increment of one step, `y' - y`.
pub fn vertical_increment(before: &CylinderPoint, after: &CylinderPoint) -> i64 {
    let d = &after.y - &before.y;
    debug_assert!(d.is_integer());
    if d.is_positive() {
        1
    } else if d.is_negative() {
        -1
    } else {
        0
    }
}
