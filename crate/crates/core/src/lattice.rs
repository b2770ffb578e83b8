//! Reduction of the cylinder map to a bijection of the torus `Z_{bq} x Z_q`.
//!
//! With `alpha = p/q` and `y0 = a/b`, heights stay on `a/b + Z` and two
//! points `q` levels apart move identically, so `j` lives in `Z_q`. Points of
//! the same band `floor(bq * x)` stay in a common band, so one representative
//! per band suffices. Representatives sit on the midpoint lattice
//! `x = (2 + delta + 4r) / (4bq)` with `delta = bq mod 2`; those never land on
//! a discontinuity, which makes every vertical step exactly `+1` or `-1`.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{CylinderPoint, Rational};

/// Validated `alpha = p/q`, `y0 = a/b` with the derived torus constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ReducedParams {
    p: u64,
    q: u64,
    a: u64,
    b: u64,
    bq: u64,
    delta: u8,
}

impl ReducedParams {
    pub fn p(&self) -> u64 {
        self.p
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn a(&self) -> u64 {
        self.a
    }
    pub fn b(&self) -> u64 {
        self.b
    }
    /// Width of the torus, `b * q`.
    pub fn bq(&self) -> u64 {
        self.bq
    }
    /// `bq mod 2`: 0 selects the even lattice, 1 the odd one.
    pub fn delta(&self) -> u8 {
        self.delta
    }
    /// Number of lattice states, `bq * q`.
    pub fn state_count(&self) -> u128 {
        self.bq as u128 * self.q as u128
    }
    pub fn alpha(&self) -> Rational {
        Rational::new(BigInt::from(self.p), BigInt::from(self.q))
    }
    pub fn y0(&self) -> Rational {
        Rational::new(BigInt::from(self.a), BigInt::from(self.b))
    }

    /// `p (a + b j) mod bq`, the horizontal shift applied at level `j`.
    pub fn increment(&self, j: u64) -> u64 {
        let bq = self.bq as u128;
        let level = (self.a as u128 + (self.b as u128 % bq) * (j as u128 % bq)) % bq;
        ((self.p as u128 % bq) * level % bq) as u64
    }

    /// The standard family `alpha = 1/q`, `y0 = 0`.
    pub fn unit(q: u64) -> Result<Self> {
        make_params(1, q, 0, 1)
    }
}

impl fmt::Display for ReducedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} a={} b={}", self.p, self.q, self.a, self.b)
    }
}

/// Validates `(p, q, a, b)`.
///
/// `a` is reduced into `[0, b)`; its integer part only relabels levels.
/// `p/q` and the reduced `a/b` must both be in lowest terms.
pub fn make_params(p: u64, q: u64, a: i64, b: u64) -> Result<ReducedParams> {
    if q == 0 {
        return Err(Error::invalid("q must be positive"));
    }
    if b == 0 {
        return Err(Error::invalid("b must be positive"));
    }
    if p == 0 {
        return Err(Error::invalid("p must be positive"));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::invalid(format!("gcd(p, q) = gcd({p}, {q}) != 1")));
    }
    let a = (a as i128).rem_euclid(b as i128) as u64;
    if a.gcd(&b) != 1 {
        return Err(Error::invalid(format!("a/b = {a}/{b} is not in lowest terms")));
    }
    let bq = b
        .checked_mul(q)
        .ok_or_else(|| Error::invalid(format!("b * q overflows 64 bits (b={b}, q={q})")))?;
    Ok(ReducedParams { p, q, a, b, bq, delta: (bq % 2) as u8 })
}

/// A point of the torus. Ordered by level first, then horizontal index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeState {
    pub r: u64,
    pub j: u64,
}

impl LatticeState {
    pub fn new(r: u64, j: u64) -> Self {
        LatticeState { r, j }
    }

    pub fn validate(&self, params: &ReducedParams) -> Result<()> {
        if self.r >= params.bq || self.j >= params.q {
            return Err(Error::invalid(format!(
                "state ({}, {}) outside Z_{} x Z_{}",
                self.r, self.j, params.bq, params.q
            )));
        }
        Ok(())
    }
}

impl Ord for LatticeState {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.j, self.r).cmp(&(other.j, other.r))
    }
}

impl PartialOrd for LatticeState {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LatticeState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.r, self.j)
    }
}

/// A torus state together with the unreduced vertical displacement since the start.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LiftedState {
    pub state: LatticeState,
    pub lift: i64,
}

impl LiftedState {
    pub fn new(state: LatticeState) -> Self {
        LiftedState { state, lift: 0 }
    }
}

/// Exact cylinder point represented by a lattice state.
pub fn embed(s: LatticeState, params: &ReducedParams) -> CylinderPoint {
    let x = Rational::new(
        BigInt::from(2 + params.delta as u64) + BigInt::from(4u8) * BigInt::from(s.r),
        BigInt::from(4u8) * BigInt::from(params.bq),
    );
    let y = params.y0() + Rational::from_integer(BigInt::from(s.j));
    CylinderPoint::new(x, y)
}

/// Lattice state of the band containing `pt`.
///
/// Fails when `y` is off the `a/b + Z` grid or `x` sits on a band boundary `k / bq`.
pub fn project(pt: &CylinderPoint, params: &ReducedParams) -> Result<LatticeState> {
    let level = pt.y() - params.y0();
    if !level.is_integer() {
        return Err(Error::invalid(format!(
            "y = {} is not on the grid {} + Z",
            pt.y(),
            params.y0()
        )));
    }
    let scaled = pt.x() * Rational::from_integer(BigInt::from(params.bq));
    if scaled.is_integer() {
        return Err(Error::invalid(format!("x = {} lies on a band boundary", pt.x())));
    }
    let r = scaled.floor().to_integer().to_u64().expect("0 <= x < 1");
    let j = level.to_integer().mod_floor(&BigInt::from(params.q));
    let j = if j.is_zero() { 0 } else { j.to_u64().expect("reduced mod q") };
    Ok(LatticeState { r, j })
}

#[inline]
fn vertical_sign(r: u64, params: &ReducedParams) -> i8 {
    // sgn(2r - bq + 1 + delta); the argument is odd, never zero.
    if 2 * r as u128 + 1 + params.delta as u128 > params.bq as u128 {
        1
    } else {
        -1
    }
}

/// One step of the torus map. Returns the image and the vertical move `dj`.
pub fn step_lattice(s: LatticeState, params: &ReducedParams) -> (LatticeState, i8) {
    let r = ((s.r as u128 + params.increment(s.j) as u128) % params.bq as u128) as u64;
    let dj = vertical_sign(r, params);
    let j = match dj {
        1 if s.j + 1 == params.q => 0,
        1 => s.j + 1,
        _ if s.j == 0 => params.q - 1,
        _ => s.j - 1,
    };
    (LatticeState { r, j }, dj)
}

pub fn step_lifted(s: LiftedState, params: &ReducedParams) -> LiftedState {
    let (state, dj) = step_lattice(s.state, params);
    LiftedState { state, lift: s.lift + dj as i64 }
}

/// The torus map with per-level shifts precomputed, for tight loops.
#[derive(Clone, Debug)]
pub struct LatticeMap {
    params: ReducedParams,
    shift: Vec<u64>,
    // r' >= threshold  <=>  dj = +1
    threshold: u64,
}

impl LatticeMap {
    pub fn new(params: ReducedParams) -> Self {
        let shift = (0..params.q).map(|j| params.increment(j)).collect();
        // 2r + 1 + delta > bq  <=>  r >= floor((bq - delta) / 2)
        let threshold = (params.bq - params.delta as u64) / 2;
        LatticeMap { params, shift, threshold }
    }

    pub fn params(&self) -> &ReducedParams {
        &self.params
    }

    #[inline(always)]
    pub fn step(&self, r: u64, j: u64) -> (u64, u64, i8) {
        let mut r = r + self.shift[j as usize];
        if r >= self.params.bq {
            r -= self.params.bq;
        }
        if r >= self.threshold {
            let j = if j + 1 == self.params.q { 0 } else { j + 1 };
            (r, j, 1)
        } else {
            let j = if j == 0 { self.params.q - 1 } else { j - 1 };
            (r, j, -1)
        }
    }

    #[inline]
    pub fn step_state(&self, s: LatticeState) -> (LatticeState, i8) {
        let (r, j, dj) = self.step(s.r, s.j);
        (LatticeState { r, j }, dj)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn params_fields() {
        let p = make_params(1, 3, 0, 1).unwrap();
        assert_eq!((p.p(), p.q(), p.a(), p.b(), p.bq(), p.delta()), (1, 3, 0, 1, 3, 1));
        let p = make_params(1, 6, 1, 2).unwrap();
        assert_eq!((p.p(), p.q(), p.a(), p.b(), p.bq(), p.delta()), (1, 6, 1, 2, 12, 0));
    }

    #[test]
    fn params_rejections() {
        assert!(matches!(make_params(2, 4, 0, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_params(1, 0, 0, 1), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_params(1, 3, 0, 0), Err(Error::InvalidArgument(_))));
        assert!(matches!(make_params(1, 3, 2, 4), Err(Error::InvalidArgument(_))));
        assert!(make_params(1, u64::MAX, 0, 3).is_err());
    }

    #[test]
    fn a_is_folded_into_range() {
        let p = make_params(1, 5, 7, 3).unwrap();
        assert_eq!(p.a(), 1);
        let p = make_params(1, 5, -1, 3).unwrap();
        assert_eq!(p.a(), 2);
        let p = make_params(1, 5, 4, 1).unwrap();
        assert_eq!(p.a(), 0);
    }

    #[test]
    fn embed_examples() {
        let p = make_params(1, 3, 0, 1).unwrap();
        let pt = embed(LatticeState::new(0, 0), &p);
        assert_eq!((pt.x(), pt.y()), (&rat(1, 4), &rat(0, 1)));
        let p = make_params(1, 4, 0, 1).unwrap();
        let pt = embed(LatticeState::new(3, 1), &p);
        assert_eq!((pt.x(), pt.y()), (&rat(7, 8), &rat(1, 1)));
    }

    #[test]
    fn project_examples() {
        let p = make_params(1, 3, 0, 1).unwrap();
        let s = project(&CylinderPoint::new(rat(3, 10), rat(0, 1)), &p).unwrap();
        assert_eq!(s, LatticeState::new(0, 0));
        let s = project(&CylinderPoint::new(rat(3, 10), rat(-1, 1)), &p).unwrap();
        assert_eq!(s, LatticeState::new(0, 2));
        assert!(project(&CylinderPoint::new(rat(3, 10), rat(1, 3)), &p).is_err());
        assert!(project(&CylinderPoint::new(rat(1, 3), rat(0, 1)), &p).is_err());
    }

    #[test]
    fn round_trip_on_small_grids() {
        for (q, b, a) in [(5, 1, 0), (5, 2, 1), (4, 3, 2), (1, 5, 3)] {
            let p = make_params(1, q, a, b).unwrap();
            for j in 0..q {
                for r in 0..p.bq() {
                    let s = LatticeState::new(r, j);
                    assert_eq!(project(&embed(s, &p), &p).unwrap(), s);
                }
            }
        }
    }

    #[test]
    fn step_examples_q3() {
        let p = make_params(1, 3, 0, 1).unwrap();
        assert_eq!(step_lattice(LatticeState::new(0, 0), &p), (LatticeState::new(0, 2), -1));
        assert_eq!(step_lattice(LatticeState::new(1, 0), &p), (LatticeState::new(1, 1), 1));
        assert_eq!(step_lattice(LatticeState::new(2, 2), &p), (LatticeState::new(1, 0), 1));
    }

    #[test]
    fn step_example_half_level() {
        let p = make_params(1, 6, 1, 2).unwrap();
        assert_eq!(step_lattice(LatticeState::new(3, 3), &p), (LatticeState::new(10, 4), 1));
    }

    #[test]
    fn origin_is_four_periodic_at_q4() {
        let p = make_params(1, 4, 0, 1).unwrap();
        let mut s = LatticeState::new(0, 0);
        let mut seen = vec![];
        for _ in 0..4 {
            let (n, dj) = step_lattice(s, &p);
            seen.push((n, dj));
            s = n;
        }
        assert_eq!(
            seen,
            vec![
                (LatticeState::new(0, 3), -1),
                (LatticeState::new(3, 0), 1),
                (LatticeState::new(3, 1), 1),
                (LatticeState::new(0, 0), -1),
            ]
        );
    }

    #[test]
    fn lifted_steps() {
        let p = make_params(1, 3, 0, 1).unwrap();
        let mut s = LiftedState::new(LatticeState::new(1, 0));
        let lifts: Vec<i64> = (0..3)
            .map(|_| {
                s = step_lifted(s, &p);
                s.lift
            })
            .collect();
        assert_eq!(lifts, vec![1, 2, 3]);
        assert_eq!(s.state, LatticeState::new(1, 0));

        let mut s = LiftedState::new(LatticeState::new(0, 0));
        for _ in 0..4 {
            s = step_lifted(s, &p);
        }
        assert_eq!((s.state, s.lift), (LatticeState::new(0, 0), 0));
    }

    #[test]
    fn lattice_map_matches_step_lattice() {
        for (p, q, a, b) in [(1, 3, 0, 1), (2, 5, 1, 3), (3, 8, 1, 2), (5, 7, 3, 4), (1, 1, 2, 5)] {
            let params = make_params(p, q, a, b).unwrap();
            let map = LatticeMap::new(params);
            for j in 0..q {
                for r in 0..params.bq() {
                    let s = LatticeState::new(r, j);
                    assert_eq!(map.step_state(s), step_lattice(s, &params));
                }
            }
        }
    }

    #[test]
    fn state_order_is_level_major() {
        assert!(LatticeState::new(5, 0) < LatticeState::new(0, 1));
        assert!(LatticeState::new(1, 2) < LatticeState::new(2, 2));
    }
}
