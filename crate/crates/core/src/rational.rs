//! Exact scalar arithmetic. Everything in the crate computes over arbitrary
//! precision rationals; this module fixes the concrete types and provides the
//! primitive-integer-vector normalization used for hyperplane normals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Int = BigInt;
pub type Rational = num_rational::BigRational;

/// Rational with numerator `n` and denominator `d`. Panics when `d = 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from(BigInt::from(n))
}

/// Scales a rational vector to an integer vector with content 1 whose first
/// nonzero entry is positive. Proportional inputs collide after this.
/// Returns `None` for the zero vector.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<Int>> {
    if v.iter().all(|x| x.is_zero()) {
        return None;
    }
    let mut lcm = BigInt::from(1);
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<Int> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let mut gcd = BigInt::zero();
    for x in &ints {
        gcd = gcd.gcd(x);
    }
    for x in &mut ints {
        *x = &*x / &gcd;
    }
    if ints.iter().find(|x| !x.is_zero()).unwrap().is_negative() {
        for x in &mut ints {
            *x = -&*x;
        }
    }
    Some(ints)
}

/// Exact dot product of an integer vector against a rational point.
pub fn dot(normal: &[Int], point: &[Rational]) -> Rational {
    debug_assert_eq!(normal.len(), point.len());
    let mut acc = Rational::zero();
    for (a, x) in normal.iter().zip(point) {
        acc += Rational::from(a.clone()) * x;
    }
    acc
}
