//! Closed-form cover values and their exact evaluation.
//!
//! The five-list template's cover value, normalized by (m-2)^(m-2), is a
//! polynomial in the block fractions alpha_i = k_i/(m-2) alone; it is
//! evaluated here in exact rational arithmetic. The shared-core template's
//! cover cardinality is a closed form in (m, k, l) evaluated in exact
//! integers, together with its optimal l and the m -> infinity coefficient.

use crate::error::{Error, Result};
use num::{BigInt, BigRational, BigUint, ToPrimitive};

/// The five block fractions; exact rationals with sum 1 and 4*a4 <= 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaVector {
    a: [BigRational; 5],
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl AlphaVector {
    pub fn new(a: [BigRational; 5]) -> Result<Self> {
        let zero = BigRational::from_integer(BigInt::from(0));
        let one = BigRational::from_integer(BigInt::from(1));
        for (i, x) in a.iter().enumerate() {
            if *x < zero || *x > one {
                return Err(Error::InvalidParams(format!("alpha_{} = {x} outside [0,1]", i + 1)));
            }
        }
        let sum: BigRational = a.iter().cloned().sum();
        if sum != one {
            return Err(Error::InvalidParams(format!("alphas must sum to 1, got {sum}")));
        }
        if a[3].clone() * BigRational::from_integer(BigInt::from(4)) > one {
            return Err(Error::InvalidParams(format!("4*alpha_4 must be at most 1, got 4*{}", a[3])));
        }
        Ok(AlphaVector { a })
    }

    pub fn components(&self) -> &[BigRational; 5] {
        &self.a
    }
}

/// Exact normalized value of the track-peel cover of the five-list
/// template, as a polynomial in the block fractions.
pub fn theorem2_value(alpha: &AlphaVector) -> BigRational {
    let [a1, a2, a3, a4, a5] = alpha.a.clone();
    let one = BigRational::from_integer(BigInt::from(1));
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let four = BigRational::from_integer(BigInt::from(4));

    let sq = |x: &BigRational| x * x;
    let p4 = |x: &BigRational| sq(x) * sq(x);

    sq(&a1) + sq(&a2) + sq(&a3)
        + two.clone()
            * (sq(&a4) + two.clone() * &a4 * &a5 + (one.clone() - two.clone() * &a4) * sq(&a5))
            * (a1.clone() + &a2 + &a3)
        + four.clone()
            * (a4.clone() + a5.clone() * (one.clone() - three.clone() * &a4))
            * (a1.clone() * &a2 + a1.clone() * &a3 + a2.clone() * &a3)
        + four.clone() * &a1 * &a2 * &a3 * (one.clone() - three * &a4)
        + (p4(&(a4.clone() + &a5)) - p4(&a5))
        + p4(&a5) * (one - four * &a4)
}

/// f64 twin of [`theorem2_value`], used inside the optimizer.
pub fn theorem2_value_f64(a: [f64; 5]) -> f64 {
    let [a1, a2, a3, a4, a5] = a;
    let p4 = |x: f64| x * x * x * x;
    a1 * a1
        + a2 * a2
        + a3 * a3
        + 2.0 * (a4 * a4 + 2.0 * a4 * a5 + (1.0 - 2.0 * a4) * a5 * a5) * (a1 + a2 + a3)
        + 4.0 * (a4 + a5 * (1.0 - 3.0 * a4)) * (a1 * a2 + a1 * a3 + a2 * a3)
        + 4.0 * a1 * a2 * a3 * (1.0 - 3.0 * a4)
        + (p4(a4 + a5) - p4(a5))
        + p4(a5) * (1.0 - 4.0 * a4)
}

/// The two-variable polynomial obtained from [`theorem2_value`] at
/// a1 = a2 = a3 = (1 - a4 - a5)/3.
///
/// The a4-term of the a5^2 bracket is +2/9: the expansion of the full
/// polynomial fixes the sign, and only this sign reproduces both the full
/// polynomial and the reported numerical minimum.
pub fn theorem2_reduced_value(a4: &BigRational, a5: &BigRational) -> Result<BigRational> {
    let zero = BigRational::from_integer(BigInt::from(0));
    let one = BigRational::from_integer(BigInt::from(1));
    if *a4 < zero || *a5 < zero {
        return Err(Error::InvalidParams("alpha_4 and alpha_5 must be non-negative".into()));
    }
    if a4.clone() + a5 > one {
        return Err(Error::InvalidParams("alpha_4 + alpha_5 must be at most 1".into()));
    }
    if a4.clone() * BigRational::from_integer(BigInt::from(4)) > one {
        return Err(Error::InvalidParams("4*alpha_4 must be at most 1".into()));
    }
    let s = a4;
    let t = a5;
    let s2 = s * s;
    let s3 = s2.clone() * s;
    let s4 = s3.clone() * s;
    let c0 = rational(13, 27) - rational(6, 27) * s + rational(13, 9) * &s2
        - rational(58, 27) * &s3
        + rational(13, 9) * &s4;
    let c1 = rational(2, 9) - rational(22, 9) * s + rational(26, 9) * &s2 + rational(4, 3) * &s3;
    let c2 = rational(1, 9) + rational(2, 9) * s + rational(10, 3) * &s2;
    let c3 = rational(-22, 27) + rational(40, 9) * s;
    let c4 = one - rational(4, 1) * s;
    Ok(c0 + c1 * t + c2 * t * t + c3 * t * t * t + c4 * t * t * t * t)
}

/// f64 twin of [`theorem2_reduced_value`].
pub fn theorem2_reduced_value_f64(s: f64, t: f64) -> f64 {
    let c0 = 13.0 / 27.0 - 6.0 / 27.0 * s + 13.0 / 9.0 * s * s - 58.0 / 27.0 * s * s * s
        + 13.0 / 9.0 * s * s * s * s;
    let c1 = 2.0 / 9.0 - 22.0 / 9.0 * s + 26.0 / 9.0 * s * s + 4.0 / 3.0 * s * s * s;
    let c2 = 1.0 / 9.0 + 2.0 / 9.0 * s + 10.0 / 3.0 * s * s;
    let c3 = -22.0 / 27.0 + 40.0 / 9.0 * s;
    let c4 = 1.0 - 4.0 * s;
    c0 + c1 * t + c2 * t * t + c3 * t * t * t + c4 * t * t * t * t
}

fn validate_t3(m: u64, k: u64, l: u64) -> Result<()> {
    if m < 6 {
        return Err(Error::InvalidParams(format!("need m >= 6, got {m}")));
    }
    if k < 2 {
        return Err(Error::InvalidParams(format!("need k >= 2, got {k}")));
    }
    if k + l > m - 2 {
        return Err(Error::InvalidParams(format!(
            "k + l must be at most m-2 = {}, got {}",
            m - 2,
            k + l
        )));
    }
    Ok(())
}

/// Exact cardinality of the shared-core cover:
/// k(m-2)^(m-3) + (m-2)^(k-2) [ (m-2)^(m-2-k) - (m-3)^(m-2-k) ]
///              * ( (m-k-2)^2 + l^2 + 2lk - l(m-2) ).
pub fn theorem3_value(m: u64, k: u64, l: u64) -> Result<BigUint> {
    validate_t3(m, k, l)?;
    let pow = |b: u64, e: u64| BigUint::from(b).pow(e as u32);
    let part1 = BigUint::from(k) * pow(m - 2, m - 3);
    let delta = pow(m - 2, m - 2 - k) - pow(m - 3, m - 2 - k);
    // (m-k-2)^2 + l^2 + 2lk - l(m-2) rewritten without signed arithmetic:
    // l(m-2) + (m-2-k-l)^2, which the cover counting produces directly
    let tail = BigUint::from(l) * BigUint::from(m - 2)
        + BigUint::from(m - 2 - k - l) * BigUint::from(m - 2 - k - l);
    Ok(part1 + pow(m - 2, k - 2) * delta * tail)
}

/// The integer l minimizing [`theorem3_value`] for fixed (m, k):
/// (m-2-2k)/2 rounded down, which handles the odd-m rule as well.
pub fn theorem3_optimal_l(m: u64, k: u64) -> Result<u64> {
    if m < 6 || k < 2 || m - 2 < 2 * k {
        return Err(Error::InvalidParams(format!(
            "optimal l needs m-2-2k >= 0, got m={m}, k={k}"
        )));
    }
    let l = (m - 2 - 2 * k) / 2;
    let here = theorem3_value(m, k, l)?;
    if l > 0 {
        debug_assert!(here <= theorem3_value(m, k, l - 1)?);
    }
    if k + l < m - 2 {
        debug_assert!(here <= theorem3_value(m, k, l + 1)?);
    }
    Ok(l)
}

/// The m -> infinity coefficient of (m-2)^(m-2) in the shared-core bound
/// at k = 2: 3/4 * (1 - 1/e).
pub fn asymptotic_coefficient() -> f64 {
    0.75 * (1.0 - (-1.0f64).exp())
}

/// num/den as f64 via scaled integer division; safe for quotients far
/// outside f64's exponent range on either side of the bar.
pub fn big_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let scale = BigUint::from(10u64).pow(15);
    let q = num * scale / den;
    q.to_f64().unwrap_or(f64::INFINITY) / 1e15
}
