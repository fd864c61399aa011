//! Direct Gauss series in fixed-point big-integer arithmetic.
//!
//! Inputs are converted from `f64` exactly (up to one unit of the working
//! scale), so the result is the series for the same binary parameters the
//! double-precision evaluator sees.

use num_bigint::{BigInt, Sign};
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::hyperfun::HyperParams;

const GUARD_DIGITS: u32 = 20;
const MAX_TERMS: usize = 200_000;

fn to_fixed(x: f64, scale: &BigInt) -> BigInt {
    if x == 0.0 {
        return BigInt::zero();
    }
    let bits = x.to_bits();
    let negative = bits >> 63 == 1;
    let exp = ((bits >> 52) & 0x7ff) as i64;
    let frac = bits & ((1u64 << 52) - 1);
    let (mant, e) = if exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), exp - 1075) };
    let mut v = BigInt::from(mant) * scale;
    if e >= 0 {
        v <<= e as usize;
    } else {
        v >>= (-e) as usize;
    }
    if negative {
        -v
    } else {
        v
    }
}

/// Fixed-point value `v / 10^shift` rounded to `digits` decimals.
fn format_fixed(v: &BigInt, shift: u32, digits: u32) -> String {
    let drop = BigInt::from(10u32).pow(shift - digits);
    let half = &drop / 2;
    let mag = v.abs();
    let rounded: BigInt = (mag + half) / drop;
    let s = rounded.to_str_radix(10);
    let d = digits as usize;
    let padded = if s.len() <= d { format!("{}{}", "0".repeat(d + 1 - s.len()), s) } else { s };
    let (int, frac) = padded.split_at(padded.len() - d);
    let sign = if v.sign() == Sign::Minus && !rounded_is_zero(&padded) { "-" } else { "" };
    if d == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

fn rounded_is_zero(s: &str) -> bool {
    s.bytes().all(|b| b == b'0')
}

/// `2F1(α, β; γ; z)` summed term by term with `digits` decimals after the
/// point (plus guard digits), returned as a decimal string.
pub fn highprec_2f1(p: &HyperParams, digits: u32) -> Result<String> {
    p.validate()?;
    if digits == 0 || digits > 500 {
        return Err(invalid("digits must lie in 1..=500"));
    }
    let shift = digits + GUARD_DIGITS;
    let scale = BigInt::from(10u32).pow(shift);
    let scale2 = &scale * &scale;
    let z = to_fixed(p.z, &scale);
    let (a0, b0, c0) = (to_fixed(p.alpha, &scale), to_fixed(p.beta, &scale), to_fixed(p.gamma, &scale));

    let mut sum = scale.clone();
    let mut term = scale.clone();
    for k in 0..MAX_TERMS {
        let kb = BigInt::from(k) * &scale;
        let num = &term * (&a0 + &kb) * (&b0 + &kb) * &z;
        let den = (&c0 + &kb) * BigInt::from(k + 1) * &scale2;
        if den.is_zero() {
            return Err(invalid("gamma hits a non-positive integer"));
        }
        term = num / den;
        if term.is_zero() {
            return Ok(format_fixed(&sum, shift, digits));
        }
        sum += &term;
    }
    Err(Error::SeriesNonConvergence {
        partial_sum: (sum.to_f64().unwrap_or(f64::NAN)) / 10f64.powi(shift as i32),
        terms: MAX_TERMS,
    })
}

/// Convenience wrapper parsing the decimal string back to the nearest `f64`.
pub fn highprec_2f1_f64(p: &HyperParams, digits: u32) -> Result<f64> {
    let s = highprec_2f1(p, digits)?;
    s.parse::<f64>().map_err(|e| invalid(e.to_string()))
}
