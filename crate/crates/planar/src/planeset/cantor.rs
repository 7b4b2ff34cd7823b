//! The standard middle-thirds Cantor function.

use thiserror::Error;

#[derive(Debug, Error)]
#[error("cantor function argument {0} outside [0, 1]")]
pub struct CantorDomainError(pub f64);

/// Number of fractional bits in the fixed-point digit extraction.
const FRAC_BITS: u32 = 120;
/// Ternary digits examined; enough to saturate an f64 result.
const MAX_DIGITS: u32 = 64;

/// The usual Cantor function g on [0, 1]: monotone nondecreasing, g(0)=0,
/// g(1)=1, constant on each complementary interval of the Cantor set.
///
/// Ternary digits of the argument are extracted in exact fixed-point
/// arithmetic, so the result is the true value of `g` at the given
/// floating-point number: dyadic rationals (exactly representable) map to
/// their exact images, and monotonicity holds without rounding anomalies.
pub fn cantor_function(x: f64) -> Result<f64, CantorDomainError> {
    if !(0.0..=1.0).contains(&x) {
        return Err(CantorDomainError(x));
    }
    if x == 1.0 {
        return Ok(1.0);
    }
    // x = m · 2^e with 0 <= x < 1; shift into Q120 fixed point. Arguments
    // below 2^-68 truncate to 0, where g is within 2^-43 of 0 anyway.
    let mut r: u128 = {
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i32 - 1075; // value = mant * 2^exp
        let mant = if (bits >> 52) & 0x7ff == 0 {
            bits & ((1u64 << 52) - 1) // subnormal
        } else {
            (bits & ((1u64 << 52) - 1)) | (1u64 << 52)
        };
        let shift = FRAC_BITS as i32 + exp;
        if shift >= 0 {
            (mant as u128) << shift
        } else if shift > -128 {
            (mant as u128) >> (-shift)
        } else {
            0
        }
    };
    let mask: u128 = (1u128 << FRAC_BITS) - 1;
    let mut value = 0.0f64;
    let mut bit = 0.5f64;
    for _ in 0..MAX_DIGITS {
        if r == 0 {
            break;
        }
        let tripled = r * 3;
        let digit = (tripled >> FRAC_BITS) as u32;
        r = tripled & mask;
        match digit {
            0 => {}
            1 => {
                // first ternary 1: the binary expansion terminates here
                value += bit;
                break;
            }
            _ => value += bit,
        }
        bit *= 0.5;
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    /// Independent oracle: exact ternary digit extraction in rational
    /// arithmetic, mapped to the binary expansion, summed as a rational.
    fn cantor_oracle(x: Ratio<i128>, digits: u32) -> Ratio<i128> {
        let mut r = x;
        let mut value = Ratio::new(0, 1);
        let mut bit = Ratio::new(1, 2);
        for _ in 0..digits {
            r *= Ratio::new(3, 1);
            let digit = r.floor();
            r -= digit.clone();
            match digit.to_integer() {
                0 => {}
                1 => {
                    value += bit;
                    break;
                }
                _ => value += bit,
            }
            bit /= Ratio::new(2, 1);
        }
        value
    }

    #[test]
    fn endpoint_values() {
        assert_eq!(cantor_function(0.0).unwrap(), 0.0);
        assert_eq!(cantor_function(1.0).unwrap(), 1.0);
        assert!(cantor_function(-0.1).is_err());
        assert!(cantor_function(1.5).is_err());
    }

    #[test]
    fn first_plateau() {
        // 1/3 and 2/3 are not exactly representable; the images are within
        // an ulp-sized neighbourhood of 1/2.
        assert!((cantor_function(1.0 / 3.0).unwrap() - 0.5).abs() < 1e-9);
        assert!((cantor_function(2.0 / 3.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((cantor_function(0.5).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn quarter_maps_to_third() {
        // ternary(1/4) = 0.020202..., so g(1/4) = binary 0.0101... = 1/3.
        // 1/4 is exactly representable, so the 60-digit rational oracle and
        // the fixed-point implementation must agree to f64 accuracy.
        let oracle = cantor_oracle(Ratio::new(1, 4), 60);
        let diff = oracle - Ratio::new(1i128, 3);
        let eps = Ratio::new(1, 1i128 << 58);
        assert!(-eps < diff && diff < eps);
        let got = cantor_function(0.25).unwrap();
        assert!((got - 1.0 / 3.0).abs() < 1e-15, "got {got}");
    }

    #[test]
    fn matches_oracle_on_dyadics() {
        for k in 1..512u32 {
            let x = k as f64 / 512.0;
            let oracle = cantor_oracle(Ratio::new(k as i128, 512), 80);
            let oracle_f = *oracle.numer() as f64 / *oracle.denom() as f64;
            let got = cantor_function(x).unwrap();
            assert!(
                (got - oracle_f).abs() < 1e-12,
                "x={x}: got {got}, oracle {oracle_f}"
            );
        }
    }

    #[test]
    fn monotone_on_sorted_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let mut xs: Vec<f64> = (0..100_000).map(|_| rng.gen_range(0.0..=1.0)).collect();
        xs.sort_by(f64::total_cmp);
        let mut prev = 0.0;
        for &x in &xs {
            let v = cantor_function(x).unwrap();
            assert!(v >= prev, "monotonicity violated at x={x}");
            prev = v;
        }
    }

    #[test]
    fn constant_on_complementary_intervals() {
        // sample across the two level-2 complementary intervals
        let v1 = cantor_function(1.0 / 9.0 + 1e-6).unwrap();
        let v2 = cantor_function(2.0 / 9.0 - 1e-6).unwrap();
        assert_eq!(v1, v2);
        assert_eq!(v1, 0.25);
        let v3 = cantor_function(7.0 / 9.0 + 1e-6).unwrap();
        assert_eq!(v3, 0.75);
    }
}
