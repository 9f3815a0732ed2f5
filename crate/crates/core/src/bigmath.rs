//! Logarithms of big integers via top-bits mantissa extraction.

use num_bigint::{BigInt, BigUint};
use num_traits::ToPrimitive;

/// Natural log of a positive big integer; exact-path f64 for small values,
/// mantissa + bit shift for values beyond f64 range.
pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 53 {
        return x.to_f64().expect("fits in f64").ln();
    }
    let shift = bits - 53;
    let mantissa = (x >> shift).to_f64().expect("53 bits fit in f64");
    mantissa.ln() + shift as f64 * std::f64::consts::LN_2
}

pub(crate) fn ln_bigint_abs(x: &BigInt) -> f64 {
    ln_biguint(x.magnitude())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_f64_in_range() {
        for v in [1u64, 2, 3, 1000, 1 << 40] {
            let big = BigUint::from(v);
            assert!((ln_biguint(&big) - (v as f64).ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn handles_huge_values() {
        let big = BigUint::from(3u32).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_biguint(&big) - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn zero_is_negative_infinity() {
        assert_eq!(ln_biguint(&BigUint::from(0u32)), f64::NEG_INFINITY);
    }
}
