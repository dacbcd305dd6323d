//! Value quantization: reals to integer tokens at a fixed step.

use crate::error::{Error, Result};

/// Default quantization step for spectral quantities. Eigensolver
/// residuals sit at or below this scale, while genuinely distinct
/// resistance/kernel values on small unweighted graphs differ by far
/// more.
pub const DEFAULT_QUANT_STEP: f64 = 1e-9;

/// One quantized channel value. i128 leaves room for matrix-power
/// entries that overflow i64 at the default step.
pub type Token = i128;

/// Rounds `value / quant_step` to the nearest integer. Signed zero
/// normalizes to 0; overflow and non-finite values are rejected.
pub fn quantize(value: f64, quant_step: f64) -> Result<Token> {
    if quant_step.is_nan() || quant_step <= 0.0 {
        return Err(Error::BadQuantStep(quant_step));
    }
    let scaled = value / quant_step;
    if !scaled.is_finite() {
        return Err(Error::TokenOverflow { value, quant_step });
    }
    let rounded = scaled.round();
    // f64 can exceed i128 range; compare against the representable bound.
    const BOUND: f64 = 1.7014118346046923e38;
    if !(-BOUND..=BOUND).contains(&rounded) {
        return Err(Error::TokenOverflow { value, quant_step });
    }
    let token = rounded as i128;
    // +0.0 and -0.0 both land here as 0.
    Ok(token)
}

/// Order-preserving byte encoding: flipping the sign bit makes the
/// big-endian two's-complement bytes sort in numeric order.
pub fn token_bytes(t: Token) -> [u8; 16] {
    ((t as u128) ^ (1u128 << 127)).to_be_bytes()
}

/// Serializes a row of channel tokens for hashing.
pub fn row_bytes(tokens: &[Token]) -> Vec<u8> {
    let mut out = Vec::with_capacity(tokens.len() * 16);
    for &t in tokens {
        out.extend_from_slice(&token_bytes(t));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rounding_example() {
        assert_eq!(quantize(0.7500000001, 1e-9).unwrap(), 750_000_000);
    }

    #[test]
    fn signed_zero_normalizes() {
        assert_eq!(quantize(-0.0, 1e-9).unwrap(), 0);
        assert_eq!(quantize(0.0, 1e-9).unwrap(), 0);
        assert_eq!(token_bytes(quantize(-0.0, 1e-9).unwrap()), token_bytes(0));
    }

    #[test]
    fn overflow_rejected() {
        assert!(quantize(1e40, 1e-9).is_err());
        assert!(quantize(f64::NAN, 1e-9).is_err());
        assert!(quantize(f64::INFINITY, 1.0).is_err());
    }

    #[test]
    fn bad_step_rejected() {
        assert!(quantize(1.0, 0.0).is_err());
        assert!(quantize(1.0, -1e-9).is_err());
    }

    proptest! {
        /// Values at least one step apart always tokenize distinctly.
        #[test]
        fn separated_values_get_distinct_tokens(
            a in -1e6f64..1e6,
            delta in 1.0f64..1e6,
        ) {
            let step = 1.0;
            let ta = quantize(a, step).unwrap();
            let tb = quantize(a + delta, step).unwrap();
            prop_assert_ne!(ta, tb);
        }

        /// Byte encoding preserves numeric order.
        #[test]
        fn byte_order_matches_numeric_order(a in any::<i64>(), b in any::<i64>()) {
            let (a, b) = (a as i128, b as i128);
            prop_assert_eq!(a.cmp(&b), token_bytes(a).cmp(&token_bytes(b)));
        }
    }
}
