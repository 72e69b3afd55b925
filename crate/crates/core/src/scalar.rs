//! Real scalar abstraction shared by the analytic bounds and ratio reports.

use std::fmt::{Debug, Display};

use num_bigint::BigUint;
use num_traits::{Float, FromPrimitive, ToPrimitive};

/// A floating-point scalar usable for bounds and ratios (`f32` or `f64`).
pub trait Real: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    fn from_usize_exact(n: usize) -> Self {
        Self::from_usize(n).expect("usize converts to float")
    }

    /// Nearest representable value of a big integer.
    fn from_biguint(n: &BigUint) -> Self {
        Self::from_f64(n.to_f64().unwrap_or(f64::INFINITY)).unwrap_or(Self::infinity())
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Real for f32 {}
impl Real for f64 {}

/// `log2` of a big integer from its leading 64 bits, independent of any
/// product-of-logs formula.
pub fn log2_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return n.to_u64().map(|v| (v as f64).log2()).unwrap_or(f64::NEG_INFINITY);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().expect("64 leading bits");
    (top as f64).log2() + shift as f64
}

/// Serde adapter writing big integers as decimal strings.
pub mod decimal {
    use num_bigint::BigUint;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&n.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log2_of_big_values() {
        assert_eq!(log2_biguint(&BigUint::from(1024u32)), 10.0);
        let two_200 = BigUint::from(1u32) << 200u32;
        assert!((log2_biguint(&two_200) - 200.0).abs() < 1e-12);
        let x = BigUint::from(3u32) << 300u32;
        assert!((log2_biguint(&x) - (300.0 + 3f64.log2())).abs() < 1e-12);
    }

    #[test]
    fn biguint_conversion() {
        assert_eq!(f64::from_biguint(&BigUint::from(2520u32)), 2520.0);
        assert_eq!(f32::from_biguint(&BigUint::from(15u32)), 15.0);
    }
}
