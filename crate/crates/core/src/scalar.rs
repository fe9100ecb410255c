use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, ToPrimitive};

/// Coefficient field for the algebraic layers.
///
/// Exact evaluation uses [`BigRational`]; `f64`/`f32` are accepted for
/// quick numerical work, where `is_negligible` absorbs rounding noise.
pub trait Scalar:
    Num + Neg<Output = Self> + Clone + PartialOrd + Debug + Display + Send + Sync + 'static
{
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self;

    fn from_i64(v: i64) -> Self {
        Self::from_ratio(&BigInt::from(v), &BigInt::one())
    }

    fn from_rational(q: &BigRational) -> Self {
        Self::from_ratio(q.numer(), q.denom())
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }
}

impl Scalar for BigRational {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        BigRational::new(num.clone(), den.clone())
    }
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    let q = BigRational::new(num.clone(), den.clone());
    q.to_f64().unwrap_or(f64::NAN)
}

impl Scalar for f64 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ratio_f64(num, den)
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-12
    }
}

impl Scalar for f32 {
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        ratio_f64(num, den) as f32
    }

    fn is_negligible(&self) -> bool {
        self.abs() < 1e-6
    }
}

/// Parse `p`, `-p` or `p/q` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let t = text.trim();
    match t.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d == BigInt::from(0) {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(t.parse().ok()?)),
    }
}
