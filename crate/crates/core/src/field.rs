//! Coefficient fields for the two linear-algebra backends.
//!
//! The exact backend works over ℚ(p) ([`Scalar`]); the evaluated backend works
//! over ℚ after specializing `p` at an [`EvalPoint`]. Everything downstream is
//! generic over [`Field`] and receives a [`Backend`] that knows how to embed
//! ℚ(p) constants.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::scalar::{EvalPoint, Scalar};

pub trait Field: Clone + PartialEq + Debug + Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    /// Cost estimate used for pivot selection.
    fn size(&self) -> u64;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn from_i64(n: i64) -> Self {
        Scalar::from_i64(n)
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        Scalar::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        Scalar::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        Scalar::mul(self, other)
    }
    fn neg(&self) -> Self {
        Scalar::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        Scalar::inv(self)
    }
    fn size(&self) -> u64 {
        Scalar::size(self)
    }
    fn is_one(&self) -> bool {
        Scalar::is_one(self)
    }
}

impl Field for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn size(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendKind {
    Exact,
    Evaluated,
}

/// Embedding of ℚ(p) into a working field.
pub trait Backend: Clone + Send + Sync {
    type F: Field;

    fn kind(&self) -> BackendKind;
    fn embed(&self, s: &Scalar) -> Result<Self::F>;
    /// Human-readable label, e.g. `exact` or `evaluated@7/5`.
    fn label(&self) -> String;

    fn p(&self) -> Self::F {
        self.embed(&Scalar::p()).expect("p embeds")
    }

    fn int(&self, n: i64) -> Self::F {
        Self::F::from_i64(n)
    }

    /// `[n]` in the working field.
    fn qint(&self, n: i64) -> Self::F {
        self.embed(&crate::scalar::q_int(n)).expect("q-integer embeds")
    }

    fn p_pow(&self, e: i64) -> Self::F {
        self.embed(&Scalar::p_pow(e)).expect("power of p embeds")
    }
}

#[derive(Clone, Debug, Default)]
pub struct Exact;

impl Backend for Exact {
    type F = Scalar;

    fn kind(&self) -> BackendKind {
        BackendKind::Exact
    }
    fn embed(&self, s: &Scalar) -> Result<Scalar> {
        Ok(s.clone())
    }
    fn label(&self) -> String {
        "exact".into()
    }
}

#[derive(Clone, Debug)]
pub struct Evaluated {
    pub point: EvalPoint,
}

impl Evaluated {
    pub fn new(point: EvalPoint) -> Self {
        Evaluated { point }
    }
}

impl Default for Evaluated {
    fn default() -> Self {
        Evaluated::new(EvalPoint::default_point())
    }
}

impl Backend for Evaluated {
    type F = BigRational;

    fn kind(&self) -> BackendKind {
        BackendKind::Evaluated
    }
    fn embed(&self, s: &Scalar) -> Result<BigRational> {
        crate::scalar::eval_at(s, &self.point)
    }
    fn label(&self) -> String {
        format!("evaluated@{}", self.point.value())
    }
}
