//! The base field ℚ(p) of rational functions in the Hecke parameter `p`.
//!
//! A [`Scalar`] is stored as `c · num / den` with `c` an exact rational and
//! `num`, `den` primitive integer polynomials with positive leading
//! coefficients and `gcd(num, den) = 1`. That form is unique, so derived
//! equality is field equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::ZPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    c: BigRational,
    num: ZPoly,
    den: ZPoly,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({self})")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar {
            c: BigRational::zero(),
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    pub fn one() -> Self {
        Scalar::from_i64(1)
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> Self {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            c,
            num: ZPoly::one(),
            den: ZPoly::one(),
        }
    }

    /// The indeterminate `p`.
    pub fn p() -> Self {
        Scalar::from_poly(&ZPoly::x())
    }

    pub fn from_poly(poly: &ZPoly) -> Self {
        Scalar::from_parts(BigRational::one(), poly.clone(), ZPoly::one())
    }

    /// `p^e` for any integer `e`.
    pub fn p_pow(e: i64) -> Self {
        let m = ZPoly::monomial(BigInt::one(), e.unsigned_abs() as usize);
        if e >= 0 {
            Scalar::from_parts(BigRational::one(), m, ZPoly::one())
        } else {
            Scalar::from_parts(BigRational::one(), ZPoly::one(), m)
        }
    }

    /// Normalize an arbitrary `c · num / den`.
    pub fn from_parts(c: BigRational, num: ZPoly, den: ZPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if c.is_zero() || num.is_zero() {
            return Scalar::zero();
        }
        let (cn, n) = num.primitive();
        let (cd, d) = den.primitive();
        let c = c * BigRational::new(cn, cd);
        let g = n.gcd(&d);
        if g.is_one() {
            return Scalar { c, num: n, den: d };
        }
        let n = n.div_exact(&g).expect("gcd divides numerator");
        let d = d.div_exact(&g).expect("gcd divides denominator");
        Scalar { c, num: n, den: d }
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.c.is_one() && self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a constant rational.
    pub fn is_constant(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_constant().then_some(&self.c)
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn numerator(&self) -> &ZPoly {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn content(&self) -> &BigRational {
        &self.c
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            c: -&self.c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Integer polynomial numerators over a shared rational scale.
        let (ra, sa) = (self.c.numer(), self.c.denom());
        let (rb, sb) = (other.c.numer(), other.c.denom());
        let l = sa.lcm(sb);
        let ka = ra * (&l / sa);
        let kb = rb * (&l / sb);
        let scale = BigRational::new(BigInt::one(), l);
        if self.den == other.den {
            let n = self.num.scale(&ka).add(&other.num.scale(&kb));
            return Scalar::from_parts(scale, n, self.den.clone());
        }
        let g = self.den.gcd(&other.den);
        let da = self.den.div_exact(&g).unwrap();
        let db = other.den.div_exact(&g).unwrap();
        let n = self
            .num
            .mul(&db)
            .scale(&ka)
            .add(&other.num.mul(&da).scale(&kb));
        let d = self.den.mul(&db);
        Scalar::from_parts(scale, n, d)
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        if self.is_zero() || other.is_zero() {
            return Scalar::zero();
        }
        let c = &self.c * &other.c;
        if self.den.is_one() && other.den.is_one() {
            return Scalar {
                c,
                num: self.num.mul(&other.num),
                den: ZPoly::one(),
            };
        }
        let g1 = self.num.gcd(&other.den);
        let g2 = other.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).unwrap();
        let d2 = other.den.div_exact(&g1).unwrap();
        let n2 = other.num.div_exact(&g2).unwrap();
        let d1 = self.den.div_exact(&g2).unwrap();
        Scalar {
            c,
            num: n1.mul(&n2),
            den: d1.mul(&d2),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(Scalar {
            c: self.c.recip(),
            num: self.den.clone(),
            den: self.num.clone(),
        })
    }

    pub fn div(&self, other: &Scalar) -> Option<Scalar> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = Scalar::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Rough bit size, used to pick cheap pivots during elimination.
    pub fn size(&self) -> u64 {
        if self.is_zero() {
            return 0;
        }
        self.c.numer().bits() + self.c.denom().bits() + self.num.bits() + self.den.bits()
    }

    /// The numerator with `c` folded in and the denominator made monic, as
    /// rational coefficient lists (lowest degree first).
    pub fn monic_parts(&self) -> (Vec<BigRational>, Vec<BigRational>) {
        if self.is_zero() {
            return (Vec::new(), vec![BigRational::one()]);
        }
        let lead = BigRational::from_integer(self.den.lead().unwrap().clone());
        let k = &self.c / &lead;
        let num = self
            .num
            .coeffs()
            .iter()
            .map(|a| &k * BigRational::from_integer(a.clone()))
            .collect();
        let den = self
            .den
            .coeffs()
            .iter()
            .map(|a| BigRational::from_integer(a.clone()) / &lead)
            .collect();
        (num, den)
    }

    /// Exact value at `p = x`.
    pub fn eval_rational(&self, x: &BigRational) -> Result<BigRational> {
        if self.is_zero() {
            return Ok(BigRational::zero());
        }
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::PoleAtPoint {
                point: x.to_string(),
            });
        }
        Ok(&self.c * self.num.eval(x) / d)
    }
}

/// `[n] = (p^n - 1)/(p - 1)`, for any integer `n`.
pub fn q_int(n: i64) -> Scalar {
    if n == 0 {
        return Scalar::zero();
    }
    let ones = ZPoly::from_i64s(&vec![1; n.unsigned_abs() as usize]);
    if n > 0 {
        Scalar::from_poly(&ones)
    } else {
        // (p^{-m} - 1)/(p - 1) = -(1 + ... + p^{m-1}) / p^m
        let m = ZPoly::monomial(BigInt::one(), n.unsigned_abs() as usize);
        Scalar::from_parts(-BigRational::one(), ones, m)
    }
}

/// `[n]! = [1][2]...[n]`.
pub fn q_factorial(n: u32) -> Scalar {
    (1..=n as i64).fold(Scalar::one(), |acc, k| acc.mul(&q_int(k)))
}

/// A rational specialization point for `p` that is not a root of unity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvalPoint {
    q0: BigRational,
}

impl EvalPoint {
    pub const DEFAULT_ORDER_BOUND: u32 = 64;

    pub fn new(q0: BigRational) -> Result<Self> {
        EvalPoint::with_order_bound(q0, Self::DEFAULT_ORDER_BOUND)
    }

    pub fn with_order_bound(q0: BigRational, order_bound: u32) -> Result<Self> {
        let reject = |reason: &str| Error::InvalidEvalPoint {
            point: q0.to_string(),
            reason: reason.to_string(),
        };
        if q0.is_zero() {
            return Err(reject("zero"));
        }
        if q0.abs().is_one() {
            return Err(reject("root of unity"));
        }
        let mut power = q0.clone();
        for _ in 1..=order_bound {
            if power.is_one() {
                return Err(reject("root of unity"));
            }
            power = &power * &q0;
        }
        Ok(EvalPoint { q0 })
    }

    /// `p = 7/5`.
    pub fn default_point() -> Self {
        EvalPoint::new(BigRational::new(7.into(), 5.into())).unwrap()
    }

    /// `(11 + 2·seed)/7`: a second point, distinct from the default, chosen by seed.
    pub fn seeded(seed: u64) -> Self {
        let num = BigInt::from(11) + BigInt::from(seed) * 2;
        EvalPoint::new(BigRational::new(num, 7.into())).expect("exceeds 1 in absolute value")
    }

    pub fn value(&self) -> &BigRational {
        &self.q0
    }
}

impl FromStr for EvalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        EvalPoint::new(parse_rational(s)?)
    }
}

pub fn eval_at(f: &Scalar, pt: &EvalPoint) -> Result<BigRational> {
    f.eval_rational(&pt.q0)
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational `{s}`"));
    match s.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn fmt_terms(f: &mut fmt::Formatter<'_>, coeffs: &[BigRational]) -> fmt::Result {
    let mut first = true;
    for (k, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, " + ")?;
        }
        first = false;
        write!(f, "{c}*p^{k}")?;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Serialized as `(num)/(den)` with sparse `c*p^k` terms and a monic denominator.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = self.monic_parts();
        write!(f, "(")?;
        fmt_terms(f, &num)?;
        write!(f, ")/(")?;
        fmt_terms(f, &den)?;
        write!(f, ")")
    }
}

fn parse_terms(s: &str) -> Result<Vec<BigRational>> {
    let s = s.trim();
    let mut out: Vec<BigRational> = Vec::new();
    if s == "0" {
        return Ok(out);
    }
    for term in s.split(" + ") {
        let term = term.trim();
        let (c, k) = match term.split_once("*p^") {
            Some((c, k)) => (c, k),
            None => (term, "0"),
        };
        let c = parse_rational(c)?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent in `{term}`")))?;
        if out.len() <= k {
            out.resize(k + 1, BigRational::zero());
        }
        out[k] += c;
    }
    Ok(out)
}

fn integer_poly(coeffs: &[BigRational]) -> (BigRational, ZPoly) {
    let l = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(l.clone())).to_integer())
        .collect();
    (
        BigRational::new(BigInt::one(), l),
        ZPoly::from_coeffs(ints),
    )
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let strip = |t: &str| -> String {
            let t = t.trim();
            t.strip_prefix('(')
                .and_then(|t| t.strip_suffix(')'))
                .unwrap_or(t)
                .to_string()
        };
        let (n, d) = match s.split_once(")/(") {
            Some((n, d)) => (strip(&format!("{n})")), strip(&format!("({d}"))),
            None => (strip(s), "1".to_string()),
        };
        let (cn, pn) = integer_poly(&parse_terms(&n)?);
        let (cd, pd) = integer_poly(&parse_terms(&d)?);
        if pd.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(Scalar::from_parts(cn / cd, pn, pd))
    }
}
