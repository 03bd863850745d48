//! Exact arithmetic in the cyclotomic field ℚ(ω) with ω = e^(2πi/3).
//!
//! Every number is stored as `u + v·ω` with exact rational coordinates, so the
//! basis is `{1, ω}` rather than real/imaginary parts. That choice is what
//! keeps every coefficient downstream rational (splitting into Re/Im would
//! drag in √3) and it makes the constraint matrices of the verifier
//! integer-valued whenever the amplitudes are Eisenstein integers.
//!
//! Reduction rule: ω² = −1 − ω. Conjugation: conj(u + vω) = (u − v) − vω.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational scalar underlying all field coordinates.
pub type Rat = BigRational;

/// Render a rational as `p/q` (just `p` when the denominator is 1).
pub fn rat_to_string(r: &Rat) -> String {
    r.to_string()
}

/// Parse a decimal-string rational (`"3"` or `"-3/4"`).
pub fn rat_from_str(s: &str) -> Result<Rat, crate::Error> {
    Rat::from_str(s).map_err(|e| crate::Error::Parse(format!("bad rational {s:?}: {e}")))
}

/// An element u + v·ω of ℚ(ω), ω a primitive cube root of unity.
/// The ordering is the lexicographic one on (u, v); it has no arithmetic
/// meaning and exists for canonical containers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycNum {
    /// Coefficient of 1.
    pub u: Rat,
    /// Coefficient of ω.
    pub v: Rat,
}

impl CycNum {
    pub fn new(u: Rat, v: Rat) -> Self {
        CycNum { u, v }
    }

    pub fn zero() -> Self {
        CycNum::new(Rat::zero(), Rat::zero())
    }

    pub fn one() -> Self {
        CycNum::from_int(1)
    }

    /// The generator ω itself.
    pub fn omega() -> Self {
        CycNum::new(Rat::zero(), Rat::from_integer(BigInt::from(1)))
    }

    /// ω^k reduced to the basis, for any exponent.
    pub fn omega_pow(k: i64) -> Self {
        match k.rem_euclid(3) {
            0 => CycNum::one(),
            1 => CycNum::omega(),
            _ => CycNum::new(
                Rat::from_integer(BigInt::from(-1)),
                Rat::from_integer(BigInt::from(-1)),
            ),
        }
    }

    pub fn from_int(n: i64) -> Self {
        CycNum::new(Rat::from_integer(BigInt::from(n)), Rat::zero())
    }

    pub fn from_ints(u: i64, v: i64) -> Self {
        CycNum::new(
            Rat::from_integer(BigInt::from(u)),
            Rat::from_integer(BigInt::from(v)),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// A number is real exactly when its ω-coordinate vanishes.
    pub fn is_real(&self) -> bool {
        self.v.is_zero()
    }

    /// Complex conjugate: (u − v) − v·ω.
    pub fn conj(&self) -> Self {
        CycNum::new(&self.u - &self.v, -self.v.clone())
    }

    /// |z|² = z·conj(z) = u² − uv + v², a nonnegative rational.
    pub fn norm_sqr(&self) -> Rat {
        &self.u * &self.u - &self.u * &self.v + &self.v * &self.v
    }

    /// Exact multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        let c = self.conj();
        Some(CycNum::new(c.u / &n, c.v / &n))
    }

    /// Numerical embedding ω ↦ −1/2 + (√3/2)i into double-precision complex.
    pub fn embed(&self) -> nalgebra::Complex<f64> {
        use num::ToPrimitive;
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        nalgebra::Complex::new(u - 0.5 * v, v * 3f64.sqrt() / 2.0)
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        CycNum::new(&self.u + &rhs.u, &self.v + &rhs.v)
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        CycNum::new(&self.u - &rhs.u, &self.v - &rhs.v)
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    /// (u₁+v₁ω)(u₂+v₂ω) = (u₁u₂ − v₁v₂) + (u₁v₂ + v₁u₂ − v₁v₂)ω, by ω² = −1−ω.
    fn mul(self, rhs: &CycNum) -> CycNum {
        let vv = &self.v * &rhs.v;
        CycNum::new(
            &self.u * &rhs.u - &vv,
            &self.u * &rhs.v + &self.v * &rhs.u - &vv,
        )
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum::new(-self.u.clone(), -self.v.clone())
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for CycNum {
            type Output = CycNum;
            fn $method(self, rhs: CycNum) -> CycNum {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}w)", self.u, self.v)
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        if self.u.is_zero() {
            return write!(f, "{}w", self.v);
        }
        write!(
            f,
            "{}{}{}w",
            self.u,
            if self.v < Rat::zero() { "" } else { "+" },
            self.v
        )
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumJson {
    u: String,
    v: String,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycNumJson {
            u: rat_to_string(&self.u),
            v: rat_to_string(&self.v),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycNumJson::deserialize(d)?;
        let u = rat_from_str(&raw.u).map_err(D::Error::custom)?;
        let v = rat_from_str(&raw.v).map_err(D::Error::custom)?;
        Ok(CycNum::new(u, v))
    }
}
