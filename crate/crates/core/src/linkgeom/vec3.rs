//! Exact rational 3-vectors.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::textfmt::ParseError;

/// Point or vector in Q^3.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QVec3 {
    pub x: BigRational,
    pub y: BigRational,
    pub z: BigRational,
}

impl QVec3 {
    pub fn new(x: BigRational, y: BigRational, z: BigRational) -> Self {
        QVec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        QVec3 {
            x: BigRational::from_integer(BigInt::from(x)),
            y: BigRational::from_integer(BigInt::from(y)),
            z: BigRational::from_integer(BigInt::from(z)),
        }
    }

    pub fn from_ratios(x: (i64, i64), y: (i64, i64), z: (i64, i64)) -> Self {
        let r = |(n, d): (i64, i64)| BigRational::new(BigInt::from(n), BigInt::from(d));
        QVec3 {
            x: r(x),
            y: r(y),
            z: r(z),
        }
    }

    pub fn zero() -> Self {
        QVec3 {
            x: BigRational::zero(),
            y: BigRational::zero(),
            z: BigRational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn dot(&self, other: &QVec3) -> BigRational {
        &self.x * &other.x + &self.y * &other.y + &self.z * &other.z
    }

    pub fn cross(&self, other: &QVec3) -> QVec3 {
        QVec3 {
            x: &self.y * &other.z - &self.z * &other.y,
            y: &self.z * &other.x - &self.x * &other.z,
            z: &self.x * &other.y - &self.y * &other.x,
        }
    }

    /// Scalar triple product `self · (a × b)`.
    pub fn triple(&self, a: &QVec3, b: &QVec3) -> BigRational {
        self.dot(&a.cross(b))
    }

    pub fn norm_squared(&self) -> BigRational {
        self.dot(self)
    }

    pub fn scale(&self, s: &BigRational) -> QVec3 {
        QVec3 {
            x: &self.x * s,
            y: &self.y * s,
            z: &self.z * s,
        }
    }

    pub fn to_f64(&self) -> [f64; 3] {
        let f = |r: &BigRational| r.to_f64().expect("rational fits in f64");
        [f(&self.x), f(&self.y), f(&self.z)]
    }

    /// Parse a rational "p/q" or integer "p".
    pub fn parse_rational(tok: &str, line: usize) -> Result<BigRational, ParseError> {
        let bad = || ParseError::new(line, format!("expected rational p/q, found {tok:?}"));
        match tok.split_once('/') {
            Some((num, den)) => {
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let d: BigInt = den.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(ParseError::new(line, "zero denominator"));
                }
                Ok(BigRational::new(n, d))
            }
            None => {
                let n: BigInt = tok.parse().map_err(|_| bad())?;
                Ok(BigRational::from_integer(n))
            }
        }
    }

    pub fn format_rational(r: &BigRational) -> String {
        if r.denom().abs() == BigInt::from(1) {
            (r.numer() / r.denom()).to_string()
        } else {
            format!("{}/{}", r.numer(), r.denom())
        }
    }
}

impl Add for &QVec3 {
    type Output = QVec3;

    fn add(self, other: &QVec3) -> QVec3 {
        QVec3 {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            z: &self.z + &other.z,
        }
    }
}

impl Sub for &QVec3 {
    type Output = QVec3;

    fn sub(self, other: &QVec3) -> QVec3 {
        QVec3 {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
            z: &self.z - &other.z,
        }
    }
}

impl Neg for &QVec3 {
    type Output = QVec3;

    fn neg(self) -> QVec3 {
        QVec3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }
}

impl Mul<&BigRational> for &QVec3 {
    type Output = QVec3;

    fn mul(self, s: &BigRational) -> QVec3 {
        self.scale(s)
    }
}

impl fmt::Debug for QVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            QVec3::format_rational(&self.x),
            QVec3::format_rational(&self.y),
            QVec3::format_rational(&self.z)
        )
    }
}

impl fmt::Display for QVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {}",
            QVec3::format_rational(&self.x),
            QVec3::format_rational(&self.y),
            QVec3::format_rational(&self.z)
        )
    }
}
