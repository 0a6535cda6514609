use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// A rational number modulo the integers, held as its representative in `[0, 1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QmodZ(BigRational);

pub fn qmodz_reduce(q: &BigRational) -> QmodZ {
    QmodZ::new(q.clone())
}

impl QmodZ {
    pub fn new(q: BigRational) -> Self {
        let (num, den) = (q.numer(), q.denom());
        let r = num.mod_floor(den);
        QmodZ(BigRational::new(r, den.clone()))
    }

    pub fn zero() -> Self {
        QmodZ(BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// Denominator of the reduced representative; 1 for the zero class.
    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Additive order of the element.
    pub fn order(&self) -> BigInt {
        self.denom().clone()
    }

    pub fn times(&self, k: &BigInt) -> Self {
        QmodZ::new(&self.0 * BigRational::from_integer(k.clone()))
    }
}

impl Add for QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a QmodZ> for &'a QmodZ {
    type Output = QmodZ;
    fn add(self, rhs: &QmodZ) -> QmodZ {
        QmodZ::new(&self.0 + &rhs.0)
    }
}

impl Sub for QmodZ {
    type Output = QmodZ;
    fn sub(self, rhs: QmodZ) -> QmodZ {
        QmodZ::new(self.0 - rhs.0)
    }
}

impl Neg for QmodZ {
    type Output = QmodZ;
    fn neg(self) -> QmodZ {
        QmodZ::new(-self.0)
    }
}

impl Mul<&BigInt> for &QmodZ {
    type Output = QmodZ;
    fn mul(self, k: &BigInt) -> QmodZ {
        self.times(k)
    }
}

impl fmt::Display for QmodZ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}
