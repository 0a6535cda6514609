//! Local intersection multiplicities on the projective line over Q with a
//! p-adic valuation, computed two independent ways.
//!
//! For a closed point cut out by a monic irreducible `g` and a function `h`,
//! `v_p(Res(g, h))` is the norm of `h` from the residue field, so it equals
//! `[K(x):K]·v(h(x))`. When `Z[x]/(g)` is maximal at `p` the same number is
//! the `p`-part of the length of `Z[x]/(g, h)`, read off the Smith form of
//! multiplication by `h`.

mod irreducible;
pub mod poly;

pub use irreducible::{
    irreducible_mod_p, is_eisenstein, is_irreducible, is_prime, valuation, MAX_DEGREE,
};
pub use poly::{parse_poly, parse_split, resultant, Poly};

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{snf, IntMatrix};
use irreducible::valuation_int;

/// A finite closed point of the affine line over Q.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClosedPoint {
    g: Poly,
}

impl ClosedPoint {
    pub fn new(g: Poly) -> Result<Self> {
        if !g.is_monic() {
            return Err(Error::NotIrreducible(format!("`{g}` is not monic")));
        }
        if !is_irreducible(&g)? {
            return Err(Error::NotIrreducible(format!("`{g}` is reducible over Q")));
        }
        Ok(ClosedPoint { g })
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(parse_poly(s)?)
    }

    pub fn poly(&self) -> &Poly {
        &self.g
    }

    /// `[K(x):K]`.
    pub fn degree(&self) -> usize {
        self.g.degree().expect("points are nonconstant")
    }
}

impl fmt::Display for ClosedPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.g)
    }
}

/// A formal sum of closed points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroCycle {
    terms: Vec<(BigInt, ClosedPoint)>,
}

impl ZeroCycle {
    pub fn new(terms: Vec<(BigInt, ClosedPoint)>) -> Result<Self> {
        for (i, (_, a)) in terms.iter().enumerate() {
            if terms[..i].iter().any(|(_, b)| b == a) {
                return Err(Error::SupportClash(format!("point {a} appears twice")));
            }
        }
        Ok(ZeroCycle { terms })
    }

    pub fn terms(&self) -> &[(BigInt, ClosedPoint)] {
        &self.terms
    }

    /// `Σ nᵢ·deg gᵢ`.
    pub fn degree(&self) -> BigInt {
        self.terms
            .iter()
            .map(|(n, pt)| n * BigInt::from(pt.degree()))
            .sum()
    }
}

/// `num/den` with coprime parts and monic denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Polynomial("zero denominator".into()));
        }
        if num.is_zero() {
            return Err(Error::Polynomial("the zero function has no divisor".into()));
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g).0;
        let den = den.div_rem(&g).0;
        let lc = den.leading().recip();
        Ok(RationalFunction {
            num: num.scale(&lc),
            den: den.scale(&lc),
        })
    }

    pub fn from_poly(num: Poly) -> Result<Self> {
        Self::new(num, Poly::one())
    }

    /// Numerator and optional denominator as separate expressions.
    pub fn parse(num: &str, den: Option<&str>) -> Result<Self> {
        let den = match den {
            Some(d) => parse_poly(d)?,
            None => Poly::one(),
        };
        Self::new(parse_poly(num)?, den)
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn check_support(g: &ClosedPoint, f: &RationalFunction) -> Result<()> {
    for (part, h) in [("numerator", &f.num), ("denominator", &f.den)] {
        if g.poly().divides(h) {
            return Err(Error::SupportClash(format!("{g} divides the {part} `{h}`")));
        }
    }
    Ok(())
}

/// `v_p(Res(g, num)) − v_p(Res(g, den))`.
pub fn local_multiplicity(g: &ClosedPoint, f: &RationalFunction, p: u64) -> Result<i64> {
    check_prime(p)?;
    check_support(g, f)?;
    let rn = resultant(g.poly(), &f.num);
    let rd = resultant(g.poly(), &f.den);
    Ok(valuation(&rn, p) - valuation(&rd, p))
}

/// Why the length route accepts `g` at `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Maximality {
    /// `g` stays irreducible mod p: unramified.
    Inert,
    /// `g` is Eisenstein at p: totally ramified.
    Eisenstein,
}

/// Whether `Z[x]/(g)` is known to be maximal at `p`.
pub fn p_maximality(g: &ClosedPoint, p: u64) -> Result<Maximality> {
    let ints = g
        .poly()
        .integer_coeffs()
        .ok_or_else(|| Error::NotPMaximal {
            prime: p,
            reason: format!("{g} has non-integral coefficients, Z[x]/(g) is not an order"),
        })?;
    if irreducible_mod_p(&ints, p) {
        Ok(Maximality::Inert)
    } else if is_eisenstein(&ints, p) {
        Ok(Maximality::Eisenstein)
    } else {
        Err(Error::NotPMaximal {
            prime: p,
            reason: format!("{g} is neither irreducible mod {p} nor Eisenstein at {p}"),
        })
    }
}

/// Matrix of multiplication by `h` on `Z[x]/(g)` in the basis `1, x, …`.
/// `g` monic integral, `h` integral.
pub fn multiplication_matrix(g: &Poly, h: &Poly) -> IntMatrix {
    let n = g.degree().expect("nonconstant modulus");
    let mut m = IntMatrix::zeros(n, n);
    let mut col = h.rem(g);
    for j in 0..n {
        for i in 0..n {
            m[(i, j)] = col.coeff(i).to_integer();
        }
        col = (&col * &Poly::x()).rem(g);
    }
    m
}

/// The `p`-part of the length of `Z[x]/(g, h)`, corrected by `deg g · v_p(c)`
/// when `h` has denominators cleared by `c`.
pub fn local_multiplicity_by_length(g: &ClosedPoint, h: &Poly, p: u64) -> Result<i64> {
    check_prime(p)?;
    p_maximality(g, p)?;
    if h.is_zero() || g.poly().divides(h) {
        return Err(Error::SupportClash(format!("{g} divides `{h}`")));
    }
    let c = h.denominator_lcm();
    let hz = h.scale(&BigRational::from_integer(c.clone()));
    let m = multiplication_matrix(g.poly(), &hz);
    let mut total: i64 = 0;
    for d in snf(&m).diagonal() {
        if d.is_zero() {
            return Err(Error::SupportClash(format!(
                "`{h}` is a zero divisor modulo {g}"
            )));
        }
        total += valuation_int(&d, p) as i64;
    }
    Ok(total - g.degree() as i64 * valuation_int(&c, p) as i64)
}

/// `Σ nᵢ · local_multiplicity(gᵢ, f, p)` for a degree-zero cycle.
pub fn pairing_principal(c: &ZeroCycle, f: &RationalFunction, p: u64) -> Result<BigInt> {
    check_prime(p)?;
    let deg = c.degree();
    if !deg.is_zero() {
        return Err(Error::NonzeroDegree(deg.to_string()));
    }
    let mut total = BigInt::zero();
    for (n, pt) in c.terms() {
        total += n * BigInt::from(local_multiplicity(pt, f, p)?);
    }
    Ok(total)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormCheck {
    /// Determinant of multiplication by `c` on `Q[x]/(h)`.
    pub lhs: BigRational,
    /// `Π c(λⱼ)^{lⱼ}`.
    pub rhs: BigRational,
    pub equal: bool,
}

/// Determinant of a square rational matrix by Gaussian elimination.
fn rat_determinant(mut a: Vec<Vec<BigRational>>) -> BigRational {
    let n = a.len();
    let mut det = BigRational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= &a[c][c];
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] / &a[c][c];
            for j in c..n {
                let s = &f * &a[c][j];
                a[i][j] -= s;
            }
        }
    }
    det
}

/// Compares the norm of `c` from `Q[x]/(h)`, `h = Π (x − λⱼ)^{lⱼ}`, with the
/// product of its values at the roots.
pub fn artinian_norm_check(factors: &[(BigRational, u32)], c: &Poly) -> Result<NormCheck> {
    for (i, (a, _)) in factors.iter().enumerate() {
        if factors[..i].iter().any(|(b, _)| a == b) {
            return Err(Error::Polynomial(format!("root {a} listed twice")));
        }
    }
    let h = factors.iter().fold(Poly::one(), |acc, (root, l)| {
        &acc * &Poly::linear(root).pow(*l)
    });
    let n = h.degree().unwrap_or(0);
    let mut a = vec![vec![BigRational::zero(); n]; n];
    let mut col = c.rem(&h);
    for j in 0..n {
        for (i, row) in a.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
        col = (&col * &Poly::x()).rem(&h);
    }
    let lhs = rat_determinant(a);
    let rhs = factors.iter().fold(BigRational::one(), |acc, (root, l)| {
        acc * num_traits::pow(c.eval(root), *l as usize)
    });
    Ok(NormCheck {
        equal: lhs == rhs,
        lhs,
        rhs,
    })
}
