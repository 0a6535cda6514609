//! The component group Φ_M: torsion of the cokernel of `M: Z^ν → Z^ν`.
//!
//! With `U·M·V = D` in Smith form, `x ↦ U·x` identifies `Z^ν / Im M` with
//! `⊕ Z/Dᵢ`. Classes are carried as raw integer vectors; coordinates are the
//! residues of `U·x` at the diagonal positions with `Dᵢ ≥ 2`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{snf, SnfDecomposition};
use crate::fiber::{ensure_valid, SpecialFiber};

#[derive(Clone, Debug)]
pub struct ComponentGroup {
    fiber: SpecialFiber,
    snf: SnfDecomposition,
    /// Diagonal positions carrying an invariant factor ≥ 2.
    positions: Vec<usize>,
    invariant_factors: Vec<BigInt>,
    generators: Vec<Vec<BigInt>>,
    exponent: BigInt,
    order: BigInt,
}

pub(crate) fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl ComponentGroup {
    /// Fails if the fiber is not symmetric, principal, connected with
    /// `rank(M) = ν − 1`. The off-diagonal sign is not required.
    pub fn new(f: &SpecialFiber) -> Result<Self> {
        ensure_valid(f)?;
        let snf = snf(f.matrix());
        let diag = snf.diagonal();
        let positions: Vec<usize> = (0..diag.len())
            .filter(|&i| diag[i] > BigInt::one())
            .collect();
        let invariant_factors: Vec<BigInt> = positions.iter().map(|&i| diag[i].clone()).collect();
        let generators = positions.iter().map(|&i| snf.u_inv.column(i)).collect();
        let exponent = invariant_factors
            .last()
            .cloned()
            .unwrap_or_else(BigInt::one);
        let order = invariant_factors.iter().product();
        Ok(ComponentGroup {
            fiber: f.clone(),
            snf,
            positions,
            invariant_factors,
            generators,
            exponent,
            order,
        })
    }

    pub fn fiber(&self) -> &SpecialFiber {
        &self.fiber
    }

    pub fn snf(&self) -> &SnfDecomposition {
        &self.snf
    }

    /// Invariant factors ≥ 2, each dividing the next.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// One generator per invariant factor, as vectors in Z^ν.
    pub fn generators(&self) -> &[Vec<BigInt>] {
        &self.generators
    }

    pub fn exponent(&self) -> &BigInt {
        &self.exponent
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    /// Degree-zero test `Σ dᵢTᵢ = 0`.
    pub fn is_torsion_vector(&self, t: &[BigInt]) -> bool {
        t.len() == self.fiber.nu() && self.fiber.degree(t).is_zero()
    }

    /// `U·T`, after checking that `[T]` is torsion in the cokernel.
    fn coordinates_full(&self, t: &[BigInt]) -> Result<Vec<BigInt>> {
        self.fiber.check_length(t)?;
        let u = self.snf.u.mul_vec(t);
        let diag = self.snf.d.entries();
        let nu = self.fiber.nu();
        if (0..nu).any(|i| diag[i * nu + i].is_zero() && !u[i].is_zero()) {
            return Err(Error::NotTorsion(fmt_vec(t)));
        }
        Ok(u)
    }

    /// Least `n ≥ 1` with `n·T ∈ Im M`.
    pub fn order_of(&self, t: &[BigInt]) -> Result<BigInt> {
        let u = self.coordinates_full(t)?;
        let nu = self.fiber.nu();
        let mut n = BigInt::one();
        for i in 0..nu {
            let d = &self.snf.d[(i, i)];
            if !d.is_zero() {
                n = n.lcm(&(d / d.gcd(&u[i])));
            }
        }
        Ok(n)
    }

    /// The least `n ≥ 1` together with an integer `S` such that `M·S = n·T`.
    pub fn solve_multiple(&self, t: &[BigInt]) -> Result<(BigInt, Vec<BigInt>)> {
        let n = self.order_of(t)?;
        let u = self.snf.u.mul_vec(t);
        let nu = self.fiber.nu();
        let y: Vec<BigInt> = (0..nu)
            .map(|i| {
                let d = &self.snf.d[(i, i)];
                if d.is_zero() {
                    BigInt::zero()
                } else {
                    &n * &u[i] / d
                }
            })
            .collect();
        let s = self.snf.v.mul_vec(&y);
        let lhs = self.fiber.matrix().mul_vec(&s);
        if lhs.iter().zip(t).any(|(a, b)| *a != &n * b) {
            return Err(Error::Internal(format!(
                "M·S ≠ {n}·T for T = {}",
                fmt_vec(t)
            )));
        }
        Ok((n, s))
    }

    /// Coordinates `(c₁, …, c_r)` with `0 ≤ c_k < e_k`.
    pub fn canonical_form(&self, t: &[BigInt]) -> Result<Vec<BigInt>> {
        let u = self.coordinates_full(t)?;
        Ok(self
            .positions
            .iter()
            .zip(&self.invariant_factors)
            .map(|(&i, e)| u[i].mod_floor(e))
            .collect())
    }

    pub fn is_trivial_class(&self, t: &[BigInt]) -> Result<bool> {
        Ok(self.canonical_form(t)?.iter().all(Zero::is_zero))
    }

    /// `Σ c_k g_k`.
    pub fn from_coordinates(&self, coords: &[BigInt]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.fiber.nu()];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (vi, gi) in v.iter_mut().zip(g) {
                *vi += c * gi;
            }
        }
        v
    }

    /// Every class as a canonical coordinate tuple, in lexicographic order.
    pub fn elements(&self, bound: u64) -> Result<Vec<Vec<BigInt>>> {
        let order =
            self.order
                .to_u64()
                .filter(|&o| o <= bound)
                .ok_or_else(|| Error::BoundExceeded {
                    order: self.order.to_string(),
                    bound,
                })?;
        let mut out = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); self.invariant_factors.len()];
        loop {
            out.push(cur.clone());
            // Mixed-radix increment, last coordinate fastest.
            let mut k = cur.len();
            loop {
                if k == 0 {
                    return Ok(out);
                }
                k -= 1;
                cur[k] += 1;
                if cur[k] < self.invariant_factors[k] {
                    break;
                }
                cur[k] = BigInt::zero();
            }
        }
    }
}

impl fmt::Display for ComponentGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("trivial");
        }
        let parts: Vec<String> = self
            .invariant_factors
            .iter()
            .map(|e| format!("Z/{e}"))
            .collect();
        f.write_str(&parts.join(" x "))
    }
}

pub fn component_group(f: &SpecialFiber) -> Result<ComponentGroup> {
    ComponentGroup::new(f)
}

/// `Σ dᵢTᵢ = 0`; for a valid fiber this is equivalent to `[T]` being torsion.
pub fn is_torsion_vector(f: &SpecialFiber, t: &[BigInt]) -> bool {
    t.len() == f.nu() && f.degree(t).is_zero()
}

pub fn order_of(f: &SpecialFiber, t: &[BigInt]) -> Result<BigInt> {
    ComponentGroup::new(f)?.order_of(t)
}

pub fn class_canonical_form(f: &SpecialFiber, t: &[BigInt]) -> Result<Vec<BigInt>> {
    ComponentGroup::new(f)?.canonical_form(t)
}
