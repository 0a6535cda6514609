//! The matrix pairing on Φ_M and the vertical correction of local pairings.
//!
//! For torsion vectors `T, T'` choose `MS = nT`, `MS' = n'T'`; the pairing is
//! `ᵗS·M·S' / (n n')  mod Z`, which equals both `ᵗS·T'/n` and `ᵗT·S'/n'`.
//! Values are returned exactly in that sign convention. The vertical term of
//! the decomposition `⟨c, D⟩ = (c̄·D̄) + (c̄·(−V))`, `MV = ρ(D̄)`, carries the
//! opposite sign; [`lemma_m_consistency`] is where the two meet.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::{dot, qmodz_reduce, rat_dot, rational_solve, snf, IntMatrix, QmodZ, RatVector};
use crate::fiber::{index, SpecialFiber};
use crate::group::{fmt_vec, ComponentGroup};

/// Default cap on |Φ_M| for enumeration over all classes.
pub const DEFAULT_BRUTE_BOUND: u64 = 10_000;

/// Reads `FIBERPAIR_BRUTE_BOUND`, falling back to [`DEFAULT_BRUTE_BOUND`].
pub fn brute_bound_from_env() -> u64 {
    std::env::var("FIBERPAIR_BRUTE_BOUND")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BRUTE_BOUND)
}

fn require_torsion(g: &ComponentGroup, t: &[BigInt]) -> Result<()> {
    g.fiber().check_length(t)?;
    if g.is_torsion_vector(t) {
        Ok(())
    } else {
        Err(Error::NotTorsion(fmt_vec(t)))
    }
}

/// `ᵗS·T' / n` for a caller-supplied choice with `M·S = n·T`.
///
/// The choice is checked; `T` is recovered as `M·S / n`.
pub fn pairing_from_choice(
    g: &ComponentGroup,
    n: &BigInt,
    s: &[BigInt],
    t_prime: &[BigInt],
) -> Result<QmodZ> {
    if n.is_zero() {
        return Err(Error::Internal("n must be nonzero".into()));
    }
    require_torsion(g, t_prime)?;
    g.fiber().check_length(s)?;
    let ms = g.fiber().matrix().mul_vec(s);
    if ms.iter().any(|x| !x.is_multiple_of(n)) {
        return Err(Error::Internal(format!(
            "M·S = {} is not divisible by {n}",
            fmt_vec(&ms)
        )));
    }
    Ok(qmodz_reduce(&BigRational::new(dot(s, t_prime), n.clone())))
}

impl ComponentGroup {
    /// The matrix pairing, computed from both sides and cross-checked.
    pub fn pairing(&self, t: &[BigInt], t_prime: &[BigInt]) -> Result<QmodZ> {
        require_torsion(self, t)?;
        require_torsion(self, t_prime)?;
        let (n, s) = self.solve_multiple(t)?;
        let (n2, s2) = self.solve_multiple(t_prime)?;
        let left = BigRational::new(dot(&s, t_prime), n);
        let right = BigRational::new(dot(t, &s2), n2);
        if left != right {
            return Err(Error::Internal(format!(
                "pairing sides disagree: {left} vs {right}"
            )));
        }
        Ok(qmodz_reduce(&left))
    }

    /// Pairing values between generators.
    pub fn pairing_table(&self) -> Result<Vec<Vec<QmodZ>>> {
        let gens = self.generators();
        gens.iter()
            .map(|a| gens.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    /// Same as [`ComponentGroup::pairing_table`], rows computed in parallel.
    pub fn pairing_table_parallel(&self) -> Result<Vec<Vec<QmodZ>>> {
        let gens = self.generators();
        gens.par_iter()
            .map(|a| gens.iter().map(|b| self.pairing(a, b)).collect())
            .collect()
    }

    /// Classes pairing trivially with everything, as canonical forms.
    ///
    /// By bilinearity it suffices to test against the generators.
    pub fn pairing_kernel(&self, bound: u64) -> Result<Vec<Vec<BigInt>>> {
        let gens = self.generators();
        let mut kernel = Vec::new();
        for coords in self.elements(bound)? {
            let a = self.from_coordinates(&coords);
            let mut trivial = true;
            for b in gens {
                if !self.pairing(&a, b)?.is_zero() {
                    trivial = false;
                    break;
                }
            }
            if trivial {
                kernel.push(coords);
            }
        }
        let d = index(self.fiber());
        for coords in &kernel {
            let a = self.from_coordinates(coords);
            let da: Vec<BigInt> = a.iter().map(|x| x * &d).collect();
            if !self.is_trivial_class(&da)? {
                return Err(Error::Internal(format!(
                    "kernel element {} is not killed by the index {d}",
                    fmt_vec(coords)
                )));
            }
        }
        Ok(kernel)
    }

    /// Injectivity of `a ↦ ⟨a, ·⟩_M` by enumerating every class.
    pub fn is_perfect_brute(&self, bound: u64) -> Result<bool> {
        Ok(self.pairing_kernel(bound)?.len() == 1)
    }

    /// Perfectness from the generator table.
    ///
    /// Row `i` of `A` is `⟨gᵢ, g_j⟩ · e_j`, an element of `⊕ Z/e_j`. The
    /// pairing is perfect iff these rows together with `diag(e)` span `Z^r`.
    pub fn is_perfect_gram(&self) -> Result<bool> {
        let e = self.invariant_factors();
        let r = e.len();
        if r == 0 {
            return Ok(true);
        }
        let table = self.pairing_table()?;
        let mut stacked = IntMatrix::zeros(2 * r, r);
        for i in 0..r {
            for j in 0..r {
                let scaled = table[i][j].value() * BigRational::from_integer(e[j].clone());
                if !scaled.is_integer() {
                    return Err(Error::Internal(format!(
                        "⟨g{i}, g{j}⟩ = {} has order not dividing {}",
                        table[i][j], e[j]
                    )));
                }
                stacked[(i, j)] = scaled.to_integer();
            }
            stacked[(r + i, i)] = e[i].clone();
        }
        Ok(snf(&stacked).diagonal().iter().all(One::is_one))
    }

    /// Brute force when `|Φ_M| ≤ bound`, the generator table otherwise.
    pub fn is_perfect(&self, bound: u64) -> Result<bool> {
        if self.order().to_u64().is_some_and(|o| o <= bound) {
            self.is_perfect_brute(bound)
        } else {
            self.is_perfect_gram()
        }
    }

    /// `n·value ∈ Z` with `n` the exponent of Φ_M.
    pub fn denominator_check(&self, value: &BigRational) -> bool {
        (value * BigRational::from_integer(self.exponent().clone())).is_integer()
    }
}

pub fn pairing_m(f: &SpecialFiber, t: &[BigInt], t_prime: &[BigInt]) -> Result<QmodZ> {
    ComponentGroup::new(f)?.pairing(t, t_prime)
}

pub fn pairing_table(f: &SpecialFiber) -> Result<Vec<Vec<QmodZ>>> {
    ComponentGroup::new(f)?.pairing_table()
}

pub fn is_perfect(f: &SpecialFiber) -> Result<bool> {
    ComponentGroup::new(f)?.is_perfect(brute_bound_from_env())
}

pub fn pairing_kernel(f: &SpecialFiber, bound: u64) -> Result<Vec<Vec<BigInt>>> {
    ComponentGroup::new(f)?.pairing_kernel(bound)
}

pub fn denominator_check(f: &SpecialFiber, value: &BigRational) -> Result<bool> {
    Ok(ComponentGroup::new(f)?.denominator_check(value))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrossHriljacResult {
    pub total: BigRational,
    /// `(c̄·D̄)`.
    pub horizontal: BigInt,
    /// `(c̄·(−V))`.
    pub vertical: BigRational,
    /// The solution of `MV = ρ(D̄)` that was used (orthogonal to `d`).
    pub v_used: RatVector,
}

/// `−ᵗρ_c · V`.
pub fn vertical_term(rho_c: &[BigInt], v: &[BigRational]) -> BigRational {
    -rat_dot(rho_c, v)
}

fn require_degree_zero(f: &SpecialFiber, t: &[BigInt]) -> Result<()> {
    f.check_length(t)?;
    if f.degree(t).is_zero() {
        Ok(())
    } else {
        Err(Error::NotTorsion(fmt_vec(t)))
    }
}

/// Solves `MV = ρ_D` over Q; fails internally if impossible.
fn solve_vertical(f: &SpecialFiber, rho_d: &[BigInt]) -> Result<(RatVector, Vec<RatVector>)> {
    let sol = rational_solve(f.matrix(), rho_d).ok_or_else(|| {
        Error::Internal(format!("MV = {} has no rational solution", fmt_vec(rho_d)))
    })?;
    Ok((sol.particular, sol.kernel_basis))
}

pub fn gross_hriljac(
    f: &SpecialFiber,
    horizontal: &BigInt,
    rho_c: &[BigInt],
    rho_d: &[BigInt],
) -> Result<GrossHriljacResult> {
    require_degree_zero(f, rho_c)?;
    require_degree_zero(f, rho_d)?;
    let (v, kernel) = solve_vertical(f, rho_d)?;
    let vertical = vertical_term(rho_c, &v);

    // V is only determined up to the kernel; the vertical term must not see it.
    for k in &kernel {
        let shifted: RatVector = v.iter().zip(k).map(|(a, b)| a + b).collect();
        if vertical_term(rho_c, &shifted) != vertical {
            return Err(Error::Internal(
                "vertical term depends on the choice of V".into(),
            ));
        }
    }

    let total = BigRational::from_integer(horizontal.clone()) + &vertical;
    Ok(GrossHriljacResult {
        total,
        horizontal: horizontal.clone(),
        vertical,
        v_used: v,
    })
}

/// `pairing_m(ρ_c, ρ_D) = −total  mod Z`.
pub fn lemma_m_consistency(
    g: &ComponentGroup,
    horizontal: &BigInt,
    rho_c: &[BigInt],
    rho_d: &[BigInt],
) -> Result<bool> {
    let lhs = g.pairing(rho_c, rho_d)?;
    let gh = gross_hriljac(g.fiber(), horizontal, rho_c, rho_d)?;
    Ok(lhs == qmodz_reduce(&-gh.total))
}

/// `w` with `Σ dⱼwⱼ = gcd(d)`, built by extended gcd over ascending indices.
/// An index whose multiplicity is already divisible by the running gcd is
/// skipped, so `w = e₀` whenever `d₀` is the gcd.
pub fn bezout_vector(d: &[BigInt]) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); d.len()];
    let Some(first) = d.first() else {
        return w;
    };
    w[0] = BigInt::one();
    let mut g = first.clone();
    for (i, di) in d.iter().enumerate().skip(1) {
        if di.is_multiple_of(&g) {
            continue;
        }
        let e = g.extended_gcd(di);
        for x in w.iter_mut() {
            *x *= &e.x;
        }
        w[i] = e.y;
        g = e.gcd;
    }
    w
}

/// Probe vectors `Tᵢ = eᵢ − (dᵢ/d)·w`, one per component.
pub fn canonical_probes(f: &SpecialFiber) -> Vec<Vec<BigInt>> {
    let d = f.multiplicities();
    let idx = index(f);
    let w = bezout_vector(d);
    (0..f.nu())
        .map(|i| {
            let q = &d[i] / &idx;
            let mut t: Vec<BigInt> = w.iter().map(|x| -(&q * x)).collect();
            t[i] += 1;
            t
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extendability {
    pub extendable: bool,
    /// `−ᵗTᵢ·V` for each probe `Tᵢ`.
    pub probe_values: Vec<BigRational>,
    /// On success, the rational vertical vector `V` with `MV = ρ_D`.
    pub witness: Option<RatVector>,
}

impl Extendability {
    /// First non-integral probe value, reduced mod Z.
    pub fn obstruction(&self) -> Option<QmodZ> {
        self.probe_values
            .iter()
            .find(|v| !v.is_integer())
            .map(qmodz_reduce)
    }
}

pub fn extendability_test(g: &ComponentGroup, rho_d: &[BigInt]) -> Result<Extendability> {
    require_torsion(g, rho_d)?;
    let f = g.fiber();
    let (v, _) = solve_vertical(f, rho_d)?;
    let probe_values: Vec<BigRational> = canonical_probes(f)
        .iter()
        .map(|t| vertical_term(t, &v))
        .collect();
    let extendable = probe_values.iter().all(BigRational::is_integer);
    let trivial = g.is_trivial_class(rho_d)?;
    if extendable != trivial {
        return Err(Error::Internal(format!(
            "probe integrality ({extendable}) disagrees with class triviality ({trivial}) for {}",
            fmt_vec(rho_d)
        )));
    }
    Ok(Extendability {
        extendable,
        probe_values,
        witness: extendable.then_some(v),
    })
}
