//! Combinatorial data of the special fiber of a regular arithmetic surface:
//! component multiplicities and the symmetric intersection matrix.

mod io;
mod kodaira;

pub use io::{from_json_str, load, save, to_json_string};
pub use kodaira::{kodaira, KodairaType};

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{dot, rank, IntMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFiber {
    name: String,
    labels: Vec<String>,
    multiplicities: Vec<BigInt>,
    matrix: IntMatrix,
}

impl SpecialFiber {
    /// Checks shapes and positivity of multiplicities only; everything else is
    /// left to [`validate`] so that broken inputs can still be reported on.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        multiplicities: Vec<BigInt>,
        matrix: IntMatrix,
    ) -> Result<Self> {
        let nu = multiplicities.len();
        if nu == 0 {
            return Err(Error::Shape("a fiber needs at least one component".into()));
        }
        if labels.len() != nu {
            return Err(Error::Shape(format!(
                "{} labels for {nu} components",
                labels.len()
            )));
        }
        if matrix.rows() != nu || matrix.cols() != nu {
            return Err(Error::Shape(format!(
                "intersection matrix is {}x{}, expected {nu}x{nu}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        if let Some(index) = multiplicities.iter().position(|d| !d.is_positive()) {
            return Err(Error::NonPositiveMultiplicity { index });
        }
        Ok(SpecialFiber {
            name: name.into(),
            labels,
            multiplicities,
            matrix,
        })
    }

    /// Builds a fiber from its dual graph, deriving self-intersections from
    /// `M·d = 0`. `offdiag` must have a zero diagonal.
    pub fn from_graph(
        name: impl Into<String>,
        labels: Vec<String>,
        multiplicities: Vec<BigInt>,
        mut offdiag: IntMatrix,
    ) -> Result<Self> {
        let diag = derive_self_intersections(&multiplicities, &offdiag)?;
        for (i, x) in diag.into_iter().enumerate() {
            offdiag[(i, i)] = x;
        }
        Self::new(name, labels, multiplicities, offdiag)
    }

    /// Small-integer constructor with labels `C0, C1, ...`.
    pub fn from_small(name: &str, multiplicities: &[i64], matrix: &[Vec<i64>]) -> Result<Self> {
        let labels = (0..multiplicities.len()).map(|i| format!("C{i}")).collect();
        Self::new(
            name,
            labels,
            multiplicities.iter().map(|&x| BigInt::from(x)).collect(),
            IntMatrix::from_rows(matrix),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn multiplicities(&self) -> &[BigInt] {
        &self.multiplicities
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Number of components, ν.
    pub fn nu(&self) -> usize {
        self.multiplicities.len()
    }

    /// `Σ dᵢ Tᵢ`.
    pub fn degree(&self, t: &[BigInt]) -> BigInt {
        dot(&self.multiplicities, t)
    }

    pub fn check_length(&self, t: &[BigInt]) -> Result<()> {
        if t.len() == self.nu() {
            Ok(())
        } else {
            Err(Error::Length {
                expected: self.nu(),
                found: t.len(),
            })
        }
    }
}

/// Solves each `Mᵢᵢ` from `M·d = 0` given the off-diagonal part.
pub fn derive_self_intersections(d: &[BigInt], offdiag: &IntMatrix) -> Result<Vec<BigInt>> {
    if offdiag.rows() != d.len() || offdiag.cols() != d.len() {
        return Err(Error::Shape(format!(
            "off-diagonal matrix is {}x{}, expected {n}x{n}",
            offdiag.rows(),
            offdiag.cols(),
            n = d.len()
        )));
    }
    if let Some(index) = d.iter().position(|x| !x.is_positive()) {
        return Err(Error::NonPositiveMultiplicity { index });
    }
    (0..d.len())
        .map(|i| {
            let s: BigInt = (0..d.len())
                .filter(|&j| j != i)
                .map(|j| &d[j] * &offdiag[(i, j)])
                .sum();
            let (q, r) = s.div_rem(&d[i]);
            if r.is_zero() {
                Ok(-q)
            } else {
                Err(Error::Divisibility {
                    index: i,
                    numerator: s.to_string(),
                    multiplicity: d[i].to_string(),
                })
            }
        })
        .collect()
}

/// The index of the curve: gcd of the multiplicities.
pub fn index(f: &SpecialFiber) -> BigInt {
    f.multiplicities
        .iter()
        .fold(BigInt::zero(), |g, d| g.gcd(d))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValidationOptions {
    /// Require nonnegative off-diagonal entries.
    pub geometric: bool,
    /// Accept `rank(M) < ν − 1` as long as `M·d = 0`. Only honoured when
    /// `geometric` is off.
    pub allow_rank_deficit: bool,
}

impl Default for ValidationOptions {
    fn default() -> Self {
        ValidationOptions {
            geometric: true,
            allow_rank_deficit: false,
        }
    }
}

impl ValidationOptions {
    pub fn permissive() -> Self {
        ValidationOptions {
            geometric: false,
            allow_rank_deficit: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Invariant {
    Symmetry,
    Principal,
    OffDiagonalSign,
    Connectivity,
    Kernel,
}

impl Invariant {
    pub const ALL: [Invariant; 5] = [
        Invariant::Symmetry,
        Invariant::Principal,
        Invariant::OffDiagonalSign,
        Invariant::Connectivity,
        Invariant::Kernel,
    ];

    pub fn key(self) -> &'static str {
        match self {
            Invariant::Symmetry => "symmetry",
            Invariant::Principal => "principal",
            Invariant::OffDiagonalSign => "offdiagonal_sign",
            Invariant::Connectivity => "connectivity",
            Invariant::Kernel => "kernel",
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantCheck {
    pub invariant: Invariant,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberValidationReport {
    pub checks: Vec<InvariantCheck>,
}

impl FiberValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, invariant: Invariant) -> &InvariantCheck {
        self.checks
            .iter()
            .find(|c| c.invariant == invariant)
            .expect("report covers every invariant")
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn fmt_vec(v: &[BigInt]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn validate(f: &SpecialFiber) -> FiberValidationReport {
    validate_with(f, ValidationOptions::default())
}

pub fn validate_with(f: &SpecialFiber, opts: ValidationOptions) -> FiberValidationReport {
    let m = f.matrix();
    let nu = f.nu();
    let mut checks = Vec::with_capacity(5);

    let asym = (0..nu)
        .flat_map(|i| (0..i).map(move |j| (i, j)))
        .find(|&(i, j)| m[(i, j)] != m[(j, i)]);
    checks.push(InvariantCheck {
        invariant: Invariant::Symmetry,
        passed: asym.is_none(),
        detail: match asym {
            None => "M is symmetric".into(),
            Some((i, j)) => format!(
                "M[{j}][{i}] = {} but M[{i}][{j}] = {}",
                m[(j, i)],
                m[(i, j)]
            ),
        },
    });

    let md = m.mul_vec(f.multiplicities());
    let principal = md.iter().all(Zero::is_zero);
    checks.push(InvariantCheck {
        invariant: Invariant::Principal,
        passed: principal,
        detail: if principal {
            "M·d = 0".into()
        } else {
            format!("M·d = {} is nonzero", fmt_vec(&md))
        },
    });

    let negative = (0..nu)
        .flat_map(|i| (0..nu).map(move |j| (i, j)))
        .find(|&(i, j)| i != j && m[(i, j)].is_negative());
    checks.push(InvariantCheck {
        invariant: Invariant::OffDiagonalSign,
        passed: !opts.geometric || negative.is_none(),
        detail: match (opts.geometric, negative) {
            (false, _) => "skipped (permissive mode)".into(),
            (true, None) => "off-diagonal entries are nonnegative".into(),
            (true, Some((i, j))) => format!("M[{i}][{j}] = {} is negative", m[(i, j)]),
        },
    });

    let reached = reachable_from_first(m, opts.geometric);
    checks.push(InvariantCheck {
        invariant: Invariant::Connectivity,
        passed: reached == nu,
        detail: if reached == nu {
            "dual graph is connected".into()
        } else {
            format!("dual graph reaches {reached} of {nu} components from component 0")
        },
    });

    let r = rank(m);
    let rank_ok = if opts.allow_rank_deficit && !opts.geometric {
        principal
    } else {
        principal && r + 1 == nu
    };
    checks.push(InvariantCheck {
        invariant: Invariant::Kernel,
        passed: rank_ok,
        detail: format!(
            "rank(M) = {r}, ν − 1 = {}{}",
            nu - 1,
            if principal {
                ""
            } else {
                "; d is not in the kernel"
            }
        ),
    });

    FiberValidationReport { checks }
}

/// Breadth-first search over the dual graph. In geometric mode edges are the
/// positive off-diagonal entries, otherwise any nonzero one.
fn reachable_from_first(m: &IntMatrix, geometric: bool) -> usize {
    let nu = m.rows();
    let mut seen = vec![false; nu];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = queue.pop_front() {
        for j in 0..nu {
            let e = &m[(i, j)];
            let edge = if geometric {
                e.is_positive()
            } else {
                !e.is_zero()
            };
            if i != j && edge && !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push_back(j);
            }
        }
    }
    count
}

/// Fails unless the fiber passes every non-geometric invariant.
pub(crate) fn ensure_valid(f: &SpecialFiber) -> Result<()> {
    let report = validate_with(f, ValidationOptions::permissive());
    let first = report.failures().next().cloned();
    match first {
        None => Ok(()),
        Some(c) => Err(Error::Shape(format!(
            "fiber `{}` fails {}: {}",
            f.name(),
            c.invariant,
            c.detail
        ))),
    }
}
