//! Irreducibility over Q for small degrees.
//!
//! A primitive integer polynomial that stays irreducible of the same degree
//! modulo some small prime is irreducible over Q; Eisenstein's criterion is
//! the other quick accept. Everything else falls through to Kronecker's
//! interpolation search for factors of degree ≤ deg/2, which is exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use crate::error::{Error, Result};

pub const MAX_DEGREE: usize = 6;

const SMALL_PRIMES: [u64; 10] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29];

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut k = 2u64;
    while k * k <= p {
        if p.is_multiple_of(k) {
            return false;
        }
        k += 1;
    }
    true
}

/// `v_p(n)` for nonzero `n`.
pub fn valuation_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q)` for nonzero `q`.
pub fn valuation(q: &BigRational, p: u64) -> i64 {
    valuation_int(q.numer(), p) as i64 - valuation_int(q.denom(), p) as i64
}

/// Primitive integer multiple with positive leading coefficient.
pub fn primitive_part(f: &Poly) -> Vec<BigInt> {
    let scaled = f.scale(&BigRational::from_integer(f.denominator_lcm()));
    let ints = scaled.integer_coeffs().expect("cleared denominators");
    let content = ints.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    let sign = if ints.last().is_some_and(Signed::is_negative) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    ints.iter().map(|c| c / &content * &sign).collect()
}

/// Coefficients reduced into `[0, p)`.
fn reduce_mod(c: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    c.iter()
        .map(|x| x.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect()
}

/// Remainder of `a` modulo monic `b` over F_p. Both low degree first.
fn rem_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    while r.len() > db {
        let c = *r.last().unwrap();
        let k = r.len() - 1 - db;
        if c != 0 {
            for (i, &bi) in b.iter().enumerate() {
                r[k + i] = (r[k + i] + p - (c * bi) % p) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Irreducible over F_p, by trial division by every monic polynomial of
/// degree ≤ deg/2. `f` must be monic mod p.
pub fn irreducible_mod_p(f: &[BigInt], p: u64) -> bool {
    let mut fp = reduce_mod(f, p);
    while fp.last() == Some(&0) {
        fp.pop();
    }
    let n = fp.len().saturating_sub(1);
    if n == 0 {
        return false;
    }
    // Make monic.
    let lead = *fp.last().unwrap();
    let inv = mod_inverse(lead, p);
    for c in fp.iter_mut() {
        *c = (*c * inv) % p;
    }
    for k in 1..=n / 2 {
        let total = p.pow(k as u32);
        for code in 0..total {
            let mut cand = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                cand.push(c % p);
                c /= p;
            }
            cand.push(1);
            if rem_mod_p(&fp, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = BigInt::from(a).extended_gcd(&BigInt::from(p));
    e.x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Eisenstein at `p` for an integer polynomial.
pub fn is_eisenstein(f: &[BigInt], p: u64) -> bool {
    let Some((lead, rest)) = f.split_last() else {
        return false;
    };
    if rest.is_empty() {
        return false;
    }
    let pb = BigInt::from(p);
    let p2 = &pb * &pb;
    !lead.is_multiple_of(&pb)
        && rest.iter().all(|c| c.is_multiple_of(&pb))
        && !rest[0].is_multiple_of(&p2)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs().to_u64().expect("small value");
    let mut small = BTreeSet::new();
    let mut k = 1u64;
    while k * k <= n {
        if n.is_multiple_of(k) {
            small.insert(k);
            small.insert(n / k);
        }
        k += 1;
    }
    small
        .into_iter()
        .flat_map(|d| [BigInt::from(d), -BigInt::from(d)])
        .collect()
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> Poly {
    let mut out = Poly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = Poly::constant(BigRational::from_integer(yi.clone()));
        for (j, xj) in xs.iter().enumerate() {
            if i != j {
                let num = Poly::linear(&BigRational::from_integer(xj.clone()));
                let den = BigRational::from_integer(xi - xj);
                basis = (&basis * &num).scale(&den.recip());
            }
        }
        out = &out + &basis;
    }
    out
}

const KRONECKER_LIMIT: u64 = 5_000_000;

/// Exact search for an integer factor of degree `k`.
fn has_factor_of_degree(f: &Poly, k: usize) -> Result<bool> {
    let mut points: Vec<(BigInt, BigInt)> = (-12i64..=12)
        .map(|a| {
            let a = BigInt::from(a);
            let v = f.eval(&BigRational::from_integer(a.clone())).to_integer();
            (a, v)
        })
        .filter(|(_, v)| !v.is_zero() && v.abs() < BigInt::from(1u64 << 40))
        .collect();
    points.sort_by_cached_key(|(_, v)| divisors(v).len());
    if points.len() < k + 1 {
        return Err(Error::NotIrreducible(format!(
            "cannot decide irreducibility of {f}: too few evaluation points"
        )));
    }
    points.truncate(k + 1);
    let xs: Vec<BigInt> = points.iter().map(|(a, _)| a.clone()).collect();
    let divs: Vec<Vec<BigInt>> = points.iter().map(|(_, v)| divisors(v)).collect();
    let combos: u64 = divs.iter().map(|d| d.len() as u64).product();
    if combos > KRONECKER_LIMIT {
        return Err(Error::NotIrreducible(format!(
            "cannot decide irreducibility of {f}: search space too large"
        )));
    }
    let sizes: Vec<usize> = divs.iter().map(Vec::len).collect();
    for idx in product_indices(&sizes) {
        let ys: Vec<BigInt> = idx.iter().zip(&divs).map(|(&i, d)| d[i].clone()).collect();
        let cand = interpolate(&xs, &ys);
        if cand.degree() == Some(k) && cand.is_integral() && cand.divides(f) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Decides irreducibility over Q for degree ≤ [`MAX_DEGREE`].
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let n = f
        .degree()
        .ok_or_else(|| Error::NotIrreducible("the zero polynomial is not a point".into()))?;
    if n == 0 {
        return Ok(false);
    }
    if n > MAX_DEGREE {
        return Err(Error::NotIrreducible(format!(
            "degree {n} exceeds the supported bound {MAX_DEGREE}"
        )));
    }
    if n == 1 {
        return Ok(true);
    }
    let prim = primitive_part(f);
    let lead = prim.last().unwrap();
    for &p in &SMALL_PRIMES {
        if lead.is_multiple_of(&BigInt::from(p)) {
            continue;
        }
        if irreducible_mod_p(&prim, p) || is_eisenstein(&prim, p) {
            return Ok(true);
        }
    }
    let fz = Poly::from_bigints(&prim);
    for k in 1..=n / 2 {
        if has_factor_of_degree(&fz, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All index tuples `(i₀, …)` with `iₖ < sizes[k]`, last index fastest.
fn product_indices(sizes: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let mut cur = (!sizes.contains(&0)).then(|| vec![0; sizes.len()]);
    std::iter::from_fn(move || {
        let out = cur.clone()?;
        let mut k = sizes.len();
        cur = loop {
            if k == 0 {
                break None;
            }
            k -= 1;
            let c = cur.as_mut().unwrap();
            c[k] += 1;
            if c[k] < sizes[k] {
                break cur.take();
            }
            c[k] = 0;
        };
        Some(out)
    })
}
