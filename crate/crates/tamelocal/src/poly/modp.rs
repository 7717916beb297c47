//! Polynomials over F_p and the distinct-root count used by the bad-prime
//! characterizations.

use super::tri::{Exp, IntPolynomial, Var};
use crate::arith::{inv_mod_u64, is_prime_u64, mul_mod_u64};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use std::collections::BTreeMap;

/// Sparse polynomial with coefficients reduced into {0..p-1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModPPolynomial {
    p: u64,
    terms: BTreeMap<Exp, u64>,
}

impl ModPPolynomial {
    pub fn from_int_poly(f: &IntPolynomial, p: u64) -> Self {
        let pb = BigInt::from(p);
        let mut terms = BTreeMap::new();
        for (e, c) in f.terms() {
            let r = c.mod_floor(&pb).to_u64().expect("residue fits u64");
            if r != 0 {
                terms.insert(*e, r);
            }
        }
        ModPPolynomial { p, terms }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &u64)> {
        self.terms.iter()
    }

    fn add_term(&mut self, e: Exp, c: u64) {
        let c = c % self.p;
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(e).or_insert(0);
        *entry = (*entry + c) % self.p;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, *c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p, "mixed moduli");
        let mut out = ModPPolynomial {
            p: self.p,
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
                out.add_term(e, mul_mod_u64(*ca, *cb, self.p));
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        ModPPolynomial {
            p: self.p,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, self.p - c))
                .collect(),
        }
    }

    /// Dense univariate coefficients. Fails when another variable occurs.
    pub fn to_dense(&self, v: Var) -> Result<Vec<u64>> {
        let get = |e: &Exp, w: Var| match w {
            Var::X => e.0,
            Var::T => e.1,
            Var::S => e.2,
        };
        for e in self.terms.keys() {
            for w in [Var::S, Var::T, Var::X] {
                if w != v && get(e, w) > 0 {
                    return Err(Error::Precondition(format!(
                        "polynomial is not univariate in {}",
                        v.symbol()
                    )));
                }
            }
        }
        let deg = self.terms.keys().map(|e| get(e, v)).max().unwrap_or(0);
        let mut out = vec![0u64; deg as usize + 1];
        for (e, c) in &self.terms {
            out[get(e, v) as usize] = *c;
        }
        while out.len() > 1 && *out.last().unwrap() == 0 {
            out.pop();
        }
        Ok(out)
    }
}

/// Result of the distinct-root computation over an algebraic closure.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SquarefreeDegree {
    /// Number of pairwise distinct roots of f in an algebraic closure of
    /// F_p; zero for the zero polynomial by convention.
    pub degree: usize,
    pub is_zero: bool,
}

/// Degree of the radical of f over F_p, i.e. the number of distinct roots
/// in an algebraic closure. Correct in characteristic p: factors whose
/// multiplicity is divisible by p (where f' loses them) are handled through
/// the Frobenius descent f(t) = g(t^p) => radical(f) = radical(g).
pub fn squarefree_degree_mod(f: &ModPPolynomial, v: Var) -> Result<SquarefreeDegree> {
    if !is_prime_u64(f.modulus()) {
        return Err(Error::NotPrime(f.modulus()));
    }
    if f.is_zero() {
        return Ok(SquarefreeDegree {
            degree: 0,
            is_zero: true,
        });
    }
    let dense = f.to_dense(v)?;
    let rad = radical_fp(&dense, f.modulus());
    Ok(SquarefreeDegree {
        degree: deg(&rad),
        is_zero: false,
    })
}

pub(crate) fn deg(f: &[u64]) -> usize {
    f.len().saturating_sub(1)
}

/// Dense reduction of integer coefficients (ascending) modulo p.
pub(crate) fn reduce_dense(coeffs: &[BigInt], p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    let out: Vec<u64> = coeffs
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits u64"))
        .collect();
    trim(out)
}

pub(crate) fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    if f.is_empty() {
        f.push(0);
    }
    f
}

pub(crate) fn is_const(f: &[u64]) -> bool {
    f.len() <= 1
}

pub(crate) fn derivative_fp(f: &[u64], p: u64) -> Vec<u64> {
    if f.len() <= 1 {
        return vec![0];
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (k, &c) in f.iter().enumerate().skip(1) {
        out.push(mul_mod_u64(c, (k as u64) % p, p));
    }
    trim(out)
}

pub(crate) fn is_zero_fp(f: &[u64]) -> bool {
    f.iter().all(|&c| c == 0)
}

fn make_monic(f: &[u64], p: u64) -> Vec<u64> {
    let lead = *f.last().unwrap();
    if lead == 1 {
        return f.to_vec();
    }
    let inv = inv_mod_u64(lead, p);
    f.iter().map(|&c| mul_mod_u64(c, inv, p)).collect()
}

/// Long division; b must be nonzero. Returns (quotient, remainder).
fn divrem_fp(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let b = trim(b.to_vec());
    assert!(!is_zero_fp(&b), "division by zero over F_p");
    let mut r = trim(a.to_vec());
    let db = deg(&b);
    if is_zero_fp(&r) || deg(&r) < db {
        return (vec![0], r);
    }
    let lead_inv = inv_mod_u64(*b.last().unwrap(), p);
    let mut q = vec![0u64; deg(&r) - db + 1];
    for k in (0..q.len()).rev() {
        let idx = db + k;
        if idx >= r.len() {
            continue;
        }
        let c = mul_mod_u64(r[idx], lead_inv, p);
        if c == 0 {
            continue;
        }
        q[k] = c;
        for i in 0..=db {
            let sub = mul_mod_u64(c, b[i], p);
            r[i + k] = (r[i + k] + p - sub) % p;
        }
    }
    (trim(q), trim(r))
}

pub(crate) fn gcd_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    if is_zero_fp(&x) {
        return if is_zero_fp(&y) { vec![0] } else { make_monic(&y, p) };
    }
    if is_zero_fp(&y) {
        return make_monic(&x, p);
    }
    while !is_zero_fp(&y) {
        let (_, r) = divrem_fp(&x, &y, p);
        x = y;
        y = r;
    }
    make_monic(&x, p)
}

fn div_exact_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (q, r) = divrem_fp(a, b, p);
    debug_assert!(is_zero_fp(&r), "inexact division over F_p");
    q
}

fn mul_fp(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mul_mod_u64(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Product of the distinct monic irreducible factors of f (monic).
fn radical_fp(f: &[u64], p: u64) -> Vec<u64> {
    let f = make_monic(&trim(f.to_vec()), p);
    if is_const(&f) {
        return vec![1];
    }
    let df = derivative_fp(&f, p);
    if is_zero_fp(&df) {
        // f(t) = g(t^p); over the prime field g has the same coefficients.
        let mut g = vec![0u64; (deg(&f) / p as usize) + 1];
        for (k, &c) in f.iter().enumerate() {
            if c != 0 {
                debug_assert_eq!(k % p as usize, 0);
                g[k / p as usize] = c;
            }
        }
        return radical_fp(&trim(g), p);
    }
    let g = gcd_fp(&f, &df, p);
    let tame = div_exact_fp(&f, &g, p);
    // Strip the tame factors out of g; what remains has p-divisible
    // multiplicities only.
    let mut wild = g;
    loop {
        let d = gcd_fp(&wild, &tame, p);
        if is_const(&d) {
            break;
        }
        wild = div_exact_fp(&wild, &d, p);
    }
    if is_const(&wild) {
        return tame;
    }
    mul_fp(&tame, &radical_fp(&wild, p), p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn sqf(text: &str, p: u64) -> SquarefreeDegree {
        let f = parse_poly(text).unwrap().reduce_mod(p).unwrap();
        squarefree_degree_mod(&f, Var::T).unwrap()
    }

    #[test]
    fn spec_examples() {
        // t^2 - 1 mod 2 = (t+1)^2: one distinct root.
        assert_eq!(sqf("t^2 - 1", 2).degree, 1);
        // t^2 - 1 mod 5: two distinct roots.
        assert_eq!(sqf("t^2 - 1", 5).degree, 2);
        // t^3 mod 7: one distinct root.
        assert_eq!(sqf("t^3", 7).degree, 1);
    }

    #[test]
    fn char_p_power_factors() {
        // t^2 mod 2 has derivative 0; the Frobenius descent still sees the
        // single root.
        assert_eq!(sqf("t^2", 2).degree, 1);
        // (t^2 + t)^2 mod 2 = t^4 + t^2: roots {0, 1}.
        assert_eq!(sqf("t^4 + t^2", 2).degree, 2);
        // t^4 + 1 mod 2 = (t+1)^4.
        assert_eq!(sqf("t^4 + 1", 2).degree, 1);
    }

    #[test]
    fn zero_reduction_flagged() {
        let f = parse_poly("2*t^2 + 2").unwrap().reduce_mod(2).unwrap();
        let r = squarefree_degree_mod(&f, Var::T).unwrap();
        assert!(r.is_zero);
        assert_eq!(r.degree, 0);
    }

    #[test]
    fn nonzero_constant_is_rootless() {
        assert_eq!(sqf("3", 2).degree, 0);
        assert!(!sqf("3", 2).is_zero);
    }

    #[test]
    fn reduction_respects_ring_ops() {
        let a = parse_poly("t^2 - 3*t + 7").unwrap();
        let b = parse_poly("2*t + 5").unwrap();
        for p in [2u64, 3, 5, 7] {
            let ra = a.reduce_mod(p).unwrap();
            let rb = b.reduce_mod(p).unwrap();
            assert_eq!(a.add(&b).reduce_mod(p).unwrap(), ra.add(&rb));
            assert_eq!(a.mul(&b).reduce_mod(p).unwrap(), ra.mul(&rb));
        }
    }

    #[test]
    fn rejects_multivariate() {
        let f = parse_poly("t*s").unwrap().reduce_mod(3).unwrap();
        assert!(squarefree_degree_mod(&f, Var::T).is_err());
    }
}
