//! Exact sparse polynomials over Z in the fixed variable tower s -> t -> x,
//! with conversions to the dense recursive representation used by the
//! resultant and gcd machinery.

use super::modp::ModPPolynomial;

use super::uni::{self, Poly};
use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// The three supported variables, innermost first.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Var {
    S,
    T,
    X,
}

impl Var {
    pub fn symbol(self) -> char {
        match self {
            Var::S => 's',
            Var::T => 't',
            Var::X => 'x',
        }
    }
}

/// Exponent vector keyed for the canonical term order: x first, then t,
/// then s.
pub type Exp = (u32, u32, u32);

fn exp_get(e: Exp, v: Var) -> u32 {
    match v {
        Var::X => e.0,
        Var::T => e.1,
        Var::S => e.2,
    }
}

fn exp_set(mut e: Exp, v: Var, k: u32) -> Exp {
    match v {
        Var::X => e.0 = k,
        Var::T => e.1 = k,
        Var::S => e.2 = k,
    }
    e
}

/// Multivariate integer polynomial; no zero coefficients are stored and the
/// zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<Exp, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::from(1))
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((0, 0, 0), c);
        }
        IntPolynomial { terms }
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(exp_set((0, 0, 0), v, 1), BigInt::from(1));
        IntPolynomial { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exp, BigInt)>) -> Self {
        let mut p = IntPolynomial::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, e: Exp, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exp, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn variables(&self) -> BTreeSet<Var> {
        let mut vars = BTreeSet::new();
        for e in self.terms.keys() {
            for v in [Var::S, Var::T, Var::X] {
                if exp_get(*e, v) > 0 {
                    vars.insert(v);
                }
            }
        }
        vars
    }

    pub fn uses_only(&self, allowed: &[Var]) -> bool {
        self.variables().iter().all(|v| allowed.contains(v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        IntPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = IntPolynomial::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = (ea.0 + eb.0, ea.1 + eb.1, ea.2 + eb.2);
                out.add_term(e, ca * cb);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> Self {
        let mut out = IntPolynomial::zero();
        for (e, c) in &self.terms {
            let k = exp_get(*e, v);
            if k == 0 {
                continue;
            }
            out.add_term(exp_set(*e, v, k - 1), c * BigInt::from(k));
        }
        out
    }

    pub fn degree_in(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|e| exp_get(*e, v)).max()
    }

    /// Coefficient of v^k, a polynomial in the remaining variables.
    pub fn coefficient_of(&self, v: Var, k: u32) -> Self {
        let mut out = IntPolynomial::zero();
        for (e, c) in &self.terms {
            if exp_get(*e, v) == k {
                out.add_term(exp_set(*e, v, 0), c.clone());
            }
        }
        out
    }

    pub fn leading_coefficient_in(&self, v: Var) -> Self {
        match self.degree_in(v) {
            Some(d) => self.coefficient_of(v, d),
            None => IntPolynomial::zero(),
        }
    }

    /// Substitute an integer for a variable.
    pub fn substitute(&self, v: Var, value: &BigInt) -> Self {
        let mut out = IntPolynomial::zero();
        let top = self.degree_in(v).unwrap_or(0);
        // Precompute powers once.
        let mut powers = Vec::with_capacity(top as usize + 1);
        let mut acc = BigInt::from(1);
        for _ in 0..=top {
            powers.push(acc.clone());
            acc *= value;
        }
        for (e, c) in &self.terms {
            let k = exp_get(*e, v);
            out.add_term(exp_set(*e, v, 0), c * &powers[k as usize]);
        }
        out
    }

    pub fn eval_int(&self, s: &BigInt, t: &BigInt, x: &BigInt) -> BigInt {
        let mut acc = BigInt::from(0);
        for (e, c) in &self.terms {
            acc += c * s.pow(e.2) * t.pow(e.1) * x.pow(e.0);
        }
        acc
    }

    /// Dense univariate view. Fails when another variable occurs.
    pub fn to_uni(&self, v: Var) -> Result<Poly<BigInt>> {
        let others: Vec<Var> = [Var::S, Var::T, Var::X]
            .into_iter()
            .filter(|w| *w != v)
            .collect();
        for e in self.terms.keys() {
            if others.iter().any(|w| exp_get(*e, *w) > 0) {
                return Err(Error::Precondition(format!(
                    "polynomial is not univariate in {}",
                    v.symbol()
                )));
            }
        }
        let deg = self.degree_in(v).unwrap_or(0) as usize;
        let mut coeffs = vec![BigInt::from(0); deg + 1];
        for (e, c) in &self.terms {
            coeffs[exp_get(*e, v) as usize] = c.clone();
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn from_uni(p: &Poly<BigInt>, v: Var) -> Self {
        let mut out = IntPolynomial::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(exp_set((0, 0, 0), v, k as u32), c.clone());
        }
        out
    }

    /// View as an element of (Z[s])[t]. The x variable must not occur.
    pub fn to_t_over_s(&self) -> Result<Poly<Poly<BigInt>>> {
        if self.degree_in(Var::X).unwrap_or(0) > 0 {
            return Err(Error::Precondition(
                "polynomial must live in Z[s][t] (no x)".into(),
            ));
        }
        let dt = self.degree_in(Var::T).unwrap_or(0) as usize;
        let mut coeffs: Vec<Vec<BigInt>> = vec![Vec::new(); dt + 1];
        for (e, c) in &self.terms {
            let (_, et, es) = *e;
            let row = &mut coeffs[et as usize];
            if row.len() <= es as usize {
                row.resize(es as usize + 1, BigInt::from(0));
            }
            row[es as usize] = c.clone();
        }
        Ok(Poly::from_coeffs(
            coeffs.into_iter().map(Poly::from_coeffs).collect(),
        ))
    }

    pub fn from_t_over_s(p: &Poly<Poly<BigInt>>) -> Self {
        let mut out = IntPolynomial::zero();
        for (et, cs) in p.coeffs().iter().enumerate() {
            for (es, c) in cs.coeffs().iter().enumerate() {
                out.add_term((0, et as u32, es as u32), c.clone());
            }
        }
        out
    }

    /// View as an element of (Z[s][t])[x].
    pub fn to_x_tower(&self) -> Poly<Poly<Poly<BigInt>>> {
        let dx = self.degree_in(Var::X).unwrap_or(0);
        let mut layers = Vec::with_capacity(dx as usize + 1);
        for k in 0..=dx {
            let coeff = self.coefficient_of(Var::X, k);
            layers.push(coeff.to_t_over_s().expect("x stripped"));
        }
        Poly::from_coeffs(layers)
    }

    pub fn from_x_tower(p: &Poly<Poly<Poly<BigInt>>>) -> Self {
        let mut out = IntPolynomial::zero();
        for (ex, ct) in p.coeffs().iter().enumerate() {
            for (et, cs) in ct.coeffs().iter().enumerate() {
                for (es, c) in cs.coeffs().iter().enumerate() {
                    out.add_term((ex as u32, et as u32, es as u32), c.clone());
                }
            }
        }
        out
    }

    /// Reduction of every coefficient modulo a prime.
    pub fn reduce_mod(&self, p: u64) -> Result<ModPPolynomial> {
        if !is_prime_u64(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(ModPPolynomial::from_int_poly(self, p))
    }

    pub fn is_monic_in(&self, v: Var) -> bool {
        self.degree_in(v).map_or(false, |_| {
            self.leading_coefficient_in(v) == IntPolynomial::one()
        })
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, k) in [(Var::X, e.0), (Var::T, e.1), (Var::S, e.2)] {
                if k == 1 {
                    factors.push(v.symbol().to_string());
                } else if k > 1 {
                    factors.push(format!("{}^{}", v.symbol(), k));
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Resultant with respect to x through the Sylvester determinant.
pub fn resultant_x(p: &IntPolynomial, q: &IntPolynomial) -> Result<IntPolynomial> {
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroInput("resultant of the zero polynomial".into()));
    }
    let a = p.to_x_tower();
    let b = q.to_x_tower();
    let r = uni::resultant_bareiss(&a, &b);
    Ok(IntPolynomial::from_t_over_s(&r))
}

/// Discriminant with respect to x for a monic polynomial:
/// (-1)^(n(n-1)/2) * Res_x(P, dP/dx).
pub fn discriminant_x(p: &IntPolynomial) -> Result<IntPolynomial> {
    let n = p.degree_in(Var::X).unwrap_or(0);
    if n < 1 {
        return Err(Error::Precondition(
            "discriminant needs degree >= 1 in x".into(),
        ));
    }
    if !p.is_monic_in(Var::X) {
        return Err(Error::Precondition("polynomial is not monic in x".into()));
    }
    let tower = p.to_x_tower();
    let d = uni::discriminant(&tower);
    Ok(IntPolynomial::from_t_over_s(&d))
}

/// Primitive squarefree part with respect to t over Q(s) (over Q when s is
/// absent), made primitive over Z with positive leading coefficient.
pub fn radical_t(f: &IntPolynomial) -> Result<IntPolynomial> {
    if f.is_zero() {
        return Err(Error::ZeroInput("radical of the zero polynomial".into()));
    }
    if !f.uses_only(&[Var::S, Var::T]) {
        return Err(Error::Precondition(
            "radical_t expects a polynomial in Z[s][t]".into(),
        ));
    }
    let g = f.to_t_over_s()?;
    let primitive = g.primitive_part().normalized();
    let deriv = primitive.derivative();
    if deriv.is_zero() {
        // Constant in t: unit radical.
        return Ok(IntPolynomial::one());
    }
    let gcd = primitive.gcd_poly(&deriv);
    let rad = primitive.exact_div_poly(&gcd).normalized();
    Ok(IntPolynomial::from_t_over_s(&rad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(text: &str) -> IntPolynomial {
        parse_poly(text).unwrap()
    }

    #[test]
    fn canonical_display() {
        assert_eq!(p("x^2 - t").to_string(), "x^2 - t");
        assert_eq!(p("0").to_string(), "0");
        assert_eq!(p("(t-s)*(t+s) - t^2").to_string(), "-s^2");
        assert_eq!(p("4*t^2 - 4").to_string(), "4*t^2 - 4");
        assert_eq!(p("x*t*s + 1").to_string(), "x*t*s + 1");
    }

    #[test]
    fn discriminant_examples() {
        // disc_x(x^2 - t) = 4t
        assert_eq!(discriminant_x(&p("x^2 - t")).unwrap(), p("4*t"));
        // disc_x(x^2 - (t^2 - 1)) = 4t^2 - 4
        assert_eq!(
            discriminant_x(&p("x^2 - (t^2 - 1)")).unwrap(),
            p("4*t^2 - 4")
        );
    }

    #[test]
    fn resultant_linear() {
        assert_eq!(
            resultant_x(&p("x - t"), &p("x - s")).unwrap(),
            p("t - s")
        );
    }

    #[test]
    fn resultant_zero_input_rejected() {
        assert!(resultant_x(&p("0"), &p("x")).is_err());
    }

    #[test]
    fn discriminant_requires_monic() {
        assert!(discriminant_x(&p("2*x^2 - t")).is_err());
        assert!(discriminant_x(&p("t")).is_err());
    }

    #[test]
    fn radical_examples() {
        assert_eq!(radical_t(&p("4*t")).unwrap(), p("t"));
        // (t-1)^2 (t+2) -> (t-1)(t+2)
        assert_eq!(
            radical_t(&p("(t-1)*(t-1)*(t+2)")).unwrap(),
            p("t^2 + t - 2")
        );
        assert_eq!(radical_t(&p("t^2 - s")).unwrap(), p("t^2 - s"));
        assert_eq!(radical_t(&p("7")).unwrap(), p("1"));
    }

    #[test]
    fn radical_sign_normalization() {
        assert_eq!(radical_t(&p("-2*t^2 + 2")).unwrap(), p("t^2 - 1"));
    }

    #[test]
    fn substitution_specializes() {
        let f = p("t^2 - s");
        assert_eq!(f.substitute(Var::S, &BigInt::from(4)), p("t^2 - 4"));
    }
}
