//! Exceptional prime sets of parametric polynomials. A prime is bad for a
//! monic separable P in Z[t][x] when the discriminant degenerates mod p;
//! the two classical characterizations are computed by separate code paths
//! and asserted equal on every prime tested:
//!
//!   A. p divides the leading t-coefficient of disc_x(P), or the radical of
//!      the discriminant becomes inseparable (or drops degree) mod p;
//!   B. disc_x(P) vanishes identically mod p, or its number of distinct
//!      roots over an algebraic closure drops.
//!
//! On top sits the residue-bound apparatus for bivariate families
//! P(s, t, x): the constants a_P, b_P, d_P = a_P + b_P, the exceptional set
//! S_P, and a sampling scan of mod-p residue classes of the parameter.

use crate::arith::{prime_divisors_u64, FactorBudget};
use crate::error::{Error, Result};
use crate::poly::modp::{self, squarefree_degree_mod};
use crate::poly::tri::{discriminant_x, radical_t, IntPolynomial, Var};
use crate::poly::uni::{self, Poly};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::collections::BTreeMap;

/// Why a prime landed in the bad set. When several clauses apply the most
/// specific one wins: total vanishing, then leading coefficient, then
/// inseparable radical.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BadPrimeReason {
    DiscriminantVanishesModP,
    DividesLeadingCoefficient,
    RadicalInseparableModP,
}

impl BadPrimeReason {
    pub fn as_str(self) -> &'static str {
        match self {
            BadPrimeReason::DiscriminantVanishesModP => "discriminant_vanishes_mod_p",
            BadPrimeReason::DividesLeadingCoefficient => "divides_leading_coefficient",
            BadPrimeReason::RadicalInseparableModP => "radical_inseparable_mod_p",
        }
    }
}

#[derive(Clone, Debug)]
pub struct BadPrimeReport {
    pub poly: IntPolynomial,
    pub discriminant: IntPolynomial,
    pub primes: Vec<u64>,
    pub reasons: BTreeMap<u64, BadPrimeReason>,
}

/// Everything derived from a univariate discriminant that the per-prime
/// membership tests need.
pub struct DiscriminantData {
    delta: IntPolynomial,
    radical_dense: Poly<BigInt>,
    leading: BigInt,
    content: BigInt,
    /// Number of distinct roots over the algebraic closure of Q.
    distinct_roots: usize,
}

impl DiscriminantData {
    /// `delta` must be a nonzero polynomial in Z[t].
    pub fn new(delta: IntPolynomial) -> Result<DiscriminantData> {
        if delta.is_zero() {
            return Err(Error::ZeroInput("zero discriminant".into()));
        }
        if !delta.uses_only(&[Var::T]) {
            return Err(Error::Precondition(
                "discriminant data expects a polynomial in Z[t]".into(),
            ));
        }
        let delta_dense = delta.to_uni(Var::T)?;
        let radical = radical_t(&delta)?;
        let radical_dense = radical.to_uni(Var::T)?;
        let distinct_roots = radical_dense.degree().unwrap_or(0);
        Ok(DiscriminantData {
            leading: delta_dense.leading().cloned().unwrap_or_else(|| BigInt::from(0)),
            content: delta_dense.content(),
            delta,
            radical_dense,
            distinct_roots,
        })
    }

    pub fn distinct_roots_over_q(&self) -> usize {
        self.distinct_roots
    }

    /// Characterization A: leading coefficient or inseparable radical.
    pub fn characterization_leading_radical(&self, p: u64) -> bool {
        if self.leading.mod_floor(&BigInt::from(p)).is_zero() {
            return true;
        }
        let rad = modp::reduce_dense(self.radical_dense.coeffs(), p);
        // Degree drop mod p.
        if modp::deg(&rad) < self.distinct_roots || modp::is_zero_fp(&rad) {
            return true;
        }
        // Inseparable: gcd with the derivative is nonconstant.
        let deriv = modp::derivative_fp(&rad, p);
        let g = modp::gcd_fp(&rad, &deriv, p);
        !modp::is_const(&g)
    }

    /// Characterization B: total vanishing or a distinct-root drop, read
    /// off the reduced discriminant itself.
    pub fn characterization_root_count(&self, p: u64) -> Result<bool> {
        let reduced = self.delta.reduce_mod(p)?;
        let sq = squarefree_degree_mod(&reduced, Var::T)?;
        if sq.is_zero {
            return Ok(true);
        }
        Ok(sq.degree < self.distinct_roots)
    }

    /// Two-path membership test; the paths must agree.
    pub fn is_bad_prime(&self, p: u64) -> Result<bool> {
        let a = self.characterization_leading_radical(p);
        let b = self.characterization_root_count(p)?;
        if a != b {
            return Err(Error::Invariant(format!(
                "bad-prime characterizations disagree at p = {p}"
            )));
        }
        Ok(a)
    }

    fn reason(&self, p: u64) -> BadPrimeReason {
        let pb = BigInt::from(p);
        if self.content.mod_floor(&pb).is_zero() {
            BadPrimeReason::DiscriminantVanishesModP
        } else if self.leading.mod_floor(&pb).is_zero() {
            BadPrimeReason::DividesLeadingCoefficient
        } else {
            BadPrimeReason::RadicalInseparableModP
        }
    }

    /// Every bad prime divides lc * disc(radical): compute that candidate
    /// superset exactly.
    pub fn candidate_primes(&self, budget: FactorBudget) -> Result<Vec<u64>> {
        let disc_rad = if self.distinct_roots >= 1 {
            uni::discriminant_z_fast(&self.radical_dense)
        } else {
            BigInt::from(1)
        };
        let m = &self.leading * &disc_rad;
        prime_divisors_u64(&m, budget)
    }
}

/// The bad-prime set of a monic separable P in Z[t][x], with per-prime
/// reasons. Both characterizations run on every candidate.
pub fn bad_prime_set(p: &IntPolynomial) -> Result<BadPrimeReport> {
    bad_prime_set_with_budget(p, FactorBudget::default())
}

pub fn bad_prime_set_with_budget(
    poly: &IntPolynomial,
    budget: FactorBudget,
) -> Result<BadPrimeReport> {
    if !poly.uses_only(&[Var::T, Var::X]) {
        return Err(Error::Precondition(
            "bad_prime_set expects P in Z[t][x]".into(),
        ));
    }
    let delta = discriminant_x(poly)?;
    if delta.is_zero() {
        return Err(Error::Precondition(
            "P is inseparable in x: the discriminant vanishes".into(),
        ));
    }
    let data = DiscriminantData::new(delta.clone())?;
    let mut primes = Vec::new();
    let mut reasons = BTreeMap::new();
    for p in data.candidate_primes(budget)? {
        if data.is_bad_prime(p)? {
            reasons.insert(p, data.reason(p));
            primes.push(p);
        }
    }
    primes.sort_unstable();
    Ok(BadPrimeReport {
        poly: poly.clone(),
        discriminant: delta,
        primes,
        reasons,
    })
}

/// The uniform residue-bound constants of a bivariate family P(s, t, x).
#[derive(Clone, Debug)]
pub struct ResidueBoundConstants {
    /// deg_s of the leading t-coefficient of disc_x(P).
    pub a_p: u32,
    /// deg_s of disc_t(radical_t(disc_x(P))).
    pub b_p: u32,
    /// a_P + b_P: the uniform bound on bad residue classes.
    pub d_p: u32,
    /// Excluded primes: divisors of the content of the leading coefficient
    /// or of the content of the radical discriminant.
    pub s_p: Vec<u64>,
}

pub fn residue_bound_constants(poly: &IntPolynomial) -> Result<ResidueBoundConstants> {
    residue_bound_constants_with_budget(poly, FactorBudget::default())
}

pub fn residue_bound_constants_with_budget(
    poly: &IntPolynomial,
    budget: FactorBudget,
) -> Result<ResidueBoundConstants> {
    let delta = discriminant_x(poly)?;
    if delta.is_zero() {
        return Err(Error::Precondition(
            "P is inseparable in x: the discriminant vanishes".into(),
        ));
    }
    let lead = delta.leading_coefficient_in(Var::T);
    let a_p = lead.degree_in(Var::S).unwrap_or(0);
    let rad = radical_t(&delta)?;
    let rad_disc: Poly<BigInt> = if rad.degree_in(Var::T).unwrap_or(0) >= 1 {
        uni::discriminant(&rad.to_t_over_s()?)
    } else {
        Poly::constant(BigInt::from(1))
    };
    if rad_disc.is_zero() {
        return Err(Error::Invariant(
            "squarefree radical has zero discriminant".into(),
        ));
    }
    let b_p = rad_disc.degree().unwrap_or(0) as u32;
    let mut s_p = Vec::new();
    s_p.extend(prime_divisors_u64(&lead.to_uni(Var::S)?.content(), budget)?);
    s_p.extend(prime_divisors_u64(&rad_disc.content(), budget)?);
    s_p.sort_unstable();
    s_p.dedup();
    Ok(ResidueBoundConstants {
        a_p,
        b_p,
        d_p: a_p + b_p,
        s_p,
    })
}

/// Result of sampling the residue classes of the parameter s at p.
#[derive(Clone, Debug)]
pub struct ResidueBoundReport {
    pub p: u64,
    pub constants: ResidueBoundConstants,
    /// Residues r with some sampled lift s0 = r + kp for which p is bad for
    /// P(s0, t, x).
    pub bad_residues: Vec<u64>,
    /// First witnessing lift per bad residue.
    pub witnesses: BTreeMap<u64, BigInt>,
    /// Whether p is in S_P (the bound is not claimed there).
    pub p_in_s_p: bool,
}

/// Scan every residue class r mod p with `lifts_per_class` lifts each,
/// recording r as bad when some lift specializes to a family with p bad.
pub fn bad_residues_sampled(
    poly: &IntPolynomial,
    p: u64,
    lifts_per_class: u64,
) -> Result<ResidueBoundReport> {
    bad_residues_sampled_with_budget(poly, p, lifts_per_class, FactorBudget::default())
}

pub fn bad_residues_sampled_with_budget(
    poly: &IntPolynomial,
    p: u64,
    lifts_per_class: u64,
    budget: FactorBudget,
) -> Result<ResidueBoundReport> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if lifts_per_class == 0 {
        return Err(Error::Precondition("lifts_per_class must be positive".into()));
    }
    let constants = residue_bound_constants_with_budget(poly, budget)?;
    let delta = discriminant_x(poly)?;
    let mut bad_residues = Vec::new();
    let mut witnesses = BTreeMap::new();
    for r in 0..p {
        'lifts: for k in 0..lifts_per_class {
            let s0 = BigInt::from(r) + BigInt::from(k) * BigInt::from(p);
            let specialized = delta.substitute(Var::S, &s0);
            if specialized.is_zero() {
                return Err(Error::DegenerateSpecialization(format!(
                    "disc_x(P) vanishes identically at s = {s0}"
                )));
            }
            let data = DiscriminantData::new(specialized)?;
            if data.is_bad_prime(p)? {
                bad_residues.push(r);
                witnesses.insert(r, s0);
                break 'lifts;
            }
        }
    }
    let p_in_s_p = constants.s_p.contains(&p);
    Ok(ResidueBoundReport {
        p,
        constants,
        bad_residues,
        witnesses,
        p_in_s_p,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(text: &str) -> IntPolynomial {
        parse_poly(text).unwrap()
    }

    #[test]
    fn spec_examples_for_bad_prime_set() {
        // x^2 - t: disc 4t vanishes identically mod 2.
        let r = bad_prime_set(&p("x^2 - t")).unwrap();
        assert_eq!(r.primes, vec![2]);
        assert_eq!(r.reasons[&2], BadPrimeReason::DiscriminantVanishesModP);

        // x^2 - (t^2 - 1): disc 4t^2 - 4, bad set {2}.
        let r = bad_prime_set(&p("x^2 - (t^2 - 1)")).unwrap();
        assert_eq!(r.primes, vec![2]);

        // Constant discriminant: x^2 - 1 has disc 4.
        let r = bad_prime_set(&p("x^2 - 1")).unwrap();
        assert_eq!(r.primes, vec![2]);

        // A case where only the leading coefficient is divisible:
        // disc(x^2 - t*x + t) = t^2 - 4t; content 1, lc 1... use
        // x^3 + t*x + t instead: disc = -4t^3 - 27t^2, lc -4, content 1.
        let r = bad_prime_set(&p("x^3 + t*x + t")).unwrap();
        assert!(r.primes.contains(&2));
        assert_eq!(r.reasons[&2], BadPrimeReason::DividesLeadingCoefficient);
    }

    #[test]
    fn large_prime_candidates_found() {
        // x^2 - (t^2 - 101): radical t^2 - 101, disc 404 = 4 * 101.
        let r = bad_prime_set(&p("x^2 - (t^2 - 101)")).unwrap();
        assert_eq!(r.primes, vec![2, 101]);
        assert_eq!(r.reasons[&101], BadPrimeReason::RadicalInseparableModP);
    }

    #[test]
    fn inseparable_input_rejected() {
        assert!(bad_prime_set(&p("x^2 - 2*x + 1")).is_err());
        assert!(bad_prime_set(&p("x^2 - s")).is_err());
        assert!(bad_prime_set(&p("2*x^2 - t")).is_err());
    }

    #[test]
    fn residue_constants_spec_values() {
        // P = x^2 - (t - s): a(s) = 4, so a_P = 0; radical t - s has
        // discriminant 1, so b_P = 0; S_P = {2}.
        let c = residue_bound_constants(&p("x^2 - (t - s)")).unwrap();
        assert_eq!((c.a_p, c.b_p, c.d_p), (0, 0, 0));
        assert_eq!(c.s_p, vec![2]);

        // P = x^2 - (t^2 - s): disc_t(t^2 - s) = 4s, so b_P = 1.
        let c = residue_bound_constants(&p("x^2 - (t^2 - s)")).unwrap();
        assert_eq!((c.a_p, c.b_p, c.d_p), (0, 1, 1));
        assert_eq!(c.s_p, vec![2]);

        // No parameter dependence at all.
        let c = residue_bound_constants(&p("x^2 - t")).unwrap();
        assert_eq!((c.a_p, c.b_p, c.d_p), (0, 0, 0));
    }

    #[test]
    fn sampled_residues_spec_values() {
        // x^2 - (t^2 - s) at p = 7: bad residue exactly {0}.
        let r = bad_residues_sampled(&p("x^2 - (t^2 - s)"), 7, 2).unwrap();
        assert_eq!(r.bad_residues, vec![0]);
        assert!(!r.p_in_s_p);
        assert!(r.bad_residues.len() as u32 <= r.constants.d_p);

        // x^2 - (t - s) at p = 5: linear radical stays separable.
        let r = bad_residues_sampled(&p("x^2 - (t - s)"), 5, 2).unwrap();
        assert!(r.bad_residues.is_empty());

        // p = 2 is in S_P for x^2 - (t^2 - s); the report flags it.
        let r = bad_residues_sampled(&p("x^2 - (t^2 - s)"), 2, 1).unwrap();
        assert!(r.p_in_s_p);
    }

    #[test]
    fn lifts_must_be_positive() {
        assert!(bad_residues_sampled(&p("x^2 - (t - s)"), 5, 0).is_err());
        assert!(bad_residues_sampled(&p("x^2 - (t - s)"), 4, 1).is_err());
    }
}
