//! Inertia-decomposition pairs over Q: the conjugation character eta into
//! (Z/e)^*, its image V, the congruence classes of realizable primes, and an
//! independent brute-force realizability oracle built directly on the tame
//! presentation <sigma, tau | tau^sigma = tau^q>.

use crate::arith::{gcd_u64, is_prime_u64};
use crate::error::{Error, Result};
use crate::group::{is_normal_in, quotient_is_cyclic, subgroups, FiniteGroup, Subgroup};
use num_rational::Ratio;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

/// The unit group (Z/e)^*. For e = 1 the group is trivial with the single
/// residue 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UnitsModE {
    e: u64,
    elements: Vec<u64>,
}

impl UnitsModE {
    pub fn new(e: u64) -> UnitsModE {
        assert!(e >= 1);
        let elements = if e == 1 {
            vec![0]
        } else {
            (1..e).filter(|&a| gcd_u64(a, e) == 1).collect()
        };
        UnitsModE { e, elements }
    }

    pub fn modulus(&self) -> u64 {
        self.e
    }

    pub fn phi(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn identity(&self) -> u64 {
        if self.e == 1 {
            0
        } else {
            1
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.e == 1 {
            0
        } else {
            (a * b) % self.e
        }
    }

    /// Sorted cyclic subgroup generated by a unit.
    pub fn cyclic_subgroup(&self, a: u64) -> Vec<u64> {
        if self.e == 1 {
            return vec![0];
        }
        let mut set = BTreeSet::new();
        set.insert(1u64);
        let mut x = a % self.e;
        while x != 1 {
            set.insert(x);
            x = self.mul(x, a);
        }
        set.into_iter().collect()
    }
}

/// An ID pair (I, D) with I cyclic and normal in D and D/I cyclic, together
/// with eta : D -> (Z/e)^* and its image V.
#[derive(Clone, Debug)]
pub struct IdPair {
    inertia: Subgroup,
    decomposition: Subgroup,
    e: u64,
    eta: BTreeMap<usize, u64>,
    v: Vec<u64>,
}

/// A set of residues mod e with its Dirichlet density |residues| / phi(e).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CongruenceClassSet {
    pub modulus: u64,
    pub residues: Vec<u64>,
    pub density: Ratio<u64>,
}

/// True iff (I, D) is an ID pair over Q: I cyclic, I normal in D, and D/I
/// cyclic. Nonempty realizability over Q then follows from Dirichlet.
pub fn is_id_pair_over_q(i: &Subgroup, d: &Subgroup) -> bool {
    if !i.is_subset_of(d) || !i.is_cyclic() {
        return false;
    }
    match is_normal_in(i, d) {
        Ok(true) => {}
        _ => return false,
    }
    quotient_is_cyclic(d, i).unwrap_or(false)
}

/// The conjugation character: eta(d) = a where d^-1 tau d = tau^a for a
/// generator tau of I. Verified generator-independent, a homomorphism, and
/// with kernel exactly C_D(I).
pub fn compute_eta(i: &Subgroup, d: &Subgroup) -> Result<BTreeMap<usize, u64>> {
    if !i.is_cyclic() {
        return Err(Error::Precondition("I is not cyclic".into()));
    }
    if !i.is_subset_of(d) || !is_normal_in(i, d)? {
        return Err(Error::Precondition("I is not normal in D".into()));
    }
    let group = i.group();
    let e = i.order() as u64;
    let generators: Vec<usize> = i
        .elements()
        .iter()
        .copied()
        .filter(|&t| group.order_of(t) == i.order())
        .collect();
    let mut eta: Option<BTreeMap<usize, u64>> = None;
    for &tau in &generators {
        let map = eta_for_generator(group, i, d, tau, e)?;
        match &eta {
            None => eta = Some(map),
            Some(prev) => {
                if *prev != map {
                    return Err(Error::Invariant(
                        "eta depends on the generator choice".into(),
                    ));
                }
            }
        }
    }
    let eta = eta.expect("a cyclic group has a generator");
    // Homomorphism audit.
    let units = UnitsModE::new(e);
    for &d1 in d.elements() {
        for &d2 in d.elements() {
            let lhs = eta[&group.mul(d1, d2)];
            let rhs = units.mul(eta[&d1], eta[&d2]);
            if lhs != rhs {
                return Err(Error::Invariant("eta is not a homomorphism".into()));
            }
        }
    }
    // Kernel = centralizer.
    let kernel: Vec<usize> = d
        .elements()
        .iter()
        .copied()
        .filter(|x| eta[x] == units.identity())
        .collect();
    let central = centralizer_within(d, i);
    if kernel != central {
        return Err(Error::Invariant("ker(eta) differs from C_D(I)".into()));
    }
    Ok(eta)
}

fn eta_for_generator(
    group: &Arc<FiniteGroup>,
    i: &Subgroup,
    d: &Subgroup,
    tau: usize,
    e: u64,
) -> Result<BTreeMap<usize, u64>> {
    // Discrete log table for powers of tau.
    let mut log = BTreeMap::new();
    let mut x = 0usize;
    for k in 0..i.order() as u64 {
        log.insert(x, k);
        x = group.mul(x, tau);
    }
    let mut eta = BTreeMap::new();
    for &dd in d.elements() {
        let c = group.conj(tau, dd);
        let a = *log
            .get(&c)
            .ok_or_else(|| Error::Invariant("conjugate left the inertia subgroup".into()))?;
        if e == 1 {
            eta.insert(dd, 0);
        } else {
            if gcd_u64(a, e) != 1 {
                return Err(Error::Invariant(
                    "conjugation is not an automorphism of I".into(),
                ));
            }
            eta.insert(dd, a);
        }
    }
    Ok(eta)
}

/// Elements of D commuting with all of I (sorted).
fn centralizer_within(d: &Subgroup, i: &Subgroup) -> Vec<usize> {
    let g = d.group();
    d.elements()
        .iter()
        .copied()
        .filter(|&x| i.elements().iter().all(|&h| g.mul(x, h) == g.mul(h, x)))
        .collect()
}

impl IdPair {
    pub fn new(i: Subgroup, d: Subgroup) -> Result<IdPair> {
        if !is_id_pair_over_q(&i, &d) {
            return Err(Error::Precondition(
                "(I, D) is not an ID pair over Q".into(),
            ));
        }
        let eta = compute_eta(&i, &d)?;
        let e = i.order() as u64;
        let v: Vec<u64> = eta.values().copied().collect::<BTreeSet<_>>().into_iter().collect();
        Ok(IdPair {
            inertia: i,
            decomposition: d,
            e,
            eta,
            v,
        })
    }

    pub fn inertia(&self) -> &Subgroup {
        &self.inertia
    }

    pub fn decomposition(&self) -> &Subgroup {
        &self.decomposition
    }

    pub fn ramification_index(&self) -> u64 {
        self.e
    }

    pub fn eta(&self) -> &BTreeMap<usize, u64> {
        &self.eta
    }

    /// The image V of eta, sorted.
    pub fn image(&self) -> &[u64] {
        &self.v
    }

    /// Smallest generator of the cyclic group V; None when V is trivial.
    pub fn image_generator(&self) -> Option<u64> {
        let units = UnitsModE::new(self.e);
        if self.v == vec![units.identity()] {
            return None;
        }
        units
            .elements()
            .iter()
            .copied()
            .find(|&u| units.cyclic_subgroup(u) == self.v)
    }

    /// Residues q mod e whose cyclic span in (Z/e)^* is exactly V; their
    /// Dirichlet density among all residues is |residues| / phi(e).
    pub fn realizable_residues(&self) -> CongruenceClassSet {
        let units = UnitsModE::new(self.e);
        let residues: Vec<u64> = units
            .elements()
            .iter()
            .copied()
            .filter(|&q| units.cyclic_subgroup(q) == self.v)
            .collect();
        let density = Ratio::new(residues.len() as u64, units.phi());
        CongruenceClassSet {
            modulus: self.e,
            residues,
            density,
        }
    }

    /// Brute-force oracle for the tame presentation: q is realizable iff
    /// some generator tau of I and some d in D satisfy d^-1 tau d = tau^q
    /// with dI generating D/I. Searches pairs directly instead of going
    /// through eta.
    pub fn local_realizable_bruteforce(&self, q: u64) -> Result<bool> {
        if !is_prime_u64(q) {
            return Err(Error::NotPrime(q));
        }
        if self.e % q == 0 {
            return Err(Error::WildPrime { q, e: self.e });
        }
        let group = self.inertia.group();
        let index = self.decomposition.order() / self.inertia.order();
        let taus: Vec<usize> = self
            .inertia
            .elements()
            .iter()
            .copied()
            .filter(|&t| group.order_of(t) == self.inertia.order())
            .collect();
        for &tau in &taus {
            let target = group.pow(tau, q);
            for &d in self.decomposition.elements() {
                if group.conj(tau, d) != target {
                    continue;
                }
                if coset_order(group, &self.inertia, d) == index {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }
}

/// Order of the coset dI in D/I (I normal in the ambient pair).
fn coset_order(group: &Arc<FiniteGroup>, i: &Subgroup, d: usize) -> usize {
    let mut y = d;
    let mut k = 1;
    while !i.contains(y) {
        y = group.mul(y, d);
        k += 1;
    }
    k
}

/// All ID pairs of G over Q, one representative per G-conjugacy class under
/// simultaneous conjugation, canonically ordered by (|D|, D, |I|, I).
pub fn enumerate_id_pairs(group: &Arc<FiniteGroup>) -> Result<Vec<IdPair>> {
    let subs = subgroups(group)?;
    let mut reps: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for d in &subs {
        for i in &subs {
            if i.order() > d.order() || !i.is_subset_of(d) {
                continue;
            }
            if !is_id_pair_over_q(i, d) {
                continue;
            }
            // Canonical representative under simultaneous conjugation.
            let mut best = (d.elements().to_vec(), i.elements().to_vec());
            for g in 0..group.order() {
                let dc = d.conjugate_by(g);
                let ic = i.conjugate_by(g);
                let cand = (dc.elements().to_vec(), ic.elements().to_vec());
                if cand < best {
                    best = cand;
                }
            }
            reps.insert(best);
        }
    }
    let mut out = Vec::with_capacity(reps.len());
    for (d_elems, i_elems) in reps {
        let d = Subgroup::generated(group, &minimal_gens(group, &d_elems));
        let i = Subgroup::generated(group, &minimal_gens(group, &i_elems));
        debug_assert_eq!(d.elements(), d_elems.as_slice());
        debug_assert_eq!(i.elements(), i_elems.as_slice());
        out.push(IdPair::new(i, d)?);
    }
    out.sort_by(|a, b| {
        let ka = (
            a.decomposition.order(),
            a.decomposition.elements().to_vec(),
            a.inertia.order(),
            a.inertia.elements().to_vec(),
        );
        let kb = (
            b.decomposition.order(),
            b.decomposition.elements().to_vec(),
            b.inertia.order(),
            b.inertia.elements().to_vec(),
        );
        ka.cmp(&kb)
    });
    Ok(out)
}

fn minimal_gens(group: &Arc<FiniteGroup>, elements: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for &g in elements {
        if g == 0 || span.binary_search(&g).is_ok() {
            continue;
        }
        gens.push(g);
        span = group
            .closure(&gens, group.order())
            .expect("bounded closure");
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// Number of equivalence classes of surjections from the tame presentation
/// onto D at q: pairs (d, tau) with tau^d = tau^q, <tau> normal in D, and
/// <d, tau> = D, counted up to simultaneous conjugation.
pub fn count_tame_epimorphism_classes(group: &Arc<FiniteGroup>, q: u64) -> Result<usize> {
    if !is_prime_u64(q) {
        return Err(Error::NotPrime(q));
    }
    if group.order() as u64 % q == 0 {
        return Err(Error::WildPrime {
            q,
            e: group.order() as u64,
        });
    }
    let n = group.order();
    let whole: Vec<usize> = (0..n).collect();
    let mut class_reps: BTreeSet<(usize, usize)> = BTreeSet::new();
    for d in 0..n {
        for tau in 0..n {
            let target = group.pow(tau, q);
            if group.conj(tau, d) != target {
                continue;
            }
            // <tau> normal in the whole group D.
            let tau_span = group.closure(&[tau], n)?;
            let normal = whole.iter().all(|&g| {
                tau_span
                    .iter()
                    .all(|&t| tau_span.binary_search(&group.conj(t, g)).is_ok())
            });
            if !normal {
                continue;
            }
            if group.closure(&[d, tau], n)?.len() != n {
                continue;
            }
            let rep = (0..n)
                .map(|g| (group.conj(d, g), group.conj(tau, g)))
                .min()
                .expect("nonempty orbit");
            class_reps.insert(rep);
        }
    }
    Ok(class_reps.len())
}
