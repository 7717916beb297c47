//! Exact finite group arithmetic on explicit multiplication tables:
//! construction, subgroup enumeration, and the structural predicates the
//! Galois-theoretic modules consume.

pub mod catalog;
pub mod parse;
pub mod perm;

use crate::error::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::sync::Arc;

/// Default cap for exhaustive subgroup enumeration.
pub const SUBGROUP_ENUM_CAP: usize = 64;

/// Default cap for generator closures.
pub const CLOSURE_CAP: usize = 100_000;

/// A finite group as a full Cayley table. Element 0 is the identity.
/// Immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    name: Option<String>,
}

impl FiniteGroup {
    /// Build from a row-major table, auditing the group axioms in full:
    /// identity at index 0, two-sided inverses, associativity.
    pub fn from_table(
        rows: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
        name: Option<String>,
    ) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(Error::InvalidTable("table is not square".into()));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::InvalidTable(format!(
                        "entry {v} out of range for order {n}"
                    )));
                }
                table.push(v);
            }
        }
        if let Some(ref l) = labels {
            if l.len() != n {
                return Err(Error::InvalidTable("label count mismatch".into()));
            }
        }
        let mut g = FiniteGroup {
            order: n,
            table,
            inverse: vec![0; n],
            labels,
            name,
        };
        g.audit_and_fill_inverses()?;
        Ok(g)
    }

    /// Construction that trusts the table shape (used by builders whose
    /// tables are associative by construction); still derives inverses and
    /// checks the identity row.
    pub(crate) fn from_table_unchecked(
        table: Vec<usize>,
        order: usize,
        labels: Option<Vec<String>>,
        name: Option<String>,
    ) -> FiniteGroup {
        let mut g = FiniteGroup {
            order,
            table,
            inverse: vec![0; order],
            labels,
            name,
        };
        g.fill_inverses().expect("builder produced a non-group");
        g
    }

    fn fill_inverses(&mut self) -> Result<()> {
        for i in 0..self.order {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(Error::InvalidTable(
                    "index 0 is not a two-sided identity".into(),
                ));
            }
        }
        for i in 0..self.order {
            let mut found = None;
            for j in 0..self.order {
                if self.mul(i, j) == 0 && self.mul(j, i) == 0 {
                    found = Some(j);
                    break;
                }
            }
            match found {
                Some(j) => self.inverse[i] = j,
                None => {
                    return Err(Error::InvalidTable(format!(
                        "element {i} has no two-sided inverse"
                    )))
                }
            }
        }
        Ok(())
    }

    fn audit_and_fill_inverses(&mut self) -> Result<()> {
        self.fill_inverses()?;
        self.audit()
    }

    /// Full associativity/identity/inverse audit by triple loop.
    pub fn audit(&self) -> Result<()> {
        let n = self.order;
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(Error::InvalidTable("identity axiom fails".into()));
            }
            let j = self.inverse[i];
            if self.mul(i, j) != 0 || self.mul(j, i) != 0 || self.inverse[j] != i {
                return Err(Error::InvalidTable("inverse axiom fails".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// d^-1 * a * d.
    pub fn conj(&self, a: usize, d: usize) -> usize {
        self.mul(self.mul(self.inv(d), a), d)
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let o = self.order_of(g) as u64;
        let mut k = (k % o) as usize;
        let mut acc = 0;
        let mut base = g;
        // k < order <= 1e5; plain square-and-multiply.
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn order_of(&self, g: usize) -> usize {
        let mut x = g;
        let mut o = 1;
        while x != 0 {
            x = self.mul(x, g);
            o += 1;
        }
        o
    }

    pub fn label(&self, g: usize) -> String {
        match &self.labels {
            Some(l) => l[g].clone(),
            None => g.to_string(),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of a generating set under multiplication, breadth first from
    /// the identity, with a size cap.
    pub fn closure(&self, gens: &[usize], cap: usize) -> Result<Vec<usize>> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut out = vec![0usize];
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let x = self.mul(e, g);
                if !seen[x] {
                    if out.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen[x] = true;
                    out.push(x);
                    queue.push_back(x);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }
}

/// A subgroup is a sorted element set plus a generating set, tied to its
/// parent group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    group: Arc<FiniteGroup>,
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(group: &Arc<FiniteGroup>, gens: &[usize]) -> Subgroup {
        let elements = group
            .closure(gens, group.order())
            .expect("closure within the parent group cannot exceed its order");
        Subgroup {
            group: Arc::clone(group),
            elements,
            generators: gens.to_vec(),
        }
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> Subgroup {
        Subgroup {
            group: Arc::clone(group),
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn whole(group: &Arc<FiniteGroup>) -> Subgroup {
        let gens = minimal_generators(group, &(0..group.order()).collect::<Vec<_>>());
        Subgroup {
            group: Arc::clone(group),
            elements: (0..group.order()).collect(),
            generators: gens,
        }
    }

    fn from_elements(group: &Arc<FiniteGroup>, elements: Vec<usize>) -> Subgroup {
        let generators = minimal_generators(group, &elements);
        Subgroup {
            group: Arc::clone(group),
            elements,
            generators,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&g| other.contains(g))
    }

    pub fn is_cyclic(&self) -> bool {
        let n = self.order();
        self.elements
            .iter()
            .any(|&g| self.group.order_of(g) == n)
    }

    /// Smallest generator when cyclic.
    pub fn cyclic_generator(&self) -> Option<usize> {
        let n = self.order();
        self.elements
            .iter()
            .copied()
            .find(|&g| self.group.order_of(g) == n)
    }

    pub fn is_abelian(&self) -> bool {
        for (i, &a) in self.elements.iter().enumerate() {
            for &b in &self.elements[i + 1..] {
                if self.group.mul(a, b) != self.group.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    /// The conjugate subgroup g^-1 H g.
    pub fn conjugate_by(&self, d: usize) -> Subgroup {
        let mut elements: Vec<usize> =
            self.elements.iter().map(|&h| self.group.conj(h, d)).collect();
        elements.sort_unstable();
        let generators = self
            .generators
            .iter()
            .map(|&h| self.group.conj(h, d))
            .collect();
        Subgroup {
            group: Arc::clone(&self.group),
            elements,
            generators,
        }
    }
}

/// Greedy minimal generating sequence for a known subgroup element set.
fn minimal_generators(group: &Arc<FiniteGroup>, elements: &[usize]) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span = vec![0usize];
    for &g in elements {
        if g == 0 || span.binary_search(&g).is_ok() {
            continue;
        }
        gens.push(g);
        span = group
            .closure(&gens, group.order())
            .expect("closure bounded by parent order");
        if span.len() == elements.len() {
            break;
        }
    }
    gens
}

/// All subgroups, each exactly once, sorted by size then lexicographically
/// by element set.
pub fn subgroups(group: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    subgroups_with_cap(group, SUBGROUP_ENUM_CAP)
}

pub fn subgroups_with_cap(group: &Arc<FiniteGroup>, cap: usize) -> Result<Vec<Subgroup>> {
    let n = group.order();
    if n > cap {
        return Err(Error::EnumerationCapExceeded { order: n, cap });
    }
    let mut found: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    found.insert(vec![0], Vec::new());
    let mut queue: VecDeque<(Vec<usize>, Vec<usize>)> =
        VecDeque::from([(vec![0usize], Vec::new())]);
    while let Some((elems, gens)) = queue.pop_front() {
        for x in 1..n {
            if elems.binary_search(&x).is_ok() {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.push(x);
            let closure = group.closure(&new_gens, n)?;
            if !found.contains_key(&closure) {
                found.insert(closure.clone(), new_gens.clone());
                queue.push_back((closure, new_gens));
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(elements, generators)| Subgroup {
            group: Arc::clone(group),
            elements,
            generators,
        })
        .collect();
    out.sort_by(|a, b| {
        (a.order(), &a.elements).cmp(&(b.order(), &b.elements))
    });
    Ok(out)
}

/// One representative per conjugacy class of subgroups: the class member
/// with the lexicographically smallest element set.
pub fn conjugacy_class_representatives(group: &Arc<FiniteGroup>) -> Result<Vec<Subgroup>> {
    let all = subgroups(group)?;
    let mut reps: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in &all {
        let mut best = h.elements.clone();
        for d in 0..group.order() {
            let c = h.conjugate_by(d);
            if c.elements < best {
                best = c.elements;
            }
        }
        reps.insert(best);
    }
    let mut out: Vec<Subgroup> = reps
        .into_iter()
        .map(|e| Subgroup::from_elements(group, e))
        .collect();
    out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
    Ok(out)
}

/// C_G(H): everything commuting with all of H.
pub fn centralizer(group: &Arc<FiniteGroup>, h: &Subgroup) -> Subgroup {
    let elements: Vec<usize> = (0..group.order())
        .filter(|&g| h.elements.iter().all(|&x| group.mul(g, x) == group.mul(x, g)))
        .collect();
    Subgroup::from_elements(group, elements)
}

/// N_G(H): everything conjugating H onto itself.
pub fn normalizer(group: &Arc<FiniteGroup>, h: &Subgroup) -> Subgroup {
    let elements: Vec<usize> = (0..group.order())
        .filter(|&g| {
            h.elements
                .iter()
                .all(|&x| h.contains(group.conj(x, g)))
        })
        .collect();
    Subgroup::from_elements(group, elements)
}

/// Is H normal in D? H must be contained in D.
pub fn is_normal_in(h: &Subgroup, d: &Subgroup) -> Result<bool> {
    if !h.is_subset_of(d) {
        return Err(Error::Precondition(
            "is_normal_in requires H to be a subset of D".into(),
        ));
    }
    let g = h.group();
    Ok(d.elements
        .iter()
        .all(|&x| h.elements.iter().all(|&e| h.contains(g.conj(e, x)))))
}

/// Is D/I cyclic? I must be normal in D; decided on coset representatives.
pub fn quotient_is_cyclic(d: &Subgroup, i: &Subgroup) -> Result<bool> {
    if !is_normal_in(i, d)? {
        return Err(Error::Precondition("I is not normal in D".into()));
    }
    let g = d.group();
    let index = d.order() / i.order();
    if index == 1 {
        return Ok(true);
    }
    // Canonical coset id: the least element of the coset.
    let coset_id = |x: usize| -> usize {
        i.elements.iter().map(|&e| g.mul(x, e)).min().unwrap()
    };
    for &x in &d.elements {
        // Order of xI in D/I.
        let mut y = x;
        let mut k = 1;
        while coset_id(y) != coset_id(0) {
            y = g.mul(y, x);
            k += 1;
        }
        if k == index {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A Sylow p-subgroup, grown from the trivial subgroup by normalizer steps.
pub fn sylow_subgroup(group: &Arc<FiniteGroup>, p: u64) -> Result<Subgroup> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    let n = group.order() as u64;
    let mut p_part = 1u64;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        p_part *= p;
    }
    let mut h = Subgroup::trivial(group);
    while (h.order() as u64) < p_part {
        let norm = normalizer(group, &h);
        let mut grown = false;
        for &g in &norm.elements {
            if h.contains(g) {
                continue;
            }
            // p-part power of g is a p-element of the normalizer.
            let o = group.order_of(g) as u64;
            let mut odd = o;
            while odd % p == 0 {
                odd /= p;
            }
            let cand = group.pow(g, odd);
            if cand == 0 || h.contains(cand) {
                continue;
            }
            let mut gens = h.generators.clone();
            gens.push(cand);
            let grown_elems = group.closure(&gens, group.order())?;
            let grown_order = grown_elems.len() as u64;
            if grown_order > h.order() as u64 && is_p_power(grown_order, p) {
                h = Subgroup {
                    group: Arc::clone(group),
                    elements: grown_elems,
                    generators: gens,
                };
                grown = true;
                break;
            }
        }
        assert!(grown, "Sylow growth stalled; table is not a group");
    }
    Ok(h)
}

fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// The unique-involution characterization: |H| = 2^n with n >= 3, H not
/// cyclic, and exactly one element of order 2.
pub fn is_generalized_quaternion(h: &Subgroup) -> bool {
    let n = h.order();
    if n < 8 || n & (n - 1) != 0 {
        return false;
    }
    if h.is_cyclic() {
        return false;
    }
    let involutions = h
        .elements
        .iter()
        .filter(|&&g| g != 0 && h.group().order_of(g) == 2)
        .count();
    involutions == 1
}
