//! Local-dimension predicates for finite groups: the noncyclic-abelian
//! lower-bound criterion (computed two independent ways and held equal) and
//! the candidate classification for local dimension one: cyclic of order 2
//! or odd prime power order, or a faithful semidirect product C x| D of two
//! such cyclic groups.

use crate::arith::is_prime_u64;
use crate::error::{Error, Result};
use crate::group::{
    is_generalized_quaternion, is_normal_in, subgroups, sylow_subgroup, FiniteGroup, Subgroup,
};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SylowKind {
    Cyclic,
    GeneralizedQuaternion,
    Other,
}

impl SylowKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SylowKind::Cyclic => "cyclic",
            SylowKind::GeneralizedQuaternion => "generalized_quaternion",
            SylowKind::Other => "other",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LowerBound {
    AtLeastTwo,
    Unresolved,
}

impl LowerBound {
    pub fn as_str(self) -> &'static str {
        match self {
            LowerBound::AtLeastTwo => ">=2",
            LowerBound::Unresolved => "unresolved",
        }
    }
}

#[derive(Clone, Debug)]
pub struct LocalDimensionReport {
    pub group_name: String,
    pub has_noncyclic_abelian: bool,
    pub sylow_profile: BTreeMap<u64, SylowKind>,
    pub lower_bound: LowerBound,
    pub matches_locdim1_classification: bool,
}

/// One entry per prime dividing the order.
pub fn sylow_profile(group: &Arc<FiniteGroup>) -> Result<BTreeMap<u64, SylowKind>> {
    let mut profile = BTreeMap::new();
    let n = group.order() as u64;
    for p in 2..=n {
        if !is_prime_u64(p) || n % p != 0 {
            continue;
        }
        let syl = sylow_subgroup(group, p)?;
        let kind = if syl.is_cyclic() {
            SylowKind::Cyclic
        } else if is_generalized_quaternion(&syl) {
            SylowKind::GeneralizedQuaternion
        } else {
            SylowKind::Other
        };
        profile.insert(p, kind);
    }
    Ok(profile)
}

/// Does G contain an abelian noncyclic subgroup? Decided by direct
/// enumeration and, independently, by the Sylow criterion (no noncyclic
/// abelian subgroup iff every Sylow subgroup is cyclic or generalized
/// quaternion); the two must agree.
pub fn has_noncyclic_abelian_subgroup(group: &Arc<FiniteGroup>) -> Result<bool> {
    let direct = subgroups(group)?
        .iter()
        .any(|h| h.is_abelian() && !h.is_cyclic());
    let by_sylow = sylow_profile(group)?
        .values()
        .any(|k| *k == SylowKind::Other);
    if direct != by_sylow {
        return Err(Error::Invariant(
            "subgroup enumeration and Sylow criterion disagree".into(),
        ));
    }
    Ok(direct)
}

/// Order 2 or an odd prime power (at least 3).
fn admissible_factor_order(n: usize) -> bool {
    if n == 2 {
        return true;
    }
    if n < 3 || n % 2 == 0 {
        return false;
    }
    let mut m = n as u64;
    let mut p = 3u64;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            return m == 1;
        }
        p += 2;
    }
    // n is an odd prime.
    true
}

/// The candidate shape for local dimension one: either cyclic of
/// admissible order, or G = C x| D with C normal cyclic, D cyclic, both of
/// admissible order, intersecting trivially, and with D acting faithfully
/// on C by conjugation. The search over subgroup pairs is exhaustive.
pub fn matches_locdim1_classification(group: &Arc<FiniteGroup>) -> Result<bool> {
    let whole = Subgroup::whole(group);
    if whole.is_cyclic() && admissible_factor_order(group.order()) {
        return Ok(true);
    }
    let subs = subgroups(group)?;
    for c in &subs {
        if !admissible_factor_order(c.order()) || !c.is_cyclic() {
            continue;
        }
        if !is_normal_in(c, &whole)? {
            continue;
        }
        for d in &subs {
            if c.order() * d.order() != group.order() {
                continue;
            }
            if !admissible_factor_order(d.order()) || !d.is_cyclic() {
                continue;
            }
            // Trivial intersection makes CD all of G (C is normal).
            if d.elements().iter().filter(|&&x| c.contains(x)).count() != 1 {
                continue;
            }
            // Faithful action: only the identity of D centralizes C.
            let faithful = d.elements().iter().all(|&x| {
                x == 0
                    || c.elements()
                        .iter()
                        .any(|&h| group.mul(x, h) != group.mul(h, x))
            });
            if faithful {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Assemble the full report. The lower bound is ">=2" exactly when a
/// noncyclic abelian subgroup exists; the tool never claims local
/// dimension 1, so everything else stays unresolved.
pub fn classify(group: &Arc<FiniteGroup>) -> Result<LocalDimensionReport> {
    let has = has_noncyclic_abelian_subgroup(group)?;
    let profile = sylow_profile(group)?;
    let matches = matches_locdim1_classification(group)?;
    Ok(LocalDimensionReport {
        group_name: group
            .name()
            .map(str::to_string)
            .unwrap_or_else(|| format!("group of order {}", group.order())),
        has_noncyclic_abelian: has,
        sylow_profile: profile,
        lower_bound: if has {
            LowerBound::AtLeastTwo
        } else {
            LowerBound::Unresolved
        },
        matches_locdim1_classification: matches,
    })
}
