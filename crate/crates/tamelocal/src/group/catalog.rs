//! Built-in group constructions addressable by name: C_n, D_n, Q8, Q16,
//! S3, S4, A4, and direct products joined with 'x'. Tests draw their group
//! corpus from here so no external data is needed.

use super::perm::{from_permutations, parse_cycles};
use super::FiniteGroup;
use crate::error::{Error, Result};

/// Cyclic group of order n.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let mut table = vec![0usize; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = (a + b) % n;
        }
    }
    let labels = (0..n)
        .map(|i| if i == 0 { "e".to_string() } else { format!("g^{i}") })
        .collect();
    FiniteGroup::from_table_unchecked(table, n, Some(labels), Some(format!("C{n}")))
}

/// Dihedral group of order 2n: rotations r^i and reflections r^i f.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let order = 2 * n;
    let idx = |rot: usize, flip: bool| -> usize { if flip { n + rot } else { rot } };
    let mut table = vec![0usize; order * order];
    for a in 0..order {
        for b in 0..order {
            let (ra, fa) = if a < n { (a, false) } else { (a - n, true) };
            let (rb, fb) = if b < n { (b, false) } else { (b - n, true) };
            // (r^ra f^fa)(r^rb f^fb): moving f across r inverts the rotation.
            let rot = if fa { (ra + n - rb % n) % n } else { (ra + rb) % n };
            let flip = fa ^ fb;
            table[a * order + b] = idx(rot, flip);
        }
    }
    let labels = (0..order)
        .map(|i| {
            if i == 0 {
                "e".to_string()
            } else if i < n {
                format!("r^{i}")
            } else if i == n {
                "f".to_string()
            } else {
                format!("r^{}f", i - n)
            }
        })
        .collect();
    FiniteGroup::from_table_unchecked(table, order, Some(labels), Some(format!("D{n}")))
}

/// Generalized quaternion group of order 4m (m >= 2): a of order 2m,
/// b^2 = a^m, b^-1 a b = a^-1. Q8 is m = 2, Q16 is m = 4.
pub fn generalized_quaternion(m: usize) -> FiniteGroup {
    assert!(m >= 2);
    let half = 2 * m;
    let order = 4 * m;
    let idx = |pow: usize, b: bool| -> usize { if b { half + pow } else { pow } };
    let mut table = vec![0usize; order * order];
    for x in 0..order {
        for y in 0..order {
            let (i, bi) = if x < half { (x, false) } else { (x - half, true) };
            let (j, bj) = if y < half { (y, false) } else { (y - half, true) };
            let entry = match (bi, bj) {
                (false, false) => idx((i + j) % half, false),
                (false, true) => idx((i + j) % half, true),
                (true, false) => idx((i + half - j % half) % half, true),
                (true, true) => idx((i + half - j % half + m) % half, false),
            };
            table[x * order + y] = entry;
        }
    }
    let labels = (0..order)
        .map(|x| {
            if x == 0 {
                "e".to_string()
            } else if x < half {
                format!("a^{x}")
            } else if x == half {
                "b".to_string()
            } else {
                format!("a^{}b", x - half)
            }
        })
        .collect();
    let name = format!("Q{order}");
    FiniteGroup::from_table_unchecked(table, order, Some(labels), Some(name))
}

/// Direct product with index (i, j) -> i * |B| + j.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup, name: String) -> FiniteGroup {
    let na = a.order();
    let nb = b.order();
    let order = na * nb;
    let mut table = vec![0usize; order * order];
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let x = i1 * nb + j1;
                    let y = i2 * nb + j2;
                    table[x * order + y] = a.mul(i1, i2) * nb + b.mul(j1, j2);
                }
            }
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    FiniteGroup::from_table_unchecked(table, order, Some(labels), Some(name))
}

fn symmetric3() -> FiniteGroup {
    named_perm_group("S3", &["(1 2)", "(1 2 3)"])
}

fn symmetric4() -> FiniteGroup {
    named_perm_group("S4", &["(1 2)", "(1 2 3 4)"])
}

fn alternating4() -> FiniteGroup {
    named_perm_group("A4", &["(1 2 3)", "(1 2)(3 4)"])
}

fn named_perm_group(name: &str, gens: &[&str]) -> FiniteGroup {
    let perms: Vec<_> = gens.iter().map(|s| parse_cycles(s).unwrap()).collect();
    let mut g = from_permutations(&perms, super::CLOSURE_CAP).unwrap();
    g.name = Some(name.to_string());
    g
}

fn atom(name: &str) -> Result<FiniteGroup> {
    if let Some(rest) = name.strip_prefix('C') {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 && n <= super::CLOSURE_CAP {
                return Ok(cyclic(n));
            }
        }
    }
    if let Some(rest) = name.strip_prefix('D') {
        if let Ok(n) = rest.parse::<usize>() {
            if n >= 1 && 2 * n <= super::CLOSURE_CAP {
                return Ok(dihedral(n));
            }
        }
    }
    match name {
        "Q8" => return Ok(generalized_quaternion(2)),
        "Q16" => return Ok(generalized_quaternion(4)),
        "Q32" => return Ok(generalized_quaternion(8)),
        "S3" => return Ok(symmetric3()),
        "S4" => return Ok(symmetric4()),
        "A4" => return Ok(alternating4()),
        _ => {}
    }
    Err(Error::UnknownGroupName(name.to_string()))
}

/// Look up a (possibly product) name such as "Q8" or "C4xC2".
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let name = name.trim();
    if name.is_empty() {
        return Err(Error::UnknownGroupName(name.to_string()));
    }
    let parts: Vec<&str> = name.split('x').map(str::trim).collect();
    let mut acc: Option<FiniteGroup> = None;
    for part in &parts {
        let g = atom(part)?;
        acc = Some(match acc {
            None => g,
            Some(prev) => {
                let name = format!("{}x{}", prev.name().unwrap_or("?"), part);
                direct_product(&prev, &g, name)
            }
        });
    }
    let mut g = acc.expect("at least one part");
    g.name = Some(name.to_string());
    Ok(g)
}

/// The fixed catalog used by the test corpus: every name here builds and
/// audits. Orders run up to 32.
pub fn catalog_names() -> Vec<&'static str> {
    let mut names: Vec<&'static str> = Vec::new();
    names.extend([
        "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C11", "C12", "C13",
        "C14", "C15", "C16", "C17", "C18", "C19", "C20", "C21", "C22", "C23", "C24",
    ]);
    names.extend([
        "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10", "D11", "D12",
    ]);
    names.extend(["Q8", "Q16", "S3", "S4", "A4"]);
    names.extend([
        "C2xC2", "C2xC4", "C2xC6", "C2xC8", "C2xC10", "C2xC12", "C3xC3", "C3xC6", "C4xC4",
        "C2xC2xC2", "C2xC2xC4", "C2xC2xC6", "C2xC2xC2xC2", "C2xQ8", "C2xD4", "C3xQ8",
        "C3xD4", "C3xS3", "C2xA4", "C2xC2xC2xC2xC2",
    ]);
    names
}

/// Catalog groups with order at most `max_order`.
pub fn catalog_up_to(max_order: usize) -> Vec<FiniteGroup> {
    catalog_names()
        .into_iter()
        .map(|n| by_name(n).expect("catalog names are valid"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn whole_catalog_audits() {
        for name in catalog_names() {
            let g = by_name(name).unwrap();
            g.audit().unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn expected_orders() {
        for (name, order) in [
            ("C1", 1),
            ("C24", 24),
            ("D4", 8),
            ("D5", 10),
            ("Q8", 8),
            ("Q16", 16),
            ("S3", 6),
            ("S4", 24),
            ("A4", 12),
            ("C4xC2", 8),
            ("C2xC2xC2xC2xC2", 32),
        ] {
            assert_eq!(by_name(name).unwrap().order(), order, "{name}");
        }
    }

    #[test]
    fn s3_matches_d3() {
        // Same order and both nonabelian; enough of an isomorphism check
        // for catalog sanity.
        let s3 = by_name("S3").unwrap();
        let d3 = by_name("D3").unwrap();
        assert_eq!(s3.order(), d3.order());
        assert!(!s3.is_abelian());
        assert!(!d3.is_abelian());
    }

    #[test]
    fn quaternion_unique_involution() {
        for (name, m) in [("Q8", 2), ("Q16", 4)] {
            let g = by_name(name).unwrap();
            let inv = (0..g.order())
                .filter(|&x| x != 0 && g.order_of(x) == 2)
                .count();
            assert_eq!(inv, 1, "{name} (m = {m})");
        }
    }

    #[test]
    fn unknown_names_rejected() {
        assert!(by_name("E8").is_err());
        assert!(by_name("C0").is_err());
        assert!(by_name("").is_err());
        assert!(by_name("C4x").is_err());
    }
}
