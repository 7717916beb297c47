//! Permutations in cycle notation and group construction by closure.

use super::FiniteGroup;
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::collections::VecDeque;

/// Maximum number of points for permutation input.
pub const MAX_POINTS: usize = 12;

/// A permutation as an image table on {0..n-1}.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation {
            images: (0..n).collect(),
        }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Pad to act on a larger point set.
    fn extended(&self, n: usize) -> Permutation {
        let mut images = self.images.clone();
        for k in images.len()..n {
            images.push(k);
        }
        Permutation { images }
    }

    /// self followed by other.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }

    /// Disjoint cycle notation with 1-based points; "()" for the identity.
    pub fn cycle_string(&self) -> String {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = String::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x + 1);
                x = self.images[x];
            }
            out.push('(');
            out.push_str(
                &cycle
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }
}

/// Parse one generator in cycle notation, e.g. "(1 2)(3 4)". Commas are
/// accepted as separators inside a cycle. "()" is the identity.
pub fn parse_cycles(text: &str) -> Result<Permutation> {
    let text = text.trim();
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((pos, c)) = chars.next() {
        match c {
            '(' => {
                let mut cycle = Vec::new();
                let mut num = String::new();
                loop {
                    match chars.next() {
                        Some((_, d)) if d.is_ascii_digit() => num.push(d),
                        Some((p2, d)) if d == ' ' || d == ',' || d == ')' => {
                            if !num.is_empty() {
                                let v: usize = num.parse().map_err(|_| {
                                    Error::MalformedPermutation(format!(
                                        "bad point near byte {p2}"
                                    ))
                                })?;
                                if v == 0 || v > MAX_POINTS {
                                    return Err(Error::MalformedPermutation(format!(
                                        "point {v} outside 1..{MAX_POINTS}"
                                    )));
                                }
                                cycle.push(v - 1);
                                num.clear();
                            }
                            if d == ')' {
                                break;
                            }
                        }
                        Some((p2, d)) => {
                            return Err(Error::MalformedPermutation(format!(
                                "unexpected '{d}' at byte {p2}"
                            )))
                        }
                        None => {
                            return Err(Error::MalformedPermutation(
                                "unclosed cycle".into(),
                            ))
                        }
                    }
                }
                cycles.push(cycle);
            }
            ' ' => {}
            _ => {
                return Err(Error::MalformedPermutation(format!(
                    "unexpected '{c}' at byte {pos}"
                )))
            }
        }
    }
    let n = cycles
        .iter()
        .flat_map(|c| c.iter())
        .map(|&v| v + 1)
        .max()
        .unwrap_or(1);
    let mut images: Vec<usize> = (0..n).collect();
    let mut touched = vec![false; n];
    for cycle in &cycles {
        for &v in cycle {
            if touched[v] {
                return Err(Error::MalformedPermutation(format!(
                    "point {} appears twice",
                    v + 1
                )));
            }
            touched[v] = true;
        }
        for k in 0..cycle.len() {
            images[cycle[k]] = cycle[(k + 1) % cycle.len()];
        }
    }
    Ok(Permutation { images })
}

/// Closure of the generators under composition, breadth first from the
/// identity with generators applied in input order. Element 0 is the
/// identity; labels are cycle strings.
pub fn from_permutations(gens: &[Permutation], cap: usize) -> Result<FiniteGroup> {
    let n = gens.iter().map(|g| g.degree()).max().unwrap_or(1);
    if n > MAX_POINTS {
        return Err(Error::MalformedPermutation(format!(
            "degree {n} exceeds {MAX_POINTS}"
        )));
    }
    let gens: Vec<Permutation> = gens.iter().map(|g| g.extended(n)).collect();
    let identity = Permutation::identity(n);
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    let mut elems: Vec<Permutation> = vec![identity.clone()];
    index.insert(identity, 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        for g in &gens {
            let prod = elems[i].compose(g);
            if !index.contains_key(&prod) {
                if elems.len() >= cap {
                    return Err(Error::GroupTooLarge { cap });
                }
                let id = elems.len();
                index.insert(prod.clone(), id);
                elems.push(prod);
                queue.push_back(id);
            }
        }
    }
    let order = elems.len();
    let mut table = vec![0usize; order * order];
    for a in 0..order {
        for b in 0..order {
            let prod = elems[a].compose(&elems[b]);
            table[a * order + b] = *index.get(&prod).expect("closure is closed");
        }
    }
    let labels: Vec<String> = elems.iter().map(|p| p.cycle_string()).collect();
    Ok(FiniteGroup::from_table_unchecked(
        table,
        order,
        Some(labels),
        None,
    ))
}
