//! A catalogue of small groups used by fixtures, tests and the CLI.

use std::sync::Arc;

use crate::group::{FiniteGroup, GroupRef};

#[derive(Clone, Debug)]
pub struct NamedGroup {
    pub name: String,
    pub group: GroupRef,
}

fn named(name: &str, group: FiniteGroup) -> NamedGroup {
    NamedGroup {
        name: name.to_string(),
        group: Arc::new(group),
    }
}

pub fn cyclic(n: usize) -> GroupRef {
    Arc::new(FiniteGroup::cyclic(n))
}

pub fn symmetric(n: usize) -> GroupRef {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..n).map(|i| (i + 1) % n).collect());
    }
    Arc::new(FiniteGroup::from_permutations(n.max(1), &gens).expect("symmetric group"))
}

/// Dihedral group of order `2n` acting on an `n`-gon.
pub fn dihedral(n: usize) -> GroupRef {
    let rot: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
    let refl: Vec<usize> = (0..n).map(|i| (n - i) % n).collect();
    Arc::new(FiniteGroup::from_permutations(n, &[rot, refl]).expect("dihedral group"))
}

pub fn alternating4() -> GroupRef {
    Arc::new(
        FiniteGroup::from_permutations(4, &[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
            .expect("A4"),
    )
}

/// Quaternion group: index `2u + s` is `(-1)^s · u` with units `1, i, j, k`.
pub fn quaternion() -> GroupRef {
    // unit products: (sign, unit)
    const PROD: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    let mut rows = vec![vec![0; 8]; 8];
    for a in 0..8 {
        for b in 0..8 {
            let (s, u) = PROD[a / 2][b / 2];
            let sign = (a % 2 + b % 2 + s) % 2;
            rows[a][b] = 2 * u + sign;
        }
    }
    let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    Arc::new(
        FiniteGroup::from_table(&rows)
            .and_then(|g| g.with_labels(labels))
            .expect("Q8"),
    )
}

/// Dicyclic group of order 12, `Z/3 ⋊ Z/4` with the generator of `Z/4`
/// inverting `Z/3`.
pub fn dicyclic12() -> GroupRef {
    let idx = |a: usize, b: usize| a * 4 + b;
    let mut rows = vec![vec![0; 12]; 12];
    for a in 0..3 {
        for b in 0..4 {
            for c in 0..3 {
                for d in 0..4 {
                    let twisted = if b % 2 == 0 { c } else { (3 - c) % 3 };
                    rows[idx(a, b)][idx(c, d)] = idx((a + twisted) % 3, (b + d) % 4);
                }
            }
        }
    }
    Arc::new(FiniteGroup::from_table(&rows).expect("Dic3"))
}

/// One representative per isomorphism type for the orders listed, up to `max_order`.
pub fn small_groups(max_order: usize) -> Vec<NamedGroup> {
    let mut out = vec![named("1", FiniteGroup::trivial())];
    let mut push = |order: usize, name: &str, g: &dyn Fn() -> GroupRef| {
        if order <= max_order {
            out.push(NamedGroup {
                name: name.to_string(),
                group: g(),
            });
        }
    };
    push(2, "Z2", &|| cyclic(2));
    push(3, "Z3", &|| cyclic(3));
    push(4, "Z4", &|| cyclic(4));
    push(4, "Z2xZ2", &|| Arc::new(FiniteGroup::abelian(&[2, 2])));
    push(5, "Z5", &|| cyclic(5));
    push(6, "Z6", &|| cyclic(6));
    push(6, "S3", &|| symmetric(3));
    push(7, "Z7", &|| cyclic(7));
    push(8, "Z8", &|| cyclic(8));
    push(8, "Z2xZ4", &|| Arc::new(FiniteGroup::abelian(&[2, 4])));
    push(8, "Z2xZ2xZ2", &|| Arc::new(FiniteGroup::abelian(&[2, 2, 2])));
    push(8, "D4", &|| dihedral(4));
    push(8, "Q8", &quaternion);
    push(9, "Z9", &|| cyclic(9));
    push(9, "Z3xZ3", &|| Arc::new(FiniteGroup::abelian(&[3, 3])));
    push(10, "Z10", &|| cyclic(10));
    push(10, "D5", &|| dihedral(5));
    push(11, "Z11", &|| cyclic(11));
    push(12, "Z12", &|| cyclic(12));
    push(12, "Z2xZ6", &|| Arc::new(FiniteGroup::abelian(&[2, 6])));
    push(12, "D6", &|| dihedral(6));
    push(12, "A4", &alternating4);
    push(12, "Dic3", &dicyclic12);
    push(16, "Z4xZ4", &|| Arc::new(FiniteGroup::abelian(&[4, 4])));
    push(16, "Z2xD4", &|| {
        Arc::new(FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &dihedral(4)))
    });
    push(24, "S4", &|| symmetric(4));
    out
}

/// All abelian groups of order at most `max_order` (one per isomorphism type),
/// given by invariant factors.
pub fn abelian_types(max_order: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for n in 1..=max_order {
        let mut parts = Vec::new();
        invariant_factor_lists(n, &mut Vec::new(), &mut parts);
        out.extend(parts);
    }
    out
}

fn invariant_factor_lists(rest: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if rest == 1 {
        out.push(current.clone());
        return;
    }
    // Next factor must be a multiple of the previous one and divide what remains.
    for d in 2..=rest {
        if rest % d != 0 {
            continue;
        }
        if let Some(&last) = current.last() {
            if d % last != 0 {
                continue;
            }
        }
        // Remaining factors must all be multiples of d.
        let remaining = rest / d;
        if remaining != 1 && remaining % d != 0 {
            continue;
        }
        current.push(d);
        invariant_factor_lists(remaining, current, out);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).order(), 6);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(dihedral(4).order(), 8);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(alternating4().order(), 12);
        assert_eq!(dicyclic12().order(), 12);
        assert!(!dicyclic12().is_abelian());
        // Q8 has a unique involution.
        let q8 = quaternion();
        assert_eq!(q8.elements().filter(|&x| q8.element_order(x) == 2).count(), 1);
    }

    #[test]
    fn abelian_type_counts() {
        let types = abelian_types(16);
        let count = |n: usize| types.iter().filter(|t| t.iter().product::<usize>() == n).count();
        assert_eq!(count(1), 1);
        assert_eq!(count(4), 2);
        assert_eq!(count(8), 3);
        assert_eq!(count(12), 2);
        assert_eq!(count(16), 5);
        assert!(types.contains(&vec![2, 6]));
    }
}
