use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use quadmod::catalog;
use quadmod::{
    abelian_invariants, displacement_subgroup, enumerate_homs, normal_closure, quotient, tensor_square, FiniteGroup,
    GroupAction, GroupRef, HomBound,
};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn catalogue() -> Vec<GroupRef> {
    catalog::small_groups(24).into_iter().map(|g| g.group).collect()
}

fn assert_group_laws(g: &FiniteGroup) {
    let e = g.identity();
    for a in g.elements() {
        assert_eq!(g.mul(a, e), a);
        assert_eq!(g.mul(e, a), a);
        assert_eq!(g.mul(a, g.inv(a)), e);
        for b in g.elements() {
            for c in g.elements() {
                assert_eq!(g.mul(g.mul(a, b), c), g.mul(a, g.mul(b, c)));
            }
        }
    }
}

/// Closure of permutations under composition, computed without the library.
fn permutation_closure(degree: usize, gens: &[Vec<usize>]) -> BTreeSet<Vec<usize>> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([(0..degree).collect()]);
    loop {
        let mut next = seen.clone();
        for p in &seen {
            for g in gens {
                next.insert(p.iter().map(|&i| g[i]).collect());
            }
        }
        if next.len() == seen.len() {
            return seen;
        }
        seen = next;
    }
}

fn permutation(degree: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((0..degree).collect::<Vec<_>>()).prop_shuffle()
}

#[test]
fn catalogue_groups_satisfy_group_laws() {
    for g in catalogue() {
        assert_group_laws(&g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn permutation_groups_match_direct_closure(
        (degree, gens) in (1usize..=5).prop_flat_map(|d| (Just(d), proptest::collection::vec(permutation(d), 1..=2))),
    ) {
        let g = FiniteGroup::from_permutations(degree, &gens).unwrap();
        prop_assert_eq!(g.order(), permutation_closure(degree, &gens).len());
        assert_group_laws(&g);
    }

    #[test]
    fn quotient_kernel_is_the_normal_closure(idx in 0usize..27, seeds in proptest::collection::vec(0usize..24, 0..3)) {
        let groups = catalogue();
        let g = &groups[idx % groups.len()];
        let seeds: Vec<usize> = seeds.into_iter().map(|s| s % g.order()).collect();
        let n = normal_closure(g, &seeds);
        // oracle: close the conjugates of the seeds under multiplication
        let mut members: BTreeSet<usize> = BTreeSet::from([g.identity()]);
        for &s in &seeds {
            for x in g.elements() {
                members.insert(g.conj(s, x));
            }
        }
        loop {
            let mut next = members.clone();
            for &a in &members {
                for &b in &members {
                    next.insert(g.mul(a, b));
                }
            }
            if next.len() == members.len() {
                break;
            }
            members = next;
        }
        prop_assert_eq!(n.members().iter().copied().collect::<BTreeSet<_>>(), members.clone());
        let q = quotient(g, &n).unwrap();
        let kernel: BTreeSet<usize> = q.projection.kernel().members().iter().copied().collect();
        prop_assert_eq!(kernel, members);
        prop_assert_eq!(q.group.order() * n.order(), g.order());
    }

    #[test]
    fn cyclic_hom_count_is_gcd(m in 1usize..=24, n in 1usize..=24) {
        let homs = enumerate_homs(&catalog::cyclic(m), &catalog::cyclic(n), HomBound::default()).unwrap();
        prop_assert_eq!(homs.len(), gcd(m, n));
    }

    #[test]
    fn tensor_square_order_and_bilinearity(idx in 0usize..64) {
        let types = catalog::abelian_types(12);
        let factors = &types[idx % types.len()];
        let g: GroupRef = Arc::new(FiniteGroup::abelian(factors));
        let d = abelian_invariants(&g).unwrap();
        let t = tensor_square(&d);
        let expected: usize = d
            .invariant_factors()
            .iter()
            .flat_map(|&a| d.invariant_factors().iter().map(move |&b| gcd(a, b)))
            .product();
        prop_assert_eq!(t.product().order(), expected);
        let p = t.product();
        for x in g.elements() {
            for y in g.elements() {
                for z in g.elements() {
                    prop_assert_eq!(t.tensor(g.mul(x, z), y), p.mul(t.tensor(x, y), t.tensor(z, y)));
                    prop_assert_eq!(t.tensor(x, g.mul(y, z)), p.mul(t.tensor(x, y), t.tensor(x, z)));
                }
            }
        }
    }

    #[test]
    fn displacement_of_trivial_data_is_trivial(a in 0usize..27, b in 0usize..27) {
        let groups = catalogue();
        let (q, m) = (&groups[a % groups.len()], &groups[b % groups.len()]);
        let trivial = GroupAction::trivial(q, m);
        prop_assert!(displacement_subgroup(&trivial, &q.whole()).unwrap().subgroup.is_trivial());
        let conj = GroupAction::conjugation(m);
        prop_assert!(displacement_subgroup(&conj, &m.trivial_subgroup()).unwrap().subgroup.is_trivial());
    }
}
