use std::sync::OnceLock;

use proptest::prelude::*;
use quadmod::catalog;
use quadmod::coset::CosetLimits;
use quadmod::corpus;
use quadmod::induced::{
    epi_oracle_check, induce_nil2_epi, induce_nil2_mono, induce_quad_epi, induce_quad_epi_with, induced_universal_check,
    TopKernel,
};
use quadmod::pullback::{pullback_nil2, pullback_quad, universal_factorization, Uniqueness};
use quadmod::quadratic::{enumerate_quadratic_morphisms, find_isomorphism, from_nil2};
use quadmod::{
    classify, enumerate_homs, normal_subgroups, quotient, verify_quadratic, Error, GroupAction, GroupHom, GroupRef,
    HomBound, Nil2Module, PreCrossedModule, QuadraticModule, QuadraticMorphism,
};

fn nil2() -> &'static [(String, Nil2Module)] {
    static CORPUS: OnceLock<Vec<(String, Nil2Module)>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus::nil2_fixtures(8, 2).unwrap())
}

fn quadratic() -> &'static [(String, QuadraticModule)] {
    static CORPUS: OnceLock<Vec<(String, QuadraticModule)>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus::quadratic_fixtures(8, 2).unwrap())
}

fn small_groups() -> Vec<GroupRef> {
    catalog::small_groups(8).into_iter().map(|g| g.group).collect()
}

/// Projections onto every quotient of `g`.
fn epimorphisms(g: &GroupRef) -> Vec<GroupHom> {
    normal_subgroups(g)
        .iter()
        .map(|n| quotient(g, n).unwrap().projection)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pullback_nil2_matches_fiber_count(idx in 0usize..100_000, b in 0usize..16, h in 0usize..1000) {
        let (name, n) = &nil2()[idx % nil2().len()];
        let groups = small_groups();
        let bgroup = &groups[b % groups.len()];
        let homs = enumerate_homs(bgroup, n.target(), HomBound::default()).unwrap();
        let sigma = &homs[h % homs.len()];
        let pb = pullback_nil2(n, sigma).unwrap();
        let direct = bgroup
            .elements()
            .map(|p| n.source().elements().filter(|&m| n.boundary().apply(m) == sigma.apply(p)).count())
            .sum::<usize>();
        prop_assert_eq!(pb.group().order(), direct, "{}", name);
        prop_assert!(classify(pb.result.precrossed()).is_nil2(), "{}", name);
        for (i, &(p, m)) in pb.elements.iter().enumerate() {
            prop_assert_eq!(pb.result.boundary().apply(i), p);
            prop_assert_eq!(pb.proj_m.apply(i), m);
        }
    }

    #[test]
    fn induced_nil2_epi_laws(idx in 0usize..100_000, k in 0usize..100) {
        let (name, n) = &nil2()[idx % nil2().len()];
        let epis = epimorphisms(n.target());
        let f = &epis[k % epis.len()];
        let ind = induce_nil2_epi(n, f).unwrap();
        let r = &ind.result;
        let (rm, rq) = (r.source(), r.target());
        for m in n.source().elements() {
            for p in n.target().elements() {
                prop_assert_eq!(
                    ind.theta.apply(n.action().act(m, p)),
                    r.action().act(ind.theta.apply(m), f.apply(p)),
                    "{}", name
                );
            }
        }
        for x in rm.elements() {
            for q in rq.elements() {
                let lhs = r.boundary().apply(r.action().act(x, q));
                prop_assert_eq!(lhs, rq.conj(r.boundary().apply(x), q), "{}", name);
            }
        }
        prop_assert!(classify(r.precrossed()).is_nil2());
    }

    #[test]
    fn induced_quad_epi_verifies(idx in 0usize..100_000, k in 0usize..100) {
        let (name, q) = &quadratic()[idx % quadratic().len()];
        let epis = epimorphisms(q.c0());
        let f = &epis[k % epis.len()];
        let ind = induce_quad_epi(q, f).unwrap();
        prop_assert!(verify_quadratic(ind.result.candidate().clone()).is_ok(), "{}", name);
        prop_assert_eq!(&ind.unit.f0, f);
    }
}

#[test]
fn epi_oracle_on_small_pairs() {
    let mut compared = 0;
    for (name, n) in nil2() {
        if n.source().order() * n.target().order() > 16 {
            continue;
        }
        for f in epimorphisms(n.target()) {
            let cmp = epi_oracle_check(n, &f, CosetLimits::default()).unwrap();
            assert!(cmp.agrees(), "{name}: {cmp:?}");
            compared += 1;
        }
    }
    assert!(compared >= 30, "{compared}");
}

#[test]
fn pullback_quad_keeps_top_group_and_factors_uniquely() {
    let bound = HomBound::default();
    let mut diagrams = 0;
    for (name, q) in quadratic().iter().filter(|(_, q)| q.order_profile().iter().product::<usize>() <= 64) {
        for b in small_groups() {
            for sigma in enumerate_homs(&b, q.c0(), bound).unwrap().into_iter().filter(GroupHom::is_mono).take(2) {
                let pq = pullback_quad(q, &sigma).unwrap();
                assert_eq!(pq.result.c2(), q.c2(), "{name}");
                verify_quadratic(pq.result.candidate().clone()).unwrap();
                let fact = universal_factorization(&pq, &pq.result, &pq.morphism, bound).unwrap();
                assert_eq!(fact.morphism, QuadraticMorphism::identity(&pq.result));
                assert_eq!(fact.uniqueness, Uniqueness::Verified);
                diagrams += 1;
            }
        }
        if diagrams >= 40 {
            break;
        }
    }
    assert!(diagrams >= 40, "{diagrams}");
}

#[test]
fn non_mono_pullback_is_rejected() {
    let z4 = catalog::cyclic(4);
    let z2 = catalog::cyclic(2);
    let q = QuadraticModule::trivial(&z2);
    let sigma = GroupHom::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
    assert!(matches!(pullback_quad(&q, &sigma), Err(Error::NotMonomorphism { kernel_element: 2 })));
}

#[test]
fn mono_layer_laws_on_sampled_words() {
    let mut instances = 0;
    for (name, n) in nil2().iter().filter(|(_, n)| n.source().order() <= 4) {
        for q in small_groups() {
            let Some(phi) = enumerate_homs(n.target(), &q, HomBound::default())
                .unwrap()
                .into_iter()
                .find(|h| h.is_mono() && !h.is_epi())
            else {
                continue;
            };
            let report = induce_nil2_mono(n, &phi).unwrap().check_samples(200, 11);
            assert!(report.passed(), "{name}: {report:?}");
            instances += 1;
        }
        if instances >= 12 {
            break;
        }
    }
    assert!(instances >= 5);
}

/// Functoriality of induction along an epimorphism on morphisms over `id_P`:
/// `φ*(id) = id` and `φ*(h₂h₁) = φ*(h₂)φ*(h₁)`.
#[test]
fn epi_induction_is_functorial() {
    let bound = HomBound::default();
    let mut checked = 0;
    let fixtures: Vec<&QuadraticModule> = quadratic()
        .iter()
        .map(|(_, q)| q)
        .filter(|q| q.order_profile().iter().product::<usize>() <= 32)
        .collect();
    for (i, x) in fixtures.iter().enumerate() {
        let p = x.c0();
        let same_base: Vec<&QuadraticModule> = fixtures[i..].iter().copied().filter(|y| y.c0() == p).take(3).collect();
        for f in epimorphisms(p).into_iter().filter(|f| !f.is_iso()) {
            let inds: Vec<_> = same_base.iter().map(|y| induce_quad_epi(y, &f).unwrap()).collect();
            let id = GroupHom::identity(p);
            let push = |a: usize, b: usize, h: &QuadraticMorphism| -> QuadraticMorphism {
                let given = h.compose(&inds[b].unit, same_base[a], &inds[b].result).unwrap();
                induced_universal_check(&inds[a], &inds[b].result, &given, bound).unwrap().morphism
            };
            assert_eq!(
                push(0, 0, &QuadraticMorphism::identity(same_base[0])),
                QuadraticMorphism::identity(&inds[0].result)
            );
            for b in 0..same_base.len() {
                for c in 0..same_base.len() {
                    let h1s = enumerate_quadratic_morphisms(same_base[0], same_base[b], Some(&id), bound).unwrap();
                    let h2s = enumerate_quadratic_morphisms(same_base[b], same_base[c], Some(&id), bound).unwrap();
                    for h1 in h1s.iter().take(2) {
                        for h2 in h2s.iter().take(2) {
                            let direct = push(0, c, &h1.compose(h2, same_base[0], same_base[c]).unwrap());
                            let stepwise = push(0, b, h1)
                                .compose(&push(b, c, h2), &inds[0].result, &inds[c].result)
                                .unwrap();
                            assert_eq!(direct, stepwise);
                            checked += 1;
                        }
                    }
                }
            }
        }
        if checked >= 60 {
            break;
        }
    }
    assert!(checked >= 60, "{checked}");
}

/// Inducing along `ψφ` agrees with inducing along `φ` and then `ψ`.
#[test]
fn epi_induction_composes_on_objects() {
    let bound = HomBound::default();
    let mut checked = 0;
    for (name, q) in quadratic().iter().filter(|(_, q)| q.order_profile().iter().product::<usize>() <= 64) {
        for phi in epimorphisms(q.c0()) {
            for psi in epimorphisms(phi.target()) {
                let direct = induce_quad_epi(q, &phi.then(&psi).unwrap()).unwrap().result;
                let first = induce_quad_epi(q, &phi).unwrap().result;
                let stepwise = induce_quad_epi(&first, &psi).unwrap().result;
                assert!(find_isomorphism(&direct, &stepwise, bound).unwrap().is_some(), "{name}");
                checked += 1;
            }
        }
        if checked >= 100 {
            break;
        }
    }
    assert!(checked >= 100);
}

/// Z/3 with Z/2 acting by inversion, induced along Z/2 → 1. The middle level
/// collapses, so ω' must vanish; the displacement quotient alone keeps
/// Z/3 ⊗ Z/3 on top and cannot carry a well-defined ω'.
#[test]
fn top_kernel_must_contain_omega_of_the_middle_kernel() {
    let z2 = catalog::cyclic(2);
    let z3 = catalog::cyclic(3);
    let inversion = GroupAction::new(z2.clone(), z3.clone(), &[vec![0, 0], vec![1, 2], vec![2, 1]]).unwrap();
    let pcm = PreCrossedModule::new(GroupHom::trivial(&z3, &z2), inversion).unwrap();
    let q = from_nil2(&Nil2Module::new(pcm).unwrap()).unwrap();
    assert_eq!(q.order_profile(), [3, 3, 2]);
    let to_one = quotient(&z2, &z2.whole()).unwrap().projection;

    let literal = induce_quad_epi_with(&q, &to_one, TopKernel::Displacement);
    assert!(matches!(literal, Err(Error::NotWellDefined(_))), "{literal:?}");

    let ind = induce_quad_epi(&q, &to_one).unwrap();
    assert!(ind.top_enlarged);
    assert_eq!(ind.result.order_profile(), [1, 1, 1]);
    let target = QuadraticModule::trivial(to_one.target());
    let given = ind.unit.clone();
    let fact = induced_universal_check(&ind, &target, &given, HomBound::default()).unwrap();
    assert_eq!(fact.candidates, 1);
}
