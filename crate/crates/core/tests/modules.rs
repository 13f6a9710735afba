use std::sync::OnceLock;

use proptest::prelude::*;
use quadmod::corpus::{self, Fixture};
use quadmod::nil2::peiffer_pairing;
use quadmod::quadratic::{from_nil2, from_nil2_complex, to_crossed_complex};
use quadmod::{
    classify, quadratic_base, tensor_square, Classification, GroupAction, HomBound, Nil2Module, PreCrossedModule,
    QuadraticModule,
};

fn precrossed() -> &'static [Fixture] {
    static CORPUS: OnceLock<Vec<Fixture>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus::precrossed_corpus(16, 2).unwrap())
}

fn quadratic() -> &'static [(String, QuadraticModule)] {
    static CORPUS: OnceLock<Vec<(String, QuadraticModule)>> = OnceLock::new();
    CORPUS.get_or_init(|| corpus::quadratic_fixtures(8, 2).unwrap())
}

/// `x⁻¹ y⁻¹ x y^{∂x}` evaluated from the tables.
fn peiffer_direct(p: &PreCrossedModule, x: usize, y: usize) -> usize {
    let m = p.source();
    let shifted = p.action().act(y, p.boundary().apply(x));
    m.product([m.inv(x), m.inv(y), x, shifted])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn classification_agrees_with_direct_brackets(idx in 0usize..100_000) {
        let f = &precrossed()[idx % precrossed().len()];
        let p = &f.pcm;
        let m = p.source();
        let e = m.identity();
        let mut crossed = true;
        let mut nil2 = true;
        for x in m.elements() {
            for y in m.elements() {
                let xy = peiffer_direct(p, x, y);
                crossed &= xy == e;
                for z in m.elements() {
                    nil2 &= peiffer_direct(p, xy, z) == e;
                    nil2 &= peiffer_direct(p, z, xy) == e;
                }
            }
        }
        let c = classify(p);
        prop_assert_eq!(c.is_crossed(), crossed, "{}", f.name);
        prop_assert_eq!(c.is_nil2(), nil2, "{}", f.name);
        if c.is_crossed() {
            prop_assert!(c.is_nil2());
        }
        match c {
            Classification::Nil2NotCrossed { witness: (x, y) } => prop_assert_ne!(peiffer_direct(p, x, y), e),
            Classification::NotNil2 { .. } | Classification::Crossed => {}
        }
    }

    #[test]
    fn peiffer_elements_vanish_in_the_base(idx in 0usize..100_000) {
        let f = &precrossed()[idx % precrossed().len()];
        let Ok(n) = Nil2Module::new(f.pcm.clone()) else { return Ok(()) };
        let p = n.precrossed();
        let base = quadratic_base(p).unwrap();
        let c = base.group();
        let t = tensor_square(base.decomposition());
        let w = peiffer_pairing(p, &base, &t).unwrap();
        let (m, q) = (p.source(), p.target());
        for x in m.elements() {
            for y in m.elements() {
                let v = peiffer_direct(p, x, y);
                prop_assert_eq!(base.class(v), c.identity());
                let pair = t.tensor(base.class(x), base.class(y));
                prop_assert_eq!(w.apply(pair), v);
                prop_assert_eq!(p.boundary().apply(v), q.identity());
            }
        }
    }

    #[test]
    fn from_nil2_verifies(idx in 0usize..100_000) {
        let f = &precrossed()[idx % precrossed().len()];
        if let Ok(n) = Nil2Module::new(f.pcm.clone()) {
            prop_assert!(from_nil2(&n).is_ok(), "{}", f.name);
        }
    }

    #[test]
    fn trivial_omega_forces_crossed_complex(idx in 0usize..100_000) {
        let (name, q) = &quadratic()[idx % quadratic().len()];
        if !q.omega_is_trivial() {
            return Ok(());
        }
        let c2 = q.c2();
        prop_assert!(c2.is_abelian(), "{name}");
        let p = q.precrossed();
        for x in q.c1().elements() {
            for y in q.c1().elements() {
                prop_assert_eq!(peiffer_direct(p, x, y), q.c1().identity(), "{}", name);
            }
            let dx = q.d1().apply(x);
            for a in c2.elements() {
                prop_assert_eq!(q.act2().act(a, dx), a, "{}", name);
            }
        }
    }
}

#[test]
fn crossed_complex_round_trip() {
    let mut checked = 0;
    for f in precrossed().iter().filter(|f| classify(&f.pcm).is_crossed()) {
        let n = Nil2Module::new(f.pcm.clone()).unwrap();
        let kernel = n.boundary().kernel();
        let (k, incl) = kernel.embedding();
        if !k.is_abelian() {
            continue;
        }
        let act = GroupAction::from_fn(n.target(), &k, |x, q| {
            let image = n.action().act(incl.apply(x), q);
            kernel.members().iter().position(|&y| y == image).unwrap()
        })
        .unwrap();
        let q = from_nil2_complex(&incl, &n, &act).unwrap();
        let cc = to_crossed_complex(&q).unwrap();
        assert_eq!(cc.d1, *n.boundary(), "{}", f.name);
        assert_eq!(cc.d2, incl, "{}", f.name);
        assert_eq!(cc.act1, *n.action(), "{}", f.name);
        assert_eq!(cc.act2, act, "{}", f.name);
        checked += 1;
    }
    assert!(checked >= 20, "only {checked} crossed fixtures with abelian kernel");
}

#[test]
fn morphism_composition_is_a_morphism() {
    let small: Vec<&QuadraticModule> = quadratic()
        .iter()
        .map(|(_, q)| q)
        .filter(|q| q.order_profile().iter().product::<usize>() <= 16)
        .take(8)
        .collect();
    let bound = HomBound::default();
    let mut composed = 0;
    for x in &small {
        for y in &small {
            let xy = quadmod::quadratic::enumerate_quadratic_morphisms(x, y, None, bound).unwrap();
            if xy.is_empty() {
                continue;
            }
            for z in &small {
                let yz = quadmod::quadratic::enumerate_quadratic_morphisms(y, z, None, bound).unwrap();
                for a in xy.iter().take(3) {
                    for b in yz.iter().take(3) {
                        let c = a.compose(b, x, z).unwrap();
                        for t in x.c1().elements() {
                            assert_eq!(c.f1.apply(t), b.f1.apply(a.f1.apply(t)));
                        }
                        for t in x.c2().elements() {
                            assert_eq!(c.f2.apply(t), b.f2.apply(a.f2.apply(t)));
                        }
                        composed += 1;
                    }
                }
            }
        }
    }
    assert!(composed >= 50, "only {composed} compositions");
}
