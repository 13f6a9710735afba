//! Cokernels of quadratic morphisms and adjunction counts.

use crate::error::{Error, Result};
use crate::group::{invariant_normal_closure, normal_closure, quotient, Quotient};
use crate::hom::{GroupHom, HomBound};
use crate::pullback::pullback_quad;
use crate::quadratic::{
    enumerate_quadratic_morphisms, verify_quadratic, QuadraticCandidate, QuadraticModule,
    QuadraticMorphism,
};

use super::epi::{descend_action, descend_hom, induce_quad_epi, InducedQuadEpi};

/// The cokernel over `Q/P̄` with the projection from the target.
#[derive(Clone, Debug)]
pub struct Cokernel {
    pub result: QuadraticModule,
    pub base: Quotient,
    pub induced_target: InducedQuadEpi,
    pub projection: QuadraticMorphism,
}

/// Cokernel of `(β, λ, φ): S → T`.
///
/// `T` is induced along `Q ↠ Q/P̄` with `P̄` the normal closure of `φ(P)`.
/// The induced source contributes the `Q/P̄`-translates of the images of `λ`
/// and `β`, so the middle level is divided by the invariant normal closure of
/// `λ(G)` and the top level by that of `β(A)` together with every
/// `ω({n}⊗{h})`, `ω({h}⊗{n})` with `n` in the middle kernel.
pub fn cokernel(source: &QuadraticModule, target: &QuadraticModule, m: &QuadraticMorphism) -> Result<Cokernel> {
    QuadraticMorphism::new(source, target, m.f0.clone(), m.f1.clone(), m.f2.clone())?;
    let q = target.c0();
    let image: Vec<usize> = m.f0.image().members().to_vec();
    let base = quotient(q, &normal_closure(q, &image))?;
    let ind = induce_quad_epi(target, &base.projection)?;
    let t = &ind.result;
    let (h, b) = (t.c1(), t.c2());

    let seeds_h: Vec<usize> = source
        .c1()
        .elements()
        .map(|g| ind.middle.projection.apply(m.f1.apply(g)))
        .collect();
    let n_h = invariant_normal_closure(h, &seeds_h, &t.act1().permutations());
    let mut seeds_b: Vec<usize> = source
        .c2()
        .elements()
        .map(|a| ind.top.projection.apply(m.f2.apply(a)))
        .collect();
    for &n in n_h.members() {
        for x in h.elements() {
            seeds_b.push(t.omega_pair(n, x));
            seeds_b.push(t.omega_pair(x, n));
        }
    }
    seeds_b.sort_unstable();
    seeds_b.dedup();
    let n_b = invariant_normal_closure(b, &seeds_b, &t.act2().permutations());
    let qh = quotient(h, &n_h)?;
    let qb = quotient(b, &n_b)?;

    let id = GroupHom::identity(t.c0());
    let act1 = descend_action(t.act1(), &qh, &id)?;
    let act2 = descend_action(t.act2(), &qb, &id)?;
    let d1 = descend_hom(t.d1(), &qh, "d1 on the cokernel")?;
    let d2 = descend_hom(&t.d2().then(&qh.projection)?, &qb, "d2 on the cokernel")?;
    let k = qh.group.order();
    let mut omega_pairs = Vec::with_capacity(k * k);
    for &x in &qh.representatives {
        for &y in &qh.representatives {
            omega_pairs.push(qb.projection.apply(t.omega_pair(x, y)));
        }
    }
    for x in h.elements() {
        for y in h.elements() {
            let c = qh.projection.apply(x) * k + qh.projection.apply(y);
            if qb.projection.apply(t.omega_pair(x, y)) != omega_pairs[c] {
                return Err(Error::NotWellDefined(format!("omega on the cokernel at ({x}, {y})")));
            }
        }
    }
    let result = verify_quadratic(QuadraticCandidate {
        d1,
        d2,
        act1,
        act2,
        omega_pairs,
    })?;
    let projection = QuadraticMorphism::new(
        target,
        &result,
        base.projection.clone(),
        ind.middle.projection.then(&qh.projection)?,
        ind.top.projection.then(&qb.projection)?,
    )?;
    let kills = m.f1.then(&projection.f1)?.is_trivial()
        && m.f2.then(&projection.f2)?.is_trivial()
        && m.f0.then(&projection.f0)?.is_trivial();
    if !kills {
        return Err(Error::DerivedPropertyFailure("cokernel projection does not kill the morphism".into()));
    }
    Ok(Cokernel {
        result,
        base,
        induced_target: ind,
        projection,
    })
}

/// Sizes of `Hom(σ_*X, Y)` over `C₀` and `Hom(X, σ*Y)` over `B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct AdjunctionCount {
    pub induced_side: usize,
    pub pullback_side: usize,
}

impl AdjunctionCount {
    pub fn balanced(&self) -> bool {
        self.induced_side == self.pullback_side
    }
}

/// Counts both hom-sets of the induced/pullback adjunction along `σ: B → C₀`.
///
/// `σ_*X` is computed when `σ` is an isomorphism, and when `X` is trivial
/// above `B` and `σ` is injective (every free-product copy is trivial).
pub fn adjunction_count(
    sigma: &GroupHom,
    x: &QuadraticModule,
    y: &QuadraticModule,
    bound: HomBound,
) -> Result<AdjunctionCount> {
    if x.c0() != sigma.source() || y.c0() != sigma.target() {
        return Err(Error::TypeMismatch("X must lie over B and Y over C0".into()));
    }
    if let Some(kernel_element) = sigma.kernel_witness() {
        return Err(Error::NotMonomorphism { kernel_element });
    }
    let induced = if sigma.is_iso() {
        induce_quad_epi(x, sigma)?.result
    } else if x.c1().order() == 1 && x.c2().order() == 1 {
        QuadraticModule::trivial(y.c0())
    } else {
        return Err(Error::NotComputable(
            "the induced module along a proper monomorphism is an infinite free product".into(),
        ));
    };
    let id_c0 = GroupHom::identity(y.c0());
    let induced_side = enumerate_quadratic_morphisms(&induced, y, Some(&id_c0), bound)?.len();
    let pulled = pullback_quad(y, sigma)?;
    let id_b = GroupHom::identity(x.c0());
    let pullback_side = enumerate_quadratic_morphisms(x, &pulled.result, Some(&id_b), bound)?.len();
    Ok(AdjunctionCount {
        induced_side,
        pullback_side,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::corpus;
    use crate::nil2::Nil2Module;
    use crate::quadratic::from_nil2;

    #[test]
    fn identity_morphism_has_trivial_cokernel() {
        let qm = from_nil2(&Nil2Module::new(corpus::swap_module()).unwrap()).unwrap();
        let id = QuadraticMorphism::identity(&qm);
        let c = cokernel(&qm, &qm, &id).unwrap();
        assert_eq!(c.result.order_profile(), [1, 1, 1]);
    }

    #[test]
    fn trivial_source_leaves_target() {
        let qm = from_nil2(&Nil2Module::new(corpus::swap_module()).unwrap()).unwrap();
        let one = catalog::cyclic(1);
        let src = QuadraticModule::trivial(&one);
        let z = |a: &crate::group::GroupRef, b: &crate::group::GroupRef| GroupHom::trivial(a, b);
        let m = QuadraticMorphism::new(&src, &qm, z(&one, qm.c0()), z(src.c1(), qm.c1()), z(src.c2(), qm.c2())).unwrap();
        let c = cokernel(&src, &qm, &m).unwrap();
        assert_eq!(c.result.order_profile(), qm.order_profile());
    }

    #[test]
    fn identity_sigma_counts_agree() {
        let qm = from_nil2(&Nil2Module::new(corpus::swap_module()).unwrap()).unwrap();
        let id = GroupHom::identity(qm.c0());
        let c = adjunction_count(&id, &qm, &qm, HomBound::default()).unwrap();
        assert!(c.balanced());
        assert!(c.induced_side >= 1);
        let one = catalog::cyclic(1);
        let t = QuadraticModule::trivial(&one);
        let c = adjunction_count(&GroupHom::identity(&one), &t, &t, HomBound::default()).unwrap();
        assert_eq!((c.induced_side, c.pullback_side), (1, 1));
    }
}
