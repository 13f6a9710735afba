//! Pullbacks of nil(2)-modules along any homomorphism and of quadratic
//! modules along a monomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::hom::{GroupHom, HomBound};
use crate::nil2::{check_nil2_morphism, Nil2Module, PreCrossedModule};
use crate::quadratic::{
    enumerate_quadratic_morphisms, verify_quadratic, QuadraticCandidate, QuadraticModule,
    QuadraticMorphism,
};

/// `β₁: σ*(M) → P` with `σ*(M) = {(p, m) : ∂m = σp}`.
#[derive(Clone, Debug)]
pub struct PullbackNil2 {
    pub result: Nil2Module,
    /// `σ₁(p, m) = m`
    pub proj_m: GroupHom,
    pub sigma: GroupHom,
    /// Element `i` of `σ*(M)` is the pair `elements[i]`, in lexicographic order.
    pub elements: Vec<(usize, usize)>,
    index: BTreeMap<(usize, usize), usize>,
}

impl PullbackNil2 {
    pub fn index_of(&self, p: usize, m: usize) -> Option<usize> {
        self.index.get(&(p, m)).copied()
    }

    pub fn group(&self) -> &GroupRef {
        self.result.source()
    }
}

pub fn pullback_nil2(n: &Nil2Module, sigma: &GroupHom) -> Result<PullbackNil2> {
    if sigma.target() != n.target() {
        return Err(Error::TypeMismatch("σ must land in the base of the module".into()));
    }
    let (p, m, d) = (sigma.source(), n.source(), n.boundary());
    let mut elements = Vec::new();
    for x in p.elements() {
        for y in m.elements() {
            if d.apply(y) == sigma.apply(x) {
                elements.push((x, y));
            }
        }
    }
    let index: BTreeMap<(usize, usize), usize> =
        elements.iter().enumerate().map(|(i, &pair)| (pair, i)).collect();
    let k = elements.len();
    let mut table = Vec::with_capacity(k * k);
    for &(a, b) in &elements {
        for &(c, e) in &elements {
            table.push(index[&(p.mul(a, c), m.mul(b, e))]);
        }
    }
    let group: GroupRef = Arc::new(FiniteGroup::from_flat(k, table)?);
    let beta = GroupHom::new(group.clone(), p.clone(), elements.iter().map(|e| e.0).collect())?;
    let proj_m = GroupHom::new(group.clone(), m.clone(), elements.iter().map(|e| e.1).collect())?;
    // (p, m)^{p'} = (p'⁻¹ p p', m^{σ(p')})
    let action = GroupAction::from_fn(p, &group, |i, g| {
        let (x, y) = elements[i];
        index[&(p.conj(x, g), n.action().act(y, sigma.apply(g)))]
    })?;
    let result = Nil2Module::new(PreCrossedModule::new(beta, action)?)?;
    check_nil2_morphism(result.precrossed(), n.precrossed(), &proj_m, sigma)?;
    Ok(PullbackNil2 {
        result,
        proj_m,
        sigma: sigma.clone(),
        elements,
        index,
    })
}

/// The pullback quadratic module `C₂ → σ*(C₁) → B` with the canonical
/// morphism `(id, μ₁, σ)` back to the original.
#[derive(Clone, Debug)]
pub struct PullbackQuad {
    pub result: QuadraticModule,
    pub morphism: QuadraticMorphism,
    pub nil2: PullbackNil2,
}

pub fn pullback_quad(q: &QuadraticModule, sigma: &GroupHom) -> Result<PullbackQuad> {
    if let Some(kernel_element) = sigma.kernel_witness() {
        return Err(Error::NotMonomorphism { kernel_element });
    }
    let pb = pullback_nil2(&q.nil2(), sigma)?;
    let mid = pb.group().clone();
    let e = sigma.source().identity();
    let d2 = GroupHom::new(
        q.c2().clone(),
        mid.clone(),
        q.c2()
            .elements()
            .map(|a| pb.index_of(e, q.d2().apply(a)).expect("∂₁∂₂ = 1"))
            .collect(),
    )?;
    let act2 = q.act2().pulled_back(sigma)?;
    let n = mid.order();
    let mut omega_pairs = Vec::with_capacity(n * n);
    for &(_, c) in &pb.elements {
        for &(_, c2) in &pb.elements {
            omega_pairs.push(q.omega_pair(c, c2));
        }
    }
    let result = verify_quadratic(QuadraticCandidate {
        d1: pb.result.boundary().clone(),
        d2,
        act1: pb.result.action().clone(),
        act2,
        omega_pairs,
    })?;
    let morphism = QuadraticMorphism::new(
        &result,
        q,
        sigma.clone(),
        pb.proj_m.clone(),
        GroupHom::identity(q.c2()),
    )?;
    Ok(PullbackQuad {
        result,
        morphism,
        nil2: pb,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Uniqueness {
    /// Exactly one candidate survived exhaustive enumeration.
    Verified,
    /// Groups exceed the enumeration bound; only existence was checked.
    NotExhaustivelyVerified,
}

#[derive(Clone, Debug)]
pub struct Factorization {
    pub morphism: QuadraticMorphism,
    pub uniqueness: Uniqueness,
}

/// Factors a morphism `g: E → q` over `σ` through the pullback: the unique
/// `ε: E → σ*q` over `id_B` with `(id, μ₁, σ) ∘ ε = g`.
pub fn universal_factorization(
    pq: &PullbackQuad,
    e: &QuadraticModule,
    g: &QuadraticMorphism,
    bound: HomBound,
) -> Result<Factorization> {
    let b = pq.result.c0();
    if e.c0() != b {
        return Err(Error::TypeMismatch("E must be a module over B".into()));
    }
    if g.f0 != pq.morphism.f0 {
        return Err(Error::NoFactorization("g does not lie over σ".into()));
    }
    let e1 = e.c1();
    let mut map1 = Vec::with_capacity(e1.order());
    for x in e1.elements() {
        let pair = (e.d1().apply(x), g.f1.apply(x));
        match pq.nil2.index_of(pair.0, pair.1) {
            Some(i) => map1.push(i),
            None => {
                return Err(Error::NoFactorization(format!(
                    "(∂x, g₁x) = {pair:?} is not in the fiber product"
                )))
            }
        }
    }
    let f1 = GroupHom::new(e1.clone(), pq.result.c1().clone(), map1)?;
    let f2 = GroupHom::new(e.c2().clone(), pq.result.c2().clone(), g.f2.map().to_vec())?;
    let eps = QuadraticMorphism::new(e, &pq.result, GroupHom::identity(b), f1, f2)
        .map_err(|err| Error::NoFactorization(err.to_string()))?;
    let composite = (
        eps.f0.then(&pq.morphism.f0)?,
        eps.f1.then(&pq.morphism.f1)?,
        eps.f2.then(&pq.morphism.f2)?,
    );
    if (&composite.0, &composite.1, &composite.2) != (&g.f0, &g.f1, &g.f2) {
        return Err(Error::NoFactorization("composite does not recover g".into()));
    }
    let within = |grp: &GroupRef| grp.order() <= bound.max_source && grp.order() <= bound.max_target;
    let exhaustive = [e.c1(), e.c2(), pq.result.c1(), pq.result.c2()]
        .iter()
        .all(|grp| within(grp));
    let uniqueness = if exhaustive {
        let candidates: Vec<QuadraticMorphism> =
            enumerate_quadratic_morphisms(e, &pq.result, Some(&GroupHom::identity(b)), bound)?
                .into_iter()
                .filter(|c| {
                    c.f1.then(&pq.morphism.f1).map(|h| h == g.f1).unwrap_or(false)
                        && c.f2.then(&pq.morphism.f2).map(|h| h == g.f2).unwrap_or(false)
                })
                .collect();
        if candidates.len() != 1 {
            return Err(Error::NonUnique {
                candidates: candidates.len(),
            });
        }
        if candidates[0] != eps {
            return Err(Error::NoFactorization(
                "enumerated factorization differs from the constructed one".into(),
            ));
        }
        Uniqueness::Verified
    } else {
        Uniqueness::NotExhaustivelyVerified
    };
    Ok(Factorization {
        morphism: eps,
        uniqueness,
    })
}

/// `λ(g)`: the map `(p, m) ↦ (p, g(m))` between pullbacks of two modules over
/// the same base, for a morphism `(g, id)`.
pub fn pullback_map(from: &PullbackNil2, to: &PullbackNil2, g: &GroupHom) -> Result<GroupHom> {
    let map: Result<Vec<usize>> = from
        .elements
        .iter()
        .map(|&(p, m)| {
            to.index_of(p, g.apply(m))
                .ok_or_else(|| Error::NotMorphism(format!("({p}, {m}) leaves the fiber product")))
        })
        .collect();
    let h = GroupHom::new(from.group().clone(), to.group().clone(), map?)?;
    check_nil2_morphism(
        from.result.precrossed(),
        to.result.precrossed(),
        &h,
        &GroupHom::identity(from.sigma.source()),
    )?;
    Ok(h)
}

#[derive(Clone, Debug, Serialize)]
pub struct FunctorCheck {
    pub name: String,
    pub passed: bool,
}

/// Checks `λ(id) = id` on every module of the chain and
/// `λ(gₖ ∘ … ∘ gᵢ) = λ(gₖ) ∘ … ∘ λ(gᵢ)` on every contiguous stretch of
/// `maps`, where `maps[i]: chain[i] → chain[i + 1]` lies over `id_Q`.
pub fn pullback_functor_check(
    chain: &[Nil2Module],
    maps: &[GroupHom],
    sigma: &GroupHom,
) -> Result<Vec<FunctorCheck>> {
    if maps.len() + 1 != chain.len() && !(chain.is_empty() && maps.is_empty()) {
        return Err(Error::TypeMismatch("need one map between consecutive modules".into()));
    }
    for (i, g) in maps.iter().enumerate() {
        check_nil2_morphism(
            chain[i].precrossed(),
            chain[i + 1].precrossed(),
            g,
            &GroupHom::identity(chain[i].target()),
        )?;
    }
    let pbs: Vec<PullbackNil2> = chain.iter().map(|n| pullback_nil2(n, sigma)).collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, (n, pb)) in chain.iter().zip(&pbs).enumerate() {
        let id = pullback_map(pb, pb, &GroupHom::identity(n.source()))?;
        out.push(FunctorCheck {
            name: format!("identity on module {i}"),
            passed: id == GroupHom::identity(pb.group()),
        });
    }
    let lambdas: Vec<GroupHom> = maps
        .iter()
        .enumerate()
        .map(|(i, g)| pullback_map(&pbs[i], &pbs[i + 1], g))
        .collect::<Result<_>>()?;
    for i in 0..maps.len() {
        let mut composite = maps[i].clone();
        let mut lambda_composite = lambdas[i].clone();
        for j in i + 1..maps.len() {
            composite = composite.then(&maps[j])?;
            lambda_composite = lambda_composite.then(&lambdas[j])?;
            let direct = pullback_map(&pbs[i], &pbs[j + 1], &composite)?;
            out.push(FunctorCheck {
                name: format!("composition {i}..{}", j + 1),
                passed: direct == lambda_composite,
            });
        }
    }
    Ok(out)
}
