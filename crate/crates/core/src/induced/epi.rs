//! Induction along an epimorphism: quotients by displacement subgroups.

use serde::Serialize;

use crate::action::{displacement_subgroup, Displacement, GroupAction};
use crate::coset::CosetLimits;
use crate::error::{Error, Result};
use crate::group::{invariant_normal_closure, quotient, Quotient, Subgroup};
use crate::hom::{enumerate_homs, GroupHom, HomBound};
use crate::nil2::{check_nil2_morphism, Nil2Module, PreCrossedModule};
use crate::quadratic::{
    enumerate_quadratic_morphisms, verify_quadratic, QuadraticCandidate, QuadraticModule,
    QuadraticMorphism,
};

use super::presentation::{enumerate_presentation_quotient, induced_presentation, Realization};

fn require_epi(f: &GroupHom) -> Result<()> {
    match f.cokernel_witness() {
        Some(missing) => Err(Error::NotEpimorphism { missing }),
        None => Ok(()),
    }
}

/// The action of `Q = P/K` on `X/N` given by `(xN)^{f(p)} = x^p N`, checked
/// on every `(x, p)`.
pub(crate) fn descend_action(action: &GroupAction, quo: &Quotient, f: &GroupHom) -> Result<GroupAction> {
    let pre = f.preimages();
    let q = f.target();
    let x = action.carrier();
    let cls = |v: usize| quo.projection.apply(v);
    for v in x.elements() {
        for p in action.actor().elements() {
            let direct = cls(action.act(v, p));
            let via = cls(action.act(quo.representatives[cls(v)], pre[f.apply(p)].expect("epi")));
            if direct != via {
                return Err(Error::NotWellDefined(format!(
                    "action on the quotient at x={v}, p={p}"
                )));
            }
        }
    }
    GroupAction::from_fn(q, &quo.group, |c, qq| {
        cls(action.act(quo.representatives[c], pre[qq].expect("epi")))
    })
}

/// `xN ↦ g(x)` for a homomorphism `g` constant on cosets of `N`.
pub(crate) fn descend_hom(g: &GroupHom, quo: &Quotient, target_name: &str) -> Result<GroupHom> {
    let map: Vec<usize> = quo.representatives.iter().map(|&r| g.apply(r)).collect();
    if let Some(v) = g.source().elements().find(|&v| g.apply(v) != map[quo.projection.apply(v)]) {
        return Err(Error::NotWellDefined(format!("{target_name} at {v}")));
    }
    GroupHom::new(quo.group.clone(), g.target().clone(), map)
}

/// `M/[K,M] → Q` with the unit `θ: M → M/[K,M]`.
#[derive(Clone, Debug)]
pub struct InducedNil2Epi {
    pub result: Nil2Module,
    pub theta: GroupHom,
    pub kernel: Subgroup,
    pub displacement: Displacement,
    pub quotient: Quotient,
}

pub fn induce_nil2_epi(n: &Nil2Module, f: &GroupHom) -> Result<InducedNil2Epi> {
    if f.source() != n.target() {
        return Err(Error::TypeMismatch("f must start at the base of the module".into()));
    }
    require_epi(f)?;
    let kernel = f.kernel();
    let displacement = displacement_subgroup(n.action(), &kernel)?;
    let quo = quotient(n.source(), &displacement.subgroup)?;
    let action = descend_action(n.action(), &quo, f)?;
    let boundary = descend_hom(&n.boundary().then(f)?, &quo, "boundary")?;
    let result = Nil2Module::new(PreCrossedModule::new(boundary, action)?)?;
    let theta = quo.projection.clone();
    check_nil2_morphism(n.precrossed(), result.precrossed(), &theta, f)?;
    Ok(InducedNil2Epi {
        result,
        theta,
        kernel,
        displacement,
        quotient: quo,
    })
}

/// `L/N → M/[K,M] → Q` with the unit morphism from the source.
///
/// `N` contains `[K,L]`; see [`TopKernel`].
#[derive(Clone, Debug)]
pub struct InducedQuadEpi {
    pub result: QuadraticModule,
    pub unit: QuadraticMorphism,
    pub kernel: Subgroup,
    pub middle: Quotient,
    pub top: Quotient,
    /// Whether `N` is strictly larger than `[K,L]`.
    pub top_enlarged: bool,
}

/// The subgroup divided out of the top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TopKernel {
    /// `[K,L]` alone. `ω` need not descend to it: `ω({n} ⊗ {m})` for
    /// `n ∈ [K,M]` can lie outside `[K,L]`.
    Displacement,
    /// The `P`-invariant normal closure of `[K,L]` and all `ω({n} ⊗ {m})`,
    /// `ω({m} ⊗ {n})` with `n ∈ [K,M]`. Every morphism over `φ` kills these
    /// elements, so the universal property is unaffected.
    Saturated,
}

/// Induction along an epimorphism with the saturated top kernel.
pub fn induce_quad_epi(qm: &QuadraticModule, phi: &GroupHom) -> Result<InducedQuadEpi> {
    induce_quad_epi_with(qm, phi, TopKernel::Saturated)
}

pub fn induce_quad_epi_with(qm: &QuadraticModule, phi: &GroupHom, top_kernel: TopKernel) -> Result<InducedQuadEpi> {
    if phi.source() != qm.c0() {
        return Err(Error::TypeMismatch("phi must start at C0".into()));
    }
    require_epi(phi)?;
    let kernel = phi.kernel();
    let km = displacement_subgroup(qm.act1(), &kernel)?.subgroup;
    let kl = displacement_subgroup(qm.act2(), &kernel)?.subgroup;
    let top_sub = match top_kernel {
        TopKernel::Displacement => kl.clone(),
        TopKernel::Saturated => {
            let mut seeds = kl.members().to_vec();
            for &n in km.members() {
                for y in qm.c1().elements() {
                    seeds.push(qm.omega_pair(n, y));
                    seeds.push(qm.omega_pair(y, n));
                }
            }
            seeds.sort_unstable();
            seeds.dedup();
            invariant_normal_closure(qm.c2(), &seeds, &qm.act2().permutations())
        }
    };
    let top_enlarged = top_sub.order() != kl.order();
    let middle = quotient(qm.c1(), &km)?;
    let top = quotient(qm.c2(), &top_sub)?;
    let act1 = descend_action(qm.act1(), &middle, phi)?;
    let act2 = descend_action(qm.act2(), &top, phi)?;
    let d1 = descend_hom(&qm.d1().then(phi)?, &middle, "d1")?;
    let d2 = descend_hom(&qm.d2().then(&middle.projection)?, &top, "d2")?;
    let k1 = middle.group.order();
    let mut omega_pairs = Vec::with_capacity(k1 * k1);
    for &x in &middle.representatives {
        for &y in &middle.representatives {
            omega_pairs.push(top.projection.apply(qm.omega_pair(x, y)));
        }
    }
    for x in qm.c1().elements() {
        for y in qm.c1().elements() {
            let cls = middle.projection.apply(x) * k1 + middle.projection.apply(y);
            if top.projection.apply(qm.omega_pair(x, y)) != omega_pairs[cls] {
                return Err(Error::NotWellDefined(format!("omega on classes at ({x}, {y})")));
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
    let unit = QuadraticMorphism::new(
        qm,
        &result,
        phi.clone(),
        middle.projection.clone(),
        top.projection.clone(),
    )?;
    Ok(InducedQuadEpi {
        result,
        unit,
        kernel,
        middle,
        top,
        top_enlarged,
    })
}

/// The factoring morphism `(id_Q, f₁*, f₂*)` and the number of morphisms
/// over `id_Q` whose composite with the unit is the given one.
#[derive(Clone, Debug)]
pub struct InducedFactorization {
    pub morphism: QuadraticMorphism,
    pub candidates: usize,
}

pub fn induced_universal_check(
    ind: &InducedQuadEpi,
    target: &QuadraticModule,
    given: &QuadraticMorphism,
    bound: HomBound,
) -> Result<InducedFactorization> {
    if given.f0 != ind.unit.f0 {
        return Err(Error::TypeMismatch("given morphism must lie over phi".into()));
    }
    if target.c0() != ind.result.c0() {
        return Err(Error::TypeMismatch("target must be a module over Q".into()));
    }
    let f1 = descend_hom(&given.f1, &ind.middle, "f1 on M/[K,M]")?;
    let f2 = descend_hom(&given.f2, &ind.top, "f2 on the top quotient")?;
    let id = GroupHom::identity(target.c0());
    let morphism = QuadraticMorphism::new(&ind.result, target, id.clone(), f1, f2)?;
    let composes_to_given = |m: &QuadraticMorphism| -> Result<bool> {
        Ok(ind.unit.f1.then(&m.f1)? == given.f1 && ind.unit.f2.then(&m.f2)? == given.f2)
    };
    if !composes_to_given(&morphism)? {
        return Err(Error::NoFactorization("factoring morphism does not recover the given one".into()));
    }
    let mut candidates = 0;
    for m in enumerate_quadratic_morphisms(&ind.result, target, Some(&id), bound)? {
        if composes_to_given(&m)? {
            candidates += 1;
        }
    }
    if candidates != 1 {
        return Err(Error::NonUnique { candidates });
    }
    Ok(InducedFactorization { morphism, candidates })
}

/// Comparison of the coset-enumerated `F(M × Q)/S` with `M/[K,M]`.
#[derive(Clone, Debug, Serialize)]
pub struct OracleComparison {
    pub presented_order: usize,
    pub quotient_order: usize,
    /// Isomorphisms `M/[K,M] → F(M×Q)/S` respecting boundary and action.
    pub isomorphisms: usize,
    /// Whether one of them carries `θ` to `m ↦ (m, 1)S`.
    pub unit_compatible: bool,
}

impl OracleComparison {
    pub fn agrees(&self) -> bool {
        self.isomorphisms > 0 && self.unit_compatible
    }
}

/// Runs both routes for an epimorphism and compares them.
pub fn epi_oracle_check(n: &Nil2Module, f: &GroupHom, limits: CosetLimits) -> Result<OracleComparison> {
    let ind = induce_nil2_epi(n, f)?;
    let pres = induced_presentation(n, f)?;
    let r = match enumerate_presentation_quotient(&pres, limits)? {
        Realization::Finite(r) => r,
        Realization::Unbounded { cosets_defined } => {
            return Err(Error::NotComputable(format!(
                "coset enumeration stopped after {cosets_defined} cosets"
            )))
        }
    };
    let boundary = r.boundary.clone().expect("middle-level presentation has a boundary");
    // the boundary law on the presented group
    PreCrossedModule::new(boundary.clone(), r.action.clone())?;
    let src = ind.result.source();
    let g = r.group();
    let mut out = OracleComparison {
        presented_order: g.order(),
        quotient_order: src.order(),
        isomorphisms: 0,
        unit_compatible: false,
    };
    if g.order() != src.order() {
        return Ok(out);
    }
    let q = f.target();
    for h in enumerate_homs(src, g, HomBound::square(src.order()))? {
        if !h.is_iso() {
            continue;
        }
        let respects = src.elements().all(|x| {
            boundary.apply(h.apply(x)) == ind.result.boundary().apply(x)
                && q
                    .elements()
                    .all(|qq| h.apply(ind.result.action().act(x, qq)) == r.action.act(h.apply(x), qq))
        });
        if respects {
            out.isomorphisms += 1;
            if ind.theta.then(&h)? == r.unit {
                out.unit_compatible = true;
            }
        }
    }
    Ok(out)
}
