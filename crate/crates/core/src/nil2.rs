//! Pre-crossed modules, Peiffer commutators and the nil(2) condition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::abelian::{abelian_invariants, AbelianDecomposition, TensorSquare};
use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{normal_closure, quotient, GroupRef, Subgroup};
use crate::hom::GroupHom;

/// A boundary `∂: M → Q` with a right action of `Q` on `M` such that
/// `∂(m^q) = q⁻¹ ∂(m) q`.
#[derive(Clone, Debug, PartialEq)]
pub struct PreCrossedModule {
    boundary: GroupHom,
    action: GroupAction,
}

impl PreCrossedModule {
    pub fn new(boundary: GroupHom, action: GroupAction) -> Result<PreCrossedModule> {
        if boundary.source() != action.carrier() || boundary.target() != action.actor() {
            return Err(Error::TypeMismatch(
                "boundary M → Q and action of Q on M disagree on groups".into(),
            ));
        }
        let q = boundary.target();
        for m in boundary.source().elements() {
            for g in q.elements() {
                if boundary.apply(action.act(m, g)) != q.conj(boundary.apply(m), g) {
                    return Err(Error::NotEquivariant { m, q: g });
                }
            }
        }
        Ok(PreCrossedModule { boundary, action })
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `M`
    pub fn source(&self) -> &GroupRef {
        self.boundary.source()
    }

    /// `Q`
    pub fn target(&self) -> &GroupRef {
        self.boundary.target()
    }

    /// `⟨x, y⟩ = x⁻¹ y⁻¹ x y^{∂x}`
    pub fn peiffer(&self, x: usize, y: usize) -> usize {
        let m = self.source();
        let lhs = m.mul(m.mul(m.inv(x), m.inv(y)), x);
        m.mul(lhs, self.action.act(y, self.boundary.apply(x)))
    }

    /// Distinct Peiffer values, each with the first pair producing it.
    pub fn peiffer_values(&self) -> BTreeMap<usize, (usize, usize)> {
        let mut out = BTreeMap::new();
        for x in self.source().elements() {
            for y in self.source().elements() {
                out.entry(self.peiffer(x, y)).or_insert((x, y));
            }
        }
        out
    }

    pub fn classify(&self) -> Classification {
        classify(self)
    }
}

/// Which association of a length-3 bracket failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Bracket {
    /// `⟨⟨x, y⟩, z⟩`
    Left,
    /// `⟨x, ⟨y, z⟩⟩`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Classification {
    Crossed,
    /// Some Peiffer commutator is nontrivial; all length-3 brackets vanish.
    Nil2NotCrossed { witness: (usize, usize) },
    NotNil2 { witness: (usize, usize, usize), bracket: Bracket },
}

impl Classification {
    pub fn is_nil2(&self) -> bool {
        !matches!(self, Classification::NotNil2 { .. })
    }

    pub fn is_crossed(&self) -> bool {
        matches!(self, Classification::Crossed)
    }

    pub fn name(&self) -> &'static str {
        match self {
            Classification::Crossed => "Crossed",
            Classification::Nil2NotCrossed { .. } => "Nil2NotCrossed",
            Classification::NotNil2 { .. } => "NotNil2",
        }
    }
}

/// Classifies by exhausting Peiffer values rather than building `P₃(∂)`.
pub fn classify(pcm: &PreCrossedModule) -> Classification {
    let values = pcm.peiffer_values();
    let m = pcm.source();
    let e = m.identity();
    if values.len() == 1 && values.contains_key(&e) {
        return Classification::Crossed;
    }
    // A triple fails iff ⟨p, z⟩ or ⟨x, p⟩ is nontrivial for the Peiffer
    // value p of the inner pair.
    for (&p, &(a, b)) in &values {
        if let Some(z) = m.elements().find(|&z| pcm.peiffer(p, z) != e) {
            return Classification::NotNil2 {
                witness: (a, b, z),
                bracket: Bracket::Left,
            };
        }
        if let Some(x) = m.elements().find(|&x| pcm.peiffer(x, p) != e) {
            return Classification::NotNil2 {
                witness: (x, a, b),
                bracket: Bracket::Right,
            };
        }
    }
    let witness = values
        .iter()
        .find(|(&p, _)| p != e)
        .map(|(_, &pair)| pair)
        .expect("a nontrivial Peiffer value exists");
    Classification::Nil2NotCrossed { witness }
}

/// A pre-crossed module certified nil(2).
#[derive(Clone, Debug, PartialEq)]
pub struct Nil2Module {
    pcm: PreCrossedModule,
}

impl Nil2Module {
    pub fn new(pcm: PreCrossedModule) -> Result<Nil2Module> {
        match classify(&pcm) {
            Classification::NotNil2 {
                witness: (x, y, z), ..
            } => Err(Error::NotNil2 { x, y, z }),
            _ => Ok(Nil2Module { pcm }),
        }
    }

    pub fn precrossed(&self) -> &PreCrossedModule {
        &self.pcm
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.pcm.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.pcm.action
    }

    pub fn source(&self) -> &GroupRef {
        self.pcm.source()
    }

    pub fn target(&self) -> &GroupRef {
        self.pcm.target()
    }

    pub fn peiffer(&self, x: usize, y: usize) -> usize {
        self.pcm.peiffer(x, y)
    }
}

/// The Peiffer subgroup, the associated crossed module and its
/// abelianization `C` with the class map `x ↦ {x}`.
#[derive(Clone, Debug)]
pub struct QuadraticBase {
    peiffer_subgroup: Subgroup,
    cr_group: GroupRef,
    decomposition: AbelianDecomposition,
    class_map: GroupHom,
    representatives: Vec<usize>,
    action: GroupAction,
}

impl QuadraticBase {
    pub fn peiffer_subgroup(&self) -> &Subgroup {
        &self.peiffer_subgroup
    }

    /// `M / ⟨M, M⟩`
    pub fn cr_group(&self) -> &GroupRef {
        &self.cr_group
    }

    pub fn decomposition(&self) -> &AbelianDecomposition {
        &self.decomposition
    }

    /// The group `C`.
    pub fn group(&self) -> &GroupRef {
        self.decomposition.group()
    }

    pub fn class_map(&self) -> &GroupHom {
        &self.class_map
    }

    /// `{x}`
    pub fn class(&self, x: usize) -> usize {
        self.class_map.apply(x)
    }

    /// Minimal representative in `M` of each class.
    pub fn representative(&self, c: usize) -> usize {
        self.representatives[c]
    }

    /// `{m}^q = {m^q}`
    pub fn action(&self) -> &GroupAction {
        &self.action
    }
}

pub fn quadratic_base(pcm: &PreCrossedModule) -> Result<QuadraticBase> {
    if let Classification::NotNil2 {
        witness: (x, y, z), ..
    } = classify(pcm)
    {
        return Err(Error::NotNil2 { x, y, z });
    }
    let m = pcm.source();
    let peiffer: Vec<usize> = pcm.peiffer_values().into_keys().collect();
    let peiffer_subgroup = normal_closure(m, &peiffer);
    let cr = quotient(m, &peiffer_subgroup)?;
    let mut seeds = peiffer;
    for x in m.elements() {
        for y in m.elements() {
            seeds.push(m.commutator(x, y));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    let kernel = normal_closure(m, &seeds);
    let c = quotient(m, &kernel)?;
    let decomposition = abelian_invariants(&c.group)?;
    let proj = c.projection.clone();
    let action = GroupAction::from_fn(pcm.target(), &c.group, |k, q| {
        proj.apply(pcm.action().act(c.representatives[k], q))
    })?;
    for x in m.elements() {
        for q in pcm.target().elements() {
            if proj.apply(pcm.action().act(x, q)) != action.act(proj.apply(x), q) {
                return Err(Error::NotWellDefined(format!(
                    "induced action on C at m={x}, q={q}"
                )));
            }
        }
    }
    Ok(QuadraticBase {
        peiffer_subgroup,
        cr_group: cr.group,
        decomposition,
        class_map: c.projection,
        representatives: c.representatives,
        action,
    })
}

/// `w: C ⊗ C → M`, `w({x} ⊗ {y}) = ⟨x, y⟩`, verified well defined.
pub fn peiffer_pairing(
    pcm: &PreCrossedModule,
    base: &QuadraticBase,
    tensor: &TensorSquare,
) -> Result<GroupHom> {
    if tensor.base().group() != base.group() {
        return Err(Error::TypeMismatch("tensor square over a different C".into()));
    }
    let m = pcm.source();
    // the value on a pair of classes must not depend on representatives
    let c = base.group().order();
    let mut on_classes = vec![None; c * c];
    for x in m.elements() {
        for y in m.elements() {
            let slot = base.class(x) * c + base.class(y);
            let v = pcm.peiffer(x, y);
            match on_classes[slot] {
                None => on_classes[slot] = Some((v, x, y)),
                Some((w, x0, y0)) if w != v => {
                    return Err(Error::NotWellDefined(format!(
                        "Peiffer pairing: <{x0},{y0}> = {w} but <{x},{y}> = {v} on the same classes"
                    )));
                }
                _ => {}
            }
        }
    }
    let k = base.decomposition().rank();
    let gens = base.decomposition().generators();
    let images: Vec<usize> = (0..k * k)
        .map(|r| on_classes[gens[r / k] * c + gens[r % k]].expect("every class pair occurs").0)
        .collect();
    let w = tensor.hom_from_basis_images(m, &images).map_err(|e| {
        Error::NotWellDefined(format!("Peiffer pairing does not extend to C⊗C: {e}"))
    })?;
    for a in base.group().elements() {
        for b in base.group().elements() {
            let (v, x, y) = on_classes[a * c + b].unwrap();
            if w.apply(tensor.tensor(a, b)) != v {
                return Err(Error::NotWellDefined(format!(
                    "Peiffer pairing is not bilinear at ({x}, {y})"
                )));
            }
        }
    }
    Ok(w)
}

/// `(g, f)` with `f∂ = ∂'g` and `g(m^q) = g(m)^{f(q)}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Nil2Morphism {
    pub g: GroupHom,
    pub f: GroupHom,
}

impl Nil2Morphism {
    pub fn new(source: &PreCrossedModule, target: &PreCrossedModule, g: GroupHom, f: GroupHom) -> Result<Self> {
        check_nil2_morphism(source, target, &g, &f)?;
        Ok(Nil2Morphism { g, f })
    }

    pub fn compose(&self, next: &Nil2Morphism) -> Result<Nil2Morphism> {
        Ok(Nil2Morphism {
            g: self.g.then(&next.g)?,
            f: self.f.then(&next.f)?,
        })
    }
}

pub fn check_nil2_morphism(
    source: &PreCrossedModule,
    target: &PreCrossedModule,
    g: &GroupHom,
    f: &GroupHom,
) -> Result<()> {
    if g.source() != source.source()
        || g.target() != target.source()
        || f.source() != source.target()
        || f.target() != target.target()
    {
        return Err(Error::TypeMismatch("morphism levels do not match the modules".into()));
    }
    for m in source.source().elements() {
        if f.apply(source.boundary().apply(m)) != target.boundary().apply(g.apply(m)) {
            return Err(Error::NotMorphism(format!("boundary square fails at m={m}")));
        }
        for q in source.target().elements() {
            if g.apply(source.action().act(m, q)) != target.action().act(g.apply(m), f.apply(q)) {
                return Err(Error::NotMorphism(format!("action not preserved at m={m}, q={q}")));
            }
        }
    }
    Ok(())
}

/// `φ_*: C → C'` induced by `g: M → M'` on quadratic bases.
pub fn induced_on_base(g: &GroupHom, from: &QuadraticBase, to: &QuadraticBase) -> Result<GroupHom> {
    let map: Vec<usize> = from
        .group()
        .elements()
        .map(|c| to.class(g.apply(from.representative(c))))
        .collect();
    for x in g.source().elements() {
        if map[from.class(x)] != to.class(g.apply(x)) {
            return Err(Error::NotWellDefined(format!("induced map on C at {x}")));
        }
    }
    GroupHom::new(from.group().clone(), to.group().clone(), map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::tensor_square;
    use crate::catalog;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    fn conjugation_module(g: &GroupRef) -> PreCrossedModule {
        PreCrossedModule::new(GroupHom::identity(g), GroupAction::conjugation(g)).unwrap()
    }

    fn commutator_module(g: &GroupRef) -> PreCrossedModule {
        let one: GroupRef = Arc::new(FiniteGroup::trivial());
        PreCrossedModule::new(GroupHom::trivial(g, &one), GroupAction::trivial(&one, g)).unwrap()
    }

    #[test]
    fn conjugation_modules_are_crossed() {
        for ng in catalog::small_groups(12) {
            let pcm = conjugation_module(&ng.group);
            assert_eq!(classify(&pcm), Classification::Crossed, "{}", ng.name);
        }
    }

    #[test]
    fn commutator_modules_follow_nilpotency_class() {
        assert!(classify(&commutator_module(&catalog::dihedral(4))).name() == "Nil2NotCrossed");
        assert!(classify(&commutator_module(&catalog::quaternion())).name() == "Nil2NotCrossed");
        assert!(matches!(
            classify(&commutator_module(&catalog::symmetric(3))),
            Classification::NotNil2 { .. }
        ));
        assert!(classify(&commutator_module(&catalog::cyclic(6))).is_crossed());
    }

    #[test]
    fn non_equivariant_boundary_rejected() {
        let s3 = catalog::symmetric(3);
        let one: GroupRef = Arc::new(FiniteGroup::trivial());
        // S3 acting trivially on itself with ∂ = id fails the pre-crossed law.
        let act = GroupAction::trivial(&s3, &s3);
        assert!(matches!(
            PreCrossedModule::new(GroupHom::identity(&s3), act),
            Err(Error::NotEquivariant { .. })
        ));
        assert!(PreCrossedModule::new(GroupHom::trivial(&s3, &one), GroupAction::trivial(&one, &s3)).is_ok());
    }

    #[test]
    fn s3_conjugation_base_is_z2() {
        let pcm = conjugation_module(&catalog::symmetric(3));
        let qb = quadratic_base(&pcm).unwrap();
        assert_eq!(qb.decomposition().invariant_factors(), &[2]);
        assert!(qb.peiffer_subgroup().is_trivial());
    }

    #[test]
    fn pairing_of_commutator_module_is_commutator() {
        let d4 = catalog::dihedral(4);
        let pcm = commutator_module(&d4);
        let qb = quadratic_base(&pcm).unwrap();
        assert_eq!(qb.decomposition().invariant_factors(), &[2, 2]);
        let t = tensor_square(qb.decomposition());
        let w = peiffer_pairing(&pcm, &qb, &t).unwrap();
        assert!(!w.is_trivial());
        for x in d4.elements() {
            for y in d4.elements() {
                assert_eq!(w.apply(t.tensor(qb.class(x), qb.class(y))), d4.commutator(x, y));
            }
        }
    }
}
