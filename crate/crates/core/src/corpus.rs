//! Deterministic fixture corpus of small pre-crossed and quadratic modules.

use std::sync::Arc;

use crate::action::GroupAction;
use crate::catalog::{self, NamedGroup};
use crate::error::Result;
use crate::group::{FiniteGroup, GroupRef};
use crate::hom::{automorphism_group, enumerate_homs, GroupHom, HomBound};
use crate::nil2::{Nil2Module, PreCrossedModule};
use crate::quadratic::{from_nil2, from_nil2_complex, QuadraticModule};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub pcm: PreCrossedModule,
}

/// Every action of `q` on `m`, one per homomorphism `q → Aut(m)`.
pub fn actions(q: &GroupRef, m: &GroupRef) -> Result<Vec<GroupAction>> {
    let (aut, perms) = automorphism_group(m, HomBound::square(m.order().max(1)))?;
    let homs = enumerate_homs(q, &aut, HomBound {
        max_source: q.order(),
        max_target: aut.order(),
    })?;
    Ok(homs
        .iter()
        .map(|rho| {
            let table: Vec<usize> = m
                .elements()
                .flat_map(|x| q.elements().map(move |g| (x, g)))
                .map(|(x, g)| perms[rho.apply(g)][x])
                .collect();
            GroupAction::new_unchecked(q.clone(), m.clone(), table)
        })
        .collect())
}

/// Pre-crossed modules `m → q`, at most `per_action` per action and `limit`
/// in total, in enumeration order.
pub fn precrossed_modules(
    m: &GroupRef,
    q: &GroupRef,
    per_action: usize,
    limit: usize,
) -> Result<Vec<PreCrossedModule>> {
    let boundaries = enumerate_homs(m, q, HomBound::square(m.order().max(q.order())))?;
    let mut out = Vec::new();
    for act in actions(q, m)? {
        let valid: Vec<&GroupHom> = boundaries
            .iter()
            .filter(|d| is_precrossed(d, &act))
            .collect();
        // the trivial boundary always comes first; prefer spread over the list
        let picks: Vec<&GroupHom> = match valid.len() {
            0 => vec![],
            n if n <= per_action => valid,
            n => (0..per_action).map(|i| valid[i * (n - 1) / (per_action - 1).max(1)]).collect(),
        };
        for d in picks {
            if out.len() == limit {
                return Ok(out);
            }
            out.push(PreCrossedModule::new(d.clone(), act.clone())?);
        }
    }
    Ok(out)
}

fn is_precrossed(d: &GroupHom, act: &GroupAction) -> bool {
    let q = d.target();
    d.source()
        .elements()
        .all(|m| q.elements().all(|g| d.apply(act.act(m, g)) == q.conj(d.apply(m), g)))
}

/// `∂ = id`, action by conjugation.
pub fn conjugation_module(g: &GroupRef) -> PreCrossedModule {
    PreCrossedModule::new(GroupHom::identity(g), GroupAction::conjugation(g)).expect("conjugation module")
}

/// `g → 1`: the Peiffer commutator is the group commutator.
pub fn commutator_module(g: &GroupRef) -> PreCrossedModule {
    let one: GroupRef = Arc::new(FiniteGroup::trivial());
    PreCrossedModule::new(GroupHom::trivial(g, &one), GroupAction::trivial(&one, g)).expect("commutator module")
}

/// `Z/2 × Z/2 → Z/2`, `(a, b) ↦ a + b`, the generator swapping factors.
///
/// The smallest nil(2)-module that is not crossed.
pub fn swap_module() -> PreCrossedModule {
    let v4: GroupRef = Arc::new(FiniteGroup::abelian(&[2, 2]));
    let z2 = catalog::cyclic(2);
    let act = GroupAction::new(
        z2.clone(),
        v4.clone(),
        &[vec![0, 0], vec![1, 2], vec![2, 1], vec![3, 3]],
    )
    .expect("swap action");
    let d = GroupHom::new(v4, z2, vec![0, 1, 1, 0]).expect("sum map");
    PreCrossedModule::new(d, act).expect("swap module")
}

fn push_named(out: &mut Vec<Fixture>, name: String, pcm: PreCrossedModule) {
    out.push(Fixture { name, pcm });
}

/// The pre-crossed corpus: hand-picked modules of order up to 16 followed by
/// systematic enumeration over all pairs of catalogue groups of order
/// `≤ max_order`.
pub fn precrossed_corpus(max_order: usize, per_pair: usize) -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    push_named(&mut out, "swap".into(), swap_module());
    for name in ["D4", "Q8", "S3", "Z2xD4"] {
        if let Some(g) = find_group(name, max_order.max(16)) {
            push_named(&mut out, format!("commutator({name})"), commutator_module(&g.group));
        }
    }
    for name in ["S3", "D4", "Q8", "A4"] {
        if let Some(g) = find_group(name, max_order.max(12)) {
            push_named(&mut out, format!("conjugation({name})"), conjugation_module(&g.group));
        }
    }
    let groups = catalog::small_groups(max_order);
    for m in &groups {
        for q in &groups {
            for (i, pcm) in precrossed_modules(&m.group, &q.group, 2, per_pair)?
                .into_iter()
                .enumerate()
            {
                push_named(&mut out, format!("{}->{}#{i}", m.name, q.name), pcm);
            }
        }
    }
    Ok(out)
}

fn find_group(name: &str, max_order: usize) -> Option<NamedGroup> {
    catalog::small_groups(max_order).into_iter().find(|g| g.name == name)
}

/// Nil(2)-modules of the corpus.
pub fn nil2_fixtures(max_order: usize, per_pair: usize) -> Result<Vec<(String, Nil2Module)>> {
    Ok(precrossed_corpus(max_order, per_pair)?
        .into_iter()
        .filter_map(|f| Nil2Module::new(f.pcm).ok().map(|n| (f.name, n)))
        .collect())
}

/// Quadratic modules: `from_nil2` on every nil(2) fixture plus trivial-ω
/// complexes on crossed fixtures.
pub fn quadratic_fixtures(max_order: usize, per_pair: usize) -> Result<Vec<(String, QuadraticModule)>> {
    let mut out = Vec::new();
    for (name, n) in nil2_fixtures(max_order, per_pair)? {
        out.push((format!("from_nil2({name})"), from_nil2(&n)?));
        if n.precrossed().classify().is_crossed() {
            // C₂ = ker ∂₁ when ∂₁(C₁) acts trivially on it
            let kernel = n.boundary().kernel();
            let (k, incl) = kernel.embedding();
            let act = GroupAction::from_fn(n.target(), &k, |x, q| {
                let image = n.action().act(incl.apply(x), q);
                kernel.members().iter().position(|&y| y == image).expect("kernel is invariant")
            });
            if let (true, Ok(act)) = (k.is_abelian(), act) {
                if let Ok(q) = from_nil2_complex(&incl, &n, &act) {
                    out.push((format!("complex({name})"), q));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nil2::Classification;

    #[test]
    fn swap_module_is_nil2_not_crossed() {
        let pcm = swap_module();
        assert!(matches!(pcm.classify(), Classification::Nil2NotCrossed { .. }));
        assert_eq!(pcm.source().order(), 4);
    }

    #[test]
    fn actions_of_z2_on_v4() {
        let v4: GroupRef = Arc::new(FiniteGroup::abelian(&[2, 2]));
        // involutions of GL(2,2) ≅ S3 plus the identity
        assert_eq!(actions(&catalog::cyclic(2), &v4).unwrap().len(), 4);
    }

    #[test]
    fn small_corpus_is_deterministic() {
        let a = precrossed_corpus(4, 3).unwrap();
        let b = precrossed_corpus(4, 3).unwrap();
        assert_eq!(a.len(), b.len());
        assert!(a.iter().zip(&b).all(|(x, y)| x.name == y.name && x.pcm == y.pcm));
    }
}
