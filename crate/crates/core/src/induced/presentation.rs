//! The presentation `F(M × Q)/S` of an induced module and its realization by
//! coset enumeration.

use std::fmt::Write as _;

use serde::Serialize;

use crate::action::GroupAction;
use crate::coset::{enumerate_cosets, CosetLimits, Enumeration, Letter, Presentation, PresentedGroup};
use crate::error::{Error, Result};
use crate::group::GroupRef;
use crate::hom::GroupHom;
use crate::nil2::Nil2Module;
use crate::quadratic::QuadraticModule;

/// Relator families of the induced presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum RelatorFamily {
    /// `(x,q)(x',q)(xx',q)⁻¹`
    Product,
    /// `(x^p,q)(x,f(p)q)⁻¹`
    Transfer,
    /// `(l,q)^{(m,q)}(l^m,q)⁻¹`, the middle level acting through its boundary
    Crossing,
    /// `(l,q)^{q'}(l,qq')⁻¹`, trivial in the free group once the action rule
    /// is imposed
    Shift,
}

impl RelatorFamily {
    pub fn name(self) -> &'static str {
        match self {
            RelatorFamily::Product => "product",
            RelatorFamily::Transfer => "transfer",
            RelatorFamily::Crossing => "crossing",
            RelatorFamily::Shift => "shift",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Relator {
    pub family: RelatorFamily,
    pub word: Vec<Letter>,
}

/// Generators `(x, q)` indexed by `x·|Q| + q`, relators, and the action rule
/// `(x, q)^{q'} = (x, qq')`.
#[derive(Clone, Debug)]
pub struct InducedPresentation {
    carrier: GroupRef,
    actor: GroupRef,
    relators: Vec<Relator>,
    /// `μ̄((m,q)) = q⁻¹ f∂(m) q` per generator, for the middle level.
    boundary_images: Option<Vec<usize>>,
}

impl InducedPresentation {
    pub fn carrier(&self) -> &GroupRef {
        &self.carrier
    }

    pub fn actor(&self) -> &GroupRef {
        &self.actor
    }

    pub fn generator_count(&self) -> usize {
        self.carrier.order() * self.actor.order()
    }

    pub fn generator(&self, x: usize, q: usize) -> usize {
        x * self.actor.order() + q
    }

    /// `(x, q)` of a generator index.
    pub fn pair(&self, g: usize) -> (usize, usize) {
        (g / self.actor.order(), g % self.actor.order())
    }

    pub fn generators(&self) -> Vec<(usize, usize)> {
        (0..self.generator_count()).map(|g| self.pair(g)).collect()
    }

    pub fn relators(&self) -> &[Relator] {
        &self.relators
    }

    pub fn boundary_images(&self) -> Option<&[usize]> {
        self.boundary_images.as_deref()
    }

    /// The action rule on generators.
    pub fn shift(&self, g: usize, q2: usize) -> usize {
        let (x, q) = self.pair(g);
        self.generator(x, self.actor.mul(q, q2))
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            generators: self.generator_count(),
            relators: self.relators.iter().map(|r| r.word.clone()).collect(),
        }
    }

    pub fn family_count(&self, family: RelatorFamily) -> usize {
        self.relators.iter().filter(|r| r.family == family).count()
    }

    /// Text listing: a header, one line per generator, one line per relator.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "presentation carrier={} actor={}", self.carrier.order(), self.actor.order());
        let _ = writeln!(s, "generators {}", self.generator_count());
        for g in 0..self.generator_count() {
            let (x, q) = self.pair(g);
            let _ = writeln!(s, "g{g} = ({x},{q})");
        }
        let _ = writeln!(s, "relators {}", self.relators.len());
        for r in &self.relators {
            let letters: Vec<String> = r
                .word
                .iter()
                .map(|l| {
                    if l.inverse {
                        format!("g{}^-1", l.generator)
                    } else {
                        format!("g{}", l.generator)
                    }
                })
                .collect();
            let _ = writeln!(s, "{}: {}", r.family.name(), letters.join(" "));
        }
        s
    }
}

/// `f_*(M) = F(M × Q)/S` for a nil(2)-module `∂: M → P` and `f: P → Q`.
pub fn induced_presentation(n: &Nil2Module, f: &GroupHom) -> Result<InducedPresentation> {
    if f.source() != n.target() {
        return Err(Error::TypeMismatch("f must start at the base of the module".into()));
    }
    let (m, p, q) = (n.source(), n.target(), f.target());
    let mut pres = InducedPresentation {
        carrier: m.clone(),
        actor: q.clone(),
        relators: Vec::new(),
        boundary_images: None,
    };
    push_product_and_transfer(&mut pres, p, f, |x, pp| n.action().act(x, pp));
    let images = pres
        .generators()
        .into_iter()
        .map(|(x, qq)| q.conj(f.apply(n.boundary().apply(x)), qq))
        .collect();
    pres.boundary_images = Some(images);
    Ok(pres)
}

/// `φ_*(L) = F(L × Q)/S'` for the top level of a quadratic module.
///
/// The transfer family is `(l^p, q)(l, φ(p)q)⁻¹`, the same shape as for `S`.
pub fn induced_presentation_top(qm: &QuadraticModule, phi: &GroupHom) -> Result<InducedPresentation> {
    if phi.source() != qm.c0() {
        return Err(Error::TypeMismatch("phi must start at C0".into()));
    }
    let (l, m, p, q) = (qm.c2(), qm.c1(), qm.c0(), phi.target());
    let mut pres = InducedPresentation {
        carrier: l.clone(),
        actor: q.clone(),
        relators: Vec::new(),
        boundary_images: None,
    };
    for x in l.elements() {
        for y in m.elements() {
            let d = qm.d1().apply(y);
            for qq in q.elements() {
                let word = vec![
                    Letter::gen(pres.generator(x, q.mul(phi.apply(d), qq))),
                    Letter::inv(pres.generator(qm.act2().act(x, d), qq)),
                ];
                pres.relators.push(Relator {
                    family: RelatorFamily::Crossing,
                    word,
                });
            }
        }
    }
    push_product_and_transfer(&mut pres, p, phi, |x, pp| qm.act2().act(x, pp));
    for x in l.elements() {
        for qq in q.elements() {
            for q2 in q.elements() {
                let g = pres.generator(x, q.mul(qq, q2));
                pres.relators.push(Relator {
                    family: RelatorFamily::Shift,
                    word: vec![Letter::gen(pres.shift(pres.generator(x, qq), q2)), Letter::inv(g)],
                });
            }
        }
    }
    Ok(pres)
}

fn push_product_and_transfer(
    pres: &mut InducedPresentation,
    p: &GroupRef,
    f: &GroupHom,
    act: impl Fn(usize, usize) -> usize,
) {
    let (m, q) = (pres.carrier.clone(), pres.actor.clone());
    for x in m.elements() {
        for y in m.elements() {
            for qq in q.elements() {
                let word = vec![
                    Letter::gen(pres.generator(x, qq)),
                    Letter::gen(pres.generator(y, qq)),
                    Letter::inv(pres.generator(m.mul(x, y), qq)),
                ];
                pres.relators.push(Relator {
                    family: RelatorFamily::Product,
                    word,
                });
            }
        }
    }
    for x in m.elements() {
        for pp in p.elements() {
            for qq in q.elements() {
                let word = vec![
                    Letter::gen(pres.generator(act(x, pp), qq)),
                    Letter::inv(pres.generator(x, q.mul(f.apply(pp), qq))),
                ];
                pres.relators.push(Relator {
                    family: RelatorFamily::Transfer,
                    word,
                });
            }
        }
    }
}

/// A presented group with the structure transported from the generators:
/// the `Q`-action, the boundary when present, and `x ↦ (x, 1)`.
#[derive(Clone, Debug)]
pub struct RealizedPresentation {
    pub presented: PresentedGroup,
    pub action: GroupAction,
    pub boundary: Option<GroupHom>,
    pub unit: GroupHom,
}

impl RealizedPresentation {
    pub fn group(&self) -> &GroupRef {
        &self.presented.group
    }
}

#[derive(Clone, Debug)]
pub enum Realization {
    Finite(Box<RealizedPresentation>),
    Unbounded { cosets_defined: usize },
}

/// Runs coset enumeration and checks that the action rule and the boundary
/// descend to the presented group.
pub fn enumerate_presentation_quotient(
    pres: &InducedPresentation,
    limits: CosetLimits,
) -> Result<Realization> {
    let presented = match enumerate_cosets(&pres.presentation(), limits)? {
        Enumeration::Finite(g) => g,
        Enumeration::Unbounded { cosets_defined } => return Ok(Realization::Unbounded { cosets_defined }),
    };
    let g = presented.group.clone();
    let q = pres.actor();
    let imgs = &presented.generator_images;
    let mut table = Vec::with_capacity(g.order() * q.order());
    for c in g.elements() {
        for q2 in q.elements() {
            let shifted: Vec<usize> = (0..pres.generator_count()).map(|k| imgs[pres.shift(k, q2)]).collect();
            table.push(PresentedGroup::evaluate_in(&g, &shifted, &presented.words[c]));
        }
    }
    let action = GroupAction::from_fn(q, &g, |c, q2| table[c * q.order() + q2])?;
    for k in 0..pres.generator_count() {
        for q2 in q.elements() {
            if action.act(imgs[k], q2) != imgs[pres.shift(k, q2)] {
                return Err(Error::NotWellDefined(format!(
                    "action rule does not descend at generator {k}, q={q2}"
                )));
            }
        }
    }
    let boundary = match pres.boundary_images() {
        None => None,
        Some(b) => {
            let map = g
                .elements()
                .map(|c| PresentedGroup::evaluate_in(q, b, &presented.words[c]))
                .collect();
            let hom = GroupHom::new(g.clone(), q.clone(), map)?;
            if let Some(k) = (0..pres.generator_count()).find(|&k| hom.apply(imgs[k]) != b[k]) {
                return Err(Error::NotWellDefined(format!("boundary does not descend at generator {k}")));
            }
            Some(hom)
        }
    };
    let unit_map = pres
        .carrier()
        .elements()
        .map(|x| imgs[pres.generator(x, q.identity())])
        .collect();
    let unit = GroupHom::new(pres.carrier().clone(), g.clone(), unit_map)?;
    Ok(Realization::Finite(Box::new(RealizedPresentation {
        presented,
        action,
        boundary,
        unit,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::nil2::PreCrossedModule;

    fn identity_module(order: usize) -> Nil2Module {
        let z = catalog::cyclic(order);
        let pcm = PreCrossedModule::new(GroupHom::identity(&z), GroupAction::conjugation(&z)).unwrap();
        Nil2Module::new(pcm).unwrap()
    }

    #[test]
    fn families_are_complete() {
        let n = identity_module(4);
        let z2 = catalog::cyclic(2);
        let f = GroupHom::new(n.target().clone(), z2, vec![0, 1, 0, 1]).unwrap();
        let pres = induced_presentation(&n, &f).unwrap();
        assert_eq!(pres.generator_count(), 8);
        assert_eq!(pres.family_count(RelatorFamily::Product), 4 * 4 * 2);
        assert_eq!(pres.family_count(RelatorFamily::Transfer), 4 * 4 * 2);
        assert!(pres.dump().contains("g7 = (3,1)"));
    }

    #[test]
    fn z4_over_z2_realizes_z4() {
        let n = identity_module(4);
        let z2 = catalog::cyclic(2);
        let f = GroupHom::new(n.target().clone(), z2, vec![0, 1, 0, 1]).unwrap();
        let pres = induced_presentation(&n, &f).unwrap();
        let Realization::Finite(r) = enumerate_presentation_quotient(&pres, CosetLimits::default()).unwrap() else {
            panic!("finite")
        };
        assert_eq!(r.group().order(), 4);
        assert!(r.unit.is_iso());
        assert_eq!(r.boundary.as_ref().unwrap().image().order(), 2);
    }

    #[test]
    fn identity_and_trivial_quotients() {
        let n = identity_module(3);
        let id = GroupHom::identity(n.target());
        let pres = induced_presentation(&n, &id).unwrap();
        let Realization::Finite(r) = enumerate_presentation_quotient(&pres, CosetLimits::default()).unwrap() else {
            panic!("finite")
        };
        assert!(r.unit.is_iso());
        // conjugation is trivial on Z/3, so M/[P,M] = M
        let one = catalog::cyclic(1);
        let to_one = GroupHom::trivial(n.target(), &one);
        let pres = induced_presentation(&n, &to_one).unwrap();
        let Realization::Finite(r) = enumerate_presentation_quotient(&pres, CosetLimits::default()).unwrap() else {
            panic!("finite")
        };
        assert_eq!(r.group().order(), 3);
    }

    #[test]
    fn mono_with_two_cosets_is_unbounded() {
        let n = identity_module(2);
        let v4 = catalog::small_groups(4).into_iter().find(|g| g.name == "Z2xZ2").unwrap().group;
        let incl = GroupHom::new(n.target().clone(), v4, vec![0, 1]).unwrap();
        let pres = induced_presentation(&n, &incl).unwrap();
        let limits = CosetLimits {
            max_cosets: 2_000,
            max_order: 64,
        };
        assert!(matches!(
            enumerate_presentation_quotient(&pres, limits).unwrap(),
            Realization::Unbounded { .. }
        ));
    }
}
