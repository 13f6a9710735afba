//! Quadratic modules `C₂ → C₁ → C₀` with quadratic map `ω: C ⊗ C → C₂`.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::abelian::{tensor_square, TensorSquare};
use crate::action::GroupAction;
use crate::error::{ComplexCondition, Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::hom::{enumerate_homs, GroupHom, HomBound};
use crate::nil2::{
    check_nil2_morphism, classify, induced_on_base, peiffer_pairing, quadratic_base,
    Classification, Nil2Module, PreCrossedModule, QuadraticBase,
};

/// Witnesses recorded per axiom before the rest are only counted.
pub const WITNESS_CAP: usize = 10;

/// Unverified quadratic module data. `omega_pairs[x * |C₁| + y]` is
/// `ω({x} ⊗ {y})`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticCandidate {
    pub d1: GroupHom,
    pub d2: GroupHom,
    pub act1: GroupAction,
    pub act2: GroupAction,
    pub omega_pairs: Vec<usize>,
}

impl QuadraticCandidate {
    pub fn c0(&self) -> &GroupRef {
        self.d1.target()
    }

    pub fn c1(&self) -> &GroupRef {
        self.d1.source()
    }

    pub fn c2(&self) -> &GroupRef {
        self.d2.source()
    }

    /// `ω({x} ⊗ {y})`
    pub fn omega(&self, x: usize, y: usize) -> usize {
        self.omega_pairs[x * self.c1().order() + y]
    }

    pub(crate) fn check_types(&self) -> Result<()> {
        let ok = self.d2.target() == self.c1()
            && self.act1.actor() == self.c0()
            && self.act1.carrier() == self.c1()
            && self.act2.actor() == self.c0()
            && self.act2.carrier() == self.c2();
        if !ok {
            return Err(Error::TypeMismatch(
                "levels of d1, d2, act1, act2 do not fit together".into(),
            ));
        }
        let n = self.c1().order();
        if self.omega_pairs.len() != n * n {
            return Err(Error::MalformedTable(format!(
                "omega table has {} entries, expected {}",
                self.omega_pairs.len(),
                n * n
            )));
        }
        if let Some(&bad) = self.omega_pairs.iter().find(|&&v| v >= self.c2().order()) {
            return Err(Error::MalformedTable(format!("omega value {bad} out of range")));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AxiomStatus {
    Pass,
    Fail,
    NotEvaluated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub condition: String,
    pub elements: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: AxiomStatus,
    pub failures: usize,
    pub witnesses: Vec<Witness>,
}

impl AxiomResult {
    fn new(axiom: &str) -> Self {
        AxiomResult {
            axiom: axiom.to_string(),
            status: AxiomStatus::Pass,
            failures: 0,
            witnesses: Vec::new(),
        }
    }

    fn skipped(axiom: &str) -> Self {
        AxiomResult {
            status: AxiomStatus::NotEvaluated,
            ..AxiomResult::new(axiom)
        }
    }

    fn fail(&mut self, condition: &str, elements: &[usize]) {
        self.status = AxiomStatus::Fail;
        self.failures += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(Witness {
                condition: condition.to_string(),
                elements: elements.to_vec(),
            });
        }
    }
}

/// Per-axiom outcome of a verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub axioms: Vec<AxiomResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(|a| a.status == AxiomStatus::Pass)
    }

    pub fn axiom(&self, name: &str) -> Option<&AxiomResult> {
        self.axioms.iter().find(|a| a.axiom == name)
    }

    pub fn failed_axioms(&self) -> Vec<&str> {
        self.axioms
            .iter()
            .filter(|a| a.status == AxiomStatus::Fail)
            .map(|a| a.axiom.as_str())
            .collect()
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in &self.axioms {
            let status = match a.status {
                AxiomStatus::Pass => "pass",
                AxiomStatus::Fail => "FAIL",
                AxiomStatus::NotEvaluated => "not evaluated",
            };
            writeln!(f, "{}: {}", a.axiom, status)?;
            for w in &a.witnesses {
                writeln!(f, "  {} at {:?}", w.condition, w.elements)?;
            }
            if a.failures > a.witnesses.len() {
                writeln!(f, "  ... {} failures in total", a.failures)?;
            }
        }
        Ok(())
    }
}

/// A verified quadratic module.
#[derive(Clone, Debug)]
pub struct QuadraticModule {
    data: QuadraticCandidate,
    pcm: PreCrossedModule,
    base: QuadraticBase,
    tensor: TensorSquare,
    omega: GroupHom,
    w: GroupHom,
}

impl PartialEq for QuadraticModule {
    fn eq(&self, other: &Self) -> bool {
        self.data == other.data
    }
}

impl QuadraticModule {
    pub fn candidate(&self) -> &QuadraticCandidate {
        &self.data
    }

    pub fn into_candidate(self) -> QuadraticCandidate {
        self.data
    }

    pub fn c0(&self) -> &GroupRef {
        self.data.c0()
    }

    pub fn c1(&self) -> &GroupRef {
        self.data.c1()
    }

    pub fn c2(&self) -> &GroupRef {
        self.data.c2()
    }

    pub fn d1(&self) -> &GroupHom {
        &self.data.d1
    }

    pub fn d2(&self) -> &GroupHom {
        &self.data.d2
    }

    pub fn act1(&self) -> &GroupAction {
        &self.data.act1
    }

    pub fn act2(&self) -> &GroupAction {
        &self.data.act2
    }

    pub fn base(&self) -> &QuadraticBase {
        &self.base
    }

    pub fn tensor(&self) -> &TensorSquare {
        &self.tensor
    }

    /// `ω` as a homomorphism out of `C ⊗ C`.
    pub fn omega(&self) -> &GroupHom {
        &self.omega
    }

    /// `ω({x} ⊗ {y})` for `x, y ∈ C₁`.
    pub fn omega_pair(&self, x: usize, y: usize) -> usize {
        self.data.omega(x, y)
    }

    /// The Peiffer pairing `w: C ⊗ C → C₁`.
    pub fn peiffer_pairing(&self) -> &GroupHom {
        &self.w
    }

    pub fn nil2(&self) -> Nil2Module {
        Nil2Module::new(self.pcm.clone()).expect("verified under QM1")
    }

    pub fn precrossed(&self) -> &PreCrossedModule {
        &self.pcm
    }

    pub fn omega_is_trivial(&self) -> bool {
        self.omega.is_trivial()
    }

    /// `[|C₂|, |C₁|, |C₀|]`
    pub fn order_profile(&self) -> [usize; 3] {
        [self.c2().order(), self.c1().order(), self.c0().order()]
    }

    /// The quadratic module with all three levels trivial except `C₀`.
    pub fn trivial(c0: &GroupRef) -> QuadraticModule {
        let one: GroupRef = Arc::new(FiniteGroup::trivial());
        let cand = QuadraticCandidate {
            d1: GroupHom::trivial(&one, c0),
            d2: GroupHom::trivial(&one, &one),
            act1: GroupAction::trivial(c0, &one),
            act2: GroupAction::trivial(c0, &one),
            omega_pairs: vec![0],
        };
        verify_quadratic(cand).expect("trivial module verifies")
    }
}

/// Verifies QM1–QM4, returning the module or an `AxiomFailure` carrying the
/// full report.
pub fn verify_quadratic(candidate: QuadraticCandidate) -> Result<QuadraticModule> {
    let (report, module) = check_quadratic(candidate)?;
    match module {
        Some(m) if report.passed() => Ok(m),
        _ => Err(Error::AxiomFailure(Box::new(report))),
    }
}

/// Evaluates every axiom, collecting witnesses. Type errors are returned
/// directly; axiom failures only appear in the report.
pub fn check_quadratic(
    candidate: QuadraticCandidate,
) -> Result<(VerificationReport, Option<QuadraticModule>)> {
    candidate.check_types()?;
    let c0 = candidate.c0().clone();
    let c1 = candidate.c1().clone();
    let c2 = candidate.c2().clone();
    let (d1, d2) = (&candidate.d1, &candidate.d2);
    let (act1, act2) = (&candidate.act1, &candidate.act2);

    let mut qm1 = AxiomResult::new("QM1");
    for x in c1.elements() {
        for q in c0.elements() {
            if d1.apply(act1.act(x, q)) != c0.conj(d1.apply(x), q) {
                qm1.fail("d1(x^q) != q^-1 d1(x) q", &[x, q]);
            }
        }
    }
    let mut parts = None;
    if qm1.status == AxiomStatus::Pass {
        let pcm = PreCrossedModule::new(d1.clone(), act1.clone())?;
        record_nil2_failures(&pcm, &mut qm1);
        if qm1.status == AxiomStatus::Pass {
            let base = quadratic_base(&pcm)?;
            let tensor = tensor_square(base.decomposition());
            match peiffer_pairing(&pcm, &base, &tensor) {
                Ok(w) => parts = Some((pcm, base, tensor, w)),
                Err(e) => qm1.fail(&format!("Peiffer pairing: {e}"), &[]),
            }
        }
    }
    let Some((pcm, base, tensor, w)) = parts else {
        let report = VerificationReport {
            axioms: vec![
                qm1,
                AxiomResult::skipped("QM2"),
                AxiomResult::skipped("QM3"),
                AxiomResult::skipped("QM4"),
            ],
        };
        return Ok((report, None));
    };

    let om = |x: usize, y: usize| candidate.omega(x, y);
    let mut qm2 = AxiomResult::new("QM2");
    for a in c2.elements() {
        if d1.apply(d2.apply(a)) != c0.identity() {
            qm2.fail("d1 d2 (a) != 1", &[a]);
        }
    }
    let omega = omega_on_tensor(&candidate, &base, &tensor, &mut qm2);
    for x in c1.elements() {
        for y in c1.elements() {
            if d2.apply(om(x, y)) != pcm.peiffer(x, y) {
                qm2.fail("d2 omega({x}(x){y}) != <x,y>", &[x, y]);
            }
        }
    }

    let mut qm3 = AxiomResult::new("QM3");
    for a in c2.elements() {
        for q in c0.elements() {
            if d2.apply(act2.act(a, q)) != act1.act(d2.apply(a), q) {
                qm3.fail("d2(a^q) != d2(a)^q", &[a, q]);
            }
        }
    }
    for x in c1.elements() {
        for y in c1.elements() {
            for q in c0.elements() {
                if om(act1.act(x, q), act1.act(y, q)) != act2.act(om(x, y), q) {
                    qm3.fail("omega({x^q}(x){y^q}) != omega({x}(x){y})^q", &[x, y, q]);
                }
            }
        }
    }
    for a in c2.elements() {
        let da = d2.apply(a);
        for x in c1.elements() {
            let lhs = act2.act(a, d1.apply(x));
            let rhs = c2.mul(c2.mul(om(x, da), om(da, x)), a);
            if lhs != rhs {
                qm3.fail("a^{d1 x} != omega(({x}(x){d2 a})({d2 a}(x){x})) a", &[a, x]);
            }
        }
    }

    let mut qm4 = AxiomResult::new("QM4");
    for a in c2.elements() {
        for b in c2.elements() {
            if om(d2.apply(a), d2.apply(b)) != c2.commutator(b, a) {
                qm4.fail("omega({d2 a}(x){d2 b}) != [b,a]", &[a, b]);
            }
        }
    }

    let report = VerificationReport {
        axioms: vec![qm1, qm2, qm3, qm4],
    };
    let module = match omega {
        Some(omega) if report.passed() => Some(QuadraticModule {
            data: candidate,
            pcm,
            base,
            tensor,
            omega,
            w,
        }),
        _ => None,
    };
    Ok((report, module))
}

fn record_nil2_failures(pcm: &PreCrossedModule, qm1: &mut AxiomResult) {
    let m = pcm.source();
    let e = m.identity();
    if let Classification::NotNil2 { .. } = classify(pcm) {
        for (&p, &(x, y)) in &pcm.peiffer_values() {
            for z in m.elements() {
                if pcm.peiffer(p, z) != e {
                    qm1.fail("<<x,y>,z> != 1", &[x, y, z]);
                }
                if pcm.peiffer(z, p) != e {
                    qm1.fail("<z,<x,y>> != 1", &[z, x, y]);
                }
            }
        }
    }
}

/// `ω` as a homomorphism on `C ⊗ C`, or `None` (with QM2 witnesses) if the
/// pairs table does not factor.
fn omega_on_tensor(
    cand: &QuadraticCandidate,
    base: &QuadraticBase,
    tensor: &TensorSquare,
    qm2: &mut AxiomResult,
) -> Option<GroupHom> {
    let c1 = cand.c1();
    let mut ok = true;
    for x in c1.elements() {
        for y in c1.elements() {
            let (rx, ry) = (
                base.representative(base.class(x)),
                base.representative(base.class(y)),
            );
            if cand.omega(x, y) != cand.omega(rx, ry) {
                qm2.fail("omega depends on representatives", &[x, y, rx, ry]);
                ok = false;
            }
        }
    }
    if !ok {
        return None;
    }
    let k = base.decomposition().rank();
    let gens = base.decomposition().generators();
    let images: Vec<usize> = (0..k * k)
        .map(|r| cand.omega(base.representative(gens[r / k]), base.representative(gens[r % k])))
        .collect();
    let omega = match tensor.hom_from_basis_images(cand.c2(), &images) {
        Ok(h) => h,
        Err(_) => {
            qm2.fail("omega does not extend to a homomorphism on C(x)C", &[]);
            return None;
        }
    };
    for x in c1.elements() {
        for y in c1.elements() {
            if omega.apply(tensor.tensor(base.class(x), base.class(y))) != cand.omega(x, y) {
                qm2.fail("omega is not bilinear", &[x, y]);
                ok = false;
            }
        }
    }
    ok.then_some(omega)
}

/// The quadratic module `C⊗C --w--> M --∂--> Q` with `ω = 1`.
pub fn from_nil2(n: &Nil2Module) -> Result<QuadraticModule> {
    let pcm = n.precrossed();
    let base = quadratic_base(pcm)?;
    let tensor = tensor_square(base.decomposition());
    let w = peiffer_pairing(pcm, &base, &tensor)?;
    let act2 = tensor.induced_action(base.action())?;
    let m = n.source();
    let mut omega_pairs = Vec::with_capacity(m.order() * m.order());
    for x in m.elements() {
        for y in m.elements() {
            omega_pairs.push(tensor.tensor(base.class(x), base.class(y)));
        }
    }
    verify_quadratic(QuadraticCandidate {
        d1: n.boundary().clone(),
        d2: w,
        act1: n.action().clone(),
        act2,
        omega_pairs,
    })
}

/// A complex `C₂ → C₁ → C₀` turned into a quadratic module with trivial `ω`.
///
/// Condition (i) asks for a trivial Peiffer pairing: `∂₂ω = w` with `ω = 1`
/// leaves no other option.
pub fn from_nil2_complex(d2: &GroupHom, n: &Nil2Module, act2: &GroupAction) -> Result<QuadraticModule> {
    use ComplexCondition::*;
    let (c0, c1, c2) = (n.target(), n.source(), d2.source());
    if d2.target() != c1 || act2.carrier() != c2 || act2.actor() != c0 {
        return Err(Error::TypeMismatch("complex levels do not fit together".into()));
    }
    if let Classification::Nil2NotCrossed { witness: (x, y) } = classify(n.precrossed()) {
        return Err(Error::PreconditionFailure {
            condition: I,
            detail: format!("Peiffer commutator <{x},{y}> is nontrivial, so w cannot lift through a trivial omega"),
        });
    }
    if let Some((a, b)) = c2.noncommuting_pair() {
        return Err(Error::PreconditionFailure {
            condition: II,
            detail: format!("C2 is not abelian: {a} and {b} do not commute"),
        });
    }
    for a in c2.elements() {
        for x in c1.elements() {
            if act2.act(a, n.boundary().apply(x)) != a {
                return Err(Error::PreconditionFailure {
                    condition: II,
                    detail: format!("d1({x}) acts nontrivially on {a}"),
                });
            }
        }
        for q in c0.elements() {
            if d2.apply(act2.act(a, q)) != n.action().act(d2.apply(a), q) {
                return Err(Error::PreconditionFailure {
                    condition: II,
                    detail: format!("d2 is not equivariant at a={a}, q={q}"),
                });
            }
        }
    }
    for a in c2.elements() {
        if n.boundary().apply(d2.apply(a)) != c0.identity() {
            return Err(Error::PreconditionFailure {
                condition: III,
                detail: format!("d1 d2 ({a}) != 1"),
            });
        }
    }
    verify_quadratic(QuadraticCandidate {
        d1: n.boundary().clone(),
        d2: d2.clone(),
        act1: n.action().clone(),
        act2: act2.clone(),
        omega_pairs: vec![c2.identity(); c1.order() * c1.order()],
    })
}

/// A crossed complex of length 2, each property re-checked on construction.
#[derive(Clone, Debug, PartialEq)]
pub struct CrossedComplex {
    pub d1: GroupHom,
    pub d2: GroupHom,
    pub act1: GroupAction,
    pub act2: GroupAction,
}

pub fn to_crossed_complex(q: &QuadraticModule) -> Result<CrossedComplex> {
    if let Some(t) = q.tensor().product().elements().find(|&t| q.omega().apply(t) != q.c2().identity()) {
        return Err(Error::OmegaNotTrivial { element: t });
    }
    let pcm = q.precrossed();
    for x in q.c1().elements() {
        for y in q.c1().elements() {
            if pcm.peiffer(x, y) != q.c1().identity() {
                return Err(Error::DerivedPropertyFailure(format!(
                    "Peiffer identity fails at ({x}, {y})"
                )));
            }
        }
    }
    if let Some((a, b)) = q.c2().noncommuting_pair() {
        return Err(Error::DerivedPropertyFailure(format!(
            "C2 is not abelian: {a}, {b}"
        )));
    }
    for a in q.c2().elements() {
        if q.d1().apply(q.d2().apply(a)) != q.c0().identity() {
            return Err(Error::DerivedPropertyFailure(format!("d1 d2 ({a}) != 1")));
        }
        for x in q.c1().elements() {
            if q.act2().act(a, q.d1().apply(x)) != a {
                return Err(Error::DerivedPropertyFailure(format!(
                    "d1({x}) acts nontrivially on {a}"
                )));
            }
        }
    }
    Ok(CrossedComplex {
        d1: q.d1().clone(),
        d2: q.d2().clone(),
        act1: q.act1().clone(),
        act2: q.act2().clone(),
    })
}

/// `(f₂, f₁, f₀)` between quadratic modules, with the induced `φ_*: C → C'`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadraticMorphism {
    pub f0: GroupHom,
    pub f1: GroupHom,
    pub f2: GroupHom,
    pub induced: GroupHom,
}

impl QuadraticMorphism {
    pub fn new(
        source: &QuadraticModule,
        target: &QuadraticModule,
        f0: GroupHom,
        f1: GroupHom,
        f2: GroupHom,
    ) -> Result<QuadraticMorphism> {
        check_quadratic_morphism(source, target, &f0, &f1, &f2)?;
        let induced = induced_on_base(&f1, source.base(), target.base())?;
        Ok(QuadraticMorphism { f0, f1, f2, induced })
    }

    pub fn identity(q: &QuadraticModule) -> QuadraticMorphism {
        QuadraticMorphism {
            f0: GroupHom::identity(q.c0()),
            f1: GroupHom::identity(q.c1()),
            f2: GroupHom::identity(q.c2()),
            induced: GroupHom::identity(q.base().group()),
        }
    }

    /// `next ∘ self`, re-verified between the outer modules.
    pub fn compose(
        &self,
        next: &QuadraticMorphism,
        source: &QuadraticModule,
        target: &QuadraticModule,
    ) -> Result<QuadraticMorphism> {
        QuadraticMorphism::new(
            source,
            target,
            self.f0.then(&next.f0)?,
            self.f1.then(&next.f1)?,
            self.f2.then(&next.f2)?,
        )
    }

    fn key(&self) -> (&[usize], &[usize], &[usize]) {
        (self.f0.map(), self.f1.map(), self.f2.map())
    }
}

pub fn check_quadratic_morphism(
    source: &QuadraticModule,
    target: &QuadraticModule,
    f0: &GroupHom,
    f1: &GroupHom,
    f2: &GroupHom,
) -> Result<()> {
    if f2.source() != source.c2() || f2.target() != target.c2() {
        return Err(Error::TypeMismatch("f2 levels do not match".into()));
    }
    check_nil2_morphism(source.precrossed(), target.precrossed(), f1, f0)?;
    check_top_level(source, target, f0, f1, f2)
}

fn check_top_level(
    source: &QuadraticModule,
    target: &QuadraticModule,
    f0: &GroupHom,
    f1: &GroupHom,
    f2: &GroupHom,
) -> Result<()> {
    for a in source.c2().elements() {
        if target.d2().apply(f2.apply(a)) != f1.apply(source.d2().apply(a)) {
            return Err(Error::NotMorphism(format!("d2 square fails at a={a}")));
        }
        for q in source.c0().elements() {
            if f2.apply(source.act2().act(a, q)) != target.act2().act(f2.apply(a), f0.apply(q)) {
                return Err(Error::NotMorphism(format!("f2 not equivariant at a={a}, q={q}")));
            }
        }
    }
    for x in source.c1().elements() {
        for y in source.c1().elements() {
            if f2.apply(source.omega_pair(x, y)) != target.omega_pair(f1.apply(x), f1.apply(y)) {
                return Err(Error::NotMorphism(format!("omega square fails at ({x}, {y})")));
            }
        }
    }
    Ok(())
}

/// All quadratic morphisms `source → target`, optionally with `f₀` fixed,
/// sorted by their level maps.
pub fn enumerate_quadratic_morphisms(
    source: &QuadraticModule,
    target: &QuadraticModule,
    fixed_f0: Option<&GroupHom>,
    bound: HomBound,
) -> Result<Vec<QuadraticMorphism>> {
    let f0s = match fixed_f0 {
        Some(f) => vec![f.clone()],
        None => enumerate_homs(source.c0(), target.c0(), bound)?,
    };
    let f1s = enumerate_homs(source.c1(), target.c1(), bound)?;
    let f2s = enumerate_homs(source.c2(), target.c2(), bound)?;
    let (sp, tp) = (source.precrossed(), target.precrossed());
    let mut out = Vec::new();
    for f0 in &f0s {
        for f1 in &f1s {
            if check_nil2_morphism(sp, tp, f1, f0).is_err() {
                continue;
            }
            for f2 in &f2s {
                if check_top_level(source, target, f0, f1, f2).is_ok() {
                    let induced = induced_on_base(f1, source.base(), target.base())?;
                    out.push(QuadraticMorphism {
                        f0: f0.clone(),
                        f1: f1.clone(),
                        f2: f2.clone(),
                        induced,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| a.key().cmp(&b.key()));
    Ok(out)
}

/// Level-wise isomorphism test: some morphism with all three levels bijective.
pub fn find_isomorphism(
    a: &QuadraticModule,
    b: &QuadraticModule,
    bound: HomBound,
) -> Result<Option<QuadraticMorphism>> {
    if a.order_profile() != b.order_profile() {
        return Ok(None);
    }
    Ok(enumerate_quadratic_morphisms(a, b, None, bound)?
        .into_iter()
        .find(|m| m.f0.is_iso() && m.f1.is_iso() && m.f2.is_iso()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn one() -> GroupRef {
        Arc::new(FiniteGroup::trivial())
    }

    #[test]
    fn trivial_module_verifies() {
        let q = QuadraticModule::trivial(&catalog::symmetric(3));
        assert!(q.omega_is_trivial());
        assert!(to_crossed_complex(&q).is_ok());
    }

    #[test]
    fn nonabelian_top_with_trivial_omega_fails_qm4_only() {
        let s3 = catalog::symmetric(3);
        let e = one();
        let cand = QuadraticCandidate {
            d1: GroupHom::trivial(&e, &e),
            d2: GroupHom::trivial(&s3, &e),
            act1: GroupAction::trivial(&e, &e),
            act2: GroupAction::trivial(&e, &s3),
            omega_pairs: vec![0],
        };
        let Err(Error::AxiomFailure(report)) = verify_quadratic(cand) else {
            panic!("expected axiom failure");
        };
        assert_eq!(report.failed_axioms(), vec!["QM4"]);
        let qm4 = report.axiom("QM4").unwrap();
        assert!(qm4.witnesses.len() <= WITNESS_CAP);
        assert!(qm4.failures > 0);
    }

    #[test]
    fn from_nil2_of_commutator_module() {
        let d4 = catalog::dihedral(4);
        let e = one();
        let pcm = PreCrossedModule::new(GroupHom::trivial(&d4, &e), GroupAction::trivial(&e, &d4)).unwrap();
        let n = Nil2Module::new(pcm).unwrap();
        let q = from_nil2(&n).unwrap();
        assert_eq!(q.c2().order(), 16);
        assert!(!q.d2().is_trivial());
        assert!(matches!(to_crossed_complex(&q), Err(Error::OmegaNotTrivial { .. })));
    }

    #[test]
    fn complex_preconditions() {
        let z2 = catalog::cyclic(2);
        let conj = PreCrossedModule::new(GroupHom::identity(&z2), GroupAction::conjugation(&z2)).unwrap();
        let n = Nil2Module::new(conj).unwrap();
        let q = from_nil2_complex(&GroupHom::trivial(&z2, &z2), &n, &GroupAction::trivial(&z2, &z2)).unwrap();
        let cc = to_crossed_complex(&q).unwrap();
        assert_eq!(cc.d2, GroupHom::trivial(&z2, &z2));
        let s3 = catalog::symmetric(3);
        let err = from_nil2_complex(&GroupHom::trivial(&s3, &z2), &n, &GroupAction::trivial(&z2, &s3)).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailure { condition: ComplexCondition::II, .. }));
        // d1 d2 != 1
        let err = from_nil2_complex(&GroupHom::identity(&z2), &n, &GroupAction::trivial(&z2, &z2)).unwrap_err();
        assert!(matches!(err, Error::PreconditionFailure { condition: ComplexCondition::III, .. }));
    }

    #[test]
    fn identity_morphisms_enumerated() {
        let z2 = catalog::cyclic(2);
        let conj = PreCrossedModule::new(GroupHom::identity(&z2), GroupAction::conjugation(&z2)).unwrap();
        let q = from_nil2(&Nil2Module::new(conj).unwrap()).unwrap();
        let all = enumerate_quadratic_morphisms(&q, &q, None, HomBound::default()).unwrap();
        assert!(all.contains(&QuadraticMorphism::identity(&q)));
        let id = QuadraticMorphism::identity(&q);
        assert_eq!(id.compose(&id, &q, &q).unwrap(), id);
        assert!(find_isomorphism(&q, &q, HomBound::default()).unwrap().is_some());
    }
}
