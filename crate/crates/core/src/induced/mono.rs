//! Induction along a monomorphism: free products of transversal-indexed
//! copies, represented by normal-form words.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{GroupRef, Subgroup};
use crate::hom::GroupHom;
use crate::nil2::Nil2Module;
use crate::quadratic::QuadraticModule;

/// Right transversal of `φ(P)` in `Q`, minimal element of each coset.
#[derive(Clone, Debug)]
pub struct Transversal {
    phi: GroupHom,
    reps: Vec<usize>,
    coset_of: Vec<usize>,
    preimage: Vec<Option<usize>>,
}

impl Transversal {
    pub fn new(phi: &GroupHom) -> Result<Transversal> {
        if let Some(kernel_element) = phi.kernel_witness() {
            return Err(Error::NotMonomorphism { kernel_element });
        }
        let q = phi.target();
        let image: Subgroup = phi.image();
        let mut coset_of = vec![usize::MAX; q.order()];
        let mut reps = Vec::new();
        for x in q.elements() {
            if coset_of[x] == usize::MAX {
                for &h in image.members() {
                    coset_of[q.mul(h, x)] = reps.len();
                }
                reps.push(x);
            }
        }
        Ok(Transversal {
            phi: phi.clone(),
            reps,
            coset_of,
            preimage: phi.preimages(),
        })
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn representatives(&self) -> &[usize] {
        &self.reps
    }

    pub fn phi(&self) -> &GroupHom {
        &self.phi
    }

    /// `x = φ(p)·u` with `u` the transversal element of index `t`; returns `(p, t)`.
    pub fn decompose(&self, x: usize) -> (usize, usize) {
        let q = self.phi.target();
        let t = self.coset_of[x];
        let h = q.mul(x, q.inv(self.reps[t]));
        (self.preimage[h].expect("coset decomposition"), t)
    }
}

/// A word `x₁_{t₁} ⋯ x_k_{t_k}` with no identity syllables and distinct
/// copy indices at adjacent positions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FreeProductWord {
    pub syllables: Vec<(usize, usize)>,
}

impl FreeProductWord {
    pub fn identity() -> FreeProductWord {
        FreeProductWord { syllables: Vec::new() }
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

/// The free product of `copies` copies of a finite group.
#[derive(Clone, Debug)]
pub struct FreeProduct {
    factor: GroupRef,
    copies: usize,
}

impl FreeProduct {
    pub fn new(factor: GroupRef, copies: usize) -> FreeProduct {
        FreeProduct { factor, copies }
    }

    pub fn factor(&self) -> &GroupRef {
        &self.factor
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn syllable(&self, t: usize, x: usize) -> FreeProductWord {
        self.normalize(&[(t, x)])
    }

    pub fn normalize(&self, syllables: &[(usize, usize)]) -> FreeProductWord {
        let g = &self.factor;
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(syllables.len());
        for &(t, x) in syllables {
            if x == g.identity() {
                continue;
            }
            match out.last_mut() {
                Some((s, y)) if *s == t => {
                    let z = g.mul(*y, x);
                    if z == g.identity() {
                        out.pop();
                    } else {
                        *y = z;
                    }
                }
                _ => out.push((t, x)),
            }
        }
        FreeProductWord { syllables: out }
    }

    pub fn is_normal(&self, w: &FreeProductWord) -> bool {
        w.syllables.iter().all(|&(t, x)| t < self.copies && x != self.factor.identity() && x < self.factor.order())
            && w.syllables.windows(2).all(|p| p[0].0 != p[1].0)
    }

    pub fn mul(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        let mut all = a.syllables.clone();
        all.extend_from_slice(&b.syllables);
        self.normalize(&all)
    }

    pub fn inv(&self, a: &FreeProductWord) -> FreeProductWord {
        let rev: Vec<(usize, usize)> = a.syllables.iter().rev().map(|&(t, x)| (t, self.factor.inv(x))).collect();
        self.normalize(&rev)
    }

    pub fn commutator(&self, a: &FreeProductWord, b: &FreeProductWord) -> FreeProductWord {
        let ab = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&self.mul(&ab, a), b)
    }

    /// A random normal-form word with up to `max_len` syllables.
    pub fn random_word(&self, rng: &mut ChaCha8Rng, max_len: usize) -> FreeProductWord {
        if self.factor.order() == 1 || self.copies == 0 {
            return FreeProductWord::identity();
        }
        let len = rng.gen_range(0..=max_len);
        let mut syllables: Vec<(usize, usize)> = Vec::with_capacity(len);
        for _ in 0..len {
            let mut t = rng.gen_range(0..self.copies);
            if let Some(&(prev, _)) = syllables.last() {
                if self.copies == 1 {
                    break;
                }
                while t == prev {
                    t = rng.gen_range(0..self.copies);
                }
            }
            let mut x = rng.gen_range(0..self.factor.order());
            while x == self.factor.identity() {
                x = rng.gen_range(0..self.factor.order());
            }
            syllables.push((t, x));
        }
        self.normalize(&syllables)
    }
}

/// `δ: *_t M_t → Q` with the transversal action `(m_t)^q = (m^p)_u`,
/// `tq = φ(p)u`.
#[derive(Clone, Debug)]
pub struct MonoInduced {
    module: Nil2Module,
    transversal: Transversal,
    product: FreeProduct,
}

pub fn induce_nil2_mono(n: &Nil2Module, phi: &GroupHom) -> Result<MonoInduced> {
    if phi.source() != n.target() {
        return Err(Error::TypeMismatch("phi must start at the base of the module".into()));
    }
    let transversal = Transversal::new(phi)?;
    let product = FreeProduct::new(n.source().clone(), transversal.len());
    Ok(MonoInduced {
        module: n.clone(),
        transversal,
        product,
    })
}

/// Relabels copies by `t ↦ u` and acts inside each copy, for `tq = φ(p)u`.
fn transport(
    product: &FreeProduct,
    transversal: &Transversal,
    act: impl Fn(usize, usize) -> usize,
    w: &FreeProductWord,
    q: usize,
) -> FreeProductWord {
    let qg = transversal.phi.target();
    let moved: Vec<(usize, usize)> = w
        .syllables
        .iter()
        .map(|&(t, x)| {
            let (p, u) = transversal.decompose(qg.mul(transversal.reps[t], q));
            (u, act(x, p))
        })
        .collect();
    product.normalize(&moved)
}

impl MonoInduced {
    pub fn product(&self) -> &FreeProduct {
        &self.product
    }

    pub fn transversal(&self) -> &Transversal {
        &self.transversal
    }

    pub fn module(&self) -> &Nil2Module {
        &self.module
    }

    pub fn target(&self) -> &GroupRef {
        self.transversal.phi.target()
    }

    pub fn act(&self, w: &FreeProductWord, q: usize) -> FreeProductWord {
        transport(&self.product, &self.transversal, |x, p| self.module.action().act(x, p), w, q)
    }

    /// `δ(m_t) = t⁻¹ φ∂(m) t`, extended multiplicatively.
    pub fn boundary(&self, w: &FreeProductWord) -> usize {
        let q = self.target();
        let phi = &self.transversal.phi;
        w.syllables.iter().fold(q.identity(), |acc, &(t, x)| {
            let v = q.conj(phi.apply(self.module.boundary().apply(x)), self.transversal.reps[t]);
            q.mul(acc, v)
        })
    }

    /// `⟨x, y⟩ = x⁻¹ y⁻¹ x y^{δx}`
    pub fn peiffer(&self, x: &FreeProductWord, y: &FreeProductWord) -> FreeProductWord {
        let fp = &self.product;
        let head = fp.mul(&fp.mul(&fp.inv(x), &fp.inv(y)), x);
        fp.mul(&head, &self.act(y, self.boundary(x)))
    }

    /// Checks the free-product and module laws on seeded random samples.
    pub fn check_samples(&self, samples: usize, seed: u64) -> SampleReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fp = &self.product;
        let q = self.target();
        let mut report = SampleReport::new(&[
            "normal form",
            "associativity",
            "inverse",
            "action identity",
            "action composition",
            "action homomorphism",
            "boundary homomorphism",
            "pre-crossed law",
        ]);
        for _ in 0..samples {
            let (a, b, c) = (fp.random_word(&mut rng, 6), fp.random_word(&mut rng, 6), fp.random_word(&mut rng, 6));
            let (g, h) = (rng.gen_range(0..q.order()), rng.gen_range(0..q.order()));
            let ab = fp.mul(&a, &b);
            report.record(0, fp.is_normal(&ab) && fp.is_normal(&self.act(&a, g)));
            report.record(1, fp.mul(&ab, &c) == fp.mul(&a, &fp.mul(&b, &c)));
            report.record(2, fp.mul(&a, &fp.inv(&a)).is_identity());
            report.record(3, self.act(&a, q.identity()) == a);
            report.record(4, self.act(&self.act(&a, g), h) == self.act(&a, q.mul(g, h)));
            report.record(5, self.act(&ab, g) == fp.mul(&self.act(&a, g), &self.act(&b, g)));
            report.record(6, self.boundary(&ab) == q.mul(self.boundary(&a), self.boundary(&b)));
            report.record(7, self.boundary(&self.act(&a, g)) == q.conj(self.boundary(&a), g));
        }
        report.samples = samples;
        report
    }
}

/// Per-law counts from sampled checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawCount {
    pub law: String,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SampleReport {
    pub samples: usize,
    pub laws: Vec<LawCount>,
}

impl SampleReport {
    fn new(names: &[&str]) -> SampleReport {
        SampleReport {
            samples: 0,
            laws: names
                .iter()
                .map(|n| LawCount {
                    law: n.to_string(),
                    checked: 0,
                    violations: 0,
                })
                .collect(),
        }
    }

    fn record(&mut self, i: usize, ok: bool) {
        self.laws[i].checked += 1;
        if !ok {
            self.laws[i].violations += 1;
        }
    }

    pub fn violations(&self) -> usize {
        self.laws.iter().map(|l| l.violations).sum()
    }

    pub fn passed(&self) -> bool {
        self.violations() == 0
    }

    pub fn merge(&mut self, other: &SampleReport) {
        self.samples += other.samples;
        for l in &other.laws {
            match self.laws.iter_mut().find(|m| m.law == l.law) {
                Some(m) => {
                    m.checked += l.checked;
                    m.violations += l.violations;
                }
                None => self.laws.push(l.clone()),
            }
        }
    }
}

/// Levels `B = *_t L_t → C = *_t M_t → Q` with `γ(l_t) = ∂₂(l)_t` and
/// `ω({m_t} ⊗ {m'_t}) = ω({m} ⊗ {m'})_t` on pairs from one copy.
#[derive(Clone, Debug)]
pub struct MonoQuadLayer {
    module: QuadraticModule,
    middle: MonoInduced,
    top: FreeProduct,
}

pub fn induce_quad_mono(qm: &QuadraticModule, phi: &GroupHom) -> Result<MonoQuadLayer> {
    let middle = induce_nil2_mono(&qm.nil2(), phi)?;
    let top = FreeProduct::new(qm.c2().clone(), middle.transversal.len());
    Ok(MonoQuadLayer {
        module: qm.clone(),
        middle,
        top,
    })
}

impl MonoQuadLayer {
    pub fn middle(&self) -> &MonoInduced {
        &self.middle
    }

    pub fn top(&self) -> &FreeProduct {
        &self.top
    }

    pub fn module(&self) -> &QuadraticModule {
        &self.module
    }

    pub fn gamma(&self, w: &FreeProductWord) -> FreeProductWord {
        let mapped: Vec<(usize, usize)> = w.syllables.iter().map(|&(t, l)| (t, self.module.d2().apply(l))).collect();
        self.middle.product.normalize(&mapped)
    }

    pub fn act_top(&self, w: &FreeProductWord, q: usize) -> FreeProductWord {
        transport(&self.top, &self.middle.transversal, |x, p| self.module.act2().act(x, p), w, q)
    }

    /// `ω({m_t} ⊗ {m'_t})` for two elements of the copy `t`.
    pub fn omega_same_copy(&self, t: usize, m: usize, m2: usize) -> FreeProductWord {
        self.top.syllable(t, self.module.omega_pair(m, m2))
    }

    /// Checks the layer laws on seeded random samples.
    pub fn check_samples(&self, samples: usize, seed: u64) -> SampleReport {
        let mut report = self.middle.check_samples(samples, seed);
        let mut extra = SampleReport::new(&[
            "gamma homomorphism",
            "gamma equivariance",
            "complex",
            "copy action rule",
            "omega lifts Peiffer commutator",
            "omega on boundaries",
            "omega equivariance",
        ]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let (fp, tp) = (&self.middle.product, &self.top);
        let (m, l, q) = (self.module.c1(), self.module.c2(), self.middle.target());
        let copies = self.middle.transversal.len();
        for _ in 0..samples {
            let (a, b) = (tp.random_word(&mut rng, 6), tp.random_word(&mut rng, 6));
            let g = rng.gen_range(0..q.order());
            let t = rng.gen_range(0..copies);
            let (x, y) = (rng.gen_range(0..m.order()), rng.gen_range(0..m.order()));
            let (la, lb) = (rng.gen_range(0..l.order()), rng.gen_range(0..l.order()));
            extra.record(0, self.gamma(&tp.mul(&a, &b)) == fp.mul(&self.gamma(&a), &self.gamma(&b)));
            extra.record(1, self.gamma(&self.act_top(&a, g)) == self.middle.act(&self.gamma(&a), g));
            extra.record(2, self.middle.boundary(&self.gamma(&a)) == q.identity());
            let xt = fp.syllable(t, x);
            let by_boundary = self.act_top(&tp.syllable(t, la), self.middle.boundary(&xt));
            let by_rule = tp.syllable(t, self.module.act2().act(la, self.module.d1().apply(x)));
            extra.record(3, by_boundary == by_rule);
            let peiffer = self.middle.peiffer(&xt, &fp.syllable(t, y));
            extra.record(4, self.gamma(&self.omega_same_copy(t, x, y)) == peiffer);
            let (da, db) = (self.module.d2().apply(la), self.module.d2().apply(lb));
            let (lat, lbt) = (tp.syllable(t, la), tp.syllable(t, lb));
            extra.record(5, self.omega_same_copy(t, da, db) == tp.commutator(&lbt, &lat));
            let moved = self.act_top(&self.omega_same_copy(t, x, y), g);
            let (p, u) = self.middle.transversal.decompose(q.mul(self.middle.transversal.reps[t], g));
            let act1 = self.module.act1();
            extra.record(6, moved == self.omega_same_copy(u, act1.act(x, p), act1.act(y, p)));
        }
        extra.samples = 0;
        report.merge(&extra);
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::GroupAction;
    use crate::catalog;
    use crate::nil2::PreCrossedModule;
    use std::sync::Arc;

    fn z2_into_v4() -> (Nil2Module, GroupHom) {
        let z2 = catalog::cyclic(2);
        let n = Nil2Module::new(PreCrossedModule::new(GroupHom::identity(&z2), GroupAction::conjugation(&z2)).unwrap()).unwrap();
        let v4: GroupRef = Arc::new(crate::group::FiniteGroup::abelian(&[2, 2]));
        let incl = GroupHom::new(z2, v4, vec![0, 1]).unwrap();
        (n, incl)
    }

    #[test]
    fn two_copies_of_z2() {
        let (n, incl) = z2_into_v4();
        let mono = induce_nil2_mono(&n, &incl).unwrap();
        assert_eq!(mono.transversal().representatives(), &[0, 2]);
        let fp = mono.product();
        let w = fp.normalize(&[(0, 1), (1, 1), (0, 1)]);
        assert_eq!(w.len(), 3);
        // (t₀ t₁)ⁿ never collapses
        let ab = fp.normalize(&[(0, 1), (1, 1)]);
        let mut power = FreeProductWord::identity();
        for k in 1..6 {
            power = fp.mul(&power, &ab);
            assert_eq!(power.len(), 2 * k);
        }
        assert!(fp.mul(&w, &fp.inv(&w)).is_identity());
        // the element outside φ(P) swaps the two copies
        assert_eq!(mono.act(&fp.syllable(0, 1), 2), fp.syllable(1, 1));
    }

    #[test]
    fn sampled_laws_hold() {
        let (n, incl) = z2_into_v4();
        let report = induce_nil2_mono(&n, &incl).unwrap().check_samples(500, 7);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn iso_gives_single_copy() {
        let (n, _) = z2_into_v4();
        let id = GroupHom::identity(n.target());
        let mono = induce_nil2_mono(&n, &id).unwrap();
        assert_eq!(mono.transversal().len(), 1);
    }

    #[test]
    fn non_mono_rejected() {
        let (n, _) = z2_into_v4();
        let one = catalog::cyclic(1);
        let f = GroupHom::trivial(n.target(), &one);
        assert!(matches!(induce_nil2_mono(&n, &f), Err(Error::NotMonomorphism { kernel_element: 1 })));
    }
}
