//! Coset enumeration for finitely presented groups (HLT strategy with
//! coincidence processing), used to realize a presentation as a finite
//! multiplication table.

use std::collections::VecDeque;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};

/// Default cap on the number of cosets defined during one enumeration.
pub const DEFAULT_MAX_COSETS: usize = 20_000;
/// Default bound on the order of an enumerated group.
pub const DEFAULT_MAX_ORDER: usize = 64;

const NONE: usize = usize::MAX;

/// A generator or its inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn gen(generator: usize) -> Letter {
        Letter {
            generator,
            inverse: false,
        }
    }

    pub fn inv(generator: usize) -> Letter {
        Letter {
            generator,
            inverse: true,
        }
    }

    pub fn inverted(self) -> Letter {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    fn column(self) -> usize {
        2 * self.generator + self.inverse as usize
    }
}

/// Free reduction of a word.
pub fn free_reduce(word: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inverted()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

/// `⟨x₀, …, x_{n-1} | relators⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: usize,
    pub relators: Vec<Vec<Letter>>,
}

impl Presentation {
    /// Relators freely and cyclically reduced, deduplicated, empty words
    /// dropped, shortest first.
    pub fn reduced(&self) -> Presentation {
        let mut rels: Vec<Vec<Letter>> = self
            .relators
            .iter()
            .map(|r| {
                let mut w = free_reduce(r);
                while w.len() >= 2 && w[0] == w[w.len() - 1].inverted() {
                    w.pop();
                    w.remove(0);
                }
                w
            })
            .filter(|w| !w.is_empty())
            .collect();
        rels.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        rels.dedup();
        Presentation {
            generators: self.generators,
            relators: rels,
        }
    }
}

/// Limits for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CosetLimits {
    pub max_cosets: usize,
    pub max_order: usize,
}

impl Default for CosetLimits {
    fn default() -> Self {
        CosetLimits {
            max_cosets: max_cosets_from_env(),
            max_order: DEFAULT_MAX_ORDER,
        }
    }
}

/// `QUADMOD_MAX_COSETS` if set to a positive integer, else the default.
pub fn max_cosets_from_env() -> usize {
    std::env::var("QUADMOD_MAX_COSETS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_COSETS)
}

/// A finite presented group with the images of its generators.
#[derive(Clone, Debug)]
pub struct PresentedGroup {
    pub group: GroupRef,
    pub generator_images: Vec<usize>,
    /// A word in the generators for every element (empty for the identity).
    pub words: Vec<Vec<Letter>>,
}

impl PresentedGroup {
    /// Evaluates a word given values of the generators in another group.
    pub fn evaluate_in(target: &FiniteGroup, images: &[usize], word: &[Letter]) -> usize {
        word.iter().fold(target.identity(), |acc, l| {
            let v = images[l.generator];
            target.mul(acc, if l.inverse { target.inv(v) } else { v })
        })
    }
}

/// Outcome of an enumeration.
#[derive(Clone, Debug)]
pub enum Enumeration {
    Finite(PresentedGroup),
    /// The coset cap was reached before the table closed.
    Unbounded { cosets_defined: usize },
}

impl Enumeration {
    pub fn finite(&self) -> Option<&PresentedGroup> {
        match self {
            Enumeration::Finite(g) => Some(g),
            Enumeration::Unbounded { .. } => None,
        }
    }
}

struct Table {
    cols: usize,
    rows: Vec<usize>,
    parent: Vec<usize>,
    cap: usize,
    queue: Vec<usize>,
}

struct Capped;

impl Table {
    fn new(cols: usize, cap: usize) -> Table {
        Table {
            cols,
            rows: vec![NONE; cols],
            parent: vec![0],
            cap,
            queue: Vec::new(),
        }
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn get(&self, c: usize, col: usize) -> usize {
        self.rows[c * self.cols + col]
    }

    fn set(&mut self, c: usize, col: usize, v: usize) {
        self.rows[c * self.cols + col] = v;
    }

    fn alive(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn define(&mut self, c: usize, l: Letter) -> std::result::Result<(), Capped> {
        if self.len() >= self.cap {
            return Err(Capped);
        }
        let d = self.len();
        self.parent.push(d);
        self.rows.extend(std::iter::repeat(NONE).take(self.cols));
        self.set(c, l.column(), d);
        self.set(d, l.inverted().column(), c);
        Ok(())
    }

    fn rep(&mut self, mut c: usize) -> usize {
        let mut root = c;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[c] != root {
            let next = self.parent[c];
            self.parent[c] = root;
            c = next;
        }
        root
    }

    fn merge(&mut self, a: usize, b: usize) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.parent[hi] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for col in 0..self.cols {
                let f = self.get(e, col);
                if f == NONE {
                    continue;
                }
                let inv = col ^ 1;
                self.set(f, inv, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let x = self.get(e1, col);
                if x != NONE {
                    self.merge(f1, x);
                } else {
                    let y = self.get(f1, inv);
                    if y != NONE {
                        self.merge(e1, y);
                    } else {
                        self.set(e1, col, f1);
                        self.set(f1, inv, e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: usize, w: &[Letter]) -> std::result::Result<(), Capped> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i].column()) != NONE {
                f = self.get(f, w[i].column());
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize].inverted().column()) != NONE {
                b = self.get(b, w[j as usize].inverted().column());
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i as isize {
                self.set(f, w[i].column(), b);
                self.set(b, w[i].inverted().column(), f);
                return Ok(());
            }
            self.define(f, w[i])?;
        }
    }
}

/// Enumerates the cosets of the trivial subgroup. A closed table gives the
/// regular representation, from which the multiplication table is read off.
pub fn enumerate_cosets(pres: &Presentation, limits: CosetLimits) -> Result<Enumeration> {
    let pres = pres.reduced();
    if pres.relators.iter().flatten().any(|l| l.generator >= pres.generators) {
        return Err(Error::MalformedTable("relator letter out of range".into()));
    }
    let cols = 2 * pres.generators;
    let mut t = Table::new(cols, limits.max_cosets.max(1));
    let mut c = 0;
    while c < t.len() {
        if t.alive(c) {
            for r in &pres.relators {
                if t.scan_and_fill(c, r).is_err() {
                    return Ok(Enumeration::Unbounded {
                        cosets_defined: t.len(),
                    });
                }
                if !t.alive(c) {
                    break;
                }
            }
            if t.alive(c) {
                for col in 0..cols {
                    if t.get(c, col) == NONE {
                        let l = Letter {
                            generator: col / 2,
                            inverse: col % 2 == 1,
                        };
                        if t.define(c, l).is_err() {
                            return Ok(Enumeration::Unbounded {
                                cosets_defined: t.len(),
                            });
                        }
                    }
                }
            }
        }
        c += 1;
    }
    let live: Vec<usize> = (0..t.len()).filter(|&c| t.alive(c)).collect();
    let n = live.len();
    if n > limits.max_order {
        return Err(Error::BoundExceeded(format!(
            "presented group has order {n} > bound {}",
            limits.max_order
        )));
    }
    let mut index = vec![NONE; t.len()];
    for (i, &c) in live.iter().enumerate() {
        index[c] = i;
    }
    let step = |c: usize, col: usize| index[t.get(live[c], col)];
    // spanning words from the identity coset
    let mut words: Vec<Option<Vec<Letter>>> = vec![None; n];
    words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for col in 0..cols {
            let d = step(c, col);
            if words[d].is_none() {
                let mut w = words[c].clone().expect("visited");
                w.push(Letter {
                    generator: col / 2,
                    inverse: col % 2 == 1,
                });
                words[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let words: Vec<Vec<Letter>> = words
        .into_iter()
        .map(|w| w.expect("coset table is connected"))
        .collect();
    let mut table = Vec::with_capacity(n * n);
    for a in 0..n {
        for w in &words {
            table.push(w.iter().fold(a, |c, l| step(c, l.column())));
        }
    }
    let group: GroupRef = Arc::new(FiniteGroup::from_flat(n, table)?);
    let generator_images = (0..pres.generators).map(|g| step(0, 2 * g)).collect();
    Ok(Enumeration::Finite(PresentedGroup {
        group,
        generator_images,
        words,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(spec: &[(usize, bool)]) -> Vec<Letter> {
        spec.iter()
            .map(|&(g, inv)| Letter { generator: g, inverse: inv })
            .collect()
    }

    #[test]
    fn cyclic_and_dihedral_orders() {
        let z5 = Presentation {
            generators: 1,
            relators: vec![word(&[(0, false); 5])],
        };
        let e = enumerate_cosets(&z5, CosetLimits::default()).unwrap();
        assert_eq!(e.finite().unwrap().group.order(), 5);

        // ⟨a, b | a⁴, b², (ab)²⟩ has order 8
        let d4 = Presentation {
            generators: 2,
            relators: vec![
                word(&[(0, false); 4]),
                word(&[(1, false); 2]),
                word(&[(0, false), (1, false), (0, false), (1, false)]),
            ],
        };
        let g = enumerate_cosets(&d4, CosetLimits::default()).unwrap();
        let g = g.finite().unwrap();
        assert_eq!(g.group.order(), 8);
        assert!(!g.group.is_abelian());
    }

    #[test]
    fn trivial_and_unbounded() {
        let trivial = Presentation {
            generators: 0,
            relators: vec![],
        };
        let e = enumerate_cosets(&trivial, CosetLimits::default()).unwrap();
        assert_eq!(e.finite().unwrap().group.order(), 1);

        // Z/2 * Z/2 is infinite
        let free = Presentation {
            generators: 2,
            relators: vec![word(&[(0, false); 2]), word(&[(1, false); 2])],
        };
        let limits = CosetLimits {
            max_cosets: 500,
            max_order: 64,
        };
        assert!(matches!(
            enumerate_cosets(&free, limits).unwrap(),
            Enumeration::Unbounded { .. }
        ));
    }

    #[test]
    fn order_bound_is_reported() {
        let z80 = Presentation {
            generators: 1,
            relators: vec![word(&[(0, false); 80])],
        };
        assert!(matches!(
            enumerate_cosets(&z80, CosetLimits::default()),
            Err(Error::BoundExceeded(_))
        ));
    }
}
