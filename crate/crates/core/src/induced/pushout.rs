//! Relator membership for push-outs of quadratic modules over a fixed base.
//!
//! The push-out is a quotient `B/S`, `C/R` by relators built from `ω`. Two
//! readings are provided: the literal expressions, and versions matching
//! the axioms `ω(∂a ⊗ ∂b) = [b, a]`, `a^{∂x} = ω(x ⊗ ∂a) ω(∂a ⊗ x) a`
//! and `∂₂ω(x ⊗ y) = ⟨x, y⟩`. Membership in the normal closure is decided
//! up to a bound on the number of conjugated relator factors.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::quadratic::QuadraticCandidate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Reading {
    Literal,
    Corrected,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Level {
    Top,
    Middle,
}

/// Distinct relator values at each level, identity excluded.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PushoutRelators {
    pub top: Vec<usize>,
    pub middle: Vec<usize>,
}

/// Relator values for data `B --μ--> C --ν--> P` with `ω` given on pairs.
pub fn pushout_relators(cand: &QuadraticCandidate, reading: Reading) -> Result<PushoutRelators> {
    cand.check_types()?;
    let (b, c) = (cand.c2(), cand.c1());
    let mu = &cand.d2;
    let nu = &cand.d1;
    let act = |x: usize, y: usize| cand.act2.act(x, nu.apply(y));
    let mut top = BTreeSet::new();
    for x in b.elements() {
        for y in b.elements() {
            let w = cand.omega(mu.apply(x), mu.apply(y));
            let v = match reading {
                Reading::Literal => b.mul(w, b.inv(b.commutator(x, y))),
                Reading::Corrected => b.mul(w, b.inv(b.commutator(y, x))),
            };
            top.insert(v);
        }
    }
    for x in b.elements() {
        for z in c.elements() {
            match reading {
                Reading::Literal => {
                    let tail = b.mul(b.inv(act(x, z)), x);
                    for y in b.elements() {
                        let w = b.mul(cand.omega(mu.apply(x), z), cand.omega(z, mu.apply(y)));
                        top.insert(b.mul(w, tail));
                    }
                }
                Reading::Corrected => {
                    let w = b.mul(cand.omega(z, mu.apply(x)), cand.omega(mu.apply(x), z));
                    top.insert(b.mul(b.mul(w, x), b.inv(act(x, z))));
                }
            }
        }
    }
    let mut middle = BTreeSet::new();
    for x in c.elements() {
        for y in c.elements() {
            let w = mu.apply(cand.omega(x, y));
            let v = match reading {
                Reading::Literal => {
                    let xp = cand.act1.act(x, nu.apply(x));
                    c.product([w, xp, x, c.inv(y), c.inv(x)])
                }
                Reading::Corrected => {
                    let peiffer = c.product([c.inv(x), c.inv(y), x, cand.act1.act(y, nu.apply(x))]);
                    c.mul(w, c.inv(peiffer))
                }
            };
            middle.insert(v);
        }
    }
    top.remove(&b.identity());
    middle.remove(&c.identity());
    Ok(PushoutRelators {
        top: top.into_iter().collect(),
        middle: middle.into_iter().collect(),
    })
}

/// Least number `k ≤ bound` of conjugates of relators or their inverses whose
/// product is `element`.
pub fn bounded_membership(group: &FiniteGroup, relators: &[usize], element: usize, bound: usize) -> Option<usize> {
    let mut factors = BTreeSet::new();
    for &r in relators {
        for g in group.elements() {
            factors.insert(group.conj(r, g));
            factors.insert(group.conj(group.inv(r), g));
        }
    }
    let mut dist = vec![usize::MAX; group.order()];
    dist[group.identity()] = 0;
    let mut frontier = vec![group.identity()];
    for k in 0..=bound {
        if dist[element] != usize::MAX {
            return Some(dist[element]);
        }
        if k == bound {
            break;
        }
        let mut next = Vec::new();
        for &x in &frontier {
            for &f in &factors {
                let y = group.mul(x, f);
                if dist[y] == usize::MAX {
                    dist[y] = k + 1;
                    next.push(y);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Membership of one element under both readings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MembershipReport {
    pub level: Level,
    pub element: usize,
    pub bound: usize,
    pub literal: Option<usize>,
    pub corrected: Option<usize>,
}

pub fn relator_membership(
    cand: &QuadraticCandidate,
    level: Level,
    element: usize,
    bound: usize,
) -> Result<MembershipReport> {
    let group = match level {
        Level::Top => cand.c2(),
        Level::Middle => cand.c1(),
    };
    if element >= group.order() {
        return Err(Error::TypeMismatch(format!("element {element} is outside the group")));
    }
    let pick = |r: &PushoutRelators| match level {
        Level::Top => r.top.clone(),
        Level::Middle => r.middle.clone(),
    };
    let literal = pick(&pushout_relators(cand, Reading::Literal)?);
    let corrected = pick(&pushout_relators(cand, Reading::Corrected)?);
    Ok(MembershipReport {
        level,
        element,
        bound,
        literal: bounded_membership(group, &literal, element, bound),
        corrected: bounded_membership(group, &corrected, element, bound),
    })
}
