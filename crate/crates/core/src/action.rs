use crate::error::{Error, Result};
use crate::group::{invariant_normal_closure, GroupRef, Subgroup};
use crate::hom::GroupHom;

/// A right action of `actor` on `carrier` by automorphisms, `m^q`.
#[derive(Clone, Debug)]
pub struct GroupAction {
    actor: GroupRef,
    carrier: GroupRef,
    /// `table[m * |actor| + q] = m^q`
    table: Vec<usize>,
}

impl PartialEq for GroupAction {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.actor == other.actor && self.carrier == other.carrier
    }
}

impl GroupAction {
    /// Validates `(m^q)^{q'} = m^{qq'}`, `m^e = m` and `(mm')^q = m^q m'^q`.
    pub fn new(actor: GroupRef, carrier: GroupRef, rows: &[Vec<usize>]) -> Result<GroupAction> {
        if rows.len() != carrier.order() || rows.iter().any(|r| r.len() != actor.order()) {
            return Err(Error::MalformedTable(format!(
                "action table must be {}x{}",
                carrier.order(),
                actor.order()
            )));
        }
        let table: Vec<usize> = rows.iter().flatten().copied().collect();
        if let Some(&bad) = table.iter().find(|&&x| x >= carrier.order()) {
            return Err(Error::MalformedTable(format!("action entry {bad} out of range")));
        }
        let action = GroupAction {
            actor,
            carrier,
            table,
        };
        action.validate()?;
        Ok(action)
    }

    pub(crate) fn new_unchecked(actor: GroupRef, carrier: GroupRef, table: Vec<usize>) -> GroupAction {
        GroupAction {
            actor,
            carrier,
            table,
        }
    }

    /// Builds an action from a closure and validates it.
    pub fn from_fn(
        actor: &GroupRef,
        carrier: &GroupRef,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<GroupAction> {
        let mut table = Vec::with_capacity(carrier.order() * actor.order());
        for m in carrier.elements() {
            for q in actor.elements() {
                let v = f(m, q);
                if v >= carrier.order() {
                    return Err(Error::MalformedTable(format!("action value {v} out of range")));
                }
                table.push(v);
            }
        }
        let action = GroupAction::new_unchecked(actor.clone(), carrier.clone(), table);
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let (q, m) = (&self.actor, &self.carrier);
        for x in m.elements() {
            if self.act(x, q.identity()) != x {
                return Err(Error::NotAction(format!("{x}^e != {x}")));
            }
        }
        for x in m.elements() {
            for a in q.elements() {
                for b in q.elements() {
                    if self.act(self.act(x, a), b) != self.act(x, q.mul(a, b)) {
                        return Err(Error::NotAction(format!(
                            "({x}^{a})^{b} != {x}^({a}*{b})"
                        )));
                    }
                }
            }
        }
        for a in q.elements() {
            for x in m.elements() {
                for y in m.elements() {
                    if self.act(m.mul(x, y), a) != m.mul(self.act(x, a), self.act(y, a)) {
                        return Err(Error::NotAction(format!(
                            "({x}*{y})^{a} != {x}^{a} * {y}^{a}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(actor: &GroupRef, carrier: &GroupRef) -> GroupAction {
        let mut table = Vec::with_capacity(carrier.order() * actor.order());
        for m in carrier.elements() {
            table.extend(std::iter::repeat(m).take(actor.order()));
        }
        GroupAction::new_unchecked(actor.clone(), carrier.clone(), table)
    }

    /// `m^q = q⁻¹ m q`.
    pub fn conjugation(group: &GroupRef) -> GroupAction {
        let mut table = Vec::with_capacity(group.order() * group.order());
        for m in group.elements() {
            for q in group.elements() {
                table.push(group.conj(m, q));
            }
        }
        GroupAction::new_unchecked(group.clone(), group.clone(), table)
    }

    /// The action of `P` obtained through `f: P → actor`: `m^p = m^{f(p)}`.
    pub fn pulled_back(&self, f: &GroupHom) -> Result<GroupAction> {
        if f.target() != &self.actor {
            return Err(Error::TypeMismatch("pull-back hom must land in the actor".into()));
        }
        let p = f.source();
        let mut table = Vec::with_capacity(self.carrier.order() * p.order());
        for m in self.carrier.elements() {
            for x in p.elements() {
                table.push(self.act(m, f.apply(x)));
            }
        }
        Ok(GroupAction::new_unchecked(p.clone(), self.carrier.clone(), table))
    }

    pub fn actor(&self) -> &GroupRef {
        &self.actor
    }

    pub fn carrier(&self) -> &GroupRef {
        &self.carrier
    }

    #[inline]
    pub fn act(&self, m: usize, q: usize) -> usize {
        self.table[m * self.actor.order() + q]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table
            .chunks(self.actor.order())
            .map(|r| r.to_vec())
            .collect()
    }

    /// Each actor element as a permutation of the carrier.
    pub fn permutations(&self) -> Vec<Vec<usize>> {
        self.actor
            .elements()
            .map(|q| self.carrier.elements().map(|m| self.act(m, q)).collect())
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.carrier
            .elements()
            .all(|m| self.actor.elements().all(|q| self.act(m, q) == m))
    }

    /// Whether a subgroup of the carrier is stable under the action.
    pub fn preserves(&self, sub: &Subgroup) -> bool {
        sub.members()
            .iter()
            .all(|&m| self.actor.elements().all(|q| sub.contains(self.act(m, q))))
    }
}

/// The displacement subgroup `[K, L]` with a record of whether taking the
/// normal closure enlarged the plain generated subgroup.
#[derive(Clone, Debug)]
pub struct Displacement {
    pub subgroup: Subgroup,
    pub closure_added_elements: bool,
}

/// `[K, L]`: normal closure in the carrier of `{l⁻¹ l^k : k ∈ K, l ∈ L}`.
///
/// The closure is also made stable under the whole actor, which is what the
/// quotient by it needs to carry an induced action.
pub fn displacement_subgroup(action: &GroupAction, k: &Subgroup) -> Result<Displacement> {
    if k.ambient() != action.actor() {
        return Err(Error::TypeMismatch("K must be a subgroup of the actor".into()));
    }
    let l = action.carrier();
    let mut seeds: Vec<usize> = Vec::new();
    for &kk in k.members() {
        for x in l.elements() {
            seeds.push(l.mul(l.inv(x), action.act(x, kk)));
        }
    }
    seeds.sort_unstable();
    seeds.dedup();
    let plain = l.subgroup_generated(&seeds);
    let subgroup = invariant_normal_closure(l, &seeds, &action.permutations());
    let closure_added_elements = subgroup.order() != plain.order();
    Ok(Displacement {
        subgroup,
        closure_added_elements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use std::sync::Arc;

    #[test]
    fn swap_action_displacement_is_diagonal() {
        let v4: GroupRef = Arc::new(FiniteGroup::abelian(&[2, 2]));
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        // (a, b) at index 2a + b; swap sends 1 <-> 2.
        let swap = GroupAction::new(
            z2.clone(),
            v4.clone(),
            &[vec![0, 0], vec![1, 2], vec![2, 1], vec![3, 3]],
        )
        .unwrap();
        let d = displacement_subgroup(&swap, &z2.whole()).unwrap();
        assert_eq!(d.subgroup.members(), &[0, 3]);
        assert!(!d.closure_added_elements);
        let none = displacement_subgroup(&swap, &z2.trivial_subgroup()).unwrap();
        assert!(none.subgroup.is_trivial());
        let triv = GroupAction::trivial(&z2, &v4);
        assert!(displacement_subgroup(&triv, &z2.whole()).unwrap().subgroup.is_trivial());
    }

    #[test]
    fn invalid_actions_rejected() {
        let z2: GroupRef = Arc::new(FiniteGroup::cyclic(2));
        let z3: GroupRef = Arc::new(FiniteGroup::cyclic(3));
        // z ↦ z + 1 is not an automorphism.
        assert!(GroupAction::new(z2.clone(), z3.clone(), &[vec![0, 1], vec![1, 2], vec![2, 0]]).is_err());
        // inversion is fine
        assert!(GroupAction::new(z2, z3, &[vec![0, 0], vec![1, 2], vec![2, 1]]).is_ok());
    }
}
