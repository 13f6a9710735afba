//! Finite groups stored as closed multiplication tables.
//!
//! Elements are plain indices `0..order`. Every group in the crate is built
//! through [`FiniteGroup::from_table`], which checks the group axioms
//! exhaustively, so downstream code can index tables without re-checking.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::hom::GroupHom;

/// Shared handle to an immutable group.
pub type GroupRef = Arc<FiniteGroup>;

pub struct FiniteGroup {
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
    labels: Option<Vec<String>>,
    generators: OnceLock<Vec<usize>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            order: self.order,
            table: self.table.clone(),
            identity: self.identity,
            inverse: self.inverse.clone(),
            labels: self.labels.clone(),
            generators: OnceLock::new(),
        }
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.order == other.order && self.table == other.table)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("identity", &self.identity)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a raw square table, checking closure, associativity,
    /// identity and inverses. Errors name the first witness found.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<FiniteGroup> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::MalformedTable("empty table".into()));
        }
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::MalformedTable(format!(
                    "row {i} has length {}, expected {n}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::MalformedTable(format!(
                        "entry {x} in row {i} out of range"
                    )));
                }
            }
            table.extend_from_slice(row);
        }
        Self::from_flat(n, table)
    }

    pub(crate) fn from_flat(n: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        let g = Self::from_flat_trusted(n, table)?;
        let at = |a: usize, b: usize| g.table[a * n + b];
        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(g)
    }

    /// Like `from_flat` but without the cubic associativity check, for tables
    /// built from an operation already known to be associative.
    pub(crate) fn from_flat_trusted(n: usize, table: Vec<usize>) -> Result<FiniteGroup> {
        let at = |a: usize, b: usize| table[a * n + b];
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(Error::NoIdentity)?;
        let mut inverse = vec![usize::MAX; n];
        for a in 0..n {
            let inv = (0..n)
                .find(|&b| at(a, b) == identity && at(b, a) == identity)
                .ok_or(Error::NoInverse { element: a })?;
            inverse[a] = inv;
        }
        Ok(FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
            labels: None,
            generators: OnceLock::new(),
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<FiniteGroup> {
        if labels.len() != self.order {
            return Err(Error::MalformedTable(format!(
                "{} labels for a group of order {}",
                labels.len(),
                self.order
            )));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn trivial() -> FiniteGroup {
        Self::from_flat(1, vec![0]).expect("trivial group")
    }

    /// `Z/n` with element `k` the residue `k`.
    pub fn cyclic(n: usize) -> FiniteGroup {
        Self::abelian(&[n])
    }

    /// `Z/n₁ × … × Z/nₖ`, elements in mixed radix with the last factor fastest.
    pub fn abelian(factors: &[usize]) -> FiniteGroup {
        let radix = MixedRadix::new(factors);
        let n = radix.size();
        let digits: Vec<Vec<usize>> = (0..n).map(|a| radix.digits(a)).collect();
        // place value of each digit, last factor fastest
        let mut place = vec![1usize; factors.len()];
        for i in (0..factors.len().saturating_sub(1)).rev() {
            place[i] = place[i + 1] * factors[i + 1];
        }
        let mut table = Vec::with_capacity(n * n);
        for ca in &digits {
            for cb in &digits {
                let mut idx = 0;
                for i in 0..factors.len() {
                    idx += (ca[i] + cb[i]) % factors[i] * place[i];
                }
                table.push(idx);
            }
        }
        Self::from_flat_trusted(n, table).expect("abelian product is a group")
    }

    /// `G × H` with `(g, h)` stored at index `g * |H| + h`.
    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> FiniteGroup {
        let (n, m) = (g.order, h.order);
        let mut table = Vec::with_capacity(n * m * n * m);
        for a in 0..n * m {
            for b in 0..n * m {
                let x = g.mul(a / m, b / m);
                let y = h.mul(a % m, b % m);
                table.push(x * m + y);
            }
        }
        Self::from_flat_trusted(n * m, table).expect("direct product is a group")
    }

    /// Closure of a set of permutations of `0..degree`, composed left to
    /// right (`(σ·τ)(i) = τ(σ(i))`). Elements are sorted lexicographically, so
    /// the identity permutation is element 0.
    pub fn from_permutations(degree: usize, gens: &[Vec<usize>]) -> Result<FiniteGroup> {
        for g in gens {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(Error::MalformedTable("permutation of wrong degree".into()));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(Error::MalformedTable("not a permutation".into()));
                }
                seen[x] = true;
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let compose = |s: &[usize], t: &[usize]| -> Vec<usize> { s.iter().map(|&i| t[i]).collect() };
        let mut seen: BTreeMap<Vec<usize>, ()> = BTreeMap::new();
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id, ());
        while let Some(p) = queue.pop_front() {
            for g in gens {
                let next = compose(&p, g);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), ());
                    queue.push_back(next);
                }
            }
        }
        let perms: Vec<Vec<usize>> = seen.into_keys().collect();
        let index: HashMap<&[usize], usize> = perms
            .iter()
            .enumerate()
            .map(|(i, p)| (p.as_slice(), i))
            .collect();
        let n = perms.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &perms {
            for b in &perms {
                table.push(index[compose(a, b).as_slice()]);
            }
        }
        Self::from_flat_trusted(n, table)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn product<I: IntoIterator<Item = usize>>(&self, items: I) -> usize {
        items
            .into_iter()
            .fold(self.identity, |acc, x| self.mul(acc, x))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = self.identity;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `g⁻¹ a g`.
    #[inline]
    pub fn conj(&self, a: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), a), g)
    }

    /// `[a, b] = a⁻¹ b⁻¹ a b`.
    #[inline]
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        for a in self.elements() {
            for b in a + 1..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Membership mask of the subgroup generated by `seeds`.
    pub fn generated_mask(&self, seeds: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &s in seeds {
                let y = self.mul(x, s);
                if !mask[y] {
                    mask[y] = true;
                    queue.push_back(y);
                }
            }
        }
        mask
    }

    /// A small generating set chosen greedily (largest new subgroup first,
    /// lowest index on ties). Cached.
    pub fn generators(&self) -> &[usize] {
        self.generators.get_or_init(|| {
            let mut gens = Vec::new();
            let mut mask = self.generated_mask(&[]);
            let mut covered = 1;
            while covered < self.order {
                let mut best: Option<(usize, usize, Vec<bool>)> = None;
                for x in self.elements().filter(|&x| !mask[x]) {
                    let mut trial = gens.clone();
                    trial.push(x);
                    let m = self.generated_mask(&trial);
                    let size = m.iter().filter(|&&b| b).count();
                    if best.as_ref().map_or(true, |(s, _, _)| size > *s) {
                        best = Some((size, x, m));
                    }
                }
                let (size, x, m) = best.expect("uncovered element exists");
                gens.push(x);
                mask = m;
                covered = size;
            }
            gens
        })
    }

    /// Spanning tree words: for each element, a word in `generators()`
    /// (indices into that list) reaching it from the identity by right
    /// multiplication.
    pub fn generator_words(&self) -> Vec<Vec<usize>> {
        let gens = self.generators();
        let mut words: Vec<Option<Vec<usize>>> = vec![None; self.order];
        words[self.identity] = Some(Vec::new());
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (i, &s) in gens.iter().enumerate() {
                let y = self.mul(x, s);
                if words[y].is_none() {
                    let mut w = words[x].clone().unwrap();
                    w.push(i);
                    words[y] = Some(w);
                    queue.push_back(y);
                }
            }
        }
        words.into_iter().map(|w| w.unwrap()).collect()
    }

    pub fn whole(self: &GroupRef) -> Subgroup {
        Subgroup::from_mask(self.clone(), vec![true; self.order])
    }

    pub fn trivial_subgroup(self: &GroupRef) -> Subgroup {
        let mut mask = vec![false; self.order];
        mask[self.identity] = true;
        Subgroup::from_mask(self.clone(), mask)
    }

    pub fn subgroup_generated(self: &GroupRef, seeds: &[usize]) -> Subgroup {
        Subgroup::from_mask(self.clone(), self.generated_mask(seeds))
    }
}

/// Mixed-radix indexing for products of cyclic groups (last digit fastest).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedRadix {
    radices: Vec<usize>,
}

impl MixedRadix {
    pub fn new(radices: &[usize]) -> Self {
        MixedRadix {
            radices: radices.to_vec(),
        }
    }

    pub fn size(&self) -> usize {
        self.radices.iter().product()
    }

    pub fn radices(&self) -> &[usize] {
        &self.radices
    }

    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.radices.len()];
        for (slot, &r) in out.iter_mut().zip(&self.radices).rev() {
            *slot = index % r;
            index /= r;
        }
        out
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.radices)
            .fold(0, |acc, (&d, &r)| acc * r + d % r)
    }
}

/// A subgroup given as a membership mask over its ambient group.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: GroupRef,
    mask: Vec<bool>,
    members: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.mask == other.mask
    }
}

impl Subgroup {
    pub(crate) fn from_mask(ambient: GroupRef, mask: Vec<bool>) -> Subgroup {
        let members = (0..mask.len()).filter(|&i| mask[i]).collect();
        Subgroup {
            ambient,
            mask,
            members,
        }
    }

    /// Validates that `members` is closed under products and contains the identity.
    pub fn from_members(ambient: GroupRef, members: &[usize]) -> Result<Subgroup> {
        let mut mask = vec![false; ambient.order()];
        for &m in members {
            if m >= ambient.order() {
                return Err(Error::MalformedTable(format!("element {m} out of range")));
            }
            mask[m] = true;
        }
        if !mask[ambient.identity()] {
            return Err(Error::MalformedTable("subset lacks the identity".into()));
        }
        for &a in members {
            for &b in members {
                if !mask[ambient.mul(a, b)] {
                    return Err(Error::MalformedTable(format!(
                        "subset not closed: {a}*{b}"
                    )));
                }
            }
        }
        Ok(Self::from_mask(ambient, mask))
    }

    pub fn ambient(&self) -> &GroupRef {
        &self.ambient
    }

    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.ambient.order()
    }

    /// First `(n, g)` with `g⁻¹ n g` outside the subgroup.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        for &n in &self.members {
            for g in self.ambient.elements() {
                if !self.mask[self.ambient.conj(n, g)] {
                    return Some((n, g));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// The subgroup as a group in its own right (members in ascending order)
    /// together with the inclusion homomorphism.
    pub fn embedding(&self) -> (GroupRef, GroupHom) {
        let pos: HashMap<usize, usize> = self
            .members
            .iter()
            .enumerate()
            .map(|(i, &m)| (m, i))
            .collect();
        let k = self.members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                table.push(pos[&self.ambient.mul(a, b)]);
            }
        }
        let g: GroupRef = Arc::new(FiniteGroup::from_flat_trusted(k, table).expect("subgroup is a group"));
        let inclusion = GroupHom::new_unchecked(g.clone(), self.ambient.clone(), self.members.clone());
        (g, inclusion)
    }
}

/// Smallest normal subgroup containing `seeds`, saturated by conjugation and
/// multiplication.
pub fn normal_closure(group: &GroupRef, seeds: &[usize]) -> Subgroup {
    invariant_normal_closure(group, seeds, &[])
}

/// Normal closure that is additionally stable under the given automorphisms
/// (each a permutation of the group's elements).
pub fn invariant_normal_closure(
    group: &GroupRef,
    seeds: &[usize],
    automorphisms: &[Vec<usize>],
) -> Subgroup {
    let n = group.order();
    let mut mask = vec![false; n];
    mask[group.identity()] = true;
    let mut members = vec![group.identity()];
    let mut queue: VecDeque<usize> = VecDeque::new();
    let push = |x: usize, mask: &mut Vec<bool>, members: &mut Vec<usize>, queue: &mut VecDeque<usize>| {
        if !mask[x] {
            mask[x] = true;
            members.push(x);
            queue.push_back(x);
        }
    };
    for &s in seeds {
        push(s, &mut mask, &mut members, &mut queue);
    }
    while let Some(x) = queue.pop_front() {
        for g in 0..n {
            push(group.conj(x, g), &mut mask, &mut members, &mut queue);
        }
        for auto in automorphisms {
            push(auto[x], &mut mask, &mut members, &mut queue);
        }
        let snapshot = members.clone();
        for y in snapshot {
            push(group.mul(x, y), &mut mask, &mut members, &mut queue);
            push(group.mul(y, x), &mut mask, &mut members, &mut queue);
        }
    }
    Subgroup::from_mask(group.clone(), mask)
}

/// All normal subgroups, ordered by size and then by member list.
pub fn normal_subgroups(group: &GroupRef) -> Vec<Subgroup> {
    let mut found: Vec<Subgroup> = vec![group.trivial_subgroup()];
    let mut frontier = found.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for n in &frontier {
            for g in group.elements() {
                if n.contains(g) {
                    continue;
                }
                let mut seeds = n.members().to_vec();
                seeds.push(g);
                let m = normal_closure(group, &seeds);
                if !found.contains(&m) {
                    found.push(m.clone());
                    next.push(m);
                }
            }
        }
        frontier = next;
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members().cmp(b.members())));
    found
}

/// A quotient group `G/N` with canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: GroupRef,
    pub projection: GroupHom,
    /// Minimal element index of each coset, in coset order.
    pub representatives: Vec<usize>,
}

/// Forms `G/N`. Cosets are numbered by increasing minimal representative.
pub fn quotient(group: &GroupRef, normal: &Subgroup) -> Result<Quotient> {
    if normal.ambient() != group {
        return Err(Error::TypeMismatch("subgroup of a different group".into()));
    }
    if let Some((n, g)) = normal.normality_witness() {
        return Err(Error::NotNormal { n, g });
    }
    let n = group.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for g in 0..n {
        if coset[g] == usize::MAX {
            let id = reps.len();
            reps.push(g);
            for &k in normal.members() {
                coset[group.mul(g, k)] = id;
            }
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(coset[group.mul(a, b)]);
        }
    }
    let qg: GroupRef = Arc::new(FiniteGroup::from_flat_trusted(k, table)?);
    let projection = GroupHom::new(group.clone(), qg.clone(), coset)?;
    Ok(Quotient {
        group: qg,
        projection,
        representatives: reps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn trivial_and_z2_tables() {
        let t = FiniteGroup::from_table(&[vec![0]]).unwrap();
        assert_eq!(t.order(), 1);
        let z2 = FiniteGroup::from_table(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.order(), 2);
        assert_eq!(z2.inv(1), 1);
    }

    #[test]
    fn missing_inverse_is_reported() {
        let err = FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err();
        assert!(matches!(err, Error::NoInverse { element: 1 }));
    }

    #[test]
    fn nonassociative_and_identityless_tables() {
        // A quasigroup-like table with identity 0 that is not associative.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        assert!(matches!(
            FiniteGroup::from_table(&rows),
            Err(Error::NotAssociative { .. })
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![1, 0], vec![0, 0]]),
            Err(Error::NoIdentity)
        ));
        assert!(matches!(
            FiniteGroup::from_table(&[vec![0, 2], vec![1, 0]]),
            Err(Error::MalformedTable(_))
        ));
    }

    #[test]
    fn s3_three_cycle_normal_closure_is_a3() {
        let s3 = catalog::symmetric(3);
        let three_cycle = s3
            .elements()
            .find(|&x| s3.element_order(x) == 3)
            .unwrap();
        let a3 = normal_closure(&s3, &[three_cycle]);
        assert_eq!(a3.order(), 3);
        assert!(normal_closure(&s3, &[s3.identity()]).is_trivial());
        let all: Vec<usize> = s3.elements().collect();
        assert!(normal_closure(&s3, &all).is_whole());
        // A transposition generates a non-normal subgroup whose closure is S3.
        let tr = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        assert!(!s3.subgroup_generated(&[tr]).is_normal());
        assert!(normal_closure(&s3, &[tr]).is_whole());
    }

    #[test]
    fn quotients_of_z4() {
        let z4: GroupRef = Arc::new(FiniteGroup::cyclic(4));
        let n = Subgroup::from_members(z4.clone(), &[0, 2]).unwrap();
        let q = quotient(&z4, &n).unwrap();
        assert_eq!(q.group.order(), 2);
        assert_eq!(q.representatives, vec![0, 1]);
        assert_eq!(q.projection.kernel().members(), &[0, 2]);
        let full = quotient(&z4, &z4.whole()).unwrap();
        assert_eq!(full.group.order(), 1);
        let same = quotient(&z4, &z4.trivial_subgroup()).unwrap();
        assert_eq!(*same.group, *z4);
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = catalog::symmetric(3);
        let tr = s3.elements().find(|&x| s3.element_order(x) == 2).unwrap();
        let h = s3.subgroup_generated(&[tr]);
        assert!(matches!(quotient(&s3, &h), Err(Error::NotNormal { .. })));
    }

    #[test]
    fn generators_generate() {
        for g in catalog::small_groups(24) {
            let gens = g.group.generators().to_vec();
            assert!(g.group.generated_mask(&gens).iter().all(|&b| b), "{}", g.name);
            let words = g.group.generator_words();
            for (x, w) in words.iter().enumerate() {
                let v = g.group.product(w.iter().map(|&i| gens[i]));
                assert_eq!(v, x);
            }
        }
    }

    #[test]
    fn mixed_radix_round_trip() {
        let r = MixedRadix::new(&[2, 3, 4]);
        for i in 0..r.size() {
            assert_eq!(r.index(&r.digits(i)), i);
        }
    }
}
