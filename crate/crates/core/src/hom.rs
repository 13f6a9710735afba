use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, Subgroup};

/// A homomorphism stored as a total lookup table.
#[derive(Clone, Debug)]
pub struct GroupHom {
    source: GroupRef,
    target: GroupRef,
    map: Vec<usize>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && self.source == other.source && self.target == other.target
    }
}

impl GroupHom {
    pub fn new(source: GroupRef, target: GroupRef, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != source.order() {
            return Err(Error::MalformedTable(format!(
                "hom table has {} entries for a source of order {}",
                map.len(),
                source.order()
            )));
        }
        if let Some(&bad) = map.iter().find(|&&x| x >= target.order()) {
            return Err(Error::MalformedTable(format!("image {bad} out of range")));
        }
        for a in source.elements() {
            for b in source.elements() {
                if map[source.mul(a, b)] != target.mul(map[a], map[b]) {
                    return Err(Error::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom { source, target, map })
    }

    pub(crate) fn new_unchecked(source: GroupRef, target: GroupRef, map: Vec<usize>) -> GroupHom {
        debug_assert_eq!(map.len(), source.order());
        GroupHom { source, target, map }
    }

    pub fn identity(group: &GroupRef) -> GroupHom {
        GroupHom::new_unchecked(group.clone(), group.clone(), group.elements().collect())
    }

    pub fn trivial(source: &GroupRef, target: &GroupRef) -> GroupHom {
        GroupHom::new_unchecked(
            source.clone(),
            target.clone(),
            vec![target.identity(); source.order()],
        )
    }

    pub fn source(&self) -> &GroupRef {
        &self.source
    }

    pub fn target(&self) -> &GroupRef {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`: first `self`, then `other`.
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom> {
        if self.target != other.source {
            return Err(Error::TypeMismatch("composition of non-composable homs".into()));
        }
        Ok(GroupHom::new_unchecked(
            self.source.clone(),
            other.target.clone(),
            self.map.iter().map(|&x| other.map[x]).collect(),
        ))
    }

    pub fn kernel(&self) -> Subgroup {
        let e = self.target.identity();
        Subgroup::from_mask(self.source.clone(), self.map.iter().map(|&x| x == e).collect())
    }

    pub fn image(&self) -> Subgroup {
        let mut mask = vec![false; self.target.order()];
        for &x in &self.map {
            mask[x] = true;
        }
        Subgroup::from_mask(self.target.clone(), mask)
    }

    pub fn is_trivial(&self) -> bool {
        self.map.iter().all(|&x| x == self.target.identity())
    }

    /// A nontrivial kernel element, if any.
    pub fn kernel_witness(&self) -> Option<usize> {
        let e = self.target.identity();
        self.source
            .elements()
            .find(|&a| a != self.source.identity() && self.map[a] == e)
    }

    /// A target element outside the image, if any.
    pub fn cokernel_witness(&self) -> Option<usize> {
        let img = self.image();
        self.target.elements().find(|&x| !img.contains(x))
    }

    pub fn is_mono(&self) -> bool {
        self.kernel_witness().is_none()
    }

    pub fn is_epi(&self) -> bool {
        self.cokernel_witness().is_none()
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    /// Inverse table of a monomorphism: target element → source preimage.
    pub fn preimages(&self) -> Vec<Option<usize>> {
        let mut out = vec![None; self.target.order()];
        for a in self.source.elements().rev() {
            out[self.map[a]] = Some(a);
        }
        out
    }
}

/// Size limits for exhaustive homomorphism searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomBound {
    pub max_source: usize,
    pub max_target: usize,
}

impl Default for HomBound {
    fn default() -> Self {
        HomBound {
            max_source: 24,
            max_target: 24,
        }
    }
}

impl HomBound {
    pub fn square(n: usize) -> Self {
        HomBound {
            max_source: n,
            max_target: n,
        }
    }
}

/// All homomorphisms `G → H`, sorted lexicographically by map table.
///
/// Candidates are generated by assigning images to a generating set of `G`
/// (pruned by element order) and extending along the Cayley graph; any
/// inconsistency discards the assignment.
pub fn enumerate_homs(g: &GroupRef, h: &GroupRef, bound: HomBound) -> Result<Vec<GroupHom>> {
    if g.order() > bound.max_source || h.order() > bound.max_target {
        return Err(Error::BoundExceeded(format!(
            "Hom(G, H) with |G| = {}, |H| = {} exceeds bound {}x{}",
            g.order(),
            h.order(),
            bound.max_source,
            bound.max_target
        )));
    }
    let gens = g.generators().to_vec();
    let h_orders: Vec<usize> = h.elements().map(|x| h.element_order(x)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let n = g.element_order(s);
            h.elements().filter(|&y| n % h_orders[y] == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images, &mut out);
    let mut maps: Vec<Vec<usize>> = out;
    maps.sort();
    maps.dedup();
    Ok(maps
        .into_iter()
        .map(|m| GroupHom::new_unchecked(g.clone(), h.clone(), m))
        .collect())
}

fn search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = images.len();
    // Partial consistency on the subgroup generated so far.
    let partial = extend(g, h, &gens[..depth], images);
    let Some(map) = partial else { return };
    if depth == gens.len() {
        out.push(map.into_iter().map(|x| x.expect("generators span")).collect());
        return;
    }
    for &y in &candidates[depth] {
        images.push(y);
        search(g, h, gens, candidates, images, out);
        images.pop();
    }
}

/// Extends generator images along right multiplication; `None` on conflict.
fn extend(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<Option<usize>>> {
    let mut map = vec![None; g.order()];
    map[g.identity()] = Some(h.identity());
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = map[x].unwrap();
        for (&s, &fs) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, fs);
            match map[y] {
                Some(existing) if existing != fy => return None,
                Some(_) => {}
                None => {
                    map[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    Some(map)
}

/// Builds the unique homomorphism with the given generator images, if one exists.
pub fn hom_from_generator_images(
    g: &GroupRef,
    h: &GroupRef,
    gens: &[usize],
    images: &[usize],
) -> Option<GroupHom> {
    let map = extend(g, h, gens, images)?;
    if map.iter().any(|x| x.is_none()) {
        return None;
    }
    Some(GroupHom::new_unchecked(
        g.clone(),
        h.clone(),
        map.into_iter().map(Option::unwrap).collect(),
    ))
}

/// The automorphism group of `g` as permutations, with the group built on
/// them (composition: apply the first, then the second).
pub fn automorphism_group(g: &GroupRef, bound: HomBound) -> Result<(GroupRef, Vec<Vec<usize>>)> {
    let autos: Vec<Vec<usize>> = enumerate_homs(g, g, bound)?
        .into_iter()
        .filter(|f| f.is_iso())
        .map(|f| f.map)
        .collect();
    let index: std::collections::HashMap<&[usize], usize> =
        autos.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
    let n = autos.len();
    let mut table = Vec::with_capacity(n * n);
    for a in &autos {
        for b in &autos {
            let c: Vec<usize> = a.iter().map(|&x| b[x]).collect();
            table.push(index[c.as_slice()]);
        }
    }
    let group = Arc::new(FiniteGroup::from_flat_trusted(n, table)?);
    Ok((group, autos))
}
