//! Invariant factor decompositions of finite abelian groups and the tensor
//! square `C ⊗ C`.

use std::sync::Arc;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef, MixedRadix};
use crate::hom::GroupHom;

/// An explicit isomorphism `G ≅ Z/d₁ × … × Z/dₖ` with `d₁ | d₂ | … | dₖ`.
#[derive(Clone, Debug)]
pub struct AbelianDecomposition {
    group: GroupRef,
    invariant_factors: Vec<usize>,
    generators: Vec<usize>,
    coordinates: Vec<Vec<usize>>,
    from_coordinates: Vec<usize>,
}

impl AbelianDecomposition {
    pub fn group(&self) -> &GroupRef {
        &self.group
    }

    pub fn invariant_factors(&self) -> &[usize] {
        &self.invariant_factors
    }

    /// Elements realizing the cyclic factors, one per invariant factor.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn coordinates(&self, x: usize) -> &[usize] {
        &self.coordinates[x]
    }

    pub fn element(&self, coords: &[usize]) -> usize {
        self.from_coordinates[MixedRadix::new(&self.invariant_factors).index(coords)]
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
}

/// Invariant factors by maximal-order peeling.
///
/// Each primary component is split off one cyclic summand at a time: pick an
/// element whose class has maximal order modulo the summands found so far,
/// then correct it by an element of those summands so that its own order
/// equals that class order. Primary bases are then merged into invariant
/// factors.
pub fn abelian_invariants(group: &GroupRef) -> Result<AbelianDecomposition> {
    if let Some((a, b)) = group.noncommuting_pair() {
        return Err(Error::NotAbelian { a, b });
    }
    let n = group.order();
    let orders: Vec<usize> = group.elements().map(|x| group.element_order(x)).collect();

    // (prime, exponent, generator) for every primary cyclic summand.
    let mut primary: Vec<(usize, u32, usize)> = Vec::new();
    for p in prime_factors(n) {
        let part: Vec<usize> = group
            .elements()
            .filter(|&x| is_power_of(orders[x], p))
            .collect();
        primary.extend(
            peel_p_part(group, &part, p)
                .into_iter()
                .map(|(e, g)| (p, e, g)),
        );
    }

    let rank = {
        let mut r = 0;
        for p in prime_factors(n) {
            r = r.max(primary.iter().filter(|t| t.0 == p).count());
        }
        r
    };
    // Slot k (0 = largest) collects the k-th largest summand of every prime.
    let mut factors = vec![1usize; rank];
    let mut gens = vec![group.identity(); rank];
    for p in prime_factors(n) {
        let mut summands: Vec<(u32, usize)> = primary
            .iter()
            .filter(|t| t.0 == p)
            .map(|t| (t.1, t.2))
            .collect();
        summands.sort_by(|a, b| b.0.cmp(&a.0));
        for (k, (e, g)) in summands.into_iter().enumerate() {
            factors[k] *= p.pow(e);
            gens[k] = group.mul(gens[k], g);
        }
    }
    factors.reverse();
    gens.reverse();

    let radix = MixedRadix::new(&factors);
    let mut coordinates = vec![Vec::new(); n];
    let mut from_coordinates = vec![usize::MAX; radix.size()];
    if radix.size() != n {
        return Err(Error::DerivedPropertyFailure(format!(
            "invariant factors {factors:?} do not multiply to {n}"
        )));
    }
    for idx in 0..radix.size() {
        let c = radix.digits(idx);
        let x = group.product(
            c.iter()
                .zip(&gens)
                .map(|(&k, &g)| group.pow(g, k as i64)),
        );
        if !coordinates[x].is_empty() || (n > 1 && x == group.identity() && idx != 0) {
            return Err(Error::DerivedPropertyFailure(
                "peeled generators are not independent".into(),
            ));
        }
        coordinates[x] = c;
        from_coordinates[idx] = x;
    }
    Ok(AbelianDecomposition {
        group: group.clone(),
        invariant_factors: factors,
        generators: gens,
        coordinates,
        from_coordinates,
    })
}

fn peel_p_part(group: &FiniteGroup, part: &[usize], p: usize) -> Vec<(u32, usize)> {
    let n = group.order();
    // coords[x] = exponents of x over the basis found so far (None if outside).
    let mut coords: Vec<Option<Vec<usize>>> = vec![None; n];
    coords[group.identity()] = Some(Vec::new());
    let mut basis: Vec<(u32, usize)> = Vec::new();
    let mut span = 1usize;
    while span < part.len() {
        // class order of x modulo the current span: least p^j with x^{p^j} inside
        let class_exp = |x: usize| -> u32 {
            let mut y = x;
            let mut j = 0;
            while coords[y].is_none() {
                y = group.pow(y, p as i64);
                j += 1;
            }
            j
        };
        let (b, x) = part
            .iter()
            .map(|&x| (class_exp(x), x))
            .fold((0, usize::MAX), |best, cand| if cand.0 > best.0 { cand } else { best });
        let pb = p.pow(b);
        let landing = coords[group.pow(x, pb as i64)].clone().unwrap();
        // correct x by the basis so that its p^b-th power vanishes
        let mut fixed = x;
        for (i, &c) in landing.iter().enumerate() {
            debug_assert_eq!(c % pb, 0);
            let (_, g) = basis[i];
            fixed = group.mul(fixed, group.pow(g, -((c / pb) as i64)));
        }
        // extend coordinates to the new span
        let old: Vec<(usize, Vec<usize>)> = coords
            .iter()
            .enumerate()
            .filter_map(|(y, c)| c.clone().map(|c| (y, c)))
            .collect();
        for c in coords.iter_mut().flatten() {
            c.push(0);
        }
        let mut power = fixed;
        for k in 1..pb {
            for (y, c) in &old {
                let z = group.mul(*y, power);
                let mut cz = c.clone();
                cz.push(k);
                coords[z] = Some(cz);
            }
            power = group.mul(power, fixed);
        }
        basis.push((b, fixed));
        span *= pb;
    }
    basis
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `C ⊗ C` realized as `∏_{i,j} Z/gcd(dᵢ, dⱼ)` with basis `eᵢ ⊗ eⱼ` in
/// row-major order.
#[derive(Clone, Debug)]
pub struct TensorSquare {
    base: AbelianDecomposition,
    product: GroupRef,
    basis_orders: Vec<usize>,
    /// `bilinear[x * |C| + y] = x ⊗ y`
    bilinear: Vec<usize>,
}

/// `|C ⊗ C| = ∏ gcd(dᵢ, dⱼ)`, computed without building the group.
pub fn tensor_square_order(base: &AbelianDecomposition) -> usize {
    let d = base.invariant_factors();
    d.iter().flat_map(|&a| d.iter().map(move |&b| gcd(a, b))).product()
}

pub fn tensor_square(base: &AbelianDecomposition) -> TensorSquare {
    let d = base.invariant_factors();
    let k = d.len();
    let basis_orders: Vec<usize> = (0..k * k).map(|r| gcd(d[r / k], d[r % k])).collect();
    let product: GroupRef = Arc::new(FiniteGroup::abelian(&basis_orders));
    let radix = MixedRadix::new(&basis_orders);
    let c = base.group().order();
    let mut bilinear = Vec::with_capacity(c * c);
    for x in 0..c {
        let cx = base.coordinates(x);
        for y in 0..c {
            let cy = base.coordinates(y);
            let digits: Vec<usize> = (0..k * k)
                .map(|r| (cx[r / k] * cy[r % k]) % basis_orders[r])
                .collect();
            bilinear.push(radix.index(&digits));
        }
    }
    TensorSquare {
        base: base.clone(),
        product,
        basis_orders,
        bilinear,
    }
}

impl TensorSquare {
    pub fn base(&self) -> &AbelianDecomposition {
        &self.base
    }

    pub fn product(&self) -> &GroupRef {
        &self.product
    }

    pub fn basis_orders(&self) -> &[usize] {
        &self.basis_orders
    }

    /// `x ⊗ y` for elements of `C`.
    #[inline]
    pub fn tensor(&self, x: usize, y: usize) -> usize {
        self.bilinear[x * self.base.group().order() + y]
    }

    /// Index of the basis tensor `eᵢ ⊗ eⱼ`.
    pub fn basis_element(&self, i: usize, j: usize) -> usize {
        let g = self.base.generators();
        self.tensor(g[i], g[j])
    }

    pub fn coordinates(&self, t: usize) -> Vec<usize> {
        MixedRadix::new(&self.basis_orders).digits(t)
    }

    /// The homomorphism out of `C ⊗ C` sending `eᵢ ⊗ eⱼ` to `images[i][j]`,
    /// checked to be a homomorphism.
    pub fn hom_from_basis_images(&self, target: &GroupRef, images: &[usize]) -> Result<GroupHom> {
        let t = self.product.order();
        let mut map = Vec::with_capacity(t);
        for idx in 0..t {
            let c = self.coordinates(idx);
            let v = target.product(
                c.iter()
                    .zip(images)
                    .map(|(&k, &img)| target.pow(img, k as i64)),
            );
            map.push(v);
        }
        GroupHom::new(self.product.clone(), target.clone(), map)
    }

    /// Diagonal action `(x ⊗ y)^q = x^q ⊗ y^q` from an action on `C`.
    pub fn induced_action(&self, on_base: &GroupAction) -> Result<GroupAction> {
        if on_base.carrier() != self.base.group() {
            return Err(Error::TypeMismatch("action must be on the tensor base".into()));
        }
        let actor = on_base.actor();
        let k = self.base.rank();
        let gens = self.base.generators();
        let mut per_q: Vec<GroupHom> = Vec::with_capacity(actor.order());
        for q in actor.elements() {
            let images: Vec<usize> = (0..k * k)
                .map(|r| {
                    self.tensor(
                        on_base.act(gens[r / k], q),
                        on_base.act(gens[r % k], q),
                    )
                })
                .collect();
            per_q.push(self.hom_from_basis_images(&self.product, &images)?);
        }
        GroupAction::from_fn(actor, &self.product, |t, q| per_q[q].apply(t))
    }

    /// `h ⊗ h: C ⊗ C → C' ⊗ C'` for a homomorphism `h: C → C'`.
    pub fn tensor_map(&self, h: &GroupHom, other: &TensorSquare) -> Result<GroupHom> {
        if h.source() != self.base.group() || h.target() != other.base.group() {
            return Err(Error::TypeMismatch("tensor map between wrong bases".into()));
        }
        let k = self.base.rank();
        let gens = self.base.generators();
        let images: Vec<usize> = (0..k * k)
            .map(|r| other.tensor(h.apply(gens[r / k]), h.apply(gens[r % k])))
            .collect();
        self.hom_from_basis_images(&other.product, &images)
    }
}
