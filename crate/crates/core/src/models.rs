//! Unit-quaternion realizations of Σ̃₄⁻ (48 elements in S³ over Q(√2)) and
//! Ã₅ (120 Galois-conjugate pairs in S³ × S³ over Q(√5)), used as
//! independent cross-checks of the Clifford-backed enumerations.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::algebra::{QuadraticScalar, Quaternion};
use crate::cover::{cycle_lift, transposition_lift, LiftedPermutation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error("group order mismatch: model has {0}, cover has {1}")]
    OrderMismatch(usize, usize),
    #[error("model is not closed under multiplication")]
    NotClosed,
    #[error("no isomorphism found over {0} candidate generator images")]
    NoIsomorphism(usize),
}

/// One element: a unit quaternion, or a pair for groups inside S³ × S³.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
#[allow(clippy::large_enum_variant)]
pub enum ModelElement {
    Single(Quaternion),
    Pair(Quaternion, Quaternion),
}

impl ModelElement {
    pub fn mul(&self, other: &ModelElement) -> ModelElement {
        match (self, other) {
            (ModelElement::Single(a), ModelElement::Single(b)) => {
                ModelElement::Single(a.mul(b).expect("common radicand"))
            }
            (ModelElement::Pair(a1, a2), ModelElement::Pair(b1, b2)) => ModelElement::Pair(
                a1.mul(b1).expect("common radicand"),
                a2.mul(b2).expect("common radicand"),
            ),
            _ => panic!("mixed model element kinds"),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            ModelElement::Single(q) => q.is_one(),
            ModelElement::Pair(a, b) => a.is_one() && b.is_one(),
        }
    }

    pub fn has_unit_norm(&self) -> bool {
        let unit = |q: &Quaternion| q.norm().map(|n| n == QuadraticScalar::one(q.radicand()));
        match self {
            ModelElement::Single(q) => unit(q).unwrap_or(false),
            ModelElement::Pair(a, b) => {
                unit(a).unwrap_or(false) && unit(b).unwrap_or(false)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct UnitQuaternionGroup {
    elements: Vec<ModelElement>,
}

impl UnitQuaternionGroup {
    pub fn from_elements(elements: Vec<ModelElement>) -> Self {
        UnitQuaternionGroup { elements }
    }

    pub fn elements(&self) -> &[ModelElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    fn index_of(&self, e: &ModelElement) -> Option<usize> {
        self.elements.iter().position(|x| x == e)
    }

    /// Checks closure under multiplication, presence of ±1, inverses, and
    /// unit norms.
    pub fn verify_closure(&self) -> Result<(), ModelError> {
        let mut table: HashMap<&ModelElement, usize> = HashMap::new();
        for (i, e) in self.elements.iter().enumerate() {
            if !e.has_unit_norm() {
                return Err(ModelError::NotClosed);
            }
            if table.insert(e, i).is_some() {
                return Err(ModelError::NotClosed);
            }
        }
        for a in &self.elements {
            let mut has_inverse = false;
            for b in &self.elements {
                let p = a.mul(b);
                if p.is_one() {
                    has_inverse = true;
                }
                if !table.contains_key(&p) {
                    return Err(ModelError::NotClosed);
                }
            }
            if !has_inverse {
                return Err(ModelError::NotClosed);
            }
        }
        Ok(())
    }

    pub fn element_order(&self, e: &ModelElement) -> usize {
        let mut acc = e.clone();
        let mut m = 1;
        while !acc.is_one() {
            acc = acc.mul(e);
            m += 1;
            assert!(m <= 240, "order computation ran away");
        }
        m
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for e in &self.elements {
            *h.entry(self.element_order(e)).or_insert(0) += 1;
        }
        h
    }
}

fn q2(r: (i64, i64, i64), x: (i64, i64, i64), y: (i64, i64, i64), z: (i64, i64, i64)) -> Quaternion {
    let s = |(a, b, c): (i64, i64, i64)| QuadraticScalar::new(2, a, b, c);
    Quaternion::new(s(r), s(x), s(y), s(z)).expect("common radicand")
}

/// The 48 symmetries: {±1, ±a, (±1±a)/√2, (±a±b)/√2, (±1±i±j±k)/2} with
/// a, b distinct imaginary units. 1/√2 is stored as √2/2 in Q(√2).
pub fn build_sigma4_model() -> UnitQuaternionGroup {
    let mut elements = Vec::new();
    let zero = (0, 0, 1);
    let h = |sign: i64| (0, sign, 2); // sign/√2
    let half = |sign: i64| (sign, 0, 2);
    // ±1
    for s in [1i64, -1] {
        elements.push(ModelElement::Single(q2((s, 0, 1), zero, zero, zero)));
    }
    // ±i, ±j, ±k
    for axis in 0..3 {
        for s in [1i64, -1] {
            let mut comps = [zero; 3];
            comps[axis] = (s, 0, 1);
            elements.push(ModelElement::Single(q2(zero, comps[0], comps[1], comps[2])));
        }
    }
    // (±1 ± a)/√2
    for axis in 0..3 {
        for s0 in [1i64, -1] {
            for s1 in [1i64, -1] {
                let mut comps = [zero; 3];
                comps[axis] = h(s1);
                elements.push(ModelElement::Single(q2(h(s0), comps[0], comps[1], comps[2])));
            }
        }
    }
    // (±a ± b)/√2 over unordered pairs of axes
    for a in 0..3 {
        for b in (a + 1)..3 {
            for s0 in [1i64, -1] {
                for s1 in [1i64, -1] {
                    let mut comps = [zero; 3];
                    comps[a] = h(s0);
                    comps[b] = h(s1);
                    elements.push(ModelElement::Single(q2(zero, comps[0], comps[1], comps[2])));
                }
            }
        }
    }
    // (±1 ± i ± j ± k)/2
    for s0 in [1i64, -1] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                for s3 in [1i64, -1] {
                    elements.push(ModelElement::Single(q2(half(s0), half(s1), half(s2), half(s3))));
                }
            }
        }
    }
    UnitQuaternionGroup { elements }
}

fn q5(r: QuadraticScalar, v: [QuadraticScalar; 3]) -> Quaternion {
    let [x, y, z] = v;
    Quaternion::new(r, x, y, z).expect("common radicand")
}

/// The 120 elements of Ã₅ ⊂ S³ × S³ as pairs (x, x̄) with x̄ the Galois
/// conjugate √5 ↦ -√5, following the appendix list family by family.
pub fn build_a5_model() -> UnitQuaternionGroup {
    let z = || QuadraticScalar::zero(5);
    let int = |v: i64| QuadraticScalar::from_int(5, v);
    let frac = |a: i64, b: i64, c: i64| QuadraticScalar::new(5, a, b, c);
    let mut firsts: Vec<Quaternion> = Vec::new();

    // ±(1,1)
    firsts.push(q5(int(1), [z(), z(), z()]));
    firsts.push(q5(int(-1), [z(), z(), z()]));

    // (α, α) with α = (±1±i±j±k)/2: orders 3 and 6
    for s0 in [1i64, -1] {
        for s1 in [1i64, -1] {
            for s2 in [1i64, -1] {
                for s3 in [1i64, -1] {
                    firsts.push(q5(frac(s0, 0, 2), [frac(s1, 0, 2), frac(s2, 0, 2), frac(s3, 0, 2)]));
                }
            }
        }
    }

    // cyclic (α, β) pairs with αβ = γ: axes (0,1), (1,2), (2,0)
    let cyclic = [(0usize, 1usize), (1, 2), (2, 0)];
    let anticyclic = [(1usize, 0usize), (2, 1), (0, 2)];

    // ±(1/2 + aα + bβ) with a = ±(√5-1)/4, b = ±(√5+1)/4
    for &(ax, bx) in &cyclic {
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                for outer in [1i64, -1] {
                    let a = frac(-sa, sa, 4);
                    let b = frac(sb, sb, 4);
                    let mut v = [z(), z(), z()];
                    v[ax] = a;
                    v[bx] = b;
                    let mut q = q5(frac(1, 0, 2), v);
                    if outer < 0 {
                        q = q.neg();
                    }
                    firsts.push(q);
                }
            }
        }
    }

    // ±(a ± āα ± β/2) with a = (1-√5)/4 when αβ = γ, (1+√5)/4 otherwise
    for (pairs, asign) in [(&cyclic, -1i64), (&anticyclic, 1i64)] {
        for &(ax, bx) in pairs.iter() {
            for s1 in [1i64, -1] {
                for s2 in [1i64, -1] {
                    for outer in [1i64, -1] {
                        let a = frac(1, asign, 4);
                        let abar = frac(1, -asign, 4);
                        let mut v = [z(), z(), z()];
                        v[ax] = if s1 > 0 { abar.clone() } else { abar.neg() };
                        v[bx] = frac(s2, 0, 2);
                        let mut q = q5(a, v);
                        if outer < 0 {
                            q = q.neg();
                        }
                        firsts.push(q);
                    }
                }
            }
        }
    }

    // ±(α, α), α ∈ {i, j, k}: order 4
    for axis in 0..3 {
        for s in [1i64, -1] {
            let mut v = [z(), z(), z()];
            v[axis] = int(s);
            firsts.push(q5(z(), v));
        }
    }

    // (aα + bβ + cγ) with a = ±(1+√5)/4, b = ±(1-√5)/4, c = ±1/2, αβ = γ
    for &(ax, bx) in &cyclic {
        let cx = 3 - ax - bx;
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                for sc in [1i64, -1] {
                    let mut v = [z(), z(), z()];
                    v[ax] = frac(sa, sa, 4);
                    v[bx] = frac(sb, -sb, 4);
                    v[cx] = frac(sc, 0, 2);
                    firsts.push(q5(z(), v));
                }
            }
        }
    }

    let elements = firsts
        .into_iter()
        .map(|q| {
            let bar = q.galois();
            ModelElement::Pair(q, bar)
        })
        .collect();
    UnitQuaternionGroup { elements }
}

#[derive(Debug, Clone)]
pub struct IsomorphismReport {
    /// mapping[i] = index in the model of the image of cover element i.
    pub mapping: Vec<usize>,
    pub candidates_tried: usize,
}

/// Finds a group isomorphism from the enumerated cover onto the quaternion
/// model by fixing two generators, extending over the Cayley graph, and
/// verifying the whole multiplication table. Groups are tiny, so the search
/// is brute force over candidate generator images of matching order.
pub fn verify_model_isomorphism(
    model: &UnitQuaternionGroup,
    cover: &[LiftedPermutation],
) -> Result<IsomorphismReport, ModelError> {
    if model.len() != cover.len() {
        return Err(ModelError::OrderMismatch(model.len(), cover.len()));
    }
    model.verify_closure()?;
    let rank = cover[0].rank();
    let even_only = cover.iter().all(|x| !x.parity_odd());
    let (g1, g2) = if even_only {
        (
            cycle_lift(&[0, 1, 2], rank).expect("rank ≥ 3"),
            cycle_lift(&(0..rank).collect::<Vec<_>>(), rank).expect("full cycle"),
        )
    } else {
        (
            transposition_lift(0, 1, rank).expect("rank ≥ 2"),
            cycle_lift(&(0..rank).collect::<Vec<_>>(), rank).expect("full cycle"),
        )
    };
    let cover_index: HashMap<&LiftedPermutation, usize> =
        cover.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let o1 = g1.order();
    let o2 = g2.order();
    let h1s: Vec<usize> = (0..model.len())
        .filter(|&i| model.element_order(&model.elements[i]) == o1)
        .collect();
    let h2s: Vec<usize> = (0..model.len())
        .filter(|&i| model.element_order(&model.elements[i]) == o2)
        .collect();

    let try_pair = |h1: usize, h2: usize| -> Option<Vec<usize>> {
        // breadth-first extension over words in g1, g2
        let mut image: Vec<Option<usize>> = vec![None; cover.len()];
        let id_cover = cover_index[&LiftedPermutation::identity(rank)];
        let id_model = model.index_of(&one_like(&model.elements[0]))?;
        image[id_cover] = Some(id_model);
        let mut frontier = vec![id_cover];
        let gens = [(g1.clone(), h1), (g2.clone(), h2)];
        while let Some(x) = frontier.pop() {
            for (g, h) in &gens {
                let y = cover[x].mul(g).expect("equal ranks");
                let yi = cover_index[&y];
                let img = model.elements[image[x].unwrap()].mul(&model.elements[*h]);
                let img_i = model.index_of(&img)?;
                match image[yi] {
                    None => {
                        image[yi] = Some(img_i);
                        frontier.push(yi);
                    }
                    Some(prev) => {
                        if prev != img_i {
                            return None;
                        }
                    }
                }
            }
        }
        let mapping: Vec<usize> = image.into_iter().collect::<Option<Vec<_>>>()?;
        // bijectivity
        let mut seen = vec![false; mapping.len()];
        for &m in &mapping {
            if seen[m] {
                return None;
            }
            seen[m] = true;
        }
        // full homomorphism check
        for (i, a) in cover.iter().enumerate() {
            for (j, b) in cover.iter().enumerate() {
                let ab = a.mul(b).expect("equal ranks");
                let k = cover_index[&ab];
                let img = model.elements[mapping[i]].mul(&model.elements[mapping[j]]);
                if model.index_of(&img) != Some(mapping[k]) {
                    return None;
                }
            }
        }
        Some(mapping)
    };

    let pairs: Vec<(usize, usize)> =
        h1s.iter().flat_map(|&a| h2s.iter().map(move |&b| (a, b))).collect();
    let found = crate::util::par_find_map(&pairs, |&(h1, h2)| try_pair(h1, h2));
    match found {
        Some(mapping) => Ok(IsomorphismReport { mapping, candidates_tried: pairs.len() }),
        None => Err(ModelError::NoIsomorphism(pairs.len())),
    }
}

fn one_like(e: &ModelElement) -> ModelElement {
    match e {
        ModelElement::Single(q) => ModelElement::Single(Quaternion::one(q.radicand())),
        ModelElement::Pair(a, _) => {
            ModelElement::Pair(Quaternion::one(a.radicand()), Quaternion::one(a.radicand()))
        }
    }
}
