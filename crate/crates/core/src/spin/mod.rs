//! Combinatorial trivializations of the tangent bundle over the dual
//! 1-skeleton, the gauge action, transition maps around codimension-2
//! faces, and the extension criterion that carries ω₂.
//!
//! All framing calculus happens on an orientation-normalized copy of the
//! complex: simplices with negative orientation are relabelled by the
//! transposition (n-1 n), after which every gluing permutation is odd and
//! frames live in the even group A_{n+1} exactly as the motion-group
//! formalism wants. Face-class ids exposed to callers always refer to the
//! original complex.

pub mod structures;

use rand::Rng;
use thiserror::Error;

use crate::complex::skeleton::{apply_mask, Skeleton};
use crate::complex::{orient_and_w1, ComplexError, DeltaComplex, OrientationReport};
use crate::cover::{
    canonical_lift, conjugate_by_permutation, cycle_lift, transposition_lift, CentralSign,
    GroupError, LiftedPermutation,
};
use crate::gf2::BitVec;
use crate::perm::Permutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpinError {
    #[error("complex is not orientable; ω₁ obstructs every framing (see the orientation certificate)")]
    NonOrientable,
    #[error("complex error: {0}")]
    Complex(#[from] ComplexError),
    #[error("group error: {0}")]
    Group(#[from] GroupError),
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("trivialization does not satisfy the rigid-motion conditions at facet class {0}")]
    NotRigid(usize),
}

/// Orientation-normalized setting for all spin computations on one complex.
pub struct SpinContext {
    dim: usize,
    rank: usize,
    orientation: OrientationReport,
    skel: Skeleton,
    simplices: usize,
    model: DeltaComplex,
    model_skel: Skeleton,
    facet_orig_to_model: Vec<usize>,
    facet_model_to_orig: Vec<usize>,
    codim2_orig_to_model: Vec<usize>,
    codim2_model_to_orig: Vec<usize>,
}

impl SpinContext {
    pub fn new(dc: &DeltaComplex) -> Result<SpinContext, SpinError> {
        let skel = Skeleton::build(dc)?;
        let orientation = orient_and_w1(dc, &skel);
        if !orientation.orientable() {
            return Err(SpinError::NonOrientable);
        }
        let n = dc.dimension();
        let taus: Vec<Permutation> = orientation
            .signs
            .iter()
            .map(|&s| {
                if s == 1 {
                    Permutation::identity(n + 1)
                } else {
                    Permutation::transposition(n + 1, n - 1, n)
                }
            })
            .collect();
        let id_simplices = Permutation::identity(dc.simplex_count());
        let model = dc.relabeled(&id_simplices, &taus)?;
        let model_skel = Skeleton::build(&model)?;
        for f in model_skel.facets() {
            debug_assert!(f.perm.is_odd(), "normalized model must have odd transitions");
        }
        let mut facet_orig_to_model = vec![0; skel.facets().len()];
        let mut facet_model_to_orig = vec![0; skel.facets().len()];
        for f in skel.facets() {
            let (s, i) = f.side1;
            let m = model_skel.facet_class_of(s, taus[s].apply(i));
            facet_orig_to_model[f.id] = m;
            facet_model_to_orig[m] = f.id;
        }
        let mut codim2_orig_to_model = vec![0; skel.codim2_count()];
        let mut codim2_model_to_orig = vec![0; skel.codim2_count()];
        for c in skel.circuits() {
            let p = &c.positions[0];
            let m = model_skel.codim2_class_of(p.simplex, apply_mask(&taus[p.simplex], p.corner));
            codim2_orig_to_model[c.id] = m;
            codim2_model_to_orig[m] = c.id;
        }
        Ok(SpinContext {
            dim: n,
            rank: n + 1,
            orientation,
            skel,
            simplices: dc.simplex_count(),
            model,
            model_skel,
            facet_orig_to_model,
            facet_model_to_orig,
            codim2_orig_to_model,
            codim2_model_to_orig,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices
    }

    pub fn facet_count(&self) -> usize {
        self.skel.facets().len()
    }

    pub fn circuit_count(&self) -> usize {
        self.skel.codim2_count()
    }

    pub fn orientation(&self) -> &OrientationReport {
        &self.orientation
    }

    pub fn skeleton(&self) -> &Skeleton {
        &self.skel
    }

    pub fn model_skeleton(&self) -> &Skeleton {
        &self.model_skel
    }

    pub fn model(&self) -> &DeltaComplex {
        &self.model
    }

    pub fn facet_model_id(&self, orig: usize) -> usize {
        self.facet_orig_to_model[orig]
    }

    pub fn facet_orig_id(&self, model: usize) -> usize {
        self.facet_model_to_orig[model]
    }

    pub fn codim2_orig_id(&self, model: usize) -> usize {
        self.codim2_model_to_orig[model]
    }

    pub fn codim2_model_id(&self, orig: usize) -> usize {
        self.codim2_orig_to_model[orig]
    }
}

/// A frame per top simplex plus a lifted 2-part rigid motion per facet
/// class, in model coordinates. Frames are stored as the even extension of
/// the (n-1)-tuple; paths are (side-1 lift, side-2 lift).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CombinatorialTrivialization {
    pub frames: Vec<Permutation>,
    pub paths: Vec<(LiftedPermutation, LiftedPermutation)>,
}

/// The extension of the face inclusion Δⁿ⁻¹ → Δⁿ opposite `facet`, sending
/// k to the k-th smallest vertex of the facet and n to `facet` itself.
pub fn face_inclusion_ext(rank: usize, facet: usize) -> Permutation {
    let mut images: Vec<usize> = (0..rank).filter(|&v| v != facet).collect();
    images.push(facet);
    Permutation::from_images(images).expect("facet complement plus facet is total")
}

impl SpinContext {
    /// Frame tuple of a simplex: images of 0..n-1 under the stored even
    /// extension.
    fn frame_tuple(&self, t: &CombinatorialTrivialization, s: usize) -> Vec<usize> {
        (0..self.dim - 1).map(|k| t.frames[s].apply(k)).collect()
    }

    /// The canonical trivialization: identity frames, side-1 motion pushing
    /// the frame onto the lowest vertices of the facet, side-2 motion forced
    /// by the transition, both with canonical lift signs. One free sign bit
    /// per facet class is all that remains of the parameter space.
    pub fn canonical_trivialization(&self) -> CombinatorialTrivialization {
        let n = self.dim;
        let frames: Vec<Permutation> =
            (0..self.simplices).map(|_| Permutation::identity(self.rank)).collect();
        let paths = self
            .model_skel
            .facets()
            .iter()
            .map(|f| {
                let (_, i1) = f.side1;
                let fbar1 = face_inclusion_ext(self.rank, i1);
                let mut partial: Vec<Option<usize>> = vec![None; self.rank];
                for (k, slot) in partial.iter_mut().enumerate().take(n - 1) {
                    *slot = Some(fbar1.apply(k));
                }
                let b1_base = Permutation::even_extension(&partial);
                let mut partial2: Vec<Option<usize>> = vec![None; self.rank];
                for (k, slot) in partial2.iter_mut().enumerate().take(n - 1) {
                    *slot = Some(f.perm.apply(b1_base.apply(k)));
                }
                let b2_base = Permutation::even_extension(&partial2);
                (canonical_lift(&b1_base), canonical_lift(&b2_base))
            })
            .collect();
        let t = CombinatorialTrivialization { frames, paths };
        debug_assert!(self.validate_trivialization(&t).is_ok());
        t
    }

    /// Checks every rigid-motion condition a trivialization must satisfy.
    pub fn validate_trivialization(
        &self,
        t: &CombinatorialTrivialization,
    ) -> Result<(), SpinError> {
        if t.frames.len() != self.simplices || t.paths.len() != self.model_skel.facets().len() {
            return Err(SpinError::Internal("trivialization has wrong shape".into()));
        }
        for frame in &t.frames {
            if frame.is_odd() {
                return Err(SpinError::Internal("frame extension must be even".into()));
            }
        }
        for f in self.model_skel.facets() {
            let (s1, i1) = f.side1;
            let (s2, i2) = f.side2;
            let (b1, b2) = &t.paths[f.id];
            if b1.parity_odd() || b2.parity_odd() {
                return Err(SpinError::NotRigid(self.facet_orig_id(f.id)));
            }
            let tup1 = self.frame_tuple(t, s1);
            let tup2 = self.frame_tuple(t, s2);
            for k in 0..self.dim - 1 {
                let p1 = b1.base().apply(tup1[k]);
                let p2 = b2.base().apply(tup2[k]);
                if p1 == i1 || p2 == i2 || f.perm.apply(p1) != p2 {
                    return Err(SpinError::NotRigid(self.facet_orig_id(f.id)));
                }
            }
        }
        Ok(())
    }
}

/// One Ã_{n+1} element per simplex and one Σ̃ₙ⁻ element per facet class
/// (represented at rank n+1, base fixing the point n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeElement {
    pub per_simplex: Vec<LiftedPermutation>,
    pub per_facet: Vec<LiftedPermutation>,
}

impl GaugeElement {
    pub fn identity(ctx: &SpinContext) -> GaugeElement {
        GaugeElement {
            per_simplex: (0..ctx.simplices)
                .map(|_| LiftedPermutation::identity(ctx.rank))
                .collect(),
            per_facet: (0..ctx.facet_count())
                .map(|_| LiftedPermutation::identity(ctx.rank))
                .collect(),
        }
    }

    /// Componentwise product (g·h means "apply h first" under the action).
    pub fn mul(&self, other: &GaugeElement) -> GaugeElement {
        GaugeElement {
            per_simplex: self
                .per_simplex
                .iter()
                .zip(&other.per_simplex)
                .map(|(a, b)| a.mul(b).expect("equal ranks"))
                .collect(),
            per_facet: self
                .per_facet
                .iter()
                .zip(&other.per_facet)
                .map(|(a, b)| a.mul(b).expect("equal ranks"))
                .collect(),
        }
    }

    /// A gauge element whose components are all central, from sign vectors.
    pub fn central(ctx: &SpinContext, simplex_signs: &[bool], facet_signs: &[bool]) -> GaugeElement {
        GaugeElement {
            per_simplex: simplex_signs
                .iter()
                .map(|&neg| {
                    if neg {
                        LiftedPermutation::central_minus_one(ctx.rank)
                    } else {
                        LiftedPermutation::identity(ctx.rank)
                    }
                })
                .collect(),
            per_facet: facet_signs
                .iter()
                .map(|&neg| {
                    if neg {
                        LiftedPermutation::central_minus_one(ctx.rank)
                    } else {
                        LiftedPermutation::identity(ctx.rank)
                    }
                })
                .collect(),
        }
    }
}

fn random_sign<R: Rng>(rank: usize, x: LiftedPermutation, rng: &mut R) -> LiftedPermutation {
    let _ = rank;
    if rng.gen_bool(0.5) {
        x.negate()
    } else {
        x
    }
}

/// Uniformly random even permutation of 0..rank.
fn random_even_perm<R: Rng>(rank: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..rank).collect();
    for i in (1..rank).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    let mut p = Permutation::from_images(images).expect("shuffle is a bijection");
    if p.is_odd() {
        p = p.compose(&Permutation::transposition(rank, 0, 1));
    }
    p
}

/// Uniformly random permutation of 0..rank-1 fixing the last point.
fn random_fix_last_perm<R: Rng>(rank: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (0..rank - 1).collect();
    for i in (1..rank - 1).rev() {
        let j = rng.gen_range(0..=i);
        images.swap(i, j);
    }
    images.push(rank - 1);
    Permutation::from_images(images).expect("bijection")
}

/// Random gauge element: random even lifts at simplices, random Σ̃ₙ⁻ lifts
/// at facets, with random central signs.
pub fn random_gauge<R: Rng>(ctx: &SpinContext, rng: &mut R) -> GaugeElement {
    GaugeElement {
        per_simplex: (0..ctx.simplices)
            .map(|_| {
                let p = random_even_perm(ctx.rank, rng);
                random_sign(ctx.rank, canonical_lift(&p), rng)
            })
            .collect(),
        per_facet: (0..ctx.facet_count())
            .map(|_| {
                let p = random_fix_last_perm(ctx.rank, rng);
                random_sign(ctx.rank, canonical_lift(&p), rng)
            })
            .collect(),
    }
}

impl SpinContext {
    /// The Δⁿ⁻¹-coordinate missed when the side-1 frame is pushed into the
    /// facet; the rigid-motion condition makes it equal on both sides.
    fn missed_vertex(
        &self,
        facet: usize,
        frame1: &Permutation,
        b1: &LiftedPermutation,
    ) -> Result<usize, SpinError> {
        let f = &self.model_skel.facets()[facet];
        let (_, i1) = f.side1;
        let fbar1 = face_inclusion_ext(self.rank, i1);
        let inv = fbar1.inverse();
        let mut covered = vec![false; self.dim];
        for k in 0..self.dim - 1 {
            let p = b1.base().apply(frame1.apply(k));
            let c = inv.apply(p);
            if c >= self.dim {
                return Err(SpinError::NotRigid(self.facet_orig_id(facet)));
            }
            covered[c] = true;
        }
        covered
            .iter()
            .position(|&c| !c)
            .ok_or_else(|| SpinError::Internal("no missed vertex in Δⁿ⁻¹".into()))
    }

    /// The four-part gauge action. Simplex components rotate their frame and
    /// right-translate every incident path side; facet components act on
    /// their own path through conjugation by the face inclusions, using the
    /// simplified forms A[n k] and A[k n] in the odd case.
    pub fn apply_gauge(
        &self,
        g: &GaugeElement,
        t: &CombinatorialTrivialization,
    ) -> Result<CombinatorialTrivialization, SpinError> {
        let n = self.dim;
        let frames: Vec<Permutation> = t
            .frames
            .iter()
            .enumerate()
            .map(|(s, frame)| g.per_simplex[s].base().compose(frame))
            .collect();
        let mut paths = Vec::with_capacity(t.paths.len());
        for f in self.model_skel.facets() {
            let (s1, i1) = f.side1;
            let (s2, i2) = f.side2;
            let (b1, b2) = &t.paths[f.id];
            // part 2: right-translate by the incident simplex gauges
            let mut b1 = b1.mul(&g.per_simplex[s1].inverse())?;
            let mut b2 = b2.mul(&g.per_simplex[s2].inverse())?;
            // part 4: the facet's own Σ̃ₙ⁻ component
            let a = &g.per_facet[f.id];
            if !a.base().fixes(self.rank - 1) {
                return Err(SpinError::Internal("facet gauge element must fix n".into()));
            }
            if !a.is_identity() {
                let k = self.missed_vertex(f.id, &frames[s1], &b1)?;
                let (g1, g2) = if a.parity_odd() {
                    (
                        a.mul(&transposition_lift(n, k, self.rank)?)?,
                        a.mul(&transposition_lift(k, n, self.rank)?)?,
                    )
                } else {
                    (a.clone(), a.clone())
                };
                // both face inclusions must restrict to the same
                // characteristic map of F: f̄₂ = φ∘f̄₁
                let fbar1 = face_inclusion_ext(self.rank, i1);
                let fbar2 = f.perm.compose(&fbar1);
                debug_assert_eq!(fbar2.apply(self.rank - 1), i2);
                b1 = conjugate_by_permutation(&fbar1, &g1)?.mul(&b1)?;
                b2 = conjugate_by_permutation(&fbar2, &g2)?.mul(&b2)?;
            }
            paths.push((b1, b2));
        }
        let out = CombinatorialTrivialization { frames, paths };
        self.validate_trivialization(&out)
            .map_err(|e| SpinError::Internal(format!("gauge action broke rigidity: {e}")))?;
        Ok(out)
    }
}

/// F_i^W from its raw ingredients, in the coordinates extended from W:
/// (B₂^{w̄_next})⁻¹ · [a n n-1] · B₁^{w̄}, with the rotation inserted only
/// when the pushed frame misses the point a of Δⁿ⁻².
pub fn transition_value(
    rank: usize,
    b1: &LiftedPermutation,
    b2: &LiftedPermutation,
    w: &Permutation,
    w_next: &Permutation,
    frame_tuple: &[usize],
) -> Result<LiftedPermutation, SpinError> {
    let n = rank - 1;
    // re-express the simplex-coordinate motions in the coordinates extended
    // from W: a motion B in S-coordinates is w̄⁻¹ B w̄ in W-coordinates
    let b1w = conjugate_by_permutation(&w.inverse(), b1)?;
    let b2w = conjugate_by_permutation(&w_next.inverse(), b2)?;
    let winv = w.inverse();
    let mut covered = vec![false; n - 1];
    for &v in frame_tuple {
        let c = winv.apply(b1.base().apply(v));
        if c < n - 1 {
            covered[c] = true;
        }
    }
    let misses: Vec<usize> = (0..n - 1).filter(|&c| !covered[c]).collect();
    let core = match misses.as_slice() {
        [] => b1w,
        [a] => cycle_lift(&[*a, n, n - 1], rank)?.mul(&b1w)?,
        _ => {
            return Err(SpinError::Internal(
                "pushed frame misses more than one W-coordinate".into(),
            ))
        }
    };
    Ok(b2w.inverse().mul(&core)?)
}

impl SpinContext {
    /// The transition map F_i^W for position i of a circuit (model id).
    pub fn transition_map(
        &self,
        model_circuit: usize,
        i: usize,
        t: &CombinatorialTrivialization,
    ) -> Result<LiftedPermutation, SpinError> {
        let circuit = &self.model_skel.circuits()[model_circuit];
        let m = circuit.positions.len();
        let pos = &circuit.positions[i];
        let next = &circuit.positions[(i + 1) % m];
        let (stored1, stored2) = &t.paths[pos.facet];
        let (b1, b2) =
            if pos.from_side1 { (stored1, stored2) } else { (stored2, stored1) };
        let tuple = self.frame_tuple(t, pos.simplex);
        transition_value(self.rank, b1, b2, &pos.w, &next.w, &tuple)
    }

    /// The product F_m ⋯ F₁ around a circuit; always central because it
    /// projects to the identity, and the trivialization extends over the
    /// dual 2-cell exactly when the product is -1.
    pub fn circuit_obstruction(
        &self,
        model_circuit: usize,
        t: &CombinatorialTrivialization,
    ) -> Result<CentralSign, SpinError> {
        let m = self.model_skel.circuits()[model_circuit].positions.len();
        let mut acc = LiftedPermutation::identity(self.rank);
        for i in 0..m {
            let f = self.transition_map(model_circuit, i, t)?;
            acc = f.mul(&acc)?;
        }
        acc.central_sign().ok_or_else(|| {
            SpinError::Internal(format!(
                "circuit product is not central (base {})",
                acc.base()
            ))
        })
    }

    /// ω₂ as a GF(2) cochain on dual 2-cells, indexed by original
    /// codimension-2 class id: 0 where the trivialization extends
    /// (product -1), 1 where it is obstructed.
    pub fn w2_cochain(&self, t: &CombinatorialTrivialization) -> Result<BitVec, SpinError> {
        let signs = crate::util::par_map(
            &(0..self.circuit_count()).collect::<Vec<_>>(),
            |&model_id| self.circuit_obstruction(model_id, t),
        );
        let mut out = BitVec::zeros(self.circuit_count());
        for (model_id, sign) in signs.into_iter().enumerate() {
            let orig = self.codim2_orig_id(model_id);
            if sign? == CentralSign::Plus {
                out.set(orig, true);
            }
        }
        Ok(out)
    }

    /// Flips the side-1 lifts named by `signs` (original facet ids).
    pub fn apply_signs(
        &self,
        t: &CombinatorialTrivialization,
        signs: &BitVec,
    ) -> CombinatorialTrivialization {
        let mut out = t.clone();
        for orig in signs.ones() {
            let m = self.facet_model_id(orig);
            out.paths[m].0 = out.paths[m].0.negate();
        }
        out
    }
}

/// Transition maps of the pentagon patch, evaluated through the same
/// machinery as closed complexes.
pub fn patch_transition(
    patch: &crate::corpus::PentagonPatch,
    i: usize,
) -> Result<LiftedPermutation, SpinError> {
    let m = patch.b1.len();
    let frame = [patch.frames[i]];
    transition_value(
        patch.rank,
        &patch.b1[i],
        &patch.b2[i],
        &patch.w[i],
        &patch.w[(i + 1) % m],
        &frame,
    )
}

/// Full circuit product of the pentagon patch.
pub fn patch_obstruction(patch: &crate::corpus::PentagonPatch) -> Result<CentralSign, SpinError> {
    let mut acc = LiftedPermutation::identity(patch.rank);
    for i in 0..patch.b1.len() {
        acc = patch_transition(patch, i)?.mul(&acc)?;
    }
    acc.central_sign()
        .ok_or_else(|| SpinError::Internal("patch product is not central".into()))
}
