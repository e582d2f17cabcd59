//! Spin structures as solutions of a GF(2) system: one sign bit per facet
//! class, one equation per codimension-2 circuit, solutions taken modulo
//! the gauge subspace. The solution set is a torsor over H¹(N; Z₂).

use crate::cover::{canonical_lift, CentralSign};
use crate::gf2::{coset_reduce, gf2_solve, in_span, BitVec, Gf2Solution};
use crate::perm::Permutation;
use crate::spin::{CombinatorialTrivialization, GaugeElement, SpinContext, SpinError};

/// The full set of spin structures, presented as an affine GF(2) subspace
/// modulo gauge. All bit vectors are indexed by original facet-class id.
#[derive(Debug, Clone)]
pub enum SpinStructureSet {
    /// ω₂ ≠ 0: the witness is a GF(2) 2-cycle pairing oddly with ω₂.
    Empty { w2: BitVec, witness: BitVec },
    Torsor(SpinTorsor),
}

#[derive(Debug, Clone)]
pub struct SpinTorsor {
    /// particular solution: sign flips turning the canonical trivialization
    /// into a spin structure
    pub base: BitVec,
    /// cocycle representatives spanning H¹(N; Z₂) inside the solution space
    pub h1_basis: Vec<BitVec>,
    /// spanning set of the gauge subspace (image of d⁰)
    pub gauge_basis: Vec<BitVec>,
    /// ω₂ cochain of the canonical trivialization
    pub w2: BitVec,
}

impl SpinStructureSet {
    pub fn count_log2(&self) -> Option<usize> {
        match self {
            SpinStructureSet::Empty { .. } => None,
            SpinStructureSet::Torsor(t) => Some(t.h1_basis.len()),
        }
    }

    pub fn count(&self) -> u64 {
        match self.count_log2() {
            None => 0,
            Some(r) => {
                assert!(r < 64, "spin structure count overflows u64");
                1u64 << r
            }
        }
    }
}

impl SpinTorsor {
    /// Canonical coset representative of a sign vector modulo gauge.
    pub fn class_rep(&self, x: &BitVec) -> BitVec {
        coset_reduce(&self.gauge_basis, x)
    }

    /// All 2^rank class representatives, canonicalized.
    pub fn enumerate_classes(&self) -> Vec<BitVec> {
        let r = self.h1_basis.len();
        assert!(r < 24, "class enumeration limited to small H¹");
        let mut out = Vec::with_capacity(1 << r);
        for bits in 0u32..(1 << r) {
            let mut x = self.base.clone();
            for (i, v) in self.h1_basis.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    x.xor_assign(v);
                }
            }
            out.push(self.class_rep(&x));
        }
        out
    }
}

fn matrix_columns(m: &crate::gf2::Gf2Matrix) -> Vec<BitVec> {
    (0..m.cols())
        .map(|j| {
            let mut v = BitVec::zeros(m.rows());
            for i in 0..m.rows() {
                if m.get(i, j) {
                    v.set(i, true);
                }
            }
            v
        })
        .collect()
}

/// Adds v to an echelonized span; returns whether it was independent.
fn span_add(span: &mut Vec<BitVec>, v: &BitVec) -> bool {
    let mut x = v.clone();
    loop {
        let mut changed = false;
        for r in span.iter() {
            if let Some(&l) = r.ones().first() {
                if x.get(l) {
                    x.xor_assign(r);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if x.is_zero() {
        false
    } else {
        span.push(x);
        span.sort_by_key(|r| r.ones().first().copied().unwrap_or(usize::MAX));
        true
    }
}

/// Builds the spin system from the canonical trivialization's obstruction
/// cochain and solves it modulo gauge.
pub fn solve_spin_structures(ctx: &SpinContext) -> Result<SpinStructureSet, SpinError> {
    let t0 = ctx.canonical_trivialization();
    let w2 = ctx.w2_cochain(&t0)?;
    let d1 = ctx.skeleton().d1_gf2();
    let d0 = ctx.skeleton().d0_gf2(ctx.simplex_count());
    match gf2_solve(&d1, &w2).map_err(|e| SpinError::Internal(e.to_string()))? {
        Gf2Solution::Infeasible { witness } => Ok(SpinStructureSet::Empty { w2, witness }),
        Gf2Solution::Solvable { particular, nullspace } => {
            let gauge_basis = matrix_columns(&d0);
            let mut span: Vec<BitVec> = Vec::new();
            for v in &gauge_basis {
                span_add(&mut span, v);
            }
            let mut h1_basis = Vec::new();
            for v in &nullspace {
                if span_add(&mut span, v) {
                    h1_basis.push(v.clone());
                }
            }
            Ok(SpinStructureSet::Torsor(SpinTorsor { base: particular, h1_basis, gauge_basis, w2 }))
        }
    }
}

/// The H¹ action on representatives: flip the side-1 sign along a cocycle.
pub fn act_h1(ctx: &SpinContext, x: &BitVec, omega: &BitVec) -> Result<BitVec, SpinError> {
    let d1 = ctx.skeleton().d1_gf2();
    if !d1
        .mul_vec(omega)
        .map_err(|e| SpinError::Internal(e.to_string()))?
        .is_zero()
    {
        return Err(SpinError::NotACocycle);
    }
    let mut out = x.clone();
    out.xor_assign(omega);
    Ok(out)
}

/// Reduces a trivialization to its residual sign cochain against the
/// canonical one: gauge the frames to identity, match every path's
/// projection by a facet gauge, and read off the leftover central signs.
pub fn canonicalize(
    ctx: &SpinContext,
    t: &CombinatorialTrivialization,
) -> Result<BitVec, SpinError> {
    ctx.validate_trivialization(t)?;
    // frames to identity
    let g_frames = GaugeElement {
        per_simplex: t.frames.iter().map(|f| canonical_lift(&f.inverse())).collect(),
        per_facet: (0..ctx.facet_count())
            .map(|_| crate::cover::LiftedPermutation::identity(ctx.rank()))
            .collect(),
    };
    let t = ctx.apply_gauge(&g_frames, t)?;
    let t0 = ctx.canonical_trivialization();
    // match path projections facet by facet
    let rank = ctx.rank();
    let n = rank - 1;
    let mut per_facet = Vec::with_capacity(ctx.facet_count());
    for f in ctx.model_skeleton().facets() {
        let (_, i1) = f.side1;
        let fbar1 = super::face_inclusion_ext(rank, i1);
        let (b1, _) = &t.paths[f.id];
        let (c1, _) = &t0.paths[f.id];
        let a_form = fbar1
            .inverse()
            .compose(&c1.base().compose(&b1.base().inverse().compose(&fbar1)));
        let a = if a_form.fixes(n) {
            a_form
        } else {
            let k = a_form.inverse().apply(n);
            let a = a_form.compose(&Permutation::transposition(rank, n, k));
            if !a.fixes(n) {
                return Err(SpinError::Internal(
                    "projection mismatch is not reachable by the facet action".into(),
                ));
            }
            a
        };
        per_facet.push(canonical_lift(&a));
    }
    let g_paths = GaugeElement {
        per_simplex: (0..ctx.simplex_count())
            .map(|_| crate::cover::LiftedPermutation::identity(rank))
            .collect(),
        per_facet,
    };
    let t = ctx.apply_gauge(&g_paths, &t)?;
    // residual signs
    let mut bits = BitVec::zeros(ctx.facet_count());
    for f in ctx.model_skeleton().facets() {
        let (b1, b2) = &t.paths[f.id];
        let (c1, c2) = &t0.paths[f.id];
        let s1 = if b1 == c1 {
            false
        } else if b1 == &c1.negate() {
            true
        } else {
            return Err(SpinError::Internal("canonicalization left a non-central residue".into()));
        };
        let s2 = if b2 == c2 {
            false
        } else if b2 == &c2.negate() {
            true
        } else {
            return Err(SpinError::Internal("canonicalization left a non-central residue".into()));
        };
        if s1 ^ s2 {
            bits.set(ctx.facet_orig_id(f.id), true);
        }
    }
    Ok(bits)
}

/// Same gauge orbit ⟺ equal residual sign cochains modulo the gauge
/// subspace (image of d⁰).
pub fn homotopic(
    ctx: &SpinContext,
    t1: &CombinatorialTrivialization,
    t2: &CombinatorialTrivialization,
) -> Result<bool, SpinError> {
    let x1 = canonicalize(ctx, t1)?;
    let x2 = canonicalize(ctx, t2)?;
    let gauge = matrix_columns(&ctx.skeleton().d0_gf2(ctx.simplex_count()));
    let mut diff = x1;
    diff.xor_assign(&x2);
    Ok(in_span(&gauge, &diff))
}

/// Per-circuit data for criterion (*) under sign flips: the canonical
/// product sign and the mod-2 occurrence mask of each facet class.
pub struct CircuitParity {
    /// true where the canonical trivialization is obstructed (product +1)
    pub targets: Vec<bool>,
    /// occurrence mask over original facet ids, one per circuit
    pub masks: Vec<u64>,
}

pub fn circuit_parities(ctx: &SpinContext) -> Result<CircuitParity, SpinError> {
    assert!(ctx.facet_count() <= 24, "brute force limited to 24 facet classes");
    let t0 = ctx.canonical_trivialization();
    let w2 = ctx.w2_cochain(&t0)?;
    let targets: Vec<bool> = (0..ctx.circuit_count()).map(|w| w2.get(w)).collect();
    let mut masks = vec![0u64; ctx.circuit_count()];
    for c in ctx.model_skeleton().circuits() {
        let orig = ctx.codim2_orig_id(c.id);
        for p in &c.positions {
            masks[orig] ^= 1 << ctx.facet_orig_id(p.facet);
        }
    }
    Ok(CircuitParity { targets, masks })
}

fn accepts(parity: &CircuitParity, x: u64) -> bool {
    parity
        .masks
        .iter()
        .zip(&parity.targets)
        .all(|(m, &t)| ((m & x).count_ones() % 2 == 1) == t)
}

/// Enumerates all 2^nf sign vectors against the parity data.
pub fn count_solutions(parity: &CircuitParity, nf: usize) -> u64 {
    crate::util::par_count(1u64 << nf, |x| accepts(parity, x))
}

/// Sequential twin of [`count_solutions`], kept for the benchmarks.
pub fn count_solutions_seq(parity: &CircuitParity, nf: usize) -> u64 {
    crate::util::seq_count(1u64 << nf, |x| accepts(parity, x))
}

/// Number of sign vectors satisfying criterion (*) on every circuit, by
/// enumeration of all 2^#F flips of the canonical trivialization.
pub fn brute_force_solutions(ctx: &SpinContext) -> Result<u64, SpinError> {
    let parity = circuit_parities(ctx)?;
    Ok(count_solutions(&parity, ctx.facet_count()))
}

/// Sequential twin of [`brute_force_solutions`], kept for the benchmarks.
pub fn brute_force_solutions_seq(ctx: &SpinContext) -> Result<u64, SpinError> {
    let parity = circuit_parities(ctx)?;
    Ok(count_solutions_seq(&parity, ctx.facet_count()))
}

/// Spin-structure count from the brute-force solution count: divide out the
/// gauge orbit 2^(#S - #components).
pub fn brute_force_spin_count(ctx: &SpinContext) -> Result<u64, SpinError> {
    let solutions = brute_force_solutions(ctx)?;
    let orbit = 1u64 << (ctx.simplex_count() - ctx.skeleton().component_count());
    if solutions % orbit != 0 {
        return Err(SpinError::Internal("solution count not divisible by gauge orbit".into()));
    }
    Ok(solutions / orbit)
}

/// All circuit obstruction signs of one trivialization, evaluated in
/// parallel (feature-gated) or sequentially.
pub fn all_obstructions(
    ctx: &SpinContext,
    t: &CombinatorialTrivialization,
) -> Result<Vec<CentralSign>, SpinError> {
    crate::util::par_map(&(0..ctx.circuit_count()).collect::<Vec<_>>(), |&c| {
        ctx.circuit_obstruction(c, t)
    })
    .into_iter()
    .collect()
}

/// Sequential twin of [`all_obstructions`], kept for the benchmarks.
pub fn all_obstructions_seq(
    ctx: &SpinContext,
    t: &CombinatorialTrivialization,
) -> Result<Vec<CentralSign>, SpinError> {
    crate::util::seq_map(&(0..ctx.circuit_count()).collect::<Vec<_>>(), |&c| {
        ctx.circuit_obstruction(c, t)
    })
    .into_iter()
    .collect()
}
