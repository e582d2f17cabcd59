//! Cohomology of the dual-skeleton cochain complex, over GF(2) and over Z,
//! plus the degree-3 Bockstein obstruction W₃ used by the spin-c existence
//! test.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::gf2::{gf2_solve, BitVec, Gf2Matrix, Gf2Solution};
use crate::intmat::{int_kernel, int_solve, smith_normal_form, IntMatrix};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("differentials do not compose to zero; incidence signs are broken upstream")]
    NotAComplex,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("integral lift has an odd boundary entry; mod-2 cocycle condition violated upstream")]
    OddBoundary,
    #[error("shape mismatch between differentials and cochain")]
    ShapeMismatch,
}

/// GF(2) cohomology at one degree: rank and representative cocycles that are
/// independent modulo the coboundaries.
#[derive(Debug, Clone)]
pub struct Gf2Cohomology {
    pub rank: usize,
    pub representatives: Vec<BitVec>,
    /// spanning set of the coboundary subspace (image of d_prev)
    pub coboundaries: Vec<BitVec>,
}

/// ker(d_next) / im(d_prev) over GF(2).
pub fn cohomology_gf2(
    d_prev: &Gf2Matrix,
    d_next: &Gf2Matrix,
) -> Result<Gf2Cohomology, HomologyError> {
    if d_prev.rows() != d_next.cols() {
        return Err(HomologyError::ShapeMismatch);
    }
    if !d_next.mul(d_prev).is_zero() {
        return Err(HomologyError::NotAComplex);
    }
    let kernel = d_next.nullspace();
    let image: Vec<BitVec> = (0..d_prev.cols())
        .map(|j| {
            let mut v = BitVec::zeros(d_prev.rows());
            for i in 0..d_prev.rows() {
                if d_prev.get(i, j) {
                    v.set(i, true);
                }
            }
            v
        })
        .collect();
    // grow a basis: image first, then kernel vectors independent of it
    let mut span: Vec<BitVec> = Vec::new();
    let add = |v: &BitVec, span: &mut Vec<BitVec>| -> bool {
        let mut x = v.clone();
        for r in span.iter() {
            if let Some(&l) = r.ones().first() {
                if x.get(l) {
                    x.xor_assign(r);
                }
            }
        }
        if x.is_zero() {
            false
        } else {
            span.push(x);
            span.sort_by_key(|r| r.ones().first().copied().unwrap_or(usize::MAX));
            true
        }
    };
    for v in &image {
        add(v, &mut span);
    }
    let mut representatives = Vec::new();
    for v in &kernel {
        if add(v, &mut span) {
            representatives.push(v.clone());
        }
    }
    Ok(Gf2Cohomology { rank: representatives.len(), representatives, coboundaries: image })
}

/// Integral cohomology presentation: free rank, torsion invariants ≥ 2 in
/// divisibility order, and representative cocycles for each summand.
#[derive(Debug, Clone)]
pub struct CohomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
    pub torsion_representatives: Vec<Vec<BigInt>>,
    pub free_representatives: Vec<Vec<BigInt>>,
}

impl CohomologyGroup {
    pub fn order(&self) -> Option<BigInt> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().product())
    }
}

/// ker(d_next) / im(d_prev) over Z via Smith normal form.
pub fn cohomology_z(
    d_prev: &IntMatrix,
    d_next: &IntMatrix,
) -> Result<CohomologyGroup, HomologyError> {
    if d_prev.rows() != d_next.cols() {
        return Err(HomologyError::ShapeMismatch);
    }
    if !d_next.mul(d_prev).is_zero() {
        return Err(HomologyError::NotAComplex);
    }
    let cells = d_prev.rows();
    let kernel = int_kernel(d_next); // columns, each of length `cells`
    let z = kernel.len();
    if z == 0 {
        return Ok(CohomologyGroup {
            free_rank: 0,
            torsion: vec![],
            torsion_representatives: vec![],
            free_representatives: vec![],
        });
    }
    let mut kmat = IntMatrix::zeros(cells, z);
    for (j, col) in kernel.iter().enumerate() {
        for i in 0..cells {
            kmat[(i, j)] = col[i].clone();
        }
    }
    // coordinates of im(d_prev) in the kernel basis
    let mut y = IntMatrix::zeros(z, d_prev.cols());
    for j in 0..d_prev.cols() {
        let col: Vec<BigInt> = (0..cells).map(|i| d_prev[(i, j)].clone()).collect();
        let sol = int_solve(&kmat, &col).ok_or(HomologyError::NotAComplex)?;
        for i in 0..z {
            y[(i, j)] = sol.particular[i].clone();
        }
    }
    let snf = smith_normal_form(&y);
    // change kernel basis by U⁻¹ so the image becomes span{dᵢ·ẽᵢ}
    let ktilde = kmat.mul(&snf.u_inv);
    let rank = snf.rank();
    let mut torsion = Vec::new();
    let mut torsion_representatives = Vec::new();
    for i in 0..rank {
        let d = snf.d[(i, i)].clone();
        if d > BigInt::from(1) {
            torsion.push(d);
            torsion_representatives.push((0..cells).map(|r| ktilde[(r, i)].clone()).collect());
        }
    }
    let free_representatives: Vec<Vec<BigInt>> =
        (rank..z).map(|i| (0..cells).map(|r| ktilde[(r, i)].clone()).collect()).collect();
    Ok(CohomologyGroup { free_rank: z - rank, torsion, torsion_representatives, free_representatives })
}

/// Outcome of the W₃ computation: the Bockstein 3-cochain of w₂ reduced
/// mod 2, and whether it is a coboundary (W₃ = 0 ⟺ spin-c exists).
#[derive(Debug, Clone)]
pub struct W3Report {
    pub zero: bool,
    pub bockstein: BitVec,
    /// 2-cochain with d(c) = bockstein when zero, else a left-kernel witness
    pub certificate: BitVec,
}

/// Lifts w₂ to a 0/1 integer cochain z̃, forms (d z̃)/2 mod 2 in degree 3,
/// and decides whether it is a coboundary.
pub fn bockstein_w3(w2: &BitVec, d2_int: &IntMatrix) -> Result<W3Report, HomologyError> {
    if w2.len() != d2_int.cols() {
        return Err(HomologyError::ShapeMismatch);
    }
    let d2_gf2 = d2_int.mod2();
    if !d2_gf2.mul_vec(w2).map_err(|_| HomologyError::ShapeMismatch)?.is_zero() {
        return Err(HomologyError::NotACocycle);
    }
    let lift: Vec<BigInt> =
        w2.iter_bits().map(|b| if b { BigInt::from(1) } else { BigInt::zero() }).collect();
    let dz = d2_int.mul_vec(&lift);
    let mut half = BitVec::zeros(d2_int.rows());
    for (i, v) in dz.iter().enumerate() {
        let (q, r) = num_integer::Integer::div_rem(v, &BigInt::from(2));
        if !r.is_zero() {
            return Err(HomologyError::OddBoundary);
        }
        if num_integer::Integer::is_odd(&q) {
            half.set(i, true);
        }
    }
    match gf2_solve(&d2_gf2, &half).map_err(|_| HomologyError::ShapeMismatch)? {
        Gf2Solution::Solvable { particular, .. } => {
            Ok(W3Report { zero: true, bockstein: half, certificate: particular })
        }
        Gf2Solution::Infeasible { witness } => {
            Ok(W3Report { zero: false, bockstein: half, certificate: witness })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::skeleton::Skeleton;
    use crate::corpus;

    fn dual_h1_gf2(dc: &crate::complex::DeltaComplex) -> Gf2Cohomology {
        let skel = Skeleton::build(dc).unwrap();
        cohomology_gf2(&skel.d0_gf2(dc.simplex_count()), &skel.d1_gf2()).unwrap()
    }

    #[test]
    fn torus_h1_rank_two() {
        assert_eq!(dual_h1_gf2(&corpus::torus2()).rank, 2);
    }

    #[test]
    fn spheres_have_trivial_h1() {
        for n in 2..=6 {
            assert_eq!(dual_h1_gf2(&corpus::double_simplex(n)).rank, 0);
        }
    }

    #[test]
    fn dual_h1_matches_simplicial_path() {
        for named in corpus::all_builtins() {
            let dual = dual_h1_gf2(&named.complex).rank;
            let simplicial =
                crate::complex::skeleton::triangulation_h1_z2_rank(&named.complex);
            assert_eq!(dual, simplicial, "complex {}", named.name);
            if let Some(expect) = named.expected.h1_z2_rank {
                assert_eq!(dual, expect, "complex {}", named.name);
            }
        }
    }

    #[test]
    fn rp3_h2_torsion() {
        let dc = corpus::rp3_two_tet();
        let skel = Skeleton::build(&dc).unwrap();
        let h2 = cohomology_z(&skel.d1_int(), &skel.d2_int()).unwrap();
        assert_eq!(h2.free_rank, 0);
        assert_eq!(h2.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn t3_h2_free_rank_three() {
        let dc = corpus::t3_six_tet();
        let skel = Skeleton::build(&dc).unwrap();
        let h2 = cohomology_z(&skel.d1_int(), &skel.d2_int()).unwrap();
        assert_eq!(h2.free_rank, 3);
        assert!(h2.torsion.is_empty());
    }

    #[test]
    fn s3_h2_trivial() {
        let dc = corpus::s3_two_tet();
        let skel = Skeleton::build(&dc).unwrap();
        let h2 = cohomology_z(&skel.d1_int(), &skel.d2_int()).unwrap();
        assert_eq!(h2.free_rank, 0);
        assert!(h2.torsion.is_empty());
    }

    #[test]
    fn bockstein_of_zero_vanishes() {
        let dc = corpus::s3_two_tet();
        let skel = Skeleton::build(&dc).unwrap();
        let w2 = BitVec::zeros(skel.codim2_count());
        let report = bockstein_w3(&w2, &skel.d2_int()).unwrap();
        assert!(report.zero);
        assert!(report.bockstein.is_zero());
    }

    #[test]
    fn bockstein_of_coboundary_vanishes() {
        let dc = corpus::rp3_two_tet();
        let skel = Skeleton::build(&dc).unwrap();
        let d1 = skel.d1_gf2();
        // take d¹ of a couple of 1-cochains
        for pick in [0usize, 1, 2] {
            let mut alpha = BitVec::zeros(skel.facets().len());
            alpha.set(pick, true);
            let w2 = d1.mul_vec(&alpha).unwrap();
            let report = bockstein_w3(&w2, &skel.d2_int()).unwrap();
            assert!(report.zero);
        }
    }

    #[test]
    fn non_cocycle_rejected() {
        let dc = corpus::rp3_two_tet();
        let skel = Skeleton::build(&dc).unwrap();
        // find a non-cocycle 2-cochain if one exists
        let d2 = skel.d2_gf2();
        let mut found = None;
        for i in 0..skel.codim2_count() {
            let mut v = BitVec::zeros(skel.codim2_count());
            v.set(i, true);
            if !d2.mul_vec(&v).unwrap().is_zero() {
                found = Some(v);
                break;
            }
        }
        if let Some(v) = found {
            assert!(matches!(bockstein_w3(&v, &skel.d2_int()), Err(HomologyError::NotACocycle)));
        }
    }
}
