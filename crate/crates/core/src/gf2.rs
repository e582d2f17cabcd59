//! Bit-packed GF(2) linear algebra: elimination, affine solution sets, and
//! infeasibility certificates.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Gf2Error {
    #[error("shape mismatch: matrix is {rows}×{cols}, vector has length {len}")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
}

/// Dense bit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec { len, words: vec![0; len.div_ceil(64)] }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i, true);
            }
        }
        v
    }

    pub fn from_indices(len: usize, on: &[usize]) -> Self {
        let mut v = Self::zeros(len);
        for &i in on {
            v.set(i, true);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        if value {
            self.words[i / 64] |= 1 << (i % 64);
        } else {
            self.words[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (w, o) in self.words.iter_mut().zip(&other.words) {
            *w ^= o;
        }
    }

    pub fn dot(&self, other: &BitVec) -> bool {
        debug_assert_eq!(self.len, other.len);
        let mut acc = 0u32;
        for (w, o) in self.words.iter().zip(&other.words) {
            acc ^= (w & o).count_ones() & 1;
        }
        acc & 1 == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |i| self.get(i))
    }

    pub fn ones(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl fmt::Display for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Row-major bit matrix over GF(2).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVec>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Gf2Matrix { rows, cols, data: (0..rows).map(|_| BitVec::zeros(cols)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVec>, cols: usize) -> Self {
        debug_assert!(rows.iter().all(|r| r.len() == cols));
        Gf2Matrix { rows: rows.len(), cols, data: rows }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r].flip(c);
    }

    pub fn row(&self, r: usize) -> &BitVec {
        &self.data[r]
    }

    pub fn transpose(&self) -> Gf2Matrix {
        let mut t = Gf2Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec, Gf2Error> {
        if v.len() != self.cols {
            return Err(Gf2Error::ShapeMismatch { rows: self.rows, cols: self.cols, len: v.len() });
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(v) {
                out.set(r, true);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Gf2Matrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self.get(r, k) {
                    let row = other.data[k].clone();
                    out.data[r].xor_assign(&row);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.is_zero())
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce_in_place().len()
    }

    /// In-place reduced row echelon form; returns the pivot columns in order.
    fn row_reduce_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row >= self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| self.get(r, col)) else {
                continue;
            };
            self.data.swap(row, p);
            for r in 0..self.rows {
                if r != row && self.get(r, col) {
                    let piv = self.data[row].clone();
                    self.data[r].xor_assign(&piv);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right nullspace {x : Ax = 0}.
    pub fn nullspace(&self) -> Vec<BitVec> {
        let mut m = self.clone();
        let pivots = m.row_reduce_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &pc) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v.set(pc, true);
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// Affine solution set of Ax = b.
#[derive(Debug, Clone)]
pub enum Gf2Solution {
    Solvable { particular: BitVec, nullspace: Vec<BitVec> },
    /// Left-kernel certificate y with yᵀA = 0 and yᵀb = 1.
    Infeasible { witness: BitVec },
}

impl Gf2Solution {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Gf2Solution::Solvable { .. })
    }

    pub fn particular(&self) -> Option<&BitVec> {
        match self {
            Gf2Solution::Solvable { particular, .. } => Some(particular),
            _ => None,
        }
    }
}

/// Exact affine solution set of Ax = b over GF(2), or an infeasibility
/// witness from the left kernel.
pub fn gf2_solve(a: &Gf2Matrix, b: &BitVec) -> Result<Gf2Solution, Gf2Error> {
    if b.len() != a.rows() {
        return Err(Gf2Error::ShapeMismatch { rows: a.rows, cols: a.cols, len: b.len() });
    }
    // eliminate on [A | b | I], tracking row operations in the I block
    let n = a.rows;
    let mut work = a.clone();
    let mut rhs = b.clone();
    let mut track = Gf2Matrix::identity(n);
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..a.cols {
        if row >= n {
            break;
        }
        let Some(p) = (row..n).find(|&r| work.get(r, col)) else {
            continue;
        };
        work.data.swap(row, p);
        track.data.swap(row, p);
        let tmp_r = rhs.get(row);
        let tmp_p = rhs.get(p);
        rhs.set(row, tmp_p);
        rhs.set(p, tmp_r);
        for r in 0..n {
            if r != row && work.get(r, col) {
                let wrow = work.data[row].clone();
                work.data[r].xor_assign(&wrow);
                let trow = track.data[row].clone();
                track.data[r].xor_assign(&trow);
                let flip = rhs.get(row);
                if flip {
                    rhs.flip(r);
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    // rows past the pivot block are zero in A; a 1 in b there is a certificate
    for r in row..n {
        if rhs.get(r) {
            return Ok(Gf2Solution::Infeasible { witness: track.data[r].clone() });
        }
    }
    let mut particular = BitVec::zeros(a.cols);
    for &(r, c) in &pivots {
        if rhs.get(r) {
            particular.set(c, true);
        }
    }
    // nullspace from the reduced matrix
    let mut is_pivot = vec![false; a.cols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut nullspace = Vec::new();
    for free in (0..a.cols).filter(|&c| !is_pivot[c]) {
        let mut v = BitVec::zeros(a.cols);
        v.set(free, true);
        for &(r, pc) in &pivots {
            if work.get(r, free) {
                v.set(pc, true);
            }
        }
        nullspace.push(v);
    }
    Ok(Gf2Solution::Solvable { particular, nullspace })
}

/// Is `v` in the span of `basis`?
pub fn in_span(basis: &[BitVec], v: &BitVec) -> bool {
    if basis.is_empty() {
        return v.is_zero();
    }
    let cols = basis.len();
    let rows = v.len();
    let mut m = Gf2Matrix::zeros(rows, cols);
    for (j, b) in basis.iter().enumerate() {
        debug_assert_eq!(b.len(), rows);
        for i in 0..rows {
            if b.get(i) {
                m.set(i, j, true);
            }
        }
    }
    gf2_solve(&m, v).map(|s| s.is_solvable()).unwrap_or(false)
}

/// Reduces `v` to the canonical coset representative modulo span(basis):
/// eliminate greedily against a row-reduced copy of the basis.
pub fn coset_reduce(basis: &[BitVec], v: &BitVec) -> BitVec {
    let mut reduced: Vec<BitVec> = Vec::new();
    for b in basis {
        let mut x = b.clone();
        for r in &reduced {
            let lead = r.ones().first().copied();
            if let Some(l) = lead {
                if x.get(l) {
                    x.xor_assign(r);
                }
            }
        }
        if !x.is_zero() {
            reduced.push(x);
            reduced.sort_by_key(|r| r.ones().first().copied().unwrap_or(usize::MAX));
        }
    }
    // re-reduce to echelon (each leading bit unique and cleared elsewhere)
    let mut out = v.clone();
    let mut changed = true;
    while changed {
        changed = false;
        for r in &reduced {
            if let Some(&l) = r.ones().first() {
                if out.get(l) {
                    out.xor_assign(r);
                    changed = true;
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_solve() {
        let a = Gf2Matrix::identity(5);
        let b = BitVec::from_indices(5, &[0, 3]);
        match gf2_solve(&a, &b).unwrap() {
            Gf2Solution::Solvable { particular, nullspace } => {
                assert_eq!(particular, b);
                assert!(nullspace.is_empty());
            }
            _ => panic!("expected solvable"),
        }
    }

    #[test]
    fn underdetermined_solve() {
        // one equation x0 + x1 = 1 over two unknowns
        let mut a = Gf2Matrix::zeros(1, 2);
        a.set(0, 0, true);
        a.set(0, 1, true);
        let b = BitVec::from_bits(&[true]);
        match gf2_solve(&a, &b).unwrap() {
            Gf2Solution::Solvable { particular, nullspace } => {
                assert_eq!(particular, BitVec::from_bits(&[true, false]));
                assert_eq!(nullspace, vec![BitVec::from_bits(&[true, true])]);
            }
            _ => panic!("expected solvable"),
        }
    }

    #[test]
    fn infeasible_certificate() {
        // x0 = 0 and x0 = 1
        let mut a = Gf2Matrix::zeros(2, 1);
        a.set(0, 0, true);
        a.set(1, 0, true);
        let b = BitVec::from_bits(&[false, true]);
        match gf2_solve(&a, &b).unwrap() {
            Gf2Solution::Infeasible { witness } => {
                // yᵀA = 0 and yᵀb = 1
                let at = a.transpose();
                assert!(at.mul_vec(&witness).unwrap().is_zero());
                assert!(witness.dot(&b));
            }
            _ => panic!("expected infeasible"),
        }
    }

    #[test]
    fn shape_mismatch() {
        let a = Gf2Matrix::zeros(2, 3);
        let b = BitVec::zeros(3);
        assert!(gf2_solve(&a, &b).is_err());
    }

    #[test]
    fn random_systems_match_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed);
        for _ in 0..60 {
            let rows = rng.gen_range(1..=8);
            let cols = rng.gen_range(1..=12);
            let mut a = Gf2Matrix::zeros(rows, cols);
            for r in 0..rows {
                for c in 0..cols {
                    if rng.gen_bool(0.5) {
                        a.set(r, c, true);
                    }
                }
            }
            let b = BitVec::from_bits(&(0..rows).map(|_| rng.gen_bool(0.5)).collect::<Vec<_>>());
            // brute force over all 2^cols candidates
            let mut solutions = Vec::new();
            for bits in 0u32..(1 << cols) {
                let x = BitVec::from_bits(&(0..cols).map(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
                if a.mul_vec(&x).unwrap() == b {
                    solutions.push(x);
                }
            }
            match gf2_solve(&a, &b).unwrap() {
                Gf2Solution::Solvable { particular, nullspace } => {
                    assert!(solutions.contains(&particular));
                    assert_eq!(solutions.len(), 1 << nullspace.len());
                    for v in &nullspace {
                        assert!(a.mul_vec(v).unwrap().is_zero());
                    }
                }
                Gf2Solution::Infeasible { witness } => {
                    assert!(solutions.is_empty());
                    assert!(a.transpose().mul_vec(&witness).unwrap().is_zero());
                    assert!(witness.dot(&b));
                }
            }
        }
    }

    #[test]
    fn span_membership() {
        let basis = vec![BitVec::from_bits(&[true, true, false]), BitVec::from_bits(&[false, true, true])];
        assert!(in_span(&basis, &BitVec::from_bits(&[true, false, true])));
        assert!(!in_span(&basis, &BitVec::from_bits(&[true, false, false])));
        assert!(in_span(&[], &BitVec::zeros(3)));
    }

    #[test]
    fn coset_reduction_is_canonical() {
        let basis = vec![BitVec::from_bits(&[true, true, false]), BitVec::from_bits(&[false, true, true])];
        let a = BitVec::from_bits(&[true, false, true]);
        let b = BitVec::from_bits(&[false, false, false]);
        // a is in the span, so both reduce to the same representative
        assert_eq!(coset_reduce(&basis, &a), coset_reduce(&basis, &b));
        let c = BitVec::from_bits(&[true, false, false]);
        assert_ne!(coset_reduce(&basis, &c), coset_reduce(&basis, &b));
    }
}
