//! Binary linear algebra over GF(2): ranks, generating subsets, commutation
//! matrices and the symmetric elimination `M = L · M(D) · Lᵀ`.

use std::fmt;

use thiserror::Error;

use crate::bits::BitVec;
use crate::pauli::{Hamiltonian, PauliTerm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gf2Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("matrix has a nonzero diagonal entry at {0}")]
    NonZeroDiagonal(usize),
    #[error("matrix is singular")]
    Singular,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
}

/// Dense row-major GF(2) matrix; each row is a packed [`BitVec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for i in 0..dim {
            m.set(i, i, true);
        }
        m
    }

    /// Builds a matrix from equal-length rows.
    pub fn from_rows(rows: Vec<BitVec>) -> Result<Self, Gf2Error> {
        let cols = rows.first().map_or(0, BitVec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Gf2Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {cols} columns",
                bad.len()
            )));
        }
        Ok(Self { rows, cols })
    }

    /// Parses rows written as `0`/`1` strings, e.g. `["110", "011"]`.
    pub fn from_strs(rows: &[&str]) -> Result<Self, Gf2Error> {
        let rows = rows
            .iter()
            .map(|r| BitVec::from_bools(&r.chars().map(|c| c == '1').collect::<Vec<_>>()))
            .collect();
        Self::from_rows(rows)
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v);
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// `row[dst] ^= row[src]`.
    pub fn add_row(&mut self, src: usize, dst: usize) {
        assert_ne!(src, dst);
        let s = self.rows[src].clone();
        self.rows[dst].xor_assign(&s);
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.num_rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Result<Self, Gf2Error> {
        if self.cols != other.num_rows() {
            return Err(Gf2Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.num_rows(),
                self.cols,
                other.num_rows(),
                other.cols
            )));
        }
        let mut out = Self::zeros(self.num_rows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.ones() {
                out.rows[r].xor_assign(&other.rows[k]);
            }
        }
        Ok(out)
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    fn first_asymmetry(&self) -> Option<(usize, usize)> {
        let t = self.transpose();
        (0..self.num_rows()).find_map(|r| {
            if self.rows[r] == t.rows[r] {
                None
            } else {
                let mut diff = self.rows[r].clone();
                diff.xor_assign(&t.rows[r]);
                diff.first_one().map(|c| (r, c))
            }
        })
    }

    pub fn rank(&self) -> usize {
        rank_gf2(self)
    }

    /// Inverse by Gauss–Jordan elimination on `[A | I]`.
    pub fn inverse(&self) -> Result<Self, Gf2Error> {
        let n = self.num_rows();
        if n != self.cols {
            return Err(Gf2Error::NotSquare {
                rows: n,
                cols: self.cols,
            });
        }
        let mut a = self.rows.clone();
        let mut inv = Self::identity(n).rows;
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| a[r].get(col))
                .ok_or(Gf2Error::Singular)?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let (prow, pinv) = (a[col].clone(), inv[col].clone());
            for r in 0..n {
                if r != col && a[r].get(col) {
                    a[r].xor_assign(&prow);
                    inv[r].xor_assign(&pinv);
                }
            }
        }
        Ok(Self { rows: inv, cols: n })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.num_rows(), self.cols)?;
        for r in &self.rows {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

/// Row rank over GF(2). The input is left untouched.
pub fn rank_gf2(m: &BitMatrix) -> usize {
    let mut basis = EchelonBasis::new(m.num_cols());
    m.rows().iter().filter(|r| basis.insert(r)).count()
}

/// Incremental reduced basis keyed by each vector's highest set bit.
struct EchelonBasis {
    by_pivot: Vec<Option<BitVec>>,
}

impl EchelonBasis {
    fn new(len: usize) -> Self {
        Self {
            by_pivot: vec![None; len],
        }
    }

    /// Residue of `v` after reduction against the basis.
    fn reduce(&self, v: &BitVec) -> BitVec {
        let mut w = v.clone();
        while let Some(p) = w.last_one() {
            match &self.by_pivot[p] {
                Some(b) => w.xor_assign(b),
                None => break,
            }
        }
        w
    }

    /// Inserts `v` if independent; returns whether it was.
    fn insert(&mut self, v: &BitVec) -> bool {
        let w = self.reduce(v);
        match w.last_one() {
            Some(p) => {
                self.by_pivot[p] = Some(w);
                true
            }
            None => false,
        }
    }
}

/// Independent generators of the group spanned by a Hamiltonian's strings.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingSubset {
    /// Index into the Hamiltonian's term list for each generator.
    pub indices: Vec<usize>,
    /// Generator strings with sign `+` and coefficient 1.
    pub generators: Vec<PauliTerm>,
    /// For each input term, the generators whose symplectic XOR equals it.
    pub expansions: Vec<Vec<usize>>,
}

impl GeneratingSubset {
    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }
}

/// Greedy left-to-right selection of GF(2)-independent symplectic vectors.
/// Signs and coefficients are ignored.
pub fn generating_subset(h: &Hamiltonian) -> GeneratingSubset {
    generating_subset_of(h.terms(), 2 * h.num_qubits())
}

fn generating_subset_of(terms: &[PauliTerm], width: usize) -> GeneratingSubset {
    // Each basis vector carries the set of generators that XOR to it.
    let mut by_pivot: Vec<Option<(BitVec, BitVec)>> = vec![None; width];
    let mut indices = Vec::new();
    let mut generators = Vec::new();
    let mut combos: Vec<BitVec> = Vec::with_capacity(terms.len());
    let cap = terms.len();

    for (i, t) in terms.iter().enumerate() {
        let mut w = t.symplectic_vector();
        let mut combo = BitVec::zeros(cap);
        while let Some(p) = w.last_one() {
            match &by_pivot[p] {
                Some((v, c)) => {
                    w.xor_assign(v);
                    combo.xor_assign(c);
                }
                None => break,
            }
        }
        match w.last_one() {
            None => combos.push(combo),
            Some(p) => {
                let g = generators.len();
                // w = t ⊕ (generators in combo), so t's own expansion is {g}
                // and the stored residue expands to combo ⊕ {g}.
                let mut own = BitVec::zeros(cap);
                own.set(g, true);
                combo.set(g, !combo.get(g));
                by_pivot[p] = Some((w, combo));
                combos.push(own);
                indices.push(i);
                let mut gen = t.clone();
                gen.sign = crate::pauli::Sign::Plus;
                gen.coeff = 1.0;
                generators.push(gen);
            }
        }
    }
    let expansions = combos.iter().map(|c| c.ones().collect()).collect();
    GeneratingSubset {
        indices,
        generators,
        expansions,
    }
}

/// `M[i][j] = gens[i] ⊙ gens[j]`: symmetric with zero diagonal.
pub fn commutation_matrix(gens: &[PauliTerm]) -> BitMatrix {
    let d = gens.len();
    let mut m = BitMatrix::zeros(d, d);
    for i in 0..d {
        for j in (i + 1)..d {
            if gens[i].anticommutes_unchecked(&gens[j]) {
                m.set(i, j, true);
                m.set(j, i, true);
            }
        }
    }
    m
}

/// Result of symmetric elimination: `M = L · M(D) · Lᵀ` where `M(D)` is
/// `isotropic_count` zero blocks followed by `rank / 2` copies of `[[0,1],[1,0]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalCommutation {
    pub dim: usize,
    pub rank: usize,
    pub isotropic_count: usize,
    pub l: BitMatrix,
}

impl CanonicalCommutation {
    /// The block form `M(D)`.
    pub fn target_form(&self) -> BitMatrix {
        canonical_form(self.isotropic_count, self.rank / 2)
    }

    /// `L · M(D) · Lᵀ`, which equals the input matrix.
    pub fn reconstruct(&self) -> BitMatrix {
        let lm = self
            .l
            .mul(&self.target_form())
            .expect("L and M(D) share the dimension");
        lm.mul(&self.l.transpose()).expect("square factors")
    }
}

/// Zero block of size `isotropic` followed by `pairs` hyperbolic 2x2 blocks.
pub fn canonical_form(isotropic: usize, pairs: usize) -> BitMatrix {
    let dim = isotropic + 2 * pairs;
    let mut d = BitMatrix::zeros(dim, dim);
    for p in 0..pairs {
        let a = isotropic + 2 * p;
        d.set(a, a + 1, true);
        d.set(a + 1, a, true);
    }
    d
}

/// Symmetric Gaussian elimination of an alternating GF(2) matrix.
///
/// Works on basis vectors `e_i` under the form `B(u, v) = u M vᵀ`. Taking the
/// first remaining vector `u`, the first later vector `v` with `B(u, v) = 1`
/// pairs with it and every other remaining vector is made orthogonal to both;
/// when no such `v` exists `u` is isotropic. The collected vectors are the
/// rows of `E` with `E M Eᵀ = M(D)`, and `L = E⁻¹`.
pub fn canonicalize(m: &BitMatrix) -> Result<CanonicalCommutation, Gf2Error> {
    let d = m.num_rows();
    if d != m.num_cols() {
        return Err(Gf2Error::NotSquare {
            rows: d,
            cols: m.num_cols(),
        });
    }
    if let Some((row, col)) = m.first_asymmetry() {
        return Err(Gf2Error::NotSymmetric { row, col });
    }
    if let Some(i) = (0..d).find(|&i| m.get(i, i)) {
        return Err(Gf2Error::NonZeroDiagonal(i));
    }

    // Each working vector is stored with its image `u M` so that
    // B(u, v) = (u M) · v is a single dot product.
    let image = |u: &BitVec| -> BitVec {
        let mut out = BitVec::zeros(d);
        for k in u.ones() {
            out.xor_assign(m.row(k));
        }
        out
    };
    let mut remaining: Vec<(BitVec, BitVec)> = (0..d)
        .map(|i| {
            let mut e = BitVec::zeros(d);
            e.set(i, true);
            let img = m.row(i).clone();
            (e, img)
        })
        .collect();

    let mut isotropic = Vec::new();
    let mut pairs = Vec::new();
    while !remaining.is_empty() {
        let (u, u_img) = remaining.remove(0);
        let partner = remaining.iter().position(|(v, _)| u_img.dot(v));
        let Some(j) = partner else {
            isotropic.push(u);
            continue;
        };
        let (v, v_img) = remaining.remove(j);
        for (w, w_img) in remaining.iter_mut() {
            // w ← w + B(w, v)·u + B(w, u)·v
            let bwv = v_img.dot(w);
            let bwu = u_img.dot(w);
            if bwv {
                w.xor_assign(&u);
                w_img.xor_assign(&u_img);
            }
            if bwu {
                w.xor_assign(&v);
                w_img.xor_assign(&v_img);
            }
        }
        debug_assert_eq!(image(&u), u_img);
        pairs.push((u, v));
    }

    let isotropic_count = isotropic.len();
    let rank = 2 * pairs.len();
    let mut e_rows = isotropic;
    for (u, v) in pairs {
        e_rows.push(u);
        e_rows.push(v);
    }
    let e = BitMatrix::from_rows(e_rows)?;
    let l = if d == 0 { e } else { e.inverse()? };
    Ok(CanonicalCommutation {
        dim: d,
        rank,
        isotropic_count,
        l,
    })
}

/// `dim(M)` and `rank(M)` over a generating subset, and the qubit counts they
/// imply: `rank/2 + (dim − rank − c)` qubits for any `0 ≤ c ≤ dim − rank`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TheoremBound {
    pub dim: usize,
    pub rank: usize,
}

impl TheoremBound {
    /// Largest number of charges that can be measured out.
    pub fn max_charges(&self) -> usize {
        self.dim - self.rank
    }

    /// Qubits needed when `c` charges are fixed; `None` if `c` is too large.
    pub fn qubits_at(&self, c: usize) -> Option<usize> {
        (c <= self.max_charges()).then(|| self.rank / 2 + self.max_charges() - c)
    }

    /// Qubits left idle by an optimal reduction of an `n`-qubit Hamiltonian.
    pub fn redundant(&self, n: usize) -> usize {
        n + self.rank / 2 - self.dim
    }
}

pub fn theorem_bound(h: &Hamiltonian) -> TheoremBound {
    let gens = generating_subset(h);
    let m = commutation_matrix(&gens.generators);
    TheoremBound {
        dim: gens.len(),
        rank: rank_gf2(&m),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::PauliTerm;

    fn ham(n: usize, strs: &[&str]) -> Hamiltonian {
        Hamiltonian::new(
            n,
            strs.iter()
                .map(|s| PauliTerm::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank_gf2(&BitMatrix::zeros(3, 3)), 0);
        assert_eq!(rank_gf2(&BitMatrix::identity(4)), 4);
        assert_eq!(
            rank_gf2(&BitMatrix::from_strs(&["110", "011", "101"]).unwrap()),
            2
        );
    }

    #[test]
    fn generating_subset_examples() {
        let g = generating_subset(&ham(2, &["XX", "ZZ", "YY"]));
        assert_eq!(g.indices, vec![0, 1]);
        assert_eq!(g.expansions, vec![vec![0], vec![1], vec![0, 1]]);

        let g = generating_subset(&ham(3, &["XXI", "IXX", "ZIZ"]));
        assert_eq!(g.len(), 3);

        let g = generating_subset(&ham(1, &["Z"]));
        assert_eq!(g.generators[0].letter_string(), "Z");
    }

    #[test]
    fn commutation_matrix_examples() {
        let h = ham(2, &["XX", "ZZ"]);
        assert_eq!(commutation_matrix(h.terms()), BitMatrix::zeros(2, 2));

        let h = ham(1, &["X", "Z"]);
        assert_eq!(commutation_matrix(h.terms()), canonical_form(0, 1));

        let h = ham(3, &["XXI", "IXX", "ZIZ"]);
        let m = commutation_matrix(h.terms());
        assert!(m.get(0, 2) && m.get(1, 2) && !m.get(0, 1));
    }

    #[test]
    fn canonicalize_examples() {
        let z = canonicalize(&BitMatrix::zeros(4, 4)).unwrap();
        assert_eq!((z.rank, z.isotropic_count), (0, 4));
        assert_eq!(z.l, BitMatrix::identity(4));

        let b = canonicalize(&canonical_form(0, 1)).unwrap();
        assert_eq!((b.rank, b.isotropic_count), (2, 0));

        let h = ham(3, &["XXI", "IXX", "ZIZ"]);
        let m = commutation_matrix(h.terms());
        let c = canonicalize(&m).unwrap();
        assert_eq!((c.rank, c.isotropic_count), (2, 1));
        assert_eq!(c.reconstruct(), m);
    }

    #[test]
    fn canonicalize_rejects_bad_input() {
        let m = BitMatrix::from_strs(&["01", "00"]).unwrap();
        assert!(matches!(
            canonicalize(&m),
            Err(Gf2Error::NotSymmetric { .. })
        ));
        let m = BitMatrix::from_strs(&["10", "00"]).unwrap();
        assert_eq!(canonicalize(&m), Err(Gf2Error::NonZeroDiagonal(0)));
    }

    #[test]
    fn theorem_bound_examples() {
        let b = theorem_bound(&ham(3, &["XXI", "IXX", "ZIZ"]));
        assert_eq!((b.dim, b.rank), (3, 2));
        assert_eq!(b.qubits_at(1), Some(1));
        assert_eq!(b.qubits_at(2), None);

        let b = theorem_bound(&ham(2, &["ZI", "IZ"]));
        assert_eq!(b.rank, 0);
        assert_eq!(b.qubits_at(b.dim), Some(0));
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_strs(&["110", "011", "001"]).unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(3));
        assert_eq!(
            BitMatrix::from_strs(&["11", "11"]).unwrap().inverse(),
            Err(Gf2Error::Singular)
        );
    }
}
