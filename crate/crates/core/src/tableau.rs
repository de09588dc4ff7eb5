//! Column-major Pauli tableau for conjugating many terms at once.
//!
//! Qubit `q` owns two bit vectors over the term list (`x[q]`, `z[q]`) and the
//! signs form a third, so each gate costs `O(N / 64)` word operations no matter
//! how many terms there are.

use crate::bits::BitVec;
use crate::clifford::{CliffordCircuit, Gate};
use crate::pauli::{Letter, PauliTerm, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tableau {
    n: usize,
    rows: usize,
    x: Vec<BitVec>,
    z: Vec<BitVec>,
    sign: BitVec,
}

impl Tableau {
    /// Stacks `terms` (all on `n` qubits); coefficients are dropped.
    pub fn from_terms(n: usize, terms: &[PauliTerm]) -> Self {
        let rows = terms.len();
        let mut x = vec![BitVec::zeros(rows); n];
        let mut z = vec![BitVec::zeros(rows); n];
        let mut sign = BitVec::zeros(rows);
        for (i, t) in terms.iter().enumerate() {
            assert_eq!(t.num_qubits(), n, "term {i} has the wrong qubit count");
            for q in t.x_bits().ones() {
                x[q].set(i, true);
            }
            for q in t.z_bits().ones() {
                z[q].set(i, true);
            }
            if t.sign.is_negative() {
                sign.set(i, true);
            }
        }
        Self {
            n,
            rows,
            x,
            z,
            sign,
        }
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn letter(&self, row: usize, q: usize) -> Letter {
        Letter::from_bits(self.x[q].get(row), self.z[q].get(row))
    }

    pub fn sign(&self, row: usize) -> Sign {
        Sign::from_negative(self.sign.get(row))
    }

    /// Row `i` as a term with coefficient 1.
    pub fn row(&self, i: usize) -> PauliTerm {
        let mut t = PauliTerm::identity(self.n);
        for q in 0..self.n {
            t.set_letter(q, self.letter(i, q));
        }
        t.sign = self.sign(i);
        t
    }

    pub fn column_is_identity(&self, q: usize) -> bool {
        self.x[q].is_zero() && self.z[q].is_zero()
    }

    /// True when every row has `I` or `Z` on qubit `q`.
    pub fn column_is_diagonal(&self, q: usize) -> bool {
        self.x[q].is_zero()
    }

    /// Lowest row with exactly `Z` on qubit `q`.
    pub fn first_z(&self, q: usize) -> Option<usize> {
        first_where(&self.z[q], &self.x[q], |z, x| z & !x)
    }

    /// Lowest row with `X` or `Y` on qubit `q`.
    pub fn first_x_or_y(&self, q: usize) -> Option<usize> {
        self.x[q].first_one()
    }

    /// Lowest row that is not `I` on qubit `q`.
    pub fn first_non_identity(&self, q: usize) -> Option<usize> {
        first_where(&self.x[q], &self.z[q], |x, z| x | z)
    }

    pub fn apply_circuit(&mut self, c: &CliffordCircuit) {
        for g in c.gates() {
            self.apply(g);
        }
    }

    /// Conjugates every row by `g`. Indices must be valid for this tableau.
    pub fn apply(&mut self, g: &Gate) {
        match *g {
            Gate::H(q) => {
                let (x, z, r) = (&self.x[q], &self.z[q], self.sign.words_mut());
                for (i, w) in r.iter_mut().enumerate() {
                    *w ^= x.words()[i] & z.words()[i];
                }
                std::mem::swap(&mut self.x[q], &mut self.z[q]);
            }
            Gate::S(q) => {
                let r = self.sign.words_mut();
                let x = self.x[q].words();
                let z = self.z[q].words_mut();
                for i in 0..r.len() {
                    r[i] ^= x[i] & z[i];
                    z[i] ^= x[i];
                }
            }
            Gate::Sdg(q) => {
                let r = self.sign.words_mut();
                let x = self.x[q].words();
                let z = self.z[q].words_mut();
                for i in 0..r.len() {
                    r[i] ^= x[i] & !z[i];
                    z[i] ^= x[i];
                }
            }
            Gate::Cnot { control, target } => {
                let (xc, xt) = pair_mut(&mut self.x, control, target);
                let (zc, zt) = pair_mut(&mut self.z, control, target);
                let r = self.sign.words_mut();
                let (xc, zt) = (xc.words(), zt.words());
                let xt = xt.words_mut();
                let zc = zc.words_mut();
                for i in 0..r.len() {
                    r[i] ^= xc[i] & zt[i] & !(xt[i] ^ zc[i]);
                    xt[i] ^= xc[i];
                    zc[i] ^= zt[i];
                }
            }
            Gate::Swap(a, b) => {
                self.x.swap(a, b);
                self.z.swap(a, b);
            }
        }
    }
}

fn first_where(a: &BitVec, b: &BitVec, f: impl Fn(u64, u64) -> u64) -> Option<usize> {
    a.words()
        .iter()
        .zip(b.words())
        .enumerate()
        .find_map(|(i, (&u, &v))| {
            let w = f(u, v);
            (w != 0).then(|| i * 64 + w.trailing_zeros() as usize)
        })
}

fn pair_mut(v: &mut [BitVec], a: usize, b: usize) -> (&mut BitVec, &mut BitVec) {
    assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&mut hi[0], &mut lo[b])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gates_match_single_term_conjugation() {
        let terms: Vec<PauliTerm> = ["XYZI", "-YYXZ", "ZIXY", "IXYZ", "YZZX"]
            .iter()
            .map(|s| PauliTerm::parse(s, 4).unwrap())
            .collect();
        let gates = [
            Gate::H(1),
            Gate::S(0),
            Gate::Sdg(3),
            Gate::Cnot {
                control: 2,
                target: 0,
            },
            Gate::Cnot {
                control: 1,
                target: 3,
            },
            Gate::Swap(0, 3),
            Gate::H(2),
            Gate::Sdg(1),
        ];
        let c = CliffordCircuit::from_gates(4, gates.to_vec()).unwrap();
        let mut tab = Tableau::from_terms(4, &terms);
        tab.apply_circuit(&c);
        for (i, t) in terms.iter().enumerate() {
            assert_eq!(tab.row(i), c.conjugate(t).unwrap(), "row {i}");
        }
    }

    #[test]
    fn column_queries() {
        let terms: Vec<PauliTerm> = ["XZ", "ZZ", "IY"]
            .iter()
            .map(|s| PauliTerm::parse(s, 2).unwrap())
            .collect();
        let tab = Tableau::from_terms(2, &terms);
        assert_eq!(tab.first_z(0), Some(1));
        assert_eq!(tab.first_x_or_y(1), Some(2));
        assert_eq!(tab.first_non_identity(0), Some(0));
        assert!(!tab.column_is_diagonal(1));
        assert!(!tab.column_is_identity(0));
    }
}
