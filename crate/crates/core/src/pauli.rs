//! Sign-tracked Pauli strings in symplectic `(x | z)` form.
//!
//! A term stores the bit vectors `a` (X part) and `b` (Z part) and represents
//! `sign · i^{a·b} X^a Z^b`, so every qubit with `(a, b) = (1, 1)` is a plain
//! `Y` and the operator is Hermitian for either sign. Qubit 0 is the leftmost
//! character of the text form.

use std::fmt;
use std::ops::{Mul, Neg};

use thiserror::Error;

use crate::bits::BitVec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PauliError {
    #[error("invalid Pauli character {ch:?} at position {pos}")]
    InvalidCharacter { ch: char, pos: usize },
    #[error("Pauli string has {found} qubits, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitCountMismatch { left: usize, right: usize },
    #[error("product of anticommuting Paulis is not Hermitian")]
    Anticommuting,
}

/// Single-qubit Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Letter {
    I,
    X,
    Y,
    Z,
}

impl Letter {
    #[inline]
    pub fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Letter::I,
            (true, false) => Letter::X,
            (true, true) => Letter::Y,
            (false, true) => Letter::Z,
        }
    }

    #[inline]
    pub fn bits(self) -> (bool, bool) {
        match self {
            Letter::I => (false, false),
            Letter::X => (true, false),
            Letter::Y => (true, true),
            Letter::Z => (false, true),
        }
    }

    pub fn from_char(ch: char) -> Option<Self> {
        match ch {
            'I' => Some(Letter::I),
            'X' => Some(Letter::X),
            'Y' => Some(Letter::Y),
            'Z' => Some(Letter::Z),
            _ => None,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::I => 'I',
            Letter::X => 'X',
            Letter::Y => 'Y',
            Letter::Z => 'Z',
        }
    }
}

/// Overall ±1 of a Hermitian Pauli term.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Sign {
    #[default]
    Plus,
    Minus,
}

impl Sign {
    #[inline]
    pub fn from_negative(negative: bool) -> Self {
        if negative {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    #[inline]
    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }

    #[inline]
    pub fn value(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_negative(self.is_negative() != rhs.is_negative())
    }
}

/// Weighted Hermitian Pauli string `coeff · sign · P`.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliTerm {
    x: BitVec,
    z: BitVec,
    pub sign: Sign,
    pub coeff: f64,
}

impl PauliTerm {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVec::zeros(n),
            z: BitVec::zeros(n),
            sign: Sign::Plus,
            coeff: 1.0,
        }
    }

    pub fn from_bits(x: BitVec, z: BitVec, sign: Sign, coeff: f64) -> Result<Self, PauliError> {
        if x.len() != z.len() {
            return Err(PauliError::QubitCountMismatch {
                left: x.len(),
                right: z.len(),
            });
        }
        Ok(Self { x, z, sign, coeff })
    }

    /// Term with the given letters on the listed qubits and identity elsewhere.
    pub fn from_sparse(n: usize, ops: &[(usize, Letter)], coeff: f64) -> Self {
        let mut t = Self::identity(n);
        for &(q, l) in ops {
            let cur = t.letter(q);
            let (x0, z0) = cur.bits();
            let (x1, z1) = l.bits();
            t.set_letter(q, Letter::from_bits(x0 ^ x1, z0 ^ z1));
        }
        t.coeff = coeff;
        t
    }

    /// Parses `[+|-]` followed by exactly `n` letters from `IXYZ`. The result
    /// has coefficient 1.
    pub fn parse(text: &str, n: usize) -> Result<Self, PauliError> {
        let (sign, body) = match text.chars().next() {
            Some('+') => (Sign::Plus, &text[1..]),
            Some('-') => (Sign::Minus, &text[1..]),
            Some('\u{2212}') => (Sign::Minus, &text['\u{2212}'.len_utf8()..]),
            _ => (Sign::Plus, text),
        };
        let offset = text.len() - body.len();
        let mut x = BitVec::zeros(n);
        let mut z = BitVec::zeros(n);
        let mut count = 0;
        for (i, ch) in body.chars().enumerate() {
            let letter = Letter::from_char(ch).ok_or(PauliError::InvalidCharacter {
                ch,
                pos: i + offset,
            })?;
            if i < n {
                let (xb, zb) = letter.bits();
                x.set(i, xb);
                z.set(i, zb);
            }
            count += 1;
        }
        if count != n {
            return Err(PauliError::LengthMismatch {
                expected: n,
                found: count,
            });
        }
        Ok(Self {
            x,
            z,
            sign,
            coeff: 1.0,
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.x.len()
    }

    #[inline]
    pub fn x_bits(&self) -> &BitVec {
        &self.x
    }

    #[inline]
    pub fn z_bits(&self) -> &BitVec {
        &self.z
    }

    #[inline]
    pub fn letter(&self, q: usize) -> Letter {
        Letter::from_bits(self.x.get(q), self.z.get(q))
    }

    pub fn set_letter(&mut self, q: usize, letter: Letter) {
        let (xb, zb) = letter.bits();
        self.x.set(q, xb);
        self.z.set(q, zb);
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.num_qubits()).map(|q| self.letter(q))
    }

    pub fn is_identity(&self) -> bool {
        self.x.is_zero() && self.z.is_zero()
    }

    pub fn weight(&self) -> usize {
        self.x
            .words()
            .iter()
            .zip(self.z.words())
            .map(|(a, b)| (a | b).count_ones() as usize)
            .sum()
    }

    /// `sign · coeff`, the real weight this term contributes to a Hamiltonian.
    #[inline]
    pub fn signed_coeff(&self) -> f64 {
        self.sign.value() * self.coeff
    }

    /// The `2n`-bit symplectic vector `(x | z)`; sign and coefficient dropped.
    pub fn symplectic_vector(&self) -> BitVec {
        self.x.concat(&self.z)
    }

    /// Letters only, e.g. `"XIZ"`.
    pub fn letter_string(&self) -> String {
        self.letters().map(Letter::as_char).collect()
    }

    fn check_same_size(&self, other: &Self) -> Result<(), PauliError> {
        if self.num_qubits() != other.num_qubits() {
            return Err(PauliError::QubitCountMismatch {
                left: self.num_qubits(),
                right: other.num_qubits(),
            });
        }
        Ok(())
    }

    /// `(a_p · b_q + b_p · a_q) mod 2`; 0 iff the operators commute.
    pub fn symplectic_product(&self, other: &Self) -> Result<u8, PauliError> {
        self.check_same_size(other)?;
        Ok(self.anticommutes_unchecked(other) as u8)
    }

    #[inline]
    pub(crate) fn anticommutes_unchecked(&self, other: &Self) -> bool {
        let mut parity = 0u32;
        for i in 0..self.x.words().len() {
            let (xa, za) = (self.x.words()[i], self.z.words()[i]);
            let (xb, zb) = (other.x.words()[i], other.z.words()[i]);
            parity ^= ((xa & zb) ^ (za & xb)).count_ones();
        }
        parity & 1 == 1
    }

    pub fn commutes_with(&self, other: &Self) -> Result<bool, PauliError> {
        Ok(self.symplectic_product(other)? == 0)
    }

    /// Hermitian product of two commuting terms. Coefficients multiply.
    pub fn multiply(&self, other: &Self) -> Result<Self, PauliError> {
        self.check_same_size(other)?;
        // Letter products contribute i^{+1} for XY, YZ, ZX and i^{-1} for the
        // reversed orders.
        let mut plus = 0u32;
        let mut minus = 0u32;
        for i in 0..self.x.words().len() {
            let (x1, z1) = (self.x.words()[i], self.z.words()[i]);
            let (x2, z2) = (other.x.words()[i], other.z.words()[i]);
            let y1 = x1 & z1;
            let xo1 = x1 & !z1;
            let zo1 = !x1 & z1;
            let y2 = x2 & z2;
            let xo2 = x2 & !z2;
            let zo2 = !x2 & z2;
            plus += ((xo1 & y2) | (y1 & zo2) | (zo1 & xo2)).count_ones();
            minus += ((y1 & xo2) | (zo1 & y2) | (xo1 & zo2)).count_ones();
        }
        let phase = (plus + 4 * self.num_qubits() as u32 - minus) % 4;
        if phase % 2 == 1 {
            return Err(PauliError::Anticommuting);
        }
        let mut x = self.x.clone();
        x.xor_assign(&other.x);
        let mut z = self.z.clone();
        z.xor_assign(&other.z);
        let sign = self.sign * other.sign * Sign::from_negative(phase == 2);
        Ok(Self {
            x,
            z,
            sign,
            coeff: self.coeff * other.coeff,
        })
    }

    /// Restriction to the qubit range `start..start + count`; sign kept.
    pub fn restrict(&self, start: usize, count: usize) -> Self {
        Self {
            x: self.x.slice(start, count),
            z: self.z.slice(start, count),
            sign: self.sign,
            coeff: self.coeff,
        }
    }

    pub(crate) fn flip_sign(&mut self) {
        self.sign = -self.sign;
    }
}

/// Text form: optional `-` followed by the letters. Round-trips with
/// [`PauliTerm::parse`] (coefficient excluded).
impl fmt::Display for PauliTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            f.write_str("-")?;
        }
        f.write_str(&self.letter_string())
    }
}

pub fn parse_pauli(text: &str, n: usize) -> Result<PauliTerm, PauliError> {
    PauliTerm::parse(text, n)
}

pub fn format_pauli(p: &PauliTerm) -> String {
    p.to_string()
}

/// Weighted sum of Pauli strings on `n` qubits plus a scalar offset.
///
/// All-identity terms are folded into `offset` on construction, so `terms`
/// never contains the identity string.
#[derive(Debug, Clone, PartialEq)]
pub struct Hamiltonian {
    n: usize,
    terms: Vec<PauliTerm>,
    offset: f64,
}

impl Hamiltonian {
    pub fn new(n: usize, terms: Vec<PauliTerm>) -> Result<Self, PauliError> {
        Self::with_offset(n, terms, 0.0)
    }

    pub fn with_offset(n: usize, terms: Vec<PauliTerm>, offset: f64) -> Result<Self, PauliError> {
        let mut kept = Vec::with_capacity(terms.len());
        let mut offset = offset;
        for t in terms {
            if t.num_qubits() != n {
                return Err(PauliError::QubitCountMismatch {
                    left: n,
                    right: t.num_qubits(),
                });
            }
            if t.is_identity() {
                offset += t.signed_coeff();
            } else {
                kept.push(t);
            }
        }
        Ok(Self {
            n,
            terms: kept,
            offset,
        })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn terms(&self) -> &[PauliTerm] {
        &self.terms
    }

    #[inline]
    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliTerm {
        let n = s.trim_start_matches(['+', '-']).len();
        PauliTerm::parse(s, n).unwrap()
    }

    #[test]
    fn parse_direct_encoding() {
        let t = p("XXI");
        assert_eq!(format!("{:?}", t.x_bits()), "110");
        assert_eq!(format!("{:?}", t.z_bits()), "000");
        assert_eq!(t.sign, Sign::Plus);
        let t = p("ZIZ");
        assert_eq!(format!("{:?}", t.x_bits()), "000");
        assert_eq!(format!("{:?}", t.z_bits()), "101");
        let t = p("-Y");
        assert_eq!(t.sign, Sign::Minus);
        assert_eq!(t.letter(0), Letter::Y);
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert_eq!(
            PauliTerm::parse("W", 1),
            Err(PauliError::InvalidCharacter { ch: 'W', pos: 0 })
        );
        assert_eq!(
            PauliTerm::parse("XX", 3),
            Err(PauliError::LengthMismatch {
                expected: 3,
                found: 2
            })
        );
        assert_eq!(
            PauliTerm::parse("XXXX", 3),
            Err(PauliError::LengthMismatch {
                expected: 3,
                found: 4
            })
        );
    }

    #[test]
    fn symplectic_product_examples() {
        assert_eq!(p("X").symplectic_product(&p("Z")).unwrap(), 1);
        assert_eq!(p("XX").symplectic_product(&p("ZZ")).unwrap(), 0);
        assert_eq!(p("XXI").symplectic_product(&p("ZIZ")).unwrap(), 1);
        assert!(p("XX").symplectic_product(&p("Z")).is_err());
    }

    #[test]
    fn multiply_examples() {
        let i1 = p("X").multiply(&p("X")).unwrap();
        assert!(i1.is_identity());
        assert_eq!(i1.sign, Sign::Plus);
        let i2 = p("Z").multiply(&p("Z")).unwrap();
        assert!(i2.is_identity() && i2.sign == Sign::Plus);
        let yy = p("XX").multiply(&p("ZZ")).unwrap();
        assert_eq!(yy.to_string(), "-YY");
        assert_eq!(p("X").multiply(&p("Z")), Err(PauliError::Anticommuting));
    }

    #[test]
    fn hamiltonian_extracts_identity_offset() {
        let mut id = PauliTerm::identity(2);
        id.coeff = 0.75;
        let mut zz = p("ZZ");
        zz.coeff = 2.0;
        let mut neg_id = p("-II");
        neg_id.coeff = 0.25;
        let h = Hamiltonian::new(2, vec![id, zz, neg_id]).unwrap();
        assert_eq!(h.len(), 1);
        assert!((h.offset() - 0.5).abs() < 1e-15);
        assert!(Hamiltonian::new(3, vec![p("ZZ")]).is_err());
    }

    #[test]
    fn from_sparse_places_letters() {
        let t = PauliTerm::from_sparse(4, &[(1, Letter::X), (3, Letter::Z)], -0.5);
        assert_eq!(t.letter_string(), "IXIZ");
        assert_eq!(t.coeff, -0.5);
    }
}
