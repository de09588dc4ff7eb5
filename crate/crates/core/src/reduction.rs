//! Qubit-by-qubit Clifford sweep that removes redundant qubits and exposes
//! every Pauli conserved charge as a single `Z`.
//!
//! After [`reduce`], conjugating the Hamiltonian by the returned circuit gives
//! terms of the form `ω_i · I^{⊗r} ⊗ Z^{ζ_i} ⊗ S_i`: the first `r` qubits are
//! idle, the next `c` carry only `I`/`Z`, and the last `active` qubits hold the
//! tails `S_i`. Fixing the `Z` eigenvalues `(−1)^{z_j}` on the middle block
//! gives the sector Hamiltonian `Σ (−1)^{z·ζ_i} ω_i S_i`.

use std::collections::HashMap;

use thiserror::Error;

use crate::bits::BitVec;
use crate::clifford::{CliffordCircuit, CliffordError, Gate};
use crate::gf2::theorem_bound;
use crate::pauli::{Hamiltonian, Letter, PauliError, PauliTerm, Sign};
use crate::tableau::Tableau;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("Hamiltonian has no non-identity terms")]
    EmptyHamiltonian,
    #[error("qubit {qubit} is out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("term is the identity on qubits 0..={0}")]
    IdentityPrefix(usize),
    #[error("term has neither X nor Y on qubit {0}")]
    NoXAt(usize),
    #[error("sector vector has length {found}, expected {expected}")]
    SectorLength { expected: usize, found: usize },
    #[error("invalid sector bit {0:?}")]
    SectorBit(char),
    #[error(transparent)]
    Pauli(#[from] PauliError),
    #[error(transparent)]
    Clifford(#[from] CliffordError),
}

/// One conjugated input term `ω · I^{⊗r} ⊗ Z^{ζ} ⊗ S`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedTerm {
    /// `ω`, the input weight times the conjugation sign.
    pub coeff: f64,
    /// `Z` support on the conditional block, length `c`.
    pub zeta: BitVec,
    /// `S` on the active qubits, sign `+` and coefficient 1.
    pub tail: PauliTerm,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReductionResult {
    pub n: usize,
    pub circuit: CliffordCircuit,
    pub r: usize,
    pub c: usize,
    pub active: usize,
    /// One entry per input term, in input order.
    pub reduced_terms: Vec<ReducedTerm>,
    /// `Z` on position `j` of the `n − r` retained qubits.
    pub charges_reduced: Vec<PauliTerm>,
    /// `C† Z_{r+j} C` with its sign stripped; see [`ReductionResult::charge_signs`].
    pub charges_original: Vec<PauliTerm>,
    /// Sign `s_j` with `C† Z_{r+j} C = s_j · charges_original[j]`. In sector
    /// `z`, `charges_original[j]` has eigenvalue `s_j · (−1)^{z_j}`.
    pub charge_signs: Vec<Sign>,
    pub offset: f64,
    /// `permutation[new] = old`: final qubit positions in terms of sweep labels.
    pub permutation: Vec<usize>,
}

impl ReductionResult {
    /// The fully conjugated term `ω_i · I^{⊗r} ⊗ Z^{ζ_i} ⊗ S_i` on `n` qubits.
    pub fn reduced_term_full(&self, i: usize) -> PauliTerm {
        let t = &self.reduced_terms[i];
        let mut out = PauliTerm::identity(self.n);
        for j in t.zeta.ones() {
            out.set_letter(self.r + j, Letter::Z);
        }
        for (q, l) in t.tail.letters().enumerate() {
            out.set_letter(self.r + self.c + q, l);
        }
        out.coeff = t.coeff;
        out
    }
}

/// Charge values `z`, one bit per conditional qubit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SectorSpec {
    pub z: BitVec,
}

impl SectorSpec {
    pub fn new(z: BitVec) -> Self {
        Self { z }
    }

    /// Parses a `0`/`1` string, leftmost bit first.
    pub fn parse(bits: &str) -> Result<Self, ReductionError> {
        let bools = bits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(ReductionError::SectorBit(ch)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self::new(BitVec::from_bools(&bools)))
    }

    /// The sector whose bits are the low `c` bits of `index`; needs `c ≤ 64`.
    pub fn from_index(index: u64, c: usize) -> Self {
        Self::new(BitVec::from_u64(index, c))
    }
}

fn check_qubit(p: &PauliTerm, k: usize) -> Result<(), ReductionError> {
    if k >= p.num_qubits() {
        return Err(ReductionError::QubitOutOfRange {
            qubit: k,
            n: p.num_qubits(),
        });
    }
    Ok(())
}

/// Circuit on qubits `0..=k` taking `p` restricted to `0..=k` to `I…IZ`,
/// up to sign. Qubits above `k` are untouched.
///
/// Every support letter is rotated to `Z`, the `Z`s are folded onto one
/// qubit with a CNOT chain, and a SWAP moves the result to `k` when needed.
pub fn synthesize_to_z(p: &PauliTerm, k: usize) -> Result<CliffordCircuit, ReductionError> {
    check_qubit(p, k)?;
    let n = p.num_qubits();
    let support: Vec<(usize, Letter)> = (0..=k)
        .map(|q| (q, p.letter(q)))
        .filter(|&(_, l)| l != Letter::I)
        .collect();
    let Some(&(top, _)) = support.last() else {
        return Err(ReductionError::IdentityPrefix(k));
    };
    let mut gates = Vec::new();
    if support.len() == 1 && top == k && support[0].1 == Letter::Z {
        return Ok(CliffordCircuit::new(n));
    }
    for &(q, l) in &support {
        match l {
            Letter::X => gates.push(Gate::H(q)),
            Letter::Y => gates.extend([Gate::Sdg(q), Gate::H(q)]),
            _ => {}
        }
    }
    let target = top;
    for &(q, _) in &support {
        if q != target {
            gates.push(Gate::Cnot { control: q, target });
        }
    }
    if target != k {
        gates.push(Gate::Swap(target, k));
    }
    let c = CliffordCircuit::from_gates(n, gates).expect("gates lie on qubits 0..=k");
    let out = c.conjugate(p)?;
    assert!(
        (0..=k).all(|q| out.letter(q) == if q == k { Letter::Z } else { Letter::I }),
        "synthesize_to_z produced {out} at k={k}"
    );
    Ok(c)
}

/// Circuit on qubits `0..=k` taking `q` restricted to `0..=k` to `I…IX`, up to
/// sign, while fixing `Z_k`. Requires `X` or `Y` on qubit `k`.
pub fn synthesize_to_x(q: &PauliTerm, k: usize) -> Result<CliffordCircuit, ReductionError> {
    check_qubit(q, k)?;
    let n = q.num_qubits();
    let mut gates = Vec::new();
    match q.letter(k) {
        Letter::X => {}
        Letter::Y => gates.push(Gate::S(k)),
        _ => return Err(ReductionError::NoXAt(k)),
    }
    for j in 0..k {
        match q.letter(j) {
            Letter::I => {}
            Letter::X => gates.push(Gate::Cnot {
                control: k,
                target: j,
            }),
            Letter::Y => gates.extend([
                Gate::Sdg(j),
                Gate::Cnot {
                    control: k,
                    target: j,
                },
            ]),
            Letter::Z => gates.extend([
                Gate::H(j),
                Gate::Cnot {
                    control: k,
                    target: j,
                },
                Gate::H(j),
            ]),
        }
    }
    let c = CliffordCircuit::from_gates(n, gates).expect("gates lie on qubits 0..=k");
    let out = c.conjugate(q)?;
    assert!(
        (0..=k).all(|j| out.letter(j) == if j == k { Letter::X } else { Letter::I }),
        "synthesize_to_x produced {out} at k={k}"
    );
    let mut zk = PauliTerm::identity(n);
    zk.set_letter(k, Letter::Z);
    assert_eq!(c.conjugate(&zk)?, zk, "synthesize_to_x moved Z_{k}");
    Ok(c)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Redundant,
    Conditional,
    Active,
}

/// Runs the sweep over `k = n−1, …, 0` and then orders the qubits as
/// redundant, conditional, active.
///
/// At each `k`, an all-identity column is redundant. Otherwise the pivot `P`
/// (lowest row with `Z` at `k`, else lowest non-identity row) is sent to
/// `Z_k` on `0..=k`; if the column is then diagonal the qubit is conditional,
/// and otherwise the lowest row `Q` with `X`/`Y` at `k` is sent to `X_k`.
pub fn reduce(h: &Hamiltonian) -> Result<ReductionResult, ReductionError> {
    if h.is_empty() {
        return Err(ReductionError::EmptyHamiltonian);
    }
    let n = h.num_qubits();
    let mut tab = Tableau::from_terms(n, h.terms());
    let mut circuit = CliffordCircuit::new(n);
    let mut roles = vec![Role::Redundant; n];

    let push = |tab: &mut Tableau, circuit: &mut CliffordCircuit, c: CliffordCircuit| {
        tab.apply_circuit(&c);
        circuit.extend(&c).expect("same register");
    };

    for k in (0..n).rev() {
        if tab.column_is_identity(k) {
            continue;
        }
        let p = tab
            .first_z(k)
            .or_else(|| tab.first_non_identity(k))
            .expect("column is not identity");
        let cz = synthesize_to_z(&tab.row(p), k)?;
        push(&mut tab, &mut circuit, cz);
        if tab.column_is_diagonal(k) {
            roles[k] = Role::Conditional;
            continue;
        }
        let q = tab.first_x_or_y(k).expect("column has X or Y");
        let cx = synthesize_to_x(&tab.row(q), k)?;
        push(&mut tab, &mut circuit, cx);
        roles[k] = Role::Active;
    }

    let order: Vec<usize> = [Role::Redundant, Role::Conditional, Role::Active]
        .iter()
        .flat_map(|&role| {
            let roles = &roles;
            (0..n).filter(move |&q| roles[q] == role)
        })
        .collect();
    let mut at: Vec<usize> = (0..n).collect();
    let mut swaps = CliffordCircuit::new(n);
    for (pos, &old) in order.iter().enumerate() {
        let cur = at.iter().position(|&q| q == old).expect("qubit present");
        if cur != pos {
            swaps.push(Gate::Swap(pos, cur)).expect("valid swap");
            at.swap(pos, cur);
        }
    }
    push(&mut tab, &mut circuit, swaps);

    let r = roles.iter().filter(|&&x| x == Role::Redundant).count();
    let c = roles.iter().filter(|&&x| x == Role::Conditional).count();
    let active = n - r - c;

    let reduced_terms = h
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let row = tab.row(i);
            debug_assert!((0..r).all(|q| row.letter(q) == Letter::I));
            debug_assert!((r..r + c).all(|q| matches!(row.letter(q), Letter::I | Letter::Z)));
            let zeta = row.z_bits().slice(r, c);
            let mut tail = row.restrict(r + c, active);
            tail.sign = Sign::Plus;
            tail.coeff = 1.0;
            ReducedTerm {
                coeff: t.coeff * row.sign.value(),
                zeta,
                tail,
            }
        })
        .collect();

    let inverse = circuit.invert();
    let mut charges_original = Vec::with_capacity(c);
    let mut charge_signs = Vec::with_capacity(c);
    let mut charges_reduced = Vec::with_capacity(c);
    for j in 0..c {
        let mut zj = PauliTerm::identity(n);
        zj.set_letter(r + j, Letter::Z);
        let mut orig = inverse.conjugate(&zj).expect("same register");
        charge_signs.push(orig.sign);
        orig.sign = Sign::Plus;
        charges_original.push(orig);
        let mut red = PauliTerm::identity(n - r);
        red.set_letter(j, Letter::Z);
        charges_reduced.push(red);
    }

    Ok(ReductionResult {
        n,
        circuit,
        r,
        c,
        active,
        reduced_terms,
        charges_reduced,
        charges_original,
        charge_signs,
        offset: h.offset(),
        permutation: order,
    })
}

/// `Σ (−1)^{z·ζ_i} ω_i S_i` on the active qubits. Equal tails are merged in
/// order of first appearance, identity tails go to the offset, and merged
/// weights that cancel are dropped.
pub fn sector_hamiltonian(
    res: &ReductionResult,
    s: &SectorSpec,
) -> Result<Hamiltonian, ReductionError> {
    if s.z.len() != res.c {
        return Err(ReductionError::SectorLength {
            expected: res.c,
            found: s.z.len(),
        });
    }
    let mut offset = res.offset;
    let mut merged: Vec<(PauliTerm, f64, f64)> = Vec::new();
    let mut index: HashMap<(BitVec, BitVec), usize> = HashMap::new();
    for t in &res.reduced_terms {
        let w = if s.z.dot(&t.zeta) { -t.coeff } else { t.coeff };
        if t.tail.is_identity() {
            offset += w;
            continue;
        }
        let key = (t.tail.x_bits().clone(), t.tail.z_bits().clone());
        match index.get(&key) {
            Some(&i) => {
                merged[i].1 += w;
                merged[i].2 += w.abs();
            }
            None => {
                index.insert(key, merged.len());
                merged.push((t.tail.clone(), w, w.abs()));
            }
        }
    }
    let terms = merged
        .into_iter()
        .filter(|(_, w, scale)| w.abs() > 1e-12 * scale.max(1.0))
        .map(|(mut tail, w, _)| {
            tail.coeff = w;
            tail
        })
        .collect();
    Ok(Hamiltonian::with_offset(res.active, terms, offset)?)
}

/// Charges `C† Z_{r+j} C` in the input basis, sign stripped.
pub fn charges_in_original_basis(res: &ReductionResult) -> Vec<PauliTerm> {
    res.charges_original.clone()
}

/// Comparison of a reduction's counts with the closed forms
/// `c = dim − rank`, `active = rank / 2`, `r = n − dim + rank / 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimalityReport {
    pub dim: usize,
    pub rank: usize,
    pub expected_r: usize,
    pub expected_c: usize,
    pub expected_active: usize,
    pub r_pass: bool,
    pub c_pass: bool,
    pub active_pass: bool,
}

impl OptimalityReport {
    pub fn pass(&self) -> bool {
        self.r_pass && self.c_pass && self.active_pass
    }
}

pub fn optimality_check(h: &Hamiltonian, res: &ReductionResult) -> OptimalityReport {
    let bound = theorem_bound(h);
    let expected_c = bound.max_charges();
    let expected_active = bound.rank / 2;
    let expected_r = bound.redundant(h.num_qubits());
    OptimalityReport {
        dim: bound.dim,
        rank: bound.rank,
        expected_r,
        expected_c,
        expected_active,
        r_pass: res.r == expected_r,
        c_pass: res.c == expected_c,
        active_pass: res.active == expected_active,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliTerm {
        PauliTerm::parse(s, s.len()).unwrap()
    }

    fn ham(strs: &[&str]) -> Hamiltonian {
        let n = strs[0].len();
        Hamiltonian::new(n, strs.iter().map(|s| p(s)).collect()).unwrap()
    }

    #[test]
    fn synthesize_to_z_examples() {
        assert!(synthesize_to_z(&p("IIZ"), 2).unwrap().is_empty());
        assert_eq!(
            synthesize_to_z(&p("IIX"), 2).unwrap().gates(),
            &[Gate::H(2)]
        );
        let c = synthesize_to_z(&p("XXI"), 1).unwrap();
        let out = c.conjugate(&p("XXI")).unwrap();
        assert_eq!(out.letter_string(), "IZI");
        assert!(matches!(
            synthesize_to_z(&p("IIZ"), 1),
            Err(ReductionError::IdentityPrefix(1))
        ));
    }

    #[test]
    fn synthesize_to_x_examples() {
        assert!(synthesize_to_x(&p("IIX"), 2).unwrap().is_empty());
        let c = synthesize_to_x(&p("Y"), 0).unwrap();
        assert_eq!(c.gates(), &[Gate::S(0)]);
        assert_eq!(c.conjugate(&p("Y")).unwrap().to_string(), "-X");
        assert!(matches!(
            synthesize_to_x(&p("IZ"), 1),
            Err(ReductionError::NoXAt(1))
        ));
    }

    #[test]
    fn small_cases() {
        let res = reduce(&ham(&["Z"])).unwrap();
        assert_eq!((res.r, res.c, res.active), (0, 1, 0));
        let res = reduce(&ham(&["X", "Z"])).unwrap();
        assert_eq!((res.r, res.c, res.active), (0, 0, 1));
        let res = reduce(&ham(&["ZI", "IZ"])).unwrap();
        assert_eq!((res.r, res.c, res.active), (0, 2, 0));
        assert!(matches!(
            reduce(&Hamiltonian::new(2, vec![]).unwrap()),
            Err(ReductionError::EmptyHamiltonian)
        ));
    }

    #[test]
    fn three_qubit_chain_sectors() {
        let h = ham(&["XXI", "IXX", "ZIZ"]);
        let res = reduce(&h).unwrap();
        assert_eq!((res.r, res.c, res.active), (1, 1, 1));
        let s0 = sector_hamiltonian(&res, &SectorSpec::parse("0").unwrap()).unwrap();
        let s1 = sector_hamiltonian(&res, &SectorSpec::parse("1").unwrap()).unwrap();
        let show = |h: &Hamiltonian| {
            h.terms()
                .iter()
                .map(|t| format!("{} {}", t.coeff, t.letter_string()))
                .collect::<Vec<_>>()
        };
        assert_eq!(show(&s0), vec!["2 X", "1 Z"]);
        assert_eq!(show(&s1), vec!["1 Z"]);
        assert!(sector_hamiltonian(&res, &SectorSpec::parse("01").unwrap()).is_err());
        let report = optimality_check(&h, &res);
        assert!(report.pass());
        assert_eq!((report.dim, report.rank), (3, 2));
    }
}
