//! Brute-force ground truth at small `n`: dense matrices built from explicit
//! 2x2 letter matrices, exhaustive symmetry search and spectral checks.
//!
//! Nothing here reuses the symplectic machinery of the other modules, so it
//! can be used to test them. Basis states are indexed with qubit 0 as the most
//! significant bit, matching the leftmost Kronecker factor.

use std::collections::HashSet;

use nalgebra::{Complex, DMatrix, DVector};
use rand::{Rng, RngCore};
use serde::Serialize;
use thiserror::Error;

use crate::clifford::{CliffordCircuit, Gate};
use crate::pauli::{Hamiltonian, Letter, PauliTerm};
use crate::reduction::{sector_hamiltonian, ReductionError, ReductionResult, SectorSpec};

pub type C64 = Complex<f64>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{what} needs n <= {cap}, got n = {n}")]
    OverCap {
        what: &'static str,
        n: usize,
        cap: usize,
    },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
}

/// Largest `n` accepted by each dense routine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCaps {
    pub dense: usize,
    pub verify: usize,
    pub brute_force: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        Self {
            dense: 14,
            verify: 10,
            brute_force: 6,
        }
    }
}

fn check_cap(what: &'static str, n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        return Err(OracleError::OverCap { what, n, cap });
    }
    Ok(())
}

/// A `2^n × 2^n` complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    pub n: usize,
    pub matrix: DMatrix<C64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }
}

const ONE: C64 = Complex { re: 1.0, im: 0.0 };
const IM: C64 = Complex { re: 0.0, im: 1.0 };

/// Column action of a letter matrix on input bit `s`: output bit and amplitude.
fn letter_action(l: Letter, s: usize) -> (usize, C64) {
    match (l, s) {
        (Letter::I, s) => (s, ONE),
        (Letter::X, s) => (1 - s, ONE),
        (Letter::Y, 0) => (1, IM),
        (Letter::Y, _) => (0, -IM),
        (Letter::Z, 0) => (0, ONE),
        (Letter::Z, _) => (1, -ONE),
    }
}

/// Adds `weight · P` to `m`, where `P` includes the term's sign.
fn add_pauli(m: &mut DMatrix<C64>, n: usize, p: &PauliTerm, weight: f64) {
    let letters: Vec<Letter> = p.letters().collect();
    let w = C64::new(weight * p.sign.value(), 0.0);
    for col in 0..1usize << n {
        let mut row = 0usize;
        let mut amp = ONE;
        for (q, &l) in letters.iter().enumerate() {
            let shift = n - 1 - q;
            let (out, a) = letter_action(l, (col >> shift) & 1);
            row |= out << shift;
            amp *= a;
        }
        m[(row, col)] += w * amp;
    }
}

/// Dense matrix of a single term, sign included and coefficient ignored.
pub fn pauli_to_dense(p: &PauliTerm) -> DMatrix<C64> {
    let n = p.num_qubits();
    let mut m = DMatrix::zeros(1 << n, 1 << n);
    add_pauli(&mut m, n, p, 1.0);
    m
}

/// `Σ w_i P_i + offset · I`.
pub fn to_dense(h: &Hamiltonian) -> Result<DenseOperator, OracleError> {
    to_dense_capped(h, OracleCaps::default().dense)
}

pub fn to_dense_capped(h: &Hamiltonian, cap: usize) -> Result<DenseOperator, OracleError> {
    let n = h.num_qubits();
    check_cap("dense Hamiltonian", n, cap)?;
    let dim = 1usize << n;
    let mut m = DMatrix::zeros(dim, dim);
    for t in h.terms() {
        add_pauli(&mut m, n, t, t.coeff);
    }
    for i in 0..dim {
        m[(i, i)] += C64::new(h.offset(), 0.0);
    }
    Ok(DenseOperator { n, matrix: m })
}

/// Replaces rows `i`, `i | mask` with `g` applied to each column pair.
fn apply_1q(u: &mut DMatrix<C64>, n: usize, q: usize, g: [[C64; 2]; 2]) {
    let mask = 1usize << (n - 1 - q);
    for col in 0..u.ncols() {
        for i in (0..u.nrows()).filter(|i| i & mask == 0) {
            let (a, b) = (u[(i, col)], u[(i | mask, col)]);
            u[(i, col)] = g[0][0] * a + g[0][1] * b;
            u[(i | mask, col)] = g[1][0] * a + g[1][1] * b;
        }
    }
}

/// Applies a basis permutation `|i⟩ ↦ |f(i)⟩` to every column.
fn apply_perm(u: &mut DMatrix<C64>, f: impl Fn(usize) -> usize) {
    let old = u.clone();
    for i in 0..u.nrows() {
        u.set_row(f(i), &old.row(i));
    }
}

/// `U = U_k ⋯ U_1` for the circuit `[U_1, …, U_k]`.
pub fn circuit_to_dense(c: &CliffordCircuit) -> Result<DenseOperator, OracleError> {
    circuit_to_dense_capped(c, OracleCaps::default().dense)
}

pub fn circuit_to_dense_capped(
    c: &CliffordCircuit,
    cap: usize,
) -> Result<DenseOperator, OracleError> {
    let n = c.num_qubits();
    check_cap("dense circuit", n, cap)?;
    let mut u = DMatrix::<C64>::identity(1 << n, 1 << n);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let h = [
        [C64::new(s, 0.0), C64::new(s, 0.0)],
        [C64::new(s, 0.0), C64::new(-s, 0.0)],
    ];
    let zero = C64::new(0.0, 0.0);
    for g in c.gates() {
        match *g {
            Gate::H(q) => apply_1q(&mut u, n, q, h),
            Gate::S(q) => apply_1q(&mut u, n, q, [[ONE, zero], [zero, IM]]),
            Gate::Sdg(q) => apply_1q(&mut u, n, q, [[ONE, zero], [zero, -IM]]),
            Gate::Cnot { control, target } => {
                let (mc, mt) = (1 << (n - 1 - control), 1 << (n - 1 - target));
                apply_perm(&mut u, |i| if i & mc != 0 { i ^ mt } else { i });
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (1 << (n - 1 - a), 1 << (n - 1 - b));
                apply_perm(&mut u, |i| {
                    if ((i & ma) != 0) != ((i & mb) != 0) {
                        i ^ ma ^ mb
                    } else {
                        i
                    }
                });
            }
        }
    }
    Ok(DenseOperator { n, matrix: u })
}

/// Largest entry modulus.
pub fn max_abs(m: &DMatrix<C64>) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Sorted eigenvalues of a Hermitian matrix.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    if m.nrows() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// `exp(−i H t) v` by a truncated Taylor series over short time steps.
pub fn evolve(h: &DMatrix<C64>, v: &DVector<C64>, t: f64) -> DVector<C64> {
    let norm1 = (0..h.ncols())
        .map(|j| h.column(j).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max);
    let steps = (norm1 * t.abs()).ceil().max(1.0) as usize;
    let dt = t / steps as f64;
    let mut out = v.clone();
    for _ in 0..steps {
        let mut term = out.clone();
        let mut acc = out.clone();
        for k in 1..80 {
            term = (h * &term) * C64::new(0.0, -dt / k as f64);
            acc += &term;
            if term.norm() <= 1e-17 * acc.norm() {
                break;
            }
        }
        out = acc;
    }
    out
}

type Word = Vec<Letter>;

fn letter_product(a: Letter, b: Letter) -> Letter {
    use Letter::*;
    match (a, b) {
        (I, l) | (l, I) => l,
        (X, X) | (Y, Y) | (Z, Z) => I,
        (X, Y) | (Y, X) => Z,
        (Y, Z) | (Z, Y) => X,
        (X, Z) | (Z, X) => Y,
    }
}

fn word_commutes(a: &[Letter], b: &[Letter]) -> bool {
    a.iter()
        .zip(b)
        .filter(|(x, y)| **x != Letter::I && **y != Letter::I && x != y)
        .count()
        % 2
        == 0
}

/// Number of independent Pauli symmetries lying in the group generated by the
/// terms: `log2 |{s ∈ ⟨terms⟩ : s commutes with every term}|`, phases ignored.
/// Enumerates all `4^n` strings.
pub fn brute_force_charges(h: &Hamiltonian) -> Result<usize, OracleError> {
    brute_force_charges_capped(h, OracleCaps::default().brute_force)
}

pub fn brute_force_charges_capped(h: &Hamiltonian, cap: usize) -> Result<usize, OracleError> {
    let n = h.num_qubits();
    check_cap("exhaustive charge search", n, cap)?;
    let terms: Vec<Word> = h.terms().iter().map(|t| t.letters().collect()).collect();

    let mut group: HashSet<Word> = HashSet::from([vec![Letter::I; n]]);
    for t in &terms {
        if group.contains(t) {
            continue;
        }
        let coset: Vec<Word> = group
            .iter()
            .map(|g| {
                g.iter()
                    .zip(t)
                    .map(|(&a, &b)| letter_product(a, b))
                    .collect()
            })
            .collect();
        group.extend(coset);
    }

    const ALPHABET: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut centre = 0usize;
    for code in 0..1usize << (2 * n) {
        let s: Word = (0..n).map(|q| ALPHABET[(code >> (2 * q)) & 3]).collect();
        if terms.iter().all(|t| word_commutes(&s, t)) && group.contains(&s) {
            centre += 1;
        }
    }
    debug_assert!(centre.is_power_of_two());
    Ok(centre.trailing_zeros() as usize)
}

/// Outcome of one numerical check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: &'static str,
    pub pass: bool,
    pub max_deviation: f64,
    pub tolerance: f64,
}

impl CheckResult {
    fn new(name: &'static str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name,
            pass: max_deviation <= tolerance,
            max_deviation,
            tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub active: usize,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub caps: OracleCaps,
    pub seed: u64,
    pub block_tol: f64,
    pub spectrum_tol: f64,
    pub commutator_tol: f64,
    pub evolution_tol: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            caps: OracleCaps::default(),
            seed: 0x5eed,
            block_tol: 1e-9,
            spectrum_tol: 1e-9,
            commutator_tol: 1e-12,
            evolution_tol: 1e-8,
        }
    }
}

pub fn verify_reduction(
    h: &Hamiltonian,
    res: &ReductionResult,
) -> Result<VerifyReport, OracleError> {
    verify_reduction_with(h, res, &VerifyOptions::default())
}

/// Dense cross-check of a reduction:
///
/// - `unitarity`: `‖U U† − I‖`;
/// - `conjugation`: `U H U†` against the dense sum of reduced terms;
/// - `block_diagonal`: entries of `U H U†` between different values of the
///   first `r + c` qubits;
/// - `spectrum`: sorted eigenvalues of `H` against the union over sectors,
///   each repeated `2^r` times;
/// - `charges`: `‖[Z̃_j, H]‖` for every original-basis charge;
/// - `evolution`: `exp(−i C H C† t)(|0…0⟩|z⟩|ψ⟩)` against
///   `|0…0⟩|z⟩ exp(−i H|_z t)|ψ⟩` up to a global phase, for a random `t`, `z`
///   and `ψ`.
pub fn verify_reduction_with(
    h: &Hamiltonian,
    res: &ReductionResult,
    opts: &VerifyOptions,
) -> Result<VerifyReport, OracleError> {
    let n = h.num_qubits();
    check_cap("verification", n, opts.caps.verify)?;
    let dim = 1usize << n;
    let hd = to_dense_capped(h, opts.caps.verify)?.matrix;
    let u = circuit_to_dense_capped(&res.circuit, opts.caps.verify)?.matrix;
    let ud = u.adjoint();
    let mut checks = Vec::new();

    let unit_dev = max_abs(&(&u * &ud - DMatrix::<C64>::identity(dim, dim)));
    checks.push(CheckResult::new("unitarity", unit_dev, opts.commutator_tol));

    let conj = &u * &hd * &ud;
    let mut hr = DMatrix::<C64>::zeros(dim, dim);
    for i in 0..res.reduced_terms.len() {
        let t = res.reduced_term_full(i);
        add_pauli(&mut hr, n, &t, t.coeff);
    }
    for i in 0..dim {
        hr[(i, i)] += C64::new(res.offset, 0.0);
    }
    checks.push(CheckResult::new(
        "conjugation",
        max_abs(&(&conj - &hr)),
        opts.block_tol,
    ));

    let shift = res.active;
    let mut off_block = 0.0f64;
    for col in 0..dim {
        for row in 0..dim {
            if row >> shift != col >> shift {
                off_block = off_block.max(conj[(row, col)].norm());
            }
        }
    }
    checks.push(CheckResult::new(
        "block_diagonal",
        off_block,
        opts.block_tol,
    ));

    let full = hermitian_eigenvalues(&hd);
    let mut union = Vec::with_capacity(dim);
    let mut sectors = Vec::with_capacity(1 << res.c);
    for zi in 0..1u64 << res.c {
        let spec = SectorSpec::from_index(zi, res.c);
        let hs = sector_hamiltonian(res, &spec)?;
        let hsd = to_dense_capped(&hs, opts.caps.verify)?.matrix;
        for ev in hermitian_eigenvalues(&hsd) {
            union.extend(std::iter::repeat_n(ev, 1 << res.r));
        }
        sectors.push((spec, hsd));
    }
    union.sort_by(f64::total_cmp);
    let spec_dev = if union.len() == full.len() {
        full.iter()
            .zip(&union)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    checks.push(CheckResult::new("spectrum", spec_dev, opts.spectrum_tol));

    let mut comm_dev = 0.0f64;
    for q in &res.charges_original {
        let qd = pauli_to_dense(q);
        comm_dev = comm_dev.max(max_abs(&(&qd * &hd - &hd * &qd)));
    }
    checks.push(CheckResult::new("charges", comm_dev, opts.commutator_tol));

    let mut rng = seeded(opts.seed);
    let t: f64 = rng.random_range(0.0..1.0);
    let zi = if res.c == 0 {
        0
    } else {
        rng.random_range(0..1usize << res.c)
    };
    let adim = 1usize << res.active;
    let psi = random_state(&mut rng, adim);
    let (_, hz) = &sectors[zi];
    // Charge qubit r + j sits at bit n − 1 − r − j of the basis index.
    let zpos: usize = (0..res.c)
        .filter(|&j| (zi >> j) & 1 == 1)
        .map(|j| 1usize << (res.active + res.c - 1 - j))
        .sum();
    let embed = |v: &DVector<C64>| {
        let mut out = DVector::<C64>::zeros(dim);
        for k in 0..adim {
            out[zpos | k] = v[k];
        }
        out
    };
    let lhs = evolve(&conj, &embed(&psi), t);
    let rhs = embed(&evolve(hz, &psi, t));
    let overlap = rhs.dotc(&lhs);
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    let ev_dev = (lhs - rhs * phase)
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    checks.push(CheckResult::new("evolution", ev_dev, opts.evolution_tol));

    Ok(VerifyReport {
        n,
        r: res.r,
        c: res.c,
        active: res.active,
        checks,
    })
}

fn seeded(seed: u64) -> rand_chacha::ChaCha8Rng {
    use rand::SeedableRng;
    rand_chacha::ChaCha8Rng::seed_from_u64(seed)
}

/// Normalized state with real and imaginary parts drawn from `[-1, 1)`.
pub fn random_state(rng: &mut impl RngCore, dim: usize) -> DVector<C64> {
    let v = DVector::from_fn(dim, |_, _| {
        C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
    });
    let norm = v.norm();
    v / C64::new(norm, 0.0)
}

/// `terms` non-identity strings on `n` qubits, letters uniform, weights
/// uniform in `[-2, 2]`. Repeated strings are allowed.
pub fn random_hamiltonian(rng: &mut impl RngCore, n: usize, terms: usize) -> Hamiltonian {
    const ALPHABET: [Letter; 4] = [Letter::I, Letter::X, Letter::Y, Letter::Z];
    let mut out = Vec::with_capacity(terms);
    while out.len() < terms {
        let mut t = PauliTerm::identity(n);
        for q in 0..n {
            t.set_letter(q, ALPHABET[rng.random_range(0..4)]);
        }
        if t.is_identity() {
            continue;
        }
        t.coeff = rng.random_range(-2.0..=2.0);
        out.push(t);
    }
    Hamiltonian::new(n, out).expect("terms built on n qubits")
}

/// Uniformly random gate sequence of length `len` on `n ≥ 2` qubits.
pub fn random_circuit(rng: &mut impl RngCore, n: usize, len: usize) -> CliffordCircuit {
    let mut c = CliffordCircuit::new(n);
    while c.len() < len {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let g = match rng.random_range(0..5) {
            0 => Gate::H(a),
            1 => Gate::S(a),
            2 => Gate::Sdg(a),
            3 if a != b => Gate::Cnot {
                control: a,
                target: b,
            },
            4 if a != b => Gate::Swap(a, b),
            _ => continue,
        };
        c.push(g).expect("indices below n");
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ham(strs: &[&str]) -> Hamiltonian {
        let n = strs[0].len();
        Hamiltonian::new(
            n,
            strs.iter()
                .map(|s| PauliTerm::parse(s, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn dense_z_and_trace() {
        let m = to_dense(&ham(&["Z"])).unwrap().matrix;
        assert_eq!(m[(0, 0)], ONE);
        assert_eq!(m[(1, 1)], -ONE);
        let m = to_dense(&ham(&["XXI", "IXX", "ZIZ"])).unwrap().matrix;
        assert_eq!(m.trace(), C64::new(0.0, 0.0));
        assert!(max_abs(&(&m - m.adjoint())) == 0.0);
    }

    #[test]
    fn dense_gates() {
        let h = circuit_to_dense(&CliffordCircuit::from_gates(1, vec![Gate::H(0)]).unwrap())
            .unwrap()
            .matrix;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        assert!((h[(1, 1)].re + s).abs() < 1e-15);
        let cx = CliffordCircuit::from_gates(
            2,
            vec![Gate::Cnot {
                control: 0,
                target: 1,
            }],
        )
        .unwrap();
        let m = circuit_to_dense(&cx).unwrap().matrix;
        assert_eq!(m[(3, 2)], ONE);
        assert_eq!(m[(2, 3)], ONE);
        assert_eq!(m[(0, 0)], ONE);
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(
            brute_force_charges(&ham(&["XXI", "IXX", "ZIZ"])).unwrap(),
            1
        );
        assert_eq!(brute_force_charges(&ham(&["X"])).unwrap(), 1);
        assert_eq!(brute_force_charges(&ham(&["ZI", "IZ"])).unwrap(), 2);
        assert_eq!(brute_force_charges(&ham(&["X", "Z"])).unwrap(), 0);
        assert!(brute_force_charges(&ham(&["IIIIIII"])).is_err());
    }

    #[test]
    fn evolve_matches_closed_form() {
        // exp(−i t Z)|+⟩ = (e^{−it}|0⟩ + e^{it}|1⟩)/√2
        let z = to_dense(&ham(&["Z"])).unwrap().matrix;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = DVector::from_vec(vec![C64::new(s, 0.0), C64::new(s, 0.0)]);
        let out = evolve(&z, &v, 0.7);
        assert!((out[0] - C64::new(0.7f64.cos() * s, -0.7f64.sin() * s)).norm() < 1e-14);
        assert!((out[1] - C64::new(0.7f64.cos() * s, 0.7f64.sin() * s)).norm() < 1e-14);
    }
}
