//! Lattice model Hamiltonians used as benchmarks.
//!
//! Each generator is deterministic and documents its qubit numbering and term
//! order, so generated files are byte-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pauli::{Hamiltonian, Letter, PauliTerm};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("invalid lattice size: {0}")]
    InvalidSize(String),
    #[error("unknown parameter {name:?} for {kind}")]
    UnknownParam { kind: ModelKind, name: String },
    #[error("parameter {name} = {value} is not finite")]
    NonFinite { name: String, value: f64 },
    #[error("unknown model kind {0:?}")]
    UnknownKind(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelKind {
    Z2Lgt,
    Hubbard,
    Kitaev,
    J1J2,
}

impl ModelKind {
    fn param_defaults(self) -> &'static [(&'static str, f64)] {
        match self {
            ModelKind::Z2Lgt => &[("xi", 1.0)],
            ModelKind::Hubbard => &[("u", 4.0), ("t", 1.0)],
            ModelKind::Kitaev => &[("jx", 1.0), ("jy", 1.0), ("jz", 1.0), ("hz", 1.0)],
            ModelKind::J1J2 => &[("j1", 1.0), ("j2", 1.0)],
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ModelKind::Z2Lgt => "z2",
            ModelKind::Hubbard => "hubbard",
            ModelKind::Kitaev => "kitaev",
            ModelKind::J1J2 => "j1j2",
        })
    }
}

impl FromStr for ModelKind {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "z2" | "z2_lgt" | "z2lgt" => Ok(ModelKind::Z2Lgt),
            "hubbard" => Ok(ModelKind::Hubbard),
            "kitaev" => Ok(ModelKind::Kitaev),
            "j1j2" | "j1-j2" => Ok(ModelKind::J1J2),
            _ => Err(ModelError::UnknownKind(s.to_string())),
        }
    }
}

/// Model kind, lattice size and couplings.
///
/// Parameter names: `xi` (Z2), `u`, `t` (Hubbard), `jx`, `jy`, `jz`, `hz`
/// (Kitaev), `j1`, `j2` (J1-J2). Missing parameters take their defaults:
/// `u = 4`, everything else 1. For J1-J2 the chain length is `rows · cols`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeSpec {
    pub kind: ModelKind,
    pub rows: usize,
    pub cols: usize,
    pub params: BTreeMap<String, f64>,
    pub with_field: bool,
    pub periodic: bool,
}

impl LatticeSpec {
    pub fn new(kind: ModelKind, rows: usize, cols: usize) -> Self {
        Self {
            kind,
            rows,
            cols,
            params: BTreeMap::new(),
            with_field: false,
            periodic: kind == ModelKind::Z2Lgt,
        }
    }

    pub fn with_field(mut self, on: bool) -> Self {
        self.with_field = on;
        self
    }

    pub fn periodic(mut self, on: bool) -> Self {
        self.periodic = on;
        self
    }

    pub fn param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_ascii_lowercase(), value);
        self
    }

    /// Value of a parameter, or its default.
    pub fn get(&self, name: &str) -> Result<f64, ModelError> {
        let defaults = self.kind.param_defaults();
        let Some(&(_, default)) = defaults.iter().find(|(k, _)| *k == name) else {
            return Err(ModelError::UnknownParam {
                kind: self.kind,
                name: name.to_string(),
            });
        };
        Ok(self.params.get(name).copied().unwrap_or(default))
    }

    fn validate(&self) -> Result<(), ModelError> {
        let defaults = self.kind.param_defaults();
        for (name, &value) in &self.params {
            if !defaults.iter().any(|(k, _)| k == name) {
                return Err(ModelError::UnknownParam {
                    kind: self.kind,
                    name: name.clone(),
                });
            }
            if !value.is_finite() {
                return Err(ModelError::NonFinite {
                    name: name.clone(),
                    value,
                });
            }
        }
        if self.rows == 0 || self.cols == 0 {
            return Err(ModelError::InvalidSize(format!(
                "{}x{} has no sites",
                self.rows, self.cols
            )));
        }
        Ok(())
    }
}

/// Dispatches on `spec.kind`.
pub fn generate(spec: &LatticeSpec) -> Result<Hamiltonian, ModelError> {
    match spec.kind {
        ModelKind::Z2Lgt => z2_lgt(spec),
        ModelKind::Hubbard => hubbard(spec),
        ModelKind::Kitaev => kitaev(spec),
        ModelKind::J1J2 => {
            spec.validate()?;
            j1j2_chain(spec.rows * spec.cols, spec.get("j1")?, spec.get("j2")?)
        }
    }
}

fn term(n: usize, ops: &[(usize, Letter)], coeff: f64) -> PauliTerm {
    PauliTerm::from_sparse(n, ops, coeff)
}

fn build(n: usize, terms: Vec<PauliTerm>, offset: f64) -> Hamiltonian {
    Hamiltonian::with_offset(n, terms, offset).expect("generators build n-qubit terms")
}

/// Pure Z2 gauge theory on a `rows × cols` torus of edge qubits:
/// `−Σ_p X X X X + ξ Σ_e Z_e`.
///
/// Site `(r, c)` owns horizontal edge `2(r·cols + c)` and vertical edge
/// `2(r·cols + c) + 1`. Plaquette `(r, c)` acts on the horizontal edges of
/// `(r, c)` and `(r+1, c)` and the vertical edges of `(r, c)` and `(r, c+1)`,
/// indices wrapping. Terms: plaquettes in row-major order, then one `Z` per
/// edge in index order.
pub fn z2_lgt(spec: &LatticeSpec) -> Result<Hamiltonian, ModelError> {
    spec.validate()?;
    let (rows, cols) = (spec.rows, spec.cols);
    if rows < 2 || cols < 2 {
        return Err(ModelError::InvalidSize(format!(
            "Z2 torus needs at least 2x2, got {rows}x{cols}"
        )));
    }
    if !spec.periodic {
        return Err(ModelError::InvalidSize(
            "Z2 lattice is always a torus".into(),
        ));
    }
    let xi = spec.get("xi")?;
    let n = 2 * rows * cols;
    let h = |r: usize, c: usize| 2 * ((r % rows) * cols + c % cols);
    let v = |r: usize, c: usize| h(r, c) + 1;
    let mut terms = Vec::with_capacity(3 * rows * cols);
    for r in 0..rows {
        for c in 0..cols {
            let edges = [h(r, c), h(r + 1, c), v(r, c), v(r, c + 1)];
            let ops: Vec<_> = edges.iter().map(|&e| (e, Letter::X)).collect();
            terms.push(term(n, &ops, -1.0));
        }
    }
    for e in 0..n {
        terms.push(term(n, &[(e, Letter::Z)], xi));
    }
    Ok(build(n, terms, 0.0))
}

/// Jordan–Wigner index of site `(r, c)` along the row snake.
fn snake(r: usize, c: usize, cols: usize) -> usize {
    if r.is_multiple_of(2) {
        r * cols + c
    } else {
        r * cols + (cols - 1 - c)
    }
}

/// Fermi–Hubbard model on a `rows × cols` grid after Jordan–Wigner:
/// `−t Σ_{⟨ij⟩σ} (a†_{iσ} a_{jσ} + h.c.) + U Σ_i n_{i↑} n_{i↓}`.
///
/// Sites are numbered along a row snake. Spin-up modes are qubits
/// `0..sites` and spin-down modes `sites..2·sites`. Each bond gives
/// `−t/2 · X Z…Z X` and `−t/2 · Y Z…Z Y`, and each site gives
/// `−U/4 Z↑ − U/4 Z↓ + U/4 Z↑Z↓` plus `U/4` in the offset. Terms: hopping for
/// spin up then spin down (horizontal bonds row by row, then vertical bonds),
/// then on-site terms site by site. With `periodic`, dimensions longer than 2
/// also get wrap-around bonds.
pub fn hubbard(spec: &LatticeSpec) -> Result<Hamiltonian, ModelError> {
    spec.validate()?;
    let (rows, cols) = (spec.rows, spec.cols);
    let sites = rows * cols;
    if sites < 2 {
        return Err(ModelError::InvalidSize(
            "Hubbard lattice needs two sites".into(),
        ));
    }
    let u = spec.get("u")?;
    let t = spec.get("t")?;
    let n = 2 * sites;

    let mut bonds = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                bonds.push((snake(r, c, cols), snake(r, c + 1, cols)));
            } else if spec.periodic && cols > 2 {
                bonds.push((snake(r, c, cols), snake(r, 0, cols)));
            }
        }
    }
    for r in 0..rows {
        for c in 0..cols {
            if r + 1 < rows {
                bonds.push((snake(r, c, cols), snake(r + 1, c, cols)));
            } else if spec.periodic && rows > 2 {
                bonds.push((snake(r, c, cols), snake(0, c, cols)));
            }
        }
    }

    let mut terms = Vec::new();
    for layer in [0, sites] {
        for &(a, b) in &bonds {
            let (i, j) = (layer + a.min(b), layer + a.max(b));
            for l in [Letter::X, Letter::Y] {
                let mut ops = vec![(i, l), (j, l)];
                ops.extend((i + 1..j).map(|k| (k, Letter::Z)));
                terms.push(term(n, &ops, -t / 2.0));
            }
        }
    }
    for s in 0..sites {
        let (up, down) = (s, sites + s);
        terms.push(term(n, &[(up, Letter::Z)], -u / 4.0));
        terms.push(term(n, &[(down, Letter::Z)], -u / 4.0));
        terms.push(term(n, &[(up, Letter::Z), (down, Letter::Z)], u / 4.0));
    }
    Ok(build(n, terms, sites as f64 * u / 4.0))
}

/// Kitaev honeycomb model on a cylinder with `rows × cols` plaquettes.
///
/// The lattice is `rows + 1` zigzag rings of `2·cols` sites; site `x` of ring
/// `y` is qubit `y·2·cols + x`, so `n = 2·cols·(rows + 1)` (`2L(L+1)` for an
/// `L × L` lattice). Ring bond `x → x+1` (wrapping) is an `XX` bond for even
/// `x` and `YY` for odd `x`; `ZZ` bonds join `(x, y)` and `(x, y+1)` whenever
/// `x ≡ y (mod 2)`. Terms: `J_x` bonds, `J_y` bonds, `J_z` bonds, then
/// `h_z Z_i` on every site when `with_field` is set.
pub fn kitaev(spec: &LatticeSpec) -> Result<Hamiltonian, ModelError> {
    spec.validate()?;
    let (jx, jy, jz, hz) = (
        spec.get("jx")?,
        spec.get("jy")?,
        spec.get("jz")?,
        spec.get("hz")?,
    );
    let width = 2 * spec.cols;
    let rings = spec.rows + 1;
    let n = width * rings;
    let idx = |x: usize, y: usize| y * width + x % width;

    let mut terms = Vec::new();
    for (letter, parity, j) in [(Letter::X, 0, jx), (Letter::Y, 1, jy)] {
        for y in 0..rings {
            for x in (parity..width).step_by(2) {
                terms.push(term(n, &[(idx(x, y), letter), (idx(x + 1, y), letter)], j));
            }
        }
    }
    for y in 0..rings - 1 {
        for x in (y % 2..width).step_by(2) {
            terms.push(term(
                n,
                &[(idx(x, y), Letter::Z), (idx(x, y + 1), Letter::Z)],
                jz,
            ));
        }
    }
    if spec.with_field {
        for q in 0..n {
            terms.push(term(n, &[(q, Letter::Z)], hz));
        }
    }
    Ok(build(n, terms, 0.0))
}

/// Open chain `Σ J1 X_i X_{i+1} + Σ J2 Z_i Z_{i+2}`, all `XX` terms first.
pub fn j1j2_chain(n: usize, j1: f64, j2: f64) -> Result<Hamiltonian, ModelError> {
    if n < 3 {
        return Err(ModelError::InvalidSize(format!(
            "J1-J2 chain needs n >= 3, got {n}"
        )));
    }
    let mut terms = Vec::with_capacity(2 * n - 3);
    for i in 0..n - 1 {
        terms.push(term(n, &[(i, Letter::X), (i + 1, Letter::X)], j1));
    }
    for i in 0..n - 2 {
        terms.push(term(n, &[(i, Letter::Z), (i + 2, Letter::Z)], j2));
    }
    Ok(build(n, terms, 0.0))
}
