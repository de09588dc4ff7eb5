//! Gate-level Clifford circuits acting on Pauli terms by conjugation.
//!
//! Gates listed first act first on states, so a circuit `[U_1, …, U_k]` is the
//! unitary `C = U_k ⋯ U_1` and conjugation folds left to right:
//! `P ↦ U_k ⋯ U_1 P U_1† ⋯ U_k†`.
//!
//! Text form, one gate per line with 0-based qubit indices and `#` comments:
//!
//! ```text
//! # qubits 3
//! H 0
//! SDG 2
//! CNOT 0 1
//! SWAP 1 2
//! ```

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::pauli::{Letter, PauliTerm, Sign};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliffordError {
    #[error("gate {gate} touches qubit {qubit} on a {n}-qubit register")]
    QubitOutOfRange { gate: Gate, qubit: usize, n: usize },
    #[error("two-qubit gate {0} repeats a qubit")]
    RepeatedQubit(Gate),
    #[error("circuit acts on {circuit} qubits, term on {term}")]
    QubitCountMismatch { circuit: usize, term: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Gate {
    H(usize),
    S(usize),
    Sdg(usize),
    Cnot { control: usize, target: usize },
    Swap(usize, usize),
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => (q, None),
            Gate::Cnot { control, target } => (control, Some(target)),
            Gate::Swap(a, b) => (a, Some(b)),
        }
    }

    pub fn inverse(self) -> Gate {
        match self {
            Gate::S(q) => Gate::Sdg(q),
            Gate::Sdg(q) => Gate::S(q),
            g => g,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Gate::H(_) => "H",
            Gate::S(_) => "S",
            Gate::Sdg(_) => "SDG",
            Gate::Cnot { .. } => "CNOT",
            Gate::Swap(..) => "SWAP",
        }
    }

    /// Checks the gate against an `n`-qubit register.
    pub fn validate(&self, n: usize) -> Result<(), CliffordError> {
        let (a, b) = self.qubits();
        for q in std::iter::once(a).chain(b) {
            if q >= n {
                return Err(CliffordError::QubitOutOfRange {
                    gate: *self,
                    qubit: q,
                    n,
                });
            }
        }
        if b == Some(a) {
            return Err(CliffordError::RepeatedQubit(*self));
        }
        Ok(())
    }

    /// In-place `p ↦ g p g†` with exact sign. Indices are assumed valid.
    pub fn apply(&self, p: &mut PauliTerm) {
        match *self {
            Gate::H(q) => {
                let l = p.letter(q);
                let (next, flip) = match l {
                    Letter::X => (Letter::Z, false),
                    Letter::Z => (Letter::X, false),
                    Letter::Y => (Letter::Y, true),
                    Letter::I => (Letter::I, false),
                };
                p.set_letter(q, next);
                if flip {
                    p.flip_sign();
                }
            }
            Gate::S(q) => {
                let (next, flip) = match p.letter(q) {
                    Letter::X => (Letter::Y, false),
                    Letter::Y => (Letter::X, true),
                    l => (l, false),
                };
                p.set_letter(q, next);
                if flip {
                    p.flip_sign();
                }
            }
            Gate::Sdg(q) => {
                let (next, flip) = match p.letter(q) {
                    Letter::X => (Letter::Y, true),
                    Letter::Y => (Letter::X, false),
                    l => (l, false),
                };
                p.set_letter(q, next);
                if flip {
                    p.flip_sign();
                }
            }
            Gate::Cnot { control, target } => {
                let (xc, zc) = p.letter(control).bits();
                let (xt, zt) = p.letter(target).bits();
                if xc && zt && !(xt ^ zc) {
                    p.flip_sign();
                }
                p.set_letter(control, Letter::from_bits(xc, zc ^ zt));
                p.set_letter(target, Letter::from_bits(xt ^ xc, zt));
            }
            Gate::Swap(a, b) => {
                let la = p.letter(a);
                let lb = p.letter(b);
                p.set_letter(a, lb);
                p.set_letter(b, la);
            }
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Gate::H(q) | Gate::S(q) | Gate::Sdg(q) => write!(f, "{} {q}", self.name()),
            Gate::Cnot { control, target } => write!(f, "CNOT {control} {target}"),
            Gate::Swap(a, b) => write!(f, "SWAP {a} {b}"),
        }
    }
}

impl FromStr for Gate {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let name = parts.next().ok_or("empty gate line")?;
        let args = parts
            .map(|a| {
                a.parse::<usize>()
                    .map_err(|_| format!("bad qubit index {a:?}"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(format!("{name} takes {k} qubit(s), got {}", args.len()))
            }
        };
        match name.to_ascii_uppercase().as_str() {
            "H" => arity(1).map(|_| Gate::H(args[0])),
            "S" => arity(1).map(|_| Gate::S(args[0])),
            "SDG" => arity(1).map(|_| Gate::Sdg(args[0])),
            "CNOT" | "CX" => arity(2).map(|_| Gate::Cnot {
                control: args[0],
                target: args[1],
            }),
            "SWAP" => arity(2).map(|_| Gate::Swap(args[0], args[1])),
            _ => Err(format!("unknown gate {name:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CliffordCircuit {
    n: usize,
    gates: Vec<Gate>,
}

impl CliffordCircuit {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            gates: Vec::new(),
        }
    }

    pub fn from_gates(n: usize, gates: Vec<Gate>) -> Result<Self, CliffordError> {
        for g in &gates {
            g.validate(n)?;
        }
        Ok(Self { n, gates })
    }

    #[inline]
    pub fn num_qubits(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, g: Gate) -> Result<(), CliffordError> {
        g.validate(self.n)?;
        self.gates.push(g);
        Ok(())
    }

    pub fn extend(&mut self, other: &CliffordCircuit) -> Result<(), CliffordError> {
        if other.n != self.n {
            return Err(CliffordError::QubitCountMismatch {
                circuit: self.n,
                term: other.n,
            });
        }
        self.gates.extend_from_slice(&other.gates);
        Ok(())
    }

    /// Reversed order with each gate inverted.
    pub fn invert(&self) -> CliffordCircuit {
        Self {
            n: self.n,
            gates: self.gates.iter().rev().map(|g| g.inverse()).collect(),
        }
    }

    /// `C p C†` with exact sign; the coefficient is untouched.
    pub fn conjugate(&self, p: &PauliTerm) -> Result<PauliTerm, CliffordError> {
        if p.num_qubits() != self.n {
            return Err(CliffordError::QubitCountMismatch {
                circuit: self.n,
                term: p.num_qubits(),
            });
        }
        let mut out = p.clone();
        for g in &self.gates {
            g.apply(&mut out);
        }
        Ok(out)
    }

    /// Parses the line format; `n` fixes the register size.
    pub fn parse(text: &str, n: usize) -> Result<Self, CliffordError> {
        let mut c = Self::new(n);
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let g: Gate = line
                .parse()
                .map_err(|msg| CliffordError::Parse { line: i + 1, msg })?;
            c.push(g).map_err(|e| CliffordError::Parse {
                line: i + 1,
                msg: e.to_string(),
            })?;
        }
        Ok(c)
    }

    /// One line per gate, without the header comment.
    pub fn gate_lines(&self) -> Vec<String> {
        self.gates.iter().map(ToString::to_string).collect()
    }
}

/// Text form with a `# qubits <n>` header; re-parses with
/// [`CliffordCircuit::parse`].
impl fmt::Display for CliffordCircuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# qubits {}", self.n)?;
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

pub fn conjugate_gate(g: Gate, p: &PauliTerm) -> Result<PauliTerm, CliffordError> {
    g.validate(p.num_qubits())?;
    let mut out = p.clone();
    g.apply(&mut out);
    Ok(out)
}

pub fn conjugate_circuit(c: &CliffordCircuit, p: &PauliTerm) -> Result<PauliTerm, CliffordError> {
    c.conjugate(p)
}

pub fn invert(c: &CliffordCircuit) -> CliffordCircuit {
    c.invert()
}

/// Sign of `C p C†` relative to its letters.
pub fn conjugation_sign(c: &CliffordCircuit, p: &PauliTerm) -> Result<Sign, CliffordError> {
    Ok(c.conjugate(p)?.sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> PauliTerm {
        let n = s.trim_start_matches(['+', '-']).len();
        PauliTerm::parse(s, n).unwrap()
    }

    #[test]
    fn single_gate_examples() {
        assert_eq!(
            conjugate_gate(Gate::H(0), &p("X")).unwrap().to_string(),
            "Z"
        );
        assert_eq!(
            conjugate_gate(Gate::S(0), &p("Y")).unwrap().to_string(),
            "-X"
        );
        let g = Gate::Cnot {
            control: 0,
            target: 1,
        };
        assert_eq!(conjugate_gate(g, &p("XI")).unwrap().to_string(), "XX");
        assert_eq!(conjugate_gate(g, &p("IZ")).unwrap().to_string(), "ZZ");
        assert_eq!(conjugate_gate(g, &p("IX")).unwrap().to_string(), "IX");
        assert_eq!(conjugate_gate(g, &p("ZI")).unwrap().to_string(), "ZI");
        assert_eq!(
            conjugate_gate(Gate::Swap(0, 2), &p("XIZ"))
                .unwrap()
                .to_string(),
            "ZIX"
        );
    }

    #[test]
    fn out_of_range_gate_is_rejected() {
        assert!(matches!(
            conjugate_gate(Gate::H(3), &p("XX")),
            Err(CliffordError::QubitOutOfRange { qubit: 3, .. })
        ));
        assert!(matches!(
            CliffordCircuit::new(2).push(Gate::Swap(1, 1)),
            Err(CliffordError::RepeatedQubit(_))
        ));
    }

    #[test]
    fn invert_examples() {
        let c = CliffordCircuit::from_gates(1, vec![Gate::H(0)]).unwrap();
        assert_eq!(c.invert().gates(), &[Gate::H(0)]);
        let cnot = Gate::Cnot {
            control: 0,
            target: 1,
        };
        let c = CliffordCircuit::from_gates(2, vec![Gate::S(0), cnot]).unwrap();
        assert_eq!(c.invert().gates(), &[cnot, Gate::Sdg(0)]);
    }

    #[test]
    fn empty_circuit_is_identity() {
        let c = CliffordCircuit::new(3);
        assert_eq!(c.conjugate(&p("-XYZ")).unwrap(), p("-XYZ"));
        assert!(c.conjugate(&p("XY")).is_err());
    }

    #[test]
    fn text_round_trip() {
        let c = CliffordCircuit::from_gates(
            3,
            vec![
                Gate::H(0),
                Gate::Sdg(2),
                Gate::Cnot {
                    control: 0,
                    target: 1,
                },
                Gate::Swap(1, 2),
                Gate::S(1),
            ],
        )
        .unwrap();
        let text = c.to_string();
        assert!(text.contains("SDG 2\n"));
        assert!(text.contains("CNOT 0 1\n"));
        assert_eq!(CliffordCircuit::parse(&text, 3).unwrap(), c);
    }

    #[test]
    fn parse_reports_line_numbers() {
        let err = CliffordCircuit::parse("H 0\n# ok\nFOO 1\n", 2).unwrap_err();
        assert!(matches!(err, CliffordError::Parse { line: 3, .. }));
        let err = CliffordCircuit::parse("CNOT 0 5", 2).unwrap_err();
        assert!(matches!(err, CliffordError::Parse { line: 1, .. }));
    }
}
