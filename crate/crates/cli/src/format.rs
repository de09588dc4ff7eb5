//! Line-oriented Hamiltonian files.
//!
//! ```text
//! # comment
//! qubits 3
//! 1 XXI
//! -0.5 IXX
//! 1 ZIZ
//! offset 0.25
//! ```
//!
//! The header comes first; each body line is `<coeff> <[+|-]paulistring>` or
//! `offset <value>`. Several offset lines add up.

use std::fmt::Write as _;

use taper_core::{Hamiltonian, PauliTerm};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub msg: String,
}

fn err(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError {
        line,
        msg: msg.into(),
    }
}

fn parse_real(s: &str, line: usize) -> Result<f64, FormatError> {
    let v: f64 = s
        .parse()
        .map_err(|_| err(line, format!("invalid number {s:?}")))?;
    if !v.is_finite() {
        return Err(err(line, format!("coefficient {s} is not finite")));
    }
    Ok(v)
}

pub fn parse_hamiltonian(text: &str) -> Result<Hamiltonian, FormatError> {
    let mut n = None;
    let mut terms = Vec::new();
    let mut offset = 0.0;
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        last = line;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let Some(n) = n else {
            match fields.as_slice() {
                ["qubits", count] => {
                    n = Some(
                        count
                            .parse::<usize>()
                            .map_err(|_| err(line, format!("invalid qubit count {count:?}")))?,
                    );
                    continue;
                }
                _ => return Err(err(line, "expected header `qubits <n>`")),
            }
        };
        match fields.as_slice() {
            ["offset", v] => offset += parse_real(v, line)?,
            [coeff, pauli] => {
                let mut t = PauliTerm::parse(pauli, n).map_err(|e| err(line, e.to_string()))?;
                t.coeff = parse_real(coeff, line)?;
                terms.push(t);
            }
            _ => return Err(err(line, "expected `<coeff> <paulistring>`")),
        }
    }
    let n = n.ok_or_else(|| err(last.max(1), "missing header `qubits <n>`"))?;
    Hamiltonian::with_offset(n, terms, offset).map_err(|e| err(last, e.to_string()))
}

/// Canonical text: header, one term per line with the sign folded into the
/// coefficient, then the offset line.
pub fn write_hamiltonian(h: &Hamiltonian) -> String {
    let mut out = format!("qubits {}\n", h.num_qubits());
    for t in h.terms() {
        let _ = writeln!(out, "{} {}", t.signed_coeff(), t.letter_string());
    }
    let _ = writeln!(out, "offset {}", h.offset());
    out
}
