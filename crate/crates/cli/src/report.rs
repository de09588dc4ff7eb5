//! JSON form of a reduction.

use serde::{Deserialize, Serialize};
use taper_core::{
    BitVec, CliffordCircuit, Hamiltonian, OptimalityReport, PauliTerm, ReducedTerm,
    ReductionResult, Sign,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportTerm {
    pub coeff: f64,
    pub zeta: String,
    pub tail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Optimality {
    #[serde(rename = "dimM")]
    pub dim_m: usize,
    #[serde(rename = "rankM")]
    pub rank_m: usize,
    pub pass: bool,
}

impl From<&OptimalityReport> for Optimality {
    fn from(o: &OptimalityReport) -> Self {
        Self {
            dim_m: o.dim,
            rank_m: o.rank,
            pass: o.pass(),
        }
    }
}

/// Everything needed to rebuild sectors and re-verify without rerunning the
/// sweep. `charge_signs[j]` is the eigenvalue sign of `charges_original[j]`
/// relative to `(−1)^{z_j}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionReport {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub active: usize,
    pub offset: f64,
    pub circuit: Vec<String>,
    pub charges_reduced: Vec<String>,
    pub charges_original: Vec<String>,
    pub charge_signs: Vec<i8>,
    pub reduced_terms: Vec<ReportTerm>,
    pub optimality: Optimality,
    pub permutation: Vec<usize>,
}

fn bits(v: &BitVec) -> String {
    v.to_string()
}

impl ReductionReport {
    pub fn new(res: &ReductionResult, optimality: &OptimalityReport) -> Self {
        Self {
            n: res.n,
            r: res.r,
            c: res.c,
            active: res.active,
            offset: res.offset,
            circuit: res.circuit.gate_lines(),
            charges_reduced: res.charges_reduced.iter().map(|p| p.to_string()).collect(),
            charges_original: res.charges_original.iter().map(|p| p.to_string()).collect(),
            charge_signs: res
                .charge_signs
                .iter()
                .map(|s| if s.is_negative() { -1 } else { 1 })
                .collect(),
            reduced_terms: res
                .reduced_terms
                .iter()
                .map(|t| ReportTerm {
                    coeff: t.coeff,
                    zeta: bits(&t.zeta),
                    tail: t.tail.letter_string(),
                })
                .collect(),
            optimality: optimality.into(),
            permutation: res.permutation.clone(),
        }
    }

    /// Rebuilds the in-memory result; fails on any inconsistent field.
    pub fn to_result(&self) -> Result<ReductionResult, String> {
        if self.r + self.c + self.active != self.n {
            return Err(format!(
                "r + c + active = {} but n = {}",
                self.r + self.c + self.active,
                self.n
            ));
        }
        let circuit = CliffordCircuit::parse(&self.circuit.join("\n"), self.n)
            .map_err(|e| format!("circuit: {e}"))?;
        let parse_all = |list: &[String], n: usize, what: &str| {
            list.iter()
                .map(|s| PauliTerm::parse(s, n).map_err(|e| format!("{what}: {e}")))
                .collect::<Result<Vec<_>, _>>()
        };
        let charges_reduced = parse_all(&self.charges_reduced, self.n - self.r, "charges_reduced")?;
        let charges_original = parse_all(&self.charges_original, self.n, "charges_original")?;
        if charges_original.len() != self.c || self.charge_signs.len() != self.c {
            return Err(format!("expected {} charges", self.c));
        }
        let charge_signs = self
            .charge_signs
            .iter()
            .map(|&s| match s {
                1 => Ok(Sign::Plus),
                -1 => Ok(Sign::Minus),
                _ => Err(format!("charge sign {s} is not ±1")),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let reduced_terms = self
            .reduced_terms
            .iter()
            .map(|t| {
                if t.zeta.len() != self.c {
                    return Err(format!("zeta {:?} does not have length {}", t.zeta, self.c));
                }
                let zeta = t
                    .zeta
                    .chars()
                    .map(|ch| match ch {
                        '0' => Ok(false),
                        '1' => Ok(true),
                        _ => Err(format!("zeta {:?} is not a bit string", t.zeta)),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let tail = PauliTerm::parse(&t.tail, self.active)
                    .map_err(|e| format!("tail {:?}: {e}", t.tail))?;
                Ok(ReducedTerm {
                    coeff: t.coeff,
                    zeta: BitVec::from_bools(&zeta),
                    tail,
                })
            })
            .collect::<Result<Vec<_>, String>>()?;
        Ok(ReductionResult {
            n: self.n,
            circuit,
            r: self.r,
            c: self.c,
            active: self.active,
            reduced_terms,
            charges_reduced,
            charges_original,
            charge_signs,
            offset: self.offset,
            permutation: self.permutation.clone(),
        })
    }

    /// Checks that the report describes `h` term for term.
    pub fn matches(&self, h: &Hamiltonian) -> bool {
        self.n == h.num_qubits() && self.reduced_terms.len() == h.len()
    }
}
