//! Subcommand implementations. Each returns the text destined for stdout.

use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use taper_core::oracle::{verify_reduction_with, CheckResult, OracleCaps, VerifyOptions};
use taper_core::{
    brute_force_charges, generate as generate_model, optimality_check, reduce as reduce_h,
    sector_hamiltonian, Hamiltonian, LatticeSpec, ModelKind, OracleError, ReductionError,
    SectorSpec,
};

use crate::format::{parse_hamiltonian, write_hamiltonian};
use crate::report::{Optimality, ReductionReport};
use crate::CliError;

/// Largest `n` the dense verifier will accept even when asked.
pub const MAX_VERIFY_N: usize = 14;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Writes `text` to `out` if given, otherwise hands it back for stdout.
fn emit(out: Option<&Path>, text: String) -> Result<String, CliError> {
    match out {
        Some(p) => write(p, &text).map(|_| String::new()),
        None => Ok(text),
    }
}

pub fn load_hamiltonian(path: &Path) -> Result<Hamiltonian, CliError> {
    let text = read(path)?;
    parse_hamiltonian(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_report(path: &Path) -> Result<ReductionReport, CliError> {
    let text = read(path)?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: invalid report: {e}", path.display())))
}

fn reduction_err(e: ReductionError) -> CliError {
    CliError::Input(e.to_string())
}

/// Parses `R` (square) or `RxC`.
pub fn parse_size(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Input(format!("invalid size {s:?}; expected R or RxC"));
    let parts: Vec<&str> = s.split(['x', 'X']).collect();
    let num = |p: &str| p.trim().parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        [r] => {
            let r = num(r)?;
            Ok((r, r))
        }
        [r, c] => Ok((num(r)?, num(c)?)),
        _ => Err(bad()),
    }
}

pub struct GenerateArgs<'a> {
    pub kind: &'a str,
    pub size: Option<&'a str>,
    pub n: Option<usize>,
    pub field: bool,
    pub periodic: bool,
    pub params: &'a [String],
    pub out: Option<&'a Path>,
}

pub fn generate(args: &GenerateArgs<'_>) -> Result<String, CliError> {
    let kind: ModelKind = args
        .kind
        .parse()
        .map_err(|e: taper_core::ModelError| CliError::Input(e.to_string()))?;
    let (rows, cols) = match (kind, args.n, args.size) {
        (ModelKind::J1J2, Some(n), _) => (1, n),
        (ModelKind::J1J2, None, Some(s)) => {
            let (r, c) = parse_size(s)?;
            if s.contains(['x', 'X']) {
                (r, c)
            } else {
                (1, r)
            }
        }
        (_, _, Some(s)) => parse_size(s)?,
        (_, Some(_), None) => {
            return Err(CliError::Input(
                "--n applies to j1j2 only; use --size".into(),
            ))
        }
        (_, None, None) => return Err(CliError::Input("missing --size".into())),
    };
    let mut spec = LatticeSpec::new(kind, rows, cols).with_field(args.field);
    if args.periodic {
        spec = spec.periodic(true);
    }
    for kv in args.params {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("parameter {kv:?} is not k=v")))?;
        let v: f64 = v
            .trim()
            .parse()
            .map_err(|_| CliError::Input(format!("parameter {k} has invalid value {v:?}")))?;
        spec = spec.param(k.trim(), v);
    }
    let h = generate_model(&spec).map_err(|e| CliError::Input(e.to_string()))?;
    emit(args.out, write_hamiltonian(&h))
}

pub fn summary_line(r: &ReductionReport) -> String {
    format!("n={} r={} c={} active={}", r.n, r.r, r.c, r.active)
}

/// Reduces the file at `input`, writes the JSON report to `out` and the
/// circuit text next to it (or to `circuit`). Returns the summary line.
pub fn reduce(input: &Path, out: &Path, circuit: Option<&Path>) -> Result<String, CliError> {
    let h = load_hamiltonian(input)?;
    let res = reduce_h(&h).map_err(reduction_err)?;
    let opt = optimality_check(&h, &res);
    let report = ReductionReport::new(&res, &opt);
    let json = serde_json::to_string_pretty(&report).expect("report serializes");
    write(out, &(json + "\n"))?;
    let circuit_path = circuit.map_or_else(|| out.with_extension("circuit"), Path::to_path_buf);
    write(&circuit_path, &res.circuit.to_string())?;
    Ok(summary_line(&report) + "\n")
}

pub fn sector(report: &Path, z: &str, out: Option<&Path>) -> Result<String, CliError> {
    let report = load_report(report)?;
    let res = report.to_result().map_err(CliError::Input)?;
    let spec = SectorSpec::parse(z).map_err(reduction_err)?;
    let h = sector_hamiltonian(&res, &spec).map_err(reduction_err)?;
    emit(out, write_hamiltonian(&h))
}

#[derive(Debug, Serialize)]
pub struct BruteForce {
    pub charges: usize,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct VerifyOutput {
    pub n: usize,
    pub r: usize,
    pub c: usize,
    pub active: usize,
    pub checks: Vec<CheckResult>,
    pub optimality: Optimality,
    pub brute_force: Option<BruteForce>,
    pub pass: bool,
}

/// Reduces (or loads a report for) the file and runs every dense check.
/// An unsuccessful verification is reported as [`CliError::Failed`] carrying
/// the JSON document.
pub fn verify(
    input: &Path,
    report: Option<&Path>,
    cap_n: usize,
    out: Option<&Path>,
) -> Result<String, CliError> {
    let h = load_hamiltonian(input)?;
    let cap = cap_n.min(MAX_VERIFY_N);
    if h.num_qubits() > cap {
        return Err(CliError::Capability(format!(
            "n = {} exceeds the verification cap of {cap} qubits",
            h.num_qubits()
        )));
    }
    let res = match report {
        Some(p) => {
            let rep = load_report(p)?;
            if !rep.matches(&h) {
                return Err(CliError::Input(format!(
                    "{} does not describe {}",
                    p.display(),
                    input.display()
                )));
            }
            rep.to_result().map_err(CliError::Input)?
        }
        None => reduce_h(&h).map_err(reduction_err)?,
    };
    let opt = optimality_check(&h, &res);
    let caps = OracleCaps {
        dense: cap,
        verify: cap,
        ..OracleCaps::default()
    };
    let opts = VerifyOptions {
        caps,
        ..VerifyOptions::default()
    };
    let vr = verify_reduction_with(&h, &res, &opts).map_err(|e| match e {
        OracleError::OverCap { .. } => CliError::Capability(e.to_string()),
        OracleError::Reduction(e) => reduction_err(e),
    })?;
    let brute_force = if h.num_qubits() <= caps.brute_force {
        let charges = brute_force_charges(&h).expect("n within the brute-force cap");
        Some(BruteForce {
            charges,
            pass: charges == res.c,
        })
    } else {
        None
    };
    let pass = vr.pass() && opt.pass() && brute_force.as_ref().is_none_or(|b| b.pass);
    let doc = VerifyOutput {
        n: vr.n,
        r: vr.r,
        c: vr.c,
        active: vr.active,
        checks: vr.checks,
        optimality: (&opt).into(),
        brute_force,
        pass,
    };
    let json = serde_json::to_string_pretty(&doc).expect("report serializes") + "\n";
    let text = emit(out, json)?;
    if pass {
        Ok(text)
    } else {
        Err(CliError::Failed(text))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RowStatus {
    Match,
    Mismatch,
    Skipped,
}

impl RowStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RowStatus::Match => "MATCH",
            RowStatus::Mismatch => "MISMATCH",
            RowStatus::Skipped => "SKIPPED(no input)",
        }
    }
}

/// One line of the qubit-count table: published `(n, c, active)` next to the
/// computed `(n, r, c, active)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub model: String,
    pub expected: (usize, usize, usize),
    pub got: Option<(usize, usize, usize, usize)>,
    pub status: RowStatus,
}

const Z2_ROWS: [(usize, (usize, usize, usize)); 6] = [
    (2, (8, 5, 3)),
    (5, (50, 26, 24)),
    (6, (72, 37, 35)),
    (7, (98, 50, 48)),
    (10, (200, 101, 99)),
    (15, (450, 226, 224)),
];

const KITAEV_ROWS: [(usize, (usize, usize, usize)); 5] = [
    (1, (4, 3, 1)),
    (2, (12, 6, 6)),
    (5, (60, 25, 35)),
    (10, (220, 98, 122)),
    (15, (480, 220, 260)),
];

const KITAEV_FIELD_ROWS: [(usize, (usize, usize, usize)); 5] = [
    (1, (4, 2, 2)),
    (2, (12, 3, 9)),
    (5, (60, 6, 54)),
    (10, (220, 11, 209)),
    (15, (480, 16, 464)),
];

const HUBBARD_SIZES: [(usize, usize); 4] = [(1, 2), (2, 2), (2, 3), (3, 3)];

const CHEM_ROWS: [(&str, (usize, usize, usize)); 3] =
    [("H2", (4, 3, 1)), ("LiH", (12, 4, 8)), ("BeH2", (14, 5, 9))];

fn row(model: String, expected: (usize, usize, usize), h: &Hamiltonian) -> TableRow {
    let res = reduce_h(h).expect("generated models are nonempty");
    let got = (res.n, res.r, res.c, res.active);
    let status = if (got.0, got.2, got.3) == expected {
        RowStatus::Match
    } else {
        RowStatus::Mismatch
    };
    TableRow {
        model,
        expected,
        got: Some(got),
        status,
    }
}

/// Regenerates every lattice row and any supplied chemistry rows. Chemistry
/// files are matched to rows by qubit count.
pub fn table_rows(chem: &[Hamiltonian]) -> Result<Vec<TableRow>, CliError> {
    let mut rows = Vec::new();
    let mut chem_by_row: Vec<Option<&Hamiltonian>> = vec![None; CHEM_ROWS.len()];
    for h in chem {
        let i = CHEM_ROWS
            .iter()
            .position(|(_, e)| e.0 == h.num_qubits())
            .ok_or_else(|| {
                CliError::Input(format!(
                    "no chemistry row has {} qubits (expected 4, 12 or 14)",
                    h.num_qubits()
                ))
            })?;
        chem_by_row[i] = Some(h);
    }
    for ((name, expected), h) in CHEM_ROWS.iter().zip(chem_by_row) {
        match h {
            Some(h) => rows.push(row(name.to_string(), *expected, h)),
            None => rows.push(TableRow {
                model: name.to_string(),
                expected: *expected,
                got: None,
                status: RowStatus::Skipped,
            }),
        }
    }
    let gen = |spec: LatticeSpec| generate_model(&spec).expect("table sizes are valid");
    for (l, expected) in Z2_ROWS {
        let h = gen(LatticeSpec::new(ModelKind::Z2Lgt, l, l));
        rows.push(row(format!("Z2 LGT {l}x{l}"), expected, &h));
    }
    for (rs, cs) in HUBBARD_SIZES {
        let sites = rs * cs;
        let h = gen(LatticeSpec::new(ModelKind::Hubbard, rs, cs));
        rows.push(row(
            format!("Hubbard {rs}x{cs}"),
            (2 * sites, 2, 2 * (sites - 1)),
            &h,
        ));
    }
    for (l, expected) in KITAEV_ROWS {
        let h = gen(LatticeSpec::new(ModelKind::Kitaev, l, l));
        rows.push(row(format!("Kitaev {l}x{l}"), expected, &h));
    }
    for (l, expected) in KITAEV_FIELD_ROWS {
        let h = gen(LatticeSpec::new(ModelKind::Kitaev, l, l).with_field(true));
        rows.push(row(format!("Kitaev+field {l}x{l}"), expected, &h));
    }
    Ok(rows)
}

pub fn render_table(rows: &[TableRow], csv: bool) -> String {
    let mut out = String::new();
    if csv {
        out.push_str("model,expected_n,expected_c,expected_active,n,r,c,active,status\n");
    } else {
        out.push_str(&format!(
            "{:<20} {:>16} {:>20}  {}\n",
            "model", "expected n/c/act", "got n/r/c/act", "status"
        ));
    }
    for r in rows {
        let (en, ec, ea) = r.expected;
        let got = r
            .got
            .map(|(n, rr, c, a)| (n.to_string(), rr.to_string(), c.to_string(), a.to_string()));
        if csv {
            let (n, rr, c, a) = got.unwrap_or_default();
            out.push_str(&format!(
                "{},{en},{ec},{ea},{n},{rr},{c},{a},{}\n",
                r.model,
                r.status.as_str()
            ));
        } else {
            let got = got.map_or_else(
                || "-".to_string(),
                |(n, rr, c, a)| format!("{n}/{rr}/{c}/{a}"),
            );
            out.push_str(&format!(
                "{:<20} {:>16} {:>20}  {}\n",
                r.model,
                format!("{en}/{ec}/{ea}"),
                got,
                r.status.as_str()
            ));
        }
    }
    out
}

pub fn table(chem: &[PathBuf], csv: bool) -> Result<String, CliError> {
    let chem = chem
        .iter()
        .map(|p| load_hamiltonian(p))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = table_rows(&chem)?;
    Ok(render_table(&rows, csv))
}
