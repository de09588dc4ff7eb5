//! Clifford reduction of Pauli-sum Hamiltonians.
//!
//! [`reduce`] finds a Clifford circuit `C` such that `C H C†` acts trivially on
//! `r` qubits, diagonally on `c` qubits and arbitrarily on the remaining
//! `n − r − c`. Fixing the `c` conserved charges splits the problem into `2^c`
//! independent sector Hamiltonians on the active qubits.
//!
//! ```
//! use taper_core::{reduce, sector_hamiltonian, Hamiltonian, PauliTerm, SectorSpec};
//!
//! let terms = ["XXI", "IXX", "ZIZ"]
//!     .iter()
//!     .map(|s| PauliTerm::parse(s, 3).unwrap())
//!     .collect();
//! let h = Hamiltonian::new(3, terms).unwrap();
//! let res = reduce(&h).unwrap();
//! assert_eq!((res.r, res.c, res.active), (1, 1, 1));
//! let sector = sector_hamiltonian(&res, &SectorSpec::parse("1").unwrap()).unwrap();
//! assert_eq!(sector.len(), 1);
//! ```

pub mod bits;
pub mod clifford;
pub mod gf2;
pub mod models;
pub mod oracle;
pub mod pauli;
pub mod reduction;
pub mod tableau;

pub use bits::BitVec;
pub use clifford::{
    conjugate_circuit, conjugate_gate, invert, CliffordCircuit, CliffordError, Gate,
};
pub use gf2::{
    canonicalize, commutation_matrix, generating_subset, rank_gf2, theorem_bound, BitMatrix,
    CanonicalCommutation, GeneratingSubset, Gf2Error, TheoremBound,
};
pub use models::{
    generate, hubbard, j1j2_chain, kitaev, z2_lgt, LatticeSpec, ModelError, ModelKind,
};
pub use oracle::{
    brute_force_charges, circuit_to_dense, to_dense, verify_reduction, DenseOperator, OracleCaps,
    OracleError, VerifyReport,
};
pub use pauli::{format_pauli, parse_pauli, Hamiltonian, Letter, PauliError, PauliTerm, Sign};
pub use reduction::{
    charges_in_original_basis, optimality_check, reduce, sector_hamiltonian, synthesize_to_x,
    synthesize_to_z, OptimalityReport, ReducedTerm, ReductionError, ReductionResult, SectorSpec,
};
pub use tableau::Tableau;
