use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use taper_core::oracle::{
    brute_force_charges_capped, hermitian_eigenvalues, random_hamiltonian, verify_reduction,
    OracleError,
};
use taper_core::{
    brute_force_charges, generate, j1j2_chain, reduce, to_dense, Hamiltonian, LatticeSpec,
    ModelKind,
};

fn spectrum(h: &Hamiltonian) -> Vec<f64> {
    hermitian_eigenvalues(&to_dense(h).unwrap().matrix)
}

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

fn small_models() -> Vec<(&'static str, Hamiltonian)> {
    let g = |s: LatticeSpec| generate(&s).unwrap();
    vec![
        ("kitaev 1x1", g(LatticeSpec::new(ModelKind::Kitaev, 1, 1))),
        (
            "kitaev+field 1x1",
            g(LatticeSpec::new(ModelKind::Kitaev, 1, 1).with_field(true)),
        ),
        ("hubbard 1x2", g(LatticeSpec::new(ModelKind::Hubbard, 1, 2))),
        ("hubbard 1x3", g(LatticeSpec::new(ModelKind::Hubbard, 1, 3))),
        ("j1j2 4", j1j2_chain(4, 1.0, 0.5).unwrap()),
        ("j1j2 5", j1j2_chain(5, 1.0, 0.3).unwrap()),
        ("j1j2 6", j1j2_chain(6, 1.0, 1.0).unwrap()),
    ]
}

#[test]
fn models_match_brute_force_charges() {
    for (name, h) in small_models() {
        assert!(h.num_qubits() <= 6, "{name}");
        let res = reduce(&h).unwrap();
        assert_eq!(brute_force_charges(&h).unwrap(), res.c, "{name}");
    }
    let z2 = generate(&LatticeSpec::new(ModelKind::Z2Lgt, 2, 2)).unwrap();
    assert_eq!(brute_force_charges_capped(&z2, 8).unwrap(), 5);
}

#[test]
fn models_pass_dense_verification() {
    for (name, h) in small_models() {
        let res = reduce(&h).unwrap();
        let vr = verify_reduction(&h, &res).unwrap();
        assert!(vr.pass(), "{name}: {:?}", vr.checks);
    }
}

#[test]
fn three_qubit_chain_spectrum() {
    let h = j1j2_chain(3, 1.0, 1.0).unwrap();
    let s5 = 5f64.sqrt();
    let want = [-s5, -s5, -1.0, -1.0, 1.0, 1.0, s5, s5];
    assert!(close(&spectrum(&h), &want, 1e-9));
}

#[test]
fn two_site_hubbard_spectrum() {
    // Fock-space levels of the two-site model, grouped by particle number.
    let (u, t): (f64, f64) = (4.0, 1.0);
    let root = (u * u / 4.0 + 4.0 * t * t).sqrt();
    let mut want = vec![0.0];
    want.extend([-t, -t, t, t]);
    want.extend([0.0, 0.0, 0.0, u, u / 2.0 + root, u / 2.0 - root]);
    want.extend([u - t, u - t, u + t, u + t]);
    want.push(2.0 * u);
    want.sort_by(f64::total_cmp);
    let h = generate(&LatticeSpec::new(ModelKind::Hubbard, 1, 2)).unwrap();
    assert!(close(&spectrum(&h), &want, 1e-9), "{:?}", spectrum(&h));
}

#[test]
fn term_counts() {
    let z2 = generate(&LatticeSpec::new(ModelKind::Z2Lgt, 3, 3)).unwrap();
    assert_eq!((z2.num_qubits(), z2.len()), (18, 9 + 18));
    let k = generate(&LatticeSpec::new(ModelKind::Kitaev, 2, 2)).unwrap();
    let kf = generate(&LatticeSpec::new(ModelKind::Kitaev, 2, 2).with_field(true)).unwrap();
    assert_eq!(kf.len(), k.len() + 12);
    assert_eq!(j1j2_chain(6, 1.0, 1.0).unwrap().len(), 5 + 4);
    assert!(j1j2_chain(2, 1.0, 1.0).is_err());
}

#[test]
fn random_hamiltonians_verify() {
    for seed in 0..100 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let h = random_hamiltonian(&mut rng, 5, 5);
        let res = reduce(&h).unwrap();
        let vr = verify_reduction(&h, &res).unwrap();
        assert!(vr.pass(), "seed {seed}: {:?}", vr.checks);
        assert_eq!(brute_force_charges(&h).unwrap(), res.c, "seed {seed}");
    }
}

#[test]
fn caps_are_enforced() {
    let h = generate(&LatticeSpec::new(ModelKind::Kitaev, 2, 2)).unwrap();
    assert!(matches!(
        brute_force_charges(&h),
        Err(OracleError::OverCap { .. })
    ));
    let big = generate(&LatticeSpec::new(ModelKind::Z2Lgt, 5, 5)).unwrap();
    assert!(matches!(to_dense(&big), Err(OracleError::OverCap { .. })));
    let res = reduce(&big).unwrap();
    assert!(verify_reduction(&big, &res).is_err());
}
