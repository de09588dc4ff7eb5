use proptest::prelude::*;
use taper_core::{
    generate, reduce, sector_hamiltonian, synthesize_to_x, synthesize_to_z, theorem_bound, BitVec,
    Hamiltonian, LatticeSpec, Letter, ModelKind, PauliTerm, ReductionError, SectorSpec, Sign,
};

fn ham(n: usize, strs: &[&str]) -> Hamiltonian {
    Hamiltonian::new(
        n,
        strs.iter()
            .map(|s| PauliTerm::parse(s, n).unwrap())
            .collect(),
    )
    .unwrap()
}

fn letters(n: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(prop::sample::select(vec!['I', 'X', 'Y', 'Z']), n)
        .prop_map(|v| v.into_iter().collect())
}

fn hamiltonian(max_n: usize, max_terms: usize) -> impl Strategy<Value = Hamiltonian> {
    (1..=max_n, 1..=max_terms).prop_flat_map(|(n, count)| {
        (
            prop::collection::vec(letters(n), count),
            prop::collection::vec(-2.0f64..2.0, count),
        )
            .prop_filter_map("needs a non-identity term", move |(strs, w)| {
                let terms: Vec<PauliTerm> = strs
                    .iter()
                    .zip(&w)
                    .map(|(s, &c)| {
                        let mut t = PauliTerm::parse(s, n).unwrap();
                        t.coeff = c;
                        t
                    })
                    .collect();
                let h = Hamiltonian::new(n, terms).unwrap();
                (!h.is_empty()).then_some(h)
            })
    })
}

fn single(n: usize, q: usize, l: Letter) -> PauliTerm {
    PauliTerm::from_sparse(n, &[(q, l)], 1.0)
}

fn is_single(p: &PauliTerm, q: usize, l: Letter) -> bool {
    p.weight() == 1 && p.letter(q) == l
}

proptest! {
    #[test]
    fn counts_follow_the_commutation_matrix(h in hamiltonian(7, 10)) {
        let res = reduce(&h).unwrap();
        let b = theorem_bound(&h);
        prop_assert_eq!(res.r + res.c + res.active, h.num_qubits());
        prop_assert_eq!(res.c, b.max_charges());
        prop_assert_eq!(res.active, b.rank / 2);
        prop_assert_eq!(res.r, b.redundant(h.num_qubits()));
    }

    #[test]
    fn reduced_terms_have_the_block_shape(h in hamiltonian(7, 10)) {
        let res = reduce(&h).unwrap();
        prop_assert_eq!(res.reduced_terms.len(), h.len());
        for (i, t) in h.terms().iter().enumerate() {
            let conj = res.circuit.conjugate(t).unwrap();
            let full = res.reduced_term_full(i);
            prop_assert_eq!(conj.letter_string(), full.letter_string());
            prop_assert_eq!(conj.signed_coeff(), full.signed_coeff());
            for q in 0..res.r {
                prop_assert_eq!(conj.letter(q), Letter::I);
            }
            for q in res.r..res.r + res.c {
                prop_assert!(matches!(conj.letter(q), Letter::I | Letter::Z));
            }
        }
    }

    #[test]
    fn charges_commute_and_are_independent(h in hamiltonian(7, 10)) {
        let res = reduce(&h).unwrap();
        prop_assert_eq!(res.charges_original.len(), res.c);
        prop_assert_eq!(res.charges_reduced.len(), res.c);
        for (j, q) in res.charges_original.iter().enumerate() {
            for t in h.terms() {
                prop_assert!(q.commutes_with(t).unwrap());
            }
            let mut z = res.circuit.conjugate(q).unwrap();
            if res.charge_signs[j] == Sign::Minus {
                z.sign = z.sign * Sign::Minus;
            }
            prop_assert!(is_single(&z, res.r + j, Letter::Z));
            prop_assert_eq!(z.sign, Sign::Plus);
            prop_assert!(is_single(&res.charges_reduced[j], j, Letter::Z));
        }
        let vecs: Vec<BitVec> = res.charges_original.iter().map(|q| q.symplectic_vector()).collect();
        if !vecs.is_empty() {
            let m = taper_core::BitMatrix::from_rows(vecs).unwrap();
            prop_assert_eq!(taper_core::rank_gf2(&m), res.c);
        }
    }

    #[test]
    fn sector_signs_follow_zeta(h in hamiltonian(6, 8), zi in any::<u64>()) {
        let res = reduce(&h).unwrap();
        let mask = if res.c >= 64 { u64::MAX } else { (1u64 << res.c) - 1 };
        let z = SectorSpec::from_index(zi & mask, res.c);
        let hz = sector_hamiltonian(&res, &z).unwrap();
        prop_assert_eq!(hz.num_qubits(), res.active);
        let mut offset = res.offset;
        let mut sums: Vec<(String, f64)> = Vec::new();
        for t in &res.reduced_terms {
            let parity = (0..res.c).filter(|&j| t.zeta.get(j) && z.z.get(j)).count() % 2;
            let w = if parity == 1 { -t.coeff } else { t.coeff };
            if t.tail.is_identity() {
                offset += w;
            } else if let Some(e) = sums.iter_mut().find(|(s, _)| *s == t.tail.letter_string()) {
                e.1 += w;
            } else {
                sums.push((t.tail.letter_string(), w));
            }
        }
        prop_assert!((hz.offset() - offset).abs() < 1e-12);
        for t in hz.terms() {
            let (_, w) = sums.iter().find(|(s, _)| *s == t.letter_string()).unwrap();
            prop_assert!((t.signed_coeff() - w).abs() < 1e-12);
        }
        let kept = sums.iter().filter(|(_, w)| w.abs() > 1e-9).count();
        prop_assert!(hz.len() >= kept);
    }

    #[test]
    fn reduction_is_deterministic(h in hamiltonian(6, 8)) {
        prop_assert_eq!(reduce(&h).unwrap(), reduce(&h).unwrap());
    }

    #[test]
    fn synthesis_sends_pivot_to_z_and_partner_to_x(p in letters(4), q in letters(4), k in 0usize..4) {
        let p = PauliTerm::parse(&p, 4).unwrap();
        let q = PauliTerm::parse(&q, 4).unwrap();
        let prefix = p.restrict(0, k + 1);
        match synthesize_to_z(&p, k) {
            Err(e) => prop_assert!(prefix.is_identity() && matches!(e, ReductionError::IdentityPrefix(_))),
            Ok(cz) => {
                let zp = cz.conjugate(&p).unwrap();
                prop_assert!(is_single(&zp.restrict(0, k + 1), k, Letter::Z));
                prop_assert_eq!(zp.restrict(k + 1, 3 - k), p.restrict(k + 1, 3 - k));
                if q.restrict(0, k + 1).symplectic_product(&prefix).unwrap() == 1 {
                    let q1 = cz.conjugate(&q).unwrap();
                    let cx = synthesize_to_x(&q1, k).unwrap();
                    let xq = cx.conjugate(&q1).unwrap();
                    prop_assert!(is_single(&xq.restrict(0, k + 1), k, Letter::X));
                    let zk = single(4, k, Letter::Z);
                    prop_assert_eq!(cx.conjugate(&zk).unwrap(), zk);
                }
            }
        }
    }
}

#[test]
fn three_qubit_example() {
    let h = ham(3, &["XXI", "IXX", "ZIZ"]);
    let res = reduce(&h).unwrap();
    assert_eq!((res.r, res.c, res.active), (1, 1, 1));
    let conj: Vec<String> = h
        .terms()
        .iter()
        .map(|t| res.circuit.conjugate(t).unwrap().letter_string())
        .collect();
    let mut sorted = conj.clone();
    sorted.sort();
    assert_eq!(sorted, ["IIX", "IIZ", "IZX"]);
}

#[test]
fn sector_rejects_wrong_length() {
    let res = reduce(&ham(3, &["XXI", "IXX", "ZIZ"])).unwrap();
    let err = sector_hamiltonian(&res, &SectorSpec::parse("01").unwrap()).unwrap_err();
    assert!(matches!(
        err,
        ReductionError::SectorLength {
            expected: 1,
            found: 2
        }
    ));
    assert!(SectorSpec::parse("0a").is_err());
}

#[test]
fn empty_hamiltonian_is_rejected() {
    let h = Hamiltonian::with_offset(2, vec![PauliTerm::identity(2)], 0.0).unwrap();
    assert!(matches!(reduce(&h), Err(ReductionError::EmptyHamiltonian)));
}

#[test]
fn lattice_charge_counts() {
    let z2 = generate(&LatticeSpec::new(ModelKind::Z2Lgt, 2, 2)).unwrap();
    assert_eq!(reduce(&z2).unwrap().c, 5);
    let k = generate(&LatticeSpec::new(ModelKind::Kitaev, 2, 2).with_field(true)).unwrap();
    assert_eq!(reduce(&k).unwrap().c, 3);
}

#[test]
fn permutation_is_a_bijection() {
    let h = generate(&LatticeSpec::new(ModelKind::Hubbard, 2, 2)).unwrap();
    let res = reduce(&h).unwrap();
    let mut p = res.permutation.clone();
    p.sort_unstable();
    assert_eq!(p, (0..h.num_qubits()).collect::<Vec<_>>());
}
