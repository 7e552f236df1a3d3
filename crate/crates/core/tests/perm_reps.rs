use cuntz::algebra::Element;
use cuntz::morphisms::{contrast_endomorphism, identity, label_to_standard_endomorphism, phi_sigma};
use cuntz::perm_reps::*;
use cuntz::Gauss;
use proptest::prelude::*;

type Rep = PermRep<Gauss>;

/// Primitive binary necklaces of length n by listing every word.
fn brute_necklaces(n: u32) -> u128 {
    let mut count = 0;
    for bits in 0u32..(1 << n) {
        let w: Vec<u8> = (0..n).map(|k| (bits >> k & 1) as u8 + 1).collect();
        if !is_periodic_word(&w) && min_rotation(&w) == w {
            count += 1;
        }
    }
    count
}

fn e(m: u64) -> Ket<Gauss> {
    Ket::basis(Basis::new(0, m))
}

/// Index of `π_s(s_w) e_n` from base-d digits.
fn standard_index(d: u64, w: &[u8], n: u64) -> u64 {
    let k = w.len() as u32;
    let mut idx = (n - 1) * d.pow(k);
    for (j, &i) in w.iter().enumerate() {
        idx += (i as u64 - 1) * d.pow(j as u32);
    }
    idx + 1
}

#[test]
fn necklaces_match_brute_force() {
    for n in 1..=16u64 {
        let want = brute_necklaces(n as u32);
        assert_eq!(necklace_count(n).unwrap(), want, "C_{n}");
        assert_eq!(necklace_count_closed(n).unwrap(), want, "closed C_{n}");
    }
    assert_eq!(necklace_count(7).unwrap(), 18);
    for n in [2u64, 3, 5, 7, 11, 13] {
        assert_eq!(necklace_count(n).unwrap(), ((1u128 << n) - 2) / n as u128);
    }
}

#[test]
fn branching_numbers_and_labels() {
    let b: Vec<u128> = (1..=4).map(|p| branching_number(p).unwrap()).collect();
    assert_eq!(b, [2, 3, 4, 6]);
    for p in 1..=5usize {
        let labels = enumerate_branch_labels(p);
        assert_eq!(labels.len() as u128, branching_number(p as u64).unwrap());
        let total: usize = labels.iter().map(|l| l.kappa()).sum();
        assert_eq!(total, 1 << p, "eigenvectors cover e_1..e_2^{p}");
        assert!(labels.iter().all(|l| !l.is_periodic() && p % l.kappa() == 0));
        assert!(branching_check::<Gauss>(p).unwrap().all_pass(), "p = {p}");
    }
}

#[test]
fn label_canonical_forms() {
    let a = Label::parse("Rep(1,2)").unwrap();
    let b = Label::parse("Rep(2,1)").unwrap();
    assert_eq!(a.canonical(), b.canonical());
    assert_eq!(a.to_string(), "Rep(1,2)");
    let per = Label::new(2, vec![1, 2, 1, 2]);
    assert!(per.is_periodic());
    assert_eq!(per.period(), 2);
    assert!(Label::parse("Rep(1,x)").is_err());
}

#[test]
fn tail_equivalence() {
    let c = ChainSpec::parse("Rep(2|1)").unwrap();
    assert!(tail_equivalent(&c, &c.shift(3)));
    let other = ChainSpec::parse("Rep(1|2)").unwrap();
    assert!(!tail_equivalent(&c, &other));
}

#[test]
fn generator_actions() {
    let pis = Rep::standard(2);
    assert_eq!(pis.act_generator(2, Basis::new(0, 1)).unwrap().0, Basis::new(0, 2));
    let l12 = Label::parse("Rep(1,2)").unwrap();
    let cyc = Rep::cycle(&l12).unwrap();
    assert_eq!(cyc.act_generator(1, Basis::new(1, 1)).unwrap().0, Basis::new(0, 1));
    let x = Element::word(2, &[1, 2]);
    assert!(cyc.act_element(&x, &e(1)).unwrap().approx_eq(&e(1)));
    assert!(cyc.act_element(&Element::zero(2), &e(1)).unwrap().is_zero());
}

proptest! {
    #[test]
    fn standard_rep_index_formula(d in 2u8..=4, n in 1u64..50, w in prop::collection::vec(1u8..=4, 0..4)) {
        let w: Vec<u8> = w.into_iter().map(|i| (i - 1) % d + 1).collect();
        let pis = Rep::standard(d);
        let got = pis.act_element(&Element::word(d, &w), &e(n)).unwrap();
        prop_assert!(got.approx_eq(&e(standard_index(d as u64, &w, n))));
    }

    #[test]
    fn cuntz_relations_in_cycle_reps(word in prop::collection::vec(1u8..=2, 1..5), n in 1u64..30) {
        prop_assume!(!is_periodic_word(&word));
        let rep = Rep::cycle(&Label::new(2, word)).unwrap();
        let v = Ket::basis(rep.basis_of_index(n));
        let mut sum = Ket::zero();
        for i in 1..=2 {
            let si = rep.act_generator_ket(i, &v).unwrap();
            for j in 1..=2 {
                let back = rep.act_adjoint_ket(j, &si).unwrap();
                let want = if i == j { v.clone() } else { Ket::zero() };
                prop_assert!(back.approx_eq(&want));
            }
            let down = rep.act_adjoint_ket(i, &v).unwrap();
            sum = sum.plus(&rep.act_generator_ket(i, &down).unwrap());
        }
        prop_assert!(sum.approx_eq(&v));
    }
}

#[test]
fn cycle_eigenvectors() {
    let l = Label::parse("Rep(1,1,2)").unwrap();
    let rep = Rep::cycle(&l).unwrap();
    for lam in 0..3 {
        let w = rotation(&l, lam);
        let v = Ket::basis(Basis::new(lam as i64, 1));
        assert!(rep.act_element(&Element::word(2, &w), &v).unwrap().approx_eq(&v), "λ = {lam}");
    }
}

#[test]
fn eigenvector_search() {
    let pis = Rep::standard(2);
    let hits = |m| find_cycle_eigenvectors(&pis, &m, 4, 40).unwrap();
    let p1 = hits(phi_sigma::<Gauss>(1).unwrap());
    assert_eq!(p1, [EigenHit { word: vec![1], index: 1 }, EigenHit { word: vec![2], index: 2 }]);
    let p2 = hits(phi_sigma::<Gauss>(2).unwrap());
    assert_eq!(p2.len(), 4);
    let mut labels: Vec<Label> = p2.iter().map(|h| Label::new(2, h.word.clone()).canonical()).collect();
    labels.dedup();
    assert_eq!(labels.len(), 3);
    let id = hits(identity::<Gauss>(2));
    assert_eq!(id, [EigenHit { word: vec![1], index: 1 }]);

    let l12 = Label::parse("Rep(1,2)").unwrap();
    let cyc = Rep::cycle(&l12).unwrap();
    let std = label_to_standard_endomorphism::<Gauss>(&l12).unwrap();
    let only = find_cycle_eigenvectors(&cyc, &std, 6, 40).unwrap();
    assert_eq!(only.len(), 1);
    assert_eq!(cyc.basis_of_index(only[0].index), Basis::new(0, 1));
    assert!(find_cycle_eigenvectors(&cyc, &contrast_endomorphism::<Gauss>(), 6, 40).unwrap().len() > 1);
}

#[test]
fn reductions_to_the_standard_rep() {
    let r = restriction_reduction_check::<Gauss>(2, 2, 2, 20).unwrap();
    assert!(r.all_pass(), "{r}");
    let psi = cuntz::morphisms::homogeneous_embedding::<Gauss>(2, 2).unwrap();
    let got = Rep::standard(2).act_composed(&psi, &Element::generator(4, 3), &e(1)).unwrap();
    let want = e(standard_index(4, &[3], 1));
    assert!(got.approx_eq(&want));
    assert!(got.approx_eq(&Rep::standard(4).act_generator_ket(3, &e(1)).unwrap()));
    assert!(restriction_reduction_check::<Gauss>(2, 1, 1, 10).unwrap().all_pass());
}
