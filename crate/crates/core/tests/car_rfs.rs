use cuntz::algebra::Element;
use cuntz::car::closed_form::{catalogue, closed_form_table};
use cuntz::car::induced::{free_evolution_matrix, free_evolution_rule, induced_automorphism};
use cuntz::car::poly::Parity;
use cuntz::car::transport::{compose, from_cuntz, restrict_endomorphism, to_cuntz};
use cuntz::car::{gamma_parity, CarPoly};
use cuntz::io::parse_element;
use cuntz::morphisms::{by_name, phi_sigma};
use cuntz::rfs::{reduction_check, rfs_by_name, standard_rfs, twisted_rfs, u1_monomial_to_car, Rfs};
use cuntz::{Gauss, Morphism, Scalar};
use proptest::prelude::*;

type P = CarPoly<Gauss>;

fn el(text: &str) -> Element<Gauss> {
    parse_element(text, 2).unwrap()
}

fn car_monomial() -> impl Strategy<Value = P> {
    (prop::collection::vec((1usize..=4, any::<bool>()), 0..4), -3i64..=3)
        .prop_map(|(f, c)| P::from_factors(&f).scale(&Gauss::int(c)))
}

fn car_poly() -> impl Strategy<Value = P> {
    prop::collection::vec(car_monomial(), 1..4).prop_map(|v| v.into_iter().fold(P::zero(), |a, b| a + b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn cuntz_transport_is_multiplicative(x in car_poly(), y in car_poly()) {
        let lhs = to_cuntz(&(&x * &y)).unwrap();
        let rhs = &to_cuntz(&x).unwrap() * &to_cuntz(&y).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn cuntz_transport_round_trips(x in car_poly()) {
        let y = to_cuntz(&x).unwrap();
        prop_assert_eq!(from_cuntz(&y).unwrap(), x.clone());
        prop_assert!(to_cuntz(&x.adjoint()).unwrap().equals(&y.adjoint()));
    }

    #[test]
    fn car_relations_hold(m in 1usize..=6, n in 1usize..=6) {
        prop_assert!(P::a(m).anticommutator(&P::a(n)).is_zero());
        let want = if m == n { P::identity() } else { P::zero() };
        prop_assert_eq!(P::a(m).anticommutator(&P::a_dag(n)), want);
    }

    #[test]
    fn sr1_embedding_respects_car(m in 1usize..=5, n in 1usize..=5) {
        let r = standard_rfs::<Gauss>(1).unwrap();
        let (am, an) = (r.car_image(m).unwrap(), r.car_image(n).unwrap());
        let anti = &(&am * &an.adjoint()) + &(&an.adjoint() * &am);
        let want = if m == n { Element::identity(2) } else { Element::zero(2) };
        prop_assert!(anti.equals(&want));
    }
}

#[test]
fn normal_ordering_examples() {
    assert_eq!(&P::a(1) * &P::a_dag(1), &P::identity() - &P::number(1));
    assert!(P::a(1).anticommutator(&P::a(2)).is_zero());
    let k1 = &(&P::a(1) * &P::a_dag(1)) - &(&P::a_dag(1) * &P::a(1));
    assert_eq!(k1, &P::identity() - &P::number(1).scale(&Gauss::int(2)));
    assert_eq!(k1, P::klein(1));
}

#[test]
fn transport_examples() {
    assert!(to_cuntz(&P::a(1)).unwrap().equals(&el("s[1;2]")));
    assert!(to_cuntz(&P::identity()).unwrap().equals(&Element::identity(2)));
    assert!(to_cuntz(&P::number(1)).unwrap().equals(&el("s[2;2]")));
    assert_eq!(from_cuntz(&el("s[2;2]")).unwrap(), P::number(1));
    assert!(from_cuntz(&el("s1")).is_err());
}

#[test]
fn restriction_examples() {
    let rho = restrict_endomorphism(&by_name::<Gauss>("rho").unwrap(), 5).unwrap();
    let p123 = restrict_endomorphism(&by_name::<Gauss>("phi[1,2,3]").unwrap(), 5).unwrap();
    let alpha = restrict_endomorphism(&by_name::<Gauss>("phi[1,2][3,4]").unwrap(), 5).unwrap();
    let j = restrict_endomorphism(&by_name::<Gauss>("phi[1,4][2,3]").unwrap(), 5).unwrap();
    let d1 = &P::a_dag(1) - &P::a(1);
    for n in 1..=4 {
        assert_eq!(*rho.rule(n).unwrap(), &P::klein(1) * &P::a(n + 1), "rho a{n}");
        assert_eq!(*p123.rule(n).unwrap(), &d1 * &P::a(n + 1), "phi[1,2,3] a{n}");
        let sign = if n % 2 == 1 { 1 } else { -1 };
        assert_eq!(*alpha.rule(n).unwrap(), P::a_dag(n).scale(&Gauss::int(sign)), "alpha a{n}");
        let want = if n == 1 { P::a_dag(1) } else { -P::a(n) };
        assert_eq!(*j.rule(n).unwrap(), want, "J a{n}");
    }
    assert!(restrict_endomorphism(&by_name::<Gauss>("alpha").unwrap(), 2).is_ok());
    // s_i -> s_i s_1 raises the gauge degree.
    let imgs = (1..=2).map(|i| &Element::<Gauss>::generator(2, i) * &Element::generator(2, 1)).collect();
    let shift = Morphism::new_unchecked("shift", imgs).unwrap();
    assert!(restrict_endomorphism(&shift, 1).is_err());
}

#[test]
fn closed_form_examples() {
    let n1 = closed_form_table::<Gauss>("phi[2,4]", 1).unwrap();
    assert_eq!(n1, -(&P::a(1) * &(&P::a(2) + &P::a_dag(2))));
    for n in 1..=4 {
        let got = closed_form_table::<Gauss>("phi[2,3,4]", n).unwrap();
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let want = &(&(&P::a(1) * &P::a_dag(1)) * &P::a(n + 1))
            + &(&(&P::a_dag(1) * &P::a(1)) * &P::a_dag(n + 1)).scale(&Gauss::int(sign));
        assert_eq!(got, want, "phi[2,3,4] a{n}");
    }
    for k in 1..=3 {
        for n in 1..=5 {
            let got = closed_form_table::<Gauss>(&format!("hat_phi({k})"), n).unwrap();
            let want = match n.cmp(&k) {
                std::cmp::Ordering::Less => P::a(n),
                std::cmp::Ordering::Equal => P::a_dag(k),
                std::cmp::Ordering::Greater => -P::a(n),
            };
            assert_eq!(got, want, "hat_phi({k}) a{n}");
        }
    }
    assert!(closed_form_table::<Gauss>("phi[9,9]", 1).is_err());
}

#[test]
fn catalogue_restrictions_are_homomorphisms() {
    for name in catalogue() {
        let m = restrict_endomorphism(&by_name::<Gauss>(&name).unwrap(), 4).unwrap();
        let r = m.homomorphism_check(4);
        assert!(r.all_pass(), "{name}: {r}");
        for n in 1..=4 {
            assert_eq!(*m.rule(n).unwrap(), closed_form_table::<Gauss>(&name, n).unwrap(), "{name} a{n}");
        }
    }
}

#[test]
fn composites_of_transpositions() {
    let r = |n: &str| restrict_endomorphism(&by_name::<Gauss>(n).unwrap(), 6).unwrap();
    let cases = [("phi[1,2,3]", "phi[1,3]", "phi[1,2]"), ("phi[2,4,3]", "phi[2,4]", "phi[3,4]")];
    for (whole, outer, inner) in cases {
        let comp = compose(&r(outer), &r(inner)).unwrap();
        let w = r(whole);
        for n in 1..=comp.mode_max() {
            assert_eq!(comp.rule(n), w.rule(n), "{whole} a{n}");
        }
    }
}

#[test]
fn phi_sigma_images_are_even() {
    for p in 1..=3 {
        let m = restrict_endomorphism(&phi_sigma::<Gauss>(p).unwrap(), 4).unwrap();
        for n in 1..=4 {
            assert_eq!(gamma_parity(m.rule(n).unwrap()), Parity::Even, "p = {p}, n = {n}");
        }
    }
    assert_eq!(gamma_parity(&P::a(1)), Parity::Odd);
    assert_eq!(gamma_parity(&(&P::a_dag(1) * &P::a(2))), Parity::Even);
    assert_eq!(gamma_parity(&(&P::a(1) + &P::identity())), Parity::Mixed);
}

#[test]
fn induced_automorphisms() {
    let id: Vec<Vec<Gauss>> =
        (0..4).map(|i| (0..4).map(|j| if i == j { Gauss::one() } else { Gauss::zero() }).collect()).collect();
    let t = induced_automorphism(&id, 6).unwrap();
    for n in 1..=6 {
        assert_eq!(*t.rule(n).unwrap(), P::a(n));
    }
    let eps = [0.7, -0.2];
    let u = free_evolution_matrix(&eps, 0.3, 1.1).unwrap();
    let tau = induced_automorphism(&u, 6).unwrap();
    for n in 1..=6 {
        assert!(tau.rule(n).unwrap().approx_eq(&free_evolution_rule(&eps, 1.1, n)), "a{n}");
        assert!(tau.rule(n).unwrap().max_mode() <= 2 * n.div_ceil(2));
    }
    let mut bad = id.clone();
    bad[0][0] = Gauss::int(2);
    assert!(induced_automorphism(&bad, 2).is_err());
}

#[test]
fn standard_rfs_fixtures() {
    let r1 = standard_rfs::<Gauss>(1).unwrap();
    assert!(r1.car_image(1).unwrap().equals(&el("s[1;2]")));
    assert!(r1.car_image(2).unwrap().equals(&el("s[1,1;2,1] - s[2,1;2,2]")));
    let r2 = standard_rfs::<Gauss>(2).unwrap();
    let d4 = |t: &str| parse_element::<Gauss>(t, 4).unwrap();
    assert!(r2.seeds[0].equals(&d4("s[1;2] + s[3;4]")));
    assert!(r2.seeds[1].equals(&d4("s[1;3] - s[2;4]")));
    assert!(r2.car_image(3).unwrap().equals(&r2.zeta_apply(&r2.seeds[0])));
    let r3 = standard_rfs::<Gauss>(3).unwrap();
    let d8 = parse_element::<Gauss>("s[1;5] - s[2;6] - s[3;7] + s[4;8]", 8).unwrap();
    assert!(r3.seeds[2].equals(&d8));
    for p in 1..=2 {
        assert!(standard_rfs::<Gauss>(p).unwrap().verify_car(6).unwrap().all_pass(), "SR{p}");
    }
}

#[test]
fn corrupted_seed_breaks_car() {
    let r = standard_rfs::<Gauss>(2).unwrap();
    let mut seeds = r.seeds.clone();
    seeds[1] = parse_element("s[1;3] + s[2;4]", 4).unwrap();
    let bad = Rfs::new("bad", seeds, r.zeta.clone(), r.phi.clone()).unwrap();
    assert!(!bad.verify_car(4).unwrap().all_pass());
}

#[test]
fn variant_fixtures() {
    let v1 = rfs_by_name::<Gauss>("VR1").unwrap();
    let v2 = rfs_by_name::<Gauss>("VR2").unwrap();
    assert!(v1.seeds[0].equals(&el("s[1,2,1;2] + s[1,2,2;1,1]")));
    assert!(v2.seeds[0].equals(&el("s[1;1,2,2] + s[2,1;2,2,2]")));
    for v in [&v1, &v2] {
        assert!(v.verify_car(4).unwrap().all_pass(), "{}", v.name);
        let a1 = v.car_image(1).unwrap();
        assert!(a1.gauge_degree_split().keys().any(|&k| k != 0), "{}", v.name);
    }
    let sr1 = standard_rfs::<Gauss>(1).unwrap();
    let tw = twisted_rfs(&sr1, &by_name::<Gauss>("rho").unwrap()).unwrap();
    assert!(tw.verify_car(4).unwrap().all_pass());
    for n in 1..=4 {
        let want = by_name::<Gauss>("rho").unwrap().apply(&sr1.car_image(n).unwrap()).unwrap();
        assert!(tw.car_image(n).unwrap().equals(&want), "a{n}");
    }
}

#[test]
fn u1_monomials() {
    assert_eq!(u1_monomial_to_car::<Gauss>(&[1], &[2]).unwrap(), P::a(1));
    assert_eq!(u1_monomial_to_car::<Gauss>(&[1], &[1]).unwrap(), &P::a(1) * &P::a_dag(1));
    let x = u1_monomial_to_car::<Gauss>(&[2, 1], &[2, 2]).unwrap();
    assert!(to_cuntz(&x).unwrap().equals(&el("s[2,1;2,2]")));
    assert_eq!(x, -(&P::number(1) * &P::a(2)));
    assert!(u1_monomial_to_car::<Gauss>(&[1], &[1, 2]).is_err());
}

#[test]
fn reductions() {
    assert!(reduction_check::<Gauss>(2, 1, 6).unwrap().all_pass());
    assert!(reduction_check::<Gauss>(4, 2, 4).unwrap().all_pass());
    assert!(reduction_check::<Gauss>(2, 2, 3).unwrap().all_pass());
    assert!(reduction_check::<Gauss>(3, 2, 3).is_err());
}
