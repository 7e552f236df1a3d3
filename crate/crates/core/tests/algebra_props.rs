use cuntz::algebra::{check_cuntz_family, Element};
use cuntz::morphisms::*;
use cuntz::Gauss;
use proptest::prelude::*;

fn word(d: u8, max: usize) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(1..=d, 0..=max)
}

fn monomial(d: u8) -> impl Strategy<Value = Element<Gauss>> {
    (word(d, 3), word(d, 3), -3i64..=3, -2i64..=2).prop_map(move |(l, r, a, b)| {
        let c = Gauss::int(a) + Gauss::int(b) * Gauss::i();
        Element::monomial(d, l, r, c)
    })
}

fn element(d: u8) -> impl Strategy<Value = Element<Gauss>> {
    prop::collection::vec(monomial(d), 1..4).prop_map(move |v| v.iter().fold(Element::zero(d), |a, b| &a + b))
}

fn any_d() -> impl Strategy<Value = u8> {
    2u8..=4
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn multiplication_is_associative((x, y, z) in any_d().prop_flat_map(|d| (element(d), element(d), element(d)))) {
        prop_assert!((&(&x * &y) * &z).equals(&(&x * &(&y * &z))));
    }

    #[test]
    fn adjoint_is_antimultiplicative((x, y) in any_d().prop_flat_map(|d| (element(d), element(d)))) {
        prop_assert!((&x * &y).adjoint().equals(&(&y.adjoint() * &x.adjoint())));
        prop_assert_eq!(x.adjoint().adjoint(), x);
    }

    #[test]
    fn flatten_preserves_value(x in any_d().prop_flat_map(element), extra in 0usize..3) {
        let depth = x.max_right_depth() + extra;
        let f = x.flatten(depth).unwrap();
        prop_assert!(f.equals(&x));
        prop_assert!(f.terms().keys().all(|(_, r)| r.len() == depth));
    }

    #[test]
    fn canonical_is_idempotent(x in any_d().prop_flat_map(element)) {
        let c = x.canonical();
        prop_assert_eq!(c.canonical(), c.clone());
        prop_assert!(c.equals(&x));
    }

    #[test]
    fn gauge_split_sums_back(x in any_d().prop_flat_map(element)) {
        let total = x.gauge_degree_split().values().fold(Element::zero(x.d()), |a, b| &a + b);
        prop_assert!(total.equals(&x));
    }

    #[test]
    fn morphisms_respect_operations(
        idx in 0usize..SECOND_ORDER_CYCLES.len(),
        x in element(2),
        y in element(2),
    ) {
        let m = second_order::<Gauss>(SECOND_ORDER_CYCLES[idx]).unwrap();
        let ap = |e: &Element<Gauss>| m.apply(e).unwrap();
        prop_assert!(ap(&(&x + &y)).equals(&(&ap(&x) + &ap(&y))));
        prop_assert!(ap(&(&x * &y)).equals(&(&ap(&x) * &ap(&y))));
        prop_assert!(ap(&x.adjoint()).equals(&ap(&x).adjoint()));
        prop_assert!(ap(&Element::identity(2)).equals(&Element::identity(2)));
    }

    #[test]
    fn embeddings_respect_products(x in element(3), y in element(3)) {
        let m = cuntz_embedding::<Gauss>(3).unwrap();
        let lhs = m.apply(&(&x * &y)).unwrap();
        let rhs = &m.apply(&x).unwrap() * &m.apply(&y).unwrap();
        prop_assert!(lhs.equals(&rhs));
    }

    #[test]
    fn homogeneous_embedding_families(d in 2u8..=3, p in 1usize..=3) {
        prop_assume!((d as usize).pow(p as u32) <= 27);
        let m = homogeneous_embedding::<Gauss>(d, p).unwrap();
        prop_assert!(check_cuntz_family(m.images(), m.source_d()));
    }
}

#[test]
fn cr1_and_cr2() {
    for d in 2..=4u8 {
        let gens: Vec<Element<Gauss>> = (1..=d).map(|i| Element::generator(d, i)).collect();
        assert!(check_cuntz_family(&gens, d as usize));
        assert!((&gens[0].adjoint() * &gens[1]).is_zero());
    }
}

#[test]
fn non_family_is_rejected() {
    let s1 = Element::<Gauss>::generator(2, 1);
    assert!(!check_cuntz_family(&[s1.clone(), s1], 2));
}

#[test]
fn compose_with_identity() {
    let rho = canonical_endomorphism::<Gauss>(2);
    assert!(compose(&rho, &identity(2)).unwrap().equals(&rho));
    assert!(compose(&identity(2), &rho).unwrap().equals(&rho));
    assert!(compose(&rho, &cuntz_embedding::<Gauss>(3).unwrap()).is_ok());
    assert!(compose(&cuntz_embedding::<Gauss>(3).unwrap(), &rho).is_err());
}

#[test]
fn non_unitary_is_rejected() {
    let s1 = Element::<Gauss>::generator(2, 1);
    assert!(!is_unitary(&s1));
    assert!(endomorphism_of_unitary(&s1).is_err());
}
