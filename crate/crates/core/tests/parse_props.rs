use cuntz::algebra::Element;
use cuntz::car::CarPoly;
use cuntz::io::parse::same_shape;
use cuntz::io::{parse, parse_car, parse_element, parse_value, Value};
use cuntz::rfs::standard_rfs;
use cuntz::{Error, Gauss};
use proptest::prelude::*;

fn word_text(max: usize) -> impl Strategy<Value = String> {
    prop::collection::vec(1u8..=2, 1..=max)
        .prop_map(|w| w.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(","))
}

fn cuntz_atom() -> impl Strategy<Value = String> {
    prop_oneof![
        (1u8..=2).prop_map(|i| format!("s{i}")),
        (word_text(3), word_text(3)).prop_map(|(l, r)| format!("s[{l};{r}]")),
        word_text(3).prop_map(|l| format!("s[{l}]")),
        Just("I".to_string()),
        (-3i32..=3).prop_map(|n| if n < 0 { format!("({n})") } else { n.to_string() }),
        Just("i".to_string()),
        Just("(1/2)".to_string()),
    ]
}

fn cuntz_text() -> impl Strategy<Value = String> {
    cuntz_atom().prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} + {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            inner.clone().prop_map(|a| format!("({a})*")),
            inner.clone().prop_map(|a| format!("rho({a})")),
            inner.prop_map(|a| format!("adj({a})")),
        ]
    })
}

fn car_text() -> impl Strategy<Value = String> {
    let atom = prop_oneof![
        (1usize..=4).prop_map(|n| format!("a{n}")),
        (1usize..=4).prop_map(|n| format!("a{n}*")),
        (1usize..=3).prop_map(|n| format!("K{n}")),
        (-2i32..=2).prop_map(|n| if n < 0 { format!("({n})") } else { n.to_string() }),
    ];
    atom.prop_recursive(2, 12, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} {b}")),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| format!("{a} - {b}")),
            inner.prop_map(|a| format!("({a})*")),
        ]
    })
}

fn element() -> impl Strategy<Value = Element<Gauss>> {
    let mono = (prop::collection::vec(1u8..=3, 0..3), prop::collection::vec(1u8..=3, 0..3), -3i64..=3, -2i64..=2)
        .prop_map(|(l, r, a, b)| Element::monomial(3, l, r, Gauss::int(a) + Gauss::int(b) * Gauss::i()));
    prop::collection::vec(mono, 1..4).prop_map(|v| v.iter().fold(Element::zero(3), |a, b| &a + b))
}

fn car_poly() -> impl Strategy<Value = CarPoly<Gauss>> {
    let mono = (prop::collection::vec((1usize..=4, any::<bool>()), 0..4), -3i64..=3)
        .prop_map(|(f, c)| CarPoly::from_factors(&f).scale(&Gauss::int(c)));
    prop::collection::vec(mono, 1..4).prop_map(|v| v.into_iter().fold(CarPoly::zero(), |a, b| a + b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn printed_ast_reparses(text in cuntz_text()) {
        let ast = parse(&text).unwrap();
        let again = parse(&ast.to_string()).unwrap();
        prop_assert!(same_shape(&ast, &again), "{} vs {}", ast, again);
        let a = parse_element::<Gauss>(&text, 2).unwrap();
        let b = parse_element::<Gauss>(&ast.to_string(), 2).unwrap();
        prop_assert!(a.equals(&b));
    }

    #[test]
    fn printed_car_ast_reparses(text in car_text()) {
        let ast = parse(&text).unwrap();
        prop_assert!(same_shape(&ast, &parse(&ast.to_string()).unwrap()));
        let x = parse_car::<Gauss>(&text).unwrap();
        prop_assert_eq!(parse_car::<Gauss>(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_car::<Gauss>(&x.pretty()).unwrap(), x);
    }

    #[test]
    fn canonical_text_is_a_fixed_point(text in cuntz_text()) {
        let v = parse_value::<Gauss>(&text, 2).unwrap();
        let canon = v.canonical_text();
        prop_assert_eq!(parse_value::<Gauss>(&canon, 2).unwrap().canonical_text(), canon);
    }

    #[test]
    fn elements_print_and_reparse(x in element()) {
        let y = parse_element::<Gauss>(&x.to_string(), 3).unwrap();
        prop_assert!(y.equals(&x));
        let c = x.canonical();
        prop_assert_eq!(parse_element::<Gauss>(&c.to_string(), 3).unwrap().canonical(), c);
    }

    #[test]
    fn car_polys_print_and_reparse(x in car_poly()) {
        prop_assert_eq!(parse_car::<Gauss>(&x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_car::<Gauss>(&x.pretty()).unwrap(), x);
    }
}

#[test]
fn notation_examples() {
    let a1 = standard_rfs::<Gauss>(1).unwrap().car_image(1).unwrap();
    assert!(parse_element::<Gauss>("s[1;2]", 2).unwrap().equals(&a1));
    let x = parse_car::<Gauss>("a3* a1").unwrap();
    assert_eq!(x.len(), 1);
    let s = parse_element::<Gauss>("s[1,2;2,1]", 2).unwrap();
    let g = |i| Element::<Gauss>::generator(2, i);
    let want = [g(1), g(2), g(2).adjoint(), g(1).adjoint()].iter().fold(Element::identity(2), |a, b| &a * b);
    assert!(s.equals(&want));
    let v = parse_value::<Gauss>("s[1;2] s[2;1] + s[2;1] s[1;2]", 2).unwrap();
    assert_eq!(v.canonical_text(), "I");
    assert_eq!(parse_value::<Gauss>("I", 2).unwrap().canonical_text(), "I");
    assert_eq!(parse_value::<Gauss>("2 - i", 2).unwrap().canonical_text(), "(2-i) I");
    assert!(matches!(parse_value::<Gauss>("a1 a1* + a1* a1", 2).unwrap(), Value::Car(_)));
}

#[test]
fn syntax_errors_carry_positions() {
    for (text, at) in [("s[1;2", 5), ("a1 + + a2", 5), ("s[1;x]", 4)] {
        match parse(text) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, at, "{text}"),
            other => panic!("{text}: {other:?}"),
        }
    }
}
