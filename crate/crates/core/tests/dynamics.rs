use cuntz::dynamics::{b_example3, dynamics_check, overlap, EvolutionExample};
use cuntz::states::Occupation;
use cuntz::Cplx;
use proptest::prelude::*;

const TOL: f64 = 1e-10;

fn ex(id: u8, mu: f64) -> EvolutionExample {
    EvolutionExample::new(id, mu).unwrap()
}

fn occ(modes: &[usize]) -> Occupation {
    Occupation::from_modes(modes).unwrap()
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() < TOL
}

#[test]
fn closed_forms_match_transport() {
    let ts = [-0.9, 1.7];
    for id in 1..=3 {
        let r = dynamics_check(&ex(id, 0.8), &ts, 2 * (id as usize + 1), TOL).unwrap();
        assert!(r.all_pass(), "{r}");
    }
}

#[test]
fn hamiltonian_generates_the_flow() {
    let ts = [-0.6, 0.2, 1.1];
    for id in 2..=3 {
        let e = ex(id, 1.3);
        for n in 1..=2 * e.p() {
            let res = e.generator_check(n, &ts, 1e-4).unwrap();
            assert!(res < 1e-6, "ex{id} a{n}: {res:e}");
        }
    }
}

#[test]
fn example3_hamiltonian_at_t0() {
    let e = ex(3, 0.7);
    let h = 1e-5;
    let i = Cplx::new(0.0, 1.0);
    for n in 1..=4 {
        let fd = (&e.tau(h, n).unwrap() - &e.tau(-h, n).unwrap()).scale(&Cplx::real(0.5 / h));
        let b = b_example3(1, n).scale(&Cplx::real(e.mu));
        let hgen = e.hamiltonian_block(1).unwrap().commutator(&cuntz::car::CarPoly::a(n)).scale(&i);
        assert!((&fd - &b).max_abs_coeff() < 1e-6, "a{n}");
        assert!((&b - &hgen).max_abs_coeff() < 1e-12, "a{n}");
    }
}

#[test]
fn particle_number_examples() {
    let t = 0.77;
    let s2 = (0.9f64 * t).sin().powi(2);
    let e1 = ex(1, 0.9);
    assert!(close(e1.particle_number_expectation(t, occ(&[1])).unwrap(), 1.0));
    assert!(close(e1.particle_number_expectation(t, occ(&[2])).unwrap(), 1.0 + s2));
    assert!(close(e1.particle_number_expectation(t, occ(&[1, 2])).unwrap(), 2.0 - s2));
    assert!(close(e1.particle_number_expectation(t, occ(&[2, 4])).unwrap(), 2.0 * (1.0 + s2)));
    let e2 = ex(2, 0.9);
    assert!(close(e2.particle_number_expectation(t, occ(&[3])).unwrap(), 1.0 + 2.0 * s2));
    assert!(close(e2.particle_number_expectation(t, occ(&[1, 3])).unwrap(), 2.0));
    assert!(close(e2.particle_number_expectation(t, occ(&[1, 2, 3])).unwrap(), 3.0 - 2.0 * s2));
    let e3 = ex(3, 0.9);
    assert!(close(e3.particle_number_expectation(t, occ(&[2])).unwrap(), 1.0 + 2.0 * s2));
    assert!(close(e3.particle_number_expectation(t, occ(&[1, 2, 3])).unwrap(), 3.0 - 2.0 * s2));
    assert!(close(e3.particle_number_expectation(t, occ(&[1, 2, 3, 4])).unwrap(), 4.0));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn particle_number_closed_form(id in 1u8..=3, bits in 1u64..64, t in -2.0f64..2.0) {
        let e = ex(id, 1.0);
        let o = Occupation(bits);
        let got = e.particle_number_expectation(t, o).unwrap();
        prop_assert!((got - e.particle_number_closed_form(t, o)).abs() < TOL);
        prop_assert!((e.particle_number_expectation(0.0, o).unwrap() - o.len() as f64).abs() < TOL);
    }

    #[test]
    fn evolution_is_unitary_on_fock_vectors(id in 1u8..=3, bits in 0u64..256, t in -2.0f64..2.0) {
        let v = ex(id, 1.0).state_vector(t, Occupation(bits)).unwrap();
        prop_assert!((v.inner(&v).0.re - 1.0).abs() < TOL);
    }
}

#[test]
fn transition_amplitudes() {
    for id in 1..=3 {
        let e = ex(id, 1.1);
        let (one, many) = e.transition_pair();
        for t in [-1.2, 0.3, 0.8] {
            let got = overlap(&e, t, one, 0.0, many).unwrap();
            assert!((got.re + e.theta(t).sin()).abs() < 1e-12 && got.im.abs() < 1e-12, "ex{id} t={t}: {got}");
            let same = overlap(&e, t, one, t, many).unwrap();
            assert!(same.norm() < 1e-12, "ex{id} equal times: {same}");
        }
    }
}

#[test]
fn correlation_functions() {
    let e = ex(1, 1.0);
    let [t1, t2, t3, t4] = [0.31, -0.72, 1.13, 0.45];
    let s = |a: f64, b: f64| (a - b).sin();
    let c = |a: f64, b: f64| (a - b).cos();
    let two = e.npoint(&[(2, false, t1), (2, true, t2)], false).unwrap();
    assert!((two.re - c(t1, t2)).abs() < TOL && two.im.abs() < TOL);
    let one = e.npoint(&[(1, false, t1), (1, true, t2)], false).unwrap();
    assert!((one.re - 1.0).abs() < TOL);
    let three = e.npoint(&[(2, false, t1), (1, true, t2), (2, true, t3)], false).unwrap();
    assert!((three.re + s(t1, t2) * c(t2, t3)).abs() < TOL);
    let four = |ops: [(usize, bool); 4]| {
        let ts = [t1, t2, t3, t4];
        let v: Vec<_> = ops.iter().zip(ts).map(|(&(m, d), t)| (m, d, t)).collect();
        e.npoint(&v, true).unwrap()
    };
    let a = four([(1, false), (2, false), (1, true), (2, true)]);
    assert!((a.re + s(t2, t3) * s(t3, t4)).abs() < TOL);
    let b = four([(2, false), (1, false), (1, true), (2, true)]);
    assert!((b.re - (s(t1, t2) * s(t2, t3) * c(t3, t4) + s(t1, t3) * s(t3, t4))).abs() < TOL);
    let d = four([(2, false), (1, true), (1, false), (2, true)]);
    assert!((d.re + s(t1, t2) * c(t2, t3) * s(t3, t4)).abs() < TOL);
}

#[test]
fn truncated_four_point_support() {
    let e = ex(1, 1.0);
    let ts = [0.31, -0.72, 1.13, 0.45];
    let ops = [(1usize, false), (1, true), (2, false), (2, true)];
    let name = |(m, d): (usize, bool)| format!("a{m}{}", if d { "*" } else { "" });
    let mut support = Vec::new();
    for code in 0..256usize {
        let seq: Vec<(usize, bool, f64)> = (0..4)
            .map(|k| {
                let o = ops[code >> (2 * k) & 3];
                (o.0, o.1, ts[k])
            })
            .collect();
        if e.npoint(&seq, true).unwrap().norm() > 1e-12 {
            support.push(seq.iter().map(|s| name((s.0, s.1))).collect::<Vec<_>>().join(" "));
        }
    }
    support.sort();
    let mut want = vec![
        "a1 a2 a1* a2*", "a2 a1 a2* a1*", "a2 a1 a1* a2*", "a2 a1* a1 a2*",
        "a2 a1* a2* a1*", "a2 a1 a1 a2*", "a1 a2 a1 a2*", "a2 a1* a1* a2*",
        "a2 a2* a2 a2*", "a2 a2 a2* a2*",
    ];
    want.sort();
    assert_eq!(support, want);
}

#[test]
fn rejects_bad_examples() {
    assert!(EvolutionExample::new(4, 1.0).is_err());
    assert!(EvolutionExample::new(1, 0.0).is_err());
}
