//! Verification suites and report emission.

use std::f64::consts::FRAC_PI_4;
use std::time::Instant;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::algebra::{check_cuntz_family, cuntz_family_witness, Element};
use crate::car::closed_form::{catalogue, closed_form_table};
use crate::car::transport::{restrict_endomorphism, to_cuntz};
use crate::car::CarPoly;
use crate::dynamics::{dynamics_check, overlap, EvolutionExample};
use crate::error::{Error, Result};
use crate::io::parse::parse_element;
use crate::morphisms::*;
use crate::perm_reps::*;
use crate::report::{Report, SCHEMA_VERSION};
use crate::rfs::{reduction_check, rfs_by_name, seed_reduction_check, standard_rfs, u1_round_trip_check};
use crate::scalar::{lift, Cplx, Gauss, Scalar};
use crate::states::*;

pub const SUITES: [&str; 9] = [
    "relations",
    "embeddings",
    "endomorphisms",
    "rfs",
    "closed-forms",
    "branching",
    "restrictions",
    "kms",
    "dynamics",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Backend {
    Exact,
    Float,
}

impl Backend {
    /// Reads `CUNTZ_SCALAR` (`exact` or `float`), defaulting to exact.
    pub fn from_env() -> Result<Backend> {
        match std::env::var("CUNTZ_SCALAR") {
            Err(_) => Ok(Backend::Exact),
            Ok(v) => match v.to_ascii_lowercase().as_str() {
                "" | "exact" | "gauss" => Ok(Backend::Exact),
                "float" | "f64" | "complex" => Ok(Backend::Float),
                _ => Err(Error::Unknown(format!("CUNTZ_SCALAR={v}"))),
            },
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub seed: u64,
    /// Random cases per algebra in the relations suite.
    pub samples: usize,
    pub p_max: usize,
    pub n_max: usize,
    pub beta: Vec<f64>,
    pub eps: Vec<f64>,
    pub mu: f64,
    pub t_samples: Vec<f64>,
    pub tol: f64,
    pub backend: Backend,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            seed: 7,
            samples: 1000,
            p_max: 4,
            n_max: 5,
            beta: vec![0.5, 1.0, 2.0],
            eps: vec![0.3, 1.0],
            mu: 1.0,
            t_samples: vec![-1.3, -0.85, -0.4, 0.05, 0.5, 0.95, 1.4, 1.85],
            tol: 1e-10,
            backend: Backend::Exact,
        }
    }
}

impl Config {
    fn validate(&self) -> Result<()> {
        if self.p_max == 0 || self.p_max > 4 {
            return Err(Error::Overflow(format!("p_max = {} (supported 1..=4)", self.p_max)));
        }
        if self.n_max == 0 || self.n_max > 8 {
            return Err(Error::Overflow(format!("n_max = {} (supported 1..=8)", self.n_max)));
        }
        if self.eps.iter().any(|e| *e <= 0.0) || self.beta.iter().any(|b| *b <= 0.0) {
            return Err(Error::Precondition("β and ε must be positive".into()));
        }
        Ok(())
    }
}

/// Runs the named suite, or every suite for `"all"`.
pub fn run_suite(name: &str, cfg: &Config) -> Result<Report> {
    cfg.validate()?;
    if name == "all" {
        let mut all = Report::new("all");
        for s in SUITES {
            all.extend(run_suite(s, cfg)?);
        }
        return Ok(all);
    }
    macro_rules! generic {
        ($f:ident) => {
            match cfg.backend {
                Backend::Exact => $f::<Gauss>(cfg),
                Backend::Float => $f::<Cplx>(cfg),
            }
        };
    }
    match name {
        "relations" => generic!(relations),
        "embeddings" => generic!(embeddings),
        "endomorphisms" => generic!(endomorphisms),
        "rfs" => generic!(rfs),
        "closed-forms" => generic!(closed_forms),
        "branching" => generic!(branching),
        "restrictions" => generic!(restrictions),
        "kms" => kms(cfg),
        "dynamics" => dynamics(cfg),
        _ => Err(Error::Unknown(format!("suite {name}"))),
    }
}

fn random_word(rng: &mut StdRng, d: u8, max_len: usize) -> Vec<u8> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(1..=d)).collect()
}

fn random_monomial<S: Scalar>(rng: &mut StdRng, d: u8) -> Element<S> {
    let l = random_word(rng, d, 3);
    let r = random_word(rng, d, 3);
    let (a, b) = loop {
        let a = rng.gen_range(-3i64..=3);
        let b = rng.gen_range(-2i64..=2);
        if a != 0 || b != 0 {
            break (a, b);
        }
    };
    let c = Gauss::int(a) + Gauss::int(b) * Gauss::i();
    Element::monomial(d, l, r.into_iter().rev().collect(), lift::<S>(&c))
}

fn relations<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("relations");
    let mut rng = StdRng::seed_from_u64(cfg.seed);
    for d in 2u8..=4 {
        let id = Element::<S>::identity(d);
        let mut sum = Element::zero(d);
        for i in 1..=d {
            let si = Element::<S>::generator(d, i);
            sum = &sum + &(&si * &si.adjoint());
            for j in 1..=d {
                let x = &si.adjoint() * &Element::generator(d, j);
                let want = if i == j { id.clone() } else { Element::zero(d) };
                rep.check_with(format!("O_{d}/CR1 s{i}* s{j}"), x.equals(&want), || x.to_string());
            }
        }
        rep.check_with(format!("O_{d}/CR2"), sum.equals(&id), || sum.to_string());

        for k in 0..cfg.samples {
            let x = random_monomial::<S>(&mut rng, d);
            let y = random_monomial::<S>(&mut rng, d);
            let z = random_monomial::<S>(&mut rng, d);
            let tag = format!("O_{d}/{k}");
            let l = (&(&x * &y) * &z).canonical();
            let r = (&x * &(&y * &z)).canonical();
            rep.check_with(format!("{tag} assoc"), l.equals(&r), || format!("({x})({y})({z})"));
            rep.check_with(format!("{tag} adj-involution"), x.adjoint().adjoint() == x, || x.to_string());
            let xy = (&x * &y).adjoint();
            let yx = &y.adjoint() * &x.adjoint();
            rep.check_with(format!("{tag} adj-antimult"), xy.equals(&yx), || format!("({x})({y})"));
            let dist_l = &(&x + &y) * &z;
            let dist_r = &(&x * &z) + &(&y * &z);
            rep.check_with(format!("{tag} distributive"), dist_l.equals(&dist_r), || format!("({x})({y})({z})"));
            let depth = x.max_right_depth() + 1;
            let f = x.flatten(depth)?;
            let ok = f.equals(&x) && (&f * &z).equals(&(&x * &z)) && f.flatten(depth)? == f;
            rep.check_with(format!("{tag} flatten"), ok, || format!("{x} -> {f}"));
        }
    }
    Ok(rep)
}

fn family<S: Scalar>(m: &Morphism<S>) -> &[Element<S>] {
    m.images()
}

fn check_family<S: Scalar>(rep: &mut Report, id: &str, m: &Morphism<S>) {
    rep.check_with(id, check_cuntz_family(family(m), m.source_d()), || {
        cuntz_family_witness(family(m)).unwrap_or_else(|| "size mismatch".into())
    });
}

fn morphism_equal<S: Scalar>(rep: &mut Report, id: impl Into<String>, a: &Morphism<S>, b: &Morphism<S>) {
    rep.check_with(id, a.equals(b), || match a.first_difference(b) {
        Some(i) => format!("s{}: {} vs {}", i, a.image(i), b.image(i)),
        None => "different sizes".into(),
    });
}

fn embeddings<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("embeddings");
    for dp in 2..=6 {
        check_family(&mut rep, &format!("cuntz({dp})"), &cuntz_embedding::<S>(dp)?);
    }
    let c4 = cuntz_embedding::<S>(4)?;
    let want4 = [vec![1u8], vec![2, 1], vec![2, 2, 1], vec![2, 2, 2]];
    let ok = want4.iter().enumerate().all(|(i, w)| c4.image(i + 1).equals(&Element::word(2, w)));
    rep.check("cuntz(4) images", ok, "");
    let s2 = cuntz_embedding::<S>(3)?.apply(&Element::generator(3, 2))?;
    rep.check_with("cuntz(3)(s'2) = s21", s2.equals(&Element::word(2, &[2, 1])), || s2.to_string());
    for d in 2u8..=3 {
        for n in 1..=4 {
            let g = generalized_cuntz_embedding::<S>(d, n)?;
            check_family(&mut rep, &format!("generalized({d},{n})"), &g);
            check_family(&mut rep, &format!("inductive(generalized({d},{n}))"), &inductive_extension(&g));
        }
    }
    let triv = generalized_cuntz_embedding::<S>(3, 1)?;
    morphism_equal(&mut rep, "generalized(3,1) = id", &triv, &identity(3));
    let ind = inductive_extension(&cuntz_embedding::<S>(3)?);
    rep.check("inductive(cuntz(3)) size", ind.source_d() == 4, format!("{}", ind.source_d()));
    for p in 1..=cfg.p_max {
        check_family(&mut rep, &format!("psi(2,{p})"), &homogeneous_embedding::<S>(2, p)?);
    }
    for p in 1..=2 {
        check_family(&mut rep, &format!("psi(3,{p})"), &homogeneous_embedding::<S>(3, p)?);
    }
    let psi2 = homogeneous_embedding::<S>(2, 2)?;
    rep.check("psi2(s'3) = s12", psi2.image(3).equals(&Element::word(2, &[1, 2])), psi2.image(3).to_string());
    rep.check("psi2(s'2) = s21", psi2.image(2).equals(&Element::word(2, &[2, 1])), psi2.image(2).to_string());
    let psi3 = homogeneous_embedding::<S>(2, 3)?;
    rep.check("psi3(s'8) = s222", psi3.image(8).equals(&Element::word(2, &[2, 2, 2])), psi3.image(8).to_string());
    morphism_equal(&mut rep, "psi1 = id", &homogeneous_embedding::<S>(2, 1)?, &identity(2));
    for target in [vec![1u8], vec![1, 2], vec![2, 1, 2], vec![3, 1]] {
        let d = if target.contains(&3) { 3 } else { 2 };
        let m = monomial_embedding::<S>(d, &target)?;
        check_family(&mut rep, &format!("monomial{target:?}"), &m);
        let last = m.image(m.source_d());
        rep.check(format!("monomial{target:?} last"), last.equals(&Element::word(d, &target)), last.to_string());
    }
    let m12 = monomial_embedding::<S>(2, &[1, 2])?;
    let want = [Element::generator(2, 2), Element::word(2, &[1, 1]), Element::word(2, &[1, 2])];
    rep.check("monomial[1,2] images", m12.images().iter().zip(&want).all(|(a, b)| a.equals(b)), "");

    for (name, m) in [
        ("id", identity::<S>(2)),
        ("rho", canonical_endomorphism::<S>(2)),
        ("phi[2,4]", by_name::<S>("phi[2,4]")?),
        ("rho(O_3)", canonical_endomorphism::<S>(3)),
    ] {
        let u = unitary_of_endomorphism(&m)?;
        rep.check_with(format!("unitary({name})"), is_unitary(&u), || u.to_string());
        let back = endomorphism_of_unitary(&u)?;
        morphism_equal(&mut rep, format!("endo(unitary({name}))"), &back, &m);
    }
    let u_id = unitary_of_endomorphism(&identity::<S>(2))?;
    rep.check("unitary(id) = I", u_id.equals(&Element::identity(2)), u_id.to_string());
    let a = cuntz_embedding::<S>(3)?;
    let b = monomial_embedding::<S>(2, &[1, 2])?;
    let u = unitary_between(b.images(), a.images())?;
    rep.check_with("hom-hom unitary", is_unitary(&u), || u.to_string());
    let ok = a.images().iter().zip(b.images()).all(|(x, y)| (&u * x).equals(y));
    rep.check("hom-hom u S1 = S2", ok, "");

    let rho_s1 = canonical_endomorphism::<S>(2).image(1).clone();
    let new3 = [rho_s1, Element::word(2, &[1, 2]), Element::word(2, &[2, 2])];
    rep.check_with("O_3 into O_2 via rho(s1)", check_cuntz_family(&new3, 3), || {
        cuntz_family_witness(&new3).unwrap_or_default()
    });
    let trivial = vec![vec![Element::<S>::identity(2)], vec![Element::identity(2)]];
    let g = general_endomorphism(&trivial, &[Element::generator(2, 1), Element::generator(2, 2)])?;
    morphism_equal(&mut rep, "embend trivial parts", &g, &identity(2));
    let parts = vec![vec![Element::<S>::identity(2)], cuntz_embedding::<S>(3)?.images().to_vec()];
    let outer = cuntz_embedding::<S>(4)?.images().to_vec();
    let g = general_endomorphism(&parts, &outer)?;
    check_family(&mut rep, "embend(1,3;cuntz(4))", &g);
    let rec = outer_family_of(&g, &parts);
    rep.check("embend reconstruction", rec.iter().zip(&outer).all(|(a, b)| a.equals(b)), "");
    for (name, m) in [("inhom1", inhomogeneous_fixture_1::<S>()), ("inhom2", inhomogeneous_fixture_2::<S>())] {
        check_family(&mut rep, name, &m);
        let degs: Vec<i64> = m.image(1).gauge_degree_split().keys().copied().collect();
        rep.check(format!("{name} gauge"), !m.commutes_with_gauge(), format!("degrees of φ(s1): {degs:?}"));
    }
    let f1 = inhomogeneous_fixture_1::<S>();
    let want2 = &Element::s(2, &[2], &[1]) + &Element::s(2, &[1, 1], &[2]);
    rep.check("inhom1 images", f1.image(1).equals(&Element::word(2, &[1, 2])) && f1.image(2).equals(&want2), "");
    let degs = f1.image(1).gauge_degree_split();
    rep.check("inhom1 degree of φ(s1) is 2", degs.len() == 1 && degs.contains_key(&2), format!("{:?}", degs.keys()));
    Ok(rep)
}

/// The 24 second-order permutation endomorphisms: images of `s_1`, `s_2`, and the stated
/// relation as a composition chain (outermost first).
pub const SECOND_ORDER_TABLE: [(&str, &str, &str, &[&str]); 24] = [
    ("", "s[1]", "s[2]", &["id"]),
    ("[1,2]", "s[2,1;1]+s[1,2;2]", "s[1,1;1]+s[2,2;2]", &[]),
    ("[1,3]", "s[1,2;1]+s[1,1;2]", "s[2]", &["alpha", "phi[2,4]", "alpha"]),
    ("[1,4]", "s[2,2;1]+s[1,2;2]", "s[2,1;1]+s[1,1;2]", &[]),
    ("[2,3]", "s[1,1;1]+s[2,1;2]", "s[1,2;1]+s[2,2;2]", &["rho"]),
    ("[2,4]", "s[1]", "s[2,2;1]+s[2,1;2]", &[]),
    ("[3,4]", "s[1,1;1]+s[2,2;2]", "s[2,1;1]+s[1,2;2]", &["phi[1,2]", "alpha"]),
    ("[1,2][3,4]", "s[2]", "s[1]", &["alpha"]),
    ("[1,3][2,4]", "s[1,2;1]+s[1,1;2]", "s[2,2;1]+s[2,1;2]", &["phi[1,4][2,3]", "alpha"]),
    ("[1,4][2,3]", "s[2,2;1]+s[2,1;2]", "s[1,2;1]+s[1,1;2]", &[]),
    ("[1,2,3]", "s[2,1;1]+s[1,1;2]", "s[1,2;1]+s[2,2;2]", &[]),
    ("[1,2,4]", "s[2,1;1]+s[1,2;2]", "s[2,2;1]+s[1,1;2]", &[]),
    ("[1,3,2]", "s[1,2;1]+s[2,1;2]", "s[1,1;1]+s[2,2;2]", &["phi[2,3,4]", "alpha"]),
    ("[1,3,4]", "s[1,2;1]+s[2,2;2]", "s[2,1;1]+s[1,1;2]", &["phi[1,2,3]", "alpha"]),
    ("[1,4,2]", "s[2,2;1]+s[1,2;2]", "s[1,1;1]+s[2,1;2]", &["phi[2,4,3]", "alpha"]),
    ("[1,4,3]", "s[2,2;1]+s[1,1;2]", "s[2,1;1]+s[1,2;2]", &["phi[1,2,4]", "alpha"]),
    ("[2,3,4]", "s[1,1;1]+s[2,2;2]", "s[1,2;1]+s[2,1;2]", &[]),
    ("[2,4,3]", "s[1,1;1]+s[2,1;2]", "s[2,2;1]+s[1,2;2]", &["alpha", "phi[1,2,3]", "alpha"]),
    ("[1,2,3,4]", "s[2]", "s[1,2;1]+s[1,1;2]", &["phi[1,3]", "alpha"]),
    ("[1,2,4,3]", "s[2,1;1]+s[1,1;2]", "s[2,2;1]+s[1,2;2]", &["phi[1,4]", "alpha"]),
    ("[1,3,2,4]", "s[1,2;1]+s[2,1;2]", "s[2,2;1]+s[1,1;2]", &[]),
    ("[1,3,4,2]", "s[1,2;1]+s[2,2;2]", "s[1,1;1]+s[2,1;2]", &["phi[2,3]", "alpha"]),
    ("[1,4,2,3]", "s[2,2;1]+s[1,1;2]", "s[1,2;1]+s[2,1;2]", &["phi[1,3,2,4]", "alpha"]),
    ("[1,4,3,2]", "s[2,2;1]+s[2,1;2]", "s[1]", &["phi[2,4]", "alpha"]),
];

fn chain<S: Scalar>(names: &[&str]) -> Result<Morphism<S>> {
    let mut m = identity::<S>(2);
    for n in names.iter().rev() {
        m = compose(&by_name::<S>(n)?, &m)?;
    }
    Ok(m)
}

fn endomorphisms<S: Scalar>(_cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("endomorphisms");
    for (cycles, img1, img2, rel) in SECOND_ORDER_TABLE {
        let m = second_order::<S>(cycles)?;
        let name = m.name.clone();
        check_family(&mut rep, &format!("{name} family"), &m);
        for (i, text) in [img1, img2].iter().enumerate() {
            let want = parse_element::<S>(text, 2)?;
            rep.check_with(format!("{name}(s{})", i + 1), m.image(i + 1).equals(&want), || {
                format!("{} vs {want}", m.image(i + 1).canonical())
            });
        }
        if !rel.is_empty() {
            morphism_equal(&mut rep, format!("{name} = {}", rel.join("∘")), &m, &chain::<S>(rel)?);
        }
    }
    morphism_equal(&mut rep, "compose(id, rho)", &compose(&identity(2), &canonical_endomorphism::<S>(2))?, &canonical_endomorphism(2));

    let rho2 = rho_power::<S>(2, 2);
    let spec = PermutationSpec::from_multi(2, 3, |w| vec![w[1], w[2], w[0]])?;
    morphism_equal(&mut rep, "rho^2 = perm(i,j1,j2 -> j1,j2,i)", &rho2, &permutation_endomorphism(&spec));
    rep.check("rho^2(s1) has 4 terms", rho2.image(1).canonical().len() == 4, rho2.image(1).to_string());
    let rho_i = canonical_endomorphism::<S>(2).apply(&Element::identity(2))?;
    rep.check("rho(I) = I", rho_i.equals(&Element::identity(2)), rho_i.to_string());
    for order in 2..=3 {
        let m = permutation_endomorphism::<S>(&PermutationSpec::identity(2, order));
        morphism_equal(&mut rep, format!("perm(id, order {order}) = id"), &m, &identity(2));
    }

    for (d, p) in [(2u8, 1usize), (2, 2), (3, 1)] {
        let n = (d as usize).pow(p as u32 + 1);
        let id: Matrix<S> =
            (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect();
        let m = homogeneous_endomorphism(d, p, &id)?;
        morphism_equal(&mut rep, format!("hom_endo({d},{p}, I) = id"), &m, &identity(d));
    }
    let i = lift::<S>(&Gauss::i());
    let v: Matrix<S> = vec![vec![S::zero(), i.clone()], vec![i, S::zero()]];
    for p in 1..=2 {
        let n = 1usize << (p + 1);
        let block: Matrix<S> = (0..n)
            .map(|r| (0..n).map(|c| if r / 2 == c / 2 { v[r % 2][c % 2].clone() } else { S::zero() }).collect())
            .collect();
        let m = homogeneous_endomorphism(2, p, &block)?;
        morphism_equal(&mut rep, format!("hom_endo(2,{p}, diag(v..v)) = alpha_v"), &m, &u_d_automorphism(&v)?);
    }
    for cycles in SECOND_ORDER_CYCLES {
        let spec = PermutationSpec::from_cycles(2, 2, &parse_cycles(cycles)?)?;
        let mut u: Matrix<S> = vec![vec![S::zero(); 4]; 4];
        for (l, &s) in spec.sigma.iter().enumerate() {
            u[s - 1][l] = S::one();
        }
        let m = homogeneous_endomorphism(2, 1, &u)?;
        morphism_equal(&mut rep, format!("hom_endo(P{cycles}) = perm"), &m, &permutation_endomorphism(&spec));
    }

    let s2 = phi_sigma::<S>(1)?.image(2).clone();
    let want = parse_element::<S>("s[2,2;1]+s[2,1;2]", 2)?;
    rep.check_with("phi_sigma(1)(s2)", s2.equals(&want), || s2.to_string());
    let phis: Vec<Morphism<S>> = (1..=6).map(phi_sigma::<S>).collect::<Result<_>>()?;
    for p in 1..=3 {
        for q in p + 1..=3 {
            let pq = compose(&phis[p - 1], &phis[q - 1])?;
            let qp = compose(&phis[q - 1], &phis[p - 1])?;
            morphism_equal(&mut rep, format!("phi_sigma({p}) commutes with phi_sigma({q})"), &pq, &qp);
        }
        let sq = compose(&phis[p - 1], &phis[p - 1])?;
        morphism_equal(&mut rep, format!("phi_sigma({p})^2 = phi_sigma({})", 2 * p), &sq, &phis[2 * p - 1]);
    }
    let sets: [&[usize]; 6] = [&[1], &[2], &[3], &[1, 2, 3], &[1, 2, 4], &[2, 3, 4]];
    for a in sets {
        for b in sets {
            let c = compose(&phi_sigma_multi::<S>(a)?, &phi_sigma_multi::<S>(b)?)?;
            let r = identify_phi_sigma_multi(&c);
            let ok = match &r {
                Some(r) => phi_sigma_multi::<S>(r)?.equals(&c),
                None => false,
            };
            rep.check(format!("phi_sigma{a:?} ∘ phi_sigma{b:?}"), ok, format!("{r:?}"));
        }
    }
    for p in 1..=3 {
        let m = compose(&phi_sigma_prime::<S>(p)?, &phis[0])?;
        morphism_equal(&mut rep, format!("phi_sigma({p}) = phi'∘phi_sigma(1)"), &phis[p - 1], &m);
    }
    for (name, label) in [("Rep(1,2)", "Rep(1,2)"), ("Rep(2)", "Rep(2)"), ("Rep(1,1,2)", "Rep(1,1,2)")] {
        let m = label_to_standard_endomorphism::<S>(&Label::parse(label)?)?;
        check_family(&mut rep, &format!("std_endo({name})"), &m);
    }
    let m = label_to_standard_endomorphism::<S>(&Label::parse("Rep(1,2)")?)?;
    morphism_equal(&mut rep, "std_endo(Rep(1,2)) = inhom1", &m, &inhomogeneous_fixture_1());
    check_family(&mut rep, "std_endo(Rep(1,2,1,3))", &o3_label_fixture::<S>());
    rep.check("std_endo(Rep(1,2,1,3))(s3) has 7 terms", o3_label_fixture::<S>().image(3).len() == 7, "");

    let p24 = by_name::<Cplx>("phi[2,4]")?;
    let rot = compose(&alpha_theta(-FRAC_PI_4), &compose(&p24, &alpha_theta(FRAC_PI_4))?)?;
    let p12 = by_name::<Cplx>("phi[1,2]")?;
    let err = (0..2)
        .map(|i| (rot.image(i + 1) - p12.image(i + 1)).canonical().max_abs_coeff())
        .fold(0.0, f64::max);
    rep.check("phi[1,2] = alpha(-π/4)∘phi[2,4]∘alpha(π/4)", err < 1e-12, format!("{err:e}"));
    Ok(rep)
}

fn rfs<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("rfs");
    for (name, n) in [("SR1", 8), ("SR2", 6), ("SR3", 6), ("SR4", 6), ("VR1", 5), ("VR2", 5)] {
        let r = rfs_by_name::<S>(name)?;
        rep.extend(r.verify_car(n)?);
        rep.extend(r.verify_axioms());
    }
    let a1 = standard_rfs::<S>(1)?.car_image(1)?;
    rep.check("SR1 a1 = s[1;2]", a1.equals(&parse_element::<S>("s[1;2]", 2)?), a1.to_string());
    for (p, r) in [(2, 1), (3, 1), (4, 1), (4, 2)] {
        rep.extend(reduction_check::<S>(p, r, cfg.n_max)?);
    }
    for p in 2..=cfg.p_max {
        rep.extend(seed_reduction_check::<S>(p)?);
    }
    rep.extend(u1_round_trip_check::<S>(4)?);
    Ok(rep)
}

fn closed_forms<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("closed-forms");
    for name in catalogue() {
        let m = by_name::<S>(&name)?;
        let car = restrict_endomorphism(&m, cfg.n_max)?;
        for n in 1..=cfg.n_max {
            let want = closed_form_table::<S>(&name, n)?;
            let got = car.rule(n).expect("rule in range");
            rep.check_with(format!("{name}(a{n})"), *got == want, || format!("{got} vs {want}"));
            let lhs = m.apply(&to_cuntz(&CarPoly::<S>::a(n))?)?;
            let rhs = to_cuntz(&want)?;
            rep.check_with(format!("{name}(a{n}) in O_2"), lhs.equals(&rhs), || format!("{lhs} vs {rhs}"));
        }
    }
    let rho3 = restrict_endomorphism(&by_name::<S>("phi[2,3]")?, 3)?;
    let want = &CarPoly::<S>::klein(1) * &CarPoly::a(4);
    rep.check("phi[2,3](a3) = K1 a4", *rho3.rule(3).expect("a3") == want, rho3.rule(3).expect("a3").to_string());
    Ok(rep)
}

/// Labels of `IPR_p` for `p <= 4`, written out by hand.
pub const BRANCH_LABELS: [&[&str]; 4] = [
    &["Rep(1)", "Rep(2)"],
    &["Rep(1)", "Rep(2)", "Rep(1,2)"],
    &["Rep(1)", "Rep(2)", "Rep(1,1,2)", "Rep(1,2,2)"],
    &["Rep(1)", "Rep(2)", "Rep(1,2)", "Rep(1,1,1,2)", "Rep(1,1,2,2)", "Rep(1,2,2,2)"],
];

fn branching<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("branching");
    for p in 1..=cfg.p_max {
        let b = branching_number(p as u64)?;
        rep.check(format!("B_{p}"), b == [2, 3, 4, 6][p - 1], b.to_string());
        let mut got: Vec<String> = enumerate_branch_labels(p).iter().map(|l| l.to_string()).collect();
        let mut want: Vec<String> = BRANCH_LABELS[p - 1].iter().map(|s| s.to_string()).collect();
        got.sort();
        want.sort();
        rep.check_with(format!("IPR_{p} labels"), got == want, || format!("{got:?}"));
        rep.extend(branching_check::<S>(p)?);
        rep.extend(branch_fock_check::<S>(p, cfg.n_max, false)?);
        let wrong = branch_fock_check::<S>(p, cfg.n_max, true)?;
        rep.check(format!("p={p} wrong Bogoliubov map detected"), wrong.failed() > 0, format!("{}", wrong.failed()));
    }
    for n in 1..=16u64 {
        let (a, b) = (necklace_count(n)?, necklace_count_closed(n)?);
        rep.check(format!("C_{n}"), a == b, format!("{a} vs {b}"));
    }
    rep.check("C_7 = 18", necklace_count(7)? == 18, necklace_count(7)?.to_string());
    Ok(rep)
}

fn restrictions<S: Scalar>(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("restrictions");
    let n = cfg.n_max;
    let sr1 = standard_rfs::<S>(1)?;
    for (label, sectors) in [("Rep(1,2)", 2), ("Rep(1,1,2)", 3)] {
        let l = Label::parse(label)?;
        let rep_l = PermRep::<S>::cycle(&l)?;
        let vac = cycle_vacua(&l, n);
        rep.check(format!("{label} sectors"), vac.len() == sectors, vac.len().to_string());
        rep.extend(phi_fock_vacuum_check(&rep_l, &sr1, &vac, n, 3)?);
    }
    let ch = ChainSpec::parse("Rep(2|1)")?;
    let vac = chain_vacua(&ch, &[-1, 0, 1, 2, 3], n);
    rep.check("Rep(2|1) vacua >= 4", vac.len() >= 4, vac.len().to_string());
    rep.extend(phi_fock_vacuum_check(&PermRep::<S>::chain(&ch), &sr1, &vac, n, 3)?);
    let vr2 = rfs_by_name::<S>("VR2")?;
    let vac: Vec<Vacuum> = [1u64, 3, 5, 7]
        .iter()
        .map(|&m| Vacuum { basis: Basis::new(0, m), bogoliubov: Bogoliubov::identity(n) })
        .collect();
    rep.extend(phi_fock_vacuum_check(&PermRep::<S>::standard(2), &vr2, &vac, n, 3)?);
    for (q, i0) in [(2, 1), (2, 2), (3, 1)] {
        rep.extend(restriction_reduction_check::<S>(2, q, i0, 16)?);
    }
    Ok(rep)
}

fn kms(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("kms");
    let monos = all_monomials(3);
    for p in 1..=2usize {
        for &beta in &cfg.beta {
            for &e in &cfg.eps {
                let eps: Vec<f64> = (1..=p).map(|j| e * j as f64).collect();
                let st = QuasiFreeState::from_kms(beta, &eps)?;
                let mut worst = (0.0f64, String::new());
                for x in &monos {
                    for y in &monos {
                        let r = kms_check(&st, beta, &eps, x, y)?;
                        if r > worst.0 {
                            worst = (r, format!("X = {x}, Y = {y}"));
                        }
                    }
                }
                rep.check(
                    format!("p={p} β={beta} ε={eps:?}"),
                    worst.0 < 1e-12,
                    format!("max residual {:e} at {}", worst.0, worst.1),
                );
            }
        }
        let st = QuasiFreeState::new(vec![0.5; p])?;
        let worst = monos
            .iter()
            .flat_map(|x| monos.iter().map(move |y| (x, y)))
            .map(|(x, y)| trace_residual(&st, x, y))
            .collect::<Result<Vec<f64>>>()?
            .into_iter()
            .fold(0.0, f64::max);
        rep.check(format!("p={p} trace at λ=1/2"), worst < 1e-12, format!("max residual {worst:e}"));
    }
    for lambdas in [vec![0.0, 0.5], vec![1.0, 0.5, 0.3], vec![0.0, 0.5, 0.2, 0.7]] {
        let st = QuasiFreeState::new(lambdas)?;
        let r = product_factorization_check(&st, 50, 2 * st.p(), cfg.seed, 1e-12)?;
        rep.extend(r);
    }
    let eps = [0.3];
    let mixture = QuasiFockState::new(kms_lambdas(1.0, &eps))?;
    let x = &CarPoly::<Cplx>::a(2) * &CarPoly::a(1);
    let r = kms_check(&mixture, 1.0, &eps, &x, &x.adjoint())?;
    rep.check("branch mixture is not KMS across blocks", r > 1e-3, format!("residual {r:e}"));
    Ok(rep)
}

fn dynamics(cfg: &Config) -> Result<Report> {
    let mut rep = Report::new("dynamics");
    let tol = cfg.tol;
    for id in 1..=3u8 {
        let ex = EvolutionExample::new(id, cfg.mu)?;
        let modes = if id == 1 { 6 } else { 8 };
        let ts: Vec<f64> = cfg.t_samples.iter().copied().step_by(if id == 1 { 2 } else { 1 }).collect();
        rep.extend(dynamics_check(&ex, &ts, modes, tol)?);
        let max_mode = 3 * ex.p();
        let t = 0.77;
        let mut worst = (0.0f64, 0u64);
        for occ in 0..(1u64 << max_mode) {
            let o = Occupation(occ);
            let got = ex.particle_number_expectation(t, o)?;
            let want = ex.particle_number_closed_form(t, o);
            if (got - want).abs() > worst.0 {
                worst = ((got - want).abs(), occ);
            }
        }
        rep.check(
            format!("example {id} N_t table"),
            worst.0 < tol,
            format!("max error {:e} at {:?}", worst.0, Occupation(worst.1).modes()),
        );
        let (one, many) = ex.transition_pair();
        for &t in &cfg.t_samples {
            let got = overlap(&ex, t, one, 0.0, many)?;
            let want = Complex64::new(-ex.theta(t).sin(), 0.0);
            rep.check_with(format!("example {id} transition t={t:.2}"), (got - want).norm() < tol, || {
                format!("{got} vs {want}")
            });
        }
    }
    let ex = EvolutionExample::new(1, cfg.mu)?;
    for w in cfg.t_samples.windows(4).step_by(2) {
        let th: Vec<f64> = w.iter().map(|&t| ex.theta(t)).collect();
        let (t1, t2, t3, t4) = (w[0], w[1], w[2], w[3]);
        let s = |a: usize, b: usize| (th[a] - th[b]).sin();
        let c = |a: usize, b: usize| (th[a] - th[b]).cos();
        let cases: [(&str, Vec<(usize, bool, f64)>, bool, f64); 5] = [
            ("ω(a2 a2* a1*)", vec![(2, false, t1), (2, true, t2), (1, true, t3)], false, s(0, 1)),
            ("ω(a2 a1* a2*)", vec![(2, false, t1), (1, true, t2), (2, true, t3)], false, -s(0, 1) * c(1, 2)),
            (
                "ω_T(a1 a2 a1* a2*)",
                vec![(1, false, t1), (2, false, t2), (1, true, t3), (2, true, t4)],
                true,
                -s(1, 2) * s(2, 3),
            ),
            (
                "ω_T(a2 a1 a1* a2*)",
                vec![(2, false, t1), (1, false, t2), (1, true, t3), (2, true, t4)],
                true,
                s(0, 1) * s(1, 2) * c(2, 3) + s(0, 2) * s(2, 3),
            ),
            (
                "ω_T(a2 a1* a1 a2*)",
                vec![(2, false, t1), (1, true, t2), (1, false, t3), (2, true, t4)],
                true,
                -s(0, 1) * c(1, 2) * s(2, 3),
            ),
        ];
        for (name, ops, trunc, want) in cases {
            let got = ex.npoint(&ops, trunc)?;
            let err = (got - Complex64::new(want, 0.0)).norm();
            rep.check_with(format!("{name} t={t1:.2},{t2:.2},{t3:.2},{t4:.2}"), err < tol, || {
                format!("{got} vs {want}")
            });
        }
    }
    Ok(rep)
}

#[derive(Serialize)]
struct Counts {
    passed: usize,
    failed: usize,
    total: usize,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    schema: &'static str,
    suite: &'a str,
    config: &'a Config,
    counts: Counts,
    elapsed_ms: u128,
    cases: &'a [crate::report::Case],
}

/// A report together with the configuration and wall time that produced it.
pub struct SuiteRun {
    pub report: Report,
    pub config: Config,
    pub elapsed_ms: u128,
}

pub fn run_timed(name: &str, cfg: &Config) -> Result<SuiteRun> {
    let start = Instant::now();
    let report = run_suite(name, cfg)?;
    Ok(SuiteRun { report, config: cfg.clone(), elapsed_ms: start.elapsed().as_millis() })
}

impl SuiteRun {
    pub fn to_json(&self) -> String {
        let r = &self.report;
        let doc = JsonReport {
            schema: SCHEMA_VERSION,
            suite: &r.name,
            config: &self.config,
            counts: Counts { passed: r.passed(), failed: r.failed(), total: r.cases.len() },
            elapsed_ms: self.elapsed_ms,
            cases: &r.cases,
        };
        serde_json::to_string_pretty(&doc).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        report_csv(&self.report)
    }
}

pub fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// `id,status,witness` rows with a header.
pub fn report_csv(r: &Report) -> String {
    let mut out = String::from("id,status,witness\n");
    for c in &r.cases {
        let status = serde_json::to_value(&c.status).expect("status serializes");
        out.push_str(&format!(
            "{},{},{}\n",
            csv_field(&c.id),
            status.as_str().unwrap_or("?"),
            csv_field(&c.witness)
        ));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("nope", &Config::default()), Err(Error::Unknown(_))));
    }

    #[test]
    fn bad_bounds() {
        let cfg = Config { p_max: 9, ..Config::default() };
        assert!(matches!(run_suite("branching", &cfg), Err(Error::Overflow(_))));
    }

    #[test]
    fn csv_quotes() {
        let mut r = Report::new("x");
        r.check("a,b", false, "say \"hi\"");
        assert_eq!(report_csv(&r), "id,status,witness\n\"a,b\",fail,\"say \"\"hi\"\"\"\n");
    }
}
