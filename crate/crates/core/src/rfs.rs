//! Recursive fermion systems: seeds, the signed recursive map and the CAR embeddings they
//! generate inside `O_{2^p}`.

use crate::algebra::{words, Element, Word};
use crate::car::poly::CarPoly;
use crate::error::{pre, Error, Result};
use crate::morphisms::{homogeneous_embedding, Morphism};
use crate::report::Report;
use crate::scalar::Scalar;
use std::collections::HashMap;
use std::sync::RwLock;

/// Largest order whose algebra `O_{2^p}` fits the `u8` generator count.
pub const MAX_ORDER: usize = 7;

/// `R_p = (a_1..a_p; ζ_p, φ_p)` with `ζ_p(X) = sum_i ε_i c_i X c_i^*`.
#[derive(Debug)]
pub struct Rfs<S: Scalar> {
    pub name: String,
    pub p: usize,
    pub seeds: Vec<Element<S>>,
    /// `(ε_i, c_i)` pairs of the recursive map.
    pub zeta: Vec<(i8, Element<S>)>,
    pub phi: Morphism<S>,
    memo: RwLock<HashMap<usize, Element<S>>>,
}

impl<S: Scalar> Clone for Rfs<S> {
    fn clone(&self) -> Self {
        let memo = self.memo.read().map(|m| m.clone()).unwrap_or_default();
        Rfs {
            name: self.name.clone(),
            p: self.p,
            seeds: self.seeds.clone(),
            zeta: self.zeta.clone(),
            phi: self.phi.clone(),
            memo: RwLock::new(memo),
        }
    }
}

fn floor_sign(i: usize, terms: usize) -> i8 {
    let e: usize = (1..=terms).map(|m| (i - 1) >> (m - 1)).sum();
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

fn signed<S: Scalar>(e: i8) -> S {
    S::from_i64(e as i64)
}

impl<S: Scalar> Rfs<S> {
    /// Assembles a system from its parts; the axioms are checked separately.
    pub fn new(
        name: impl Into<String>,
        seeds: Vec<Element<S>>,
        zeta: Vec<(i8, Element<S>)>,
        phi: Morphism<S>,
    ) -> Result<Self> {
        let p = seeds.len();
        if p == 0 {
            return pre("an RFS needs at least one seed");
        }
        let d = seeds[0].d();
        if seeds.iter().any(|s| s.d() != d) || zeta.iter().any(|(_, c)| c.d() != d) || phi.target_d() != d {
            return pre("seeds, recursive map and φ must live in one algebra");
        }
        Ok(Rfs { name: name.into(), p, seeds, zeta, phi, memo: RwLock::new(HashMap::new()) })
    }

    pub fn d(&self) -> u8 {
        self.seeds[0].d()
    }

    /// `ζ(X) = sum_i ε_i c_i X c_i^*`.
    pub fn zeta_apply(&self, x: &Element<S>) -> Element<S> {
        let mut out = Element::zero(self.d());
        for (e, c) in &self.zeta {
            let t = &(c * x) * &c.adjoint();
            out = &out + &t.scale(&signed(*e));
        }
        out
    }

    /// `Φ_R(a_n) = ζ^{m-1}(a_j)` for `n = p(m-1) + j`.
    pub fn car_image(&self, n: usize) -> Result<Element<S>> {
        if n < 1 {
            return pre("modes start at 1");
        }
        if let Some(x) = self.memo.read().ok().and_then(|m| m.get(&n).cloned()) {
            return Ok(x);
        }
        let x = if n <= self.p {
            self.seeds[n - 1].clone()
        } else {
            self.zeta_apply(&self.car_image(n - self.p)?)
        };
        if let Ok(mut m) = self.memo.write() {
            m.entry(n).or_insert_with(|| x.clone());
        }
        Ok(x)
    }

    /// Image of a CAR polynomial under `Φ_R`.
    pub fn embed(&self, x: &CarPoly<S>) -> Result<Element<S>> {
        let d = self.d();
        let mut out = Element::zero(d);
        for (&(dag, ann), c) in x.terms() {
            let mut t = Element::scalar(d, c.clone());
            for n in (1..=64).filter(|n| dag >> (n - 1) & 1 == 1) {
                t = &t * &self.car_image(n)?.adjoint();
            }
            for n in (1..=64).filter(|n| ann >> (n - 1) & 1 == 1) {
                t = &t * &self.car_image(n)?;
            }
            out = &out + &t;
        }
        Ok(out)
    }

    /// Pairwise anticommutators of `Φ_R(a_m)`, `Φ_R(a_n)` for `m, n <= n_max`.
    pub fn verify_car(&self, n_max: usize) -> Result<Report> {
        if n_max < 1 {
            return pre("n_max >= 1");
        }
        let mut rep = Report::new(format!("car/{}", self.name));
        let imgs: Vec<Element<S>> = (1..=n_max).map(|n| self.car_image(n)).collect::<Result<_>>()?;
        let d = self.d();
        let id = Element::identity(d);
        let zero = Element::zero(d);
        for m in 0..n_max {
            for n in m..n_max {
                let aa = &(&imgs[m] * &imgs[n]) + &(&imgs[n] * &imgs[m]);
                rep.check_with(format!("{{a{},a{}}}", m + 1, n + 1), aa.equals(&zero), || aa.normal_form().to_string());
                let nd = imgs[n].adjoint();
                let ad = &(&imgs[m] * &nd) + &(&nd * &imgs[m]);
                let want = if m == n { &id } else { &zero };
                rep.check_with(format!("{{a{},a{}*}}", m + 1, n + 1), ad.equals(want), || {
                    ad.normal_form().to_string()
                });
            }
        }
        Ok(rep)
    }

    /// Test set for the recursive and normalization conditions: `I`, `s_i`, `s_i^*`, `s_i s_j^*`.
    fn test_set(&self) -> Vec<Element<S>> {
        let d = self.d();
        let mut v = vec![Element::identity(d)];
        for i in 1..=d {
            v.push(Element::generator(d, i));
            v.push(Element::generator(d, i).adjoint());
        }
        for i in 1..=d.min(4) {
            for j in 1..=d.min(4) {
                v.push(Element::s(d, &[i], &[j]));
            }
        }
        v
    }

    /// Decides whether `y = ζ(X)` for some `X`.
    ///
    /// The conjugators form a Cuntz family, so `c_1^* ζ(X) c_1 = ε_1 X` determines the only
    /// candidate `X`.
    pub fn in_zeta_image(&self, y: &Element<S>) -> bool {
        let (e, c) = &self.zeta[0];
        let x = (&(&c.adjoint() * y) * c).scale(&signed(*e));
        self.zeta_apply(&x).equals(y)
    }

    /// Seed, recursive and normalization conditions, plus seeds outside the image of `ζ`.
    pub fn verify_axioms(&self) -> Report {
        let mut rep = Report::new(format!("axioms/{}", self.name));
        let d = self.d();
        let id = Element::identity(d);
        let zero = Element::zero(d);
        let family: Vec<Element<S>> = self.zeta.iter().map(|(_, c)| c.clone()).collect();
        rep.check("conjugators form a Cuntz family", crate::algebra::check_cuntz_family(&family, d as usize), "");
        for (j, aj) in self.seeds.iter().enumerate() {
            for (k, ak) in self.seeds.iter().enumerate() {
                let aa = &(aj * ak) + &(ak * aj);
                rep.check_with(format!("seed {{a{},a{}}}", j + 1, k + 1), aa.equals(&zero), || aa.to_string());
                let akd = ak.adjoint();
                let ad = &(aj * &akd) + &(&akd * aj);
                let want = if j == k { &id } else { &zero };
                rep.check_with(format!("seed {{a{},a{}*}}", j + 1, k + 1), ad.equals(want), || ad.to_string());
            }
        }
        let tests = self.test_set();
        let zimg: Vec<Element<S>> = tests.iter().map(|x| self.zeta_apply(x)).collect();
        for (t, (x, zx)) in tests.iter().zip(&zimg).enumerate() {
            for (j, aj) in self.seeds.iter().enumerate() {
                let ac = &(aj * zx) + &(zx * aj);
                rep.check_with(format!("recursive {{a{},ζ(x{t})}}", j + 1), ac.equals(&zero), || ac.to_string());
            }
            let lhs = zx.adjoint();
            let rhs = self.zeta_apply(&x.adjoint());
            rep.check(format!("ζ(x{t})* = ζ(x{t}*)"), lhs.equals(&rhs), "");
        }
        for (a, (x, zx)) in tests.iter().zip(&zimg).enumerate() {
            for (b, (y, zy)) in tests.iter().zip(&zimg).enumerate() {
                let lhs = zx * zy;
                let rhs = self.phi.apply(&(x * y)).expect("same algebra");
                rep.check(format!("ζ(x{a})ζ(x{b}) = φ(x{a}x{b})"), lhs.equals(&rhs), "");
            }
        }
        for (j, aj) in self.seeds.iter().enumerate() {
            rep.check(format!("a{} not in image of ζ", j + 1), !self.in_zeta_image(aj), "");
        }
        rep
    }
}

/// Standard system `SR_p` in `O_{2^p}`.
pub fn standard_rfs<S: Scalar>(p: usize) -> Result<Rfs<S>> {
    if p < 1 || p > MAX_ORDER {
        return pre(format!("order p must lie in 1..={MAX_ORDER}"));
    }
    let n = 1usize << p;
    let d = n as u8;
    let mut seeds = Vec::with_capacity(p);
    for j in 1..=p {
        let mut a = Element::zero(d);
        for k in 1..=(1usize << (p - j)) {
            for l in 1..=(1usize << (j - 1)) {
                let left = (1usize << j) * (k - 1) + l;
                let right = (1usize << (j - 1)) * (2 * k - 1) + l;
                a.add_term((vec![left as u8], vec![right as u8]), signed(floor_sign(l, j - 1)));
            }
        }
        seeds.push(a);
    }
    let zeta = (1..=n).map(|i| (floor_sign(i, p), Element::generator(d, i as u8))).collect();
    let phi = crate::morphisms::canonical_endomorphism::<S>(d).named(format!("rho_{n}"));
    Rfs::new(format!("SR{p}"), seeds, zeta, phi)
}

/// `R = e ∘ SR`: every `s_i` of `r` replaced by `e(s_i)`.
pub fn twisted_rfs<S: Scalar>(r: &Rfs<S>, e: &Morphism<S>) -> Result<Rfs<S>> {
    let d = r.d();
    if e.source_d() != d as usize || e.target_d() != d {
        return Err(Error::Dimension(e.source_d(), d as usize));
    }
    let seeds = r.seeds.iter().map(|s| e.apply(s)).collect::<Result<Vec<_>>>()?;
    let zeta = r.zeta.iter().map(|(s, c)| Ok((*s, e.apply(c)?))).collect::<Result<Vec<_>>>()?;
    let phi_images = (1..=d)
        .map(|k| {
            let gk = Element::generator(d, k);
            let mut x = Element::zero(d);
            for i in 1..=d {
                let ci = e.image(i as usize);
                x = &x + &(&(ci * &gk) * &ci.adjoint());
            }
            x
        })
        .collect();
    let phi = Morphism::new_unchecked(format!("{}∘phi", e.name), phi_images)?;
    Rfs::new(format!("{}∘{}", e.name, r.name), seeds, zeta, phi)
}

/// Fixtures `SR1`..`SR4`, `VR1`, `VR2`.
pub fn rfs_by_name<S: Scalar>(name: &str) -> Result<Rfs<S>> {
    let n = name.trim();
    let r = match n {
        "VR1" => twisted_rfs(&standard_rfs(1)?, &crate::morphisms::inhomogeneous_fixture_1())?,
        "VR2" => twisted_rfs(&standard_rfs(1)?, &crate::morphisms::inhomogeneous_fixture_2())?,
        _ => {
            let p: usize = n
                .strip_prefix("SR")
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Unknown(n.to_string()))?;
            return standard_rfs(p);
        }
    };
    Ok(Rfs { name: n.to_string(), ..r })
}

/// CAR polynomial `P` with `Φ_{SR_1}(P) = s_{I;R}`, from the `A_m`, `N_m` sign rule.
///
/// `right` is in display order, so the daggered letters read `j_k .. j_1`.
pub fn u1_monomial_to_car<S: Scalar>(left: &[u8], right: &[u8]) -> Result<CarPoly<S>> {
    let k = left.len();
    if right.len() != k {
        return pre(format!("gauge degree {} is not zero", k as i64 - right.len() as i64));
    }
    if left.iter().chain(right).any(|&x| x != 1 && x != 2) {
        return pre("letters must be 1 or 2");
    }
    let j = |m: usize| right[k - m];
    let i = |m: usize| left[m - 1];
    let mut exp = 0usize;
    for m in 1..k {
        let nm = ((m + 1)..=k).map(|l| (i(l) == 2) as usize + (j(l) == 2) as usize).sum::<usize>();
        exp += (j(m) as usize - 1) * nm;
    }
    let mut p = CarPoly::identity();
    for m in 1..=k {
        let a = CarPoly::a(m);
        let ad = CarPoly::a_dag(m);
        let am = match (i(m), j(m)) {
            (1, 1) => &a * &ad,
            (1, 2) => a,
            (2, 1) => ad,
            _ => &ad * &a,
        };
        p = &p * &am;
    }
    Ok(if exp % 2 == 1 { -p } else { p })
}

/// `Ψ_{r,p} ∘ Φ_{SR_p} = Φ_{SR_r}` on modes up to `n_max`.
pub fn reduction_check<S: Scalar>(p: usize, r: usize, n_max: usize) -> Result<Report> {
    if r == 0 || p % r != 0 {
        return pre(format!("{r} does not divide {p}"));
    }
    let big = standard_rfs::<S>(p)?;
    let small = standard_rfs::<S>(r)?;
    let psi = homogeneous_embedding::<S>(1u8 << r, p / r)?;
    let mut rep = Report::new(format!("reduction/SR{p}->SR{r}"));
    for n in 1..=n_max {
        let lhs = psi.apply(&big.car_image(n)?)?;
        let rhs = small.car_image(n)?;
        rep.check_with(format!("a{n}"), lhs.equals(&rhs), || format!("{} vs {}", lhs, rhs));
    }
    Ok(rep)
}

/// `Ψ_p(a_j^{(p)}) = ζ_1^{j-1}(s_{1;2})` for each seed of `SR_p`.
pub fn seed_reduction_check<S: Scalar>(p: usize) -> Result<Report> {
    let big = standard_rfs::<S>(p)?;
    let sr1 = standard_rfs::<S>(1)?;
    let psi = homogeneous_embedding::<S>(2, p)?;
    let mut rep = Report::new(format!("seed-reduction/SR{p}"));
    for (j, seed) in big.seeds.iter().enumerate() {
        let lhs = psi.apply(seed)?;
        let rhs = sr1.car_image(j + 1)?;
        rep.check_with(format!("seed {}", j + 1), lhs.equals(&rhs), || lhs.to_string());
    }
    Ok(rep)
}

/// Round trip `Φ_{SR_1}(u1_monomial_to_car(I, J)) = s_{I;J}` for all `|I| = |J| = k`.
pub fn u1_round_trip_check<S: Scalar>(k: usize) -> Result<Report> {
    let sr1 = standard_rfs::<S>(1)?;
    let mut rep = Report::new(format!("u1-round-trip/k={k}"));
    let all: Vec<Word> = words(2, k);
    for l in &all {
        for r in &all {
            let p = u1_monomial_to_car::<S>(l, r)?;
            let back = sr1.embed(&p)?;
            let want = Element::s(2, l, r);
            rep.check_with(format!("s{l:?};{r:?}"), back.equals(&want), || format!("{p} -> {back}"));
        }
    }
    Ok(rep)
}
