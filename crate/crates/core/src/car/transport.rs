//! Moving between CAR polynomials and the gauge-invariant part of `O_2` through `Φ_{SR_1}`.

use super::poly::CarPoly;
use crate::algebra::{Element, Key};
use crate::error::{pre, Error, Result};
use crate::morphisms::Morphism;
use crate::report::Report;
use crate::rfs::{standard_rfs, u1_monomial_to_car, Rfs};
use crate::scalar::{lift, Gauss, Scalar};
use std::collections::HashMap;
use std::fmt;
use std::sync::{OnceLock, RwLock};

fn sr1() -> &'static Rfs<Gauss> {
    static SR1: OnceLock<Rfs<Gauss>> = OnceLock::new();
    SR1.get_or_init(|| standard_rfs(1).expect("p = 1 is valid"))
}

fn u1_cache() -> &'static RwLock<HashMap<Key, CarPoly<Gauss>>> {
    static CACHE: OnceLock<RwLock<HashMap<Key, CarPoly<Gauss>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn u1_cached(key: &Key) -> Result<CarPoly<Gauss>> {
    if let Some(p) = u1_cache().read().ok().and_then(|m| m.get(key).cloned()) {
        return Ok(p);
    }
    let p = u1_monomial_to_car::<Gauss>(&key.0, &key.1)?;
    if let Ok(mut m) = u1_cache().write() {
        m.entry(key.clone()).or_insert_with(|| p.clone());
    }
    Ok(p)
}

/// `Φ_{SR_1}(a_n)` in the requested backend.
pub fn sr1_image<S: Scalar>(n: usize) -> Result<Element<S>> {
    Ok(sr1().car_image(n)?.lift())
}

/// `Φ_{SR_1}(x)`.
pub fn to_cuntz<S: Scalar>(x: &CarPoly<S>) -> Result<Element<S>> {
    let mut out = Element::zero(2);
    for (&(dag, ann), c) in x.terms() {
        let mut t = Element::scalar(2, c.clone());
        for n in (1..=64).filter(|n| dag >> (n - 1) & 1 == 1) {
            t = &t * &sr1_image::<S>(n)?.adjoint();
        }
        for n in (1..=64).filter(|n| ann >> (n - 1) & 1 == 1) {
            t = &t * &sr1_image::<S>(n)?;
        }
        out = &out + &t;
    }
    Ok(out)
}

/// `Φ_R(x)` for an arbitrary system.
pub fn to_cuntz_with<S: Scalar>(x: &CarPoly<S>, r: &Rfs<S>) -> Result<Element<S>> {
    r.embed(x)
}

/// `Φ_{SR_1}^{-1}(y)` for gauge-invariant `y` in `O_2`.
pub fn from_cuntz<S: Scalar>(y: &Element<S>) -> Result<CarPoly<S>> {
    if y.d() != 2 {
        return Err(Error::Dimension(y.d() as usize, 2));
    }
    let mut out = CarPoly::zero();
    for (deg, part) in y.gauge_degree_split() {
        if deg != 0 {
            if !part.is_zero() {
                return pre(format!("component of gauge degree {deg} is nonzero"));
            }
            continue;
        }
        for (key, c) in part.canonical().terms() {
            let p = u1_cached(key)?;
            out = &out + &p.map_scalar(|g| lift::<S>(g) * c.clone());
        }
    }
    Ok(out)
}

/// `a_n -> rule(n)` on a finite range of modes.
#[derive(Clone, Debug, PartialEq)]
pub struct CarMorphism<S: Scalar> {
    pub name: String,
    pub source: String,
    rules: Vec<CarPoly<S>>,
}

impl<S: Scalar> CarMorphism<S> {
    pub fn new(name: impl Into<String>, source: impl Into<String>, rules: Vec<CarPoly<S>>) -> Self {
        CarMorphism { name: name.into(), source: source.into(), rules }
    }

    pub fn from_fn(
        name: impl Into<String>,
        mode_max: usize,
        mut f: impl FnMut(usize) -> Result<CarPoly<S>>,
    ) -> Result<Self> {
        let rules = (1..=mode_max).map(&mut f).collect::<Result<Vec<_>>>()?;
        let name = name.into();
        Ok(CarMorphism { source: name.clone(), name, rules })
    }

    pub fn identity(mode_max: usize) -> Self {
        let rules = (1..=mode_max).map(CarPoly::a).collect();
        CarMorphism::new("id", "id", rules)
    }

    pub fn mode_max(&self) -> usize {
        self.rules.len()
    }

    /// Image of `a_n`, 1-based.
    pub fn rule(&self, n: usize) -> Option<&CarPoly<S>> {
        n.checked_sub(1).and_then(|i| self.rules.get(i))
    }

    pub fn rules(&self) -> &[CarPoly<S>] {
        &self.rules
    }

    pub fn apply(&self, x: &CarPoly<S>) -> Result<CarPoly<S>> {
        if x.max_mode() > self.mode_max() {
            return pre(format!("{} is known only up to mode {}", self.name, self.mode_max()));
        }
        Ok(x.substitute(|n| self.rules[n - 1].clone()))
    }

    /// First mode where the two rules differ.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        let m = self.mode_max().min(o.mode_max());
        (1..=m).find(|&n| !self.rules[n - 1].approx_eq(&o.rules[n - 1]))
    }

    /// Anticommutators of the rules up to `bound`.
    pub fn homomorphism_check(&self, bound: usize) -> Report {
        let mut rep = Report::new(format!("homomorphism/{}", self.name));
        let b = bound.min(self.mode_max());
        for m in 1..=b {
            for n in m..=b {
                let x = &self.rules[m - 1];
                let y = &self.rules[n - 1];
                let aa = x.anticommutator(y);
                rep.check_with(format!("{{a{m},a{n}}}"), aa.is_zero(), || aa.to_string());
                let ad = x.anticommutator(&y.adjoint());
                let want = if m == n { CarPoly::identity() } else { CarPoly::zero() };
                rep.check_with(format!("{{a{m},a{n}*}}"), ad.approx_eq(&want), || ad.to_string());
            }
        }
        rep
    }
}

impl<S: Scalar> fmt::Display for CarMorphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rules.iter().enumerate() {
            writeln!(f, "{}(a{}) = {}", self.name, i + 1, r.pretty())?;
        }
        Ok(())
    }
}

/// `m2 ∘ m1`, defined on the modes of `m1` whose images `m2` covers.
pub fn compose<S: Scalar>(m2: &CarMorphism<S>, m1: &CarMorphism<S>) -> Result<CarMorphism<S>> {
    let mut rules = Vec::new();
    for r in m1.rules() {
        if r.max_mode() > m2.mode_max() {
            break;
        }
        rules.push(m2.apply(r)?);
    }
    Ok(CarMorphism::new(format!("{}∘{}", m2.name, m1.name), format!("{}∘{}", m2.source, m1.source), rules))
}

/// `Φ_{SR_1}^{-1} ∘ m ∘ Φ_{SR_1}` on `a_1..a_{mode_max}`.
pub fn restrict_endomorphism<S: Scalar>(m: &Morphism<S>, mode_max: usize) -> Result<CarMorphism<S>> {
    if m.source_d() != 2 || m.target_d() != 2 {
        return pre("restriction needs an endomorphism of O_2");
    }
    if !m.commutes_with_gauge() {
        return pre(format!("{} does not commute with the gauge action", m.name));
    }
    let rules = (1..=mode_max)
        .map(|n| from_cuntz(&m.apply(&sr1_image::<S>(n)?)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(CarMorphism::new(m.name.clone(), m.name.clone(), rules))
}
