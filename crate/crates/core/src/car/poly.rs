//! Normal-ordered polynomials in the CAR generators `a_n`, `a_n^*`.
//!
//! A monomial is stored as a pair of bit masks `(D, A)` over modes `1..=64` and stands for
//! `a_{d_1}^* .. a_{d_r}^* a_{n_1} .. a_{n_s}` with both blocks strictly ascending.

use crate::algebra::render_sum;
use crate::scalar::Scalar;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub const MAX_MODE: usize = 64;

/// `(creators, annihilators)`, mode `n` at bit `n - 1`.
pub type CarKey = (u64, u64);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Mixed => "mixed",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CarPoly<S: Scalar> {
    terms: BTreeMap<CarKey, S>,
}

fn bit(n: usize) -> u64 {
    assert!((1..=MAX_MODE).contains(&n), "mode {n} outside 1..={MAX_MODE}");
    1u64 << (n - 1)
}

fn above(mask: u64, n: usize) -> u32 {
    if n >= 64 {
        0
    } else {
        (mask >> n).count_ones()
    }
}

fn sign<S: Scalar>(odd: bool) -> S {
    if odd {
        -S::one()
    } else {
        S::one()
    }
}

fn modes(mask: u64) -> impl Iterator<Item = usize> {
    (0..64).filter(move |b| mask >> b & 1 == 1).map(|b| b + 1)
}

/// `key * a_n` or `key * a_n^*` as at most two signed keys.
fn mul_factor(key: CarKey, n: usize, dagger: bool) -> Vec<(CarKey, bool)> {
    let (d, a) = key;
    let b = bit(n);
    let mut out = Vec::with_capacity(2);
    if !dagger {
        if a & b == 0 {
            out.push(((d, a | b), above(a, n) % 2 == 1));
        }
        return out;
    }
    if a & b != 0 {
        out.push(((d, a & !b), above(a, n) % 2 == 1));
    }
    if d & b == 0 {
        let odd = (a.count_ones() + above(d, n)) % 2 == 1;
        out.push(((d | b, a), odd));
    }
    out
}

impl<S: Scalar> CarPoly<S> {
    pub fn zero() -> Self {
        CarPoly { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::scalar(S::one())
    }

    pub fn scalar(c: S) -> Self {
        let mut p = Self::zero();
        p.add_term((0, 0), c);
        p
    }

    /// `a_n`; panics outside `1..=64`.
    pub fn a(n: usize) -> Self {
        Self::from_key((0, bit(n)))
    }

    /// `a_n^*`; panics outside `1..=64`.
    pub fn a_dag(n: usize) -> Self {
        Self::from_key((bit(n), 0))
    }

    /// `a_n^* a_n`.
    pub fn number(n: usize) -> Self {
        Self::from_key((bit(n), bit(n)))
    }

    /// Klein operator `K_n = I - 2 a_n^* a_n`.
    pub fn klein(n: usize) -> Self {
        Self::identity() - Self::number(n).scale(&S::from_i64(2))
    }

    fn from_key(k: CarKey) -> Self {
        let mut p = Self::zero();
        p.add_term(k, S::one());
        p
    }

    /// Product of factors `(mode, dagger)` in the given order.
    pub fn from_factors(factors: &[(usize, bool)]) -> Self {
        factors.iter().fold(Self::identity(), |acc, &(n, dag)| {
            let f = if dag { Self::a_dag(n) } else { Self::a(n) };
            &acc * &f
        })
    }

    pub fn terms(&self) -> &BTreeMap<CarKey, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: CarKey, c: S) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(key).or_insert_with(S::zero);
        *slot = slot.clone() + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|c| c.is_zero())
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        (self - o).is_zero()
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut p = Self::zero();
        for (k, v) in &self.terms {
            p.add_term(*k, v.clone() * c.clone());
        }
        p
    }

    pub fn adjoint(&self) -> Self {
        let mut p = Self::zero();
        for (&(d, a), c) in &self.terms {
            let r = d.count_ones();
            let s = a.count_ones();
            let odd = (r * r.saturating_sub(1) / 2 + s * s.saturating_sub(1) / 2) % 2 == 1;
            p.add_term((a, d), sign::<S>(odd) * c.conj());
        }
        p
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        &(self * o) + &(o * self)
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::identity(), |acc, _| &acc * self)
    }

    /// Largest mode that occurs, 0 for scalars.
    pub fn max_mode(&self) -> usize {
        let all = self.terms.keys().fold(0u64, |m, (d, a)| m | d | a);
        64 - all.leading_zeros() as usize
    }

    /// Behaviour under `a_n -> -a_n`.
    pub fn parity(&self) -> Parity {
        let mut even = false;
        let mut odd = false;
        for (d, a) in self.terms.keys() {
            if (d.count_ones() + a.count_ones()) % 2 == 0 {
                even = true;
            } else {
                odd = true;
            }
        }
        match (even, odd) {
            (_, false) => Parity::Even,
            (false, true) => Parity::Odd,
            (true, true) => Parity::Mixed,
        }
    }

    /// Homomorphic substitution `a_n -> f(n)`, with `a_n^* -> f(n)^*`.
    pub fn substitute(&self, mut f: impl FnMut(usize) -> Self) -> Self {
        let mut cache: BTreeMap<usize, (Self, Self)> = BTreeMap::new();
        let mut img = |n: usize, dag: bool| -> Self {
            let e = cache.entry(n).or_insert_with(|| {
                let x = f(n);
                let xd = x.adjoint();
                (x, xd)
            });
            if dag {
                e.1.clone()
            } else {
                e.0.clone()
            }
        };
        let mut out = Self::zero();
        for (&(d, a), c) in &self.terms {
            let mut t = Self::scalar(c.clone());
            for n in modes(d) {
                t = &t * &img(n, true);
            }
            for n in modes(a) {
                t = &t * &img(n, false);
            }
            out = &out + &t;
        }
        out
    }

    /// Shifts every mode by `k`.
    pub fn shift(&self, k: usize) -> Self {
        let mut p = Self::zero();
        for (&(d, a), c) in &self.terms {
            assert!(
                k == 0 || (d | a) >> (64 - k) == 0,
                "shift by {k} leaves modes 1..={MAX_MODE}"
            );
            p.add_term((d << k, a << k), c.clone());
        }
        p
    }

    /// Particle-hole exchange `a_n <-> a_n^*` at one mode.
    pub fn swap_mode(&self, n: usize) -> Self {
        self.substitute(|m| if m == n { Self::a_dag(m) } else { Self::a(m) })
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> CarPoly<T> {
        let mut p = CarPoly::zero();
        for (k, c) in &self.terms {
            p.add_term(*k, f(c));
        }
        p
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }

    /// Renders the product `prod_{l in L} K_l * M` when the polynomial has that shape.
    pub fn klein_text(&self) -> Option<String> {
        let (&(d0, a0), c0) = self.terms.iter().min_by_key(|((d, a), _)| d.count_ones() + a.count_ones())?;
        let mut ls = 0u64;
        for (d, a) in self.terms.keys() {
            ls |= d & a;
        }
        ls &= !(d0 | a0);
        if ls == 0 {
            return None;
        }
        let mut cand = Self::scalar(c0.clone());
        for l in modes(ls) {
            cand = &cand * &Self::klein(l);
        }
        cand = &cand * &Self::from_key((d0, a0));
        if !cand.approx_eq(self) {
            return None;
        }
        let mut parts: Vec<String> = modes(ls).map(|l| format!("K{l}")).collect();
        let m = key_text((d0, a0));
        if !m.is_empty() {
            parts.push(m);
        }
        Some(render_sum([(c0.to_string(), parts.join(" "))]))
    }

    /// Like `Display`, but factors Klein operators when possible.
    pub fn pretty(&self) -> String {
        self.klein_text().unwrap_or_else(|| self.to_string())
    }
}

/// Text of one normal-ordered monomial, empty for the identity.
pub fn key_text(k: CarKey) -> String {
    let mut parts: Vec<String> = modes(k.0).map(|n| format!("a{n}*")).collect();
    parts.extend(modes(k.1).map(|n| format!("a{n}")));
    parts.join(" ")
}

impl<S: Scalar> fmt::Display for CarPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(k, c)| {
            let t = key_text(*k);
            (c.to_string(), if t.is_empty() { "I".to_string() } else { t })
        });
        f.write_str(&render_sum(items))
    }
}

impl<'a, S: Scalar> Mul<&'a CarPoly<S>> for &'a CarPoly<S> {
    type Output = CarPoly<S>;
    fn mul(self, o: &CarPoly<S>) -> CarPoly<S> {
        let mut out = CarPoly::zero();
        for (&k1, c1) in &self.terms {
            for (&(d2, a2), c2) in &o.terms {
                let mut cur: Vec<(CarKey, bool)> = vec![(k1, false)];
                let factors = modes(d2).map(|n| (n, true)).chain(modes(a2).map(|n| (n, false)));
                for (n, dag) in factors {
                    let mut next = Vec::with_capacity(cur.len() * 2);
                    for (k, s) in cur {
                        for (k2, s2) in mul_factor(k, n, dag) {
                            next.push((k2, s ^ s2));
                        }
                    }
                    cur = next;
                    if cur.is_empty() {
                        break;
                    }
                }
                let c = c1.clone() * c2.clone();
                for (k, s) in cur {
                    out.add_term(k, sign::<S>(s) * c.clone());
                }
            }
        }
        out
    }
}

impl<'a, S: Scalar> Add<&'a CarPoly<S>> for &'a CarPoly<S> {
    type Output = CarPoly<S>;
    fn add(self, o: &CarPoly<S>) -> CarPoly<S> {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, c.clone());
        }
        p
    }
}

impl<'a, S: Scalar> Sub<&'a CarPoly<S>> for &'a CarPoly<S> {
    type Output = CarPoly<S>;
    fn sub(self, o: &CarPoly<S>) -> CarPoly<S> {
        let mut p = self.clone();
        for (k, c) in &o.terms {
            p.add_term(*k, -c.clone());
        }
        p
    }
}

impl<S: Scalar> Mul for CarPoly<S> {
    type Output = CarPoly<S>;
    fn mul(self, o: CarPoly<S>) -> CarPoly<S> {
        &self * &o
    }
}

impl<S: Scalar> Add for CarPoly<S> {
    type Output = CarPoly<S>;
    fn add(self, o: CarPoly<S>) -> CarPoly<S> {
        &self + &o
    }
}

impl<S: Scalar> Sub for CarPoly<S> {
    type Output = CarPoly<S>;
    fn sub(self, o: CarPoly<S>) -> CarPoly<S> {
        &self - &o
    }
}

impl<S: Scalar> Neg for CarPoly<S> {
    type Output = CarPoly<S>;
    fn neg(self) -> CarPoly<S> {
        self.scale(&-S::one())
    }
}
