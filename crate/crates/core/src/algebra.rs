//! Finite linear combinations of Cuntz monomials `s_I s_J^*` and their canonical forms.
//!
//! A monomial key is `(left, right)`: `left` is the undaggered word `I`, `right` lists the
//! daggered letters in display order, so `(vec![1, 2], vec![2, 1])` is `s_{1,2;2,1}`
//! `= s_1 s_2 s_2^* s_1^*`.

use crate::error::{Error, Result};
use crate::scalar::{lift, Gauss, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub type Word = Vec<u8>;
pub type Key = (Word, Word);

#[derive(Clone, PartialEq, Debug)]
pub struct Element<S: Scalar> {
    d: u8,
    terms: BTreeMap<Key, S>,
}

fn rev(w: &[u8]) -> Word {
    w.iter().rev().copied().collect()
}

/// Product of two monomial keys, `None` when it vanishes by `s_i^* s_j = 0`.
pub fn mul_keys(a: &Key, b: &Key) -> Option<Key> {
    let (i, r) = a;
    let (k, t) = b;
    let n = r.len();
    let m = k.len();
    let common = n.min(m);
    // Daggered isometry word of `a` is rev(r); compare it letter by letter with `k`.
    for q in 0..common {
        if r[n - 1 - q] != k[q] {
            return None;
        }
    }
    if n >= m {
        let mut right = r[..n - m].to_vec();
        right.extend_from_slice(t);
        Some((i.clone(), right))
    } else {
        let mut left = i.clone();
        left.extend_from_slice(&k[n..]);
        Some((left, t.clone()))
    }
}

impl<S: Scalar> Element<S> {
    pub fn zero(d: u8) -> Self {
        assert!(d >= 2, "Cuntz algebras need d >= 2");
        Element { d, terms: BTreeMap::new() }
    }

    pub fn identity(d: u8) -> Self {
        Self::monomial(d, vec![], vec![], S::one())
    }

    pub fn monomial(d: u8, left: Word, right: Word, c: S) -> Self {
        let mut e = Self::zero(d);
        for &l in left.iter().chain(right.iter()) {
            assert!(l >= 1 && l <= d, "letter {l} outside 1..{d}");
        }
        e.add_term((left, right), c);
        e
    }

    /// `s_{w_1} ... s_{w_k}`.
    pub fn word(d: u8, w: &[u8]) -> Self {
        Self::monomial(d, w.to_vec(), vec![], S::one())
    }

    pub fn generator(d: u8, i: u8) -> Self {
        Self::word(d, &[i])
    }

    /// `s_{I;R}` with unit coefficient.
    pub fn s(d: u8, left: &[u8], right: &[u8]) -> Self {
        Self::monomial(d, left.to_vec(), right.to_vec(), S::one())
    }

    pub fn scalar(d: u8, c: S) -> Self {
        Self::monomial(d, vec![], vec![], c)
    }

    pub fn d(&self) -> u8 {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Key, S> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True when no term is stored (structural zero, not the decision procedure).
    pub fn is_zero_structural(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: Key, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(v) => {
                let nv = v.clone() + c;
                if nv.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *v = nv;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn from_terms(d: u8, it: impl IntoIterator<Item = (Key, S)>) -> Self {
        let mut e = Self::zero(d);
        for (k, c) in it {
            e.add_term(k, c);
        }
        e
    }

    fn check_d(&self, o: &Self) -> Result<()> {
        if self.d != o.d {
            return Err(Error::Dimension(self.d as usize, o.d as usize));
        }
        Ok(())
    }

    pub fn checked_add(&self, o: &Self) -> Result<Self> {
        self.check_d(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), c.clone());
        }
        Ok(r)
    }

    pub fn checked_sub(&self, o: &Self) -> Result<Self> {
        self.check_d(o)?;
        let mut r = self.clone();
        for (k, c) in &o.terms {
            r.add_term(k.clone(), -c.clone());
        }
        Ok(r)
    }

    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        self.check_d(o)?;
        let mut r = Self::zero(self.d);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &o.terms {
                if let Some(k) = mul_keys(ka, kb) {
                    r.add_term(k, ca.clone() * cb.clone());
                }
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::from_terms(self.d, self.terms.iter().map(|(k, v)| (k.clone(), v.clone() * c.clone())))
    }

    pub fn pow(&self, n: usize) -> Self {
        let mut r = Self::identity(self.d);
        for _ in 0..n {
            r = &r * self;
        }
        r
    }

    /// `(s_I s_J^*)^* = s_J s_I^*` with conjugated coefficient.
    pub fn adjoint(&self) -> Self {
        Self::from_terms(
            self.d,
            self.terms.iter().map(|((l, r), c)| ((rev(r), rev(l)), c.conj())),
        )
    }

    /// Gauge degree `|I| - |J|` of every term, partitioned.
    pub fn gauge_degree_split(&self) -> BTreeMap<i64, Self> {
        let mut out: BTreeMap<i64, Self> = BTreeMap::new();
        for (k, c) in &self.terms {
            let g = k.0.len() as i64 - k.1.len() as i64;
            out.entry(g).or_insert_with(|| Self::zero(self.d)).add_term(k.clone(), c.clone());
        }
        out
    }

    /// Degree of a homogeneous element, `None` if mixed or zero.
    pub fn homogeneous_degree(&self) -> Option<i64> {
        let split = self.gauge_degree_split();
        if split.len() == 1 {
            split.keys().next().copied()
        } else {
            None
        }
    }

    pub fn max_right_depth(&self) -> usize {
        self.terms.keys().map(|k| k.1.len()).max().unwrap_or(0)
    }

    /// Rewrites every term to right depth exactly `depth` using `I = sum_k s_k s_k^*`.
    pub fn flatten(&self, depth: usize) -> Result<Self> {
        if self.max_right_depth() > depth {
            return Err(Error::Precondition(format!(
                "flatten depth {depth} below right depth {}",
                self.max_right_depth()
            )));
        }
        let mut r = Self::zero(self.d);
        for ((l, rt), c) in &self.terms {
            let extra = depth - rt.len();
            for_each_word(self.d, extra, |w| {
                let mut nl = l.clone();
                nl.extend_from_slice(w);
                let mut nr = rev(w);
                nr.extend_from_slice(rt);
                r.add_term((nl, nr), c.clone());
            });
        }
        Ok(r)
    }

    /// Per-degree flattening to the maximal right depth of that degree.
    pub fn normal_form(&self) -> Self {
        let mut r = Self::zero(self.d);
        for part in self.gauge_degree_split().values() {
            let depth = part.max_right_depth();
            for (k, c) in part.flatten(depth).expect("depth is maximal").terms {
                r.add_term(k, c);
            }
        }
        r
    }

    /// Decides `x == 0` in the Cuntz algebra.
    pub fn is_zero(&self) -> bool {
        self.normal_form().terms.is_empty()
    }

    /// Decides equality in the Cuntz algebra.
    pub fn equals(&self, o: &Self) -> bool {
        self.d == o.d && self.checked_sub(o).map(|x| x.is_zero()).unwrap_or(false)
    }

    /// Shortest representative: flattened, then complete sibling groups with equal
    /// coefficients are contracted back through `sum_k s_k s_k^* = I`.
    pub fn canonical(&self) -> Self {
        let mut cur = self.normal_form();
        loop {
            let mut groups: BTreeMap<Key, Vec<(u8, S)>> = BTreeMap::new();
            for ((l, r), c) in &cur.terms {
                if let (Some(&a), Some(&b)) = (l.last(), r.first()) {
                    if a == b {
                        let parent = (l[..l.len() - 1].to_vec(), r[1..].to_vec());
                        groups.entry(parent).or_default().push((a, c.clone()));
                    }
                }
            }
            let mut changed = false;
            for (parent, members) in groups {
                if members.len() != self.d as usize {
                    continue;
                }
                let c0 = members[0].1.clone();
                if !members.iter().all(|(_, c)| c.approx_eq(&c0)) {
                    continue;
                }
                for (k, _) in &members {
                    let mut l = parent.0.clone();
                    l.push(*k);
                    let mut r = vec![*k];
                    r.extend_from_slice(&parent.1);
                    cur.terms.remove(&(l, r));
                }
                cur.add_term(parent, c0);
                changed = true;
            }
            if !changed {
                return cur;
            }
        }
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Element<T> {
        Element::from_terms(self.d, self.terms.iter().map(|(k, c)| (k.clone(), f(c))))
    }

    /// Largest coefficient modulus.
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.to_c64().norm()).fold(0.0, f64::max)
    }

    /// Replaces ambient dimension label; letters must stay in range.
    pub fn with_d(&self, d: u8) -> Result<Self> {
        for (l, r) in self.terms.keys() {
            if l.iter().chain(r.iter()).any(|&x| x > d) {
                return Err(Error::Dimension(self.d as usize, d as usize));
            }
        }
        Ok(Element { d, terms: self.terms.clone() })
    }
}

impl Element<Gauss> {
    pub fn lift<T: Scalar>(&self) -> Element<T> {
        self.map_scalar(lift::<T>)
    }
}

/// Calls `f` on every word of length `len` over `1..=d`, in lexicographic order.
pub fn for_each_word(d: u8, len: usize, mut f: impl FnMut(&[u8])) {
    let mut w = vec![1u8; len];
    loop {
        f(&w);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            if w[pos] < d {
                w[pos] += 1;
                for x in w.iter_mut().skip(pos + 1) {
                    *x = 1;
                }
                break;
            }
        }
    }
}

/// All words of length `len` over `1..=d`.
pub fn words(d: u8, len: usize) -> Vec<Word> {
    let mut out = Vec::new();
    for_each_word(d, len, |w| out.push(w.to_vec()));
    out
}

/// Checks `S_i^* S_j = delta_ij I` and `sum_i S_i S_i^* = I`.
pub fn check_cuntz_family<S: Scalar>(family: &[Element<S>], d_src: usize) -> bool {
    if family.len() != d_src || family.is_empty() {
        return false;
    }
    let d = family[0].d();
    if family.iter().any(|x| x.d() != d) {
        return false;
    }
    let id = Element::<S>::identity(d);
    let zero = Element::<S>::zero(d);
    let mut sum = Element::<S>::zero(d);
    for (i, a) in family.iter().enumerate() {
        let aa = a.adjoint();
        for (j, b) in family.iter().enumerate() {
            let p = &aa * b;
            let ok = if i == j { p.equals(&id) } else { p.equals(&zero) };
            if !ok {
                return false;
            }
        }
        sum = &sum + &(a * &aa);
    }
    sum.equals(&id)
}

/// Reports the first failed relation of a Cuntz family, if any.
pub fn cuntz_family_witness<S: Scalar>(family: &[Element<S>]) -> Option<String> {
    let d = family.first()?.d();
    let id = Element::<S>::identity(d);
    let mut sum = Element::<S>::zero(d);
    for (i, a) in family.iter().enumerate() {
        let aa = a.adjoint();
        for (j, b) in family.iter().enumerate() {
            let p = &aa * b;
            let target = if i == j { id.clone() } else { Element::zero(d) };
            if !p.equals(&target) {
                return Some(format!("S_{}^* S_{} = {}", i + 1, j + 1, p.canonical()));
            }
        }
        sum = &sum + &(a * &aa);
    }
    if !sum.equals(&id) {
        return Some(format!("sum S_i S_i^* = {}", sum.canonical()));
    }
    None
}

fn split_sign(s: String) -> (bool, String) {
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

fn fmt_word(w: &[u8]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Text of a single monomial key: `I`, `s[1,2]`, `s[1;2]`, `s[;2]`.
pub fn key_text(k: &Key) -> String {
    match (k.0.is_empty(), k.1.is_empty()) {
        (true, true) => "I".to_string(),
        (_, true) => format!("s[{}]", fmt_word(&k.0)),
        _ => format!("s[{};{}]", fmt_word(&k.0), fmt_word(&k.1)),
    }
}

/// Renders `sum c_k t_k` given `(coeff text, term text)` pairs; `t_k` empty means scalar.
pub(crate) fn render_sum(items: impl IntoIterator<Item = (String, String)>) -> String {
    let mut out = String::new();
    for (idx, (c, t)) in items.into_iter().enumerate() {
        let (neg, mag) = split_sign(c);
        let body = if t.is_empty() {
            mag
        } else if mag == "1" {
            t
        } else {
            format!("{mag} {t}")
        };
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<S: Scalar> fmt::Display for Element<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.terms.iter().map(|(k, c)| (c.to_string(), key_text(k)));
        write!(f, "{}", render_sum(items))
    }
}

impl<'a, S: Scalar> Mul<&'a Element<S>> for &'a Element<S> {
    type Output = Element<S>;
    fn mul(self, o: &Element<S>) -> Element<S> {
        self.checked_mul(o).expect("dimension mismatch in product")
    }
}
impl<'a, S: Scalar> Add<&'a Element<S>> for &'a Element<S> {
    type Output = Element<S>;
    fn add(self, o: &Element<S>) -> Element<S> {
        self.checked_add(o).expect("dimension mismatch in sum")
    }
}
impl<'a, S: Scalar> Sub<&'a Element<S>> for &'a Element<S> {
    type Output = Element<S>;
    fn sub(self, o: &Element<S>) -> Element<S> {
        self.checked_sub(o).expect("dimension mismatch in difference")
    }
}
impl<S: Scalar> Mul for Element<S> {
    type Output = Element<S>;
    fn mul(self, o: Element<S>) -> Element<S> {
        &self * &o
    }
}
impl<S: Scalar> Add for Element<S> {
    type Output = Element<S>;
    fn add(self, o: Element<S>) -> Element<S> {
        &self + &o
    }
}
impl<S: Scalar> Sub for Element<S> {
    type Output = Element<S>;
    fn sub(self, o: Element<S>) -> Element<S> {
        &self - &o
    }
}
impl<S: Scalar> Neg for Element<S> {
    type Output = Element<S>;
    fn neg(self) -> Element<S> {
        self.scale(&-S::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    type E = Element<Gauss>;

    #[test]
    fn cr1_kills_mismatched_letters() {
        let x = E::s(2, &[], &[1]) * E::generator(2, 2);
        assert!(x.is_zero_structural());
    }

    #[test]
    fn prefix_cancellation() {
        let x = E::s(2, &[1], &[2]) * E::s(2, &[2], &[1]);
        assert_eq!(x, E::s(2, &[1], &[1]));
    }

    #[test]
    fn a1_anticommutator_is_identity() {
        let a = E::s(2, &[1], &[2]);
        let x = &(&a * &a.adjoint()) + &(&a.adjoint() * &a);
        assert_eq!(x, &E::s(2, &[1], &[1]) + &E::s(2, &[2], &[2]));
        assert!(x.equals(&E::identity(2)));
    }

    #[test]
    fn adjoint_reverses_words() {
        assert_eq!(E::s(2, &[1], &[2]).adjoint(), E::s(2, &[2], &[1]));
        assert_eq!(E::s(2, &[1, 1], &[2, 1]).adjoint(), E::s(2, &[1, 2], &[1, 1]));
    }

    #[test]
    fn flatten_examples() {
        let id = E::identity(2);
        assert_eq!(id.flatten(1).unwrap(), &E::s(2, &[1], &[1]) + &E::s(2, &[2], &[2]));
        let s1 = E::generator(2, 1);
        assert_eq!(
            s1.flatten(1).unwrap(),
            &E::s(2, &[1, 1], &[1]) + &E::s(2, &[1, 2], &[2])
        );
        let z = &(&E::s(2, &[1], &[1]) + &E::s(2, &[2], &[2])) - &id;
        assert!(z.flatten(1).unwrap().is_zero_structural());
        assert!(E::s(2, &[], &[1, 2]).flatten(1).is_err());
    }

    #[test]
    fn gauge_split_examples() {
        let x = &E::generator(2, 1) + &E::s(2, &[1], &[2]);
        let sp = x.gauge_degree_split();
        assert_eq!(sp[&1], E::generator(2, 1));
        assert_eq!(sp[&0], E::s(2, &[1], &[2]));
    }

    #[test]
    fn canonical_contracts_to_identity() {
        let x = &(&E::s(2, &[1], &[2]) * &E::s(2, &[2], &[1]))
            + &(&E::s(2, &[2], &[1]) * &E::s(2, &[1], &[2]));
        assert_eq!(x.canonical().to_string(), "I");
    }

    #[test]
    fn cuntz_embedding_family() {
        let f = vec![E::generator(2, 1), E::word(2, &[2, 1]), E::word(2, &[2, 2])];
        assert!(check_cuntz_family(&f, 3));
        let bad = vec![E::generator(2, 1), E::generator(2, 1)];
        assert!(!check_cuntz_family(&bad, 2));
    }

    #[test]
    fn display_forms() {
        let x = &E::s(2, &[1], &[2]) - &E::s(2, &[2, 1], &[]);
        assert_eq!(x.to_string(), "s[1;2] - s[2,1]");
        assert_eq!(E::zero(3).to_string(), "0");
    }
}
