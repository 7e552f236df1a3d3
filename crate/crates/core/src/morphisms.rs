//! Unital *-homomorphisms between Cuntz algebras, stored as generator images.

use crate::algebra::{check_cuntz_family, words, Element, Word};
use crate::error::{pre, Error, Result};
use crate::perm_reps::Label;
use crate::scalar::{Cplx, Scalar};
use std::collections::BTreeSet;
use std::fmt;

/// Square scalar matrix, row major: `m[k][l] = u_{k+1, l+1}`.
pub type Matrix<S> = Vec<Vec<S>>;

#[derive(Clone, Debug)]
pub struct Morphism<S: Scalar> {
    pub name: String,
    source_d: usize,
    target_d: u8,
    images: Vec<Element<S>>,
}

impl<S: Scalar> Morphism<S> {
    /// Builds a morphism after checking the Cuntz relations of the images.
    pub fn new(name: impl Into<String>, images: Vec<Element<S>>) -> Result<Self> {
        let m = Self::new_unchecked(name, images)?;
        if !check_cuntz_family(&m.images, m.source_d) {
            return pre(format!("images of {} violate the Cuntz relations", m.name));
        }
        Ok(m)
    }

    /// Builds a morphism without verifying the Cuntz relations.
    pub fn new_unchecked(name: impl Into<String>, images: Vec<Element<S>>) -> Result<Self> {
        let name = name.into();
        if images.len() < 2 {
            return pre("a Cuntz algebra needs at least two generators");
        }
        let target_d = images[0].d();
        if let Some(x) = images.iter().find(|x| x.d() != target_d) {
            return Err(Error::Dimension(target_d as usize, x.d() as usize));
        }
        Ok(Morphism { name, source_d: images.len(), target_d, images })
    }

    pub fn source_d(&self) -> usize {
        self.source_d
    }
    pub fn target_d(&self) -> u8 {
        self.target_d
    }
    pub fn images(&self) -> &[Element<S>] {
        &self.images
    }
    pub fn image(&self, i: usize) -> &Element<S> {
        &self.images[i - 1]
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Re-checks CR1/CR2 on the stored images.
    pub fn is_valid(&self) -> bool {
        check_cuntz_family(&self.images, self.source_d)
    }

    /// Linear, multiplicative, *-preserving extension of the generator images.
    pub fn apply(&self, x: &Element<S>) -> Result<Element<S>> {
        if x.d() as usize != self.source_d {
            return Err(Error::Dimension(x.d() as usize, self.source_d));
        }
        let adj: Vec<Element<S>> = self.images.iter().map(|e| e.adjoint()).collect();
        let mut out = Element::zero(self.target_d);
        for ((l, r), c) in x.terms() {
            let mut acc = Element::scalar(self.target_d, c.clone());
            for &i in l {
                acc = &acc * &self.images[i as usize - 1];
                if acc.is_empty() {
                    break;
                }
            }
            for &j in r {
                if acc.is_empty() {
                    break;
                }
                acc = &acc * &adj[j as usize - 1];
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Generator-wise equality under the Cuntz relations.
    pub fn equals(&self, o: &Self) -> bool {
        self.source_d == o.source_d
            && self.target_d == o.target_d
            && self.images.iter().zip(&o.images).all(|(a, b)| a.equals(b))
    }

    /// Index of the first generator whose images differ.
    pub fn first_difference(&self, o: &Self) -> Option<usize> {
        self.images.iter().zip(&o.images).position(|(a, b)| !a.equals(b)).map(|i| i + 1)
    }

    /// True when every image has gauge degree 1, so the morphism commutes with the U(1) action.
    pub fn commutes_with_gauge(&self) -> bool {
        self.images.iter().all(|x| x.normal_form().homogeneous_degree() == Some(1))
    }

    pub fn map_scalar<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> Morphism<T> {
        Morphism {
            name: self.name.clone(),
            source_d: self.source_d,
            target_d: self.target_d,
            images: self.images.iter().map(|e| e.map_scalar(f)).collect(),
        }
    }

    pub fn canonical(&self) -> Self {
        Morphism { images: self.images.iter().map(|e| e.canonical()).collect(), ..self.clone() }
    }
}

impl<S: Scalar> fmt::Display for Morphism<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}(s{}) = {}", self.name, i + 1, x.canonical())?;
        }
        Ok(())
    }
}

/// `m2 ∘ m1`.
pub fn compose<S: Scalar>(m2: &Morphism<S>, m1: &Morphism<S>) -> Result<Morphism<S>> {
    if m1.target_d as usize != m2.source_d {
        return Err(Error::Dimension(m1.target_d as usize, m2.source_d));
    }
    let images = m1.images.iter().map(|x| m2.apply(x)).collect::<Result<Vec<_>>>()?;
    Morphism::new_unchecked(format!("{}∘{}", m2.name, m1.name), images)
}

pub fn identity<S: Scalar>(d: u8) -> Morphism<S> {
    let images = (1..=d).map(|i| Element::generator(d, i)).collect();
    Morphism::new_unchecked("id", images).expect("d >= 2")
}

fn from_words<S: Scalar>(name: String, d: u8, ws: Vec<Word>) -> Morphism<S> {
    let images = ws.iter().map(|w| Element::word(d, w)).collect();
    Morphism::new_unchecked(name, images).expect("at least two words")
}

/// `O_{d'} -> O_2`, `S_k = s_2^{k-1} s_1`, `S_{d'} = s_2^{d'-1}`.
pub fn cuntz_embedding<S: Scalar>(dp: usize) -> Result<Morphism<S>> {
    if dp < 2 {
        return pre("cuntz_embedding needs d' >= 2");
    }
    let mut ws = Vec::new();
    for k in 1..=dp {
        let mut w = vec![2u8; k - 1];
        if k < dp {
            w.push(1);
        }
        ws.push(w);
    }
    Ok(from_words(format!("cuntz({dp})"), 2, ws))
}

/// `O_{(d-1)n+1} -> O_d`.
pub fn generalized_cuntz_embedding<S: Scalar>(d: u8, n: usize) -> Result<Morphism<S>> {
    if d < 2 || n < 1 {
        return pre("generalized_cuntz_embedding needs d >= 2 and n >= 1");
    }
    let mut ws = Vec::new();
    for k in 0..n {
        for i in 1..d {
            let mut w = vec![d; k];
            w.push(i);
            ws.push(w);
        }
    }
    ws.push(vec![d; n]);
    Ok(from_words(format!("gcuntz({d},{n})"), d, ws))
}

/// Splits the last generator image `S_last` into `S_last s_1, ..., S_last s_d`.
pub fn inductive_extension<S: Scalar>(m: &Morphism<S>) -> Morphism<S> {
    let d = m.target_d;
    let mut images = m.images[..m.source_d - 1].to_vec();
    let last = &m.images[m.source_d - 1];
    for i in 1..=d {
        images.push(last * &Element::generator(d, i));
    }
    Morphism::new_unchecked(format!("ext({})", m.name), images).expect("nonempty")
}

/// Multi-index `(i_1..i_p)` of `i` with `i - 1 = sum (i_k - 1) d^{k-1}`.
pub fn multi_index(d: usize, p: usize, i: usize) -> Word {
    let mut r = i - 1;
    (0..p)
        .map(|_| {
            let x = (r % d) as u8 + 1;
            r /= d;
            x
        })
        .collect()
}

/// Inverse of [`multi_index`].
pub fn single_index(d: usize, w: &[u8]) -> usize {
    w.iter().rev().fold(0usize, |acc, &x| acc * d + (x as usize - 1)) + 1
}

/// `Ψ_p : O_{d^p} -> O_d`.
pub fn homogeneous_embedding<S: Scalar>(d: u8, p: usize) -> Result<Morphism<S>> {
    if p < 1 {
        return pre("homogeneous_embedding needs p >= 1");
    }
    let n = (d as usize).checked_pow(p as u32).filter(|&n| n <= 255);
    let Some(n) = n else {
        return Err(Error::Overflow(format!("d^p = {d}^{p} exceeds 255 generators")));
    };
    let ws = (1..=n).map(|i| multi_index(d as usize, p, i)).collect();
    Ok(from_words(format!("psi_hom({d},{p})"), d, ws))
}

/// `O_{(d-1)n+1} -> O_d` whose last generator is `s_{target}`.
pub fn monomial_embedding<S: Scalar>(d: u8, target: &[u8]) -> Result<Morphism<S>> {
    let n = target.len();
    if n == 0 || target.iter().any(|&x| x < 1 || x > d) {
        return pre("monomial_embedding needs a nonempty word over 1..d");
    }
    let mut ws: Vec<Word> = Vec::new();
    for k in 0..n {
        for jt in 1..d {
            let mut w = target[..k].to_vec();
            w.push(if jt < target[k] { jt } else { jt + 1 });
            ws.push(w);
        }
    }
    ws.push(target.to_vec());
    Ok(from_words(format!("mono({:?})", target), d, ws))
}

/// `ρ(X) = sum_i s_i X s_i^*`.
pub fn canonical_endomorphism<S: Scalar>(d: u8) -> Morphism<S> {
    let images = (1..=d)
        .map(|i| {
            Element::from_terms(d, (1..=d).map(|j| ((vec![j, i], vec![j]), S::one())))
        })
        .collect();
    Morphism::new_unchecked("rho", images).expect("d >= 2")
}

pub fn rho_power<S: Scalar>(d: u8, p: usize) -> Morphism<S> {
    let rho = canonical_endomorphism::<S>(d);
    let mut m = identity::<S>(d);
    for _ in 0..p {
        m = compose(&rho, &m).expect("same algebra");
    }
    m.named(format!("rho^{p}"))
}

/// `ρ` applied `p` times to a single element.
pub fn rho_apply<S: Scalar>(x: &Element<S>, p: usize) -> Element<S> {
    let rho = canonical_endomorphism::<S>(x.d());
    let mut y = x.clone();
    for _ in 0..p {
        y = rho.apply(&y).expect("same algebra");
    }
    y
}

/// Permutation of `{1..d^{order}}`, also read as a permutation of multi-indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationSpec {
    pub d: u8,
    pub order: usize,
    /// `sigma[i-1] = σ(i)`.
    pub sigma: Vec<usize>,
}

impl PermutationSpec {
    pub fn new(d: u8, order: usize, sigma: Vec<usize>) -> Result<Self> {
        let n = (d as usize).pow(order as u32);
        let set: BTreeSet<usize> = sigma.iter().copied().collect();
        if sigma.len() != n || set.len() != n || set.iter().any(|&x| x < 1 || x > n) {
            return pre(format!("sigma is not a bijection of 1..{n}"));
        }
        Ok(PermutationSpec { d, order, sigma })
    }

    pub fn identity(d: u8, order: usize) -> Self {
        let n = (d as usize).pow(order as u32);
        PermutationSpec { d, order, sigma: (1..=n).collect() }
    }

    /// From disjoint cycles in single-index form, `[[1,2,4]]` means `1 -> 2 -> 4 -> 1`.
    pub fn from_cycles(d: u8, order: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let n = (d as usize).pow(order as u32);
        let mut sigma: Vec<usize> = (1..=n).collect();
        let mut seen = BTreeSet::new();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x < 1 || x > n || !seen.insert(x) {
                    return pre(format!("invalid cycle entry {x}"));
                }
                sigma[x - 1] = c[(k + 1) % c.len()];
            }
        }
        Self::new(d, order, sigma)
    }

    /// From a map on multi-indices.
    pub fn from_multi(d: u8, order: usize, f: impl Fn(&[u8]) -> Word) -> Result<Self> {
        let n = (d as usize).pow(order as u32);
        let sigma = (1..=n)
            .map(|i| single_index(d as usize, &f(&multi_index(d as usize, order, i))))
            .collect();
        Self::new(d, order, sigma)
    }

    pub fn apply_multi(&self, w: &[u8]) -> Word {
        let i = single_index(self.d as usize, w);
        multi_index(self.d as usize, self.order, self.sigma[i - 1])
    }
}

/// `φ(s_i) = sum_{j_1..j_p} s_{σ(i,j_1..j_p)} s^*_{j_1..j_p}`.
pub fn permutation_endomorphism<S: Scalar>(spec: &PermutationSpec) -> Morphism<S> {
    let d = spec.d;
    let p = spec.order - 1;
    let images = (1..=d)
        .map(|i| {
            let mut e = Element::zero(d);
            for j in words(d, p) {
                let mut w = vec![i];
                w.extend_from_slice(&j);
                let left = spec.apply_multi(&w);
                let right: Word = j.iter().rev().copied().collect();
                e.add_term((left, right), S::one());
            }
            e
        })
        .collect();
    Morphism::new_unchecked(format!("perm{:?}", spec.sigma), images).expect("d >= 2")
}

/// Second order permutation endomorphism of `O_2` in cycle notation, `"[1,3][2,4]"`.
pub fn second_order<S: Scalar>(cycles: &str) -> Result<Morphism<S>> {
    let cyc = parse_cycles(cycles)?;
    let spec = PermutationSpec::from_cycles(2, 2, &cyc)?;
    let name = if cycles.is_empty() { "phi_id".to_string() } else { format!("phi{cycles}") };
    Ok(permutation_endomorphism::<S>(&spec).named(name))
}

/// Parses `"[1,2][3,4]"` into cycles; the empty string is the identity.
pub fn parse_cycles(s: &str) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let Some(stripped) = rest.strip_prefix('[') else {
            return pre(format!("bad cycle notation {s:?}"));
        };
        let Some(end) = stripped.find(']') else {
            return pre(format!("unclosed cycle in {s:?}"));
        };
        let body = &stripped[..end];
        let cyc = body
            .split(',')
            .map(|x| x.trim().parse::<usize>().map_err(|_| Error::Precondition(format!("bad index {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        out.push(cyc);
        rest = stripped[end + 1..].trim_start();
    }
    Ok(out)
}

/// All 24 second-order permutation endomorphisms of `O_2`, keyed by cycle notation.
pub const SECOND_ORDER_CYCLES: [&str; 24] = [
    "", "[1,2]", "[1,3]", "[1,4]", "[2,3]", "[2,4]", "[3,4]", "[1,2][3,4]", "[1,3][2,4]",
    "[1,4][2,3]", "[1,2,3]", "[1,2,4]", "[1,3,2]", "[1,3,4]", "[1,4,2]", "[1,4,3]", "[2,3,4]",
    "[2,4,3]", "[1,2,3,4]", "[1,2,4,3]", "[1,3,2,4]", "[1,3,4,2]", "[1,4,2,3]", "[1,4,3,2]",
];

fn check_unitary<S: Scalar>(u: &Matrix<S>) -> Result<()> {
    let n = u.len();
    if u.iter().any(|row| row.len() != n) {
        return pre("matrix is not square");
    }
    for a in 0..n {
        for b in 0..n {
            let mut s = S::zero();
            for k in 0..n {
                s = s + u[k][a].conj() * u[k][b].clone();
            }
            let target = if a == b { S::one() } else { S::zero() };
            if !s.approx_eq(&target) {
                return pre("matrix is not unitary");
            }
        }
    }
    Ok(())
}

/// `S'_l = sum_k S_k u_{k,l}` for a family `S`.
fn rotate<S: Scalar>(family: &[Element<S>], u: &Matrix<S>) -> Vec<Element<S>> {
    (0..family.len())
        .map(|l| {
            let mut e = Element::zero(family[0].d());
            for (k, s) in family.iter().enumerate() {
                if !u[k][l].is_zero() {
                    e = &e + &s.scale(&u[k][l]);
                }
            }
            e
        })
        .collect()
}

/// `(p+1)`-th order homogeneous endomorphism with scalar unitary `u` of size `d^{p+1}`.
pub fn homogeneous_endomorphism<S: Scalar>(d: u8, p: usize, u: &Matrix<S>) -> Result<Morphism<S>> {
    let n = (d as usize).pow(p as u32 + 1);
    if u.len() != n {
        return Err(Error::Dimension(u.len(), n));
    }
    check_unitary(u)?;
    let hom: Vec<Element<S>> =
        (1..=n).map(|i| Element::word(d, &multi_index(d as usize, p + 1, i))).collect();
    let rotated = rotate(&hom, u);
    let np = (d as usize).pow(p as u32);
    let images = (1..=d as usize)
        .map(|i| {
            let mut e = Element::zero(d);
            for j in 1..=np {
                let sj = Element::word(d, &multi_index(d as usize, p, j)).adjoint();
                e = &e + &(&rotated[(j - 1) * d as usize + i - 1] * &sj);
            }
            e
        })
        .collect();
    Morphism::new_unchecked(format!("hom_endo({d},{p})"), images)
}

/// `α_v(s_i) = sum_j s_j v_{j,i}`.
pub fn u_d_automorphism<S: Scalar>(v: &Matrix<S>) -> Result<Morphism<S>> {
    check_unitary(v)?;
    let d = v.len() as u8;
    let gens: Vec<Element<S>> = (1..=d).map(|i| Element::generator(d, i)).collect();
    Morphism::new_unchecked("alpha_v", rotate(&gens, v))
}

/// `γ_z(s_i) = z s_i`.
pub fn gauge_automorphism<S: Scalar>(d: u8, z: S) -> Morphism<S> {
    let images = (1..=d).map(|i| Element::generator(d, i).scale(&z)).collect();
    Morphism::new_unchecked("gamma_z", images).expect("d >= 2")
}

/// `α_θ(s_1) = cos θ s_1 - sin θ s_2`, `α_θ(s_2) = sin θ s_1 + cos θ s_2`.
pub fn alpha_theta(theta: f64) -> Morphism<Cplx> {
    let (c, s) = (theta.cos(), theta.sin());
    let v = vec![vec![Cplx::real(c), Cplx::real(s)], vec![Cplx::real(-s), Cplx::real(c)]];
    u_d_automorphism(&v).expect("rotation is unitary").named(format!("alpha_theta({theta})"))
}

/// Flip automorphism `s_1 <-> s_2` of `O_2`.
pub fn alpha<S: Scalar>() -> Morphism<S> {
    Morphism::new_unchecked("alpha", vec![Element::generator(2, 2), Element::generator(2, 1)])
        .expect("two images")
}

/// `φ(s_i) = sum_{j <= d_i} S^{[d+1]}_{D_{i-1}+j} S^{[i]*}_j`, twisted by `u` on the outer family.
pub fn general_endomorphism_twisted<S: Scalar>(
    parts: &[Vec<Element<S>>],
    outer: &[Element<S>],
    u: Option<&Matrix<S>>,
) -> Result<Morphism<S>> {
    let d = parts.len();
    if d < 2 || outer.is_empty() {
        return pre("general_endomorphism needs d >= 2 parts and an outer family");
    }
    let dd = outer[0].d();
    if dd as usize != d {
        return Err(Error::Dimension(dd as usize, d));
    }
    let total: usize = parts.iter().map(|p| p.len()).sum();
    if total != outer.len() {
        return pre(format!("outer family has {} elements, expected D = {total}", outer.len()));
    }
    for (i, p) in parts.iter().enumerate() {
        let di = p.len();
        if di == 0 || (di - 1) % (d - 1) != 0 {
            return pre(format!("part {} has size {di}, not of the form (d-1)n+1", i + 1));
        }
        let ok = if di == 1 {
            p[0].equals(&Element::identity(dd))
        } else {
            check_cuntz_family(p, di)
        };
        if !ok {
            return pre(format!("part {} is not an embedding", i + 1));
        }
    }
    if !check_cuntz_family(outer, total) {
        return pre("outer family is not an embedding");
    }
    let outer = match u {
        Some(u) => {
            check_unitary(u)?;
            rotate(outer, u)
        }
        None => outer.to_vec(),
    };
    let mut images = Vec::new();
    let mut offset = 0;
    for p in parts {
        let mut e = Element::zero(dd);
        for (j, sj) in p.iter().enumerate() {
            e = &e + &(&outer[offset + j] * &sj.adjoint());
        }
        offset += p.len();
        images.push(e);
    }
    Morphism::new_unchecked("embend", images)
}

pub fn general_endomorphism<S: Scalar>(
    parts: &[Vec<Element<S>>],
    outer: &[Element<S>],
) -> Result<Morphism<S>> {
    general_endomorphism_twisted(parts, outer, None)
}

/// Recovers the outer family `S_{D_{i-1}+j} = φ(s_i) S^{[i]}_j` of an endomorphism.
pub fn outer_family_of<S: Scalar>(m: &Morphism<S>, parts: &[Vec<Element<S>>]) -> Vec<Element<S>> {
    let mut out = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        for sj in p {
            out.push(&m.images[i] * sj);
        }
    }
    out
}

/// `φ(s_i) = S^{[d+1]}_i (i < d)`, `φ(s_d) = sum_j S^{[d+1]}_{j+d-1} S^{[d]*}_j`.
pub fn inhomogeneous_endomorphism<S: Scalar>(
    outer: &[Element<S>],
    inner: &[Element<S>],
) -> Result<Morphism<S>> {
    if outer.is_empty() {
        return pre("empty outer family");
    }
    let d = outer[0].d();
    let id = vec![Element::identity(d)];
    let mut parts: Vec<Vec<Element<S>>> = vec![id; d as usize - 1];
    parts.push(inner.to_vec());
    Ok(general_endomorphism(&parts, outer)?.named("inhom"))
}

/// `u = sum_i φ(s_i) s_i^*`.
pub fn unitary_of_endomorphism<S: Scalar>(m: &Morphism<S>) -> Result<Element<S>> {
    if m.source_d != m.target_d as usize {
        return pre("not an endomorphism");
    }
    let d = m.target_d;
    let mut u = Element::zero(d);
    for (i, x) in m.images.iter().enumerate() {
        u = &u + &(x * &Element::generator(d, i as u8 + 1).adjoint());
    }
    Ok(u)
}

pub fn is_unitary<S: Scalar>(u: &Element<S>) -> bool {
    let id = Element::identity(u.d());
    (u * &u.adjoint()).equals(&id) && (&u.adjoint() * u).equals(&id)
}

/// `φ(s_i) = u s_i`.
pub fn endomorphism_of_unitary<S: Scalar>(u: &Element<S>) -> Result<Morphism<S>> {
    if !is_unitary(u) {
        return pre("element is not unitary");
    }
    let d = u.d();
    let images = (1..=d).map(|i| u * &Element::generator(d, i)).collect();
    Morphism::new_unchecked("endo(u)", images)
}

/// `u = sum_i S^{[2]}_i S^{[1]*}_i` for two embeddings of the same algebra.
pub fn unitary_between<S: Scalar>(s2: &[Element<S>], s1: &[Element<S>]) -> Result<Element<S>> {
    if s1.len() != s2.len() || s1.is_empty() {
        return pre("families must have equal nonzero size");
    }
    let mut u = Element::zero(s1[0].d());
    for (a, b) in s2.iter().zip(s1) {
        u = &u + &(a * &b.adjoint());
    }
    Ok(u)
}

/// `J = s_{2;1} + s_{1;2}` in `O_2`.
pub fn j_element<S: Scalar>() -> Element<S> {
    &Element::s(2, &[2], &[1]) + &Element::s(2, &[1], &[2])
}

/// `ξ(X) = s_2 X s_1^* + s_1 X s_2^*` on `O_2`.
pub fn xi<S: Scalar>(x: &Element<S>) -> Element<S> {
    let s1 = Element::generator(2, 1);
    let s2 = Element::generator(2, 2);
    &(&(&s2 * x) * &s1.adjoint()) + &(&(&s1 * x) * &s2.adjoint())
}

/// `J_k = ξ^k(I)`, with `J_0 = I`.
pub fn j_k<S: Scalar>(k: usize) -> Element<S> {
    (0..k).fold(Element::identity(2), |acc, _| xi(&acc))
}

/// `φ̂_1 = φ_{[1,4][2,3]}` and `φ̂_k(s_i) = s_i ρ^{k-2}(J_2)` for `k >= 2`.
pub fn hat_phi<S: Scalar>(k: usize) -> Result<Morphism<S>> {
    match k {
        0 => pre("k >= 1"),
        1 => Ok(second_order::<S>("[1,4][2,3]")?.named("hat_phi(1)")),
        _ => {
            let u = rho_apply(&j_k::<S>(2), k - 2);
            let images = (1..=2).map(|i| &Element::generator(2, i) * &u).collect();
            Morphism::new_unchecked(format!("hat_phi({k})"), images)
        }
    }
}

/// `φ_{σ_P}(s_1) = s_1`, `φ_{σ_P}(s_2) = s_2 prod_k ρ^{p_k-1}(J)`.
pub fn phi_sigma_multi<S: Scalar>(pset: &[usize]) -> Result<Morphism<S>> {
    if pset.is_empty() || pset.len() % 2 == 0 || pset.windows(2).any(|w| w[0] >= w[1]) || pset[0] < 1 {
        return pre(format!("P = {pset:?} must be strictly ascending of odd length"));
    }
    let j = j_element::<S>();
    let mut img = Element::generator(2, 2);
    for &p in pset {
        img = &img * &rho_apply(&j, p - 1);
    }
    let name = if pset.len() == 1 {
        format!("phi_sigma({})", pset[0])
    } else {
        format!("phi_sigma{pset:?}")
    };
    Morphism::new_unchecked(name, vec![Element::generator(2, 1), img])
}

pub fn phi_sigma<S: Scalar>(p: usize) -> Result<Morphism<S>> {
    phi_sigma_multi(&[p])
}

/// `φ'_{σ_p}(s_2) = s_2 prod_{k=0}^{p-2} ρ^k(J)`, with `φ_{σ_p} = φ'_{σ_p} ∘ φ_{σ_1}`.
pub fn phi_sigma_prime<S: Scalar>(p: usize) -> Result<Morphism<S>> {
    if p < 1 {
        return pre("p >= 1");
    }
    let j = j_element::<S>();
    let mut img = Element::generator(2, 2);
    for k in 0..p.saturating_sub(1) {
        img = &img * &rho_apply(&j, k);
    }
    Morphism::new_unchecked(format!("phi_sigma_prime({p})"), vec![Element::generator(2, 1), img])
}

/// Finds `R` with `φ_{σ_R} = m`, reading the flips of `m(s_2)` on the all-ones branch.
pub fn identify_phi_sigma_multi<S: Scalar>(m: &Morphism<S>) -> Option<Vec<usize>> {
    if m.source_d != 2 || m.target_d != 2 || !m.images[0].equals(&Element::generator(2, 1)) {
        return None;
    }
    let img = m.images[1].normal_form();
    let depth = img.max_right_depth();
    let ones: Word = vec![1; depth];
    let (left, _) = img.terms().keys().find(|(_, r)| *r == ones)?.clone();
    if left.first() != Some(&2) {
        return None;
    }
    let r: Vec<usize> = left[1..].iter().enumerate().filter(|(_, &x)| x == 2).map(|(k, _)| k + 1).collect();
    let cand = phi_sigma_multi::<S>(&r).ok()?;
    cand.equals(m).then_some(r)
}

/// `φ(s_1) = S_{κ+1}`, `φ(s_2) = sum_j S_j T_j^*` for a nonperiodic label of `O_2`.
pub fn label_to_standard_endomorphism<S: Scalar>(label: &Label) -> Result<Morphism<S>> {
    if label.d != 2 {
        if label.d == 3 && label.word == [1, 2, 1, 3] {
            return Ok(o3_label_fixture::<S>());
        }
        return pre("only d = 2 labels (plus the O_3 fixture (1,2,1,3)) are supported");
    }
    if label.is_periodic() {
        return pre(format!("label {label} is periodic"));
    }
    let w = &label.word;
    let k = w.len();
    let hat = |x: u8| 3 - x;
    let zbar = S::from_c64(label.z.conj())
        .ok_or_else(|| Error::Precondition("eigenvalue not representable in this backend".into()))?;
    let mut s_family: Vec<Element<S>> = Vec::new();
    for j in 1..=k {
        let mut word = w[..j - 1].to_vec();
        word.push(hat(w[j - 1]));
        s_family.push(Element::word(2, &word));
    }
    let last = Element::word(2, w).scale(&zbar);
    let mut t_family: Vec<Element<S>> = Vec::new();
    if k == 1 {
        t_family.push(Element::identity(2));
    } else {
        t_family.push(Element::generator(2, w[0]));
        for j in 2..k {
            let mut word: Word = w[..j - 1].iter().map(|&x| hat(x)).collect();
            word.push(w[j - 1]);
            t_family.push(Element::word(2, &word));
        }
        let word: Word = w[..k - 1].iter().map(|&x| hat(x)).collect();
        t_family.push(Element::word(2, &word));
    }
    let mut img2 = Element::zero(2);
    for (sj, tj) in s_family.iter().zip(&t_family) {
        img2 = &img2 + &(sj * &tj.adjoint());
    }
    Morphism::new_unchecked(format!("std_endo({label})"), vec![last, img2])
}

/// The `O_3` endomorphism attached to the label `(1,2,1,3)`.
pub fn o3_label_fixture<S: Scalar>() -> Morphism<S> {
    let s = |l: &[u8], r: &[u8]| Element::<S>::s(3, l, r);
    let img3 = [
        s(&[3], &[1]),
        s(&[1, 3], &[2, 2]),
        s(&[1, 1], &[3, 2]),
        s(&[1, 2, 2], &[1, 2]),
        s(&[1, 2, 3], &[2, 3]),
        s(&[1, 2, 1, 1], &[3, 3]),
        s(&[1, 2, 1, 2], &[1, 3]),
    ]
    .iter()
    .fold(Element::zero(3), |a, b| &a + b);
    Morphism::new_unchecked(
        "std_endo(Rep(1,2,1,3))",
        vec![Element::word(3, &[1, 2, 1, 3]), Element::generator(3, 2), img3],
    )
    .expect("three images")
}

/// The contrasting endomorphism `s_1 -> s_{1,2}`, `s_2 -> s_{1,1;1} + s_{2;2}`.
pub fn contrast_endomorphism<S: Scalar>() -> Morphism<S> {
    let img2 = &Element::s(2, &[1, 1], &[1]) + &Element::s(2, &[2], &[2]);
    Morphism::new_unchecked("phi_contrast", vec![Element::word(2, &[1, 2]), img2]).expect("two")
}

/// Inhomogeneous fixture with `φ(s_1) = s_{1,2}`, `φ(s_2) = s_{2;1} + s_{1,1;2}`.
pub fn inhomogeneous_fixture_1<S: Scalar>() -> Morphism<S> {
    let outer = vec![Element::word(2, &[1, 2]), Element::generator(2, 2), Element::word(2, &[1, 1])];
    let inner = vec![Element::generator(2, 1), Element::generator(2, 2)];
    inhomogeneous_endomorphism(&outer, &inner).expect("valid fixture").named("inhom1")
}

/// Inhomogeneous fixture with `φ(s_1) = s_{1;1} + s_{2,1;2}`, `φ(s_2) = s_{2,2}`.
pub fn inhomogeneous_fixture_2<S: Scalar>() -> Morphism<S> {
    let outer = vec![Element::generator(2, 1), Element::word(2, &[2, 1]), Element::word(2, &[2, 2])];
    let parts = vec![
        vec![Element::generator(2, 1), Element::generator(2, 2)],
        vec![Element::identity(2)],
    ];
    general_endomorphism(&parts, &outer).expect("valid fixture").named("inhom2")
}

/// Resolves catalogue names such as `phi[1,4][2,3]`, `rho^2`, `psi_hom(2,3)`, `phi_sigma(2)`.
pub fn by_name<S: Scalar>(name: &str) -> Result<Morphism<S>> {
    let n = name.trim();
    let unknown = || Error::Unknown(n.to_string());
    let args = |s: &str| -> Result<Vec<usize>> {
        s.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse::<usize>().map_err(|_| unknown()))
            .collect()
    };
    if n == "id" || n == "phi_id" || n == "phi[]" {
        return second_order("");
    }
    if n == "rho" {
        return Ok(canonical_endomorphism(2));
    }
    if n == "alpha" {
        return Ok(alpha());
    }
    if let Some(rest) = n.strip_prefix("rho^") {
        let p: usize = rest.parse().map_err(|_| unknown())?;
        return Ok(rho_power(2, p));
    }
    if let Some(rest) = n.strip_prefix("phi_sigma_prime(").and_then(|r| r.strip_suffix(')')) {
        return phi_sigma_prime(args(rest)?.first().copied().ok_or_else(unknown)?);
    }
    if let Some(rest) = n.strip_prefix("phi_sigma(").and_then(|r| r.strip_suffix(')')) {
        return phi_sigma_multi(&args(rest)?);
    }
    if let Some(rest) = n.strip_prefix("phi_sigma[").and_then(|r| r.strip_suffix(']')) {
        return phi_sigma_multi(&args(rest)?);
    }
    if let Some(rest) = n.strip_prefix("hat_phi(").and_then(|r| r.strip_suffix(')')) {
        let k = args(rest)?.first().copied().ok_or_else(unknown)?;
        return hat_phi(k);
    }
    if let Some(rest) = n.strip_prefix("psi_hom(").and_then(|r| r.strip_suffix(')')) {
        let a = args(rest)?;
        if a.len() != 2 {
            return Err(unknown());
        }
        return homogeneous_embedding(a[0] as u8, a[1]);
    }
    if let Some(rest) = n.strip_prefix("cuntz(").and_then(|r| r.strip_suffix(')')) {
        return cuntz_embedding(args(rest)?.first().copied().ok_or_else(unknown)?);
    }
    if n == "inhom1" {
        return Ok(inhomogeneous_fixture_1());
    }
    if n == "inhom2" {
        return Ok(inhomogeneous_fixture_2());
    }
    if let Some(rest) = n.strip_prefix("std_endo(").and_then(|r| r.strip_suffix(')')) {
        let label = Label::parse(rest)?;
        return label_to_standard_endomorphism(&label);
    }
    if let Some(rest) = n.strip_prefix("phi") {
        if rest.starts_with('[') {
            let cyc = parse_cycles(rest).map_err(|_| unknown())?;
            let spec = PermutationSpec::from_cycles(2, 2, &cyc)?;
            return Ok(permutation_endomorphism::<S>(&spec).named(n));
        }
    }
    Err(unknown())
}
