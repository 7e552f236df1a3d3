//! Permutation representations of `O_d`: cycles, chains and the standard representation.

use crate::algebra::{words, Element, Word};
use crate::error::{pre, Error, Result};
use crate::morphisms::{homogeneous_embedding, phi_sigma, Morphism};
use crate::report::Report;
use crate::scalar::Scalar;
use num_complex::Complex64;
use std::collections::BTreeMap;
use std::fmt;

/// Cyclic label `Rep(i_0, ..., i_{κ-1}; z)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Label {
    pub d: u8,
    pub word: Word,
    pub z: Complex64,
}

/// Smallest `M` with `w` invariant under rotation by `M`.
pub fn primitive_period(w: &[u8]) -> usize {
    let k = w.len();
    (1..=k).find(|&m| k % m == 0 && (0..k).all(|i| w[i] == w[(i + m) % k])).unwrap_or(k)
}

/// True when `w` is a proper power of a shorter word.
pub fn is_periodic_word(w: &[u8]) -> bool {
    !w.is_empty() && primitive_period(w) < w.len()
}

/// Lexicographically smallest rotation.
pub fn min_rotation(w: &[u8]) -> Word {
    let k = w.len();
    (0..k)
        .map(|r| (0..k).map(|i| w[(i + r) % k]).collect::<Word>())
        .min()
        .unwrap_or_default()
}

impl Label {
    pub fn new(d: u8, word: Word) -> Self {
        Label { d, word, z: Complex64::new(1.0, 0.0) }
    }

    pub fn with_z(mut self, z: Complex64) -> Self {
        self.z = z;
        self
    }

    pub fn kappa(&self) -> usize {
        self.word.len()
    }

    pub fn is_periodic(&self) -> bool {
        is_periodic_word(&self.word)
    }

    pub fn period(&self) -> usize {
        primitive_period(&self.word)
    }

    pub fn canonical(&self) -> Label {
        Label { d: self.d, word: min_rotation(&self.word), z: self.z }
    }

    /// `i_k` with the index read modulo κ.
    pub fn letter(&self, k: i64) -> u8 {
        self.word[k.rem_euclid(self.kappa() as i64) as usize]
    }

    /// Parses `Rep(1,2;z=1)`, `Rep(1,2)`, `(1,2)` or `1,2`; `d` defaults to `max(2, max letter)`.
    pub fn parse(text: &str) -> Result<Label> {
        let t = text.trim();
        let t = t.strip_prefix("Rep").unwrap_or(t).trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let mut parts = t.split(';');
        let body = parts.next().unwrap_or("");
        let mut z = Complex64::new(1.0, 0.0);
        let mut d_opt = None;
        for opt in parts {
            let opt = opt.trim();
            if let Some(v) = opt.strip_prefix("z=") {
                z = parse_complex(v)?;
            } else if let Some(v) = opt.strip_prefix("d=") {
                d_opt = Some(v.trim().parse::<u8>().map_err(|_| perr(text, "bad d"))?);
            } else {
                return Err(perr(text, "unknown label option"));
            }
        }
        let word = body
            .split(',')
            .map(|x| x.trim().parse::<u8>().map_err(|_| perr(text, "bad letter")))
            .collect::<Result<Word>>()?;
        if word.is_empty() || word.contains(&0) {
            return Err(perr(text, "empty label or zero letter"));
        }
        let d = d_opt.unwrap_or_else(|| word.iter().copied().max().unwrap_or(2).max(2));
        if word.iter().any(|&x| x > d) {
            return Err(perr(text, "letter exceeds d"));
        }
        if ((z.norm() - 1.0).abs()) > 1e-12 {
            return Err(perr(text, "eigenvalue must have modulus 1"));
        }
        Ok(Label { d, word, z })
    }
}

fn perr(text: &str, msg: &str) -> Error {
    Error::Parse { pos: 0, msg: format!("{msg} in {text:?}") }
}

fn parse_complex(v: &str) -> Result<Complex64> {
    let v = v.trim();
    if let Ok(x) = v.parse::<f64>() {
        return Ok(Complex64::new(x, 0.0));
    }
    match v {
        "i" => Ok(Complex64::new(0.0, 1.0)),
        "-i" => Ok(Complex64::new(0.0, -1.0)),
        _ => Err(perr(v, "bad eigenvalue")),
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.word.iter().map(|x| x.to_string()).collect();
        write!(f, "Rep({}", w.join(","))?;
        if (self.z - Complex64::new(1.0, 0.0)).norm() > 1e-15 {
            write!(f, ";z={}", self.z)?;
        }
        write!(f, ")")
    }
}

/// Eventually periodic sequence `{i_k}_{k>=0}`: a finite prefix followed by a repeated block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainSpec {
    pub d: u8,
    pub prefix: Word,
    pub cycle: Word,
}

impl ChainSpec {
    pub fn new(d: u8, prefix: Word, cycle: Word) -> Result<Self> {
        if cycle.is_empty() {
            return pre("chain cycle must be nonempty");
        }
        if prefix.iter().chain(&cycle).any(|&x| x < 1 || x > d) {
            return pre("chain letter out of range");
        }
        Ok(ChainSpec { d, prefix, cycle })
    }

    /// `i_k` for `k >= 0`; indices below zero read as 1.
    pub fn letter(&self, k: i64) -> u8 {
        if k < 0 {
            return 1;
        }
        let k = k as usize;
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// The shifted sequence `{i_{k+m}}`.
    pub fn shift(&self, m: usize) -> ChainSpec {
        if m <= self.prefix.len() {
            return ChainSpec { d: self.d, prefix: self.prefix[m..].to_vec(), cycle: self.cycle.clone() };
        }
        let r = (m - self.prefix.len()) % self.cycle.len();
        let c = self.cycle.len();
        let cycle = (0..c).map(|i| self.cycle[(i + r) % c]).collect();
        ChainSpec { d: self.d, prefix: vec![], cycle }
    }

    /// Parses `Rep(prefix|cycle)`, e.g. `Rep(2,1|1)` or `Rep(|1,2)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        let t = t.strip_prefix("Rep").unwrap_or(t).trim();
        let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
        let (a, b) = t.split_once('|').ok_or_else(|| perr(text, "missing '|'"))?;
        let read = |s: &str| -> Result<Word> {
            s.split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<u8>().map_err(|_| perr(text, "bad letter")))
                .collect()
        };
        let prefix = read(a)?;
        let cycle = read(b)?;
        let d = prefix.iter().chain(&cycle).copied().max().unwrap_or(2).max(2);
        ChainSpec::new(d, prefix, cycle)
    }
}

impl fmt::Display for ChainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = |w: &[u8]| w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "Rep({}|{})", j(&self.prefix), j(&self.cycle))
    }
}

/// Tail equivalence of eventually periodic sequences.
pub fn tail_equivalent(a: &ChainSpec, b: &ChainSpec) -> bool {
    let pa = &a.cycle[..primitive_period(&a.cycle)];
    let pb = &b.cycle[..primitive_period(&b.cycle)];
    pa.len() == pb.len() && min_rotation(pa) == min_rotation(pb)
}

/// Basis label `e_{λ,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Basis {
    pub lambda: i64,
    pub m: u64,
}

impl Basis {
    pub fn new(lambda: i64, m: u64) -> Self {
        Basis { lambda, m }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{},{}]", self.lambda, self.m)
    }
}

/// Finitely supported vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket<S: Scalar> {
    pub amps: BTreeMap<Basis, S>,
}

impl<S: Scalar> Ket<S> {
    pub fn zero() -> Self {
        Ket { amps: BTreeMap::new() }
    }
    pub fn basis(b: Basis) -> Self {
        let mut k = Self::zero();
        k.add(b, S::one());
        k
    }
    pub fn add(&mut self, b: Basis, c: S) {
        if c.is_zero() {
            return;
        }
        let nv = match self.amps.remove(&b) {
            Some(v) => v + c,
            None => c,
        };
        if !nv.is_zero() {
            self.amps.insert(b, nv);
        }
    }
    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }
    pub fn approx_eq(&self, o: &Self) -> bool {
        let mut diff = self.clone();
        for (b, c) in &o.amps {
            diff.add(*b, -c.clone());
        }
        diff.is_zero()
    }
    pub fn inner(&self, o: &Self) -> S {
        let mut s = S::zero();
        for (b, c) in &self.amps {
            if let Some(v) = o.amps.get(b) {
                s = s + c.conj() * v.clone();
            }
        }
        s
    }
    pub fn scale(&self, c: &S) -> Self {
        let mut k = Self::zero();
        for (b, v) in &self.amps {
            k.add(*b, v.clone() * c.clone());
        }
        k
    }
    pub fn plus(&self, o: &Self) -> Self {
        let mut k = self.clone();
        for (b, c) in &o.amps {
            k.add(*b, c.clone());
        }
        k
    }
}

impl<S: Scalar> fmt::Display for Ket<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.amps.iter().map(|(b, c)| (c.to_string(), b.to_string()));
        write!(f, "{}", crate::algebra::render_sum(items))
    }
}

#[derive(Clone, Debug)]
pub enum RepKind<S: Scalar> {
    Cycle { label: Label, zroot: S },
    Chain(ChainSpec),
    Standard,
}

/// Permutation representation of `O_d`.
#[derive(Clone, Debug)]
pub struct PermRep<S: Scalar> {
    pub d: u8,
    pub kind: RepKind<S>,
}

fn overflow(what: &str) -> Error {
    Error::Overflow(format!("basis index overflow in {what}"))
}

fn step(d: u8, m: u64, i: u8) -> Result<u64> {
    (d as u64)
        .checked_mul(m - 1)
        .and_then(|x| x.checked_add(i as u64))
        .filter(|&x| x < (1u64 << 63))
        .ok_or_else(|| overflow("d(m-1)+i"))
}

impl<S: Scalar> PermRep<S> {
    pub fn standard(d: u8) -> Self {
        PermRep { d, kind: RepKind::Standard }
    }

    /// Cycle representation; `z^{1/κ}` is the principal root.
    pub fn cycle(label: &Label) -> Result<Self> {
        let k = label.kappa() as f64;
        let root = Complex64::from_polar(1.0, label.z.arg() / k);
        let root = if (root - Complex64::new(1.0, 0.0)).norm() < 1e-15 {
            Complex64::new(1.0, 0.0)
        } else {
            root
        };
        let zroot = S::from_c64(root)
            .ok_or_else(|| Error::Precondition(format!("z^(1/κ) of {label} not exact in this backend")))?;
        Ok(PermRep { d: label.d, kind: RepKind::Cycle { label: label.clone(), zroot } })
    }

    pub fn chain(spec: &ChainSpec) -> Self {
        PermRep { d: spec.d, kind: RepKind::Chain(spec.clone()) }
    }

    pub fn name(&self) -> String {
        match &self.kind {
            RepKind::Cycle { label, .. } => label.to_string(),
            RepKind::Chain(c) => c.to_string(),
            RepKind::Standard => "pi_s".to_string(),
        }
    }

    /// `π(s_i) e_{λ,m}` as `(basis, amplitude)`.
    pub fn act_generator(&self, i: u8, v: Basis) -> Result<(Basis, S)> {
        let d = self.d;
        if i < 1 || i > d {
            return pre(format!("generator index {i} outside 1..{d}"));
        }
        match &self.kind {
            RepKind::Standard => Ok((Basis::new(0, step(d, v.m, i)?), S::one())),
            RepKind::Cycle { label, zroot } => {
                let k = label.kappa() as i64;
                let target = (v.lambda - 1).rem_euclid(k);
                if v.m >= 2 {
                    return Ok((Basis::new(target, step(d, v.m, i)?), S::one()));
                }
                let il = label.letter(v.lambda - 1);
                Ok(if i < il {
                    (Basis::new(target, i as u64 + 1), S::one())
                } else if i == il {
                    (Basis::new(target, 1), zroot.clone())
                } else {
                    (Basis::new(target, i as u64), S::one())
                })
            }
            RepKind::Chain(spec) => {
                let target = v.lambda - 1;
                if v.lambda <= 0 || v.m >= 2 {
                    return Ok((Basis::new(target, step(d, v.m, i)?), S::one()));
                }
                let il = spec.letter(v.lambda - 1);
                Ok(if i < il {
                    (Basis::new(target, i as u64 + 1), S::one())
                } else if i == il {
                    (Basis::new(target, 1), S::one())
                } else {
                    (Basis::new(target, i as u64), S::one())
                })
            }
        }
    }

    /// `π(s_i)^* e_{μ,m'}`; `None` when it vanishes.
    pub fn act_generator_adjoint(&self, i: u8, v: Basis) -> Result<Option<(Basis, S)>> {
        let d = self.d as u64;
        if i < 1 || i as u64 > d {
            return pre(format!("generator index {i} outside 1..{d}"));
        }
        let mp = v.m;
        // Source of `m' > d` is always `e_{λ+1, (m'-i)/d + 1}` with `i = ((m'-1) mod d) + 1`.
        let generic = |lam: i64| -> Option<(Basis, S)> {
            let ii = ((mp - 1) % d) as u8 + 1;
            (ii == i).then(|| (Basis::new(lam, (mp - ii as u64) / d + 1), S::one()))
        };
        match &self.kind {
            RepKind::Standard => Ok(generic(0)),
            RepKind::Cycle { label, zroot } => {
                let k = label.kappa() as i64;
                let src = (v.lambda + 1).rem_euclid(k);
                let il = label.letter(v.lambda) as u64;
                Ok(cycle_like_adjoint(i, mp, d, il, src, zroot.conj(), generic))
            }
            RepKind::Chain(spec) => {
                let src = v.lambda + 1;
                if src <= 0 {
                    return Ok(generic(src));
                }
                let il = spec.letter(v.lambda) as u64;
                Ok(cycle_like_adjoint(i, mp, d, il, src, S::one(), generic))
            }
        }
    }

    pub fn act_generator_ket(&self, i: u8, v: &Ket<S>) -> Result<Ket<S>> {
        let mut out = Ket::zero();
        for (b, c) in &v.amps {
            let (nb, a) = self.act_generator(i, *b)?;
            out.add(nb, a * c.clone());
        }
        Ok(out)
    }

    pub fn act_adjoint_ket(&self, i: u8, v: &Ket<S>) -> Result<Ket<S>> {
        let mut out = Ket::zero();
        for (b, c) in &v.amps {
            if let Some((nb, a)) = self.act_generator_adjoint(i, *b)? {
                out.add(nb, a * c.clone());
            }
        }
        Ok(out)
    }

    /// `π(x) v`.
    pub fn act_element(&self, x: &Element<S>, v: &Ket<S>) -> Result<Ket<S>> {
        if x.d() != self.d {
            return Err(Error::Dimension(x.d() as usize, self.d as usize));
        }
        let mut out = Ket::zero();
        for ((l, r), c) in x.terms() {
            let mut k = v.clone();
            for &j in r.iter().rev() {
                k = self.act_adjoint_ket(j, &k)?;
                if k.is_zero() {
                    break;
                }
            }
            for &i in l.iter().rev() {
                if k.is_zero() {
                    break;
                }
                k = self.act_generator_ket(i, &k)?;
            }
            out = out.plus(&k.scale(c));
        }
        Ok(out)
    }

    /// `(π ∘ m)(x) v`.
    pub fn act_composed(&self, m: &Morphism<S>, x: &Element<S>, v: &Ket<S>) -> Result<Ket<S>> {
        self.act_element(&m.apply(x)?, v)
    }

    /// Basis vector with flat index `n`, using `e_{κ(m-1)+λ+1} = e_{λ,m}`.
    pub fn basis_of_index(&self, n: u64) -> Basis {
        match &self.kind {
            RepKind::Cycle { label, .. } => {
                let k = label.kappa() as u64;
                Basis::new(((n - 1) % k) as i64, (n - 1) / k + 1)
            }
            _ => Basis::new(0, n),
        }
    }

    pub fn index_of_basis(&self, b: Basis) -> Option<u64> {
        match &self.kind {
            RepKind::Cycle { label, .. } => {
                Some(label.kappa() as u64 * (b.m - 1) + b.lambda as u64 + 1)
            }
            RepKind::Standard => Some(b.m),
            RepKind::Chain(_) => None,
        }
    }
}

fn cycle_like_adjoint<S: Scalar>(
    i: u8,
    mp: u64,
    d: u64,
    il: u64,
    src: i64,
    zbar_root: S,
    generic: impl Fn(i64) -> Option<(Basis, S)>,
) -> Option<(Basis, S)> {
    let i = i as u64;
    if mp == 1 {
        (i == il).then(|| (Basis::new(src, 1), zbar_root))
    } else if mp <= d {
        let want = if mp <= il { mp - 1 } else { mp };
        (i == want).then(|| (Basis::new(src, 1), S::one()))
    } else {
        generic(src)
    }
}

/// Eigen-relation found by [`find_cycle_eigenvectors`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenHit {
    pub word: Word,
    pub index: u64,
}

/// Basis vectors `e_n` (`n <= search_depth`) with `(π∘φ)(s_w) e_n = e_n` for a nonperiodic `w`
/// of length at most `max_len`, each reported with its shortest such word.
pub fn find_cycle_eigenvectors<S: Scalar>(
    rep: &PermRep<S>,
    morphism: &Morphism<S>,
    max_len: usize,
    search_depth: u64,
) -> Result<Vec<EigenHit>> {
    let d = morphism.source_d() as u8;
    let gens: Vec<Element<S>> =
        (1..=d).map(|i| morphism.apply(&Element::generator(d, i))).collect::<Result<_>>()?;
    let mut hits = Vec::new();
    for n in 1..=search_depth {
        let e = Ket::basis(rep.basis_of_index(n));
        'len: for len in 1..=max_len {
            for w in words(d, len) {
                if is_periodic_word(&w) {
                    continue;
                }
                let mut k = e.clone();
                for &i in w.iter().rev() {
                    k = rep.act_element(&gens[i as usize - 1], &k)?;
                }
                if k.approx_eq(&e) {
                    hits.push(EigenHit { word: w, index: n });
                    break 'len;
                }
            }
        }
    }
    Ok(hits)
}

/// Möbius function.
pub fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut r = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            r = -r;
        }
        p += 1;
    }
    if n > 1 {
        r = -r;
    }
    r
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// `C_n` from `sum_{k|n} k C_k = 2^n`.
pub fn necklace_count(n: u64) -> Result<u128> {
    if n == 0 || n > 120 {
        return pre("necklace_count needs 1 <= n <= 120");
    }
    let mut c = vec![0u128; n as usize + 1];
    for m in 1..=n {
        let mut s: u128 = 1u128 << m;
        for k in divisors(m) {
            if k < m {
                s -= k as u128 * c[k as usize];
            }
        }
        c[m as usize] = s / m as u128;
    }
    Ok(c[n as usize])
}

/// `C_n = (1/n) sum_{k|n} μ(n/k) 2^k`.
pub fn necklace_count_closed(n: u64) -> Result<u128> {
    if n == 0 || n > 120 {
        return pre("necklace_count needs 1 <= n <= 120");
    }
    let mut s: i128 = 0;
    for k in divisors(n) {
        s += mobius(n / k) as i128 * (1i128 << k);
    }
    Ok((s / n as i128) as u128)
}

/// `B_p = sum_{n|p} C_n`.
pub fn branching_number(p: u64) -> Result<u128> {
    divisors(p).into_iter().map(necklace_count).sum()
}

/// Nonperiodic binary labels (minimal rotations) whose length divides `p`.
pub fn enumerate_branch_labels(p: usize) -> Vec<Label> {
    let mut out = Vec::new();
    for k in 1..=p {
        if p % k != 0 {
            continue;
        }
        for w in words(2, k) {
            if !is_periodic_word(&w) && min_rotation(&w) == w {
                out.push(Label::new(2, w));
            }
        }
    }
    out
}

/// `N(L, λ)` of the eigenvector of `π_s ∘ φ_{σ_p}` attached to rotation `λ` of `L`.
pub fn branch_index(label: &Label, lambda: usize, p: usize) -> u64 {
    let k = label.kappa();
    let mut s = 0u64;
    for l in 1..=k {
        s += (label.letter((lambda + l - 1) as i64) as u64 - 1) << (l - 1);
    }
    ((1u64 << p) - 1) / ((1u64 << k) - 1) * s + 1
}

/// Rotation `(i_λ, ..., i_{κ-1}, i_0, ..., i_{λ-1})`.
pub fn rotation(label: &Label, lambda: usize) -> Word {
    let k = label.kappa();
    (0..k).map(|i| label.word[(lambda + i) % k]).collect()
}

/// Certifies every label of `IPR_p` by direct action of `π_s ∘ φ_{σ_p}` at `N(L, λ)`.
pub fn branching_check<S: Scalar>(p: usize) -> Result<Report> {
    let mut rep = Report::new(format!("branching(p={p})"));
    let labels = enumerate_branch_labels(p);
    let b = branching_number(p as u64)?;
    rep.check(format!("B_{p}"), labels.len() as u128 == b, format!("B_{p} = {b}, labels = {}", labels.len()));
    let phi = phi_sigma::<S>(p)?;
    let pis = PermRep::<S>::standard(2);
    let mut covered = 0u64;
    for l in &labels {
        for lam in 0..l.kappa() {
            let n = branch_index(l, lam, p);
            let w = rotation(l, lam);
            let e = Ket::basis(Basis::new(0, n));
            let x = phi.apply(&Element::word(2, &w))?;
            let got = pis.act_element(&x, &e)?;
            rep.check_with(format!("{l} λ={lam} e_{n}"), got.approx_eq(&e), || format!("got {got}"));
            covered += 1;
        }
    }
    rep.check(
        "eigenvector count",
        covered == 1u64 << p,
        format!("{covered} eigenvectors for 2^{p} = {}", 1u64 << p),
    );
    Ok(rep)
}

/// `π_s^{(q)} = π_s^{(1)} ∘ Ψ_q` on sampled vectors and the `ĩ_0` eigen-monomial mapping.
pub fn restriction_reduction_check<S: Scalar>(d: u8, q: usize, i0: u8, samples: u64) -> Result<Report> {
    let mut rep = Report::new(format!("reduction(d={d},q={q},i0={i0})"));
    let psi = homogeneous_embedding::<S>(d, q)?;
    let dq = (d as usize).pow(q as u32);
    if dq > 255 {
        return Err(Error::Overflow("d^q exceeds 255".into()));
    }
    let small = PermRep::<S>::standard(d);
    let big = PermRep::<S>::standard(dq as u8);
    for n in 1..=samples {
        for i in 1..=dq as u8 {
            let e = Ket::basis(Basis::new(0, n));
            let lhs = small.act_composed(&psi, &Element::generator(dq as u8, i), &e)?;
            let rhs = big.act_generator_ket(i, &e)?;
            rep.check_with(format!("s'_{i} e_{n}"), lhs.approx_eq(&rhs), || format!("{lhs} vs {rhs}"));
        }
    }
    let ti = ((d as usize).pow(q as u32) - 1) / (d as usize - 1) * (i0 as usize - 1) + 1;
    let img = psi.image(ti).clone();
    let want = Element::word(d, &vec![i0; q]);
    rep.check(format!("Psi_q(s'_{ti}) = s_{i0}^{q}"), img.equals(&want), format!("ĩ0 = {ti}"));
    let rep_i0 = PermRep::<S>::cycle(&Label::new(d, vec![i0]))?;
    let e = Ket::basis(Basis::new(0, 1));
    let got = rep_i0.act_element(&img, &e)?;
    rep.check_with("e_1 eigenvector of pi_i0(Psi_q(s'_ĩ0))", got.approx_eq(&e), || got.to_string());
    Ok(rep)
}
