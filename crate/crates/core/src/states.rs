//! Fock and Fock-like representations of the CAR algebra, the branch mixtures `ω` built from
//! `π_s ∘ φ_{σ_p} ∘ Φ_{SR_1}`, quasi-free states and the KMS condition.

use crate::algebra::Element;
use crate::car::poly::{CarKey, CarPoly};
use crate::car::transport::to_cuntz;
use crate::error::{pre, Result};
use crate::morphisms::{phi_sigma, Morphism};
use crate::perm_reps::{Basis, ChainSpec, Ket, Label, PermRep};
use crate::report::Report;
use crate::rfs::Rfs;
use crate::scalar::{Cplx, Scalar};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeMap;
use std::fmt;

/// Finite set of occupied modes; mode `n` is bit `n - 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Occupation(pub u64);

impl Occupation {
    pub fn vacuum() -> Self {
        Occupation(0)
    }

    pub fn from_modes(modes: &[usize]) -> Result<Self> {
        let mut b = 0u64;
        for &n in modes {
            if !(1..=64).contains(&n) {
                return pre(format!("mode {n} outside 1..=64"));
            }
            b |= 1 << (n - 1);
        }
        Ok(Occupation(b))
    }

    pub fn modes(&self) -> Vec<usize> {
        (1..=64).filter(|n| self.0 >> (n - 1) & 1 == 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn contains(&self, n: usize) -> bool {
        (1..=64).contains(&n) && self.0 >> (n - 1) & 1 == 1
    }

    /// `N(n_1..n_k) = 1 + sum 2^{n_i - 1}`.
    pub fn index(&self) -> Option<u64> {
        self.0.checked_add(1)
    }

    pub fn from_index(n: u64) -> Option<Self> {
        n.checked_sub(1).map(Occupation)
    }
}

impl fmt::Display for Occupation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m: Vec<String> = self.modes().iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", m.join(","))
    }
}

/// Finitely supported vector in the Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct FockKet<S: Scalar> {
    pub amps: BTreeMap<Occupation, S>,
}

impl<S: Scalar> FockKet<S> {
    pub fn zero() -> Self {
        FockKet { amps: BTreeMap::new() }
    }

    pub fn vacuum() -> Self {
        Self::basis(Occupation::vacuum())
    }

    pub fn basis(o: Occupation) -> Self {
        let mut k = Self::zero();
        k.add(o, S::one());
        k
    }

    pub fn add(&mut self, o: Occupation, c: S) {
        let nv = match self.amps.remove(&o) {
            Some(v) => v + c,
            None => c,
        };
        if !nv.is_zero() {
            self.amps.insert(o, nv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.amps.is_empty()
    }

    /// `<self|o>`, antilinear in `self`.
    pub fn inner(&self, o: &Self) -> S {
        self.amps
            .iter()
            .filter_map(|(b, c)| o.amps.get(b).map(|v| c.conj() * v.clone()))
            .fold(S::zero(), |a, x| a + x)
    }

    pub fn approx_eq(&self, o: &Self) -> bool {
        let mut d = self.clone();
        for (b, c) in &o.amps {
            d.add(*b, -c.clone());
        }
        d.is_zero()
    }

    /// Same vector in the basis `e_N` of the standard representation of `O_2`.
    pub fn to_ket(&self) -> Result<Ket<S>> {
        let mut k = Ket::zero();
        for (o, c) in &self.amps {
            let n = o.index().ok_or_else(|| crate::Error::Overflow("occupation index".into()))?;
            k.add(Basis::new(0, n), c.clone());
        }
        Ok(k)
    }

    pub fn from_ket(k: &Ket<S>) -> Result<Self> {
        let mut f = Self::zero();
        for (b, c) in &k.amps {
            if b.lambda != 0 {
                return pre("ket is not in the standard representation");
            }
            let o = Occupation::from_index(b.m).ok_or_else(|| crate::Error::Precondition("index 0".into()))?;
            f.add(o, c.clone());
        }
        Ok(f)
    }
}

impl<S: Scalar> fmt::Display for FockKet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self.amps.iter().map(|(o, c)| (c.to_string(), format!("|{o}>")));
        write!(f, "{}", crate::algebra::render_sum(items))
    }
}

fn below(bits: u64, n: usize) -> u32 {
    (bits & ((1u64 << (n - 1)) - 1)).count_ones()
}

/// `(sign, occupation)` of a normal-ordered monomial applied to a basis vector.
fn apply_key(key: CarKey, o: Occupation) -> Option<(bool, Occupation)> {
    let (dag, ann) = key;
    let mut b = o.0;
    let mut neg = false;
    for n in (1..=64).rev().filter(|n| ann >> (n - 1) & 1 == 1) {
        if b >> (n - 1) & 1 == 0 {
            return None;
        }
        neg ^= below(b, n) % 2 == 1;
        b &= !(1 << (n - 1));
    }
    for n in (1..=64).rev().filter(|n| dag >> (n - 1) & 1 == 1) {
        if b >> (n - 1) & 1 == 1 {
            return None;
        }
        neg ^= below(b, n) % 2 == 1;
        b |= 1 << (n - 1);
    }
    Some((neg, Occupation(b)))
}

/// Fock action with `a_n^* |o> = (-1)^{#{k in o, k < n}} |o ∪ {n}>`.
pub fn fock_apply<S: Scalar>(x: &CarPoly<S>, v: &FockKet<S>) -> FockKet<S> {
    let mut out = FockKet::zero();
    for (&key, c) in x.terms() {
        for (&o, a) in &v.amps {
            if let Some((neg, o2)) = apply_key(key, o) {
                let amp = c.clone() * a.clone();
                out.add(o2, if neg { -amp } else { amp });
            }
        }
    }
    out
}

/// `<vac| x |vac>`.
pub fn vacuum_expectation<S: Scalar>(x: &CarPoly<S>) -> S {
    x.terms().get(&(0, 0)).cloned().unwrap_or_else(S::zero)
}

/// Compares [`fock_apply`] with `π_s(Φ_{SR_1}(x))` on `v`.
pub fn fock_transport_agrees<S: Scalar>(x: &CarPoly<S>, v: &FockKet<S>) -> Result<bool> {
    let direct = fock_apply(x, v);
    let y = to_cuntz(x)?;
    let via = PermRep::<S>::standard(2).act_element(&y, &v.to_ket()?)?;
    Ok(direct.to_ket()?.approx_eq(&via))
}

/// Mode-wise map `a_n -> ± a_n` or `± a_n^*`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bogoliubov {
    pub name: String,
    /// `(negate, dagger)` for modes `1..=len`.
    map: Vec<(bool, bool)>,
}

impl Bogoliubov {
    pub fn new(name: impl Into<String>, map: Vec<(bool, bool)>) -> Self {
        Bogoliubov { name: name.into(), map }
    }

    pub fn identity(n_max: usize) -> Self {
        Bogoliubov::new("id", vec![(false, false); n_max])
    }

    pub fn mode_max(&self) -> usize {
        self.map.len()
    }

    pub fn entry(&self, n: usize) -> Option<(bool, bool)> {
        n.checked_sub(1).and_then(|i| self.map.get(i)).copied()
    }

    /// `φ_{i_0}` on `p` modes per block: mode `p(m-1)+j` is daggered when `i_{0,j} = 2`.
    pub fn phi_i0(p: usize, i0: usize, n_max: usize) -> Self {
        let map = (1..=n_max).map(|n| (false, (i0 - 1) >> ((n - 1) % p) & 1 == 1)).collect();
        Bogoliubov::new(format!("phi_{i0}(p={p})"), map)
    }

    /// `φ_{L,λ}` of a cyclic label, with the signs `(-1)^{N_{λ,n-1}}`.
    pub fn phi_label(label: &Label, lambda: usize, n_max: usize) -> Self {
        let k = label.kappa();
        let letter = |r: usize| label.letter((lambda + r) as i64);
        let map = (1..=n_max)
            .map(|n| {
                let l = (n - 1) % k + 1;
                let twos = (0..n - 1).filter(|&r| letter(r) == 2).count();
                (twos % 2 == 1, letter(l - 1) == 2)
            })
            .collect();
        Bogoliubov::new(format!("phi_{label},{lambda}"), map)
    }

    /// `φ_{L_∞,λ}` of a chain, with the signs `(-1)^{N_{λ,n}}`.
    pub fn phi_chain(spec: &ChainSpec, lambda: i64, n_max: usize) -> Self {
        let letter = |r: usize| spec.letter(lambda + r as i64);
        let map = (1..=n_max)
            .map(|n| {
                let twos = (0..n.saturating_sub(1)).filter(|&r| letter(r) == 2).count();
                (twos % 2 == 1, letter(n - 1) == 2)
            })
            .collect();
        Bogoliubov::new(format!("phi_{spec},{lambda}"), map)
    }

    pub fn image(&self, n: usize) -> Result<CarPoly<Cplx>> {
        self.image_in(n)
    }

    pub fn image_in<S: Scalar>(&self, n: usize) -> Result<CarPoly<S>> {
        let Some((neg, dag)) = self.entry(n) else {
            return pre(format!("{} is known only up to mode {}", self.name, self.mode_max()));
        };
        let x = if dag { CarPoly::a_dag(n) } else { CarPoly::a(n) };
        Ok(if neg { -x } else { x })
    }

    pub fn apply<S: Scalar>(&self, x: &CarPoly<S>) -> Result<CarPoly<S>> {
        if x.max_mode() > self.mode_max() {
            return pre(format!("{} is known only up to mode {}", self.name, self.mode_max()));
        }
        Ok(x.substitute(|n| self.image_in(n).expect("mode checked")))
    }
}

/// A candidate vacuum of a restricted representation.
#[derive(Clone, Debug)]
pub struct Vacuum {
    pub basis: Basis,
    pub bogoliubov: Bogoliubov,
}

/// Vacua `e_{λ,1}` of `Rep(L; z)` restricted through `Φ_{SR_1}`, one per rotation.
pub fn cycle_vacua(label: &Label, n_max: usize) -> Vec<Vacuum> {
    (0..label.kappa())
        .map(|l| Vacuum { basis: Basis::new(l as i64, 1), bogoliubov: Bogoliubov::phi_label(label, l, n_max) })
        .collect()
}

/// Vacua `e_{λ,1}` of a chain representation for the given `λ`.
pub fn chain_vacua(spec: &ChainSpec, lambdas: &[i64], n_max: usize) -> Vec<Vacuum> {
    lambdas
        .iter()
        .map(|&l| Vacuum { basis: Basis::new(l, 1), bogoliubov: Bogoliubov::phi_chain(spec, l, n_max) })
        .collect()
}

fn subsets(n_max: usize, max_size: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n_max)
        .filter(|b| b.count_ones() as usize <= max_size)
        .map(|b| (1..=n_max).filter(|n| b >> (n - 1) & 1 == 1).collect())
        .collect()
}

/// `π(Φ_R(φ(a_n))) e = 0` for every vacuum and `n <= n_max`, and orthogonality of the sectors
/// spanned by `π(Φ_R(φ(a^*_{n_1} .. a^*_{n_r}))) e` with `n_i <= sample_modes`.
pub fn phi_fock_vacuum_check<S: Scalar>(
    rep: &PermRep<S>,
    rfs: &Rfs<S>,
    vacua: &[Vacuum],
    n_max: usize,
    sample_modes: usize,
) -> Result<Report> {
    let mut report = Report::new(format!("vacua/{}/{}", rep.name(), rfs.name));
    let mut sectors: Vec<Vec<Ket<S>>> = Vec::new();
    for v in vacua {
        let e = Ket::basis(v.basis);
        for n in 1..=n_max {
            let y = rfs.embed(&v.bogoliubov.image_in::<S>(n)?)?;
            let got = rep.act_element(&y, &e)?;
            report.check_with(format!("{} {} a_{n}", v.basis, v.bogoliubov.name), got.is_zero(), || {
                format!("{got}")
            });
        }
        let mut vecs = Vec::new();
        for set in subsets(sample_modes.min(n_max), sample_modes) {
            let mut x = CarPoly::<S>::identity();
            for &n in &set {
                x = &x * &v.bogoliubov.image_in::<S>(n)?.adjoint();
            }
            vecs.push(rep.act_element(&rfs.embed(&x)?, &e)?);
        }
        let normalized = vecs.iter().all(|k| k.inner(k).is_one());
        report.check(format!("{} sample vectors normalized", v.basis), normalized, "");
        sectors.push(vecs);
    }
    for a in 0..sectors.len() {
        for b in a + 1..sectors.len() {
            let ortho = sectors[a].iter().all(|x| sectors[b].iter().all(|y| x.inner(y).is_zero()));
            report.check(format!("{} ⊥ {}", vacua[a].basis, vacua[b].basis), ortho, "overlap found");
        }
    }
    Ok(report)
}

/// `(π_s ∘ φ_{σ_p} ∘ Φ_{SR_1})(φ_{i_0}(a_n)) e_{i_0} = 0` for all `i_0 <= 2^p`.
///
/// With `wrong = true`, the Bogoliubov map of `i_0` is replaced by that of `i_0 + 1` (cyclically);
/// the report then records the nonzero results, each as a failure.
pub fn branch_fock_check<S: Scalar>(p: usize, n_max: usize, wrong: bool) -> Result<Report> {
    if !(1..=4).contains(&p) {
        return pre("branch_fock_check needs 1 <= p <= 4");
    }
    let phi = phi_sigma::<S>(p)?;
    let pis = PermRep::<S>::standard(2);
    let mut report = Report::new(format!("branch_fock(p={p})"));
    let np = 1usize << p;
    for i0 in 1..=np {
        let which = if wrong { i0 % np + 1 } else { i0 };
        let bog = Bogoliubov::phi_i0(p, which, n_max);
        let e = Ket::basis(Basis::new(0, i0 as u64));
        for n in 1..=n_max {
            let y = phi.apply(&to_cuntz(&bog.image_in::<S>(n)?)?)?;
            let got = pis.act_element(&y, &e)?;
            report.check_with(format!("e_{i0} {} a_{n}", bog.name), got.is_zero(), || got.to_string());
        }
    }
    Ok(report)
}

/// `λ_j = 1 / (1 + exp(β ε_j))`.
pub fn kms_lambdas(beta: f64, eps: &[f64]) -> Vec<f64> {
    eps.iter().map(|e| 1.0 / (1.0 + (beta * e).exp())).collect()
}

fn block_index(p: usize, n: usize) -> usize {
    (n - 1) % p
}

/// A state of the CAR algebra, evaluated on polynomials.
pub trait CarState {
    fn omega(&self, x: &CarPoly<Cplx>) -> Result<Complex64>;
    /// `p` of the mode pattern `n = p(m-1) + j`.
    fn p(&self) -> usize;
    fn lambdas(&self) -> &[f64];
}

fn check_lambdas(lambdas: &[f64]) -> Result<()> {
    if lambdas.is_empty() || lambdas.len() > 6 {
        return pre("need 1..=6 parameters λ_j");
    }
    if lambdas.iter().any(|l| !(0.0..=1.0).contains(l)) {
        return pre("every λ_j must lie in [0, 1]");
    }
    Ok(())
}

/// `ω = sum_{i_0} Λ_{i_0} ω_{i_0}` with `Λ_{i_0} = prod_j Λ_{j, i_{0,j}}` and `ω_{i_0}` the vacuum
/// state of `Fock ∘ φ_{i_0}`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiFockState {
    pub lambdas: Vec<f64>,
}

impl QuasiFockState {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        check_lambdas(&lambdas)?;
        Ok(QuasiFockState { lambdas })
    }

    /// `Λ_{i_0}`.
    pub fn weight(&self, i0: usize) -> f64 {
        self.lambdas
            .iter()
            .enumerate()
            .map(|(j, &l)| if (i0 - 1) >> j & 1 == 1 { l } else { 1.0 - l })
            .product()
    }

    /// `ω_{i_0}(x)`.
    pub fn omega_pure(&self, i0: usize, x: &CarPoly<Cplx>) -> Result<Complex64> {
        let bog = Bogoliubov::phi_i0(self.p(), i0, x.max_mode().max(1));
        Ok(vacuum_expectation(&bog.apply(x)?).0)
    }

    /// `<Ω| (π_s ∘ φ_{σ_p} ∘ Φ_{SR_1})(x) Ω>` with `Ω = sum sqrt(Λ_{i_0}) e_{i_0}`.
    pub fn omega_branch(&self, x: &CarPoly<Cplx>) -> Result<Complex64> {
        let p = self.p();
        let phi: Morphism<Cplx> = phi_sigma(p)?;
        let pis = PermRep::<Cplx>::standard(2);
        let mut omega = Ket::zero();
        for i0 in 1..=1usize << p {
            omega.add(Basis::new(0, i0 as u64), Cplx::real(self.weight(i0).sqrt()));
        }
        let y: Element<Cplx> = phi.apply(&to_cuntz(x)?)?;
        let img = pis.act_element(&y, &omega)?;
        Ok(omega.inner(&img).0)
    }
}

impl CarState for QuasiFockState {
    fn omega(&self, x: &CarPoly<Cplx>) -> Result<Complex64> {
        let mut s = Complex64::new(0.0, 0.0);
        for i0 in 1..=1usize << self.p() {
            let w = self.weight(i0);
            if w != 0.0 {
                s += w * self.omega_pure(i0, x)?;
            }
        }
        Ok(s)
    }
    fn p(&self) -> usize {
        self.lambdas.len()
    }
    fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// Gauge-invariant product state with `ω(a_n^* a_n) = λ_{j(n)}` on every mode independently.
#[derive(Clone, Debug, PartialEq)]
pub struct QuasiFreeState {
    pub lambdas: Vec<f64>,
}

impl QuasiFreeState {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        check_lambdas(&lambdas)?;
        Ok(QuasiFreeState { lambdas })
    }

    pub fn from_kms(beta: f64, eps: &[f64]) -> Result<Self> {
        Self::new(kms_lambdas(beta, eps))
    }
}

impl CarState for QuasiFreeState {
    fn omega(&self, x: &CarPoly<Cplx>) -> Result<Complex64> {
        let p = self.p();
        let mut s = Complex64::new(0.0, 0.0);
        for (&(d, a), c) in x.terms() {
            if d != a {
                continue;
            }
            let r = d.count_ones() as u64;
            let sign = if (r * r.saturating_sub(1) / 2) % 2 == 0 { 1.0 } else { -1.0 };
            let prob: f64 =
                (1..=64).filter(|n| d >> (n - 1) & 1 == 1).map(|n| self.lambdas[block_index(p, n)]).product();
            s += c.0 * sign * prob;
        }
        Ok(s)
    }
    fn p(&self) -> usize {
        self.lambdas.len()
    }
    fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }
}

/// `τ^{(0)}_{iβ}(y)`: each term scaled by `exp(-β (sum_{daggered} ε - sum_{plain} ε))`.
pub fn tau_imaginary(y: &CarPoly<Cplx>, beta: f64, eps: &[f64]) -> CarPoly<Cplx> {
    let p = eps.len();
    let mut out = CarPoly::zero();
    for (&(d, a), c) in y.terms() {
        let e = |mask: u64| -> f64 {
            (1..=64).filter(|n| mask >> (n - 1) & 1 == 1).map(|n| eps[block_index(p, n)]).sum()
        };
        let f = (-beta * (e(d) - e(a))).exp();
        out.add_term((d, a), Cplx(c.0 * f));
    }
    out
}

/// `|ω(X τ^{(0)}_{iβ}(Y)) - ω(Y X)|`.
pub fn kms_check(state: &dyn CarState, beta: f64, eps: &[f64], x: &CarPoly<Cplx>, y: &CarPoly<Cplx>) -> Result<f64> {
    if eps.len() != state.p() {
        return pre("one energy per mode class is required");
    }
    let lhs = state.omega(&(x * &tau_imaginary(y, beta, eps)))?;
    let rhs = state.omega(&(y * x))?;
    Ok((lhs - rhs).norm())
}

/// `|ω(XY) - ω(YX)|`.
pub fn trace_residual(state: &dyn CarState, x: &CarPoly<Cplx>, y: &CarPoly<Cplx>) -> Result<f64> {
    Ok((state.omega(&(x * y))? - state.omega(&(y * x))?).norm())
}

/// Every normal-ordered monomial (coefficient 1) in modes `1..=n_max`.
pub fn all_monomials(n_max: usize) -> Vec<CarPoly<Cplx>> {
    let full = 1u64 << n_max;
    let mut v = Vec::new();
    for d in 0..full {
        for a in 0..full {
            let mut x = CarPoly::zero();
            x.add_term((d, a), Cplx::real(1.0));
            v.push(x);
        }
    }
    v
}

/// Index classes `J_1` (`λ ∈ {0,1}`), `J_2` (`λ = 1/2`) and `J_3` (the rest), 1-based.
pub fn partition(lambdas: &[f64]) -> [Vec<usize>; 3] {
    let mut out: [Vec<usize>; 3] = Default::default();
    for (j, &l) in lambdas.iter().enumerate() {
        let k = if l == 0.0 || l == 1.0 {
            0
        } else if l == 0.5 {
            1
        } else {
            2
        };
        out[k].push(j + 1);
    }
    out
}

/// Random monomial in the modes `n <= n_max` whose class `j(n)` lies in `js`.
pub fn random_monomial(rng: &mut StdRng, p: usize, js: &[usize], n_max: usize) -> CarPoly<Cplx> {
    let allowed: u64 =
        (1..=n_max).filter(|n| js.contains(&((n - 1) % p + 1))).fold(0, |m, n| m | 1 << (n - 1));
    let d = rng.gen::<u64>() & allowed;
    let a = if rng.gen_bool(0.5) { d } else { rng.gen::<u64>() & allowed };
    let mut x = CarPoly::zero();
    x.add_term((d, a), Cplx::real(1.0));
    x
}

/// `|ω(X_1 X_2 X_3) - ω(X_1) ω(X_2) ω(X_3)|` on `samples` random triples with `X_k` supported on
/// the classes `J_k`.
pub fn product_factorization_check(
    state: &dyn CarState,
    samples: usize,
    n_max: usize,
    seed: u64,
    tol: f64,
) -> Result<Report> {
    let p = state.p();
    let parts = partition(state.lambdas());
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = Report::new(format!("factorization(λ={:?})", state.lambdas()));
    for s in 0..samples {
        let xs: Vec<CarPoly<Cplx>> = parts.iter().map(|js| random_monomial(&mut rng, p, js, n_max)).collect();
        let prod = &(&xs[0] * &xs[1]) * &xs[2];
        let lhs = state.omega(&prod)?;
        let mut rhs = Complex64::new(1.0, 0.0);
        for x in &xs {
            rhs *= state.omega(x)?;
        }
        let r = (lhs - rhs).norm();
        report.check_with(format!("sample {s}"), r < tol, || format!("{} | {} | {}: residual {r:e}", xs[0], xs[1], xs[2]));
    }
    Ok(report)
}
