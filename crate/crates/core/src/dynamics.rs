//! One-parameter groups `τ_t` of CAR automorphisms induced by rotations in `O_{2^p}`:
//! closed forms, particle-number expectations, n-point functions and block Hamiltonians.

use crate::algebra::Element;
use crate::car::induced::induced_automorphism;
use crate::car::poly::CarPoly;
use crate::car::transport::{compose, from_cuntz, CarMorphism};
use crate::error::{pre, Result};
use crate::morphisms::{homogeneous_embedding, Matrix};
use crate::report::Report;
use crate::rfs::standard_rfs;
use crate::scalar::Cplx;
use crate::states::{fock_apply, FockKet, Occupation};
use num_complex::Complex64;
use std::collections::HashMap;

type P = CarPoly<Cplx>;

fn re(x: f64) -> Cplx {
    Cplx::real(x)
}

fn a(n: usize) -> P {
    P::a(n)
}

fn ad(n: usize) -> P {
    P::a_dag(n)
}

fn num(n: usize) -> P {
    P::number(n)
}

/// `W_n = K_1 .. K_n`.
pub fn w_string(n: usize) -> P {
    (1..=n).fold(P::identity(), |acc, l| &acc * &P::klein(l))
}

/// One of the three rotation examples, with `θ_t = μ t`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolutionExample {
    pub id: u8,
    pub mu: f64,
}

impl EvolutionExample {
    pub fn new(id: u8, mu: f64) -> Result<Self> {
        if !(1..=3).contains(&id) {
            return pre(format!("example {id} is not one of 1, 2, 3"));
        }
        if mu == 0.0 || !mu.is_finite() {
            return pre("μ must be a nonzero real number");
        }
        Ok(EvolutionExample { id, mu })
    }

    /// Block size `p` of `O_{2^p}`.
    pub fn p(&self) -> usize {
        self.id as usize + 1
    }

    pub fn theta(&self, t: f64) -> f64 {
        self.mu * t
    }

    /// Rotated pairs `(x, y)`: `α(s_x) = cos θ s_x - sin θ s_y`, `α(s_y) = sin θ s_x + cos θ s_y`.
    pub fn pairs(&self) -> &'static [(usize, usize)] {
        match self.id {
            1 => &[(3, 4)],
            2 => &[(5, 8)],
            _ => &[(2, 15), (3, 14), (5, 12), (9, 8)],
        }
    }

    /// `u_t` with `α_t(s_i) = sum_k s_k u_{k,i}`.
    pub fn matrix(&self, t: f64) -> Matrix<Cplx> {
        let n = 1usize << self.p();
        let mut u: Matrix<Cplx> =
            (0..n).map(|i| (0..n).map(|j| re(if i == j { 1.0 } else { 0.0 })).collect()).collect();
        let (c, s) = (self.theta(t).cos(), self.theta(t).sin());
        for &(x, y) in self.pairs() {
            let (x, y) = (x - 1, y - 1);
            u[x][x] = re(c);
            u[y][x] = re(-s);
            u[x][y] = re(s);
            u[y][y] = re(c);
        }
        u
    }

    /// `u_t = sum_i α_t(s_i) s_i^*` in `O_{2^p}`.
    pub fn unitary(&self, t: f64) -> Element<Cplx> {
        let u = self.matrix(t);
        let d = u.len() as u8;
        let mut out = Element::zero(d);
        for i in 0..u.len() {
            for (k, row) in u.iter().enumerate() {
                if !crate::scalar::Scalar::is_zero(&row[i]) {
                    out.add_term((vec![k as u8 + 1], vec![i as u8 + 1]), row[i]);
                }
            }
        }
        out
    }

    /// Closed form of `τ_t(a_n)`.
    pub fn tau(&self, t: f64, n: usize) -> Result<P> {
        if n < 1 {
            return pre("modes start at 1");
        }
        let th = self.theta(t);
        Ok(match self.id {
            1 => example1(th, n),
            2 => example2(th, n),
            _ => example3(th, n),
        })
    }

    /// `τ_t(a_n^*) = τ_t(a_n)^*`.
    pub fn tau_sharp(&self, t: f64, n: usize, dagger: bool) -> Result<P> {
        let x = self.tau(t, n)?;
        Ok(if dagger { x.adjoint() } else { x })
    }

    /// Closed forms on `a_1..a_{mode_max}`.
    pub fn tau_morphism(&self, t: f64, mode_max: usize) -> Result<CarMorphism<Cplx>> {
        CarMorphism::from_fn(format!("tau_t(ex{},t={t})", self.id), mode_max, |n| self.tau(t, n))
    }

    /// `τ_t` recomputed by transporting `α_t` through `Φ_{SR_p}`.
    pub fn induced(&self, t: f64, mode_max: usize) -> Result<CarMorphism<Cplx>> {
        induced_automorphism(&self.matrix(t), mode_max)
    }

    /// `Φ_{SR_p}^{-1}(u_t a_j u_t^*)` for the seeds `j <= p`, read through `Ψ_p` in `O_2`.
    pub fn seed_conjugation(&self, t: f64, j: usize) -> Result<P> {
        if j < 1 || j > self.p() {
            return pre("seed index out of range");
        }
        let srp = standard_rfs::<Cplx>(self.p())?;
        let u = self.unitary(t);
        let x = &(&u * &srp.car_image(j)?) * &u.adjoint();
        from_cuntz(&homogeneous_embedding::<Cplx>(2, self.p())?.apply(&x)?)
    }

    /// Block `m` term of the Hamiltonian (Examples 2 and 3).
    pub fn hamiltonian_block(&self, m: usize) -> Result<P> {
        if m < 1 {
            return pre("blocks start at 1");
        }
        let imu = Cplx::new(0.0, self.mu);
        match self.id {
            2 => {
                let (x, y, z) = (3 * m - 2, 3 * m - 1, 3 * m);
                let pair = &(&ad(x) * &ad(y)) - &(&a(y) * &a(x));
                Ok((&pair * &num(z)).scale(&imu))
            }
            3 => {
                let mut h = P::zero();
                for j1 in 1..=4 {
                    let [q1, q2, q3, q4] = cyclic_modes(m, j1);
                    let t1 = &(&(&ad(q1) * &ad(q2)) * &ad(q3)) * &a(q4);
                    let t2 = &(&(&ad(q4) * &a(q3)) * &a(q2)) * &a(q1);
                    h = &h + &(&t1 - &t2);
                }
                Ok(h.scale(&imu))
            }
            _ => pre("the Hamiltonian is only available for Examples 2 and 3"),
        }
    }

    /// Largest coefficient of `d/dt τ_t(a_n) - i[H_m, τ_t(a_n)]` over the samples, with
    /// central differences of step `h`.
    pub fn generator_check(&self, n: usize, t_samples: &[f64], h: f64) -> Result<f64> {
        let m = (n - 1) / self.p() + 1;
        let hm = self.hamiltonian_block(m)?;
        let i = Cplx::new(0.0, 1.0);
        let mut worst: f64 = 0.0;
        for &t in t_samples {
            let fd = (&self.tau(t + h, n)? - &self.tau(t - h, n)?).scale(&re(1.0 / (2.0 * h)));
            let gen = hm.commutator(&self.tau(t, n)?).scale(&i);
            worst = worst.max((&fd - &gen).max_abs_coeff());
        }
        Ok(worst)
    }

    /// `τ_t(a^*_{n_1} .. a^*_{n_k}) e_1`.
    pub fn state_vector(&self, t: f64, occ: Occupation) -> Result<FockKet<Cplx>> {
        let mut v = FockKet::vacuum();
        for n in occ.modes().into_iter().rev() {
            v = fock_apply(&self.tau(t, n)?.adjoint(), &v);
        }
        Ok(v)
    }

    /// `<v| N_t v>` for `v = a^*_{n_1} .. a^*_{n_k} e_1`.
    ///
    /// Only blocks that meet `occ` contribute: every term of `τ_t(a_n)` contains an annihilator of a
    /// mode in the block of `n`. That property is asserted on each computed rule, and the blocks
    /// between and just after the occupied ones are evaluated to confirm that they vanish.
    pub fn particle_number_expectation(&self, t: f64, occ: Occupation) -> Result<f64> {
        let p = self.p();
        let v = FockKet::<Cplx>::basis(occ);
        let last_block = occ.modes().last().map_or(1, |n| (n - 1) / p + 1);
        let mut total = 0.0;
        for b in 1..=last_block + 1 {
            let meets = (1..=p).any(|j| occ.contains(p * (b - 1) + j));
            let mut part = 0.0;
            for j in 1..=p {
                let n = p * (b - 1) + j;
                let x = self.tau(t, n)?;
                if !annihilates_in_block(&x, p, b) {
                    return pre(format!("τ_t(a_{n}) has a term without an annihilator in block {b}"));
                }
                let w = fock_apply(&x, &v);
                part += w.inner(&w).0.re;
            }
            if !meets && part.abs() > 1e-12 {
                return pre(format!("block {b} does not meet {occ} but contributes {part}"));
            }
            total += part;
        }
        Ok(total)
    }

    /// Hand-derived `<v| N_t v>`: a sum over blocks, each block depending only on which of its
    /// modes are occupied.
    pub fn particle_number_closed_form(&self, t: f64, occ: Occupation) -> f64 {
        let p = self.p();
        let s2 = self.theta(t).sin().powi(2);
        let mut blocks: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
        for n in occ.modes() {
            blocks.entry((n - 1) / p).or_default().push((n - 1) % p + 1);
        }
        blocks
            .values()
            .map(|js| match (self.id, js.as_slice()) {
                (1, [1]) => 1.0,
                (1, [2]) => 1.0 + s2,
                (1, _) => 2.0 - s2,
                (2, [3]) => 1.0 + 2.0 * s2,
                (2, [_]) => 1.0,
                (2, [_, _]) => 2.0,
                (2, _) => 3.0 - 2.0 * s2,
                (_, js) => match js.len() {
                    1 => 1.0 + 2.0 * s2,
                    3 => 3.0 - 2.0 * s2,
                    k => k as f64,
                },
            })
            .sum()
    }

    /// A one-particle and a multi-particle occupation whose mixed-time overlap is `-sin θ_t`.
    pub fn transition_pair(&self) -> (Occupation, Occupation) {
        let (one, many): (&[usize], &[usize]) = match self.id {
            1 => (&[2], &[1, 2]),
            2 => (&[3], &[1, 2, 3]),
            _ => (&[1], &[2, 3, 4]),
        };
        (Occupation::from_modes(one).unwrap(), Occupation::from_modes(many).unwrap())
    }

    /// `<e_1| a^♯_{m_1}(t_1) .. a^♯_{m_n}(t_n) e_1>`; each op is `(mode, dagger, t)`.
    pub fn npoint(&self, ops: &[(usize, bool, f64)], truncate: bool) -> Result<Complex64> {
        if truncate {
            let mut memo = HashMap::new();
            return self.truncated(ops, (1u32 << ops.len()) - 1, &mut memo);
        }
        self.moment(ops, &(0..ops.len()).collect::<Vec<_>>())
    }

    fn moment(&self, ops: &[(usize, bool, f64)], idx: &[usize]) -> Result<Complex64> {
        let mut v = FockKet::<Cplx>::vacuum();
        for &k in idx.iter().rev() {
            let (m, dag, t) = ops[k];
            v = fock_apply(&self.tau_sharp(t, m, dag)?, &v);
            if v.is_zero() {
                return Ok(Complex64::new(0.0, 0.0));
            }
        }
        Ok(v.amps.get(&Occupation::vacuum()).map_or(Complex64::new(0.0, 0.0), |c| c.0))
    }

    /// Fermionic cumulant: `ω(S) = sum_π sgn(π) prod_{B ∈ π} ω_T(B)`.
    fn truncated(
        &self,
        ops: &[(usize, bool, f64)],
        set: u32,
        memo: &mut HashMap<u32, Complex64>,
    ) -> Result<Complex64> {
        if let Some(v) = memo.get(&set) {
            return Ok(*v);
        }
        let idx: Vec<usize> = (0..ops.len()).filter(|k| set >> k & 1 == 1).collect();
        let mut val = self.moment(ops, &idx)?;
        for part in set_partitions(&idx) {
            if part.len() < 2 {
                continue;
            }
            let mut prod = Complex64::new(permutation_sign(&part), 0.0);
            for block in &part {
                let mask = block.iter().fold(0u32, |m, &k| m | 1 << k);
                prod *= self.truncated(ops, mask, memo)?;
                if prod.norm() == 0.0 {
                    break;
                }
            }
            val -= prod;
        }
        memo.insert(set, val);
        Ok(val)
    }
}

/// `<τ_{t_1}(a^*_{occ_1}) e_1 | τ_{t_2}(a^*_{occ_2}) e_1>`.
pub fn overlap(ex: &EvolutionExample, t1: f64, occ1: Occupation, t2: f64, occ2: Occupation) -> Result<Complex64> {
    Ok(ex.state_vector(t1, occ1)?.inner(&ex.state_vector(t2, occ2)?).0)
}

fn max_diff(x: &P, y: &P) -> f64 {
    (x - y).max_abs_coeff()
}

/// Closed forms against the induced transport, anticommutators, vacuum invariance and the group law
/// at each sampled `t`; generator residuals for Examples 2 and 3.
pub fn dynamics_check(ex: &EvolutionExample, t_samples: &[f64], mode_max: usize, tol: f64) -> Result<Report> {
    let mut rep = Report::new(format!("dynamics/ex{}", ex.id));
    for &t in t_samples {
        let cf = ex.tau_morphism(t, mode_max)?;
        let ind = ex.induced(t, mode_max)?;
        for n in 1..=mode_max {
            let (x, y) = (&cf.rules()[n - 1], &ind.rules()[n - 1]);
            let d = max_diff(x, y);
            rep.check_with(format!("t={t} closed==induced a{n}"), d < tol, || format!("{d:e}: {x} vs {y}"));
            let v = fock_apply(x, &FockKet::vacuum());
            rep.check_with(format!("t={t} vacuum a{n}"), v.is_zero(), || v.to_string());
        }
        for m in 1..=mode_max {
            for n in m..=mode_max {
                let (x, y) = (&cf.rules()[m - 1], &cf.rules()[n - 1]);
                let aa = x.anticommutator(y).max_abs_coeff();
                rep.check_with(format!("t={t} {{a{m},a{n}}}"), aa < tol, || format!("{aa:e}"));
                let want = if m == n { P::identity() } else { P::zero() };
                let ad = max_diff(&x.anticommutator(&y.adjoint()), &want);
                rep.check_with(format!("t={t} {{a{m},a{n}*}}"), ad < tol, || format!("{ad:e}"));
            }
        }
        let s = 0.37 - 0.5 * t;
        let inner = ex.tau_morphism(s, mode_max)?;
        let reach = inner.rules().iter().map(|r| r.max_mode()).max().unwrap_or(0);
        let outer = ex.tau_morphism(t, reach)?;
        let both = compose(&outer, &inner)?;
        for n in 1..=both.mode_max() {
            let d = max_diff(&both.rules()[n - 1], &ex.tau(t + s, n)?);
            rep.check_with(format!("t={t} s={s} group law a{n}"), d < tol, || format!("{d:e}"));
        }
    }
    if ex.id > 1 {
        for n in 1..=ex.p() {
            let r = ex.generator_check(n, t_samples, 1e-4)?;
            rep.check_with(format!("generator a{n}"), r < 1e-6, || format!("{r:e}"));
        }
    }
    Ok(rep)
}

fn annihilates_in_block(x: &P, p: usize, b: usize) -> bool {
    let mask: u64 = (1..=p).fold(0, |m, j| m | 1 << (p * (b - 1) + j - 1));
    x.terms().keys().all(|&(_, an)| an & mask != 0)
}

/// Modes `a_{m,j_1}..a_{m,j_4}` for the cyclic order starting at `j_1`.
fn cyclic_modes(m: usize, j1: usize) -> [usize; 4] {
    let base = 4 * (m - 1);
    [0, 1, 2, 3].map(|r| base + (j1 - 1 + r) % 4 + 1)
}

/// Set partitions of `idx`, blocks ordered by their first element.
fn set_partitions(idx: &[usize]) -> Vec<Vec<Vec<usize>>> {
    let Some((&first, rest)) = idx.split_first() else {
        return vec![vec![]];
    };
    let mut out = Vec::new();
    for part in set_partitions(rest) {
        let mut with_new = vec![vec![first]];
        with_new.extend(part.iter().cloned());
        out.push(with_new);
        for b in 0..part.len() {
            let mut p2 = part.clone();
            p2[b].insert(0, first);
            p2.sort_by_key(|blk| blk[0]);
            out.push(p2);
        }
    }
    out
}

/// Sign of the permutation that lists the blocks one after another.
fn permutation_sign(part: &[Vec<usize>]) -> f64 {
    let seq: Vec<usize> = part.iter().flatten().copied().collect();
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// `F_k = I - 2 sin θ (sin θ I - cos θ W_{2(k-1)} (a_{2k-1} - a_{2k-1}^*)) a_{2k}^* a_{2k}`.
fn f_factor(th: f64, k: usize) -> P {
    let (c, s) = (th.cos(), th.sin());
    let inner = &P::scalar(re(s)) - &(&w_string(2 * (k - 1)) * &(&a(2 * k - 1) - &ad(2 * k - 1))).scale(&re(c));
    &P::identity() - &(&inner * &num(2 * k)).scale(&re(2.0 * s))
}

/// `G_n = F_1 .. F_n`.
pub fn g_string(th: f64, n: usize) -> P {
    (1..=n).fold(P::identity(), |acc, k| &acc * &f_factor(th, k))
}

/// `H_n = prod_k (I + sin^2(2θ) a_{2k}^* a_{2k})`.
pub fn h_string(th: f64, n: usize) -> P {
    let s2 = (2.0 * th).sin().powi(2);
    (1..=n).fold(P::identity(), |acc, k| &acc * &(&P::identity() + &num(2 * k).scale(&re(s2))))
}

fn example1(th: f64, n: usize) -> P {
    let (c, s) = (th.cos(), th.sin());
    let m = (n + 1) / 2;
    let g = g_string(th, m - 1);
    let (o, e) = (2 * m - 1, 2 * m);
    let body = if n % 2 == 1 {
        let inner = &(&a(o) + &ad(o)).scale(&re(s)) - &w_string(o).scale(&re(c));
        &a(o) - &(&inner * &num(e)).scale(&re(s))
    } else {
        let mix = &(&w_string(2 * (m - 1)) * &(&a(o) - &ad(o))) * &a(e);
        &a(e).scale(&re(c)) + &mix.scale(&re(s))
    };
    &g * &body
}

fn example2(th: f64, n: usize) -> P {
    let (c, s) = (th.cos(), th.sin());
    let m = (n - 1) / 3 + 1;
    let (x, y, z) = (3 * m - 2, 3 * m - 1, 3 * m);
    match n - 3 * (m - 1) {
        1 => &a(x) + &(&(&a(x).scale(&re(c - 1.0)) + &ad(y).scale(&re(s))) * &num(z)),
        2 => &a(y) + &(&(&ad(x).scale(&re(-s)) + &a(y).scale(&re(c - 1.0))) * &num(z)),
        _ => {
            let diff = &num(x) - &num(y);
            let pair = &(&a(x) * &a(y)) + &(&ad(x) * &ad(y));
            let bracket = &(&P::scalar(re(c)) + &(&diff * &diff).scale(&re(1.0 - c))) + &pair.scale(&re(s));
            &bracket * &a(z)
        }
    }
}

/// `b_{m,j_1}` of Example 3.
pub fn b_example3(m: usize, j1: usize) -> P {
    let [_, q2, q3, q4] = cyclic_modes(m, j1);
    let t1 = &(&a(q2) * &a(q3)) * &a(q4);
    let t2 = &(&ad(q2) * &ad(q3)) * &a(q4);
    let t3 = &(&ad(q3) * &ad(q4)) * &a(q2);
    let t4 = &(&ad(q4) * &ad(q2)) * &a(q3);
    &(&(&t1 + &t2) + &t3) - &t4
}

fn example3(th: f64, n: usize) -> P {
    let m = (n - 1) / 4 + 1;
    let j1 = n - 4 * (m - 1);
    &a(n).scale(&re(th.cos())) + &b_example3(m, j1).scale(&re(th.sin()))
}
