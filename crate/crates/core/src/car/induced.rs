//! Automorphisms `τ_u = Φ_{SR_p}^{-1} ∘ α_u ∘ Φ_{SR_p}` of the CAR algebra induced by `u ∈ U(2^p)`.

use super::poly::CarPoly;
use super::transport::{from_cuntz, CarMorphism};
use crate::error::{pre, Error, Result};
use crate::morphisms::{homogeneous_embedding, multi_index, u_d_automorphism, Matrix};
use crate::rfs::{standard_rfs, MAX_ORDER};
use crate::scalar::Scalar;

/// `p` with `dim = 2^p`.
pub fn order_of_dimension(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return pre(format!("matrix size {dim} is not a power of two >= 2"));
    }
    let p = dim.trailing_zeros() as usize;
    if p > MAX_ORDER {
        return Err(Error::Overflow(format!("U(2^{p}) is beyond the supported order {MAX_ORDER}")));
    }
    Ok(p)
}

/// `τ_u` on `a_1..a_{mode_max}`.
///
/// Each rule is computed as `Φ_{SR_1}^{-1}(Ψ_p(α_u(Φ_{SR_p}(a_n))))`, using
/// `Ψ_p ∘ Φ_{SR_p} = Φ_{SR_1}`.
pub fn induced_automorphism<S: Scalar>(u: &Matrix<S>, mode_max: usize) -> Result<CarMorphism<S>> {
    let p = order_of_dimension(u.len())?;
    if u.iter().any(|row| row.len() != u.len()) {
        return pre("matrix is not square");
    }
    let alpha = u_d_automorphism(u)?;
    let psi = homogeneous_embedding::<S>(2, p)?;
    let srp = standard_rfs::<S>(p)?;
    let rules = (1..=mode_max)
        .map(|n| from_cuntz(&psi.apply(&alpha.apply(&srp.car_image(n)?)?)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(CarMorphism::new(format!("tau_u(p={p})"), format!("alpha_u on O_{}", 1usize << p), rules))
}

/// `v = u ⊗ .. ⊗ u` (`q/p` factors) with `α_u ∘ Ψ_{p,q} = Ψ_{p,q} ∘ α_v`, so `τ_u = τ_v`.
pub fn lift_unitary<S: Scalar>(u: &Matrix<S>, q: usize) -> Result<Matrix<S>> {
    let p = order_of_dimension(u.len())?;
    if q % p != 0 {
        return pre(format!("{q} is not a multiple of {p}"));
    }
    if q > MAX_ORDER {
        return Err(Error::Overflow(format!("U(2^{q}) is beyond the supported order {MAX_ORDER}")));
    }
    let r = q / p;
    let d = u.len();
    let n = 1usize << q;
    let idx: Vec<Vec<u8>> = (1..=n).map(|i| multi_index(d, r, i)).collect();
    let v = (0..n)
        .map(|k| {
            (0..n)
                .map(|i| {
                    idx[k].iter().zip(&idx[i]).fold(S::one(), |acc, (&a, &b)| {
                        acc * u[a as usize - 1][b as usize - 1].clone()
                    })
                })
                .collect()
        })
        .collect();
    Ok(v)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mat_mul<S: Scalar>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).fold(S::zero(), |acc, k| acc + a[i][k].clone() * b[k][j].clone()))
                .collect()
        })
        .collect()
}

/// `w` with `τ_w = τ_{u1} ∘ τ_{u2}`: both lifted to `U(2^q)`, `q = lcm(p_1, p_2)`, then `w = v_2 v_1`.
///
/// The order of the product follows from `α_{v_2 v_1} = α_{v_1} ∘ α_{v_2}` for the convention
/// `α_u(s_i) = sum_k s_k u_{k,i}`.
pub fn compose_unitaries<S: Scalar>(u1: &Matrix<S>, u2: &Matrix<S>) -> Result<Matrix<S>> {
    let p1 = order_of_dimension(u1.len())?;
    let p2 = order_of_dimension(u2.len())?;
    let q = p1 / gcd(p1, p2) * p2;
    let v1 = lift_unitary(u1, q)?;
    let v2 = lift_unitary(u2, q)?;
    Ok(mat_mul(&v2, &v1))
}

/// Diagonal `u` with `u_{ii} = exp(i ε(i) t)`, `ε(i) = sum_j (i_j - 1) ε_j + ε`.
pub fn free_evolution_matrix(eps: &[f64], eps0: f64, t: f64) -> Result<Matrix<crate::scalar::Cplx>> {
    use crate::scalar::Cplx;
    let p = eps.len();
    if p == 0 || p > MAX_ORDER {
        return pre(format!("need 1..={MAX_ORDER} single-particle energies"));
    }
    let n = 1usize << p;
    let mut u = vec![vec![Cplx::real(0.0); n]; n];
    for (i, row) in u.iter_mut().enumerate() {
        let e: f64 = (0..p).filter(|j| i >> j & 1 == 1).map(|j| eps[j]).sum::<f64>() + eps0;
        row[i] = Cplx::new((e * t).cos(), (e * t).sin());
    }
    Ok(u)
}

/// `τ_t^{(0)}(a_{p(m-1)+j}) = exp(-i ε_j t) a_{p(m-1)+j}`.
pub fn free_evolution_rule(eps: &[f64], t: f64, n: usize) -> CarPoly<crate::scalar::Cplx> {
    use crate::scalar::Cplx;
    let e = eps[(n - 1) % eps.len()];
    CarPoly::a(n).scale(&Cplx::new((e * t).cos(), -(e * t).sin()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Cplx, Gauss};

    fn id<S: Scalar>(n: usize) -> Matrix<S> {
        (0..n).map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect()).collect()
    }

    #[test]
    fn identity_is_trivial() {
        let t = induced_automorphism::<Gauss>(&id(4), 4).unwrap();
        assert!(t.first_difference(&CarMorphism::identity(4)).is_none());
    }

    #[test]
    fn free_phases() {
        let eps = [0.3, 1.1];
        let t = 0.7;
        let u = free_evolution_matrix(&eps, 0.4, t).unwrap();
        let tau = induced_automorphism(&u, 4).unwrap();
        for n in 1..=4 {
            assert!(tau.rule(n).unwrap().approx_eq(&free_evolution_rule(&eps, t, n)), "n = {n}");
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let mut u = id::<Gauss>(2);
        u[0][0] = Gauss::int(2);
        assert!(induced_automorphism(&u, 2).is_err());
        assert!(induced_automorphism(&id::<Gauss>(3), 2).is_err());
    }

    #[test]
    fn lifted_unitary_induces_same_map() {
        let (c, s) = (0.6, 0.8);
        let u = vec![vec![Cplx::real(c), Cplx::real(s)], vec![Cplx::real(-s), Cplx::real(c)]];
        let v = lift_unitary(&u, 2).unwrap();
        let a = induced_automorphism(&u, 4).unwrap();
        let b = induced_automorphism(&v, 4).unwrap();
        assert!(a.first_difference(&b).is_none());
    }
}
