//! Closed forms and recurrences for CAR endomorphisms induced by permutation endomorphisms.
//!
//! Everything here is evaluated directly from the formulas, independently of
//! [`restrict_endomorphism`](super::transport::restrict_endomorphism), so the two can be
//! compared.

use super::poly::CarPoly;
use crate::error::{pre, Error, Result};
use crate::scalar::Scalar;

fn a<S: Scalar>(n: usize) -> CarPoly<S> {
    CarPoly::a(n)
}

fn ad<S: Scalar>(n: usize) -> CarPoly<S> {
    CarPoly::a_dag(n)
}

fn sgn<S: Scalar>(e: usize) -> S {
    if e % 2 == 0 {
        S::one()
    } else {
        -S::one()
    }
}

/// `a_n a_n^*`.
fn hole<S: Scalar>(n: usize) -> CarPoly<S> {
    &a(n) * &ad(n)
}

fn prod<S: Scalar>(xs: &[CarPoly<S>]) -> CarPoly<S> {
    xs.iter().fold(CarPoly::identity(), |acc, x| &acc * x)
}

fn klein_range<S: Scalar>(lo: usize, hi: usize) -> CarPoly<S> {
    (lo..=hi).fold(CarPoly::identity(), |acc, l| &acc * &CarPoly::klein(l))
}

/// `(X ∘ α)(a_n) = (-1)^{n-1} X(a_n)^*`.
fn after_alpha<S: Scalar>(x: CarPoly<S>, n: usize) -> CarPoly<S> {
    x.adjoint().scale(&sgn(n - 1))
}

/// Replaces `a_1, a_1^*, a_k, a_k^*` by `a_2, -a_2^*, a_{k+1}, a_{k+1}^*` in a polynomial that
/// is linear in mode 1.
fn shift_flip_first<S: Scalar>(x: &CarPoly<S>) -> CarPoly<S> {
    let mut out = CarPoly::zero();
    for (&(d, an), c) in x.terms() {
        let c = if d & 1 == 1 { -c.clone() } else { c.clone() };
        out.add_term((d << 1, an << 1), c);
    }
    out
}

fn phi_12<S: Scalar>(n: usize) -> CarPoly<S> {
    if n == 1 {
        return &prod(&[ad(1), a(2), ad(2)]) + &prod(&[a(1), ad(2), a(2)]);
    }
    let lead = &ad(1) + &a(1).scale(&sgn(n));
    &lead * &shift_flip_first(&phi_12(n - 1))
}

fn phi_24<S: Scalar>(n: usize) -> CarPoly<S> {
    match n {
        1 => -(&a(1) * &(&a(2) + &ad(2))),
        2 => {
            let b = &prod(&[a(1), ad(1), a(2)]) + &prod(&[ad(1), a(1), ad(2)]);
            -(&b * &(&a(3) + &ad(3)))
        }
        _ => {
            let b1 = phi_24(n - 1).shift(1);
            let b2 = b1.swap_mode(2);
            &(&hole(1) * &b1) - &(&CarPoly::number(1) * &b2)
        }
    }
}

fn phi_13<S: Scalar>(n: usize) -> CarPoly<S> {
    if n % 2 == 1 {
        phi_24(n).scale(&sgn((n - 1) / 2))
    } else {
        phi_24(n).adjoint().scale(&sgn((n - 2) / 2))
    }
}

fn phi_123<S: Scalar>(n: usize) -> CarPoly<S> {
    &(&ad(1) - &a(1)) * &a(n + 1)
}

fn phi_234<S: Scalar>(n: usize) -> CarPoly<S> {
    &(&hole(1) * &a(n + 1)) + &(&CarPoly::number(1) * &ad(n + 1)).scale(&sgn(n))
}

fn phi_124<S: Scalar>(n: usize) -> CarPoly<S> {
    if n % 2 == 1 {
        phi_234(n).adjoint().scale(&sgn((n - 1) / 2))
    } else {
        phi_234(n).scale(&sgn(n / 2))
    }
}

fn rho<S: Scalar>(n: usize) -> CarPoly<S> {
    &CarPoly::klein(1) * &a(n + 1)
}

fn phi_14<S: Scalar>(n: usize) -> CarPoly<S> {
    (&CarPoly::klein(1) * &ad(n + 1)).scale(&sgn(n - 1))
}

fn phi_14_23<S: Scalar>(n: usize) -> CarPoly<S> {
    if n == 1 {
        ad(1)
    } else {
        -a(n)
    }
}

fn alpha<S: Scalar>(n: usize) -> CarPoly<S> {
    ad(n).scale(&sgn(n - 1))
}

/// The sign relation with `φ_{[1,2]}` starts at `n = 2`; at `n = 1` both maps agree.
fn phi_1324<S: Scalar>(n: usize) -> CarPoly<S> {
    if n == 1 {
        return phi_12(1);
    }
    phi_12(n).adjoint().scale(&sgn(n))
}

/// The second-order table, keyed by cycle notation without spaces.
fn second_order_closed<S: Scalar>(cycles: &str, n: usize) -> Option<CarPoly<S>> {
    let x = match cycles {
        "" => a(n),
        "[1,2]" => phi_12(n),
        "[1,3]" => phi_13(n),
        "[1,4]" => phi_14(n),
        "[2,3]" => rho(n),
        "[2,4]" => phi_24(n),
        "[3,4]" => after_alpha(phi_12(n), n),
        "[1,2][3,4]" => alpha(n),
        "[1,3][2,4]" => after_alpha(phi_14_23(n), n),
        "[1,4][2,3]" => phi_14_23(n),
        "[1,2,3]" => phi_123(n),
        "[1,2,4]" => phi_124(n),
        "[1,3,2]" => after_alpha(phi_234(n), n),
        "[1,3,4]" => after_alpha(phi_123(n), n),
        "[1,4,2]" => after_alpha(phi_123(n), n),
        "[1,4,3]" => after_alpha(phi_124(n), n),
        "[2,3,4]" => phi_234(n),
        "[2,4,3]" => phi_123(n),
        "[1,2,3,4]" => after_alpha(phi_13(n), n),
        "[1,2,4,3]" => after_alpha(phi_14(n), n),
        "[1,3,2,4]" => phi_1324(n),
        "[1,3,4,2]" => after_alpha(rho(n), n),
        "[1,4,2,3]" => after_alpha(phi_1324(n), n),
        "[1,4,3,2]" => after_alpha(phi_24(n), n),
        _ => return None,
    };
    Some(x)
}

/// `b_{m,n}` of the `φ_{σ_p}` recurrence.
fn b_mn<S: Scalar>(p: usize, m: usize, n: usize) -> CarPoly<S> {
    let q = n - m * p;
    match m {
        1 => &prod(&[a(q), ad(q), a(n)]) + &prod(&[ad(q), a(q), ad(n)]),
        _ => {
            let prev = b_mn(p, m - 1, n);
            let swapped = prev.swap_mode(n - (m - 1) * p);
            let first = &hole(q) * &prev;
            let second = &CarPoly::number(q) * &swapped;
            if m == 2 {
                &first + &second
            } else {
                &first - &second
            }
        }
    }
}

/// `φ̃_{σ_p}(a_n)` from the recurrence in `b_{m,n}` and Klein operators.
pub fn phi_sigma_closed<S: Scalar>(p: usize, n: usize) -> Result<CarPoly<S>> {
    if p < 1 || n < 1 {
        return pre("p >= 1 and n >= 1");
    }
    let tail = &a(n + p) + &ad(n + p);
    let x = if n <= p {
        &(&a(n) * &klein_range(1, n + p - 1)) * &tail
    } else {
        let m = (n - 1) / p;
        &(&b_mn(p, m, n) * &klein_range(n - p, n + p - 1)) * &tail
    };
    Ok(x)
}

/// `φ̂_k(a_n)`: `a_n` below `k`, `a_k^*` at `k`, `-a_n` above.
pub fn hat_phi_closed<S: Scalar>(k: usize, n: usize) -> CarPoly<S> {
    use std::cmp::Ordering::*;
    match n.cmp(&k) {
        Less => a(n),
        Equal => ad(k),
        Greater => -a(n),
    }
}

/// `ρ^p(a_n) = K_1 .. K_p a_{n+p}`.
pub fn rho_power_closed<S: Scalar>(p: usize, n: usize) -> CarPoly<S> {
    &klein_range(1, p) * &a(n + p)
}

fn arg(name: &str, prefix: &str, suffix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.strip_suffix(suffix)?.trim().parse().ok()
}

/// Evaluates the catalogued closed form `name` at mode `n`.
///
/// Names: `id`, `phi[...]` for the 24 second-order cycles, `rho`, `alpha`, `rho^p`,
/// `phi_sigma(p)`, `hat_phi(k)`.
pub fn closed_form_table<S: Scalar>(name: &str, n: usize) -> Result<CarPoly<S>> {
    if n < 1 {
        return pre("modes start at 1");
    }
    let key: String = name.chars().filter(|c| !c.is_whitespace()).collect();
    let unknown = || Error::Unknown(name.to_string());
    match key.as_str() {
        "id" | "phi_id" | "phi[]" => return Ok(a(n)),
        "rho" => return Ok(rho(n)),
        "alpha" => return Ok(alpha(n)),
        _ => {}
    }
    if let Some(p) = key.strip_prefix("rho^").and_then(|x| x.parse().ok()) {
        return Ok(rho_power_closed(p, n));
    }
    if let Some(p) = arg(&key, "phi_sigma(", ")") {
        return phi_sigma_closed(p, n);
    }
    if let Some(k) = arg(&key, "hat_phi(", ")") {
        if k == 0 {
            return Err(unknown());
        }
        return Ok(hat_phi_closed(k, n));
    }
    if let Some(c) = key.strip_prefix("phi") {
        return second_order_closed(c, n).ok_or_else(unknown);
    }
    Err(unknown())
}

/// Catalogue names with a closed form, in a fixed order.
pub fn catalogue() -> Vec<String> {
    let mut v: Vec<String> = crate::morphisms::SECOND_ORDER_CYCLES
        .iter()
        .map(|c| if c.is_empty() { "phi_id".to_string() } else { format!("phi{c}") })
        .collect();
    v.extend((1..=3).map(|p| format!("phi_sigma({p})")));
    v.extend((1..=4).map(|k| format!("hat_phi({k})")));
    v.extend((1..=3).map(|p| format!("rho^{p}")));
    v
}
