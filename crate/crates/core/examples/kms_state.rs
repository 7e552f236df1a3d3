//! Quasi-free states from the branch weights λ_j, their KMS property and product factorization.
use cuntz::car::CarPoly;
use cuntz::states::*;

fn main() -> cuntz::Result<()> {
    let (beta, eps) = (1.0, [0.5, 1.2]);
    let st = QuasiFreeState::from_kms(beta, &eps)?;
    println!("λ = {:?}", st.lambdas());
    let monos = all_monomials(3);
    let mut worst = 0.0f64;
    for x in &monos {
        for y in &monos {
            worst = worst.max(kms_check(&st, beta, &eps, x, y)?);
        }
    }
    println!("max KMS residual over {} pairs: {worst:e}", monos.len() * monos.len());

    let n1n2 = &CarPoly::number(1) * &CarPoly::number(2);
    println!("ω(n1 n2) = {}", st.omega(&n1n2)?);

    let r = product_factorization_check(&QuasiFreeState::new(vec![0.0, 0.5, 0.3])?, 50, 6, 1, 1e-12)?;
    println!("factorization: {} of {} samples pass", r.passed(), r.cases.len());
    Ok(())
}
