//! The 24 second-order permutation endomorphisms of O_2 and the φ_{σ_p} semigroup.
use cuntz::morphisms::*;
use cuntz::Gauss;

fn main() -> cuntz::Result<()> {
    for c in SECOND_ORDER_CYCLES {
        let m = second_order::<Gauss>(c)?;
        println!("{:<16} s1 -> {:<24} s2 -> {}", m.name, m.image(1).to_string(), m.image(2));
    }
    let a = alpha::<Gauss>();
    let lhs = second_order::<Gauss>("[3,4]")?;
    let rhs = compose(&by_name("phi[1,2]")?, &a)?;
    println!("phi[3,4] = phi[1,2]∘alpha: {}", lhs.equals(&rhs));

    for (p, q) in [(1, 2), (1, 3), (2, 2)] {
        let c = compose(&phi_sigma::<Gauss>(p)?, &phi_sigma(q)?)?;
        println!("phi_sigma({p})∘phi_sigma({q}) = phi_sigma{:?}", identify_phi_sigma_multi(&c));
    }
    Ok(())
}
