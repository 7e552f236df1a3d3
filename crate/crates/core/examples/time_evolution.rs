//! The three evolution examples: closed-form τ_t, particle numbers and n-point functions.
use cuntz::dynamics::*;
use cuntz::states::Occupation;

fn main() -> cuntz::Result<()> {
    let t = 0.4;
    for id in 1..=3 {
        let ex = EvolutionExample::new(id, 1.0)?;
        println!("example {id}: p = {}, θ = {:.3}", ex.p(), ex.theta(t));
        println!("  τ_t(a1) = {}", ex.tau(t, 1)?);
        for modes in [vec![1], vec![2], vec![1, 2], vec![2, 4]] {
            let occ = Occupation::from_modes(&modes)?;
            println!("  N_t on {modes:?}: {:.6}", ex.particle_number_expectation(t, occ)?);
        }
    }
    let ex = EvolutionExample::new(1, 1.0)?;
    let w = ex.npoint(&[(2, false, 0.3), (2, true, 0.1), (1, true, -0.2)], false)?;
    println!("ω(a2(0.3) a2*(0.1) a1*(-0.2)) = {w:.6}");
    let r = dynamics_check(&ex, &[0.2, 0.9], 4, 1e-10)?;
    print!("{r}");
    Ok(())
}
