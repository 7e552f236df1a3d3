//! Necklace counts, branching numbers and the labelled eigenvectors of π_s∘φ_{σ_p}.
use cuntz::perm_reps::*;
use cuntz::Gauss;

fn main() -> cuntz::Result<()> {
    for n in 1..=10 {
        println!("C_{n} = {}", necklace_count(n)?);
    }
    for p in 1..=5 {
        let labels: Vec<String> = enumerate_branch_labels(p).iter().map(|l| l.to_string()).collect();
        println!("B_{p} = {}: {}", branching_number(p as u64)?, labels.join(" ⊕ "));
    }
    let r = branching_check::<Gauss>(4)?;
    print!("{r}");
    Ok(())
}
