//! Embeddings of O_{d'} into O_d and the unitaries relating endomorphisms and embeddings.
use cuntz::morphisms::*;
use cuntz::{Element, Gauss};

fn show(m: &Morphism<Gauss>) {
    let imgs: Vec<String> = m.images().iter().map(|x| x.to_string()).collect();
    println!("{:<28} {}", m.name, imgs.join(", "));
}

fn main() -> cuntz::Result<()> {
    show(&cuntz_embedding(4)?);
    show(&generalized_cuntz_embedding(3, 2)?);
    show(&inductive_extension(&cuntz_embedding(3)?));
    show(&homogeneous_embedding(2, 2)?);
    show(&monomial_embedding(2, &[1, 2])?);

    let a = cuntz_embedding::<Gauss>(3)?;
    let b = monomial_embedding::<Gauss>(2, &[1, 2])?;
    let u = unitary_between(b.images(), a.images())?;
    println!("u = {u}\nunitary: {}", is_unitary(&u));

    let rho = canonical_endomorphism::<Gauss>(2);
    let v = unitary_of_endomorphism(&rho)?;
    println!("rho from its unitary: {}", endomorphism_of_unitary(&v)?.equals(&rho));

    let x = Element::<Gauss>::s(3, &[2], &[3]);
    println!("cuntz(3)(s[2;3]) = {}", a.apply(&x)?);
    Ok(())
}
