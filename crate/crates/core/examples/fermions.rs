//! CAR algebra inside O_2: the recursive fermion systems, transport, and restricted endomorphisms.
use cuntz::car::closed_form::closed_form_table;
use cuntz::car::transport::{from_cuntz, restrict_endomorphism, to_cuntz};
use cuntz::car::CarPoly;
use cuntz::morphisms::by_name;
use cuntz::rfs::standard_rfs;
use cuntz::Gauss;

fn main() -> cuntz::Result<()> {
    let sr2 = standard_rfs::<Gauss>(2)?;
    for n in 1..=3 {
        println!("SR2 a{n} = {}", sr2.car_image(n)?);
    }
    print!("{}", sr2.verify_car(4)?);

    let x = &CarPoly::<Gauss>::a_dag(3) * &CarPoly::a(1);
    let y = to_cuntz(&x)?;
    println!("a3* a1 -> {} terms in O_2 -> back: {}", y.len(), from_cuntz(&y)?);

    for name in ["rho", "phi[2,4]", "phi[1,2]"] {
        let m = restrict_endomorphism(&by_name::<Gauss>(name)?, 3)?;
        for (k, r) in m.rules().iter().enumerate() {
            let agrees = *r == closed_form_table::<Gauss>(name, k + 1)?;
            println!("{name}(a{}) = {}   [closed form: {agrees}]", k + 1, r.pretty());
        }
    }
    Ok(())
}
