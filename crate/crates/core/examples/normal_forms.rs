//! Exact arithmetic in O_d: products, adjoints, flattening and equality up to CR1/CR2.
use cuntz::algebra::check_cuntz_family;
use cuntz::io::parse_element;
use cuntz::{Element, Gauss};

fn main() -> cuntz::Result<()> {
    let s1 = Element::<Gauss>::generator(2, 1);
    let s2 = Element::<Gauss>::generator(2, 2);
    let x = &(&s1 * &s2) * &s2.adjoint();
    println!("s1 s2 s2* = {x}");
    println!("its adjoint = {}", x.adjoint());
    println!("s2* s1 = {}", &s2.adjoint() * &s1);

    let cr2 = &(&s1 * &s1.adjoint()) + &(&s2 * &s2.adjoint());
    println!("s1 s1* + s2 s2* = {}", cr2.canonical());

    let y = parse_element::<Gauss>("s[1,2;2,1]", 2)?;
    println!("s[1,2;2,1] flattened to depth 3 = {}", y.flatten(3)?);
    println!("equal to its flattening: {}", y.equals(&y.flatten(3)?));
    for (deg, part) in parse_element::<Gauss>("s[1,1;2] + 3 s[2;1,2] + i s[1]", 2)?.gauge_degree_split() {
        println!("gauge degree {deg}: {part}");
    }

    let fam = [s1.clone(), &s2 * &s1, &s2 * &s2];
    println!("{{s1, s21, s22}} is a Cuntz family of size 3: {}", check_cuntz_family(&fam, 3));
    Ok(())
}
