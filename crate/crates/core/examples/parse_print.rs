//! Parsing Cuntz and CAR expressions, named morphisms, and canonical printing.
use cuntz::io::{parse, parse_value};
use cuntz::Gauss;

fn main() {
    for text in [
        "s[1;2] s[2;1] + s[2;1] s[1;2]",
        "a3* a1",
        "phi[2,3](a3)",
        "rho(s[1])",
        "(1/2 + i) s[1,2;2,1]*",
        "a1 a1*  + a1* a1",
        "s[1;2",
    ] {
        match parse(text) {
            Ok(ast) => match parse_value::<Gauss>(text, 2) {
                Ok(v) => println!("{text:<34} ast {ast:<34} -> {}", v.canonical_text()),
                Err(e) => println!("{text:<34} evaluation error: {e}"),
            },
            Err(e) => println!("{text:<34} {e}"),
        }
    }
}
