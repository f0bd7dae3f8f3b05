//! Shears `(f + λ g^k, g)` and when they make the critical value isolated.

use mixsing::discgeom::{shear_search, Criterion, VerdictOptions};
use mixsing::parser::parse_with;
use mixsing::rational::ComplexRational;

fn main() {
    let xy = ["x", "y"];
    let one = ComplexRational::one();
    for criterion in [Criterion::LineComponents, Criterion::TangentCone] {
        let (f, g) = (parse_with("x", &xy).unwrap(), parse_with("x+y^2", &xy).unwrap());
        let opts = VerdictOptions { criterion, branches: Vec::new() };
        match shear_search(&f, &g, &one, 6, &opts) {
            Ok(r) => println!("{criterion:?}: k = {} gives ({}, {})", r.k, r.f, r.g),
            Err(e) => println!("{criterion:?}: {e}"),
        }
    }
}
