//! Symbolic tests on Puiseux branches `(t^p, a_1 t^q1 + …)` of a discriminant.

use mixsing::discgeom::{branch_accumulates_critical_points, branch_restriction_singular, PuiseuxBranch};

fn main() {
    for text in ["u = t; v = 2*t", "u = t^2; v = t^3", "u = t; v = t + t^2", "u = t; v = i*t"] {
        let b = PuiseuxBranch::parse(text).expect("valid branch");
        println!(
            "{text:<22} restriction singular: {:<5}  accumulates critical points: {}",
            branch_restriction_singular(&b),
            branch_accumulates_critical_points(&b)
        );
    }
}
