//! Polar weights `(p, k)` with `F(λ·z) = λ^k F(z)` and an orbit check.

use num_complex::Complex64;
use mixsing::mixed::ComplexPoint;
use mixsing::parser::parse_with;
use mixsing::polar::{orbit_check, solve_polar};

fn main() {
    for (text, vars) in [
        ("x*y*x~", &["x", "y"][..]),
        ("x~*y*(x+z^2)", &["x", "y", "z"][..]),
        ("x*y + x~*y~", &["x", "y"][..]),
    ] {
        let f = parse_with(text, vars).expect("valid expression");
        let sol = solve_polar(&f).expect("solvable system");
        print!("{text:<16} polar={:?}", sol.polar);
        if let Some(w) = &sol.canonical {
            let z = ComplexPoint::new(vec![Complex64::new(0.3, -0.7); vars.len()]).unwrap();
            let lambda = Complex64::from_polar(1.0, 0.9);
            let r = orbit_check(&f, w, lambda, &z).expect("orbit residual");
            print!("  p={:?} k={}  orbit residual {r:.1e}", w.p, w.k);
        } else if let Some(c) = &sol.certificate {
            print!("  ({c})");
        }
        println!();
    }
}
