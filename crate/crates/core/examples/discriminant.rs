//! Discriminant curves of holomorphic pairs and the isolated critical value verdict.

use mixsing::discgeom::{discriminant_curve, isolated_value_verdict, sing_decomposition};
use mixsing::parser::parse_with;

fn main() {
    let xy = ["x", "y"];
    for (f, g) in [("x^2", "y^3"), ("x", "x+y^2"), ("x*y", "x")] {
        let (f, g) = (parse_with(f, &xy).unwrap(), parse_with(g, &xy).unwrap());
        let curve = discriminant_curve(&f, &g).expect("plane pair");
        let v = isolated_value_verdict(&f, &g).expect("verdict");
        println!("({f}, {g})");
        println!("  discriminant: {}", v.discriminant.clone().unwrap_or_default());
        println!("  through origin: {}", curve.passes_through_origin());
        for l in &v.lines {
            println!("  line {:?} slope {:?}", l.kind, l.slope.as_ref().map(|s| s.canonical_string()));
        }
        println!("  verdict: {:?} ({})", v.status, v.method);
    }
    let xyz = ["x", "y", "z"];
    let (f, g) = (parse_with("x^2 - z*y^2", &xyz).unwrap(), parse_with("y", &xyz).unwrap());
    let v = isolated_value_verdict(&f, &g).expect("verdict");
    println!("(x^2 - z*y^2, y): {:?} via {}", v.status, v.method);
    let sing = sing_decomposition(&f, &g).expect("decomposition").render(&xyz);
    println!("  Sing(f,g) minors: {:?}", sing.critical_minors);
}
