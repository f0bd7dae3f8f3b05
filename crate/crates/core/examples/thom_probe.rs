//! Limits of normal planes along curves and a Thom failure witness.

use num_complex::Complex64;
use mixsing::parser::parse_with;
use mixsing::rational::ComplexRational;
use mixsing::thomprobe::{limit_normal_direction, thom_test, CurveGerm, ProbeOptions, ProbeVerdict, Stratum};

fn main() {
    let f = parse_with("x~*y*(x+z^2)", &["x", "y", "z"]).unwrap();
    let curve = CurveGerm::parse(&["t", "1", "0"]).unwrap();
    let opts = ProbeOptions::default();
    let d = limit_normal_direction(&f, &curve, &ComplexRational::i(), &opts).expect("probe");
    println!("limit of n_i along {}: {:?} (converged {})", curve.label(), d.direction, d.converged);

    let base: Vec<ComplexRational> = [0, 1, 0].iter().map(|&v| ComplexRational::from_int(v)).collect();
    let axis = vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)];
    let y_axis = Stratum::complex_line(base, axis).unwrap();
    let result = thom_test(&f, &y_axis, &[curve], &opts).expect("thom test");
    match result.verdict {
        ProbeVerdict::FailWitness { curve, mu, projection, .. } => {
            println!("fail witness on the y-axis: curve {curve}, mu = {mu:?}, projection {projection:.3}")
        }
        other => println!("{other:?}"),
    }
}
