//! Milnor set and singular point scans on shrinking spheres.

use mixsing::milnor::{milnor_scan, sing_scan, ScanOptions};
use mixsing::parser::parse_with;

fn main() {
    let opts = ScanOptions { samples: 50, ..ScanOptions::default() };
    for text in ["x*y*x~", "x*conj(x+y^2)"] {
        let f = parse_with(text, &["x", "y"]).unwrap();
        let m = milnor_scan(&f, &opts).expect("scan");
        println!("{text}: fitted c = {:?}, slope = {:?}, supports (b): {}", m.fitted_c, m.slope, m.supports_b);
        for s in &m.shells {
            println!("  r = {:<6} hits {:>3}  min ratio {:?}", s.radius, s.found, s.min_ratio);
        }
        let s = sing_scan(&f, &opts).expect("scan");
        println!("  singular points with F != 0 on every shell: {}", s.accumulates);
    }
}
