//! Runs the full pipeline on every bundled fixture and checks its expectations.

use mixsing::fixture::bundled;
use mixsing::report::{analyze_fixture, AnalyzeOptions};

fn main() {
    let opts = AnalyzeOptions { skip_scan: true, ..AnalyzeOptions::default() };
    for fx in bundled().expect("fixtures load") {
        let r = analyze_fixture(&fx, &opts).expect("analysis");
        let ok = r.expected.as_ref().is_none_or(|e| e.matches);
        println!("{:<11} {:<4} {}", fx.name, if ok { "ok" } else { "FAIL" }, fx.description);
    }
    let first = analyze_fixture(&mixsing::fixture::resolve("shear").unwrap(), &opts).unwrap();
    println!("{}", first.to_json().lines().take(12).collect::<Vec<_>>().join("\n"));
}
