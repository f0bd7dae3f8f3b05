//! Wirtinger derivatives and the normal family `n_μ = μ·conj(dF) + μ̄·∂̄F`.

use mixsing::parser::{format_named, parse_with};
use mixsing::thomprobe::SymbolicFamily;

fn main() {
    let vars = ["x", "y", "z"];
    let f = parse_with("(x^2 - z*y^2)*y~", &vars).expect("valid expression");
    let w = f.wirtinger();
    println!("F = {}", format_named(&f, &vars));
    for j in 0..3 {
        println!("  dF/d{0}  = {1}", vars[j], format_named(&w.d[j], &vars));
        println!("  dF/d{0}~ = {1}", vars[j], format_named(&w.dbar[j], &vars));
    }
    let fam = SymbolicFamily::of(&f);
    println!("normal family n_mu = mu*holo + conj(mu)*anti:");
    for j in 0..3 {
        println!("  [{j}] holo {:<28} anti {}", format_named(&fam.holo[j], &vars), format_named(&fam.anti[j], &vars));
    }
}
