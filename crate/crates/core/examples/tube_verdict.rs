//! Combined tube / Thom verdicts with the routes that produced them.

use mixsing::milnor::{tube_verdict, TubeInput, TubeOptions};
use mixsing::parser::parse_with;

fn main() {
    let xy = ["x", "y"];
    let xyz = ["x", "y", "z"];
    let cases = [
        ("F_2", TubeInput::Pair { f: parse_with("y*(x+z^2)", &xyz).unwrap(), g: parse_with("x", &xyz).unwrap() }),
        ("(x^2, y^3)", TubeInput::Pair { f: parse_with("x^2", &xy).unwrap(), g: parse_with("y^3", &xy).unwrap() }),
        ("(x, x+y^2)", TubeInput::Pair { f: parse_with("x", &xy).unwrap(), g: parse_with("x+y^2", &xy).unwrap() }),
    ];
    for (name, input) in cases {
        let v = tube_verdict(&input, &TubeOptions::default()).expect("verdict");
        println!("{name}: tube {:?}", v.tube);
        println!("  thom {}", serde_json::to_string(&v.thom).unwrap().chars().take(90).collect::<String>());
        for r in &v.routes {
            println!("  route {} [{}] -> {}", r.route, r.inputs, r.conclusion);
        }
    }
}
