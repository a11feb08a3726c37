//! Enumerates skeletons and colorings of a family at one order.
//!
//! cargo run --example generate -- btheta 5

use tricolor::generators::{generate, generate_skeletons, Family, FamilySpec};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let family = match args.first().map(String::as_str) {
        Some("binf") => Family::BicyclicInfinity,
        Some("btheta") => Family::BicyclicTheta,
        _ => Family::Unicyclic,
    };
    let n = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    let spec = FamilySpec::exhaustive(family, n);
    let skeletons = generate_skeletons(&spec).expect("order within limits");
    println!("{family} n={n}: {} skeletons", skeletons.len());
    for s in &skeletons {
        let edges: Vec<String> = s.edges().iter().map(|e| format!("{}{}", e.u, e.v)).collect();
        println!("  {}", edges.join(" "));
    }
    let colorings = generate(&spec).unwrap().count();
    println!("{colorings} colorings with an imaginary cycle");
    let sampled = generate(&FamilySpec::sampled(family, n, 3, 7)).unwrap();
    for g in sampled {
        println!("sample:\n{}", g.to_graph_file());
    }
}
