use orthospace::embed::{embed_atoms, EmbedMode};
use orthospace::greechie::GraphSpec;
use orthospace::oml::Limits;
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    let g = GraphSpec::empty(3);
    let t0 = Instant::now();
    let r = embed_atoms(&g, EmbedMode::Faithful, &limits, 0).unwrap();
    println!("E3 faithful: {} elements in {:?}", r.oml.size(), t0.elapsed());
    for s in &r.stats {
        println!("  {} -> {}", s.step, s.size);
    }
}
