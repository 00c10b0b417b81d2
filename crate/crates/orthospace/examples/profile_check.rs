use orthospace::embed::{embed_nonzero, EmbedMode};
use orthospace::greechie::GraphSpec;
use orthospace::oml::{check_oml, Limits};
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    let g = GraphSpec::empty(3);
    let r = embed_nonzero(&g, EmbedMode::Faithful, &limits, 0).unwrap();
    println!("built {} elements", r.oml.size());
    let t = Instant::now();
    let rep = check_oml(&r.oml);
    println!("check_oml({}) = {} in {:?}", r.oml.size(), rep.passed, t.elapsed());
}
