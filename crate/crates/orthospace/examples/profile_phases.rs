use orthospace::embed::{embed_nonzero, EmbedMode};
use orthospace::greechie::GraphSpec;
use orthospace::oml::Limits;
use std::time::Instant;

fn main() {
    let limits = Limits::default();
    let g = GraphSpec::empty(3);
    let r = embed_nonzero(&g, EmbedMode::Faithful, &limits, 0).unwrap();
    let l = &r.oml;
    println!("n = {}", l.size());
    let t = Instant::now();
    let uc = l.profile_upper_covers();
    println!("upper_covers: {:?} (total {} covers)", t.elapsed(), uc);
    let t = Instant::now();
    let lc = l.profile_lower_covers();
    println!("lower_covers: {:?} (total {})", t.elapsed(), lc);
    let t = Instant::now();
    println!("join DP: {:?} -> {:?}", l.profile_join_dp(), t.elapsed());
    let t = Instant::now();
    println!("meet DP: {:?} -> {:?}", l.profile_meet_dp(), t.elapsed());
    let t = Instant::now();
    println!("orthomod: {:?} -> {:?}", l.profile_orthomod(), t.elapsed());
    let t = Instant::now();
    println!("transitivity: {:?} -> {:?}", l.profile_transitivity(), t.elapsed());
}
