use orthospace::mub::r3_obstruction_certificates;
use std::time::{Duration, Instant};

fn main() {
    let t = Instant::now();
    let rep = r3_obstruction_certificates(10_000, 4, Duration::from_secs(600), 0).unwrap();
    println!(
        "h=4: rays={} blocks={} outcome={:?} violations={} in {:?}",
        rep.host_rays, rep.host_blocks, rep.bounded_search, rep.doubly_unbiased_violations,
        t.elapsed()
    );
}
