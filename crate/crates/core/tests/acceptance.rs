use std::time::Instant;

use thompson_core::acceptance::{run, DEFAULT_SEED, TIME_LIMIT_TOTAL};

fn main() {
    let seed = std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    let only: Option<u8> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    println!("acceptance seed {seed}");
    let start = Instant::now();
    let mut failed = 0;
    for id in 1..=10u8 {
        if only.is_some_and(|o| o != id) {
            continue;
        }
        let o = run(id, seed);
        println!("{o}");
        failed += usize::from(!o.passed());
    }
    let total = start.elapsed();
    let in_time = total < TIME_LIMIT_TOTAL;
    println!(
        "{} total {:.1}s < {}s",
        if in_time { "PASS" } else { "FAIL" },
        total.as_secs_f64(),
        TIME_LIMIT_TOTAL.as_secs()
    );
    if failed > 0 || !in_time {
        std::process::exit(1);
    }
}
