//! One line per acceptance criterion; exits nonzero if any fails.
//! `cargo test --test acceptance -- 3,7` runs only the listed criteria.

use acluster::verify;

fn main() {
    let ids: Vec<usize> = match std::env::args().skip(1).find(|a| !a.starts_with('-')) {
        Some(list) => list.split(',').filter_map(|s| s.parse().ok()).collect(),
        None => (1..=verify::COUNT).collect(),
    };
    let mut failed = 0;
    for id in ids {
        let r = verify::run_criterion(id).expect("known criterion");
        println!("{}", r.line());
        if !r.passed {
            failed += 1;
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
