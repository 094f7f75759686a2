//! Runs every suite on `ℤ_n ⋊ ℤ_2` and prints per-suite timings.
//!
//! `cargo run --release --example run_suites -- [n] [kmax]`

use std::time::Instant;

use planarbox::group::GroupAction;
use planarbox::suites::{run, Suite, SuiteConfig};
use planarbox::CrossedProduct;

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<usize>().expect("numeric argument"));
    let n = args.next().unwrap_or(3);
    let kmax = args.next().unwrap_or(4);
    let cp = CrossedProduct::new(GroupAction::cyclic_inversion(n));
    let cfg = SuiteConfig { kmax, ..SuiteConfig::default() };
    for s in Suite::EACH {
        let t = Instant::now();
        let rep = run(s, &cp, &cfg).expect("suite runs");
        println!("{s}: {}/{} passed in {:.2?}", rep.summary.passed, rep.summary.total, t.elapsed());
        for f in rep.failures().take(5) {
            println!("  FAIL {}: {} | {} vs {}", f.suite, f.case, f.lhs, f.rhs);
        }
    }
}
