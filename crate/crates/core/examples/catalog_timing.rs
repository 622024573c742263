//! Times both searches over the catalog: `cargo run --release --example catalog_timing -- 16`.

use davlab_core::index2::enumerate_groups;
use davlab_core::search::{verify_davenport_formulas, SearchOptions};

fn main() {
    let max: usize = std::env::args().nth(1).map_or(12, |a| a.parse().expect("max order"));
    let opts = SearchOptions::deep();
    for p in enumerate_groups(max) {
        let r = verify_davenport_formulas(p, &opts).unwrap();
        println!(
            "{:>8} d={:<2} D={:<2} match={} nodes={}+{} time={}+{}ms",
            r.group,
            r.d,
            r.big_d,
            r.matches(),
            r.small_stats.nodes,
            r.large_stats.nodes,
            r.small_stats.elapsed_ms,
            r.large_stats.elapsed_ms
        );
    }
}
