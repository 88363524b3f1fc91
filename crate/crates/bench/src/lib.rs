//! Fixtures shared by the benchmarks.

use coarse_menger::generators::{grid, random_instances, RandomConfig, RandomFamily};
use coarse_menger::{Graph, InstanceSpec, PathFamily};

/// An `rows × cols` grid with its first and last columns as X and Y.
pub fn column_grid(rows: usize, cols: usize, ell: f64) -> (Graph, PathFamily) {
    let g = grid(rows, cols).expect("nonempty grid");
    let family = PathFamily::lxy(ell, g.column(0), g.column(cols - 1));
    (g.graph, family)
}

/// Connected random graphs on 8 to 12 vertices.
pub fn random_connected(seed: u64, count: usize) -> Vec<InstanceSpec> {
    random_instances(
        seed,
        count,
        &RandomConfig {
            family: RandomFamily::General {
                edge_probability: 0.3,
                connected: true,
            },
            min_vertices: 8,
            max_vertices: 12,
            weighted: false,
        },
    )
    .expect("valid config")
}
