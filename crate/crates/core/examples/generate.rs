//! Grow a CDPAM graph and write it as an edge list.
//!
//! cargo run --release --example generate -- 0.6 5000 7 graph.txt

use std::fs::File;
use std::io::BufWriter;

use cdpam::generator::{generate_cdpam, ModelParams};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let beta: f64 = args.first().map_or(Ok(0.6), |s| s.parse())?;
    let n: usize = args.get(1).map_or(Ok(5000), |s| s.parse())?;
    let seed: u64 = args.get(2).map_or(Ok(7), |s| s.parse())?;

    let g = generate_cdpam(&ModelParams::standard(beta, n, seed))?;
    println!(
        "beta={beta} n={n} seed={seed}: {} nodes, {} edges, max degree {}",
        g.node_count(),
        g.edge_count(),
        g.max_degree()
    );
    if let Some(path) = args.get(3) {
        g.write_edge_list(BufWriter::new(File::create(path)?))?;
        println!("wrote {path}");
    }
    Ok(())
}
