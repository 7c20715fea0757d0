//! A seeded scan of class counts against set size, as the CLI `scan` runs it.

use fqgeom::run::{render, run_scan, scan_summary, OutputFormat, RunConfig};

fn main() -> fqgeom::Result<()> {
    let cfg = RunConfig {
        q_list: vec![7, 11],
        d: 2,
        k: 2,
        trials: 4,
        seed: 42,
        sizes: vec![8, 16, 32, 49],
        ..Default::default()
    };
    let rows = run_scan(&cfg)?;
    print!("{}", render(&rows, OutputFormat::Csv)?);
    println!();
    print!("{}", render(&scan_summary(&rows), OutputFormat::Csv)?);
    Ok(())
}
