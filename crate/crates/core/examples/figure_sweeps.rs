//! Writes the closed-form curves of every figure preset, then one spectral
//! curve on a coarse grid. Pass a directory to keep the files.

use std::path::PathBuf;

use fisher_discord::sweep::{preset, write_figures};
use fisher_discord::FockConfig;

fn main() -> fisher_discord::Result<()> {
    let dir = std::env::args().nth(1).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("fdiscord-figures"));
    let cfg = FockConfig::default();
    let written = write_figures(&dir, &cfg, true)?;
    println!("{} closed-form curves in {}", written.len(), dir.display());

    let fig5 = preset("fig5", &cfg)?.with_count(6)?;
    for (name, table) in fig5.run()? {
        let closed = table.column("c_closed").unwrap_or_default();
        let spectral = table.column("c_spectral").unwrap_or_default();
        let gap = closed.iter().zip(&spectral).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        println!("{name}: {} rows, closed vs spectral gap {gap:.2e}", table.rows.len());
    }
    Ok(())
}
