//! Assemble fractional differentiation matrices on both modal bases, report
//! their condition numbers, and dump one of them to disk.
//!
//! ```bash
//! cargo run --release --example assemble_dm
//! ```

use hermfrac::fracdm::{dm_normalized_1d, dm_overscaled_1d, FracDiffMatrix, FracOrder};
use hermfrac::solve::condition_number;

fn main() -> hermfrac::Result<()> {
    let alpha = FracOrder::new(1.0)?;
    println!("condition numbers of the 1-D matrices, alpha = 1:");
    println!("{:>4} {:>14} {:>14}", "N", "over-scaled", "normalized");
    for n in [8usize, 16, 32] {
        let over = dm_overscaled_1d(n, alpha, 1.0)?;
        let norm = dm_normalized_1d(n, alpha, 1.0)?;
        println!(
            "{n:>4} {:>14.4e} {:>14.4e}",
            condition_number(&over.entries),
            condition_number(&norm.entries)
        );
    }

    let dm = dm_overscaled_1d(16, alpha, 1.0)?;
    let path = std::env::temp_dir().join("fractional_dm_16.csv");
    dm.write_csv(&path)?;
    let back = FracDiffMatrix::read_csv(&path)?;
    assert_eq!(dm, back);
    println!("\nwrote and re-read {} (bit-exact)", path.display());
    Ok(())
}
