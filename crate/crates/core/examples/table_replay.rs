//! Replaying the bundled cospectral-pair fixtures.
//!
//! Set `SPECTRAL_CAYLEY_FIXTURES` to read `cospectral_tables.json` from another
//! directory.

use cayley_spectra::fixtures::{replay_fixture, table_fixtures_from_env};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let records = table_fixtures_from_env()?;
    let mut ok = 0;
    for rec in &records {
        let out = replay_fixture(rec)?;
        ok += usize::from(out.passed);
        println!(
            "{:<14} {:>4} vertices  degree {}  cospectral {:<5}  isomorphic {:<5}  {}  ({:.2?})",
            out.id,
            out.vertices,
            out.s_degree,
            out.cospectral,
            out.isomorphic,
            if out.passed { "ok" } else { "MISMATCH" },
            out.elapsed
        );
    }
    println!("{ok} of {} rows reproduce", records.len());
    Ok(())
}
