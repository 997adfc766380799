//! Eigenvalues of an exponential correlation matrix.
//!
//! ```text
//! cargo run --example spectrum -- 5 0.3333
//! ```

use pls_geometry::model::{exp_correlation, spectrum_from_gram};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map_or(Ok(5), |s| s.parse())?;
    let rate: f64 = args.next().map_or(Ok(1.0 / 3.0), |s| s.parse())?;

    let gram = exp_correlation(m, rate)?;
    let s = spectrum_from_gram(&gram, 1e-10)?;
    for (i, l) in s.values().iter().enumerate() {
        println!("lambda_{} = {l:.5}", i + 1);
    }
    println!("condition number {:.4}", s.condition_number());
    Ok(())
}
