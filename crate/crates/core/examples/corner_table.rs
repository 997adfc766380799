//! Shrinkage and degrees-of-freedom estimates at every corner for
//! n = 2, 3, 4 on the five-variable exponential correlation spectrum.

use pls_geometry::cli::corner_table;
use pls_geometry::model::{exp_correlation, spectrum_from_gram, PlsConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = spectrum_from_gram(&exp_correlation(5, 1.0 / 3.0)?, 1e-10)?;
    let table = corner_table(&s, 2, 4, &PlsConfig::default())?;
    for row in table.rows() {
        let nums: Vec<String> = row[2..]
            .iter()
            .map(|v| {
                let x: f64 = v.parse().unwrap();
                if x.abs() < 1e5 { format!("{x:>10.2}") } else { format!("{x:>10.2e}") }
            })
            .collect();
        println!("{} {:<8} {}", row[0], row[1], nums.join(" "));
    }
    Ok(())
}
