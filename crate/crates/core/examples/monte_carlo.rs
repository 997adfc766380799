//! Distribution of the degrees-of-freedom estimate under Gaussian noise.
//!
//! ```text
//! cargo run --release --example monte_carlo -- 20000 1
//! ```

use pls_geometry::dof::{mc_gdof, McConfig};
use pls_geometry::model::{exp_correlation, spectrum_from_gram, PlsConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let reps: usize = args.next().map_or(Ok(20_000), |s| s.parse())?;
    let seed: u64 = args.next().map_or(Ok(1), |s| s.parse())?;

    let s = spectrum_from_gram(&exp_correlation(5, 1.0 / 3.0)?, 1e-10)?;
    let mc = McConfig {
        beta: vec![0.1, 0.01, 0.01, 5.0, 5.0],
        sigma: 0.02,
        replications: reps,
        seed,
        n: 3,
    };
    let res = mc_gdof(&s, &mc, &PlsConfig::default())?;
    println!("mean gdof   {:.4}", res.mean_gdof);
    if let Some(se) = res.mc_se {
        println!("mc se       {se:.4}");
    }
    println!("P[gdof < 0] {:.4}", res.prob_negative);
    println!("excluded    {}", res.excluded.len());

    let sorted = res.sorted_gdof();
    for q in [0.05, 0.25, 0.5, 0.75, 0.95] {
        let i = ((sorted.len() - 1) as f64 * q).round() as usize;
        println!("q{:<4} {:>10.3}", q, sorted[i]);
    }
    Ok(())
}
