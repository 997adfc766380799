//! The shrinkage vector computed by the linear solve and as a weighted
//! average over corners, side by side.

use pls_geometry::linalg::max_mixed_deviation;
use pls_geometry::model::{EigenSpectrum, ObservationVector, PlsConfig};
use pls_geometry::shrinkage::{shrinkage_average, shrinkage_direct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = EigenSpectrum::new(vec![3.185, 0.981, 0.411, 0.241, 0.181])?;
    let y = ObservationVector::new(vec![1.0, 0.5, -0.3, 1.0, 1.0], 1e-12)?;
    let psi = y.squared();
    let n = 2;
    let cfg = PlsConfig::new(n);

    let direct = shrinkage_direct(&s, &psi, n, &cfg)?;
    let avg = shrinkage_average(&s, &psi, n, &cfg)?;

    println!("{:>3} {:>12} {:>12}", "i", "direct", "average");
    for i in 0..s.dim() {
        println!("{:>3} {:>12.6} {:>12.6}", i + 1, direct.omega[i], avg.triple.omega[i]);
    }
    println!("alpha = {:?}", direct.alpha);
    println!("deviation {:.2e}", max_mixed_deviation(&direct.omega, &avg.triple.omega));

    let mut w = avg.weights.clone();
    w.sort_by(|a, b| b.1.total_cmp(&a.1));
    println!("heaviest corners:");
    for (tau, p) in w.iter().take(3) {
        println!("  {tau}  p = {p:.4}");
    }
    Ok(())
}
