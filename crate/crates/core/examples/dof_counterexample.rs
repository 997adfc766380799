//! A sparse observation with negative estimated degrees of freedom, and the
//! corner spectrum where every off-support shrinkage is negative.

use pls_geometry::dof::{gdof_corner, prediction_jacobian};
use pls_geometry::model::{exp_correlation, spectrum_from_gram, EigenSpectrum, ObservationVector, PlsConfig};
use pls_geometry::shrinkage::{corner_shrinkage, extreme_bound};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = spectrum_from_gram(&exp_correlation(5, 1.0 / 3.0)?, 1e-10)?;
    let y = ObservationVector::new(vec![1.0, 0.0, 0.0, 1.0, 1.0], 1e-12)?;
    let n = 3;
    let rep = prediction_jacobian(&s, &y, n, &PlsConfig::new(n))?;
    println!("omega {:?}", rep.omega);
    println!("gdof {:.5}  gdof_dp {:.3}  (n = {n})", rep.gdof_hat, rep.gdof_dp_hat);
    println!("finite-difference check {:.1e}", rep.fd_error);

    let s = EigenSpectrum::new(vec![40.0, 20.0, 8.0, 1.0, 0.8])?;
    let n = 2;
    let b = extreme_bound(&s, n)?;
    let c = corner_shrinkage(&s, &b.tau_tail, &PlsConfig::new(n))?;
    let (g, _) = gdof_corner(&s, &b.tau_tail);
    println!("\ngap c = {:.2}, bound {:.3}", b.c, b.bound);
    println!("tail corner {}  omega {:?}", b.tau_tail, c.omega);
    println!("gdof {g:.3} < {n}");
    Ok(())
}
