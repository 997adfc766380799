//! Varying one entry of psi moves z along a segment between two endpoints.

use pls_geometry::model::{EigenSpectrum, PlsConfig, SquaredObservation};
use pls_geometry::shrinkage::{marginal_segment, shrinkage_direct};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = EigenSpectrum::new(vec![3.185, 0.981, 0.411, 0.241, 0.181])?;
    let base = SquaredObservation::new(vec![1.0, 0.5, 2.0, 1.0, 0.3], 1e-12)?;
    let (n, k) = (2, 1);
    let cfg = PlsConfig::new(n);

    for psi_k in [0.0, 0.1, 1.0, 10.0, 1e3, 1e6] {
        let psi = base.with_entry(k, psi_k);
        let seg = marginal_segment(&s, &psi, n, k, &cfg)?;
        let z = if psi_k > 0.0 { shrinkage_direct(&s, &psi, n, &cfg)?.z } else { seg.endpoint_zero.clone() };
        println!("psi_k = {psi_k:>9.1e}  t = {:.6}  z_k = {:>9.5}", seg.t, z[k]);
    }
    let seg = marginal_segment(&s, &base, n, k, &cfg)?;
    println!("endpoint at 0   {:?}", seg.endpoint_zero);
    println!("endpoint at inf {:?}", seg.endpoint_inf);
    Ok(())
}
