//! Given a residual z, list the extreme rays of the cone of squared
//! observations producing it, decompose one such observation on the rays
//! and shrink its support.

use pls_geometry::geometry::{caratheodory_reduce, inverse_rays, ray_membership};
use pls_geometry::model::{EigenSpectrum, PlsConfig, SquaredObservation};
use pls_geometry::shrinkage::shrinkage_direct;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let s = EigenSpectrum::new(vec![3.185, 0.981, 0.411, 0.241, 0.181])?;
    let psi = SquaredObservation::new(vec![1.0, 0.25, 0.09, 1.0, 1.0], 1e-12)?;
    let n = 2;
    let cfg = PlsConfig::new(n);

    let z = shrinkage_direct(&s, &psi, n, &cfg)?.z;
    let fan = inverse_rays(&s, &z, n, &cfg)?;
    println!("z signature {}  sections {:?}  {} rays", fan.signature, fan.sections, fan.k_z());
    for (tau, ray) in fan.supports.iter().zip(&fan.rays) {
        let r: Vec<String> = ray.iter().map(|v| format!("{v:.4}")).collect();
        println!("  {tau}: {}", r.join(" "));
    }

    let dec = ray_membership(&s, &psi, &z, &fan)?;
    println!("coefficients {:?}", dec.coefficients);
    println!("residual {:.2e}", dec.residual);

    let reduced = caratheodory_reduce(&s, &psi, n, &cfg)?;
    println!("reduced psi {:?}", reduced.values());
    let z2 = shrinkage_direct(&s, &reduced, n, &cfg)?.z;
    println!("z before {:?}\nz after  {:?}", z, z2);
    Ok(())
}
