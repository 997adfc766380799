//! Sign patterns: all admissible residual signatures for m = 6, n = 3, and
//! the template of a simplex of corners with its strict completions.

use pls_geometry::geometry::{enumerate_signatures, expand_template, simplex_template};
use pls_geometry::subset::IndexSubset;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in enumerate_signatures(6, 3)? {
        let changes: Vec<String> = p.change_positions().unwrap().iter().map(|c| c.to_string()).collect();
        println!("{p}  changes after {}", changes.join(","));
    }

    let t = IndexSubset::from_one_based(&[2, 5, 7, 8, 10], 12)?;
    let template = simplex_template(12, &t)?;
    println!("\ntemplate {template}");
    for p in expand_template(&template, 4)? {
        println!("  {p}");
    }
    Ok(())
}
