//! Build the explicit small-distance-set constructions and print their reports.

use fqgeom::constructions::{minkowski_distance_set, null_product_set, sharpness_even, sharpness_odd, sharpness_simplex};

fn main() -> fqgeom::Result<()> {
    let reports = [
        sharpness_odd(7, 3, 3)?,
        sharpness_odd(5, 5, 2)?,
        sharpness_even(13, 2, 1.0)?,
        sharpness_even(5, 4, 0.5)?,
        sharpness_simplex(13, 2, 2, 0.1)?,
    ];
    for r in &reports {
        println!("{:<20} |E| = {:>5}  passed = {}", r.name, r.set_size, r.passed());
        if let Some(ds) = r.measured.get("distance_set") {
            println!("    distance set {ds}");
        }
    }
    println!("{}", null_product_set(13, &[0, 1, 3], &[2, 5])?.to_json());
    println!("{}", minkowski_distance_set(7, &[0, 1, 2], &[0, 1, 2])?.to_json());
    Ok(())
}
