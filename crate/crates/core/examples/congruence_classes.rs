//! Count congruence and similarity classes of simplices in a small set, in both
//! counting modes, and print the exact class inventory.

use fqgeom::groups::{orthogonal_group, GroupVariant};
use fqgeom::simplices::{
    class_inventory_csv, count_congruence_classes, count_similarity_classes, exact_orbit_classes,
    verify_counting_identity, CountMode, CountOptions, Scaling,
};
use fqgeom::{PointSet, PrimeField, QuadraticForm};

fn main() -> fqgeom::Result<()> {
    let f = PrimeField::new(5)?;
    let form = QuadraticForm::dot(f, 2);
    let e = PointSet::from_points(f, 2, &[&[0, 0], &[1, 0], &[0, 1], &[2, 3], &[4, 4]])?;
    for k in 1..=2 {
        let fast = count_congruence_classes(&e, k, &form, &CountOptions::default())?;
        let exact = count_congruence_classes(
            &e,
            k,
            &form,
            &CountOptions {
                mode: CountMode::ExactOrbit,
                ..Default::default()
            },
        )?;
        let similar = count_similarity_classes(&e, k, &form, Scaling::SquaresOnly)?;
        println!("k={k}: fast {fast:?}");
        println!("     exact {exact:?}");
        println!("     similarity classes {similar}");
    }
    let g = orthogonal_group(&form, GroupVariant::Full)?;
    let check = verify_counting_identity(&e, 2, &g)?;
    println!("sum s(D) mu(D)^2 = {} and sum nu^3 = {}", check.lhs, check.rhs);
    print!("{}", class_inventory_csv(&exact_orbit_classes(&e, 1, &g, false)?));
    Ok(())
}
