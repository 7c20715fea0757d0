//! Classify forms, compare sphere sizes with the closed formula, and find null vectors.

use fqgeom::geometry::{find_null_structure, sphere_size_census, sphere_size_formula};
use fqgeom::{PrimeField, QuadraticForm};

fn main() -> fqgeom::Result<()> {
    let f = PrimeField::new(7)?;
    let forms = [
        ("x^2 + y^2", QuadraticForm::dot(f, 2)),
        ("x^2 + 3y^2", QuadraticForm::diagonal(f, &[1, 3])),
        ("hyperbolic plane", QuadraticForm::hyperbolic_plane(f)),
        ("x^2 + y^2 + z^2", QuadraticForm::dot(f, 3)),
    ];
    for (name, form) in &forms {
        let class = form.classify()?;
        let census = sphere_size_census(form)?;
        let formula: Vec<u64> = (0..f.q()).map(|r| sphere_size_formula(form, r)).collect::<Result<_, _>>()?;
        println!("{name}: {:?}, Witt index {}", class.kind, class.witt_index());
        println!("  |S_r| enumerated {census:?}");
        println!("  |S_r| formula    {formula:?}");
        match find_null_structure(form, 1, false) {
            Ok(ns) => println!("  first null vector {}", ns.null_vectors[0]),
            Err(e) => println!("  {e}"),
        }
    }
    Ok(())
}
