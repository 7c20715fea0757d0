//! Split the quadruple count of a subset of the unit circle into its three parts.

use fqgeom::geometry::sphere_points;
use fqgeom::groups::{orthogonal_group, GroupVariant};
use fqgeom::simplices::dot_level_decomposition;
use fqgeom::{PointSet, PrimeField, QuadraticForm};

fn main() -> fqgeom::Result<()> {
    for q in [3u64, 5, 7] {
        let f = PrimeField::new(q)?;
        let form = QuadraticForm::dot(f, 2);
        let g = orthogonal_group(&form, GroupVariant::Full)?;
        let circle = sphere_points(&form, 1)?;
        let half: Vec<usize> = circle.indices().into_iter().step_by(2).collect();
        for (name, e) in [("full circle", circle.clone()), ("every other point", PointSet::from_indices(f, 2, half)?)] {
            let dec = dot_level_decomposition(&e, &g)?;
            println!(
                "q={q} {name:<17} |E|={:>2}: {} = {} + {} + {}  (holds: {}), sum nu^2 = {} <= {:.2}",
                dec.set_size,
                dec.f_square_sum,
                dec.s,
                dec.t,
                dec.r,
                dec.decomposition_holds(),
                dec.nu_square_sum,
                dec.nu_square_bound
            );
        }
    }
    Ok(())
}
