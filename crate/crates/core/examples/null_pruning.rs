//! Null-coordinate pruning of a planar set when -1 is a square.

use fqgeom::spectral::{null_coordinate_prune, null_pair_count, NullBasis};
use fqgeom::{PointSet, PrimeField};

fn main() -> fqgeom::Result<()> {
    let f = PrimeField::new(13)?;
    let basis = NullBasis::new(&f)?;
    println!("iota = {} (iota^2 = {})", basis.iota, f.mul(basis.iota, basis.iota));
    // A cross: ten points on one null axis and nine on the other.
    let mut pts = Vec::new();
    for t in 0..10 {
        pts.push(basis.point(&f, 0, t));
    }
    for t in 1..10 {
        pts.push(basis.point(&f, t, 0));
    }
    let vectors: Vec<_> = pts.iter().map(|p| fqgeom::Vector(p.to_vec())).collect();
    let e = PointSet::from_vectors(f, 2, &vectors)?;
    let report = null_coordinate_prune(&e)?;
    println!(
        "|E| = {}, rich threshold {:.2}, wealthy threshold {:.2}",
        report.original_size, report.rich_threshold, report.wealthy_threshold
    );
    println!("wealthy lines: {} plus, {} minus; discarded {}, kept {}", report.wealthy_plus, report.wealthy_minus, report.discarded, report.kept.len());
    println!("case: {:?}; within bounds: {}", report.case, report.within_bounds());
    let (pairs, bound) = null_pair_count(&e)?;
    println!("null-distance pairs {pairs} <= {bound:.1}");
    Ok(())
}
