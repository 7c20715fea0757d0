//! Generate orthogonal groups, check them against the order recursion, and
//! look at an orbit and a stabilizer.

use fqgeom::groups::{group_order_recursion, orthogonal_group, GroupVariant};
use fqgeom::{PrimeField, QuadraticForm, Vector};

fn main() -> fqgeom::Result<()> {
    for (q, d) in [(3, 2), (5, 2), (7, 2), (3, 3), (5, 3)] {
        let form = QuadraticForm::dot(PrimeField::new(q)?, d);
        let o = orthogonal_group(&form, GroupVariant::Full)?;
        let so = orthogonal_group(&form, GroupVariant::Special)?;
        println!(
            "q={q} d={d}: |O| = {:>5} (recursion {:>5}), |SO| = {:>5}, generated by {:?}",
            o.order(),
            group_order_recursion(&form)?,
            so.order(),
            o.generation()
        );
    }
    let f = PrimeField::new(5)?;
    let g = orthogonal_group(&QuadraticForm::dot(f, 2), GroupVariant::Full)?;
    let pair = [Vector(vec![1, 0]), Vector(vec![0, 1])];
    println!("orbit of ((1,0),(0,1)) under O_2(F_5): {} pairs", g.orbit(&pair).len());
    println!("stabilizer of (1,0): {} elements", g.stabilizer(&pair[..1]).order());
    Ok(())
}
