//! Sum-product quantities: difference-product sets and the ratio-map census.

use fqgeom::constructions::{default_ratio_interval, null_product_set, ratio_identity_holds, ratio_map_census};

fn main() -> fqgeom::Result<()> {
    let x = [0, 1, 2, 3];
    let r = null_product_set(17, &x, &x)?;
    println!("X = {x:?} in F_17");
    println!("kappa = {}", r.measured["kappa"]);
    println!("sign variants {}", r.measured["sign_variant_sizes"]);
    for q in [29u64, 101, 197] {
        let c = ratio_map_census(q, None)?;
        println!(
            "q = {q}: interval length {}, |(I-I)/(I-I)| = {}, census min {} max {}",
            default_ratio_interval(q),
            c.measured["quotient_set_size"],
            c.measured["census_min"],
            c.measured["census_max"]
        );
    }
    let (tested, ok) = ratio_identity_holds(13, &[0, 1, 2, 5])?;
    println!("ratio identity on {tested} triples: {ok}");
    Ok(())
}
