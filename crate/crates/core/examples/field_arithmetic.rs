//! Arithmetic in a prime field: inverses, square roots and the Legendre symbol.

use fqgeom::PrimeField;

fn main() -> fqgeom::Result<()> {
    let f = PrimeField::new(13)?;
    println!("F_13: smallest non-square = {}", f.smallest_nonsquare());
    for a in 1..f.q() {
        let root = f.sqrt(a).map_or("-".to_string(), |r| r.to_string());
        println!(
            "a = {a:>2}  inverse = {:>2}  legendre = {:>2}  sqrt = {root}",
            f.inv(a).unwrap(),
            f.legendre(a)
        );
    }
    println!("2^12 = {} (Fermat)", f.pow(2, 12));
    match PrimeField::new(15) {
        Err(e) => println!("PrimeField::new(15) -> {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
