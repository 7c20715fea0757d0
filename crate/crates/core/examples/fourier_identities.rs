//! Fourier transform of a set: Plancherel, the product formula for the
//! transform of the motion count, and the planar spherical-energy bounds.

use fqgeom::groups::{orthogonal_group, GroupVariant};
use fqgeom::sampling::Sampler;
use fqgeom::spectral::{energy_bounds, fourier_transform, nu_hat_identity_check, TOLERANCES};
use fqgeom::{PrimeField, QuadraticForm};

fn main() -> fqgeom::Result<()> {
    let f = PrimeField::new(7)?;
    let form = QuadraticForm::dot(f, 2);
    let g = orthogonal_group(&form, GroupVariant::Full)?;
    let mut rng = Sampler::new(2024);
    for size in [5, 15, 30] {
        let e = rng.point_set(f, 2, size)?;
        let table = fourier_transform(&e)?;
        let theta = &g.elements()[rng.below(g.order() as u64) as usize];
        let nu = nu_hat_identity_check(&e, theta)?;
        let b = energy_bounds(&e, &form)?;
        println!("|E| = {size}");
        println!("  sum |E^|^2 = {:.12}, |E|/q^2 = {:.12}", table.plancherel_sum(), size as f64 / 49.0);
        println!("  product formula residual {:.2e} (flipped signs: {:.2e})", nu.max_error, nu.conjugate_form_error);
        println!(
            "  max sigma(t) {:.3e} <= {:.3e}, M {:.3e} <= {:.3e}: {}",
            b.sigma_max,
            b.sigma_bound,
            b.m,
            b.m_bound,
            b.holds(&TOLERANCES)
        );
    }
    Ok(())
}
