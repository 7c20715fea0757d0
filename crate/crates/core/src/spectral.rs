//! Fourier analysis of indicator functions on `F_q^d`.
//!
//! `Ê(α) = q^{-d} Σ_x E(x) χ(−α·x)` with `χ(t) = exp(2πi t / q)` and the standard
//! dot product. Transforms are direct sums: for each frequency the members are
//! first binned by phase with integer counts, then the `q` bins are combined in
//! a fixed order, so values are reproducible bit for bit.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{PointSet, QuadraticForm, Space};
use crate::gf::PrimeField;
use crate::groups::Isometry;
use crate::simplices::nu_table;

/// Every floating-point tolerance used by checks in this crate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Absolute error allowed for `Ê(0) = |E| / q^d`.
    pub transform_abs: f64,
    /// Relative error for Plancherel.
    pub plancherel_rel: f64,
    /// Identity residuals must stay below `identity_per_point * |E|`.
    pub identity_per_point: f64,
    /// Additive slack for inequalities.
    pub bound_slack: f64,
}

pub const TOLERANCES: Tolerances = Tolerances {
    transform_abs: 1e-12,
    plancherel_rel: 1e-9,
    identity_per_point: 1e-9,
    bound_slack: 1e-9,
};

/// `χ(j)` for `j = 0..q`.
pub fn character_table(f: &PrimeField) -> Vec<Complex64> {
    let q = f.q() as f64;
    (0..f.q())
        .map(|j| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * j as f64 / q))
        .collect()
}

/// Values of a transform at every frequency, indexed like points.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralTable {
    field: PrimeField,
    dim: usize,
    values: Vec<Complex64>,
}

impl SpectralTable {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn get(&self, xi: usize) -> Complex64 {
        self.values[xi]
    }

    pub fn plancherel_sum(&self) -> f64 {
        self.values.iter().map(|v| v.norm_sqr()).sum()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("xi_index,re,im\n");
        for (i, v) in self.values.iter().enumerate() {
            out.push_str(&format!("{i},{:e},{:e}\n", v.re, v.im));
        }
        out
    }
}

/// Transform of an integer-valued function given as `(point, weight)` pairs.
fn transform_weighted(space: &Space, support: &[(usize, u64)]) -> Vec<Complex64> {
    let f = space.field();
    let chi = character_table(&f);
    let scale = (space.size() as f64).recip();
    let q = f.q() as usize;
    (0..space.size())
        .into_par_iter()
        .map_init(
            || vec![0u64; q],
            |bins, xi| {
                bins.iter_mut().for_each(|b| *b = 0);
                for &(x, w) in support {
                    let phase = space.dot(xi, x) as usize;
                    bins[if phase == 0 { 0 } else { q - phase }] += w;
                }
                let mut acc = Complex64::new(0.0, 0.0);
                for (j, &b) in bins.iter().enumerate() {
                    if b != 0 {
                        acc += chi[j] * b as f64;
                    }
                }
                acc * scale
            },
        )
        .collect()
}

pub fn fourier_transform(e: &PointSet) -> Result<SpectralTable> {
    let space = Space::new(e.field(), e.dim())?;
    let support: Vec<(usize, u64)> = e.indices().into_iter().map(|i| (i, 1)).collect();
    Ok(SpectralTable {
        field: e.field(),
        dim: e.dim(),
        values: transform_weighted(&space, &support),
    })
}

/// Residuals of the product formula for `ν̂_θ`, where `ν_θ(z) = #{(u,v) ∈ E² : u − θv = z}`.
///
/// With the sign convention of this module, `ν̂_θ(ξ) = q^d Ê(ξ) Ê(−θ^T ξ)`; that is
/// what `max_error` measures. `conjugate_form_error` measures the same formula
/// with the signs of both arguments flipped, `q^d Ê(−ξ) Ê(θ^T ξ)`, which equals
/// `ν̂_θ(−ξ)` and so agrees only when `ν̂_θ` is real.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NuHatCheck {
    pub max_error: f64,
    pub conjugate_form_error: f64,
    pub set_size: usize,
}

impl NuHatCheck {
    pub fn holds(&self, tol: &Tolerances) -> bool {
        self.max_error < tol.identity_per_point * (self.set_size.max(1) as f64)
    }
}

pub fn nu_hat_identity_check(e: &PointSet, theta: &Isometry) -> Result<NuHatCheck> {
    let f = e.field();
    let space = Space::new(f, e.dim())?;
    let e_hat = fourier_transform(e)?;
    let nu = nu_table(e, theta, None)?;
    let support: Vec<(usize, u64)> = nu.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
    let nu_hat = transform_weighted(&space, &support);
    let theta_t = theta.transpose();
    let qd = space.size() as f64;
    let (max_error, conjugate_form_error) = (0..space.size())
        .into_par_iter()
        .map(|xi| {
            let t_xi = space.index(&theta_t.mul_vec(&f, space.coords(xi)));
            let ours = e_hat.get(xi) * e_hat.get(space.neg(t_xi)) * qd;
            let flipped = e_hat.get(space.neg(xi)) * e_hat.get(t_xi) * qd;
            ((nu_hat[xi] - ours).norm(), (nu_hat[xi] - flipped).norm())
        })
        .reduce(|| (0.0, 0.0), |a, b| (a.0.max(b.0), a.1.max(b.1)));
    Ok(NuHatCheck {
        max_error,
        conjugate_form_error,
        set_size: e.len(),
    })
}

/// `σ_E(t) = Σ_{Q(ξ) = t} |Ê(ξ)|²` and `M_E = Σ_{t ≠ 0} σ_E(t)²`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphericalEnergy {
    pub sigma: Vec<f64>,
    pub m: f64,
}

fn level_sums(table: &SpectralTable, other: &SpectralTable, form: &QuadraticForm) -> Result<Vec<Complex64>> {
    let space = Space::new(table.field, table.dim)?;
    let mut sums = vec![Complex64::new(0.0, 0.0); table.field.q() as usize];
    for xi in 0..space.size() {
        sums[form.eval(space.coords(xi)) as usize] += table.get(xi) * other.get(xi).conj();
    }
    Ok(sums)
}

pub fn spherical_energy(e: &PointSet, form: &QuadraticForm) -> Result<SphericalEnergy> {
    let t = fourier_transform(e)?;
    let sigma: Vec<f64> = level_sums(&t, &t, form)?.into_iter().map(|c| c.re).collect();
    let m = sigma[1..].iter().map(|s| s * s).sum();
    Ok(SphericalEnergy { sigma, m })
}

/// `σ_{E₁,E₂}(t) = Σ_{Q(ξ) = t} Ê₁(ξ) conj(Ê₂(ξ))`.
pub fn mixed_spherical_energy(e1: &PointSet, e2: &PointSet, form: &QuadraticForm) -> Result<Vec<Complex64>> {
    level_sums(&fourier_transform(e1)?, &fourier_transform(e2)?, form)
}

/// Planar energy bounds `σ_E(t) ≤ √3 |E|^{3/2} / q³` for `t ≠ 0` and `M_E ≤ √3 |E|^{5/2} / q⁵`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EnergyBounds {
    pub sigma_max: f64,
    pub sigma_bound: f64,
    pub m: f64,
    pub m_bound: f64,
}

impl EnergyBounds {
    pub fn holds(&self, tol: &Tolerances) -> bool {
        self.sigma_max <= self.sigma_bound + tol.bound_slack && self.m <= self.m_bound + tol.bound_slack
    }
}

pub fn energy_bounds(e: &PointSet, form: &QuadraticForm) -> Result<EnergyBounds> {
    if form.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            got: form.dim(),
        });
    }
    let energy = spherical_energy(e, form)?;
    let n = e.len() as f64;
    let q = e.field().q() as f64;
    Ok(EnergyBounds {
        sigma_max: energy.sigma[1..].iter().copied().fold(0.0, f64::max),
        sigma_bound: 3f64.sqrt() * n.powf(1.5) / q.powi(3),
        m: energy.m,
        m_bound: 3f64.sqrt() * n.powf(2.5) / q.powi(5),
    })
}

/// `Σ fⁿ` against `|F| (‖f‖₁/|F|)ⁿ + n(n−1)/2 · ‖f‖_∞^{n−2} Σ (f − ‖f‖₁/|F|)²`.
pub fn taylor_bound_check(values: &[f64], n: u32) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::BadExponent(n));
    }
    if values.iter().any(|&v| v < 0.0 || v.is_nan()) {
        return Err(Error::NegativeValue);
    }
    if values.is_empty() {
        return Ok((0.0, 0.0));
    }
    let len = values.len() as f64;
    let mean = values.iter().sum::<f64>() / len;
    let sup = values.iter().copied().fold(0.0, f64::max);
    let lhs = values.iter().map(|v| v.powi(n as i32)).sum();
    let var: f64 = values.iter().map(|v| (v - mean).powi(2)).sum();
    let rhs = len * mean.powi(n as i32) + (n * (n - 1)) as f64 / 2.0 * sup.powi(n as i32 - 2) * var;
    Ok((lhs, rhs))
}

/// Coordinates with respect to `n_± = (1, ±ι)`: `x = a·n_+ + b·n_−`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NullBasis {
    pub iota: u32,
    /// `⟨n_+, n_−⟩` for the dot product.
    pub cross: u32,
}

impl NullBasis {
    pub fn new(f: &PrimeField) -> Result<Self> {
        if f.q() % 4 != 1 {
            return Err(Error::WrongResidueClass { q: f.q(), expected: 1 });
        }
        let iota = f.sqrt(f.neg(1)).expect("-1 is a square when q = 1 mod 4");
        Ok(NullBasis { iota, cross: 2 })
    }

    /// `(a, b)` with `x = a n_+ + b n_−`.
    pub fn coordinates(&self, f: &PrimeField, x: &[u32]) -> (u32, u32) {
        let half = f.inv(2).unwrap();
        let y = f.div(x[1], self.iota).unwrap();
        (f.mul(half, f.add(x[0], y)), f.mul(half, f.sub(x[0], y)))
    }

    pub fn point(&self, f: &PrimeField, a: u32, b: u32) -> [u32; 2] {
        [f.add(a, b), f.mul(self.iota, f.sub(a, b))]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum NullAxis {
    /// The `n_+` coefficient `a`.
    Plus,
    /// The `n_−` coefficient `b`.
    Minus,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum PruneCase {
    /// Every coordinate value is poor.
    AllPoor,
    /// Some value on `rich_axis` is rich. `E₁` and `E₂` use disjoint sets of
    /// values on the other axis; `balanced` is false when one part is empty.
    RichPoor {
        rich_axis: NullAxis,
        e1: Vec<usize>,
        e2: Vec<usize>,
        balanced: bool,
    },
}

/// Outcome of removing points that are wealthy in both null coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PruneReport {
    pub basis: NullBasis,
    pub original_size: usize,
    /// `2 √|E|`, for the pruned set.
    pub rich_threshold: f64,
    /// `√(2|E|)`, for the original set.
    pub wealthy_threshold: f64,
    pub wealthy_plus: usize,
    pub wealthy_minus: usize,
    pub discarded: usize,
    pub kept: Vec<usize>,
    pub case: PruneCase,
}

impl PruneReport {
    /// `mn ≤ |E|/2` and at most half of the points were dropped.
    pub fn within_bounds(&self) -> bool {
        2 * self.wealthy_plus * self.wealthy_minus <= self.original_size && 2 * self.discarded <= self.original_size
    }
}

fn histogram(values: impl Iterator<Item = u32>, q: u32) -> Vec<usize> {
    let mut h = vec![0usize; q as usize];
    values.for_each(|v| h[v as usize] += 1);
    h
}

pub fn null_coordinate_prune(e: &PointSet) -> Result<PruneReport> {
    let f = e.field();
    if e.dim() != 2 {
        return Err(Error::DimensionMismatch { expected: 2, got: e.dim() });
    }
    let basis = NullBasis::new(&f)?;
    let space = Space::new(f, 2)?;
    let pts: Vec<(usize, u32, u32)> = e
        .indices()
        .into_iter()
        .map(|i| {
            let (a, b) = basis.coordinates(&f, space.coords(i));
            (i, a, b)
        })
        .collect();
    let n = pts.len() as f64;
    let wealthy_threshold = (2.0 * n).sqrt();
    let hp = histogram(pts.iter().map(|p| p.1), f.q());
    let hm = histogram(pts.iter().map(|p| p.2), f.q());
    let wealthy = |c: usize| c as f64 >= wealthy_threshold;
    let kept: Vec<(usize, u32, u32)> = pts
        .iter()
        .copied()
        .filter(|&(_, a, b)| !(wealthy(hp[a as usize]) && wealthy(hm[b as usize])))
        .collect();

    let rich_threshold = 2.0 * (kept.len() as f64).sqrt();
    let kp = histogram(kept.iter().map(|p| p.1), f.q());
    let km = histogram(kept.iter().map(|p| p.2), f.q());
    let top = |h: &[usize]| h.iter().copied().max().unwrap_or(0);
    let rich_plus = top(&kp) as f64 >= rich_threshold && !kept.is_empty();
    let rich_minus = top(&km) as f64 >= rich_threshold && !kept.is_empty();
    let case = if !rich_plus && !rich_minus {
        PruneCase::AllPoor
    } else {
        let rich_axis = if rich_plus && (!rich_minus || top(&kp) >= top(&km)) {
            NullAxis::Plus
        } else {
            NullAxis::Minus
        };
        let split_value = |p: &(usize, u32, u32)| match rich_axis {
            NullAxis::Plus => p.2,
            NullAxis::Minus => p.1,
        };
        let hist = histogram(kept.iter().map(split_value), f.q());
        let mut order: Vec<u32> = (0..f.q()).filter(|&v| hist[v as usize] > 0).collect();
        order.sort_by_key(|&v| (std::cmp::Reverse(hist[v as usize]), v));
        let (mut in_e1, mut s1, mut s2) = (vec![false; f.q() as usize], 0usize, 0usize);
        for v in order {
            if s1 <= s2 {
                in_e1[v as usize] = true;
                s1 += hist[v as usize];
            } else {
                s2 += hist[v as usize];
            }
        }
        let (e1, e2): (Vec<&(usize, u32, u32)>, Vec<_>) = kept.iter().partition(|p| in_e1[split_value(p) as usize]);
        let e1: Vec<usize> = e1.into_iter().map(|p| p.0).collect();
        let e2: Vec<usize> = e2.into_iter().map(|p| p.0).collect();
        PruneCase::RichPoor {
            rich_axis,
            balanced: !e1.is_empty() && !e2.is_empty(),
            e1,
            e2,
        }
    };
    Ok(PruneReport {
        basis,
        original_size: pts.len(),
        rich_threshold,
        wealthy_threshold,
        wealthy_plus: hp.iter().filter(|&&c| wealthy(c)).count(),
        wealthy_minus: hm.iter().filter(|&&c| wealthy(c)).count(),
        discarded: pts.len() - kept.len(),
        kept: kept.into_iter().map(|p| p.0).collect(),
        case,
    })
}

/// `#{(u, v) ∈ E² : u − v ∈ L_+ ∪ L_−}` together with `8 |E|^{3/2}`.
pub fn null_pair_count(e: &PointSet) -> Result<(u64, f64)> {
    let f = e.field();
    let basis = NullBasis::new(&f)?;
    let space = Space::new(f, 2)?;
    let coords: Vec<(u32, u32)> = e.indices().into_iter().map(|i| basis.coordinates(&f, space.coords(i))).collect();
    let count = coords
        .iter()
        .map(|&(a, b)| coords.iter().filter(|&&(c, d)| a == c || b == d).count() as u64)
        .sum();
    Ok((count, 8.0 * (e.len() as f64).powf(1.5)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{orthogonal_group, GroupVariant};
    use proptest::prelude::*;

    fn field(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn null_line(q: u64) -> PointSet {
        let f = field(q);
        let iota = f.sqrt(f.neg(1)).unwrap();
        let pts: Vec<crate::geometry::Vector> = (0..f.q()).map(|t| crate::geometry::Vector(vec![t, f.mul(t, iota)])).collect();
        PointSet::from_vectors(f, 2, &pts).unwrap()
    }

    #[test]
    fn singleton_at_origin() {
        let e = PointSet::from_points(field(3), 2, &[&[0, 0]]).unwrap();
        let t = fourier_transform(&e).unwrap();
        assert!(t.values().iter().all(|v| (v - Complex64::new(1.0 / 9.0, 0.0)).norm() < 1e-15));
    }

    #[test]
    fn null_line_transform_lives_on_a_null_line() {
        let e = null_line(5);
        let t = fourier_transform(&e).unwrap();
        let space = Space::new(field(5), 2).unwrap();
        let form = QuadraticForm::dot(field(5), 2);
        for xi in 0..25 {
            let v = t.get(xi).norm();
            if v > 1e-12 {
                assert!((v - 0.2).abs() < 1e-12);
                assert_eq!(form.eval(space.coords(xi)), 0);
            }
        }
        let energy = spherical_energy(&e, &form).unwrap();
        assert!((energy.sigma[0] - 0.2).abs() < 1e-12);
    }

    #[test]
    fn full_space_energy_vanishes_off_zero() {
        let e = PointSet::full(field(7), 2).unwrap();
        let energy = spherical_energy(&e, &QuadraticForm::dot(field(7), 2)).unwrap();
        assert!(energy.sigma[1..].iter().all(|s| s.abs() < 1e-12));
    }

    #[test]
    fn nu_hat_examples() {
        let f3 = field(3);
        let g = orthogonal_group(&QuadraticForm::dot(f3, 2), GroupVariant::Full).unwrap();
        let origin = PointSet::from_points(f3, 2, &[&[0, 0]]).unwrap();
        let check = nu_hat_identity_check(&origin, &Isometry::identity(2)).unwrap();
        assert!(check.max_error < 1e-15);
        let full = PointSet::full(f3, 2).unwrap();
        for theta in g.elements() {
            assert!(nu_hat_identity_check(&full, theta).unwrap().max_error < 1e-12);
        }
    }

    #[test]
    fn flipped_signs_fail_for_a_rotation() {
        let f5 = field(5);
        let g = orthogonal_group(&QuadraticForm::dot(f5, 2), GroupVariant::Special).unwrap();
        let e = PointSet::from_points(f5, 2, &[&[0, 0], &[1, 0], &[1, 3], &[4, 2]]).unwrap();
        let worst = g
            .elements()
            .iter()
            .map(|th| nu_hat_identity_check(&e, th).unwrap())
            .inspect(|c| assert!(c.holds(&TOLERANCES)))
            .map(|c| c.conjugate_form_error)
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
    }

    #[test]
    fn taylor_examples() {
        let (l, r) = taylor_bound_check(&[2.0, 2.0], 3).unwrap();
        assert!((l - 16.0).abs() < 1e-12 && (r - 16.0).abs() < 1e-12);
        let (l, r) = taylor_bound_check(&[1.0, 0.0], 2).unwrap();
        assert!((l - 1.0).abs() < 1e-12 && (r - 1.0).abs() < 1e-12);
        assert_eq!(taylor_bound_check(&[1.0], 1), Err(Error::BadExponent(1)));
        assert_eq!(taylor_bound_check(&[-1.0], 2), Err(Error::NegativeValue));
    }

    #[test]
    fn prune_examples() {
        let r = null_coordinate_prune(&null_line(5)).unwrap();
        assert_eq!(r.discarded, 0);
        match &r.case {
            PruneCase::RichPoor { rich_axis, e1, e2, balanced } => {
                assert_eq!(*rich_axis, NullAxis::Minus);
                assert!(*balanced);
                assert_eq!((e1.len(), e2.len()), (3, 2));
            }
            other => panic!("expected a rich/poor split, got {other:?}"),
        }
        let generic = PointSet::from_points(field(13), 2, &[&[0, 1], &[3, 7], &[5, 2], &[11, 9]]).unwrap();
        assert_eq!(null_coordinate_prune(&generic).unwrap().case, PruneCase::AllPoor);
        assert!(matches!(
            null_coordinate_prune(&PointSet::full(field(7), 2).unwrap()),
            Err(Error::WrongResidueClass { q: 7, expected: 1 })
        ));
        // a cross in null coordinates: only its centre is wealthy on both axes
        let f13 = field(13);
        let b = NullBasis::new(&f13).unwrap();
        let mut pts: Vec<crate::geometry::Vector> = (0..10).map(|c| crate::geometry::Vector(b.point(&f13, 0, c).to_vec())).collect();
        pts.extend((1..10).map(|a| crate::geometry::Vector(b.point(&f13, a, 0).to_vec())));
        let r = null_coordinate_prune(&PointSet::from_vectors(f13, 2, &pts).unwrap()).unwrap();
        assert_eq!((r.wealthy_plus, r.wealthy_minus, r.discarded), (1, 1, 1));
        assert!(r.within_bounds());
    }

    fn arb_set(q: u32, max: usize) -> impl Strategy<Value = Vec<usize>> {
        proptest::collection::btree_set(0..(q * q) as usize, 1..max).prop_map(|s| s.into_iter().collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn plancherel_and_mass(idx in arb_set(7, 30)) {
            let e = PointSet::from_indices(field(7), 2, idx).unwrap();
            let t = fourier_transform(&e).unwrap();
            let expect = e.len() as f64 / 49.0;
            prop_assert!((t.get(0).re - expect).abs() < TOLERANCES.transform_abs);
            prop_assert!((t.plancherel_sum() - expect).abs() <= TOLERANCES.plancherel_rel * expect);
        }

        #[test]
        fn mixed_energy_cauchy_schwarz(a in arb_set(5, 12), b in arb_set(5, 12)) {
            let f5 = field(5);
            let form = QuadraticForm::dot(f5, 2);
            let e1 = PointSet::from_indices(f5, 2, a).unwrap();
            let e2 = PointSet::from_indices(f5, 2, b).unwrap();
            let s1 = spherical_energy(&e1, &form).unwrap();
            let s2 = spherical_energy(&e2, &form).unwrap();
            let mixed = mixed_spherical_energy(&e1, &e2, &form).unwrap();
            for t in 1..5 {
                prop_assert!(mixed[t].norm() <= (s1.sigma[t] * s2.sigma[t]).sqrt() + TOLERANCES.bound_slack);
            }
        }

        #[test]
        fn taylor_random(values in proptest::collection::vec(0.0f64..10.0, 1..64), n in 2u32..=6) {
            let (l, r) = taylor_bound_check(&values, n).unwrap();
            prop_assert!(l <= r * (1.0 + 1e-9) + 1e-9);
        }

        #[test]
        fn prune_keeps_half_and_all_poor_null_count(idx in arb_set(13, 60)) {
            let e = PointSet::from_indices(field(13), 2, idx).unwrap();
            let r = null_coordinate_prune(&e).unwrap();
            prop_assert!(2 * r.wealthy_plus * r.wealthy_minus <= r.original_size);
            if r.case == PruneCase::AllPoor {
                let kept = PointSet::from_indices(field(13), 2, r.kept.clone()).unwrap();
                let (count, bound) = null_pair_count(&kept).unwrap();
                prop_assert!(count as f64 <= bound);
            }
        }
    }
}
