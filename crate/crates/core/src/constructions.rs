//! Explicit extremal point sets and sum-product experiments, each returned with
//! exact measurements of the quantities they are meant to keep small.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::geometry::{find_null_structure, PointSet, QuadraticForm, Space, Vector};
use crate::gf::PrimeField;
use crate::simplices::{count_congruence_classes, distance_set, CountMode, CountOptions};
use crate::spectral::NullBasis;

/// A constructed set plus named measurements, instantiated bounds and pass flags.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionReport {
    pub name: String,
    pub parameters: BTreeMap<String, Value>,
    pub set_size: usize,
    pub measured: BTreeMap<String, Value>,
    pub bounds: BTreeMap<String, Value>,
    pub checks: BTreeMap<String, bool>,
    #[serde(skip)]
    pub set: PointSet,
}

impl ConstructionReport {
    fn new(name: &str, set: PointSet) -> Self {
        ConstructionReport {
            name: name.to_string(),
            parameters: BTreeMap::new(),
            set_size: set.len(),
            measured: BTreeMap::new(),
            bounds: BTreeMap::new(),
            checks: BTreeMap::new(),
            set,
        }
    }

    fn param(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.parameters.insert(key.into(), v.into());
        self
    }

    fn measure(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.measured.insert(key.into(), v.into());
        self
    }

    fn bound(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.bounds.insert(key.into(), v.into());
        self
    }

    fn check(mut self, key: &str, ok: bool) -> Self {
        self.checks.insert(key.into(), ok);
        self
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&b| b)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports always serialize")
    }
}

fn field(q: u64) -> Result<PrimeField> {
    PrimeField::new(q)
}

/// `Σ c_i b_i` over `F_q`.
fn combine(f: &PrimeField, basis: &[Vec<u32>], coefs: &[u32]) -> Vec<u32> {
    let d = basis[0].len();
    let mut v = vec![0u32; d];
    for (b, &c) in basis.iter().zip(coefs) {
        for i in 0..d {
            v[i] = f.add(v[i], f.mul(c, b[i]));
        }
    }
    v
}

/// Visits every coefficient vector in `F_q^n` in little-endian order.
fn for_each_coefficients(q: u32, n: usize, mut visit: impl FnMut(&[u32])) {
    let mut c = vec![0u32; n];
    loop {
        visit(&c);
        let mut i = 0;
        loop {
            if i == n {
                return;
            }
            c[i] += 1;
            if c[i] < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
    }
}

/// Odd dimension `d = 2k+1`: `E = {Σ a_i n_i + b w : b ∈ {0, …, len−1}}` with
/// `n_1..n_k` mutually orthogonal null vectors and `w` a unit vector orthogonal
/// to them, so every norm on the span is `c b²` with `c = Q(w)`. `c` is 1 whenever
/// the orthogonal complement of the null vectors represents 1.
pub fn sharpness_odd(q: u64, d: usize, interval_len: usize) -> Result<ConstructionReport> {
    let f = field(q)?;
    if d < 3 || d.is_multiple_of(2) {
        return Err(Error::Config(format!("odd construction needs odd d >= 3, got {d}")));
    }
    if interval_len == 0 || interval_len > f.q() as usize {
        return Err(Error::Config(format!("interval length must lie in 1..={}", f.q())));
    }
    let k = (d - 1) / 2;
    let form = QuadraticForm::dot(f, d);
    let nulls: Vec<Vec<u32>> = find_null_structure(&form, k, false)?
        .null_vectors
        .into_iter()
        .map(|v| v.0)
        .collect();
    let space = Space::new(f, d)?;
    let orthogonal: Vec<Vec<u32>> = (1..space.size())
        .map(|i| space.coords(i).to_vec())
        .filter(|v| form.eval(v) != 0 && nulls.iter().all(|n| form.bilinear(v, n) == 0))
        .collect();
    // A unit vector if one exists, otherwise the first non-null one (norm `c`).
    let w = orthogonal
        .iter()
        .find(|v| form.eval(v) == 1)
        .or(orthogonal.first())
        .ok_or(Error::NoNullVector)?
        .clone();
    let c_norm = form.eval(&w);
    let mut basis = nulls.clone();
    basis.push(w.clone());

    let mut predicate_ok = true;
    let mut e = PointSet::empty(f, d)?;
    for_each_coefficients(f.q(), k + 1, |c| {
        let x = combine(&f, &basis, c);
        predicate_ok &= form.eval(&x) == f.mul(c_norm, f.mul(c[k], c[k]));
        if (c[k] as usize) < interval_len {
            e.insert(space.index(&x));
        }
    });
    let distances = distance_set(&e, &form)?;
    let oracle: BTreeSet<u32> = (0..interval_len as i64)
        .flat_map(|b| (0..interval_len as i64).map(move |c| (b - c) * (b - c)))
        .map(|v| f.mul(c_norm, f.reduce(v)))
        .collect();
    let t1 = distances.len();
    let bound = 2 * interval_len - 1;
    Ok(ConstructionReport::new("sharpness_odd", e)
        .param("q", q)
        .param("d", d)
        .param("interval_len", interval_len)
        .measure("null_vectors", json!(nulls))
        .measure("unit_vector", json!(w))
        .measure("unit_norm", c_norm)
        .measure("distance_set", json!(distances))
        .measure("T1", t1)
        .bound("T1_max", bound)
        .check("norm_is_scaled_last_coordinate_squared", predicate_ok)
        .check("distance_set_matches_square_differences", distances == oracle)
        .check("T1_within_bound", t1 <= bound))
}

/// Grid sides `(⌈√(Cq)⌉, ⌊√(Cq)⌋)`.
pub fn grid_sides(c: f64, q: u64) -> (usize, usize) {
    let s = (c * q as f64).sqrt();
    (s.ceil() as usize, s.floor() as usize)
}

/// Even dimension, with side lengths derived from `C` via [`grid_sides`].
pub fn sharpness_even(q: u64, d: usize, c: f64) -> Result<ConstructionReport> {
    let (hi, lo) = grid_sides(c, q);
    if d == 2 {
        sharpness_even_grid(q, hi, lo)
    } else {
        sharpness_even_null(q, d, hi)
    }
}

/// `{0, …, sx−1} × {0, …, sy−1}` in the plane, against the oracle `{a² + b²}`.
pub fn sharpness_even_grid(q: u64, sx: usize, sy: usize) -> Result<ConstructionReport> {
    let f = field(q)?;
    let form = QuadraticForm::dot(f, 2);
    let mut pts = Vec::new();
    for a in 0..sx as i64 {
        for b in 0..sy as i64 {
            pts.push(Vector::from_signed(&f, &[a, b]));
        }
    }
    let e = PointSet::from_vectors(f, 2, &pts)?;
    let distances = distance_set(&e, &form)?;
    let oracle: BTreeSet<u32> = (0..sx as i64)
        .flat_map(|a| (0..sy as i64).map(move |b| a * a + b * b))
        .map(|v| f.reduce(v))
        .collect();
    let t1 = distances.len();
    Ok(ConstructionReport::new("sharpness_even", e)
        .param("q", q)
        .param("d", 2)
        .param("sides", json!([sx, sy]))
        .measure("distance_set", json!(distances))
        .measure("T1", t1)
        .measure("integer_grid_oracle", oracle.len())
        .bound("q", q)
        .check("matches_integer_grid_oracle", distances == oracle)
        .check("T1_below_q", (t1 as u64) < q))
}

/// `d = 2k ≥ 4`: `E = {x e + y n_1 + Σ_{i≥2} z_i n_i : x, y ∈ {0, …, side−1}}`,
/// whose norms are `x² + 2xy`.
pub fn sharpness_even_null(q: u64, d: usize, side: usize) -> Result<ConstructionReport> {
    let f = field(q)?;
    if d < 4 || d % 2 == 1 {
        return Err(Error::Config(format!("null construction needs even d >= 4, got {d}")));
    }
    let k = d / 2;
    let form = QuadraticForm::dot(f, d);
    let ns = find_null_structure(&form, k, true)?;
    let structure_ok = ns.verify(&form);
    let e_vec = ns.completion.clone().expect("completion was requested").0;
    let nulls: Vec<Vec<u32>> = ns.null_vectors.iter().map(|v| v.0.clone()).collect();
    let mut basis = vec![e_vec.clone()];
    basis.extend(nulls.iter().cloned());
    let space = Space::new(f, d)?;

    let mut predicate_ok = true;
    let mut e = PointSet::empty(f, d)?;
    for_each_coefficients(f.q(), k + 1, |c| {
        let x = combine(&f, &basis, c);
        let expected = f.add(f.mul(c[0], c[0]), f.mul(2, f.mul(c[0], c[1])));
        predicate_ok &= form.eval(&x) == expected;
        if (c[0] as usize) < side && (c[1] as usize) < side {
            e.insert(space.index(&x));
        }
    });
    let distances = distance_set(&e, &form)?;
    let span = side as i64 - 1;
    let oracle: BTreeSet<u32> = (-span..=span)
        .flat_map(|a| (-span..=span).map(move |b| a * a + 2 * a * b))
        .map(|v| f.reduce(v))
        .collect();
    let t1 = distances.len();
    Ok(ConstructionReport::new("sharpness_even", e)
        .param("q", q)
        .param("d", d)
        .param("side", side)
        .measure("completion", json!(e_vec))
        .measure("null_vectors", json!(nulls))
        .measure("distance_set", json!(distances))
        .measure("T1", t1)
        .bound("q", q)
        .check("completion_constraints_exact", structure_ok)
        .check("norm_is_x_squared_plus_2xy", predicate_ok)
        .check("distance_set_matches_oracle", distances == oracle))
}

/// `E = F_q^{d−1} × {0, …, ⌊q^{1/d − ε}⌋}`, with the last axis orthogonal to the rest.
pub fn sharpness_simplex(q: u64, d: usize, k: usize, eps: f64) -> Result<ConstructionReport> {
    let f = field(q)?;
    if !(eps > 0.0 && eps < 1.0 / d as f64) {
        return Err(Error::BadEpsilon(format!("{eps}")));
    }
    let top = (q as f64).powf(1.0 / d as f64 - eps).floor() as usize;
    let heights = (top + 1).min(f.q() as usize);
    let space = Space::new(f, d)?;
    let members = (0..space.size()).filter(|&i| (space.coords(i)[d - 1] as usize) < heights);
    let e = PointSet::from_indices(f, d, members)?;
    let mut report = ConstructionReport::new("sharpness_simplex", e)
        .param("q", q)
        .param("d", d)
        .param("k", k)
        .param("eps", eps)
        .measure("heights", heights)
        .bound("q_pow_k_plus_1_choose_2", (q as f64).powi(((k + 1) * k / 2) as i32));
    let expected = (q as usize).pow(d as u32 - 1) * heights;
    let size_ok = report.set_size == expected;
    report = report.check("size_is_q_pow_d_minus_1_times_heights", size_ok);
    if d == 2 && q <= 13 && k <= 2 {
        let form = QuadraticForm::dot(f, d);
        let fast = count_congruence_classes(&report.set, k, &form, &CountOptions::default())?;
        let exact = count_congruence_classes(
            &report.set,
            k,
            &form,
            &CountOptions {
                mode: CountMode::ExactOrbit,
                ..Default::default()
            },
        )?;
        report = report
            .measure("T_fast", fast.total)
            .measure("T_exact", exact.total)
            .check("exact_at_least_fast", exact.total >= fast.total);
    }
    Ok(report)
}

fn sumset(f: &PrimeField, a: &BTreeSet<u32>, b: &BTreeSet<u32>, minus: bool) -> BTreeSet<u32> {
    a.iter()
        .flat_map(|&x| b.iter().map(move |&y| if minus { f.sub(x, y) } else { f.add(x, y) }))
        .collect()
}

fn product(f: &PrimeField, a: &BTreeSet<u32>, b: &BTreeSet<u32>) -> BTreeSet<u32> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| f.mul(x, y))).collect()
}

/// `E = {x n_+ + y (n_−/2) : x ∈ X, y ∈ Y}` for `q ≡ 1 mod 4`, where `n_± = (1, ±ι)`.
///
/// In this basis `Q(x n_+ + y n_−/2) = κ x y` with `κ = 2⟨n_+, n_−/2⟩`, computed
/// from the vectors rather than assumed.
pub fn null_product_set(q: u64, xs: &[u32], ys: &[u32]) -> Result<ConstructionReport> {
    let f = field(q)?;
    let nb = NullBasis::new(&f)?;
    let form = QuadraticForm::dot(f, 2);
    let half = f.inv(2).unwrap();
    let n_plus = vec![1, nb.iota];
    let n_minus_half = vec![half, f.mul(half, f.neg(nb.iota))];
    let kappa = f.mul(2, form.bilinear(&n_plus, &n_minus_half));
    let x: BTreeSet<u32> = xs.iter().map(|&v| v % f.q()).collect();
    let y: BTreeSet<u32> = ys.iter().map(|&v| v % f.q()).collect();
    let basis = [n_plus.clone(), n_minus_half.clone()];
    let pts: Vec<Vector> = x
        .iter()
        .flat_map(|&a| y.iter().map(move |&b| (a, b)))
        .map(|(a, b)| Vector(combine(&f, &basis, &[a, b])))
        .collect();
    let e = PointSet::from_vectors(f, 2, &pts)?;
    let distances = distance_set(&e, &form)?;
    let xm = sumset(&f, &x, &x, true);
    let xp = sumset(&f, &x, &x, false);
    let ym = sumset(&f, &y, &y, true);
    let yp = sumset(&f, &y, &y, false);
    let diff_product = product(&f, &xm, &ym);
    let scaled: BTreeSet<u32> = diff_product.iter().map(|&v| f.mul(kappa, v)).collect();
    let variants = json!({
        "(X-X)(Y-Y)": diff_product.len(),
        "(X-X)(Y+Y)": product(&f, &xm, &yp).len(),
        "(X+X)(Y-Y)": product(&f, &xp, &ym).len(),
        "(X+X)(Y+Y)": product(&f, &xp, &yp).len(),
    });
    Ok(ConstructionReport::new("null_product_set", e)
        .param("q", q)
        .param("X", json!(x))
        .param("Y", json!(y))
        .measure("kappa", kappa)
        .measure("distance_set", json!(distances))
        .measure("difference_product_set", json!(diff_product))
        .measure("sign_variant_sizes", variants)
        .check("distance_set_is_kappa_times_product_set", distances == scaled)
        .check("cardinalities_agree", distances.len() == diff_product.len()))
}

/// `X × Y` under `Q(x₁, x₂) = x₁x₂` (Gram `[[0, ½], [½, 0]]`) for `q ≡ 3 mod 4`.
pub fn minkowski_distance_set(q: u64, xs: &[u32], ys: &[u32]) -> Result<ConstructionReport> {
    let f = field(q)?;
    if f.q() % 4 != 3 {
        return Err(Error::WrongResidueClass { q: f.q(), expected: 3 });
    }
    let form = QuadraticForm::product_form(f);
    let x: BTreeSet<u32> = xs.iter().map(|&v| v % f.q()).collect();
    let y: BTreeSet<u32> = ys.iter().map(|&v| v % f.q()).collect();
    let pts: Vec<Vector> = x.iter().flat_map(|&a| y.iter().map(move |&b| Vector(vec![a, b]))).collect();
    let e = PointSet::from_vectors(f, 2, &pts)?;
    let distances = distance_set(&e, &form)?;
    let diff_product = product(&f, &sumset(&f, &x, &x, true), &sumset(&f, &y, &y, true));
    let levels = crate::geometry::sphere_size_census(&form)?;
    let hyperbolas_ok = levels[1..].iter().all(|&s| s == q - 1);
    Ok(ConstructionReport::new("minkowski_distance_set", e)
        .param("q", q)
        .param("X", json!(x))
        .param("Y", json!(y))
        .measure("distance_set", json!(distances))
        .measure("distance_set_size", distances.len())
        .measure("level_set_sizes", json!(levels))
        .bound("nonzero_level_set_size", q - 1)
        .check("distance_set_is_difference_product", distances == diff_product)
        .check("nonzero_levels_have_q_minus_1_points", hyperbolas_ok))
}

/// `⌊½ √(q/2 − 1)⌋`.
pub fn default_ratio_interval(q: u64) -> usize {
    (0.5 * (q as f64 / 2.0 - 1.0).max(0.0).sqrt()).floor() as usize
}

/// Quotient set `(I−I)/(I−I)` and the values of
/// `f(a, b) = (1 − b/a) d₁₂ + (1 − a/b) d₂₃` over `a ≠ b` in `(I−I) \ {0}`,
/// for every pair of nonzero `(d₁₂, d₂₃)`.
pub fn ratio_map_census(q: u64, interval_len: Option<usize>) -> Result<ConstructionReport> {
    let f = field(q)?;
    if f.q() % 4 != 1 {
        return Err(Error::WrongResidueClass { q: f.q(), expected: 1 });
    }
    let len = interval_len.unwrap_or_else(|| default_ratio_interval(q));
    let interval: BTreeSet<u32> = (0..len as u32).collect();
    let diffs = sumset(&f, &interval, &interval, true);
    let nonzero: Vec<u32> = diffs.iter().copied().filter(|&v| v != 0).collect();
    let quotients: BTreeSet<u32> = diffs
        .iter()
        .flat_map(|&a| nonzero.iter().map(move |&b| f.div(a, b).unwrap()))
        .collect();
    let pairs: Vec<(u32, u32)> = nonzero
        .iter()
        .flat_map(|&a| nonzero.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a != b)
        .collect();
    let mut counts = Vec::new();
    for d12 in 1..f.q() {
        for d23 in 1..f.q() {
            let values: BTreeSet<u32> = pairs
                .iter()
                .map(|&(a, b)| {
                    let u = f.mul(f.sub(1, f.div(b, a).unwrap()), d12);
                    let v = f.mul(f.sub(1, f.div(a, b).unwrap()), d23);
                    f.add(u, v)
                })
                .collect();
            counts.push(values.len());
        }
    }
    let feasible = ((2 * len) as f64).powi(2) <= q as f64 / 2.0 - 1.0;
    Ok(ConstructionReport::new("ratio_map_census", PointSet::empty(f, 1)?)
        .param("q", q)
        .param("interval_len", len)
        .measure("quotient_set_size", quotients.len())
        .measure("ab_pairs", pairs.len())
        .measure("census_min", counts.iter().copied().min().unwrap_or(0))
        .measure("census_max", counts.iter().copied().max().unwrap_or(0))
        .bound("quotient_set_max", (2 * len).pow(2))
        .bound("q_over_2_minus_1", q as f64 / 2.0 - 1.0)
        .check("interval_feasible", feasible)
        .check("quotient_set_within_square", quotients.len() <= (2 * len).pow(2).max(1)))
}

/// Checks `d₁₂/(y₁−y₂) − d₂₃/(y₃−y₂) = d₁₃/(y₁−y₃)` on every triple of
/// `F_q × Y` (null-basis coordinates) with nonzero pairwise distances.
pub fn ratio_identity_holds(q: u64, ys: &[u32]) -> Result<(usize, bool)> {
    let f = field(q)?;
    let nb = NullBasis::new(&f)?;
    let form = QuadraticForm::dot(f, 2);
    let half = f.inv(2).unwrap();
    let basis = [vec![1, nb.iota], vec![half, f.mul(half, f.neg(nb.iota))]];
    let pts: Vec<(u32, Vec<u32>)> = (0..f.q())
        .flat_map(|x| ys.iter().map(move |&y| (x, y)))
        .map(|(x, y)| (y % f.q(), combine(&f, &basis, &[x, y % f.q()])))
        .collect();
    let dist = |a: &[u32], b: &[u32]| {
        let diff: Vec<u32> = a.iter().zip(b).map(|(&u, &v)| f.sub(u, v)).collect();
        form.eval(&diff)
    };
    let mut tested = 0;
    for (y1, p1) in &pts {
        for (y2, p2) in &pts {
            for (y3, p3) in &pts {
                let (d12, d23, d13) = (dist(p1, p2), dist(p2, p3), dist(p1, p3));
                if d12 == 0 || d23 == 0 || d13 == 0 {
                    continue;
                }
                tested += 1;
                let lhs = f.sub(f.div(d12, f.sub(*y1, *y2)).unwrap(), f.div(d23, f.sub(*y3, *y2)).unwrap());
                if lhs != f.div(d13, f.sub(*y1, *y3)).unwrap() {
                    return Ok((tested, false));
                }
            }
        }
    }
    Ok((tested, true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn odd_examples() {
        let r = sharpness_odd(5, 3, 2).unwrap();
        assert_eq!(r.set_size, 10);
        assert_eq!(r.measured["null_vectors"], json!([[1, 2, 0]]));
        assert_eq!(r.measured["unit_vector"], json!([0, 0, 1]));
        assert_eq!(r.measured["distance_set"], json!([0, 1]));
        assert!(r.passed());
        let r = sharpness_odd(7, 3, 1).unwrap();
        assert_eq!(r.measured["T1"], json!(1));
        for q in [5u64, 7, 11, 13] {
            let r = sharpness_odd(q, 3, 4.min(q as usize)).unwrap();
            assert!(r.passed(), "{}", r.to_json());
        }
        assert!(sharpness_odd(5, 5, 3).unwrap().passed());
    }

    #[test]
    fn even_examples() {
        let r = sharpness_even_grid(13, 4, 4).unwrap();
        assert_eq!(r.measured["T1"], json!(8));
        assert!(r.passed());
        let r = sharpness_even_grid(5, 2, 2).unwrap();
        assert_eq!(r.measured["distance_set"], json!([0, 1, 2]));
        let r = sharpness_even_null(5, 4, 2).unwrap();
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.set_size, 5 * 4);
        assert!(sharpness_even(13, 4, 0.5).unwrap().passed());
    }

    #[test]
    fn simplex_examples() {
        let r = sharpness_simplex(13, 2, 2, 0.1).unwrap();
        assert_eq!((r.measured["heights"].clone(), r.set_size), (json!(3), 39));
        assert!(r.passed());
        assert!(matches!(sharpness_simplex(13, 2, 2, 0.5), Err(Error::BadEpsilon(_))));
    }

    #[test]
    fn null_product_examples() {
        let r = null_product_set(13, &[0, 1], &[0, 1]).unwrap();
        assert_eq!(r.measured["difference_product_set"], json!([0, 1, 12]));
        assert_eq!(r.measured["kappa"], json!(2));
        assert!(r.passed());
        let r = null_product_set(13, &[0], &[0]).unwrap();
        assert_eq!(r.measured["distance_set"], json!([0]));
        assert!(null_product_set(13, &[1, 2, 3], &[1, 2, 3]).unwrap().passed());
        assert!(matches!(null_product_set(7, &[0], &[0]), Err(Error::WrongResidueClass { .. })));
    }

    #[test]
    fn minkowski_examples() {
        let r = minkowski_distance_set(7, &[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(r.measured["distance_set_size"], json!(7));
        assert!(r.passed());
        let r = minkowski_distance_set(7, &[0], &[0]).unwrap();
        assert_eq!(r.measured["distance_set"], json!([0]));
        assert!(minkowski_distance_set(13, &[0], &[0]).is_err());
    }

    #[test]
    fn ratio_census_examples() {
        assert_eq!(default_ratio_interval(29), 1);
        assert_eq!(default_ratio_interval(101), 3);
        let r = ratio_map_census(29, None).unwrap();
        assert_eq!(r.measured["ab_pairs"], json!(0));
        let r = ratio_map_census(101, None).unwrap();
        assert!(r.measured["quotient_set_size"].as_u64().unwrap() <= 36);
        assert!(r.passed());
        let (tested, ok) = ratio_identity_holds(13, &[0, 1, 2, 3]).unwrap();
        assert!(ok && tested > 0);
    }

    #[test]
    fn report_json_omits_the_set() {
        let r = sharpness_even_grid(5, 2, 2).unwrap();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert!(v.get("set").is_none());
        assert_eq!(v["name"], json!("sharpness_even"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn null_products_match(xs in proptest::collection::vec(0u32..17, 1..6), ys in proptest::collection::vec(0u32..17, 1..6)) {
            for q in [5u64, 13, 17] {
                prop_assert!(null_product_set(q, &xs, &ys).unwrap().passed());
            }
        }
    }
}
