//! Batch runs behind the command-line tool: verification suites, counting a
//! stored set, randomized scans and constructions.
//!
//! Every run is a pure function of its [`RunConfig`] apart from the optional
//! wall-clock column of scans, which stays 0 unless timing is switched on.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::constructions::{self, ConstructionReport};
use crate::error::{Error, Result};
use crate::geometry::{sphere_points, sphere_size_census, sphere_size_formula, PointSet, QuadraticForm};
use crate::gf::PrimeField;
use crate::groups::{group_order_recursion, orthogonal_group, GroupVariant, IsometryGroup};
use crate::sampling::Sampler;
use crate::simplices::{
    class_inventory_csv, count_congruence_classes, count_similarity_classes, dot_level_decomposition,
    exact_orbit_classes, verify_counting_identity, CountMode, CountOptions, Scaling,
};
use crate::spectral::{energy_bounds, fourier_transform, nu_hat_identity_check, taylor_bound_check, TOLERANCES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub q_list: Vec<u64>,
    pub d: usize,
    pub k: usize,
    pub mode: CountMode,
    pub group: GroupVariant,
    pub trials: usize,
    pub seed: u64,
    pub sizes: Vec<usize>,
    pub format: OutputFormat,
    /// Worker threads; `None` leaves the choice to rayon.
    pub workers: Option<usize>,
    /// Record wall-clock times in scan rows (makes output nondeterministic).
    pub timing: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            q_list: vec![3],
            d: 2,
            k: 2,
            mode: CountMode::DistanceMatrixFast,
            group: GroupVariant::Full,
            trials: 5,
            seed: 1,
            sizes: Vec::new(),
            format: OutputFormat::Csv,
            workers: None,
            timing: false,
        }
    }
}

impl RunConfig {
    pub fn fields(&self) -> Result<Vec<PrimeField>> {
        if self.q_list.is_empty() {
            return Err(Error::Config("no field sizes given".into()));
        }
        if self.d == 0 {
            return Err(Error::Config("dimension must be positive".into()));
        }
        self.q_list.iter().map(|&q| PrimeField::new(q)).collect()
    }

    /// Runs `job` on a pool of the configured size.
    pub fn with_workers<T: Send>(&self, job: impl FnOnce() -> T + Send) -> Result<T> {
        match self.workers {
            None => Ok(job()),
            Some(n) => {
                let pool = rayon::ThreadPoolBuilder::new()
                    .num_threads(n.max(1))
                    .build()
                    .map_err(|e| Error::Config(e.to_string()))?;
                Ok(pool.install(job))
            }
        }
    }
}

/// Serializes rows as CSV (header from the field names) or a JSON array.
pub fn render<T: Serialize>(rows: &[T], format: OutputFormat) -> Result<String> {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(rows)
            .map(|s| s + "\n")
            .map_err(|e| Error::Io(e.to_string())),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
        }
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyRow {
    pub suite: String,
    pub q: u64,
    pub d: usize,
    pub case: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
    pub note: String,
}

pub const SUITES: [&str; 8] = ["sphere", "groups", "identity2", "fourier", "energy", "str", "witt", "constructions"];

struct Rows {
    suite: &'static str,
    q: u64,
    d: usize,
    out: Vec<VerifyRow>,
}

impl Rows {
    fn new(suite: &'static str, f: &PrimeField, d: usize) -> Self {
        Rows {
            suite,
            q: f.q() as u64,
            d,
            out: Vec::new(),
        }
    }

    fn push(&mut self, case: impl Into<String>, lhs: impl ToString, rhs: impl ToString, pass: bool, note: impl Into<String>) {
        self.out.push(VerifyRow {
            suite: self.suite.to_string(),
            q: self.q,
            d: self.d,
            case: case.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
            pass,
            note: note.into(),
        });
    }

    /// One summary row for a batch of random cases plus one row per failure.
    fn batch(&mut self, case: &str, results: Vec<(bool, String)>) {
        let passed = results.iter().filter(|r| r.0).count();
        let total = results.len();
        for (i, (ok, detail)) in results.into_iter().enumerate() {
            if !ok {
                self.push(format!("{case} #{i}"), "", "", false, detail);
            }
        }
        self.push(format!("{case} (passed/run)"), passed, total, passed == total, "");
    }
}

/// The two isometry classes of non-degenerate forms in dimension `d`.
pub fn form_classes(f: &PrimeField, d: usize) -> Vec<(&'static str, QuadraticForm)> {
    let mut twisted = vec![1i64; d];
    twisted[d - 1] = f.smallest_nonsquare() as i64;
    vec![("dot", QuadraticForm::dot(*f, d)), ("twisted", QuadraticForm::diagonal(*f, &twisted))]
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn suite_sampler(cfg: &RunConfig, suite: usize, q: u64) -> Sampler {
    Sampler::for_cell(cfg.seed, ((suite as u64) << 32) | q)
}

fn random_set(s: &mut Sampler, f: PrimeField, d: usize, cap: usize) -> Result<PointSet> {
    let n = (f.q() as usize).pow(d as u32);
    let m = 1 + s.below(cap.min(n) as u64) as usize;
    s.point_set(f, d, m)
}

fn suite_sphere(f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("sphere", f, d);
    for (name, form) in form_classes(f, d) {
        let census = sphere_size_census(&form)?;
        let formula: Vec<u64> = (0..f.q()).map(|r| sphere_size_formula(&form, r)).collect::<Result<_>>()?;
        rows.push(name, join(&census), join(&formula), census == formula, "sizes for r = 0..q-1");
    }
    Ok(rows.out)
}

fn suite_groups(f: &PrimeField, d: usize, variant: GroupVariant) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("groups", f, d);
    for (name, form) in form_classes(f, d) {
        let predicted = group_order_recursion(&form)?;
        let g = match orthogonal_group(&form, GroupVariant::Full) {
            Ok(g) => g,
            Err(Error::BudgetExceeded { needed, budget, .. }) => {
                rows.push(name, "", predicted, true, format!("skipped: {needed} elements exceeds budget {budget}"));
                continue;
            }
            Err(e) => return Err(e),
        };
        rows.push(format!("{name} order"), g.order(), predicted, g.order() as u128 == predicted, "");
        let nominal = 2.0 * (f.q() as f64).powi((d * (d - 1) / 2) as i32);
        let ratio = g.order() as f64 / nominal;
        rows.push(format!("{name} order/(2q^(d(d-1)/2))"), format!("{ratio:.6}"), "[0.5, 2]", (0.5..=2.0).contains(&ratio), "");
        rows.push(format!("{name} axioms"), g.verify_axioms(), true, g.verify_axioms(), "");
        if variant == GroupVariant::Special {
            let so = orthogonal_group(&form, GroupVariant::Special)?;
            rows.push(format!("{name} SO index"), g.order() / so.order().max(1), 2, g.order() == 2 * so.order(), "");
        }
    }
    Ok(rows.out)
}

fn dot_group(f: &PrimeField, d: usize, variant: GroupVariant) -> Result<Option<IsometryGroup>> {
    match orthogonal_group(&QuadraticForm::dot(*f, d), variant) {
        Ok(g) => Ok(Some(g)),
        Err(Error::BudgetExceeded { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn suite_identity(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("identity2", f, d);
    let Some(g) = dot_group(f, d, cfg.group)? else {
        rows.push("all", "", "", true, "skipped: group exceeds budget");
        return Ok(rows.out);
    };
    let mut s = suite_sampler(cfg, 2, f.q() as u64);
    for k in 1..=cfg.k.min(d) {
        if f.q() == 3 && d == 2 && k == 1 {
            let two = PointSet::from_points(*f, 2, &[&[0, 0], &[1, 0]])?;
            let c = verify_counting_identity(&two, 1, &g)?;
            rows.push("two points {(0,0),(1,0)}, k=1", c.lhs, c.rhs, c.holds(), "");
        }
        let mut results = Vec::new();
        for _ in 0..cfg.trials {
            let e = random_set(&mut s, *f, d, 6)?;
            let c = verify_counting_identity(&e, k, &g)?;
            results.push((c.holds(), format!("|E|={} lhs={} rhs={}", e.len(), c.lhs, c.rhs)));
        }
        rows.batch(&format!("random sets, k={k}"), results);
    }
    Ok(rows.out)
}

fn suite_fourier(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("fourier", f, d);
    let Some(g) = dot_group(f, d, cfg.group)? else {
        rows.push("all", "", "", true, "skipped: group exceeds budget");
        return Ok(rows.out);
    };
    let mut s = suite_sampler(cfg, 3, f.q() as u64);
    let n = (f.q() as usize).pow(d as u32);
    let (mut identity, mut plancherel) = (Vec::new(), Vec::new());
    let mut worst_conjugate: f64 = 0.0;
    for _ in 0..cfg.trials {
        let e = random_set(&mut s, *f, d, n)?;
        let theta = &g.elements()[s.below(g.order() as u64) as usize];
        let c = nu_hat_identity_check(&e, theta)?;
        worst_conjugate = worst_conjugate.max(c.conjugate_form_error);
        identity.push((c.holds(&TOLERANCES), format!("|E|={} max_error={:e}", e.len(), c.max_error)));
        let sum = fourier_transform(&e)?.plancherel_sum();
        let expected = e.len() as f64 / n as f64;
        let rel = (sum - expected).abs() / expected;
        plancherel.push((rel <= TOLERANCES.plancherel_rel, format!("relative error {rel:e}")));
    }
    rows.batch("nu-hat product formula", identity);
    rows.batch("Plancherel", plancherel);
    rows.push(
        "flipped-sign product formula (diagnostic)",
        format!("{worst_conjugate:e}"),
        "",
        true,
        "largest residual of q^d E(-xi) E(theta^T xi); nonzero unless nu-hat is real",
    );
    Ok(rows.out)
}

fn suite_energy(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("energy", f, d);
    let mut s = suite_sampler(cfg, 4, f.q() as u64);
    if d == 2 {
        let form = QuadraticForm::dot(*f, 2);
        let n = (f.q() as usize).pow(2);
        let mut results = Vec::new();
        for _ in 0..cfg.trials {
            let e = random_set(&mut s, *f, 2, n)?;
            let b = energy_bounds(&e, &form)?;
            results.push((
                b.holds(&TOLERANCES),
                format!("|E|={} sigma={:e}/{:e} M={:e}/{:e}", e.len(), b.sigma_max, b.sigma_bound, b.m, b.m_bound),
            ));
        }
        rows.batch("spherical energy bounds", results);
    } else {
        rows.push("spherical energy bounds", "", "", true, "skipped: planar bounds need d = 2");
    }
    let mut results = Vec::new();
    for _ in 0..cfg.trials {
        let len = 1 + s.below(64) as usize;
        let values: Vec<f64> = (0..len).map(|_| s.unit() * 10.0).collect();
        let power = 2 + s.below(4) as u32;
        let (lhs, rhs) = taylor_bound_check(&values, power)?;
        results.push((lhs <= rhs * (1.0 + TOLERANCES.bound_slack) + TOLERANCES.bound_slack, format!("n={power} {lhs:e} > {rhs:e}")));
    }
    rows.batch("power-sum bound on random functions", results);
    Ok(rows.out)
}

fn suite_str(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("str", f, d);
    let form = QuadraticForm::dot(*f, d);
    let Some(g) = dot_group(f, d, GroupVariant::Full)? else {
        rows.push("all", "", "", true, "skipped: group exceeds budget");
        return Ok(rows.out);
    };
    let sphere = sphere_points(&form, 1)?;
    let members = sphere.indices();
    if f.q() == 3 && d == 2 {
        let dec = dot_level_decomposition(&sphere, &g)?;
        rows.push(
            "full unit circle: sum f^2 = S + T + R",
            dec.f_square_sum,
            format!("{} + {} + {}", dec.s, dec.t, dec.r),
            dec.decomposition_holds() && (dec.s, dec.t, dec.r) == (64, 32, 32),
            "",
        );
    }
    let mut s = suite_sampler(cfg, 5, f.q() as u64);
    let (mut split, mut bound) = (Vec::new(), Vec::new());
    for _ in 0..cfg.trials {
        let m = 1 + s.below(members.len() as u64) as usize;
        let picked = s.sample_indices(members.len(), m)?;
        let e = PointSet::from_indices(*f, d, picked.into_iter().map(|i| members[i]))?;
        let dec = dot_level_decomposition(&e, &g)?;
        split.push((
            dec.decomposition_holds(),
            format!("|E|={} {} vs {}+{}+{}", e.len(), dec.f_square_sum, dec.s, dec.t, dec.r),
        ));
        bound.push((dec.bound_holds(), format!("{} > {}", dec.nu_square_sum, dec.nu_square_bound)));
    }
    rows.batch("sum f^2 = S + T + R on random sphere subsets", split);
    rows.batch("sum nu(t)^2 bound", bound);
    Ok(rows.out)
}

fn suite_witt(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("witt", f, d);
    let form = QuadraticForm::dot(*f, d);
    let mut s = suite_sampler(cfg, 6, f.q() as u64);
    let exact_opts = CountOptions {
        mode: CountMode::ExactOrbit,
        variant: GroupVariant::Full,
        ..Default::default()
    };
    for k in 1..=cfg.k.min(d) {
        let mut results = Vec::new();
        for _ in 0..cfg.trials {
            let e = random_set(&mut s, *f, d, 8)?;
            let fast = count_congruence_classes(&e, k, &form, &CountOptions::default())?;
            let exact = match count_congruence_classes(&e, k, &form, &exact_opts) {
                Err(Error::BudgetExceeded { .. }) => {
                    rows.push(format!("k={k}"), "", "", true, "skipped: group exceeds budget");
                    return Ok(rows.out);
                }
                r => r?,
            };
            results.push((
                exact.nondegenerate_classes == fast.nondegenerate_classes && exact.total >= fast.total,
                format!(
                    "|E|={} nondegenerate exact={} fast={} total exact={} fast={}",
                    e.len(),
                    exact.nondegenerate_classes,
                    fast.nondegenerate_classes,
                    exact.total,
                    fast.total
                ),
            ));
        }
        rows.batch(&format!("exact vs fast, k={k}"), results);
    }
    Ok(rows.out)
}

fn report_row(rows: &mut Rows, r: &ConstructionReport) {
    let failed: Vec<&str> = r.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str()).collect();
    let params = serde_json::to_string(&r.parameters).unwrap_or_default();
    rows.push(&r.name, r.set_size, params, r.passed(), failed.join(" "));
}

fn suite_constructions(cfg: &RunConfig, f: &PrimeField, d: usize) -> Result<Vec<VerifyRow>> {
    let mut rows = Rows::new("constructions", f, d);
    let q = f.q() as u64;
    for len in 1..=3.min(f.q() as usize) {
        report_row(&mut rows, &constructions::sharpness_odd(q, 3, len)?);
    }
    let (sx, sy) = constructions::grid_sides(1.0, q);
    report_row(&mut rows, &constructions::sharpness_even_grid(q, sx, sy)?);
    let mut s = suite_sampler(cfg, 7, q);
    if q % 4 == 1 {
        let mut results = Vec::new();
        for _ in 0..cfg.trials {
            let x = random_residues(&mut s, f.q());
            let y = random_residues(&mut s, f.q());
            let r = constructions::null_product_set(q, &x, &y)?;
            results.push((r.passed(), format!("X={x:?} Y={y:?}")));
        }
        rows.batch("null_product_set random X, Y", results);
    } else {
        report_row(&mut rows, &constructions::minkowski_distance_set(q, &[0, 1, 2], &[0, 1, 2])?);
    }
    Ok(rows.out)
}

fn random_residues(s: &mut Sampler, q: u32) -> Vec<u32> {
    let m = 1 + s.below(q.min(6) as u64) as usize;
    s.sample_indices(q as usize, m).unwrap().into_iter().map(|v| v as u32).collect()
}

/// Runs the named suite, or all of them, for every `q` in the config.
pub fn run_verify(cfg: &RunConfig, suite: Option<&str>) -> Result<Vec<VerifyRow>> {
    let fields = cfg.fields()?;
    let selected: Vec<&str> = match suite {
        None | Some("all") => SUITES.to_vec(),
        Some(name) if SUITES.contains(&name) => vec![name],
        Some(name) => return Err(Error::Config(format!("unknown suite '{name}'; expected one of {}", SUITES.join(", ")))),
    };
    let d = cfg.d;
    let mut rows = Vec::new();
    for name in selected {
        for f in &fields {
            rows.extend(match name {
                "sphere" => suite_sphere(f, d)?,
                "groups" => suite_groups(f, d, cfg.group)?,
                "identity2" => suite_identity(cfg, f, d)?,
                "fourier" => suite_fourier(cfg, f, d)?,
                "energy" => suite_energy(cfg, f, d)?,
                "str" => suite_str(cfg, f, d)?,
                "witt" => suite_witt(cfg, f, d)?,
                _ => suite_constructions(cfg, f, d)?,
            });
        }
    }
    Ok(rows)
}

// ---------------------------------------------------------------------------
// count

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub q: u64,
    pub d: usize,
    pub k: usize,
    pub set_size: usize,
    pub t_fast: usize,
    pub t_exact: Option<usize>,
    pub s_count: usize,
    pub degenerate: usize,
    pub nondegenerate: usize,
}

#[derive(Clone, Debug)]
pub struct CountOutcome {
    pub row: CountRow,
    pub inventory_csv: Option<String>,
    pub warnings: Vec<String>,
}

/// Counts the classes of a stored set under the standard dot form.
///
/// Exact counting is attempted when the config asks for it; if the group is too
/// large for the budget only the fast count is reported, with a warning.
pub fn run_count(cfg: &RunConfig, e: &PointSet) -> Result<CountOutcome> {
    let form = QuadraticForm::dot(e.field(), e.dim());
    let k = cfg.k;
    let fast = count_congruence_classes(e, k, &form, &CountOptions::default())?;
    let s_count = count_similarity_classes(e, k, &form, Scaling::SquaresOnly)?;
    let mut warnings = Vec::new();
    let mut exact = None;
    let mut inventory_csv = None;
    if cfg.mode == CountMode::ExactOrbit {
        match orthogonal_group(&form, cfg.group) {
            Ok(g) => {
                let classes = exact_orbit_classes(e, k, &g, false)?;
                inventory_csv = Some(class_inventory_csv(&classes));
                let degenerate = classes.iter().filter(|c| c.degenerate).count();
                exact = Some((classes.len(), degenerate));
            }
            Err(Error::BudgetExceeded { what, needed, budget }) => {
                warnings.push(format!("{what}: {needed} exceeds budget {budget}; reporting the fast count only"));
            }
            Err(err) => return Err(err),
        }
    }
    let (degenerate, nondegenerate) = match exact {
        Some((total, deg)) => (deg, total - deg),
        None => (fast.degenerate_classes, fast.nondegenerate_classes),
    };
    Ok(CountOutcome {
        row: CountRow {
            q: e.field().q() as u64,
            d: e.dim(),
            k,
            set_size: e.len(),
            t_fast: fast.total,
            t_exact: exact.map(|x| x.0),
            s_count,
            degenerate,
            nondegenerate,
        },
        inventory_csv,
        warnings,
    })
}

pub fn run_count_file(cfg: &RunConfig, path: &Path) -> Result<CountOutcome> {
    run_count(cfg, &PointSet::read_file(path)?)
}

// ---------------------------------------------------------------------------
// scan

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub q: u64,
    pub d: usize,
    pub k: usize,
    pub set_size: usize,
    pub trial: usize,
    pub seed: u64,
    pub t_count: usize,
    pub s_count: usize,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanSummary {
    pub q: u64,
    pub set_size: usize,
    pub trials: usize,
    pub t_min: usize,
    pub t_mean: f64,
    /// `t_mean / q^{(k+1 choose 2)}`.
    pub ratio: f64,
}

/// The seed a scan cell uses; rows log it so any cell can be replayed alone.
pub fn cell_seed(seed: u64, cell: u64) -> u64 {
    crate::sampling::mix(seed ^ cell)
}

/// One row per `(q, size, trial)`, sorted in that order. A size equal to the
/// whole space yields a single row since every trial would draw the same set.
pub fn run_scan(cfg: &RunConfig) -> Result<Vec<ScanRow>> {
    let fields = cfg.fields()?;
    if cfg.sizes.is_empty() {
        return Err(Error::Config("scan needs a nonempty size schedule".into()));
    }
    if cfg.k > cfg.d {
        return Err(Error::Config(format!("k = {} exceeds d = {}", cfg.k, cfg.d)));
    }
    let mut cells = Vec::new();
    for f in &fields {
        let n = (f.q() as usize).checked_pow(cfg.d as u32).unwrap_or(usize::MAX);
        for &m in &cfg.sizes {
            if m > n {
                return Err(Error::InfeasibleCount { requested: m, max: n });
            }
            let trials = if m == n { 1 } else { cfg.trials };
            for t in 0..trials {
                cells.push((*f, m, t));
            }
        }
    }
    let opts = CountOptions {
        mode: cfg.mode,
        variant: cfg.group,
        ..Default::default()
    };
    let results: Vec<Result<ScanRow>> = cells
        .par_iter()
        .enumerate()
        .map(|(cell, &(f, m, trial))| {
            let start = Instant::now();
            let seed = cell_seed(cfg.seed, cell as u64);
            let e = Sampler::new(seed).point_set(f, cfg.d, m)?;
            let form = QuadraticForm::dot(f, cfg.d);
            let t = count_congruence_classes(&e, cfg.k, &form, &opts)?;
            let s = count_similarity_classes(&e, cfg.k, &form, Scaling::SquaresOnly)?;
            Ok(ScanRow {
                q: f.q() as u64,
                d: cfg.d,
                k: cfg.k,
                set_size: m,
                trial,
                seed,
                t_count: t.total,
                s_count: s,
                elapsed_ms: if cfg.timing { start.elapsed().as_millis() as u64 } else { 0 },
            })
        })
        .collect();
    let mut rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    rows.sort_by_key(|r| (r.q, r.set_size, r.trial));
    Ok(rows)
}

pub fn scan_summary(rows: &[ScanRow]) -> Vec<ScanSummary> {
    let mut groups: BTreeMap<(u64, usize), Vec<&ScanRow>> = BTreeMap::new();
    for r in rows {
        groups.entry((r.q, r.set_size)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((q, set_size), rs)| {
            let k = rs[0].k as i32;
            let t_mean = rs.iter().map(|r| r.t_count as f64).sum::<f64>() / rs.len() as f64;
            ScanSummary {
                q,
                set_size,
                trials: rs.len(),
                t_min: rs.iter().map(|r| r.t_count).min().unwrap_or(0),
                t_mean,
                ratio: t_mean / (q as f64).powi((k + 1) * k / 2),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// construct

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionKind {
    Odd,
    Even,
    Simplex,
    NullProduct,
    Minkowski,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConstructParams {
    pub kind: ConstructionKind,
    pub q: u64,
    pub d: usize,
    pub k: usize,
    /// Interval length for the odd construction; grid side override for the even one.
    pub len: Option<usize>,
    pub c: f64,
    pub eps: f64,
    pub x: Vec<u32>,
    pub y: Vec<u32>,
}

pub fn construct(p: &ConstructParams) -> Result<ConstructionReport> {
    match p.kind {
        ConstructionKind::Odd => {
            let len = p.len.unwrap_or_else(|| constructions::grid_sides(p.c, p.q).1.max(1));
            constructions::sharpness_odd(p.q, p.d, len)
        }
        ConstructionKind::Even => match (p.len, p.d) {
            (Some(side), 2) => constructions::sharpness_even_grid(p.q, side, side),
            (Some(side), d) => constructions::sharpness_even_null(p.q, d, side),
            (None, d) => constructions::sharpness_even(p.q, d, p.c),
        },
        ConstructionKind::Simplex => constructions::sharpness_simplex(p.q, p.d, p.k, p.eps),
        ConstructionKind::NullProduct => constructions::null_product_set(p.q, &p.x, &p.y),
        ConstructionKind::Minkowski => constructions::minkowski_distance_set(p.q, &p.x, &p.y),
    }
}
