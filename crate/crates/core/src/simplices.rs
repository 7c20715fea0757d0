//! Distance matrices, congruence and similarity classes of simplices, and the
//! exact counting identities that tie them to the orthogonal group.
//!
//! A k-simplex is an ordered `(k+1)`-tuple of points. Tuples are handled as
//! point indices (see [`crate::geometry`]) throughout, and every sweep is an
//! integer fold so results do not depend on how work is split across threads.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{sphere_points, PointSet, QuadraticForm, Space, Vector};
use crate::gf::PrimeField;
use crate::groups::{orthogonal_group, GroupVariant, Isometry, IsometryGroup};

/// Pairwise-distance tables are precomputed up to this many entries.
const PAIR_TABLE_LIMIT: usize = 1 << 26;
/// Key spaces up to this size use a dense bitset instead of a hash set.
const DENSE_KEY_LIMIT: u128 = 1 << 24;

/// Symmetric matrix of pairwise norms `d_ij = Q(x_i - x_j)`, zero on the diagonal.
///
/// Only the strict upper triangle is stored, in column-major order
/// `(0,1), (0,2), (1,2), (0,3), ...`. The derived ordering compares these entries
/// lexicographically, which is also the numeric order of [`DistanceMatrix::key`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DistanceMatrix {
    size: usize,
    upper: Vec<u32>,
}

#[inline]
fn upper_slot(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

impl DistanceMatrix {
    /// `size` vertices, upper-triangle entries in column-major order.
    pub fn from_upper(size: usize, upper: Vec<u32>) -> Self {
        assert_eq!(upper.len(), size * size.saturating_sub(1) / 2, "wrong number of entries");
        DistanceMatrix { size, upper }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Simplex dimension `k`.
    pub fn k(&self) -> usize {
        self.size.saturating_sub(1)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        if i == j {
            0
        } else {
            self.upper[upper_slot(i, j)]
        }
    }

    pub fn upper(&self) -> &[u32] {
        &self.upper
    }

    /// Full `(k+1) x (k+1)` matrix by rows.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        (0..self.size).map(|i| (0..self.size).map(|j| self.get(i, j)).collect()).collect()
    }

    /// Upper entries read as a big-endian base-`q` number.
    pub fn key(&self, q: u32) -> u64 {
        self.upper.iter().fold(0u64, |acc, &e| acc * q as u64 + e as u64)
    }

    pub fn from_key(mut key: u64, size: usize, q: u32) -> Self {
        let m = size * size.saturating_sub(1) / 2;
        let mut upper = vec![0u32; m];
        for slot in upper.iter_mut().rev() {
            *slot = (key % q as u64) as u32;
            key /= q as u64;
        }
        DistanceMatrix { size, upper }
    }

    pub fn scaled(&self, f: &PrimeField, s: u32) -> Self {
        DistanceMatrix {
            size: self.size,
            upper: self.upper.iter().map(|&e| f.mul(e, s)).collect(),
        }
    }

    /// Relabels vertices: entry `(i, j)` of the result is `d_{p(i) p(j)}`.
    pub fn permuted(&self, p: &[usize]) -> Self {
        let mut upper = vec![0u32; self.upper.len()];
        for j in 1..self.size {
            for i in 0..j {
                upper[upper_slot(i, j)] = self.get(p[i], p[j]);
            }
        }
        DistanceMatrix { size: self.size, upper }
    }
}

/// Pairwise norms of a tuple of vectors.
pub fn distance_matrix(form: &QuadraticForm, tuple: &[Vector]) -> DistanceMatrix {
    let f = form.field();
    let n = tuple.len();
    let mut upper = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for j in 1..n {
        for i in 0..j {
            upper.push(form.eval(tuple[i].sub(&f, &tuple[j]).coords()));
        }
    }
    DistanceMatrix { size: n, upper }
}

/// Members of a point set together with cached norms and distances.
struct Ctx<'a> {
    form: &'a QuadraticForm,
    space: Space,
    norms: Vec<u32>,
    members: Vec<usize>,
    pairs: Option<Vec<u32>>,
}

impl<'a> Ctx<'a> {
    fn new(form: &'a QuadraticForm, e: &PointSet) -> Result<Self> {
        if e.dim() != form.dim() || e.field() != form.field() {
            return Err(Error::DimensionMismatch {
                expected: form.dim(),
                got: e.dim(),
            });
        }
        let space = Space::new(form.field(), form.dim())?;
        let norms = form.norm_table(&space);
        let members = e.indices();
        let m = members.len();
        let pairs = (m * m <= PAIR_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; m * m];
            t.par_chunks_mut(m.max(1)).enumerate().for_each(|(i, row)| {
                for (j, slot) in row.iter_mut().enumerate() {
                    *slot = norms[space.sub(members[i], members[j])];
                }
            });
            t
        });
        Ok(Ctx {
            form,
            space,
            norms,
            members,
            pairs,
        })
    }

    fn m(&self) -> usize {
        self.members.len()
    }

    /// Distance between member positions `i` and `j`.
    #[inline]
    fn dist(&self, i: usize, j: usize) -> u32 {
        match &self.pairs {
            Some(t) => t[i * self.m() + j],
            None => self.norms[self.space.sub(self.members[i], self.members[j])],
        }
    }

    fn q(&self) -> u32 {
        self.form.field().q()
    }
}

/// Calls `visit` on every tuple of member positions of length `len` beginning with `first`.
fn for_each_tuple(m: usize, len: usize, first: usize, mut visit: impl FnMut(&[usize])) {
    if len == 0 {
        return;
    }
    let mut t = vec![0usize; len];
    t[0] = first;
    loop {
        visit(&t);
        let mut pos = len;
        loop {
            if pos == 1 {
                return;
            }
            pos -= 1;
            t[pos] += 1;
            if t[pos] < m {
                break;
            }
            t[pos] = 0;
        }
    }
}

/// Rank of `rows` vectors of length `cols`, stored flat; destroys the buffer.
fn rank_flat(f: &PrimeField, buf: &mut [u32], rows: usize, cols: usize) -> usize {
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| buf[r * cols + c] != 0) else {
            continue;
        };
        for j in 0..cols {
            buf.swap(p * cols + j, rank * cols + j);
        }
        let inv = f.inv(buf[rank * cols + c]).unwrap();
        for r in rank + 1..rows {
            let factor = f.mul(buf[r * cols + c], inv);
            if factor != 0 {
                for j in c..cols {
                    let v = f.mul(factor, buf[rank * cols + j]);
                    buf[r * cols + j] = f.sub(buf[r * cols + j], v);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Whether the vectors at the given point indices are linearly dependent.
fn dependent(space: &Space, points: &[usize], buf: &mut Vec<u32>) -> bool {
    let d = space.dim();
    if points.len() > d {
        return true;
    }
    buf.clear();
    for &p in points {
        buf.extend_from_slice(space.coords(p));
    }
    rank_flat(&space.field(), buf, points.len(), d) < points.len()
}

/// A tuple is degenerate when its differences `x_i - x_0` are dependent.
pub fn is_degenerate(form: &QuadraticForm, tuple: &[Vector]) -> bool {
    if tuple.len() <= 1 {
        return false;
    }
    let f = form.field();
    let diffs: Vec<Vec<u32>> = tuple[1..].iter().map(|v| v.sub(&f, &tuple[0]).0).collect();
    crate::linalg::rank_of(&f, &diffs) < diffs.len()
}

/// Set of `u64` keys: dense bits for small key spaces, hashing otherwise.
#[derive(Clone, Debug)]
enum KeySet {
    Dense(Vec<u64>),
    Sparse(HashSet<u64>),
}

impl KeySet {
    fn new(space: u128) -> Self {
        if space <= DENSE_KEY_LIMIT {
            KeySet::Dense(vec![0; (space as usize).div_ceil(64)])
        } else {
            KeySet::Sparse(HashSet::new())
        }
    }

    #[inline]
    fn insert(&mut self, k: u64) {
        match self {
            KeySet::Dense(b) => b[(k / 64) as usize] |= 1 << (k % 64),
            KeySet::Sparse(h) => {
                h.insert(k);
            }
        }
    }

    fn union(mut self, other: KeySet) -> KeySet {
        match (&mut self, other) {
            (KeySet::Dense(a), KeySet::Dense(b)) => a.iter_mut().zip(b).for_each(|(x, y)| *x |= y),
            (KeySet::Sparse(a), KeySet::Sparse(b)) => a.extend(b),
            _ => unreachable!("key sets of one sweep share a representation"),
        }
        self
    }

    fn keys(&self) -> Vec<u64> {
        let mut out: Vec<u64> = match self {
            KeySet::Dense(b) => b
                .iter()
                .enumerate()
                .flat_map(|(w, &word)| (0..64).filter(move |i| word >> i & 1 == 1).map(move |i| w as u64 * 64 + i))
                .collect(),
            KeySet::Sparse(h) => h.iter().copied().collect(),
        };
        out.sort_unstable();
        out
    }
}

/// Counting convention for congruence classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum CountMode {
    /// Distinct distance matrices.
    #[default]
    DistanceMatrixFast,
    /// Orbits under the motion group, by canonical representatives.
    ExactOrbit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCount {
    pub mode: CountMode,
    pub total: usize,
    pub degenerate_classes: usize,
    pub nondegenerate_classes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct CountOptions {
    pub mode: CountMode,
    /// Count `O(Q)`-orbits of tuples without translations.
    pub pinned: bool,
    pub variant: GroupVariant,
}

fn check_k(form: &QuadraticForm, k: usize) -> Result<()> {
    if k > form.dim() {
        return Err(Error::Config(format!("k = {k} exceeds d = {}", form.dim())));
    }
    Ok(())
}

/// `|T^d_{k,Q}(E)|` under the chosen convention.
///
/// In fast mode a class is a distance matrix; it counts as non-degenerate when at
/// least one non-degenerate tuple realises it. Pinned fast mode keys on the
/// distance matrix of `(0, x_0, ..., x_k)`.
pub fn count_congruence_classes(e: &PointSet, k: usize, form: &QuadraticForm, opts: &CountOptions) -> Result<ClassCount> {
    check_k(form, k)?;
    match opts.mode {
        CountMode::DistanceMatrixFast => fast_count(e, k, form, opts.pinned),
        CountMode::ExactOrbit => {
            let g = orthogonal_group(form, opts.variant)?;
            let classes = exact_orbit_classes(e, k, &g, opts.pinned)?;
            let degenerate = classes.iter().filter(|c| c.degenerate).count();
            Ok(ClassCount {
                mode: CountMode::ExactOrbit,
                total: classes.len(),
                degenerate_classes: degenerate,
                nondegenerate_classes: classes.len() - degenerate,
            })
        }
    }
}

fn fast_count(e: &PointSet, k: usize, form: &QuadraticForm, pinned: bool) -> Result<ClassCount> {
    let (any, nondeg) = fast_key_sets(e, k, form, pinned)?;
    let any = any.keys();
    let nondeg = nondeg.keys();
    Ok(ClassCount {
        mode: CountMode::DistanceMatrixFast,
        total: any.len(),
        degenerate_classes: any.len() - nondeg.len(),
        nondegenerate_classes: nondeg.len(),
    })
}

fn fast_key_sets(e: &PointSet, k: usize, form: &QuadraticForm, pinned: bool) -> Result<(KeySet, KeySet)> {
    let ctx = Ctx::new(form, e)?;
    let q = ctx.q();
    let vertices = if pinned { k + 2 } else { k + 1 };
    let entries = vertices * (vertices - 1) / 2;
    let key_space = (q as u128).checked_pow(entries as u32).filter(|&s| s <= u64::MAX as u128).ok_or(
        Error::BudgetExceeded {
            what: "distance-matrix key space",
            needed: u128::MAX,
            budget: u64::MAX as u128,
        },
    )?;
    let m = ctx.m();
    let empty = || (KeySet::new(key_space), KeySet::new(key_space));
    let sets = (0..m)
        .into_par_iter()
        .fold(
            || (empty(), Vec::new(), Vec::new()),
            |((mut any, mut nondeg), mut buf, mut pts), x0| {
                for_each_tuple(m, k + 1, x0, |t| {
                    let key = if pinned {
                        let mut key = 0u64;
                        for j in 1..vertices {
                            for i in 0..j {
                                let d = if i == 0 {
                                    ctx.norms[ctx.members[t[j - 1]]]
                                } else {
                                    ctx.dist(t[i - 1], t[j - 1])
                                };
                                key = key * q as u64 + d as u64;
                            }
                        }
                        key
                    } else {
                        let mut key = 0u64;
                        for j in 1..=k {
                            for i in 0..j {
                                key = key * q as u64 + ctx.dist(t[i], t[j]) as u64;
                            }
                        }
                        key
                    };
                    any.insert(key);
                    pts.clear();
                    if pinned {
                        pts.extend(t.iter().map(|&p| ctx.members[p]));
                    } else {
                        let base = ctx.members[t[0]];
                        pts.extend(t[1..].iter().map(|&p| ctx.space.sub(ctx.members[p], base)));
                    }
                    if !dependent(&ctx.space, &pts, &mut buf) {
                        nondeg.insert(key);
                    }
                });
                ((any, nondeg), buf, pts)
            },
        )
        .map(|(sets, _, _)| sets)
        .reduce(empty, |(a1, n1), (a2, n2)| (a1.union(a2), n1.union(n2)));
    Ok(sets)
}

/// Every distance matrix realised by `E^{k+1}`, in key order.
pub fn distance_matrices(e: &PointSet, k: usize, form: &QuadraticForm) -> Result<Vec<DistanceMatrix>> {
    check_k(form, k)?;
    let (any, _) = fast_key_sets(e, k, form, false)?;
    let q = form.field().q();
    Ok(any.keys().into_iter().map(|key| DistanceMatrix::from_key(key, k + 1, q)).collect())
}

/// `{Q(x − y) : x, y ∈ E}`.
pub fn distance_set(e: &PointSet, form: &QuadraticForm) -> Result<BTreeSet<u32>> {
    let ctx = Ctx::new(form, e)?;
    let m = ctx.m();
    let q = ctx.q() as usize;
    let seen = (0..m)
        .into_par_iter()
        .fold(
            || vec![false; q],
            |mut seen, i| {
                for j in 0..m {
                    seen[ctx.dist(i, j) as usize] = true;
                }
                seen
            },
        )
        .reduce(|| vec![false; q], |a, b| a.iter().zip(&b).map(|(x, y)| *x || *y).collect());
    Ok((0..q as u32).filter(|&t| seen[t as usize]).collect())
}

/// `μ(𝔻)`: ordered tuples of `E^{k+1}` realising `dm`, by backtracking.
pub fn mu_count(e: &PointSet, dm: &DistanceMatrix, form: &QuadraticForm) -> Result<u64> {
    let ctx = Ctx::new(form, e)?;
    let n = dm.size();
    if n == 0 {
        return Ok(1);
    }
    fn extend(ctx: &Ctx, dm: &DistanceMatrix, t: &mut Vec<usize>) -> u64 {
        let j = t.len();
        if j == dm.size() {
            return 1;
        }
        let mut total = 0;
        for cand in 0..ctx.m() {
            if t.iter().enumerate().all(|(i, &p)| ctx.dist(p, cand) == dm.get(i, j)) {
                t.push(cand);
                total += extend(ctx, dm, t);
                t.pop();
            }
        }
        total
    }
    Ok((0..ctx.m())
        .into_par_iter()
        .map(|x0| extend(&ctx, dm, &mut vec![x0]))
        .sum())
}

/// `μ` for every realised distance matrix, by one sweep over `E^{k+1}`.
pub fn mu_table(e: &PointSet, k: usize, form: &QuadraticForm) -> Result<BTreeMap<DistanceMatrix, u64>> {
    let ctx = Ctx::new(form, e)?;
    let q = ctx.q();
    let m = ctx.m();
    let counts = (0..m)
        .into_par_iter()
        .fold(HashMap::<u64, u64>::new, |mut acc, x0| {
            for_each_tuple(m, k + 1, x0, |t| {
                let mut key = 0u64;
                for j in 1..=k {
                    for i in 0..j {
                        key = key * q as u64 + ctx.dist(t[i], t[j]) as u64;
                    }
                }
                *acc.entry(key).or_default() += 1;
            });
            acc
        })
        .reduce(HashMap::new, merge_counts);
    Ok(counts
        .into_iter()
        .map(|(key, c)| (DistanceMatrix::from_key(key, k + 1, q), c))
        .collect())
}

fn merge_counts(mut a: HashMap<u64, u64>, b: HashMap<u64, u64>) -> HashMap<u64, u64> {
    if a.len() < b.len() {
        return merge_counts(b, a);
    }
    for (key, c) in b {
        *a.entry(key).or_default() += c;
    }
    a
}

/// `ν(θ, z) = #{(u, v) ∈ E² : u − rθv = z}`, with `r = 1` when omitted.
pub fn nu_count(e: &PointSet, theta: &Isometry, z: &Vector, r: Option<u32>) -> Result<u64> {
    let table = nu_table(e, theta, r)?;
    let space = Space::new(e.field(), e.dim())?;
    Ok(table[space.index(z.coords())])
}

/// `ν(θ, ·)` over every translation `z`, indexed by point index.
pub fn nu_table(e: &PointSet, theta: &Isometry, r: Option<u32>) -> Result<Vec<u64>> {
    let f = e.field();
    let space = Space::new(f, e.dim())?;
    let r = r.unwrap_or(1);
    let members = e.indices();
    let images: Vec<usize> = members
        .iter()
        .map(|&v| space.scale(space.index(&theta.apply(&f, space.coords(v))), r))
        .collect();
    let mut table = vec![0u64; space.size()];
    for &u in &members {
        for &w in &images {
            table[space.sub(u, w)] += 1;
        }
    }
    Ok(table)
}

/// One congruence class found by exact orbit labelling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitClass {
    /// Lexicographically least tuple of the class, as point indices.
    pub representative: Vec<usize>,
    pub distances: DistanceMatrix,
    /// Tuples of `E^{k+1}` in the class.
    pub mu: u64,
    /// Size of the stabilizer in the motion group (or in `G` when pinned).
    pub stabilizer_size: usize,
    pub degenerate: bool,
}

struct Radix {
    n: u64,
    parts: usize,
}

impl Radix {
    fn new(space: &Space, parts: usize) -> Result<Self> {
        let n = space.size() as u64;
        let total = (n as u128).checked_pow(parts as u32).unwrap_or(u128::MAX);
        if total > u64::MAX as u128 {
            return Err(Error::BudgetExceeded {
                what: "orbit key space",
                needed: total,
                budget: u64::MAX as u128,
            });
        }
        Ok(Radix { n, parts })
    }

    #[inline]
    fn encode(&self, points: impl Iterator<Item = usize>) -> u64 {
        points.fold(0u64, |acc, p| acc * self.n + p as u64)
    }

    fn decode(&self, mut key: u64) -> Vec<usize> {
        let mut out = vec![0usize; self.parts];
        for slot in out.iter_mut().rev() {
            *slot = (key % self.n) as usize;
            key /= self.n;
        }
        out
    }
}

/// Classes of `E^{k+1}` under rigid motions `x ↦ θx + z`, `θ ∈ G`, or under `G` alone when `pinned`.
///
/// Unpinned tuples are first translated to `(0, x_1 - x_0, ..., x_k - x_0)`; the
/// class label is the least image of that pinned tuple under `G`. Classes come back
/// sorted by representative.
pub fn exact_orbit_classes(e: &PointSet, k: usize, g: &IsometryGroup, pinned: bool) -> Result<Vec<OrbitClass>> {
    let form = g.form();
    check_k(form, k)?;
    let ctx = Ctx::new(form, e)?;
    let parts = if pinned { k + 1 } else { k };
    let radix = Radix::new(&ctx.space, parts)?;
    g.action_table()?;
    let m = ctx.m();

    let counts = (0..m)
        .into_par_iter()
        .fold(HashMap::<u64, u64>::new, |mut acc, x0| {
            for_each_tuple(m, k + 1, x0, |t| {
                let key = if pinned {
                    radix.encode(t.iter().map(|&p| ctx.members[p]))
                } else {
                    let base = ctx.members[t[0]];
                    radix.encode(t[1..].iter().map(|&p| ctx.space.sub(ctx.members[p], base)))
                };
                *acc.entry(key).or_default() += 1;
            });
            acc
        })
        .reduce(HashMap::new, merge_counts);

    let mut keys: Vec<(u64, u64)> = counts.into_iter().collect();
    keys.sort_unstable();
    let labelled: Vec<(u64, u64, usize, bool)> = keys
        .par_iter()
        .map_init(Vec::new, |buf, &(key, count)| {
            let pts = radix.decode(key);
            let mut best = u64::MAX;
            let mut stab = 0usize;
            for h in 0..g.order() {
                let img = radix.encode(pts.iter().map(|&p| g.act(h, p)));
                best = best.min(img);
                if img == key {
                    stab += 1;
                }
            }
            (best, count, stab, dependent(&ctx.space, &pts, buf))
        })
        .collect();

    let mut classes: BTreeMap<u64, OrbitClass> = BTreeMap::new();
    for (canon, count, stab, degenerate) in labelled {
        let entry = classes.entry(canon).or_insert_with(|| {
            let mut representative = radix.decode(canon);
            if !pinned {
                representative.insert(0, 0);
            }
            let vectors: Vec<Vector> = representative.iter().map(|&p| ctx.space.vector(p)).collect();
            OrbitClass {
                representative,
                distances: distance_matrix(form, &vectors),
                mu: 0,
                stabilizer_size: stab,
                degenerate,
            }
        });
        entry.mu += count;
    }
    Ok(classes.into_values().collect())
}

/// Stabilizer of a tuple in the motion group, i.e. the `G`-stabilizer of its pinned translate.
pub fn class_stabilizer_size(g: &IsometryGroup, tuple: &[Vector]) -> usize {
    let Some(first) = tuple.first() else {
        return g.order();
    };
    let f = g.form().field();
    let pinned: Vec<Vector> = tuple[1..].iter().map(|v| v.sub(&f, first)).collect();
    g.stabilizer(&pinned).order()
}

/// Both sides of `Σ_𝔻 s(𝔻) μ(𝔻)² = Σ_{θ,z} ν_θ(z)^{k+1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: u128,
    pub rhs: u128,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Left side over exact orbit classes with exact stabilizers; right side by a full sweep.
pub fn verify_counting_identity(e: &PointSet, k: usize, g: &IsometryGroup) -> Result<IdentityCheck> {
    let classes = exact_orbit_classes(e, k, g, false)?;
    let lhs = classes
        .iter()
        .map(|c| c.stabilizer_size as u128 * (c.mu as u128).pow(2))
        .sum();
    let rhs = motion_power_sum(e, k + 1, g, &[1])?;
    Ok(IdentityCheck { lhs, rhs })
}

/// `Σ_{r ∈ scales} Σ_θ Σ_z ν_{r,θ}(z)^power`.
fn motion_power_sum(e: &PointSet, power: usize, g: &IsometryGroup, scales: &[u32]) -> Result<u128> {
    g.action_table()?;
    let space = g.space();
    let members = e.indices();
    let n = space.size();
    let cells: Vec<(u32, usize)> = scales.iter().flat_map(|&r| (0..g.order()).map(move |h| (r, h))).collect();
    Ok(cells
        .par_iter()
        .map_init(
            || vec![0u32; n],
            |counts, &(r, h)| {
                let images: Vec<usize> = members.iter().map(|&v| space.scale(g.act(h, v), r)).collect();
                for &u in &members {
                    for &w in &images {
                        counts[space.sub(u, w)] += 1;
                    }
                }
                let mut s = 0u128;
                for c in counts.iter_mut() {
                    if *c != 0 {
                        s += (*c as u128).pow(power as u32);
                        *c = 0;
                    }
                }
                s
            },
        )
        .sum())
}

/// Which dilations act on distance matrices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Scaling {
    /// Multiplication by nonzero squares, the action induced by `x ↦ rx`.
    #[default]
    SquaresOnly,
    /// Multiplication by every nonzero scalar.
    AllScalars,
}

fn scalars(f: &PrimeField, scaling: Scaling) -> Vec<u32> {
    match scaling {
        Scaling::SquaresOnly => f.nonzero_squares(),
        Scaling::AllScalars => (1..f.q()).collect(),
    }
}

/// Least matrix in the scaling orbit of `dm`.
pub fn canonical_under_scaling(dm: &DistanceMatrix, f: &PrimeField, scaling: Scaling) -> DistanceMatrix {
    scalars(f, scaling)
        .into_iter()
        .map(|s| dm.scaled(f, s))
        .min()
        .expect("at least one scalar")
}

pub fn similarity_classes_of(mats: &[DistanceMatrix], f: &PrimeField, scaling: Scaling) -> BTreeSet<DistanceMatrix> {
    mats.iter().map(|m| canonical_under_scaling(m, f, scaling)).collect()
}

/// `|S^d_{k,Q}(E)|`: realised distance matrices modulo scaling.
pub fn count_similarity_classes(e: &PointSet, k: usize, form: &QuadraticForm, scaling: Scaling) -> Result<usize> {
    let mats = distance_matrices(e, k, form)?;
    Ok(similarity_classes_of(&mats, &form.field(), scaling).len())
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Least relabelling of `dm` over all vertex permutations.
pub fn canonical_unordered(dm: &DistanceMatrix) -> DistanceMatrix {
    permutations(dm.size())
        .iter()
        .map(|p| dm.permuted(p))
        .min()
        .expect("at least the identity permutation")
}

/// Distance matrices up to reordering of the vertices.
pub fn count_unordered_classes(e: &PointSet, k: usize, form: &QuadraticForm) -> Result<usize> {
    let mats = distance_matrices(e, k, form)?;
    let set: BTreeSet<DistanceMatrix> = mats.iter().map(canonical_unordered).collect();
    Ok(set.len())
}

/// Degenerate distance classes of `E` against `2k` times the number of distance
/// matrices of k-simplices over the whole of `F_q^{k-1}`, summed over both
/// isometry classes of `(k-1)`-dimensional forms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegenerateBound {
    pub degenerate_classes: usize,
    pub bound: usize,
}

pub fn degenerate_class_bound(e: &PointSet, k: usize, form: &QuadraticForm) -> Result<DegenerateBound> {
    if k < 2 {
        return Err(Error::Config("the degenerate-class bound needs k >= 2".into()));
    }
    let count = fast_count(e, k, form, false)?;
    let f = form.field();
    let mut per_form = 0;
    for last in [1i64, f.smallest_nonsquare() as i64] {
        let mut diag = vec![1i64; k - 1];
        diag[k - 2] = last;
        let small = QuadraticForm::diagonal(f, &diag);
        let full = PointSet::full(f, k - 1)?;
        per_form += fast_count(&full, k, &small, false)?.total;
    }
    Ok(DegenerateBound {
        degenerate_classes: count.degenerate_classes,
        bound: 2 * k * per_form,
    })
}

/// Both sides of the similarity analogue of the counting identity, reported
/// without any claim that they agree.
///
/// `lhs = Σ μ_S²` over similarity classes of distance matrices;
/// `rhs = Σ_{r ≠ 0} Σ_θ Σ_z ν_{r,θ}(z)^{k+1}` over all dilations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimilarityDiagnostic {
    pub lhs: u128,
    pub rhs: u128,
}

pub fn similarity_sum_diagnostic(e: &PointSet, k: usize, g: &IsometryGroup, scaling: Scaling) -> Result<SimilarityDiagnostic> {
    let form = g.form();
    let f = form.field();
    let mut per_class: BTreeMap<DistanceMatrix, u64> = BTreeMap::new();
    for (dm, mu) in mu_table(e, k, form)? {
        *per_class.entry(canonical_under_scaling(&dm, &f, scaling)).or_default() += mu;
    }
    let lhs = per_class.values().map(|&m| (m as u128).pow(2)).sum();
    let rhs = motion_power_sum(e, k + 1, g, &(1..f.q()).collect::<Vec<_>>())?;
    Ok(SimilarityDiagnostic { lhs, rhs })
}

/// Exact quantities for a subset of a sphere `{Q = r}`, `r ≠ 0`.
///
/// `f(g) = #{z ∈ E : gz ∈ E}`; `Σ_g f(g)²` counts quadruples split as `S` (the
/// two base points are not `±` each other), `T` (equal) and `R` (opposite).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SphereDecomposition {
    pub radius: u32,
    pub set_size: usize,
    pub sphere_size: usize,
    pub group_order: usize,
    /// `ν(t) = #{(x, z) ∈ E² : ⟨x, z⟩ = t}`, indexed by `t`.
    pub nu_t: Vec<u64>,
    pub f_sum: u128,
    pub f_square_sum: u128,
    pub s: u128,
    pub t: u128,
    pub r: u128,
    /// `|G| / |S| · |E|²`.
    pub t_closed: u128,
    /// `|G| / |S| · |E ∩ −E|²`.
    pub r_closed: u128,
    pub nu_square_sum: u128,
    /// `|E|⁴ / q + 2 |E|² q^{d−1}`.
    pub nu_square_bound: f64,
}

impl SphereDecomposition {
    pub fn decomposition_holds(&self) -> bool {
        self.f_square_sum == self.s + self.t + self.r && self.t == self.t_closed && self.r == self.r_closed
    }

    pub fn bound_holds(&self) -> bool {
        self.nu_square_sum as f64 <= self.nu_square_bound
    }
}

pub fn dot_level_decomposition(e: &PointSet, g: &IsometryGroup) -> Result<SphereDecomposition> {
    let form = g.form();
    let f = form.field();
    let space = g.space();
    let members = e.indices();
    let norms: BTreeSet<u32> = members.iter().map(|&x| form.eval(space.coords(x))).collect();
    let radius = match norms.iter().collect::<Vec<_>>()[..] {
        [&r] if r != 0 => r,
        _ => return Err(Error::NotOnSphere),
    };
    g.action_table()?;
    let sphere = sphere_points(form, radius)?;
    let sym = e.symmetric_part();

    let mut nu_t = vec![0u64; f.q() as usize];
    for &x in &members {
        for &z in &members {
            nu_t[form.bilinear(space.coords(x), space.coords(z)) as usize] += 1;
        }
    }
    let (f_sum, f_square_sum, s, t, r) = (0..g.order())
        .into_par_iter()
        .map(|h| {
            let inside: Vec<usize> = members.iter().copied().filter(|&z| e.contains(g.act(h, z))).collect();
            let fg = inside.len() as u128;
            let mut s = 0u128;
            let mut r = 0u128;
            for &x in &inside {
                let minus = space.neg(x);
                for &z in &inside {
                    if z == minus {
                        r += 1;
                    } else if z != x {
                        s += 1;
                    }
                }
            }
            (fg, fg * fg, s, fg, r)
        })
        .reduce(
            || (0, 0, 0, 0, 0),
            |a, b| (a.0 + b.0, a.1 + b.1, a.2 + b.2, a.3 + b.3, a.4 + b.4),
        );
    let stab = g.order() as u128 / sphere.len() as u128;
    let q = f.q() as f64;
    let en = members.len() as f64;
    Ok(SphereDecomposition {
        radius,
        set_size: members.len(),
        sphere_size: sphere.len(),
        group_order: g.order(),
        nu_square_sum: nu_t.iter().map(|&v| (v as u128).pow(2)).sum(),
        nu_t,
        f_sum,
        f_square_sum,
        s,
        t,
        r,
        t_closed: stab * (members.len() as u128).pow(2),
        r_closed: stab * (sym.len() as u128).pow(2),
        nu_square_bound: en.powi(4) / q + 2.0 * en * en * q.powi(form.dim() as i32 - 1),
    })
}

/// One CSV row per exact class: `class_id,representative_entries,mu,stabilizer_size,degenerate`.
pub fn class_inventory_csv(classes: &[OrbitClass]) -> String {
    let mut out = String::from("class_id,representative_entries,mu,stabilizer_size,degenerate\n");
    for (id, c) in classes.iter().enumerate() {
        let entries: Vec<String> = c.distances.upper().iter().map(|e| e.to_string()).collect();
        let _ = writeln!(
            out,
            "{id},{},{},{},{}",
            entries.join(" "),
            c.mu,
            c.stabilizer_size,
            c.degenerate
        );
    }
    out
}
