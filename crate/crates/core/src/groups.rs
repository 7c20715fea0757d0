//! Orthogonal groups `O(Q)`, `SO(Q)` as explicit element lists, with orbits,
//! stabilizers and rigid motions.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{QuadraticForm, Space, Vector};
use crate::gf::PrimeField;
use crate::linalg::Matrix;

/// Default cap on the number of group elements materialised.
pub const DEFAULT_GROUP_BUDGET: u128 = 10_000_000;
/// Cap on `|G| * q^d` entries of a cached action table.
pub const ACTION_TABLE_BUDGET: u128 = 1 << 26;

/// A linear map `θ` with `θ^T B θ = B`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Isometry {
    matrix: Matrix,
}

impl Isometry {
    /// Wraps `matrix` after checking it preserves `form`.
    pub fn new(form: &QuadraticForm, matrix: Matrix) -> Option<Self> {
        preserves(form, &matrix).then_some(Isometry { matrix })
    }

    pub fn identity(dim: usize) -> Self {
        Isometry {
            matrix: Matrix::identity(dim),
        }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, f: &PrimeField, x: &[u32]) -> Vec<u32> {
        self.matrix.mul_vec(f, x)
    }

    pub fn compose(&self, f: &PrimeField, other: &Isometry) -> Isometry {
        Isometry {
            matrix: self.matrix.mul(f, &other.matrix),
        }
    }

    pub fn transpose(&self) -> Matrix {
        self.matrix.transpose()
    }

    pub fn det(&self, f: &PrimeField) -> u32 {
        self.matrix.det(f)
    }
}

fn preserves(form: &QuadraticForm, m: &Matrix) -> bool {
    let f = form.field();
    m.rows() == form.dim() && m.is_square() && m.transpose().mul(&f, form.gram()).mul(&f, m) == *form.gram()
}

/// `x ↦ θx + z`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RigidMotion {
    pub rotation: Isometry,
    pub translation: Vector,
}

impl RigidMotion {
    pub fn apply(&self, f: &PrimeField, x: &[u32]) -> Vec<u32> {
        let y = self.rotation.apply(f, x);
        y.iter().zip(self.translation.coords()).map(|(&a, &b)| f.add(a, b)).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, f: &PrimeField, other: &RigidMotion) -> RigidMotion {
        let t = self.apply(f, other.translation.coords());
        RigidMotion {
            rotation: self.rotation.compose(f, &other.rotation),
            translation: Vector(t),
        }
    }

    pub fn inverse(&self, f: &PrimeField) -> RigidMotion {
        let inv = self.rotation.matrix.inverse(f).expect("isometries are invertible");
        let t = inv.mul_vec(f, self.translation.coords());
        RigidMotion {
            rotation: Isometry { matrix: inv },
            translation: Vector(t.iter().map(|&c| f.neg(c)).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum GroupVariant {
    /// `O(Q)`.
    #[default]
    Full,
    /// `SO(Q)`, the determinant-one subgroup.
    Special,
}

/// How the element list was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Generation {
    /// Column-by-column exhaustive search over all matrices.
    Exhaustive,
    /// Closure of the reflections in non-null vectors.
    Reflections,
    /// Filtered from a larger group.
    Subgroup,
}

/// An explicit finite group of isometries, sorted by row-major entries.
#[derive(Debug)]
pub struct IsometryGroup {
    form: QuadraticForm,
    variant: GroupVariant,
    generation: Generation,
    elements: Vec<Isometry>,
    space: OnceLock<Space>,
    table: OnceLock<Vec<u32>>,
}

impl Clone for IsometryGroup {
    fn clone(&self) -> Self {
        IsometryGroup::from_sorted(self.form.clone(), self.variant, self.generation, self.elements.clone())
    }
}

impl IsometryGroup {
    fn from_sorted(form: QuadraticForm, variant: GroupVariant, generation: Generation, elements: Vec<Isometry>) -> Self {
        IsometryGroup {
            form,
            variant,
            generation,
            elements,
            space: OnceLock::new(),
            table: OnceLock::new(),
        }
    }

    pub fn form(&self) -> &QuadraticForm {
        &self.form
    }

    pub fn variant(&self) -> GroupVariant {
        self.variant
    }

    pub fn generation(&self) -> Generation {
        self.generation
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Isometry] {
        &self.elements
    }

    pub fn space(&self) -> &Space {
        self.space
            .get_or_init(|| Space::new(self.form.field(), self.form.dim()).expect("group exists, so the space fits"))
    }

    /// `table[g * q^d + x]` is the index of `θ_g x`; built on first use.
    pub fn action_table(&self) -> Result<&[u32]> {
        if let Some(t) = self.table.get() {
            return Ok(t);
        }
        let space = self.space();
        let needed = self.order() as u128 * space.size() as u128;
        if needed > ACTION_TABLE_BUDGET {
            return Err(Error::BudgetExceeded {
                what: "group action table",
                needed,
                budget: ACTION_TABLE_BUDGET,
            });
        }
        let f = self.form.field();
        let n = space.size();
        let mut table = vec![0u32; self.order() * n];
        table.par_chunks_mut(n).zip(self.elements.par_iter()).for_each(|(row, g)| {
            for (x, slot) in row.iter_mut().enumerate() {
                *slot = space.index(&g.apply(&f, space.coords(x))) as u32;
            }
        });
        Ok(self.table.get_or_init(|| table))
    }

    /// Image of point index `x` under element `g`.
    pub fn act(&self, g: usize, x: usize) -> usize {
        match self.action_table() {
            Ok(t) => t[g * self.space().size() + x] as usize,
            Err(_) => {
                let sp = self.space();
                sp.index(&self.elements[g].apply(&self.form.field(), sp.coords(x)))
            }
        }
    }

    /// Checks closure, identity, inverses and preservation of the form exhaustively.
    pub fn verify_axioms(&self) -> bool {
        let f = self.form.field();
        let set: HashSet<&Isometry> = self.elements.iter().collect();
        let id = Isometry::identity(self.form.dim());
        set.contains(&id)
            && self.elements.par_iter().all(|a| {
                preserves(&self.form, &a.matrix)
                    && a.matrix.inverse(&f).is_some_and(|inv| set.contains(&Isometry { matrix: inv }))
                    && self.elements.iter().all(|b| set.contains(&a.compose(&f, b)))
            })
    }

    /// The subgroup fixing every listed vector.
    pub fn stabilizer(&self, tuple: &[Vector]) -> IsometryGroup {
        let f = self.form.field();
        let elements: Vec<Isometry> = self
            .elements
            .par_iter()
            .filter(|g| tuple.iter().all(|v| g.apply(&f, v.coords()) == v.coords()))
            .cloned()
            .collect();
        IsometryGroup::from_sorted(self.form.clone(), self.variant, Generation::Subgroup, elements)
    }

    /// Size of the stabilizer of a tuple of point indices.
    pub fn stabilizer_size_of_indices(&self, tuple: &[usize]) -> usize {
        (0..self.order())
            .into_par_iter()
            .filter(|&g| tuple.iter().all(|&x| self.act(g, x) == x))
            .count()
    }

    /// `{(g x_1, ..., g x_m) : g ∈ G}`.
    pub fn orbit(&self, tuple: &[Vector]) -> BTreeSet<Vec<Vector>> {
        let f = self.form.field();
        self.elements
            .par_iter()
            .map(|g| tuple.iter().map(|v| Vector(g.apply(&f, v.coords()))).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .into_iter()
            .collect()
    }
}

/// `|O(Q)|` via `|O(Q)| = ν_Q(1) · |O(Q|_{x⊥})|` for a unit vector `x`, bottoming out at `|O_1| = 2`.
pub fn group_order_recursion(form: &QuadraticForm) -> Result<u128> {
    form.classify()?;
    recursion_level(form, 0)
}

fn recursion_level(form: &QuadraticForm, depth: usize) -> Result<u128> {
    let d = form.dim();
    if d == 1 {
        return Ok(2);
    }
    let f = form.field();
    let space = Space::new(f, d)?;
    let mut units = 0u128;
    let mut first = None;
    for idx in 0..space.size() {
        if form.eval(space.coords(idx)) == 1 {
            units += 1;
            first.get_or_insert(idx);
        }
    }
    let x = first.ok_or(Error::EmptyUnitSphere(depth))?;
    let bx = form.gram().mul_vec(&f, space.coords(x));
    let perp = Matrix::from_rows(&[bx]).kernel(&f);
    let restricted = form.restrict(&perp);
    Ok(units * recursion_level(&restricted, depth + 1)?)
}

/// Predicted `|O(Q)|` or `|SO(Q)|`.
pub fn predicted_order(form: &QuadraticForm, variant: GroupVariant) -> Result<u128> {
    let full = group_order_recursion(form)?;
    Ok(match variant {
        GroupVariant::Full => full,
        GroupVariant::Special => full / 2,
    })
}

/// Explicit `O(Q)` or `SO(Q)` under the default budget.
///
/// Two-dimensional groups come from exhaustive search, higher dimensions from
/// reflection closure.
pub fn orthogonal_group(form: &QuadraticForm, variant: GroupVariant) -> Result<IsometryGroup> {
    orthogonal_group_with_budget(form, variant, DEFAULT_GROUP_BUDGET)
}

pub fn orthogonal_group_with_budget(form: &QuadraticForm, variant: GroupVariant, budget: u128) -> Result<IsometryGroup> {
    check_budget(form, budget)?;
    let full = if form.dim() <= 2 {
        exhaustive_elements(form)
    } else {
        reflection_closure(form)
    };
    let generation = if form.dim() <= 2 {
        Generation::Exhaustive
    } else {
        Generation::Reflections
    };
    Ok(finish(form, variant, generation, full))
}

/// Always uses exhaustive search, regardless of dimension.
pub fn orthogonal_group_brute_force(form: &QuadraticForm, variant: GroupVariant, budget: u128) -> Result<IsometryGroup> {
    check_budget(form, budget)?;
    Ok(finish(form, variant, Generation::Exhaustive, exhaustive_elements(form)))
}

/// Always uses reflection closure, regardless of dimension.
pub fn orthogonal_group_reflections(form: &QuadraticForm, variant: GroupVariant, budget: u128) -> Result<IsometryGroup> {
    check_budget(form, budget)?;
    Ok(finish(form, variant, Generation::Reflections, reflection_closure(form)))
}

fn check_budget(form: &QuadraticForm, budget: u128) -> Result<u128> {
    let needed = group_order_recursion(form)?;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            what: "orthogonal group elements",
            needed,
            budget,
        });
    }
    Ok(needed)
}

fn finish(form: &QuadraticForm, variant: GroupVariant, generation: Generation, mut elements: Vec<Isometry>) -> IsometryGroup {
    let f = form.field();
    if variant == GroupVariant::Special {
        elements.retain(|g| g.det(&f) == 1);
    }
    elements.sort();
    elements.dedup();
    IsometryGroup::from_sorted(form.clone(), variant, generation, elements)
}

/// Every matrix whose columns `c_j` satisfy `c_i^T B c_j = B_ij`, found column by column.
fn exhaustive_elements(form: &QuadraticForm) -> Vec<Isometry> {
    let f = form.field();
    let d = form.dim();
    let space = Space::new(f, d).expect("budget check already sized the space");
    let mut out = Vec::new();
    let mut cols: Vec<usize> = Vec::with_capacity(d);
    fn extend(form: &QuadraticForm, space: &Space, cols: &mut Vec<usize>, out: &mut Vec<Isometry>) {
        let d = form.dim();
        let j = cols.len();
        if j == d {
            let data: Vec<Vec<u32>> = cols.iter().map(|&c| space.coords(c).to_vec()).collect();
            out.push(Isometry {
                matrix: Matrix::from_columns(&data, d),
            });
            return;
        }
        let gram = form.gram();
        for cand in 0..space.size() {
            let v = space.coords(cand);
            if form.eval(v) != gram.get(j, j) {
                continue;
            }
            if cols
                .iter()
                .enumerate()
                .all(|(i, &c)| form.bilinear(space.coords(c), v) == gram.get(i, j))
            {
                cols.push(cand);
                extend(form, space, cols, out);
                cols.pop();
            }
        }
    }
    extend(form, &space, &mut cols, &mut out);
    out
}

/// Reflection `x ↦ x − 2⟨x,v⟩/Q(v) · v` as a matrix.
pub fn reflection(form: &QuadraticForm, v: &[u32]) -> Option<Isometry> {
    let f = form.field();
    let qv = form.eval(v);
    let inv = f.inv(qv)?;
    let d = form.dim();
    let bv = form.gram().mul_vec(&f, v);
    let scale = f.mul(2, inv);
    let mut m = Matrix::identity(d);
    for i in 0..d {
        for j in 0..d {
            let delta = f.mul(scale, f.mul(v[i], bv[j]));
            m.set(i, j, f.sub(m.get(i, j), delta));
        }
    }
    Some(Isometry { matrix: m })
}

fn reflection_closure(form: &QuadraticForm) -> Vec<Isometry> {
    let f = form.field();
    let d = form.dim();
    let space = Space::new(f, d).expect("budget check already sized the space");
    let gens: Vec<Isometry> = (1..space.size())
        .map(|i| space.coords(i))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .filter_map(|v| reflection(form, v))
        .collect();
    let id = Isometry::identity(d);
    let mut seen: HashSet<Isometry> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for r in &gens {
            let h = g.compose(&f, r);
            if seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    seen.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;
    use proptest::prelude::*;

    fn dot(q: u64, d: usize) -> QuadraticForm {
        QuadraticForm::dot(PrimeField::new(q).unwrap(), d)
    }

    #[test]
    fn order_examples() {
        assert_eq!(orthogonal_group(&dot(3, 2), GroupVariant::Full).unwrap().order(), 8);
        assert_eq!(orthogonal_group(&dot(7, 2), GroupVariant::Full).unwrap().order(), 16);
        assert_eq!(orthogonal_group(&dot(7, 2), GroupVariant::Special).unwrap().order(), 8);
        assert_eq!(orthogonal_group(&dot(3, 3), GroupVariant::Full).unwrap().order(), 48);
        assert_eq!(group_order_recursion(&dot(3, 2)).unwrap(), 8);
        assert_eq!(group_order_recursion(&dot(3, 3)).unwrap(), 48);
        assert_eq!(group_order_recursion(&dot(11, 1)).unwrap(), 2);
    }

    #[test]
    fn literal_matrix_sweep_matches_for_q3() {
        // all 81 matrices over F_3
        let form = dot(3, 2);
        let mut count = 0;
        for code in 0..81u32 {
            let data: Vec<u32> = (0..4).map(|i| code / 3u32.pow(i) % 3).collect();
            if Isometry::new(&form, Matrix::new(2, 2, data)).is_some() {
                count += 1;
            }
        }
        assert_eq!(count, 8);
    }

    #[test]
    fn generation_methods_agree() {
        for q in [3u64, 5] {
            for d in [2usize, 3] {
                let form = dot(q, d);
                let a = orthogonal_group_brute_force(&form, GroupVariant::Full, DEFAULT_GROUP_BUDGET).unwrap();
                let b = orthogonal_group_reflections(&form, GroupVariant::Full, DEFAULT_GROUP_BUDGET).unwrap();
                assert_eq!(a.elements(), b.elements());
                assert!(a.verify_axioms());
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = orthogonal_group_with_budget(&dot(7, 3), GroupVariant::Full, 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 672, .. }));
    }

    #[test]
    fn stabilizer_examples() {
        let g3 = orthogonal_group(&dot(3, 2), GroupVariant::Full).unwrap();
        let s = g3.stabilizer(&[Vector(vec![1, 0])]);
        assert_eq!(s.order(), 2);
        assert!(s.elements().contains(&Isometry::identity(2)));
        assert!(s.elements().contains(&Isometry {
            matrix: Matrix::from_rows(&[vec![1, 0], vec![0, 2]])
        }));
        assert_eq!(g3.stabilizer(&[]).order(), 8);
        let g5 = orthogonal_group(&dot(5, 2), GroupVariant::Full).unwrap();
        assert_eq!(g5.stabilizer(&[Vector(vec![1, 2])]).order(), 1);
    }

    #[test]
    fn orbit_examples() {
        let g5 = orthogonal_group(&dot(5, 2), GroupVariant::Full).unwrap();
        let o = g5.orbit(&[Vector(vec![0, 0]), Vector(vec![1, 2])]);
        assert_eq!(o.len(), 8);
        let g3 = orthogonal_group(&dot(3, 2), GroupVariant::Full).unwrap();
        let circle: BTreeSet<Vec<Vector>> = g3.orbit(&[Vector(vec![1, 0])]);
        assert_eq!(circle.len(), 4);
        assert_eq!(g3.orbit(&[Vector(vec![0, 0]), Vector(vec![0, 0])]).len(), 1);
    }

    #[test]
    fn rigid_motion_algebra() {
        let form = dot(5, 2);
        let f = form.field();
        let g = orthogonal_group(&form, GroupVariant::Full).unwrap();
        let m = RigidMotion {
            rotation: g.elements()[3].clone(),
            translation: Vector(vec![2, 4]),
        };
        let n = RigidMotion {
            rotation: g.elements()[5].clone(),
            translation: Vector(vec![1, 0]),
        };
        let x = [3u32, 1];
        assert_eq!(m.compose(&f, &n).apply(&f, &x), m.apply(&f, &n.apply(&f, &x)));
        assert_eq!(m.inverse(&f).apply(&f, &m.apply(&f, &x)), x.to_vec());
    }

    #[test]
    fn orders_match_recursion_and_size_band() {
        for (d, qs) in [(2usize, vec![3u64, 5, 7, 11, 13]), (3, vec![3, 5, 7])] {
            for q in qs {
                let form = dot(q, d);
                let g = orthogonal_group(&form, GroupVariant::Full).unwrap();
                assert_eq!(g.order() as u128, group_order_recursion(&form).unwrap());
                let nominal = 2.0 * (q as f64).powi((d * (d - 1) / 2) as i32);
                let ratio = g.order() as f64 / nominal;
                assert!((0.5..=2.0).contains(&ratio), "d={d} q={q} ratio={ratio}");
            }
        }
    }

    #[test]
    fn inequivalent_forms_have_comparable_orders() {
        for q in [3u64, 5, 7] {
            let f = PrimeField::new(q).unwrap();
            let ns = f.smallest_nonsquare() as i64;
            for d in [2usize, 3] {
                let mut diag = vec![1i64; d];
                diag[0] = ns;
                let a = group_order_recursion(&QuadraticForm::diagonal(f, &diag)).unwrap() as f64;
                let b = group_order_recursion(&dot(q, d)).unwrap() as f64;
                assert!((0.5..=2.0).contains(&(a / b)));
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn orbit_stabilizer(a in 0u32..7, b in 0u32..7, c in 0u32..7, e in 0u32..7) {
            let g = orthogonal_group(&dot(7, 2), GroupVariant::Full).unwrap();
            let tuple = [Vector(vec![a, b]), Vector(vec![c, e])];
            prop_assert_eq!(g.orbit(&tuple).len() * g.stabilizer(&tuple).order(), g.order());
        }
    }
}
