//! Vectors, quadratic forms and point sets in `F_q^d`.
//!
//! Points are addressed by a base-`q` little-endian index,
//! `idx = x_0 + x_1 q + ... + x_{d-1} q^{d-1}`, used by every module.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::linalg::{self, Matrix};

/// Largest ambient space (`q^d`) the enumeration kernels accept.
pub const MAX_SPACE_SIZE: usize = 1 << 24;

/// A coordinate vector in `F_q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Vector(pub Vec<u32>);

impl Vector {
    pub fn new(coords: Vec<u32>) -> Self {
        Vector(coords)
    }

    pub fn from_signed(field: &PrimeField, coords: &[i64]) -> Self {
        Vector(coords.iter().map(|&c| field.reduce(c)).collect())
    }

    pub fn zero(dim: usize) -> Self {
        Vector(vec![0; dim])
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, f: &PrimeField, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f.add(a, b)).collect())
    }

    pub fn sub(&self, f: &PrimeField, other: &Vector) -> Vector {
        Vector(self.0.iter().zip(&other.0).map(|(&a, &b)| f.sub(a, b)).collect())
    }

    pub fn scale(&self, f: &PrimeField, s: u32) -> Vector {
        Vector(self.0.iter().map(|&a| f.mul(a, s)).collect())
    }

    pub fn neg(&self, f: &PrimeField) -> Vector {
        Vector(self.0.iter().map(|&a| f.neg(a)).collect())
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn checked_size(q: u32, dim: usize) -> Result<usize> {
    let mut n: u128 = 1;
    for _ in 0..dim {
        n *= q as u128;
        if n > MAX_SPACE_SIZE as u128 {
            return Err(Error::BudgetExceeded {
                what: "ambient space q^d",
                needed: n,
                budget: MAX_SPACE_SIZE as u128,
            });
        }
    }
    Ok(n as usize)
}

/// Index arithmetic on `F_q^d` with a cached coordinate table.
#[derive(Clone, Debug)]
pub struct Space {
    field: PrimeField,
    dim: usize,
    size: usize,
    digits: Vec<u32>,
}

impl Space {
    pub fn new(field: PrimeField, dim: usize) -> Result<Self> {
        let size = checked_size(field.q(), dim)?;
        let q = field.q() as usize;
        let mut digits = vec![0u32; size * dim];
        for idx in 0..size {
            let mut rest = idx;
            for i in 0..dim {
                digits[idx * dim + i] = (rest % q) as u32;
                rest /= q;
            }
        }
        Ok(Space {
            field,
            dim,
            size,
            digits,
        })
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn coords(&self, idx: usize) -> &[u32] {
        &self.digits[idx * self.dim..(idx + 1) * self.dim]
    }

    pub fn vector(&self, idx: usize) -> Vector {
        Vector(self.coords(idx).to_vec())
    }

    #[inline]
    pub fn index(&self, coords: &[u32]) -> usize {
        let q = self.field.q() as usize;
        coords.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        let q = self.field.q() as usize;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut idx = 0;
        for i in (0..self.dim).rev() {
            let s = ca[i] as usize + cb[i] as usize;
            idx = idx * q + if s >= q { s - q } else { s };
        }
        idx
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        let q = self.field.q() as usize;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let mut idx = 0;
        for i in (0..self.dim).rev() {
            let s = ca[i] as usize + q - cb[i] as usize;
            idx = idx * q + if s >= q { s - q } else { s };
        }
        idx
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        let q = self.field.q() as usize;
        let ca = self.coords(a);
        let mut idx = 0;
        for i in (0..self.dim).rev() {
            idx = idx * q + if ca[i] == 0 { 0 } else { q - ca[i] as usize };
        }
        idx
    }

    pub fn scale(&self, a: usize, s: u32) -> usize {
        let q = self.field.q() as usize;
        let ca = self.coords(a);
        let mut idx = 0;
        for i in (0..self.dim).rev() {
            idx = idx * q + self.field.mul(ca[i], s) as usize;
        }
        idx
    }

    /// Standard dot product of two points, the pairing used by characters.
    #[inline]
    pub fn dot(&self, a: usize, b: usize) -> u32 {
        let q = self.field.q() as u64;
        let (ca, cb) = (self.coords(a), self.coords(b));
        let s: u64 = ca.iter().zip(cb).map(|(&x, &y)| x as u64 * y as u64).sum();
        (s % q) as u32
    }
}

/// Square class of a nonzero field element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SquareClass {
    Square,
    NonSquare,
}

/// Witt type of a non-degenerate form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormKind {
    /// `nH`, `d = 2n`.
    SplitEven,
    /// `(n-1)H + N_{K/F}`, `d = 2n`.
    NonSplitEven,
    /// `nH + c x^2`, `d = 2n + 1`.
    Odd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormClass {
    pub kind: FormKind,
    /// `d / 2` for even dimension, `(d - 1) / 2` for odd.
    pub n: usize,
    /// Square-class representative of `(-1)^n disc(Q)`; only for [`FormKind::Odd`].
    pub c: Option<u32>,
    pub disc_class: SquareClass,
    /// Square-class representative of the discriminant (`1` or the least non-residue).
    pub disc_rep: u32,
}

impl FormClass {
    /// Dimension of a maximal totally isotropic subspace.
    pub fn witt_index(&self) -> usize {
        match self.kind {
            FormKind::SplitEven | FormKind::Odd => self.n,
            FormKind::NonSplitEven => self.n - 1,
        }
    }
}

/// A quadratic form `Q(x) = x^T B x` with symmetric Gram matrix `B`.
///
/// The associated bilinear form is `<x, y> = x^T B y`, so `Q(x) = <x, x>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    field: PrimeField,
    gram: Matrix,
}

impl QuadraticForm {
    pub fn new(field: PrimeField, gram: Matrix) -> Result<Self> {
        if !gram.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let q = field.q();
        let gram = Matrix::new(
            gram.rows(),
            gram.cols(),
            gram.data().iter().map(|&v| v % q).collect(),
        );
        Ok(QuadraticForm { field, gram })
    }

    pub fn from_rows(field: PrimeField, rows: &[Vec<i64>]) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.reduce(v)).collect())
            .collect();
        if rows.iter().any(|r| r.len() != rows.len()) {
            return Err(Error::NotSymmetric);
        }
        QuadraticForm::new(field, Matrix::from_rows(&rows))
    }

    /// The standard dot product `x_1^2 + ... + x_d^2`.
    pub fn dot(field: PrimeField, dim: usize) -> Self {
        QuadraticForm {
            field,
            gram: Matrix::identity(dim),
        }
    }

    pub fn diagonal(field: PrimeField, diag: &[i64]) -> Self {
        let d = diag.len();
        let mut gram = Matrix::zeros(d, d);
        for (i, &a) in diag.iter().enumerate() {
            gram.set(i, i, field.reduce(a));
        }
        QuadraticForm { field, gram }
    }

    /// The hyperbolic plane, Gram `[[0, 1], [1, 0]]`, so `Q(x, y) = 2xy`.
    pub fn hyperbolic_plane(field: PrimeField) -> Self {
        QuadraticForm {
            field,
            gram: Matrix::from_rows(&[vec![0, 1], vec![1, 0]]),
        }
    }

    /// `Q(x, y) = xy`, Gram `[[0, 1/2], [1/2, 0]]`.
    pub fn product_form(field: PrimeField) -> Self {
        let half = field.inv(2).unwrap();
        QuadraticForm {
            field,
            gram: Matrix::from_rows(&[vec![0, half], vec![half, 0]]),
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.gram.rows()
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn is_dot(&self) -> bool {
        self.gram == Matrix::identity(self.dim())
    }

    #[inline]
    pub fn bilinear(&self, x: &[u32], y: &[u32]) -> u32 {
        let q = self.field.q() as u64;
        let d = self.dim();
        let mut acc = 0u64;
        for i in 0..d {
            if x[i] == 0 {
                continue;
            }
            let mut row = 0u64;
            for j in 0..d {
                row += self.gram.get(i, j) as u64 * y[j] as u64;
            }
            acc += x[i] as u64 * (row % q);
        }
        (acc % q) as u32
    }

    #[inline]
    pub fn eval(&self, x: &[u32]) -> u32 {
        self.bilinear(x, x)
    }

    pub fn determinant(&self) -> u32 {
        self.gram.det(&self.field)
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.dim() == 0 || self.determinant() != 0
    }

    /// `A^T B A`: the same form in the basis given by the columns of `A`.
    pub fn change_basis(&self, a: &Matrix) -> QuadraticForm {
        let f = &self.field;
        QuadraticForm {
            field: self.field,
            gram: a.transpose().mul(f, &self.gram).mul(f, a),
        }
    }

    /// Gram matrix of the restriction to `span(basis)`, expressed in that basis.
    pub fn restrict(&self, basis: &[Vec<u32>]) -> QuadraticForm {
        let m = basis.len();
        let mut gram = Matrix::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                gram.set(i, j, self.bilinear(&basis[i], &basis[j]));
            }
        }
        QuadraticForm {
            field: self.field,
            gram,
        }
    }

    /// Witt classification from dimension and discriminant.
    pub fn classify(&self) -> Result<FormClass> {
        let f = &self.field;
        let det = self.determinant();
        if det == 0 || self.dim() == 0 {
            return Err(Error::DegenerateForm);
        }
        let d = self.dim();
        let disc_rep = f.square_class_rep(det);
        let disc_class = if disc_rep == 1 {
            SquareClass::Square
        } else {
            SquareClass::NonSquare
        };
        let n = d / 2;
        let sign = if n.is_multiple_of(2) { 1 } else { f.neg(1) };
        let signed_disc = f.mul(sign, det);
        let (kind, c) = if d.is_multiple_of(2) {
            if f.is_square(signed_disc) {
                (FormKind::SplitEven, None)
            } else {
                (FormKind::NonSplitEven, None)
            }
        } else {
            (FormKind::Odd, Some(f.square_class_rep(signed_disc)))
        };
        Ok(FormClass {
            kind,
            n,
            c,
            disc_class,
            disc_rep,
        })
    }

    /// `Q` evaluated at every point of `space`, by index.
    pub fn norm_table(&self, space: &Space) -> Vec<u32> {
        (0..space.size()).map(|i| self.eval(space.coords(i))).collect()
    }

    fn check_space(&self, space: &Space) -> Result<()> {
        if space.dim() != self.dim() || space.field() != self.field {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: space.dim(),
            });
        }
        Ok(())
    }
}

/// Sphere `{x : Q(x) = r}` by full enumeration of `F_q^d`.
pub fn sphere_points(form: &QuadraticForm, r: u32) -> Result<PointSet> {
    let space = Space::new(form.field(), form.dim())?;
    let mut set = PointSet::empty(form.field(), form.dim())?;
    for idx in 0..space.size() {
        if form.eval(space.coords(idx)) == r % form.field().q() {
            set.insert(idx);
        }
    }
    Ok(set)
}

/// Enumerated sphere sizes `|S_r|` for every `r`, by one pass over the space.
pub fn sphere_size_census(form: &QuadraticForm) -> Result<Vec<u64>> {
    let space = Space::new(form.field(), form.dim())?;
    form.check_space(&space)?;
    let mut counts = vec![0u64; form.field().q() as usize];
    for idx in 0..space.size() {
        counts[form.eval(space.coords(idx)) as usize] += 1;
    }
    Ok(counts)
}

/// Closed-form sphere size from the Witt type of the form.
pub fn sphere_size_formula(form: &QuadraticForm, r: u32) -> Result<u64> {
    let class = form.classify()?;
    let f = form.field();
    let q = f.q() as i128;
    let d = form.dim() as u32;
    let r = r % f.q();
    let p = |e: u32| q.pow(e);
    let size: i128 = match class.kind {
        FormKind::SplitEven => {
            if r != 0 {
                p(d - 1) - p((d - 2) / 2)
            } else {
                p(d - 1) + p(d / 2) - p((d - 2) / 2)
            }
        }
        FormKind::NonSplitEven => {
            if r != 0 {
                p(d - 1) + p((d - 2) / 2)
            } else {
                p(d - 1) - p(d / 2) + p((d - 2) / 2)
            }
        }
        FormKind::Odd => {
            if r != 0 {
                let c = class.c.expect("odd forms carry c");
                let ratio = f.div(r, c).unwrap();
                p(d - 1) + p((d - 1) / 2) * f.legendre(ratio) as i128
            } else {
                p(d - 1)
            }
        }
    };
    Ok(size as u64)
}

/// Mutually orthogonal null vectors plus an optional completion vector `e`
/// with `<e,e> = 1`, `<e,n_1> = 1` and `<e,n_i> = 0` for `i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NullStructure {
    pub null_vectors: Vec<Vector>,
    pub completion: Option<Vector>,
}

impl NullStructure {
    /// Checks every defining constraint exactly.
    pub fn verify(&self, form: &QuadraticForm) -> bool {
        let f = form.field();
        let ns = &self.null_vectors;
        let nulls_ok = ns.iter().all(|n| !n.is_zero() && form.eval(n.coords()) == 0)
            && ns.iter().all(|a| ns.iter().all(|b| form.bilinear(a.coords(), b.coords()) == 0))
            && linalg::rank_of(&f, &ns.iter().map(|v| v.0.clone()).collect::<Vec<_>>()) == ns.len();
        let completion_ok = match &self.completion {
            None => true,
            Some(e) => {
                form.eval(e.coords()) == 1
                    && ns.iter().enumerate().all(|(i, n)| {
                        form.bilinear(e.coords(), n.coords()) == if i == 0 { 1 } else { 0 }
                    })
            }
        };
        nulls_ok && completion_ok
    }
}

fn is_normalized(coords: &[u32]) -> bool {
    coords.iter().find(|&&c| c != 0) == Some(&1)
}

/// Finds `m` mutually orthogonal, independent null vectors by exhaustive search.
///
/// Candidates are scanned in point-index order, restricted to vectors whose first
/// nonzero coordinate is 1. With `completion`, also solves for `e` (see
/// [`NullStructure`]), rescaling `n_1` when `Q(e)` is a nonzero square and shifting
/// `e` along `n_1` otherwise.
pub fn find_null_structure(form: &QuadraticForm, m: usize, completion: bool) -> Result<NullStructure> {
    let class = form.classify()?;
    let f = form.field();
    let witt = class.witt_index();
    if m > 0 && witt == 0 {
        return Err(Error::NoNullVector);
    }
    if m > witt {
        return Err(Error::InfeasibleCount {
            requested: m,
            max: witt,
        });
    }
    let space = Space::new(f, form.dim())?;
    let mut nulls: Vec<Vec<u32>> = Vec::with_capacity(m);
    for idx in 1..space.size() {
        if nulls.len() == m {
            break;
        }
        let v = space.coords(idx);
        if !is_normalized(v) {
            continue;
        }
        if nulls.iter().any(|n| form.bilinear(v, n) != 0) {
            continue;
        }
        if form.eval(v) != 0 {
            continue;
        }
        let mut trial = nulls.clone();
        trial.push(v.to_vec());
        if linalg::rank_of(&f, &trial) == trial.len() {
            nulls = trial;
        }
    }
    if nulls.len() < m {
        return Err(Error::NoNullVector);
    }
    let completion = if completion {
        if m == 0 {
            return Err(Error::InfeasibleCount { requested: 0, max: witt });
        }
        let (n1, e) = solve_completion(form, &nulls)?;
        nulls[0] = n1;
        Some(Vector(e))
    } else {
        None
    };
    Ok(NullStructure {
        null_vectors: nulls.into_iter().map(Vector).collect(),
        completion,
    })
}

fn solve_completion(form: &QuadraticForm, nulls: &[Vec<u32>]) -> Result<(Vec<u32>, Vec<u32>)> {
    let f = form.field();
    let d = form.dim();
    let aug = linalg::complete_basis(&f, nulls, d);
    // g_ij = <v_i, n_j>; find x with sum_i x_i <v_i, n_j> = delta_{1j}
    let mut g = Matrix::zeros(nulls.len(), aug.len());
    for (j, n) in nulls.iter().enumerate() {
        for (i, v) in aug.iter().enumerate() {
            g.set(j, i, form.bilinear(v, n));
        }
    }
    let mut rhs = vec![0u32; nulls.len()];
    rhs[0] = 1;
    let x = g.solve(&f, &rhs).ok_or(Error::SingularGram)?;
    let mut e = vec![0u32; d];
    for (xi, v) in x.iter().zip(&aug) {
        for k in 0..d {
            e[k] = f.add(e[k], f.mul(*xi, v[k]));
        }
    }
    let s = form.eval(&e);
    let mut n1 = nulls[0].clone();
    if let Some(root) = f.sqrt(s).filter(|_| s != 0) {
        let root_inv = f.inv(root).unwrap();
        e.iter_mut().for_each(|c| *c = f.mul(*c, root_inv));
        n1.iter_mut().for_each(|c| *c = f.mul(*c, root));
    } else {
        let shift = f.mul(f.sub(1, s), f.inv(2).unwrap());
        for k in 0..d {
            e[k] = f.add(e[k], f.mul(shift, n1[k]));
        }
    }
    Ok((n1, e))
}

/// Decomposition `Q|_V = Q_0 + Q_1` of a restricted form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalSplit {
    /// Dimension of the radical `V ∩ V^⊥`.
    pub null_rank: usize,
    /// Basis of a complement of the radical inside `V`.
    pub complement: Vec<Vector>,
    /// The non-degenerate part, in the `complement` basis.
    pub form: QuadraticForm,
}

pub fn radical_split(form: &QuadraticForm, basis: &[Vector]) -> Result<RadicalSplit> {
    let f = form.field();
    let rows: Vec<Vec<u32>> = basis.iter().map(|v| v.0.clone()).collect();
    if rows.iter().any(|r| r.len() != form.dim()) {
        return Err(Error::DimensionMismatch {
            expected: form.dim(),
            got: rows.iter().map(|r| r.len()).find(|&l| l != form.dim()).unwrap(),
        });
    }
    if linalg::rank_of(&f, &rows) != rows.len() {
        return Err(Error::DependentBasis);
    }
    let restricted = form.restrict(&rows);
    // Radical coordinates: kernel of the restricted Gram matrix.
    let kernel = restricted.gram().kernel(&f);
    let null_rank = kernel.len();
    let extra = linalg::complete_basis(&f, &kernel, rows.len());
    let complement: Vec<Vec<u32>> = extra
        .iter()
        .map(|coef| {
            let mut v = vec![0u32; form.dim()];
            for (c, b) in coef.iter().zip(&rows) {
                for k in 0..v.len() {
                    v[k] = f.add(v[k], f.mul(*c, b[k]));
                }
            }
            v
        })
        .collect();
    let q1 = form.restrict(&complement);
    debug_assert!(q1.is_nondegenerate());
    Ok(RadicalSplit {
        null_rank,
        complement: complement.into_iter().map(Vector).collect(),
        form: q1,
    })
}

const WORD: usize = 64;

/// A subset `E ⊆ F_q^d` as a dense bit vector over point indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet {
    field: PrimeField,
    dim: usize,
    size: usize,
    bits: Vec<u64>,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct PointSetJson {
    q: u64,
    d: usize,
    points: Vec<Vec<i64>>,
}

impl PointSet {
    pub fn empty(field: PrimeField, dim: usize) -> Result<Self> {
        let size = checked_size(field.q(), dim)?;
        Ok(PointSet {
            field,
            dim,
            size,
            bits: vec![0; size.div_ceil(WORD)],
            count: 0,
        })
    }

    pub fn full(field: PrimeField, dim: usize) -> Result<Self> {
        let mut s = PointSet::empty(field, dim)?;
        for i in 0..s.size {
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_indices(field: PrimeField, dim: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = PointSet::empty(field, dim)?;
        for i in indices {
            if i >= s.size {
                return Err(Error::Config(format!("point index {i} out of range")));
            }
            s.insert(i);
        }
        Ok(s)
    }

    pub fn from_vectors(field: PrimeField, dim: usize, points: &[Vector]) -> Result<Self> {
        let mut s = PointSet::empty(field, dim)?;
        for p in points {
            if p.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: p.dim() });
            }
            let idx = s.index_of(p.coords());
            s.insert(idx);
        }
        Ok(s)
    }

    /// Convenience for literals: coordinates are reduced mod `q`.
    pub fn from_points(field: PrimeField, dim: usize, points: &[&[i64]]) -> Result<Self> {
        let vs: Vec<Vector> = points.iter().map(|p| Vector::from_signed(&field, p)).collect();
        PointSet::from_vectors(field, dim, &vs)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `q^d`, the number of addressable points.
    pub fn space_size(&self) -> usize {
        self.size
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn index_of(&self, coords: &[u32]) -> usize {
        let q = self.field.q() as usize;
        coords.iter().rev().fold(0usize, |acc, &c| acc * q + c as usize)
    }

    pub fn coords_of(&self, idx: usize) -> Vector {
        let q = self.field.q() as usize;
        let mut rest = idx;
        Vector(
            (0..self.dim)
                .map(|_| {
                    let c = (rest % q) as u32;
                    rest /= q;
                    c
                })
                .collect(),
        )
    }

    #[inline]
    pub fn contains(&self, idx: usize) -> bool {
        idx < self.size && self.bits[idx / WORD] >> (idx % WORD) & 1 == 1
    }

    pub fn contains_vector(&self, v: &Vector) -> bool {
        self.contains(self.index_of(v.coords()))
    }

    pub fn insert(&mut self, idx: usize) -> bool {
        assert!(idx < self.size, "point index out of range");
        let (w, b) = (idx / WORD, idx % WORD);
        let fresh = self.bits[w] >> b & 1 == 0;
        if fresh {
            self.bits[w] |= 1 << b;
            self.count += 1;
        }
        fresh
    }

    pub fn remove(&mut self, idx: usize) -> bool {
        if !self.contains(idx) {
            return false;
        }
        self.bits[idx / WORD] &= !(1 << (idx % WORD));
        self.count -= 1;
        true
    }

    /// Member indices in ascending order.
    pub fn indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.count);
        for (w, &word) in self.bits.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let b = bits.trailing_zeros() as usize;
                out.push(w * WORD + b);
                bits &= bits - 1;
            }
        }
        out
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.indices().into_iter().map(|i| self.coords_of(i)).collect()
    }

    /// `E ∩ (-E)`.
    pub fn symmetric_part(&self) -> PointSet {
        let space = Space::new(self.field, self.dim).expect("size already validated");
        let mut out = PointSet::empty(self.field, self.dim).unwrap();
        for i in self.indices() {
            if self.contains(space.neg(i)) {
                out.insert(i);
            }
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut set: Option<PointSet> = None;
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let nums: Vec<i64> = content
                .split_whitespace()
                .map(|t| {
                    t.parse::<i64>().map_err(|_| Error::Parse {
                        line,
                        message: format!("not an integer: {t:?}"),
                    })
                })
                .collect::<Result<_>>()?;
            match set.as_mut() {
                None => {
                    if nums.len() != 2 || nums[0] < 0 || nums[1] < 0 {
                        return Err(Error::Parse {
                            line,
                            message: "header must be `q d`".into(),
                        });
                    }
                    let field = PrimeField::new(nums[0] as u64).map_err(|e| Error::Parse {
                        line,
                        message: e.to_string(),
                    })?;
                    set = Some(PointSet::empty(field, nums[1] as usize).map_err(|e| Error::Parse {
                        line,
                        message: e.to_string(),
                    })?);
                }
                Some(s) => {
                    let coords = s.checked_coords(&nums).map_err(|message| Error::Parse { line, message })?;
                    let idx = s.index_of(&coords);
                    s.insert(idx);
                }
            }
        }
        set.ok_or(Error::Parse {
            line: 0,
            message: "missing `q d` header".into(),
        })
    }

    fn checked_coords(&self, nums: &[i64]) -> std::result::Result<Vec<u32>, String> {
        if nums.len() != self.dim {
            return Err(format!("expected {} coordinates, found {}", self.dim, nums.len()));
        }
        let q = self.field.q() as i64;
        nums.iter()
            .map(|&c| {
                if (0..q).contains(&c) {
                    Ok(c as u32)
                } else {
                    Err(format!("coordinate {c} outside [0, {q})"))
                }
            })
            .collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.field.q(), self.dim);
        for v in self.vectors() {
            let line: Vec<String> = v.0.iter().map(|c| c.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let raw: PointSetJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            message: e.to_string(),
        })?;
        let field = PrimeField::new(raw.q).map_err(|e| Error::Parse { line: 0, message: e.to_string() })?;
        let mut set = PointSet::empty(field, raw.d)?;
        for (i, p) in raw.points.iter().enumerate() {
            let coords = set.checked_coords(p).map_err(|message| Error::Parse {
                line: 0,
                message: format!("point {i}: {message}"),
            })?;
            let idx = set.index_of(&coords);
            set.insert(idx);
        }
        Ok(set)
    }

    pub fn to_json(&self) -> String {
        let raw = PointSetJson {
            q: self.field.q() as u64,
            d: self.dim,
            points: self
                .vectors()
                .into_iter()
                .map(|v| v.0.into_iter().map(|c| c as i64).collect())
                .collect(),
        };
        serde_json::to_string(&raw).expect("point sets always serialize")
    }

    /// Parses either format; JSON is recognised by a leading `{`.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            PointSet::parse_json(text)
        } else {
            PointSet::parse_text(text)
        }
    }

    pub fn read_file(path: &Path) -> Result<Self> {
        PointSet::parse(&std::fs::read_to_string(path)?)
    }
}
