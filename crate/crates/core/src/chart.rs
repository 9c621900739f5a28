//! The big affine chart of Gr(k, n) and its geometry: points, the
//! infinitesimal gl_n action as polynomial vector fields, chart transition
//! maps with exact differentials, and Pluecker/rank fingerprints.
//!
//! A chart point X (an (n-k) x k rational matrix) stands for the subspace
//! spanned by the columns of the n x k block matrix (I_k ; X). The left
//! GL_n action g.span(M) = span(gM) then reads, in chart coordinates,
//!
//!   phi_g(X) = (C + DX)(A + BX)^-1,
//!
//! where A (k x k), B (k x (n-k)), C ((n-k) x k), D ((n-k) x (n-k)) are the
//! blocks of g. The map is defined exactly when A + BX is invertible;
//! otherwise the image lies outside the big cell and operations report
//! `Error::ChartEscape` instead of switching charts.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::Add;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::mpoly::{ChartShape, MPoly};
use crate::perm::Perm;
use crate::rat::Rat;

/// A point of the big chart: the matrix X in the column span of (I_k ; X).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPoint {
    shape: ChartShape,
    x: QMatrix,
}

impl ChartPoint {
    pub fn new(shape: ChartShape, x: QMatrix) -> Result<Self> {
        if x.rows() != shape.rows() || x.cols() != shape.cols() {
            return Err(Error::ShapeMismatch(format!(
                "chart point must be {}x{}, got {}x{}",
                shape.rows(),
                shape.cols(),
                x.rows(),
                x.cols()
            )));
        }
        Ok(ChartPoint { shape, x })
    }

    pub fn origin(shape: ChartShape) -> Self {
        ChartPoint {
            shape,
            x: QMatrix::zeros(shape.rows(), shape.cols()),
        }
    }

    pub fn shape(&self) -> ChartShape {
        self.shape
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.x
    }

    /// x_{p,q} with 1-based indices.
    pub fn entry(&self, p: usize, q: usize) -> &Rat {
        self.x.get(p - 1, q - 1)
    }

    /// Coordinates in flat order, ready for `MPoly::eval`.
    pub fn flat_values(&self) -> Vec<Rat> {
        let mut out = Vec::with_capacity(self.shape.dim());
        for p in 0..self.shape.rows() {
            for q in 0..self.shape.cols() {
                out.push(self.x.get(p, q).clone());
            }
        }
        out
    }

    /// The n x k matrix (I_k ; X) whose column span this point represents.
    pub fn embed(&self) -> GrassPoint {
        let m = QMatrix::vstack(&QMatrix::identity(self.shape.cols()), &self.x);
        GrassPoint {
            k: self.shape.k,
            n: self.shape.n,
            m,
        }
    }
}

/// A point of Gr(k, n): an n x k rational matrix of full column rank,
/// understood up to right GL_k action on the columns.
#[derive(Debug, Clone)]
pub struct GrassPoint {
    k: usize,
    n: usize,
    m: QMatrix,
}

impl GrassPoint {
    pub fn new(k: usize, n: usize, m: QMatrix) -> Result<Self> {
        if m.rows() != n || m.cols() != k {
            return Err(Error::ShapeMismatch(format!(
                "expected {n}x{k} matrix, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        if m.rank() != k {
            return Err(Error::InvalidInput(format!(
                "matrix does not have full column rank {k}"
            )));
        }
        Ok(GrassPoint { k, n, m })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.m
    }

    /// Chart coordinates of this point, when the top k x k block is
    /// invertible: X = bottom * top^-1.
    pub fn to_chart(&self) -> Result<ChartPoint> {
        let top = self.m.block(0, 0, self.k, self.k);
        let bottom = self.m.block(self.k, 0, self.n - self.k, self.k);
        let inv = top.inverse().ok_or(Error::ChartEscape)?;
        ChartPoint::new(ChartShape::new(self.k, self.n)?, bottom.mul(&inv))
    }

    /// Left action of g in GL_n.
    pub fn act(&self, g: &GLElement) -> GrassPoint {
        GrassPoint {
            k: self.k,
            n: self.n,
            m: g.matrix().mul(&self.m),
        }
    }

    /// All Pluecker coordinates: k-subset of rows (1-based, sorted) -> minor.
    pub fn plucker(&self) -> BTreeMap<Vec<usize>, Rat> {
        (1..=self.n)
            .combinations(self.k)
            .map(|rows| {
                let idx: Vec<usize> = rows.iter().map(|r| r - 1).collect();
                let cols: Vec<usize> = (0..self.k).collect();
                let minor = self.m.submatrix(&idx, &cols).det();
                (rows, minor)
            })
            .collect()
    }

    /// The k-subsets with nonvanishing Pluecker coordinate.
    pub fn matroid(&self) -> BTreeSet<Vec<usize>> {
        self.plucker()
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|(s, _)| s)
            .collect()
    }

    /// Rank of the rows in the cyclic interval i, i+1, ..., j (1-based,
    /// wrapping mod n), for all i, j.
    pub fn cyclic_rank(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut out = vec![vec![0; n]; n];
        for i in 1..=n {
            for j in 1..=n {
                let rows = cyclic_interval(n, i, j);
                let idx: Vec<usize> = rows.iter().map(|r| r - 1).collect();
                let cols: Vec<usize> = (0..self.k).collect();
                out[i - 1][j - 1] = self.m.submatrix(&idx, &cols).rank();
            }
        }
        out
    }

    pub fn fingerprint(&self) -> Fingerprint {
        Fingerprint {
            k: self.k,
            n: self.n,
            matroid: self.matroid(),
            cyclic_rank: self.cyclic_rank(),
        }
    }
}

/// Rows i, i+1, ..., j of {1..n}, cyclically; i == j is the singleton.
pub fn cyclic_interval(n: usize, i: usize, j: usize) -> Vec<usize> {
    let len = (j + n - i) % n + 1;
    (0..len).map(|t| (i - 1 + t) % n + 1).collect()
}

/// The matroid-plus-cyclic-rank signature of a point.
///
/// Equality and hashing use the cyclic rank table only: that table is
/// exactly the data cut out by the stratification's rank conditions, so two
/// points compare equal iff they sit in the same stratum. The matroid is
/// finer (it distinguishes points inside one stratum) and is carried along
/// as recorded data with a consistency cross-check.
#[derive(Debug, Clone)]
pub struct Fingerprint {
    pub k: usize,
    pub n: usize,
    pub matroid: BTreeSet<Vec<usize>>,
    pub cyclic_rank: Vec<Vec<usize>>,
}

impl PartialEq for Fingerprint {
    fn eq(&self, other: &Self) -> bool {
        (self.k, self.n, &self.cyclic_rank) == (other.k, other.n, &other.cyclic_rank)
    }
}

impl Eq for Fingerprint {}

impl PartialOrd for Fingerprint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fingerprint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.k, self.n, &self.cyclic_rank).cmp(&(other.k, other.n, &other.cyclic_rank))
    }
}

impl std::hash::Hash for Fingerprint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        (self.k, self.n, &self.cyclic_rank).hash(state);
    }
}

impl Fingerprint {
    /// The largest matroid with this cyclic rank table: all k-subsets S
    /// with |S ∩ I| <= rank(I) for every cyclic interval I. This is the
    /// canonical representative matroid of the class.
    pub fn envelope_matroid(&self) -> BTreeSet<Vec<usize>> {
        (1..=self.n)
            .combinations(self.k)
            .filter(|s| {
                (1..=self.n).all(|i| {
                    (1..=self.n).all(|j| {
                        let interval = cyclic_interval(self.n, i, j);
                        let hits = s.iter().filter(|e| interval.contains(e)).count();
                        hits <= self.cyclic_rank[i - 1][j - 1]
                    })
                })
            })
            .collect()
    }

    /// Invariant check: matroid nonempty, rank bounds, and the cyclic rank
    /// table agreeing with the matroid (interval rank = largest independent
    /// subset inside the interval = max |S ∩ I| over matroid members S).
    pub fn is_consistent(&self) -> bool {
        if self.matroid.is_empty() {
            return false;
        }
        for i in 1..=self.n {
            for j in 1..=self.n {
                let interval = cyclic_interval(self.n, i, j);
                let r = self.cyclic_rank[i - 1][j - 1];
                if r > self.k.min(interval.len()) {
                    return false;
                }
                let from_matroid = self
                    .matroid
                    .iter()
                    .map(|s| s.iter().filter(|e| interval.contains(e)).count())
                    .max()
                    .unwrap_or(0);
                if r != from_matroid {
                    return false;
                }
            }
        }
        true
    }

    /// The fingerprint a point must acquire after the row rotation by the
    /// cycle w: the matroid maps elementwise and the rank table shifts.
    pub fn expected_rotation_image(&self, c: &Perm) -> Fingerprint {
        let matroid = self
            .matroid
            .iter()
            .map(|s| {
                let mut t: Vec<usize> = s.iter().map(|&e| c.apply(e)).collect();
                t.sort_unstable();
                t
            })
            .collect();
        let cinv = c.inverse();
        let mut cyclic_rank = vec![vec![0; self.n]; self.n];
        for i in 1..=self.n {
            for j in 1..=self.n {
                cyclic_rank[i - 1][j - 1] =
                    self.cyclic_rank[cinv.apply(i) - 1][cinv.apply(j) - 1];
            }
        }
        Fingerprint {
            k: self.k,
            n: self.n,
            matroid,
            cyclic_rank,
        }
    }

    /// Full structural equality, matroid included (stronger than `==`).
    pub fn same_data(&self, other: &Fingerprint) -> bool {
        self == other && self.matroid == other.matroid
    }
}

/// An invertible rational n x n matrix acting on Gr(k, n) from the left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GLElement {
    n: usize,
    g: QMatrix,
}

impl GLElement {
    pub fn new(g: QMatrix) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::ShapeMismatch("GL element must be square".into()));
        }
        if g.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(GLElement { n: g.rows(), g })
    }

    pub fn from_perm(w: &Perm) -> Self {
        GLElement {
            n: w.n(),
            g: w.matrix(),
        }
    }

    pub fn diagonal(entries: Vec<Rat>) -> Result<Self> {
        if entries.iter().any(Rat::is_zero) {
            return Err(Error::Singular);
        }
        let n = entries.len();
        let mut g = QMatrix::zeros(n, n);
        for (i, t) in entries.into_iter().enumerate() {
            g.set(i, i, t);
        }
        Ok(GLElement { n, g })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &QMatrix {
        &self.g
    }

    /// The blocks (A, B, C, D) of g for the (k, n-k) partition.
    pub fn blocks(&self, k: usize) -> (QMatrix, QMatrix, QMatrix, QMatrix) {
        let nk = self.n - k;
        (
            self.g.block(0, 0, k, k),
            self.g.block(0, k, k, nk),
            self.g.block(k, 0, nk, k),
            self.g.block(k, k, nk, nk),
        )
    }
}

/// A polynomial vector field on the chart: `comps[flat(p,q)]` multiplies
/// d/dx_{p,q}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VectorField {
    shape: ChartShape,
    comps: Vec<MPoly>,
}

impl VectorField {
    pub fn new(shape: ChartShape, comps: Vec<MPoly>) -> Self {
        assert_eq!(comps.len(), shape.dim());
        VectorField { shape, comps }
    }

    pub fn shape(&self) -> ChartShape {
        self.shape
    }

    pub fn comp(&self, flat: usize) -> &MPoly {
        &self.comps[flat]
    }

    pub fn comps(&self) -> &[MPoly] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(MPoly::is_zero)
    }

    pub fn scale(&self, s: &Rat) -> VectorField {
        VectorField {
            shape: self.shape,
            comps: self.comps.iter().map(|p| p.scale(s)).collect(),
        }
    }

    /// Exact value at a point, as a flat coordinate vector.
    pub fn eval(&self, x: &ChartPoint) -> Vec<Rat> {
        let values = x.flat_values();
        self.comps.iter().map(|p| p.eval(&values)).collect()
    }
}

impl Add for &VectorField {
    type Output = VectorField;
    fn add(self, other: Self) -> VectorField {
        assert_eq!(self.shape, other.shape);
        VectorField {
            shape: self.shape,
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

// small helpers for matrices of polynomials
type PolyMat = Vec<Vec<MPoly>>;

fn pm_const(m: &QMatrix, nvars: usize) -> PolyMat {
    (0..m.rows())
        .map(|r| {
            (0..m.cols())
                .map(|c| MPoly::constant(nvars, m.get(r, c).clone()))
                .collect()
        })
        .collect()
}

/// The (n-k) x k matrix of chart variables.
fn pm_vars(shape: ChartShape) -> PolyMat {
    (1..=shape.rows())
        .map(|p| {
            (1..=shape.cols())
                .map(|q| MPoly::var(shape.dim(), shape.flat(p, q)))
                .collect()
        })
        .collect()
}

fn pm_mul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let inner = b.len();
    assert!(a.iter().all(|row| row.len() == inner));
    let cols = b[0].len();
    a.iter()
        .map(|arow| {
            (0..cols)
                .map(|c| {
                    let mut acc = MPoly::zero(arow[0].nvars());
                    for (i, av) in arow.iter().enumerate() {
                        acc = &acc + &(av * &b[i][c]);
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

fn pm_sub(a: &PolyMat, b: &PolyMat) -> PolyMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x - y).collect())
        .collect()
}

fn pm_add(a: &PolyMat, b: &PolyMat) -> PolyMat {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

/// The vector field of the infinitesimal left action of a Lie algebra
/// element E (any rational n x n matrix): in chart coordinates the value at
/// X is the matrix C + DX - XA - XBX built from the blocks of E. Every
/// component is a polynomial of degree at most 2.
pub fn chi_field(e: &QMatrix, shape: ChartShape) -> VectorField {
    assert_eq!(e.rows(), shape.n);
    assert_eq!(e.cols(), shape.n);
    let k = shape.k;
    let nk = shape.rows();
    let nv = shape.dim();
    let a = pm_const(&e.block(0, 0, k, k), nv);
    let b = pm_const(&e.block(0, k, k, nk), nv);
    let c = pm_const(&e.block(k, 0, nk, k), nv);
    let d = pm_const(&e.block(k, k, nk, nk), nv);
    let x = pm_vars(shape);
    // C + DX - XA - XBX
    let value = pm_sub(
        &pm_add(&c, &pm_mul(&d, &x)),
        &pm_add(&pm_mul(&x, &a), &pm_mul(&pm_mul(&x, &b), &x)),
    );
    let mut comps = Vec::with_capacity(nv);
    for row in &value {
        for p in row {
            debug_assert!(p.degree() <= 2);
            comps.push(p.clone());
        }
    }
    VectorField::new(shape, comps)
}

/// Chart coordinate of g . (I_k ; X): phi_g(X) = (C + DX)(A + BX)^-1.
pub fn chart_map(g: &GLElement, x: &ChartPoint) -> Result<ChartPoint> {
    let shape = x.shape();
    assert_eq!(g.n(), shape.n);
    let (a, b, c, d) = g.blocks(shape.k);
    let denom = a.add(&b.mul(x.matrix()));
    let inv = denom.inverse().ok_or(Error::ChartEscape)?;
    let num = c.add(&d.mul(x.matrix()));
    ChartPoint::new(shape, num.mul(&inv))
}

/// The exact differential of `chart_map` at X, as the linear map
/// xi -> (D - phi_g(X) B) xi (A + BX)^-1 on (n-k) x k matrices.
#[derive(Debug, Clone)]
pub struct ChartDifferential {
    shape: ChartShape,
    left: QMatrix,
    right: QMatrix,
}

impl ChartDifferential {
    pub fn apply(&self, xi: &QMatrix) -> QMatrix {
        self.left.mul(xi).mul(&self.right)
    }

    /// The dim x dim matrix of the map in flat coordinates:
    /// L[flat(p,q)][flat(r,s)] = left[p][r] * right[s][q].
    pub fn flat_matrix(&self) -> QMatrix {
        let d = self.shape.dim();
        QMatrix::from_fn(d, d, |ab, cd| {
            let (p, q) = self.shape.unflat(ab);
            let (r, s) = self.shape.unflat(cd);
            self.left.get(p - 1, r - 1) * self.right.get(s - 1, q - 1)
        })
    }
}

pub fn chart_differential(g: &GLElement, x: &ChartPoint) -> Result<ChartDifferential> {
    let shape = x.shape();
    assert_eq!(g.n(), shape.n);
    let (a, b, c, d) = g.blocks(shape.k);
    let denom = a.add(&b.mul(x.matrix()));
    let right = denom.inverse().ok_or(Error::ChartEscape)?;
    let image = c.add(&d.mul(x.matrix())).mul(&right);
    let left = d.add(&image.mul(&b).neg());
    Ok(ChartDifferential { shape, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn shape(k: usize, n: usize) -> ChartShape {
        ChartShape::new(k, n).unwrap()
    }

    fn elementary(n: usize, i: usize, j: usize) -> QMatrix {
        let mut e = QMatrix::zeros(n, n);
        e.set(i - 1, j - 1, rat_int(1));
        e
    }

    fn chart(shape: ChartShape, entries: &[&[i64]]) -> ChartPoint {
        let x = QMatrix::from_fn(shape.rows(), shape.cols(), |r, c| rat_int(entries[r][c]));
        ChartPoint::new(shape, x).unwrap()
    }

    // The three displayed coordinate formulas for the infinitesimal action,
    // kept as independent regression constructions.

    /// chi(E_{1,k+i}) = -sum_{p,q} x_{p,1} x_{i,q} d/dx_{p,q}
    fn chi_first_row(shape: ChartShape, i: usize) -> VectorField {
        let nv = shape.dim();
        let mut comps = vec![MPoly::zero(nv); nv];
        for p in 1..=shape.rows() {
            for q in 1..=shape.cols() {
                let xp1 = MPoly::var(nv, shape.flat(p, 1));
                let xiq = MPoly::var(nv, shape.flat(i, q));
                comps[shape.flat(p, q)] = (&xp1 * &xiq).scale(&rat_int(-1));
            }
        }
        VectorField::new(shape, comps)
    }

    /// chi(E_{k+i,1}) = d/dx_{i,1}
    fn chi_first_col(shape: ChartShape, i: usize) -> VectorField {
        let nv = shape.dim();
        let mut comps = vec![MPoly::zero(nv); nv];
        comps[shape.flat(i, 1)] = MPoly::one(nv);
        VectorField::new(shape, comps)
    }

    /// chi(E_{i,j}) = -sum_p x_{p,i} d/dx_{p,j} for i, j <= k
    fn chi_upper_block(shape: ChartShape, i: usize, j: usize) -> VectorField {
        let nv = shape.dim();
        let mut comps = vec![MPoly::zero(nv); nv];
        for p in 1..=shape.rows() {
            comps[shape.flat(p, j)] = MPoly::var(nv, shape.flat(p, i)).scale(&rat_int(-1));
        }
        VectorField::new(shape, comps)
    }

    #[test]
    fn chi_matches_displayed_formulas() {
        for (k, n) in [(1, 3), (2, 4), (2, 5), (3, 5)] {
            let sh = shape(k, n);
            for i in 1..=n - k {
                assert_eq!(chi_field(&elementary(n, 1, k + i), sh), chi_first_row(sh, i));
                assert_eq!(chi_field(&elementary(n, k + i, 1), sh), chi_first_col(sh, i));
            }
            for i in 1..=k {
                for j in 1..=k {
                    assert_eq!(
                        chi_field(&elementary(n, i, j), sh),
                        chi_upper_block(sh, i, j)
                    );
                }
            }
        }
    }

    #[test]
    fn chi_lower_block_example() {
        // k=1, n=3: E_23 acts as x_{2,1} d/dx_{1,1}
        let sh = shape(1, 3);
        let f = chi_field(&elementary(3, 2, 3), sh);
        let expected = MPoly::var(2, sh.flat(2, 1));
        assert_eq!(*f.comp(sh.flat(1, 1)), expected);
        assert!(f.comp(sh.flat(2, 1)).is_zero());
    }

    #[test]
    fn chi_is_linear() {
        let sh = shape(2, 4);
        let e = QMatrix::from_fn(4, 4, |r, c| rat_int((r * 3 + c) as i64 % 5 - 2));
        let f = QMatrix::from_fn(4, 4, |r, c| rat_int((r + 2 * c) as i64 % 7 - 3));
        let alpha = rat(3, 2);
        let beta = rat(-5, 7);
        let combo = e.scale(&alpha).add(&f.scale(&beta));
        let lhs = chi_field(&combo, sh);
        let rhs = &chi_field(&e, sh).scale(&alpha) + &chi_field(&f, sh).scale(&beta);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn chart_map_identity_and_escape() {
        let sh = shape(1, 2);
        let x = chart(sh, &[&[0]]);
        let id = GLElement::new(QMatrix::identity(2)).unwrap();
        assert_eq!(chart_map(&id, &x).unwrap(), x);
        // c . span(e1) = span(e2) lies outside the chart
        let mc = GLElement::from_perm(&Perm::coxeter(2));
        assert!(matches!(chart_map(&mc, &x), Err(Error::ChartEscape)));
    }

    #[test]
    fn chart_map_diagonal_scaling() {
        let sh = shape(2, 5);
        let x = chart(sh, &[&[1, 2], &[3, -1], &[0, 4]]);
        let ts: Vec<Rat> = [2, 3, 5, 7, 11].iter().map(|&t| rat_int(t)).collect();
        let g = GLElement::diagonal(ts.clone()).unwrap();
        let y = chart_map(&g, &x).unwrap();
        for p in 1..=3 {
            for q in 1..=2 {
                let expected = x.entry(p, q) * &(&ts[sh.k + p - 1] / &ts[q - 1]);
                assert_eq!(*y.entry(p, q), expected);
            }
        }
        // differential scales the same way
        let diff = chart_differential(&g, &x).unwrap();
        let xi = QMatrix::from_fn(3, 2, |r, c| rat_int((r + c) as i64 + 1));
        let dxi = diff.apply(&xi);
        for p in 1..=3 {
            for q in 1..=2 {
                let expected = xi.get(p - 1, q - 1) * &(&ts[sh.k + p - 1] / &ts[q - 1]);
                assert_eq!(*dxi.get(p - 1, q - 1), expected);
            }
        }
    }

    #[test]
    fn chart_map_is_an_action() {
        let sh = shape(2, 4);
        let x = chart(sh, &[&[1, -2], &[3, 1]]);
        let g = GLElement::new(QMatrix::from_fn(4, 4, |r, c| {
            rat_int(if r == c { 1 } else { (r as i64 - c as i64) % 3 })
        }))
        .unwrap();
        let h = GLElement::from_perm(&Perm::coxeter(4));
        let gh = GLElement::new(g.matrix().mul(h.matrix())).unwrap();
        let via_steps = chart_map(&g, &chart_map(&h, &x).unwrap()).unwrap();
        let direct = chart_map(&gh, &x).unwrap();
        assert_eq!(via_steps, direct);
        // chain rule in flat coordinates
        let l_h = chart_differential(&h, &x).unwrap().flat_matrix();
        let l_g = chart_differential(&g, &chart_map(&h, &x).unwrap())
            .unwrap()
            .flat_matrix();
        let l_gh = chart_differential(&gh, &x).unwrap().flat_matrix();
        assert_eq!(l_g.mul(&l_h), l_gh);
    }

    #[test]
    fn identity_differential_is_identity() {
        let sh = shape(2, 4);
        let x = chart(sh, &[&[1, 2], &[-1, 0]]);
        let id = GLElement::new(QMatrix::identity(4)).unwrap();
        let l = chart_differential(&id, &x).unwrap().flat_matrix();
        assert_eq!(l, QMatrix::identity(sh.dim()));
    }

    #[test]
    fn plucker_small_cases() {
        // k=1, n=2, M = (1; a)
        let m = GrassPoint::new(
            1,
            2,
            QMatrix::from_rows(vec![vec![rat_int(1)], vec![rat(3, 4)]]).unwrap(),
        )
        .unwrap();
        let p = m.plucker();
        assert_eq!(p[&vec![1]], rat_int(1));
        assert_eq!(p[&vec![2]], rat(3, 4));

        // swapping two rows negates affected minors
        let m = GrassPoint::new(
            2,
            4,
            QMatrix::from_rows(vec![
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(0), rat_int(1)],
                vec![rat_int(2), rat_int(3)],
                vec![rat_int(-1), rat_int(5)],
            ])
            .unwrap(),
        )
        .unwrap();
        let swapped = GrassPoint::new(
            2,
            4,
            QMatrix::from_rows(vec![
                vec![rat_int(0), rat_int(1)],
                vec![rat_int(1), rat_int(0)],
                vec![rat_int(2), rat_int(3)],
                vec![rat_int(-1), rat_int(5)],
            ])
            .unwrap(),
        )
        .unwrap();
        let p0 = m.plucker();
        let p1 = swapped.plucker();
        assert_eq!(p1[&vec![1, 2]], -p0[&vec![1, 2]].clone());
        assert_eq!(p1[&vec![1, 3]], p0[&vec![2, 3]].clone());
        assert_eq!(p1[&vec![3, 4]], p0[&vec![3, 4]].clone());
    }

    #[test]
    fn embedding_is_a_chart_section() {
        let sh = shape(2, 4);
        let x = chart(sh, &[&[1, 2], &[3, 4]]);
        let m = x.embed();
        assert_eq!(m.plucker()[&vec![1, 2]], rat_int(1));
        assert_eq!(m.to_chart().unwrap(), x);
    }

    #[test]
    fn fingerprint_examples() {
        let one_col =
            |vals: &[i64]| QMatrix::from_rows(vals.iter().map(|&v| vec![rat_int(v)]).collect());
        let m = GrassPoint::new(1, 3, one_col(&[1, 1, 1]).unwrap()).unwrap();
        let fp = m.fingerprint();
        assert_eq!(
            fp.matroid,
            BTreeSet::from([vec![1], vec![2], vec![3]])
        );
        assert!(fp.is_consistent());

        let m = GrassPoint::new(1, 3, one_col(&[1, 0, 0]).unwrap()).unwrap();
        let fp = m.fingerprint();
        assert_eq!(fp.matroid, BTreeSet::from([vec![1]]));
        // interval {2,3} = rows 2..3 has rank 0
        assert_eq!(fp.cyclic_rank[1][2], 0);
        assert!(fp.is_consistent());
        // the envelope of a rank table reproduces a matroid realizing it
        assert_eq!(fp.envelope_matroid(), fp.matroid);
    }

    #[test]
    fn cyclic_interval_wraps() {
        assert_eq!(cyclic_interval(4, 3, 1), vec![3, 4, 1]);
        assert_eq!(cyclic_interval(4, 2, 2), vec![2]);
        assert_eq!(cyclic_interval(4, 3, 2), vec![3, 4, 1, 2]);
    }
}
