//! Bivector fields on the chart: construction of the standard Poisson
//! structure from root-pair wedges, its Levi variant, the telescoping sum
//! whose vanishing drives the cyclic invariance, symbolic transforms under
//! permutation conjugation, the Schouten/Jacobi check, and exact pointwise
//! evaluation, rank, and pushforward tests.
//!
//! The symbolic transform works at the index level, Ad_w E_{ij} =
//! E_{w(i),w(j)}; geometric pushforwards are checked separately, point by
//! point, through the chart differential. Construction parallelizes over
//! root pairs; since rational arithmetic is exact and addition of canonical
//! term maps is associative and commutative, results do not depend on task
//! scheduling.

use std::ops::{Add, Neg, Sub};

use rayon::prelude::*;

use crate::chart::{
    chart_differential, chart_map, chi_field, ChartPoint, GLElement, VectorField,
};
use crate::error::Result;
use crate::matrix::QMatrix;
use crate::mpoly::{ChartShape, MPoly};
use crate::perm::Perm;
use crate::rat::{rat_int, Rat};

/// An antisymmetric matrix of polynomials over the chart coordinates;
/// only the strict upper triangle (a < b in flat order) is stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bivector {
    shape: ChartShape,
    upper: Vec<MPoly>,
}

fn pair_offset(dim: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < dim);
    a * (2 * dim - a - 1) / 2 + (b - a - 1)
}

impl Bivector {
    pub fn zero(shape: ChartShape) -> Self {
        let d = shape.dim();
        Bivector {
            shape,
            upper: vec![MPoly::zero(d); d * (d - 1) / 2],
        }
    }

    pub fn shape(&self) -> ChartShape {
        self.shape
    }

    /// Coefficient at (a, b) with the sign convention coeff[b][a] = -coeff[a][b].
    pub fn coeff(&self, a: usize, b: usize) -> MPoly {
        use std::cmp::Ordering::*;
        match a.cmp(&b) {
            Less => self.upper[pair_offset(self.shape.dim(), a, b)].clone(),
            Equal => MPoly::zero(self.shape.dim()),
            Greater => -&self.upper[pair_offset(self.shape.dim(), b, a)],
        }
    }

    /// Upper-triangle entries in flat pair order.
    pub fn iter_upper(&self) -> impl Iterator<Item = (usize, usize, &MPoly)> {
        let d = self.shape.dim();
        (0..d)
            .flat_map(move |a| (a + 1..d).map(move |b| (a, b)))
            .map(move |(a, b)| (a, b, &self.upper[pair_offset(d, a, b)]))
    }

    pub fn is_zero(&self) -> bool {
        self.upper.iter().all(MPoly::is_zero)
    }

    pub fn nonzero_coefficients(&self) -> usize {
        self.upper.iter().filter(|p| !p.is_zero()).count()
    }

    /// First nonzero coefficient in canonical pair order, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &MPoly)> {
        self.iter_upper().find(|(_, _, p)| !p.is_zero())
    }

    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.upper.iter().all(|p| p.is_homogeneous(d))
    }

    pub fn scale(&self, s: &Rat) -> Bivector {
        Bivector {
            shape: self.shape,
            upper: self.upper.iter().map(|p| p.scale(s)).collect(),
        }
    }
}

impl Add for &Bivector {
    type Output = Bivector;
    fn add(self, other: Self) -> Bivector {
        assert_eq!(self.shape, other.shape);
        Bivector {
            shape: self.shape,
            upper: self
                .upper
                .iter()
                .zip(&other.upper)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Bivector {
    type Output = Bivector;
    fn sub(self, other: Self) -> Bivector {
        self + &(-other)
    }
}

impl Neg for &Bivector {
    type Output = Bivector;
    fn neg(self) -> Bivector {
        self.scale(&rat_int(-1))
    }
}

/// wedge(u, v)[a][b] = u[a] v[b] - u[b] v[a].
pub fn wedge(u: &VectorField, v: &VectorField) -> Bivector {
    assert_eq!(u.shape(), v.shape());
    let shape = u.shape();
    let d = shape.dim();
    let mut upper = Vec::with_capacity(d * (d - 1) / 2);
    for a in 0..d {
        for b in a + 1..d {
            upper.push(&(u.comp(a) * v.comp(b)) - &(u.comp(b) * v.comp(a)));
        }
    }
    Bivector { shape, upper }
}

/// Index pairs (i, j), i < j, each standing for the positive root whose
/// raising and lowering elements are E_{ij} and E_{ji}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootPairSet {
    pairs: Vec<(usize, usize)>,
}

impl RootPairSet {
    /// All n(n-1)/2 pairs.
    pub fn full(n: usize) -> Self {
        RootPairSet {
            pairs: (1..=n)
                .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
                .collect(),
        }
    }

    /// The pairs inside the block-diagonal subalgebra: j <= k or i >= k+1.
    pub fn levi(k: usize, n: usize) -> Self {
        let full = Self::full(n);
        RootPairSet {
            pairs: full
                .pairs
                .into_iter()
                .filter(|&(i, j)| j <= k || i > k)
                .collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn elementary(n: usize, i: usize, j: usize) -> QMatrix {
    let mut e = QMatrix::zeros(n, n);
    e.set(i - 1, j - 1, rat_int(1));
    e
}

/// -sum over `pairs` of chi(E_{u,v}) wedge chi(E_{v,u}) where (u, v) runs
/// over the relabeled pairs (w(i), w(j)).
fn pair_sum(shape: ChartShape, pairs: &[(usize, usize)], relabel: impl Fn(usize) -> usize + Sync) -> Bivector {
    let n = shape.n;
    pairs
        .par_iter()
        .map(|&(i, j)| {
            let u = relabel(i);
            let v = relabel(j);
            wedge(
                &chi_field(&elementary(n, u, v), shape),
                &chi_field(&elementary(n, v, u), shape),
            )
        })
        .reduce(|| Bivector::zero(shape), |a, b| &a + &b)
        .scale(&rat_int(-1))
}

/// The standard Poisson bivector on the chart:
/// pi = -sum_{i<j} chi(E_{ij}) wedge chi(E_{ji}).
pub fn build_pi(shape: ChartShape) -> Bivector {
    pair_sum(shape, RootPairSet::full(shape.n).pairs(), |i| i)
}

/// The same sum restricted to the block-diagonal root pairs.
pub fn build_levi_pi(shape: ChartShape) -> Bivector {
    pair_sum(shape, RootPairSet::levi(shape.k, shape.n).pairs(), |i| i)
}

/// The telescoping sum V = sum_{i=2}^n chi(E_{1i}) wedge chi(E_{i1});
/// its identical vanishing is what makes the cyclic rotation a symmetry.
pub fn build_v(shape: ChartShape) -> Bivector {
    let n = shape.n;
    (2..=n)
        .into_par_iter()
        .map(|i| {
            wedge(
                &chi_field(&elementary(n, 1, i), shape),
                &chi_field(&elementary(n, i, 1), shape),
            )
        })
        .reduce(|| Bivector::zero(shape), |a, b| &a + &b)
}

/// The bivector with every root pair conjugated through w at the index
/// level: -sum_{i<j} chi(E_{w(i)w(j)}) wedge chi(E_{w(j)w(i)}).
pub fn ad_transform_pi(w: &Perm, shape: ChartShape) -> Bivector {
    assert_eq!(w.n(), shape.n);
    pair_sum(shape, RootPairSet::full(shape.n).pairs(), |i| w.apply(i))
}

/// A 3-index antisymmetric array of polynomials, stored on a < b < c.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trivector {
    shape: ChartShape,
    entries: Vec<((usize, usize, usize), MPoly)>,
}

impl Trivector {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|(_, p)| p.is_zero())
    }

    pub fn entries(&self) -> &[((usize, usize, usize), MPoly)] {
        &self.entries
    }

    pub fn first_nonzero(&self) -> Option<&((usize, usize, usize), MPoly)> {
        self.entries.iter().find(|(_, p)| !p.is_zero())
    }
}

/// The Jacobiator of a bivector in coordinates:
/// T[a][b][c] = sum_l pi[l][a] d_l pi[b][c] + cyclic. The bivector defines
/// a Poisson bracket exactly when this vanishes identically.
pub fn schouten_jacobi(pi: &Bivector) -> Trivector {
    let shape = pi.shape();
    let d = shape.dim();
    let triples: Vec<(usize, usize, usize)> = (0..d)
        .flat_map(|a| {
            (a + 1..d).flat_map(move |b| (b + 1..d).map(move |c| (a, b, c)))
        })
        .collect();
    let entries = triples
        .into_par_iter()
        .map(|(a, b, c)| {
            let mut t = MPoly::zero(d);
            for l in 0..d {
                let term = |x: usize, y: usize, z: usize| -> MPoly {
                    &pi.coeff(l, x) * &pi.coeff(y, z).partial(l)
                };
                t = &t + &term(a, b, c);
                t = &t + &term(b, c, a);
                t = &t + &term(c, a, b);
            }
            ((a, b, c), t)
        })
        .collect();
    Trivector { shape, entries }
}

/// Entrywise exact evaluation of the bivector at a chart point.
pub fn eval_bivector(pi: &Bivector, x: &ChartPoint) -> QMatrix {
    assert_eq!(pi.shape(), x.shape());
    let d = pi.shape().dim();
    let values = x.flat_values();
    let mut m = QMatrix::zeros(d, d);
    for (a, b, p) in pi.iter_upper() {
        let v = p.eval(&values);
        m.set(a, b, v.clone());
        m.set(b, a, -v);
    }
    m
}

/// Rank of the evaluated bivector over the rationals; always even because
/// the matrix is antisymmetric.
pub fn rank_at(pi: &Bivector, x: &ChartPoint) -> usize {
    eval_bivector(pi, x).rank()
}

/// True iff pi at phi_g(X) equals sign * L pi(X) L^T, where L is the flat
/// matrix of the chart differential of g at X. `sign` is explicit so that
/// anti-invariance checks are first-class.
pub fn pushforward_check(
    g: &GLElement,
    x: &ChartPoint,
    pi: &Bivector,
    sign: i8,
) -> Result<bool> {
    assert!(sign == 1 || sign == -1);
    let image = chart_map(g, x)?;
    let l = chart_differential(g, x)?.flat_matrix();
    let lhs = eval_bivector(pi, &image);
    let pushed = l.mul(&eval_bivector(pi, x)).mul(&l.transpose());
    let rhs = if sign == 1 { pushed } else { pushed.neg() };
    Ok(lhs == rhs)
}
