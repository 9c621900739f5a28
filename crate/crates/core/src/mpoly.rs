//! Sparse multivariate polynomials over the exact rationals.
//!
//! Variables are the coordinates x_{p,q} of the big cell of Gr(k, n), where
//! p indexes rows 1..n-k and q columns 1..k. Every module in the crate
//! addresses variables through the flat index (p-1)*k + (q-1); no other
//! ordering exists. Terms are kept in a `BTreeMap` keyed by exponent
//! vectors, so iteration order (lexicographic) is canonical and equality,
//! hashing, and serialization are all deterministic.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::{Rat, rat_int};

/// Dimensions of the big affine chart of Gr(k, n).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ChartShape {
    pub k: usize,
    pub n: usize,
}

impl ChartShape {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 1 || k >= n {
            return Err(Error::InvalidInput(format!(
                "need 1 <= k < n, got k={k}, n={n}"
            )));
        }
        Ok(ChartShape { k, n })
    }

    /// Number of chart rows, n-k.
    pub fn rows(&self) -> usize {
        self.n - self.k
    }

    /// Number of chart columns, k.
    pub fn cols(&self) -> usize {
        self.k
    }

    /// Number of chart coordinates, (n-k)*k.
    pub fn dim(&self) -> usize {
        self.rows() * self.cols()
    }

    /// Flat index of x_{p,q}; p, q are 1-based.
    pub fn flat(&self, p: usize, q: usize) -> usize {
        debug_assert!(1 <= p && p <= self.rows() && 1 <= q && q <= self.cols());
        (p - 1) * self.cols() + (q - 1)
    }

    /// Inverse of `flat`.
    pub fn unflat(&self, a: usize) -> (usize, usize) {
        debug_assert!(a < self.dim());
        (a / self.cols() + 1, a % self.cols() + 1)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarIndex> + '_ {
        (0..self.dim()).map(|a| {
            let (p, q) = self.unflat(a);
            VarIndex { p, q, flat: a }
        })
    }
}

/// A chart variable x_{p,q} together with its flat position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VarIndex {
    pub p: usize,
    pub q: usize,
    pub flat: usize,
}

impl VarIndex {
    pub fn new(shape: ChartShape, p: usize, q: usize) -> Self {
        VarIndex {
            p,
            q,
            flat: shape.flat(p, q),
        }
    }
}

/// Sparse polynomial; the zero polynomial has an empty term map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u16>, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    /// The variable with the given flat index.
    pub fn var(nvars: usize, flat: usize) -> Self {
        assert!(flat < nvars);
        let mut exps = vec![0u16; nvars];
        exps[flat] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(exps, Rat::one());
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, Rat)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    fn add_term(&mut self, exps: Vec<u16>, coeff: Rat) {
        assert_eq!(exps.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u16], &Rat)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    /// Coefficient of the given exponent vector (zero when absent).
    pub fn coeff(&self, exps: &[u16]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|e| e.iter().map(|&x| x as usize).sum())
            .max()
            .unwrap_or(0)
    }

    /// True when every term has total degree exactly `d` (vacuously for 0).
    pub fn is_homogeneous(&self, d: usize) -> bool {
        self.terms
            .keys()
            .all(|e| e.iter().map(|&x| x as usize).sum::<usize>() == d)
    }

    pub fn scale(&self, s: &Rat) -> MPoly {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    /// Formal partial derivative with respect to the variable at `flat`.
    pub fn partial(&self, flat: usize) -> MPoly {
        assert!(flat < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let exp = e[flat];
            if exp == 0 {
                continue;
            }
            let mut en = e.clone();
            en[flat] = exp - 1;
            out.add_term(en, c * rat_int(exp as i64));
        }
        out
    }

    /// Exact value at the point whose flat coordinate vector is `values`.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        assert_eq!(values.len(), self.nvars);
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (exp, v) in e.iter().zip(values) {
                for _ in 0..*exp {
                    term *= v;
                }
            }
            acc += term;
        }
        acc
    }

    /// Canonical human-readable form, e.g. `-x(1,1)*x(2,1) + 2`.
    pub fn render(&self, shape: &ChartShape) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (exps, coeff)) in self.terms().enumerate() {
            let mono: Vec<String> = exps
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(a, &e)| {
                    let (p, q) = shape.unflat(a);
                    if e == 1 {
                        format!("x({p},{q})")
                    } else {
                        format!("x({p},{q})^{e}")
                    }
                })
                .collect();
            let coeff_abs = coeff.abs();
            let negative = coeff.is_negative();
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            if mono.is_empty() {
                out.push_str(&coeff_abs.to_string());
            } else if coeff_abs.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&format!("{}*{}", coeff_abs, mono.join("*")));
            }
        }
        out
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, other: Self) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, other: Self) -> MPoly {
        self + &(-other)
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, other: Self) -> MPoly {
        assert_eq!(self.nvars, other.nvars);
        let mut out = MPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u16> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;
    use proptest::prelude::*;

    // Chart of Gr(1,3): two variables x(1,1), x(2,1).
    fn sh13() -> ChartShape {
        ChartShape::new(1, 3).unwrap()
    }

    #[test]
    fn flat_is_a_bijection() {
        let shape = ChartShape::new(2, 5).unwrap();
        let mut seen = vec![false; shape.dim()];
        for p in 1..=shape.rows() {
            for q in 1..=shape.cols() {
                let a = shape.flat(p, q);
                assert!(!seen[a]);
                seen[a] = true;
                assert_eq!(shape.unflat(a), (p, q));
            }
        }
        assert!(seen.iter().all(|&b| b));
    }

    #[test]
    fn difference_of_squares() {
        let x = MPoly::var(2, 0);
        let one = MPoly::one(2);
        let prod = &(&x + &one) * &(&x - &one);
        let expected = &(&x * &x) - &one;
        assert_eq!(prod, expected);
    }

    #[test]
    fn absorbing_zero_and_monomials() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &y) + &MPoly::constant(2, rat(5, 3));
        assert!((&p * &MPoly::zero(2)).is_zero());
        let xy = &x * &y;
        assert_eq!(&xy * &x, MPoly::from_terms(2, [(vec![2, 1], rat(1, 1))]));
    }

    #[test]
    fn partial_derivatives() {
        // x^2 y -> 2 x y in the first variable, x^2 in the second
        let p = MPoly::from_terms(2, [(vec![2, 1], rat(1, 1))]);
        assert_eq!(p.partial(0), MPoly::from_terms(2, [(vec![1, 1], rat(2, 1))]));
        assert_eq!(p.partial(1), MPoly::from_terms(2, [(vec![2, 0], rat(1, 1))]));
        assert!(MPoly::constant(2, rat(9, 7)).partial(0).is_zero());
        assert!(MPoly::var(2, 0).partial(1).is_zero());
    }

    #[test]
    fn eval_examples() {
        let x = MPoly::var(1, 0);
        let p = &(&x * &x) - &MPoly::one(1);
        assert_eq!(p.eval(&[rat(3, 2)]), rat(5, 4));
        assert_eq!(MPoly::zero(1).eval(&[rat(17, 4)]), rat(0, 1));
        let xy = &MPoly::var(2, 0) * &MPoly::var(2, 1);
        assert_eq!(xy.eval(&[rat(1, 1), rat(1, 1)]), rat(1, 1));
    }

    #[test]
    fn degree_and_homogeneity() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let q = &(&x * &y) - &(&y * &y);
        assert_eq!(q.degree(), 2);
        assert!(q.is_homogeneous(2));
        assert!(!(&q + &x).is_homogeneous(2));
        assert!(MPoly::zero(2).is_homogeneous(7));
    }

    #[test]
    fn render_is_canonical() {
        let shape = sh13();
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&x * &y).scale(&rat(-1, 1)) + &MPoly::constant(2, rat(2, 1));
        assert_eq!(p.render(&shape), "2 - x(1,1)*x(2,1)");
        assert_eq!(MPoly::zero(2).render(&shape), "0");
    }

    fn small_rat() -> impl Strategy<Value = Rat> {
        (-9i64..=9, 1i64..=9).prop_map(|(n, d)| rat(n, d))
    }

    fn small_poly() -> impl Strategy<Value = MPoly> {
        proptest::collection::vec((proptest::collection::vec(0u16..3, 3), small_rat()), 0..5)
            .prop_map(|terms| MPoly::from_terms(3, terms))
    }

    proptest! {
        #[test]
        fn distributive(a in small_poly(), b in small_poly(), c in small_poly()) {
            let lhs = &(&a + &b) * &c;
            let rhs = &(&a * &c) + &(&b * &c);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_commutes_and_degree_adds(a in small_poly(), b in small_poly()) {
            let ab = &a * &b;
            prop_assert_eq!(&ab, &(&b * &a));
            if !a.is_zero() && !b.is_zero() {
                // exact coefficients: no cancellation of leading terms over a domain
                prop_assert_eq!(ab.degree(), a.degree() + b.degree());
            }
        }

        #[test]
        fn mixed_partials_commute(a in small_poly(), u in 0usize..3, v in 0usize..3) {
            prop_assert_eq!(a.partial(u).partial(v), a.partial(v).partial(u));
        }

        #[test]
        fn eval_is_multiplicative(a in small_poly(), b in small_poly(),
                                  xs in proptest::collection::vec(small_rat(), 3)) {
            prop_assert_eq!((&a * &b).eval(&xs), a.eval(&xs) * b.eval(&xs));
        }
    }
}
