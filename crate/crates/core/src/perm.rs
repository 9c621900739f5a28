//! Permutations of {1..n}: length, Bruhat order, coset representatives,
//! distinguished elements, and permutation matrices.
//!
//! Conventions, fixed here once and inherited by every other module:
//! composition is (u*v)(i) = u(v(i)), and the matrix of w has its 1 in
//! row w(i) of column i, so that M_u M_v = M_{u*v} and
//! M_w E_{ij} M_w^-1 = E_{w(i),w(j)}.

use itertools::Itertools;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::rat::Rat;

/// A permutation of {1..n} in one-line notation: `images[i-1] = w(i)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm {
            images: (1..=n).collect(),
        }
    }

    /// Build from one-line notation, validating that it is a bijection.
    pub fn from_one_line(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(n));
            }
            seen[v - 1] = true;
        }
        Ok(Perm { images })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn one_line(&self) -> &[usize] {
        &self.images
    }

    /// w(i), 1-based.
    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    /// (self * other)(i) = self(other(i)): `other` acts first.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.n(), other.n());
        Perm {
            images: (1..=self.n()).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.n()];
        for i in 1..=self.n() {
            images[self.apply(i) - 1] = i;
        }
        Perm { images }
    }

    /// Integer power, negative exponents through the inverse.
    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut out = Perm::identity(self.n());
        for _ in 0..e.unsigned_abs() {
            out = base.compose(&out);
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// Coxeter length = number of inversions.
    pub fn length(&self) -> usize {
        let n = self.n();
        (0..n)
            .map(|i| (i + 1..n).filter(|&j| self.images[i] > self.images[j]).count())
            .sum()
    }

    /// The n-cycle c with c(i) = i+1 and c(n) = 1.
    pub fn coxeter(n: usize) -> Perm {
        Perm {
            images: (1..=n).map(|i| i % n + 1).collect(),
        }
    }

    /// The longest element w0(i) = n+1-i.
    pub fn longest(n: usize) -> Perm {
        Perm {
            images: (1..=n).rev().collect(),
        }
    }

    /// Longest element of S_k x S_{n-k}: reverses {1..k} and {k+1..n} separately.
    pub fn longest_levi(k: usize, n: usize) -> Perm {
        assert!(k >= 1 && k < n);
        let mut images: Vec<usize> = (1..=k).rev().collect();
        images.extend((k + 1..=n).rev());
        Perm { images }
    }

    /// Bruhat order by the rank-matrix dominance criterion:
    /// v <= w iff #{a <= i : v(a) >= j} <= #{a <= i : w(a) >= j} for all i, j.
    pub fn bruhat_leq(&self, other: &Perm) -> bool {
        assert_eq!(self.n(), other.n());
        let n = self.n();
        let count = |w: &Perm, i: usize, j: usize| (1..=i).filter(|&a| w.apply(a) >= j).count();
        for i in 1..=n {
            for j in 1..=n {
                if count(self, i, j) > count(other, i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// True when w fixes {1..k} setwise (and hence {k+1..n} as well).
    pub fn in_block_subgroup(&self, k: usize) -> bool {
        (1..=k).all(|i| self.apply(i) <= k)
    }

    /// Permutation matrix: entry 1 at (w(i), i).
    pub fn matrix(&self) -> QMatrix {
        let mut m = QMatrix::zeros(self.n(), self.n());
        for i in 1..=self.n() {
            m.set(self.apply(i) - 1, i - 1, Rat::one());
        }
        m
    }

    /// All n! permutations, in lexicographic one-line order.
    pub fn all(n: usize) -> Vec<Perm> {
        (1..=n)
            .permutations(n)
            .map(|images| Perm { images })
            .collect()
    }
}

impl std::fmt::Display for Perm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}]", self.images.iter().join(","))
    }
}

/// The distinguished elements (c, w0, w0 of the block subgroup) for (k, n).
pub fn special_elements(k: usize, n: usize) -> (Perm, Perm, Perm) {
    (
        Perm::coxeter(n),
        Perm::longest(n),
        Perm::longest_levi(k, n),
    )
}

/// Maximal-length representatives of the cosets S_n / (S_k x S_{n-k}),
/// one per k-subset of {1..n}: the subset in decreasing order followed by
/// its complement in decreasing order. Right multiplication by the block
/// subgroup reorders within the two image blocks, so this is the longest
/// element of its coset.
pub fn max_coset_reps(k: usize, n: usize) -> Vec<Perm> {
    assert!(k >= 1 && k < n);
    (1..=n)
        .combinations(k)
        .map(|subset| {
            let mut images: Vec<usize> = subset.iter().rev().copied().collect();
            let mut complement: Vec<usize> =
                (1..=n).filter(|i| !subset.contains(i)).rev().collect();
            images.append(&mut complement);
            Perm { images }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;
    use proptest::prelude::*;
    use std::collections::{HashMap, HashSet};

    fn p(images: &[usize]) -> Perm {
        Perm::from_one_line(images.to_vec()).unwrap()
    }

    #[test]
    fn lengths() {
        assert_eq!(Perm::identity(5).length(), 0);
        assert_eq!(Perm::longest(4).length(), 6);
        for n in 2..=8 {
            assert_eq!(Perm::coxeter(n).length(), n - 1);
        }
    }

    #[test]
    fn composition_convention() {
        // s1*s2 applied as s1(s2(i)) gives (2,3,1)
        let s1 = p(&[2, 1, 3]);
        let s2 = p(&[1, 3, 2]);
        assert_eq!(s1.compose(&s2), p(&[2, 3, 1]));
        assert_eq!(s2.compose(&s1), p(&[3, 1, 2]));
    }

    #[test]
    fn bruhat_examples() {
        let s1 = p(&[2, 1, 3]);
        let s2 = p(&[1, 3, 2]);
        let s1s2 = s1.compose(&s2);
        let e = Perm::identity(3);
        for w in Perm::all(3) {
            assert!(e.bruhat_leq(&w));
        }
        assert!(s2.bruhat_leq(&s1s2));
        assert!(!s1.bruhat_leq(&s2));
    }

    /// Independent oracle: Bruhat order as the transitive closure of the
    /// covering relation w -> t*w with length(t*w) = length(w) + 1 over all
    /// transpositions t.
    fn bruhat_oracle(n: usize) -> HashMap<(Perm, Perm), bool> {
        let all = Perm::all(n);
        let mut leq: HashMap<(Perm, Perm), bool> = HashMap::new();
        for v in &all {
            for w in &all {
                leq.insert((v.clone(), w.clone()), v == w);
            }
        }
        // covers
        let mut covers: Vec<(Perm, Perm)> = Vec::new();
        for v in &all {
            for i in 1..=n {
                for j in i + 1..=n {
                    let mut images = v.one_line().to_vec();
                    images.swap(i - 1, j - 1);
                    let w = Perm { images };
                    if w.length() == v.length() + 1 {
                        covers.push((v.clone(), w.clone()));
                    }
                }
            }
        }
        // Warshall-style saturation
        let mut changed = true;
        while changed {
            changed = false;
            for (v, w) in &covers {
                for u in &all {
                    if leq[&(u.clone(), v.clone())] && !leq[&(u.clone(), w.clone())] {
                        leq.insert((u.clone(), w.clone()), true);
                        changed = true;
                    }
                }
            }
        }
        leq
    }

    #[test]
    fn bruhat_matches_cover_closure_oracle() {
        for n in 1..=4 {
            let oracle = bruhat_oracle(n);
            for v in Perm::all(n) {
                for w in Perm::all(n) {
                    assert_eq!(
                        v.bruhat_leq(&w),
                        oracle[&(v.clone(), w.clone())],
                        "disagreement at v={v}, w={w}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_is_a_partial_order_up_to_n5() {
        for n in 2..=5 {
            let all = Perm::all(n);
            for v in &all {
                assert!(v.bruhat_leq(v));
                for w in &all {
                    if v.bruhat_leq(w) && w.bruhat_leq(v) {
                        assert_eq!(v, w);
                    }
                    if v.bruhat_leq(w) {
                        // order respects length
                        assert!(v.length() <= w.length());
                    }
                }
            }
            // transitivity on a length-filtered triple scan
            for u in &all {
                for v in &all {
                    if !u.bruhat_leq(v) {
                        continue;
                    }
                    for w in &all {
                        if v.bruhat_leq(w) {
                            assert!(u.bruhat_leq(w));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn coset_reps_small_cases() {
        // (k,n) = (1,3): {s2, s1s2, s2s1s2} with lengths {1,2,3}
        let reps = max_coset_reps(1, 3);
        let set: HashSet<Perm> = reps.iter().cloned().collect();
        assert_eq!(
            set,
            HashSet::from([p(&[1, 3, 2]), p(&[2, 3, 1]), p(&[3, 2, 1])])
        );
        let mut lengths: Vec<usize> = reps.iter().map(Perm::length).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![1, 2, 3]);

        // (k,n) = (1,2): {e, s1}
        let reps = max_coset_reps(1, 2);
        let set: HashSet<Perm> = reps.iter().cloned().collect();
        assert_eq!(set, HashSet::from([p(&[1, 2]), p(&[2, 1])]));

        assert_eq!(max_coset_reps(2, 4).len(), 6);
    }

    #[test]
    fn coset_reps_brute_force_cross_check() {
        // group all of S_n by the image set of {1..k}; the rep must be the
        // unique longest element of its coset
        for n in 2..=6 {
            for k in 1..n {
                let mut by_coset: HashMap<Vec<usize>, Vec<Perm>> = HashMap::new();
                for w in Perm::all(n) {
                    let mut key: Vec<usize> = (1..=k).map(|i| w.apply(i)).collect();
                    key.sort_unstable();
                    by_coset.entry(key).or_default().push(w);
                }
                let reps = max_coset_reps(k, n);
                assert_eq!(reps.len(), by_coset.len());
                for rep in &reps {
                    let mut key: Vec<usize> = (1..=k).map(|i| rep.apply(i)).collect();
                    key.sort_unstable();
                    let coset = &by_coset[&key];
                    let max_len = coset.iter().map(Perm::length).max().unwrap();
                    assert_eq!(rep.length(), max_len);
                    assert_eq!(
                        coset.iter().filter(|w| w.length() == max_len).count(),
                        1,
                        "longest coset element must be unique"
                    );
                    // maximality against right multiplication by the subgroup
                    for u in Perm::all(n).iter().filter(|u| u.in_block_subgroup(k)) {
                        assert!(rep.length() >= rep.compose(u).length());
                    }
                }
            }
        }
    }

    #[test]
    fn special_element_identities() {
        for n in 2..=8 {
            let c = Perm::coxeter(n);
            assert!(c.pow(n as i64).is_identity());
            let w0 = Perm::longest(n);
            // w0 c w0^-1 = c^-1
            assert_eq!(w0.compose(&c).compose(&w0.inverse()), c.inverse());
            for k in 1..n {
                let w0p = Perm::longest_levi(k, n);
                assert_eq!(w0p.compose(&w0), c.pow(k as i64));
            }
        }
        assert_eq!(Perm::coxeter(3), p(&[2, 3, 1]));
    }

    #[test]
    fn matrices() {
        assert_eq!(Perm::identity(3).matrix(), QMatrix::identity(3));
        let mc = Perm::coxeter(3).matrix();
        for (r, c) in [(1, 0), (2, 1), (0, 2)] {
            assert_eq!(*mc.get(r, c), rat_int(1));
        }
        // Ad_{M_c} E_{12} = E_{23}
        let mut e12 = QMatrix::zeros(3, 3);
        e12.set(0, 1, rat_int(1));
        let mut e23 = QMatrix::zeros(3, 3);
        e23.set(1, 2, rat_int(1));
        let ad = mc.mul(&e12).mul(&mc.inverse().unwrap());
        assert_eq!(ad, e23);
    }

    fn arb_perm_pair(max_n: usize) -> impl Strategy<Value = (Perm, Perm)> {
        (1..=max_n).prop_flat_map(|n| {
            let one = Just((1..=n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|images| Perm::from_one_line(images).unwrap());
            let other = Just((1..=n).collect::<Vec<usize>>())
                .prop_shuffle()
                .prop_map(|images| Perm::from_one_line(images).unwrap());
            (one, other)
        })
    }

    proptest! {
        #[test]
        fn length_subadditive_and_inverse_invariant((u, v) in arb_perm_pair(8)) {
            prop_assert!(u.compose(&v).length() <= u.length() + v.length());
            prop_assert_eq!(u.inverse().length(), u.length());
        }

        #[test]
        fn matrix_is_a_homomorphism((u, v) in arb_perm_pair(6)) {
            prop_assert_eq!(u.matrix().mul(&v.matrix()), u.compose(&v).matrix());
        }
    }
}
