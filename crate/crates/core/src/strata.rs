//! Stratification bookkeeping: enumeration of the (v, w) labels, point
//! classification by fingerprint, and the check that the cyclic rotation
//! permutes fingerprint classes.
//!
//! The explicit bijection between labels and fingerprints is out of scope;
//! consistency between the two enumerations is checked by counting and by
//! dimension multisets on small cases.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::chart::{Fingerprint, GLElement, GrassPoint};
use crate::error::{Error, Result};
use crate::perm::{max_coset_reps, Perm};
use crate::poisson::{rank_at, Bivector};

/// A stratum label: a maximal coset representative v below w in Bruhat
/// order, with dimension length(w) - length(v).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumLabel {
    pub v: Perm,
    pub w: Perm,
    pub dim: usize,
}

#[derive(Debug, Clone)]
pub struct StratumCensus {
    pub k: usize,
    pub n: usize,
    pub labels: Vec<StratumLabel>,
    pub count_by_dim: BTreeMap<usize, usize>,
}

impl StratumCensus {
    pub fn label_count(&self) -> usize {
        self.labels.len()
    }
}

/// All pairs (v, w) with v a maximal coset representative for
/// S_n/(S_k x S_{n-k}), w in S_n, and v <= w in Bruhat order.
pub fn enumerate_labels(k: usize, n: usize) -> Result<StratumCensus> {
    if k < 1 || k >= n {
        return Err(Error::InvalidInput(format!(
            "need 1 <= k < n, got k={k}, n={n}"
        )));
    }
    if n > 7 {
        return Err(Error::InvalidInput(format!(
            "label enumeration walks all of S_n; n={n} > 7 is not supported"
        )));
    }
    let all = Perm::all(n);
    let mut labels = Vec::new();
    for v in max_coset_reps(k, n) {
        let lv = v.length();
        for w in &all {
            if v.bruhat_leq(w) {
                labels.push(StratumLabel {
                    v: v.clone(),
                    w: w.clone(),
                    dim: w.length() - lv,
                });
            }
        }
    }
    let mut count_by_dim: BTreeMap<usize, usize> = BTreeMap::new();
    for l in &labels {
        *count_by_dim.entry(l.dim).or_default() += 1;
    }
    Ok(StratumCensus {
        k,
        n,
        labels,
        count_by_dim,
    })
}

/// One fingerprint class of a point sample: how many points landed in it
/// and the bivector rank observed at its in-chart members (`None` when no
/// member admits chart coordinates).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassSummary {
    pub count: usize,
    pub rank: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct Classification {
    pub k: usize,
    pub n: usize,
    pub classes: BTreeMap<Fingerprint, ClassSummary>,
}

impl Classification {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

/// Group points by fingerprint and record the bivector rank per group,
/// evaluated at in-chart representatives. Two in-chart points in the same
/// class with different rank are a broken invariant and return
/// `Error::RankMismatch`.
pub fn classify(points: &[GrassPoint], pi: &Bivector) -> Result<Classification> {
    let shape = pi.shape();
    let observed: Vec<(Fingerprint, Option<usize>)> = points
        .par_iter()
        .map(|p| {
            assert_eq!((p.k(), p.n()), (shape.k, shape.n));
            let rank = p.to_chart().ok().map(|x| rank_at(pi, &x));
            (p.fingerprint(), rank)
        })
        .collect();
    let mut classes: BTreeMap<Fingerprint, ClassSummary> = BTreeMap::new();
    for (fp, rank) in observed {
        let entry = classes.entry(fp).or_insert(ClassSummary {
            count: 0,
            rank: None,
        });
        entry.count += 1;
        match (entry.rank, rank) {
            (None, r) => entry.rank = r,
            (Some(_), None) => {}
            (Some(a), Some(b)) => {
                if a != b {
                    return Err(Error::RankMismatch { left: a, right: b });
                }
            }
        }
    }
    Ok(Classification {
        k: shape.k,
        n: shape.n,
        classes,
    })
}

/// Check that rotating rows by the n-cycle c maps each point's fingerprint
/// the expected way: the matroid elementwise through c, the rank table by
/// one cyclic step. Returns true iff every point passes.
pub fn c_action_on_fingerprints(points: &[GrassPoint], n: usize) -> bool {
    let c = Perm::coxeter(n);
    let mc = GLElement::from_perm(&c);
    points.par_iter().all(|p| {
        assert_eq!(p.n(), n);
        let expected = p.fingerprint().expected_rotation_image(&c);
        p.act(&mc).fingerprint().same_data(&expected)
    })
}
