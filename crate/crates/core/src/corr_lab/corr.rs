//! Finite correspondences on a payoff grid and their convex hulls.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Signed, Zero};

use super::rational::{in_hull, Q};
use crate::error::{Error, Result};

/// A nonempty subset of `K = {0, .., k-1}`, sorted.
pub type Label = Vec<usize>;

/// The payoff interval `[a, b]` sampled at `res + 1` equally spaced values.
/// Payoffs are stored as grid indices `0..=res`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PayoffGrid {
    pub a: Q,
    pub b: Q,
    pub res: u32,
}

impl PayoffGrid {
    pub fn new(a: Q, b: Q, res: u32) -> Result<Self> {
        if a >= b || res == 0 {
            return Err(Error::InvalidCorrespondence("payoff box needs a < b and res >= 1".into()));
        }
        Ok(Self { a, b, res })
    }

    pub fn value(&self, t: u32) -> Q {
        &self.a + (&self.b - &self.a) * Q::new(t.into(), self.res.into())
    }

    /// Grid distance corresponding to a payoff tolerance, rounded down.
    pub fn steps(&self, eps: &Q) -> u32 {
        let s = eps * Q::from_integer(self.res.into()) / (&self.b - &self.a);
        s.floor().to_integer().try_into().unwrap_or(u32::MAX)
    }
}

/// Finite subset of `Δ(L) × I^L`. Mixed strategies are kept over all of `K`
/// (zero outside `L`); payoffs only over `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCorrespondence {
    pub k: usize,
    pub label: Label,
    pub res: u32,
    pub points: BTreeSet<(Vec<Q>, Vec<u32>)>,
}

pub(crate) fn check_label(k: usize, label: &[usize]) -> Result<()> {
    if label.is_empty() || label.windows(2).any(|w| w[0] >= w[1]) || label.iter().any(|&l| l >= k) {
        return Err(Error::InvalidCorrespondence(format!("bad label {label:?} for |K| = {k}")));
    }
    Ok(())
}

impl FiniteCorrespondence {
    pub fn new(
        k: usize,
        label: Label,
        res: u32,
        points: impl IntoIterator<Item = (Vec<Q>, Vec<u32>)>,
    ) -> Result<Self> {
        check_label(k, &label)?;
        let mut set = BTreeSet::new();
        for (p, y) in points {
            if p.len() != k || y.len() != label.len() {
                return Err(Error::InvalidCorrespondence("point has the wrong length".into()));
            }
            if p.iter().any(Q::is_negative) || p.iter().sum::<Q>() != Q::one() {
                return Err(Error::InvalidCorrespondence(format!("{p:?} is not a mixed strategy")));
            }
            if (0..k).any(|i| !p[i].is_zero() && !label.contains(&i)) {
                return Err(Error::InvalidCorrespondence(format!("{p:?} is not supported on {label:?}")));
            }
            if y.iter().any(|&t| t > res) {
                return Err(Error::InvalidCorrespondence(format!("payoff index {y:?} exceeds {res}")));
            }
            set.insert((p, y));
        }
        Ok(Self { k, label, res, points: set })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Strategies whose payoff is within `eps` grid steps of `y` in every
    /// coordinate.
    pub fn preimage(&self, y: &[u32], eps: u32) -> Vec<Vec<Q>> {
        let mut out: Vec<Vec<Q>> = self
            .points
            .iter()
            .filter(|(_, x)| x.iter().zip(y).all(|(a, b)| a.abs_diff(*b) <= eps))
            .map(|(p, _)| p.clone())
            .collect();
        out.dedup();
        out
    }

    /// Adds every `(p, y)` such that some `(p, x)` has `x <= y` coordinatewise
    /// with equality where `p` is positive.
    pub fn saturate(&self) -> Self {
        let mut set = BTreeSet::new();
        for (p, x) in &self.points {
            let ranges: Vec<(u32, u32)> = self
                .label
                .iter()
                .zip(x)
                .map(|(&l, &t)| if p[l].is_zero() { (t, self.res) } else { (t, t) })
                .collect();
            let mut y: Vec<u32> = ranges.iter().map(|r| r.0).collect();
            loop {
                set.insert((p.clone(), y.clone()));
                let Some(i) = (0..y.len()).find(|&i| y[i] < ranges[i].1) else {
                    break;
                };
                y[i] += 1;
                for j in 0..i {
                    y[j] = ranges[j].0;
                }
            }
        }
        Self { points: set, ..self.clone() }
    }

    pub fn is_saturated(&self) -> bool {
        self.saturate().points.len() == self.points.len()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.points.is_subset(&other.points)
    }
}

/// Convex hull of finitely many strategies. `tags` records, per vertex, the
/// label the vertex was drawn from (constructions that care about it set it).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hull {
    pub vertices: Vec<Vec<Q>>,
    pub tags: Vec<usize>,
}

impl Hull {
    pub fn new(mut pts: Vec<(Vec<Q>, usize)>) -> Self {
        pts.sort();
        pts.dedup();
        let (vertices, tags) = pts.into_iter().unzip();
        Self { vertices, tags }
    }

    pub fn contains(&self, p: &[Q]) -> bool {
        in_hull(p, &self.vertices)
    }

    pub fn is_subset(&self, other: &Hull) -> bool {
        self.vertices.iter().all(|v| other.contains(v))
    }
}

/// A correspondence whose fibres are finite unions of hulls, keyed by payoff.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullCorrespondence {
    pub k: usize,
    pub label: Label,
    pub res: u32,
    pub fibers: BTreeMap<Vec<u32>, Vec<Hull>>,
}

impl HullCorrespondence {
    pub fn fiber(&self, y: &[u32]) -> &[Hull] {
        self.fibers.get(y).map_or(&[], Vec::as_slice)
    }

    pub fn contains(&self, p: &[Q], y: &[u32]) -> bool {
        self.fiber(y).iter().any(|h| h.contains(p))
    }

    pub fn n_hulls(&self) -> usize {
        self.fibers.values().map(Vec::len).sum()
    }

    /// Fibrewise convex hull of the union.
    pub fn convexify(&self) -> Self {
        let fibers = self
            .fibers
            .iter()
            .filter(|(_, hs)| !hs.is_empty())
            .map(|(y, hs)| {
                let pts = hs.iter().flat_map(|h| h.vertices.iter().cloned().zip(h.tags.iter().copied())).collect();
                (y.clone(), vec![Hull::new(pts)])
            })
            .collect();
        Self { fibers, ..self.clone() }
    }

    /// Sufficient test for inclusion: every hull of `self` lies in a single
    /// hull of `other`. Exact when `other` has convex fibres.
    pub fn is_subset(&self, other: &Self) -> bool {
        self.fibers.iter().all(|(y, hs)| hs.iter().all(|h| other.fiber(y).iter().any(|g| h.is_subset(g))))
    }

    pub fn same_set(&self, other: &Self) -> bool {
        self.is_subset(other) && other.is_subset(self)
    }
}

/// Fibrewise convex hull of a finite correspondence.
pub fn convexify(f: &FiniteCorrespondence) -> HullCorrespondence {
    let mut by_y: BTreeMap<Vec<u32>, Vec<(Vec<Q>, usize)>> = BTreeMap::new();
    for (p, y) in &f.points {
        by_y.entry(y.clone()).or_default().push((p.clone(), 0));
    }
    HullCorrespondence {
        k: f.k,
        label: f.label.clone(),
        res: f.res,
        fibers: by_y.into_iter().map(|(y, pts)| (y, vec![Hull::new(pts)])).collect(),
    }
}
