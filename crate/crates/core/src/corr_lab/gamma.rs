//! The two Γ constructions on a payoff grid, their hypotheses, and the JSON
//! instance format.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::corr::{check_label, FiniteCorrespondence, Hull, HullCorrespondence, Label, PayoffGrid};
use super::lattice::{property_s, EmpiricalStatus};
use super::rational::{QValue, Q};
use crate::error::{Error, Result};
use crate::par::Exec;

/// Hulls per fibre beyond which the close construction refuses to expand.
pub const MAX_HULLS_PER_FIBER: usize = 100_000;

/// All payoff vectors of `{0..=res}^k`, lexicographic.
pub fn payoff_grid_points(k: usize, res: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut y = vec![0u32; k];
    loop {
        out.push(y.clone());
        let Some(i) = (0..k).rev().find(|&i| y[i] < res) else {
            return out;
        };
        y[i] += 1;
        for v in &mut y[i + 1..] {
            *v = 0;
        }
    }
}

fn restrict(y: &[u32], label: &[usize]) -> Vec<u32> {
    label.iter().map(|&l| y[l]).collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// A finite instance: state set `K = {0..k-1}`, a family of labels, and a
/// payoff grid.
#[derive(Clone, Debug)]
pub struct Instance {
    pub k: usize,
    pub family: Vec<Label>,
    pub grid: PayoffGrid,
    /// Given correspondences, keyed by label (the full set `K` included).
    pub f: BTreeMap<Label, FiniteCorrespondence>,
    /// Lower corners of the upper boxes `U_L = {y >= u}`, in grid steps.
    /// Missing labels get the whole payoff cube.
    pub u: BTreeMap<Label, Vec<u32>>,
}

/// Per-label hypothesis report. `None` when not applicable.
#[derive(Clone, Debug, Serialize)]
pub struct LabelCheck {
    pub label: Label,
    pub given: bool,
    pub saturated: bool,
    pub property_s: EmpiricalStatus,
    pub inside_u: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    pub holds: bool,
    pub family_ok: bool,
    pub intersection_closed: Option<bool>,
    pub labels: Vec<LabelCheck>,
    pub notes: Vec<String>,
}

impl Instance {
    pub fn full(&self) -> Label {
        (0..self.k).collect()
    }

    fn empty(&self, label: &Label) -> FiniteCorrespondence {
        FiniteCorrespondence::new(self.k, label.clone(), self.grid.res, []).expect("empty correspondence")
    }

    pub fn corr(&self, label: &Label) -> FiniteCorrespondence {
        self.f.get(label).cloned().unwrap_or_else(|| self.empty(label))
    }

    /// Family labels maximal under inclusion.
    pub fn maximal(&self) -> Vec<Label> {
        self.family
            .iter()
            .filter(|l| !self.family.iter().any(|j| j.len() > l.len() && is_subset(l, j)))
            .cloned()
            .collect()
    }

    fn family_checks(&self, notes: &mut Vec<String>) -> bool {
        let mut ok = true;
        if self.family.iter().any(|l| l.len() == self.k) {
            notes.push("family contains K itself; labels should be proper subsets".into());
            ok = false;
        }
        let covered: BTreeSet<usize> = self.family.iter().flatten().copied().collect();
        if covered.len() != self.k {
            notes.push("family does not cover K".into());
            ok = false;
        }
        ok
    }

    fn label_check(&self, label: &Label, with_u: bool) -> LabelCheck {
        let given = self.f.contains_key(label);
        let f = self.corr(label);
        let inside_u = with_u.then(|| {
            let u = self.u.get(label).cloned().unwrap_or_else(|| vec![0; self.k]);
            let free_ok = (0..self.k).filter(|l| !label.contains(l)).all(|l| u[l] == 0);
            free_ok && f.points.iter().all(|(_, x)| label.iter().zip(x).all(|(&l, &t)| t >= u[l]))
        });
        LabelCheck {
            label: label.clone(),
            given,
            saturated: f.is_saturated(),
            property_s: property_s(&f, self.grid.res).status,
            inside_u,
        }
    }

    /// Hypotheses of the far construction: each given `F_L` saturated with
    /// the spanning property over `Δ(L)` (checked empirically), and
    /// `F_L × I^{K∖L}` inside `Δ(K) × U_L`.
    pub fn far_hypotheses(&self) -> Hypotheses {
        let mut notes = Vec::new();
        let family_ok = self.family_checks(&mut notes);
        let mut labels: Vec<Label> = self.family.clone();
        labels.push(self.full());
        let checks: Vec<LabelCheck> = labels.iter().map(|l| self.label_check(l, true)).collect();
        let holds = family_ok
            && checks
                .iter()
                .all(|c| c.saturated && c.property_s == EmpiricalStatus::Spans && c.inside_u == Some(true));
        Hypotheses { holds, family_ok, intersection_closed: None, labels: checks, notes }
    }

    /// Hypotheses of the close construction: the family is closed under
    /// nonempty intersections, and each maximal `F_J` is saturated with the
    /// spanning property.
    pub fn close_hypotheses(&self) -> Hypotheses {
        let mut notes = Vec::new();
        let family_ok = self.family_checks(&mut notes);
        let mut closed = true;
        for a in &self.family {
            for b in &self.family {
                let c: Label = a.iter().filter(|x| b.contains(x)).copied().collect();
                if !c.is_empty() && !self.family.contains(&c) {
                    notes.push(format!("{a:?} ∩ {b:?} = {c:?} is not in the family"));
                    closed = false;
                }
            }
        }
        let maximal = self.maximal();
        for l in self.f.keys().filter(|l| !maximal.contains(l)) {
            notes.push(format!("correspondence for non-maximal label {l:?} ignored"));
        }
        let checks: Vec<LabelCheck> = maximal.iter().map(|l| self.label_check(l, false)).collect();
        let holds = family_ok
            && closed
            && checks.iter().all(|c| c.saturated && c.property_s == EmpiricalStatus::Spans);
        Hypotheses { holds, family_ok, intersection_closed: Some(closed), labels: checks, notes }
    }

    fn hull_corr(&self, fibers: BTreeMap<Vec<u32>, Vec<Hull>>) -> HullCorrespondence {
        HullCorrespondence { k: self.k, label: self.full(), res: self.grid.res, fibers }
    }
}

/// `Γ^{-1}(y) = co(G^{-1}(y)) ∪ ⋃_{x ∈ F^{-1}(y)} co({x} ∪ G^{-1}(y))` with
/// `F = F_K` and `G = ⋃ F_L × I^{K∖L}`, both cut down to `Δ(K) × U` where
/// `U = ⋂ U_L`. Hull tags are family indices; `F_K` points get the tag
/// `family.len()`.
pub fn gamma_far(inst: &Instance) -> HullCorrespondence {
    gamma_far_with(inst, Exec::default())
}

pub fn gamma_far_with(inst: &Instance, exec: Exec) -> HullCorrespondence {
    let full = inst.full();
    let mut lower = vec![0u32; inst.k];
    for l in inst.family.iter().chain(std::iter::once(&full)) {
        if let Some(u) = inst.u.get(l) {
            for (a, b) in lower.iter_mut().zip(u) {
                *a = (*a).max(*b);
            }
        }
    }
    let fl: Vec<FiniteCorrespondence> = inst.family.iter().map(|l| inst.corr(l)).collect();
    let fk = inst.corr(&full);
    let ys = payoff_grid_points(inst.k, inst.grid.res);
    let fibers = exec.map(&ys, |y| {
        if y.iter().zip(&lower).any(|(a, b)| a < b) {
            return Vec::new();
        }
        let g: Vec<(Vec<Q>, usize)> = fl
            .iter()
            .enumerate()
            .flat_map(|(i, f)| f.preimage(&restrict(y, &f.label), 0).into_iter().map(move |p| (p, i)))
            .collect();
        let mut hulls = Vec::new();
        if !g.is_empty() {
            hulls.push(Hull::new(g.clone()));
        }
        for x in fk.preimage(y, 0) {
            let mut pts = g.clone();
            pts.push((x, inst.family.len()));
            hulls.push(Hull::new(pts));
        }
        hulls
    });
    inst.hull_corr(ys.into_iter().zip(fibers).filter(|(_, h)| !h.is_empty()).collect())
}

/// Correspondences induced on every family label from the maximal ones:
/// points of `F_J` with strategy supported on `L`, payoff projected to `L`.
pub fn induced(inst: &Instance) -> Vec<FiniteCorrespondence> {
    let maximal = inst.maximal();
    inst.family
        .iter()
        .map(|l| {
            let mut pts = BTreeSet::new();
            for j in maximal.iter().filter(|j| is_subset(l, j)) {
                let fj = inst.corr(j);
                for (p, x) in &fj.points {
                    if (0..inst.k).all(|i| p[i].is_zero() || l.contains(&i)) {
                        let y: Vec<u32> = l.iter().map(|li| x[j.iter().position(|a| a == li).unwrap()]).collect();
                        pts.insert((p.clone(), y));
                    }
                }
            }
            FiniteCorrespondence::new(inst.k, l.clone(), inst.grid.res, pts).expect("induced points are valid")
        })
        .collect()
}

/// `Γ^{-1}(y) = ⋃ co(x_{L_1}, .., x_{L_m})` over choices with
/// `x_{L_i} ∈ F̃_{L_i}^{-1}(y)` that use each maximal label at most once.
/// Non-maximal labels may contribute any number of points; since hulls grow
/// with their generator sets, each fibre is the union over one point per
/// maximal label with a nonempty preimage, together with all non-maximal
/// points. Hull tags are family indices.
pub fn gamma_close(inst: &Instance) -> Result<HullCorrespondence> {
    gamma_close_with(inst, Exec::default())
}

pub fn gamma_close_with(inst: &Instance, exec: Exec) -> Result<HullCorrespondence> {
    let maximal = inst.maximal();
    let fl = induced(inst);
    let is_max: Vec<bool> = inst.family.iter().map(|l| maximal.contains(l)).collect();
    let ys = payoff_grid_points(inst.k, inst.grid.res);
    let fibers = exec.map(&ys, |y| {
        let mut shared: Vec<(Vec<Q>, usize)> = Vec::new();
        let mut choices: Vec<Vec<(Vec<Q>, usize)>> = Vec::new();
        for (i, f) in fl.iter().enumerate() {
            let pre: Vec<(Vec<Q>, usize)> = f.preimage(&restrict(y, &f.label), 0).into_iter().map(|p| (p, i)).collect();
            if pre.is_empty() {
                continue;
            }
            if is_max[i] {
                choices.push(pre);
            } else {
                shared.extend(pre);
            }
        }
        let total: usize = choices.iter().map(Vec::len).try_fold(1usize, |a, b| a.checked_mul(b)).unwrap_or(usize::MAX);
        if total > MAX_HULLS_PER_FIBER {
            return Err(Error::InvalidCorrespondence(format!("fibre at {y:?} needs {total} hulls")));
        }
        if choices.is_empty() {
            return Ok(if shared.is_empty() { Vec::new() } else { vec![Hull::new(shared)] });
        }
        let mut hulls = Vec::with_capacity(total);
        let mut idx = vec![0usize; choices.len()];
        loop {
            let mut pts = shared.clone();
            pts.extend(idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()));
            hulls.push(Hull::new(pts));
            let Some(d) = (0..idx.len()).find(|&d| idx[d] + 1 < choices[d].len()) else {
                break;
            };
            idx[d] += 1;
            for v in &mut idx[..d] {
                *v = 0;
            }
        }
        Ok(hulls)
    });
    let mut out = BTreeMap::new();
    for (y, h) in ys.into_iter().zip(fibers) {
        let h = h?;
        if !h.is_empty() {
            out.insert(y, h);
        }
    }
    Ok(inst.hull_corr(out))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    #[default]
    Far,
    Close,
}

/// JSON instance. Labels are 0-based state indices; map keys write them
/// comma-separated (`"0,2"`). Payoffs and box corners are payoff values that
/// must sit on the grid; strategies are exact rationals.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(rename = "K")]
    pub k: usize,
    pub script_l: Vec<Label>,
    pub payoff_box: [QValue; 2],
    pub grid_res: u32,
    #[serde(rename = "F", default)]
    pub f: BTreeMap<String, Vec<(Vec<QValue>, Vec<QValue>)>>,
    #[serde(rename = "U", default)]
    pub u: BTreeMap<String, Vec<QValue>>,
    #[serde(default)]
    pub construction: Construction,
    /// Strategy lattice resolution for the spanning test; defaults to `grid_res`.
    #[serde(default)]
    pub lattice_res: Option<u32>,
}

fn parse_label(k: usize, s: &str) -> Result<Label> {
    let mut l: Label = s
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Error::InvalidCorrespondence(format!("bad label key {s:?}"))))
        .collect::<Result<_>>()?;
    l.sort_unstable();
    check_label(k, &l)?;
    Ok(l)
}

impl InstanceFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    fn grid_index(grid: &PayoffGrid, v: &Q) -> Result<u32> {
        let t = (v - &grid.a) * Q::from_integer(grid.res.into()) / (&grid.b - &grid.a);
        if !t.is_integer() || t < Q::zero() || t > Q::from_integer(grid.res.into()) {
            return Err(Error::InvalidCorrespondence(format!("payoff {v} is not on the grid")));
        }
        Ok(t.to_integer().try_into().expect("grid index fits"))
    }

    pub fn instance(&self) -> Result<Instance> {
        let grid = PayoffGrid::new(self.payoff_box[0].0.clone(), self.payoff_box[1].0.clone(), self.grid_res)?;
        let mut family = Vec::new();
        for l in &self.script_l {
            let mut l = l.clone();
            l.sort_unstable();
            check_label(self.k, &l)?;
            if !family.contains(&l) {
                family.push(l);
            }
        }
        let mut f = BTreeMap::new();
        for (key, pts) in &self.f {
            let label = parse_label(self.k, key)?;
            let pts = pts
                .iter()
                .map(|(p, y)| {
                    let p: Vec<Q> = p.iter().map(|q| q.0.clone()).collect();
                    let y = y.iter().map(|v| Self::grid_index(&grid, &v.0)).collect::<Result<Vec<u32>>>()?;
                    Ok((p, y))
                })
                .collect::<Result<Vec<_>>>()?;
            f.insert(label.clone(), FiniteCorrespondence::new(self.k, label, self.grid_res, pts)?);
        }
        let mut u = BTreeMap::new();
        for (key, corner) in &self.u {
            let label = parse_label(self.k, key)?;
            if corner.len() != self.k {
                return Err(Error::InvalidCorrespondence(format!("U corner for {key:?} needs {} entries", self.k)));
            }
            // Round up to the grid: the box keeps containing (b, .., b).
            let steps = corner
                .iter()
                .map(|v| {
                    let t = ((&v.0 - &grid.a) * Q::from_integer(self.grid_res.into()) / (&grid.b - &grid.a)).ceil();
                    if t > Q::from_integer(self.grid_res.into()) {
                        Err(Error::InvalidCorrespondence(format!("U for {key:?} misses (b, .., b)")))
                    } else {
                        Ok(t.to_integer().try_into().unwrap_or(0))
                    }
                })
                .collect::<Result<Vec<u32>>>()?;
            u.insert(label, steps);
        }
        Ok(Instance { k: self.k, family, grid, f, u })
    }

    pub fn lattice_res(&self) -> u32 {
        self.lattice_res.unwrap_or(self.grid_res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corr_lab::lattice::spanning_empirical;
    use crate::corr_lab::rational::q;

    fn vertex(k: usize, i: usize) -> Vec<Q> {
        (0..k).map(|j| if i == j { q(1, 1) } else { q(0, 1) }).collect()
    }

    fn two_states(y0: u32, y1: u32, res: u32) -> Instance {
        let f0 = FiniteCorrespondence::new(2, vec![0], res, [(vertex(2, 0), vec![y0])]).unwrap();
        let f1 = FiniteCorrespondence::new(2, vec![1], res, [(vertex(2, 1), vec![y1])]).unwrap();
        Instance {
            k: 2,
            family: vec![vec![0], vec![1]],
            grid: PayoffGrid::new(q(0, 1), q(1, 1), res).unwrap(),
            f: [(vec![0], f0), (vec![1], f1)].into_iter().collect(),
            u: BTreeMap::new(),
        }
    }

    #[test]
    fn grid_enumeration() {
        let ys = payoff_grid_points(2, 2);
        assert_eq!(ys.len(), 9);
        assert_eq!(ys[1], vec![0, 1]);
    }

    #[test]
    fn far_single_points_span() {
        let inst = two_states(2, 3, 4);
        let g = gamma_far(&inst);
        // The segment sits over (2, 3); elsewhere only one vertex.
        assert_eq!(g.fiber(&[2, 3]).len(), 1);
        assert!(g.contains(&[q(1, 2), q(1, 2)], &[2, 3]));
        assert!(!g.contains(&[q(1, 2), q(1, 2)], &[2, 2]));
        assert!(g.contains(&vertex(2, 0), &[2, 0]));
        assert!(spanning_empirical(&g, 4).spans());
    }

    #[test]
    fn far_reductions() {
        let mut inst = two_states(2, 3, 4);
        let fk = FiniteCorrespondence::new(2, vec![0, 1], 4, [(vec![q(1, 4), q(3, 4)], vec![0, 0])]).unwrap();
        inst.f.insert(vec![0, 1], fk);
        let g = gamma_far(&inst);
        // No G-points at (0,0): the fibre is F^{-1}.
        assert_eq!(g.fiber(&[0, 0]).len(), 1);
        assert_eq!(g.fiber(&[0, 0])[0].vertices, vec![vec![q(1, 4), q(3, 4)]]);
        // No F-points at (2,3): the fibre is co(G^{-1}).
        assert_eq!(g.fiber(&[2, 3])[0].vertices.len(), 2);
        // A box excluding low payoffs kills the F-point.
        inst.u.insert(vec![0, 1], vec![1, 1]);
        let g = gamma_far(&inst);
        assert!(g.fiber(&[0, 0]).is_empty());
        assert!(!inst.far_hypotheses().labels.last().unwrap().inside_u.unwrap());
    }

    #[test]
    fn close_matching_and_mismatched() {
        let inst = two_states(1, 1, 3);
        let g = gamma_close(&inst).unwrap();
        assert!(g.contains(&[q(1, 3), q(2, 3)], &[1, 1]));
        assert!(spanning_empirical(&g, 3).spans());
        assert!(inst.close_hypotheses().holds);
        // Single points have the spanning property over a vertex simplex.
        assert!(inst.far_hypotheses().labels[0].property_s == EmpiricalStatus::Spans);
    }

    #[test]
    fn close_distinctness() {
        let res = 2;
        let f01 = FiniteCorrespondence::new(
            3,
            vec![0, 1],
            res,
            [(vertex(3, 0), vec![1, 1]), (vertex(3, 1), vec![1, 1]), (vec![q(1, 2), q(1, 2), q(0, 1)], vec![1, 1])],
        )
        .unwrap();
        let f12 = FiniteCorrespondence::new(3, vec![1, 2], res, [(vertex(3, 1), vec![1, 1]), (vertex(3, 2), vec![1, 1])]).unwrap();
        let inst = Instance {
            k: 3,
            family: vec![vec![0, 1], vec![1, 2], vec![1]],
            grid: PayoffGrid::new(q(0, 1), q(1, 1), res).unwrap(),
            f: [(vec![0, 1], f01), (vec![1, 2], f12)].into_iter().collect(),
            u: BTreeMap::new(),
        };
        assert_eq!(inst.maximal(), vec![vec![0, 1], vec![1, 2]]);
        assert!(inst.close_hypotheses().intersection_closed.unwrap());
        let g = gamma_close(&inst).unwrap();
        let max_idx = [0usize, 1];
        for hulls in g.fibers.values() {
            for h in hulls {
                for t in max_idx {
                    assert!(h.tags.iter().filter(|&&x| x == t).count() <= 1);
                }
            }
        }
        // δ1 also arrives through the non-maximal label {1}, so the edge
        // from δ0 to δ1 and the whole triangle are reached.
        assert!(g.contains(&[q(1, 4), q(3, 4), q(0, 1)], &[1, 1, 1]));
        assert!(g.contains(&[q(1, 3), q(1, 3), q(1, 3)], &[1, 1, 1]));

        // Without a shared label two points of one maximal label never meet.
        let f01 = FiniteCorrespondence::new(3, vec![0, 1], res, [(vertex(3, 0), vec![1, 1]), (vertex(3, 1), vec![1, 1])]).unwrap();
        let f2 = FiniteCorrespondence::new(3, vec![2], res, [(vertex(3, 2), vec![1])]).unwrap();
        let inst = Instance {
            k: 3,
            family: vec![vec![0, 1], vec![2]],
            grid: PayoffGrid::new(q(0, 1), q(1, 1), res).unwrap(),
            f: [(vec![0, 1], f01), (vec![2], f2)].into_iter().collect(),
            u: BTreeMap::new(),
        };
        let g = gamma_close(&inst).unwrap();
        assert_eq!(g.fiber(&[1, 1, 1]).len(), 2);
        assert!(!g.contains(&[q(1, 2), q(1, 2), q(0, 1)], &[1, 1, 1]));
        assert!(g.contains(&[q(1, 2), q(0, 1), q(1, 2)], &[1, 1, 1]));
    }

    #[test]
    fn intersection_closure_is_checked() {
        let mut inst = two_states(1, 1, 2);
        inst.k = 3;
        inst.family = vec![vec![0, 1], vec![1, 2]];
        inst.f.clear();
        let h = inst.close_hypotheses();
        assert_eq!(h.intersection_closed, Some(false));
        assert!(!h.holds);
    }

    #[test]
    fn instance_file() {
        let text = r#"{
            "K": 2, "script_l": [[0], [1]], "payoff_box": [0, 1], "grid_res": 4,
            "F": {"0": [[[1, 0], ["1/2"]]], "1": [[[0, 1], [0.5]]]},
            "U": {"0,1": [0, "1/3"]}
        }"#;
        let file = InstanceFile::from_json(text).unwrap();
        let inst = file.instance().unwrap();
        assert_eq!(inst.f[&vec![0]].points.iter().next().unwrap().1, vec![2]);
        assert_eq!(inst.u[&vec![0, 1]], vec![0, 2]);
        assert_eq!(file.construction, Construction::Far);
        let bad = text.replace("\"1/2\"", "\"1/3\"");
        assert!(InstanceFile::from_json(&bad).unwrap().instance().is_err());
    }
}
