//! Two-state reference for the Γ constructions, written without the
//! library's hull or homology code. A strategy is `t = p_0`, so every fibre
//! is a union of intervals and spanning is connectivity from `t = 0` to
//! `t = 1` through the Kuhn edges of the lattice points.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

use num_traits::{One, Zero};
use rand::Rng;
use z2square::corr_lab::{
    gamma_close, gamma_far, q, spanning_empirical, FiniteCorrespondence, HullCorrespondence, Instance, PayoffGrid,
    Q,
};

#[derive(Clone, Debug)]
pub struct TwoState {
    pub res: u32,
    /// Payoffs `y_0` with `(δ_0, y_0)` in `F_{0}`.
    pub f0: BTreeSet<u32>,
    pub f1: BTreeSet<u32>,
    /// `(t, y_0, y_1)` in `F_K`.
    pub fk: BTreeSet<(Q, u32, u32)>,
    /// Lower corners for `{0}`, `{1}` and `K`.
    pub u: [Option<[u32; 2]>; 3],
}

fn strategy(t: &Q) -> Vec<Q> {
    vec![t.clone(), Q::one() - t]
}

impl TwoState {
    pub fn random<R: Rng>(rng: &mut R, res: u32) -> Self {
        let pick = |rng: &mut R| -> BTreeSet<u32> { (0..=res).filter(|_| rng.gen_bool(0.3)).collect() };
        let f0 = pick(rng);
        let f1 = pick(rng);
        let mut fk = BTreeSet::new();
        for _ in 0..rng.gen_range(0..=6) {
            // Mostly lattice strategies, sometimes halfway between.
            let den = if rng.gen_bool(0.8) { res } else { 2 * res };
            let t = q(rng.gen_range(0..=den) as i64, den as i64);
            fk.insert((t, rng.gen_range(0..=res), rng.gen_range(0..=res)));
        }
        let mut u = [None; 3];
        for (i, slot) in u.iter_mut().enumerate() {
            if rng.gen_bool(0.3) {
                let mut c = [0, 0];
                for (j, v) in c.iter_mut().enumerate() {
                    // Mostly consistent corners: zero off the label.
                    if i == 2 || i == j || rng.gen_bool(0.2) {
                        *v = rng.gen_range(0..=res / 2);
                    }
                }
                *slot = Some(c);
            }
        }
        let mut s = Self { res, f0, f1, fk, u };
        if rng.gen_bool(0.5) {
            s.saturate();
        }
        s
    }

    /// An instance meeting the far hypotheses: `F_K` is a lattice path from
    /// `t = 0` to `t = 1`, saturated, with corners below all payoffs.
    pub fn far_ready<R: Rng>(rng: &mut R, res: u32) -> Self {
        let n = res;
        let mut y = [rng.gen_range(0..=res / 2), rng.gen_range(0..=res / 2)];
        let mut fk = BTreeSet::new();
        for c in 0..=n {
            let t = q(c as i64, n as i64);
            fk.insert((t.clone(), y[0], y[1]));
            // A few steps within the fibre over `t`.
            for _ in 0..rng.gen_range(0..=2) {
                let i = rng.gen_range(0..2);
                y[i] = if rng.gen_bool(0.5) { (y[i] + 1).min(res) } else { y[i].saturating_sub(1) };
                fk.insert((t.clone(), y[0], y[1]));
            }
            // Moving to `c + 1` may raise payoffs by one.
            for v in &mut y {
                if *v < res && rng.gen_bool(0.3) {
                    *v += 1;
                }
            }
        }
        let lo = |i: usize| fk.iter().map(|p: &(Q, u32, u32)| if i == 0 { p.1 } else { p.2 }).min().unwrap();
        let (m0, m1) = (lo(0), lo(1));
        let f0: BTreeSet<u32> = (0..=res).filter(|&y| y >= m0 && rng.gen_bool(0.5)).chain([res]).collect();
        let f1: BTreeSet<u32> = (0..=res).filter(|&y| y >= m1 && rng.gen_bool(0.5)).chain([res]).collect();
        let u = [
            Some([rng.gen_range(0..=m0), 0]),
            Some([0, rng.gen_range(0..=m1)]),
            Some([rng.gen_range(0..=m0), rng.gen_range(0..=m1)]),
        ];
        let mut s = Self { res, f0, f1, fk, u };
        s.saturate();
        s
    }

    /// Upward closure in the coordinates where the strategy vanishes.
    pub fn saturate(&mut self) {
        let mut out = BTreeSet::new();
        for (t, a, b) in &self.fk {
            let r0 = if t.is_zero() { *a..=self.res } else { *a..=*a };
            for y0 in r0 {
                let r1 = if t.is_one() { *b..=self.res } else { *b..=*b };
                for y1 in r1 {
                    out.insert((t.clone(), y0, y1));
                }
            }
        }
        self.fk = out;
    }

    pub fn instance(&self) -> Instance {
        let grid = PayoffGrid::new(q(0, 1), q(1, 1), self.res).unwrap();
        let mut f = BTreeMap::new();
        let d0 = strategy(&Q::one());
        let d1 = strategy(&Q::zero());
        f.insert(
            vec![0],
            FiniteCorrespondence::new(2, vec![0], self.res, self.f0.iter().map(|&y| (d0.clone(), vec![y]))).unwrap(),
        );
        f.insert(
            vec![1],
            FiniteCorrespondence::new(2, vec![1], self.res, self.f1.iter().map(|&y| (d1.clone(), vec![y]))).unwrap(),
        );
        if !self.fk.is_empty() {
            let pts = self.fk.iter().map(|(t, a, b)| (strategy(t), vec![*a, *b]));
            f.insert(vec![0, 1], FiniteCorrespondence::new(2, vec![0, 1], self.res, pts).unwrap());
        }
        let labels = [vec![0], vec![1], vec![0, 1]];
        let u = labels
            .iter()
            .zip(&self.u)
            .filter_map(|(l, c)| c.map(|c| (l.clone(), c.to_vec())))
            .collect();
        Instance { k: 2, family: vec![vec![0], vec![1]], grid, f, u }
    }

    fn lower(&self) -> [u32; 2] {
        let mut lo = [0, 0];
        for c in self.u.iter().flatten() {
            lo = [lo[0].max(c[0]), lo[1].max(c[1])];
        }
        lo
    }

    /// `Γ^{-1}(y)` as closed intervals in `t`.
    pub fn fiber(&self, far: bool, y: [u32; 2]) -> Vec<(Q, Q)> {
        let mut g: Vec<Q> = Vec::new();
        if self.f0.contains(&y[0]) {
            g.push(Q::one());
        }
        if self.f1.contains(&y[1]) {
            g.push(Q::zero());
        }
        let span = |pts: &[Q]| -> (Q, Q) {
            (pts.iter().min().unwrap().clone(), pts.iter().max().unwrap().clone())
        };
        if !far {
            return if g.is_empty() { vec![] } else { vec![span(&g)] };
        }
        let lo = self.lower();
        if y[0] < lo[0] || y[1] < lo[1] {
            return vec![];
        }
        let mut out = Vec::new();
        if !g.is_empty() {
            out.push(span(&g));
        }
        for (t, a, b) in &self.fk {
            if [*a, *b] == y {
                let mut pts = g.clone();
                pts.push(t.clone());
                out.push(span(&pts));
            }
        }
        out
    }

    pub fn in_fiber(&self, far: bool, y: [u32; 2], t: &Q) -> bool {
        self.fiber(far, y).iter().any(|(a, b)| a <= t && t <= b)
    }

    /// Lattice points `(c, y_0, y_1)` with `c = n t`.
    pub fn gamma_points(&self, far: bool, n: u32) -> HashSet<[u32; 3]> {
        let mut out = HashSet::new();
        for y0 in 0..=self.res {
            for y1 in 0..=self.res {
                for c in 0..=n {
                    if self.in_fiber(far, [y0, y1], &q(c as i64, n as i64)) {
                        out.insert([c, y0, y1]);
                    }
                }
            }
        }
        out
    }

    fn fk_points(&self, n: u32) -> HashSet<[u32; 3]> {
        self.fk
            .iter()
            .filter_map(|(t, a, b)| {
                let c = t * Q::from_integer(n.into());
                c.is_integer().then(|| [u32::try_from(c.to_integer()).unwrap(), *a, *b])
            })
            .collect()
    }

    fn fk_saturated(&self) -> bool {
        let mut s = self.clone();
        s.saturate();
        s.fk == self.fk
    }

    fn inside_u(&self, i: usize) -> bool {
        let c = self.u[i].unwrap_or([0, 0]);
        match i {
            0 => c[1] == 0 && self.f0.iter().all(|&y| y >= c[0]),
            1 => c[0] == 0 && self.f1.iter().all(|&y| y >= c[1]),
            _ => self.fk.iter().all(|(_, a, b)| *a >= c[0] && *b >= c[1]),
        }
    }

    pub fn far_holds(&self, n: u32) -> bool {
        !self.f0.is_empty()
            && !self.f1.is_empty()
            && self.fk_saturated()
            && connects(&self.fk_points(n), n)
            && (0..3).all(|i| self.inside_u(i))
    }

    pub fn close_holds(&self) -> bool {
        !self.f0.is_empty() && !self.f1.is_empty()
    }
}

/// Whether some lattice point with `c = 0` reaches one with `c = n` through
/// steps `±1_A`, `A` a nonempty set of coordinates.
pub fn connects(points: &HashSet<[u32; 3]>, n: u32) -> bool {
    let mut seen: HashSet<[u32; 3]> = points.iter().filter(|p| p[0] == 0).copied().collect();
    let mut queue: VecDeque<[u32; 3]> = seen.iter().copied().collect();
    while let Some(p) = queue.pop_front() {
        if p[0] == n {
            return true;
        }
        for mask in 1..8u32 {
            for up in [true, false] {
                let step = |i: usize| {
                    let bit = mask >> i & 1;
                    if up { p[i].checked_add(bit) } else { p[i].checked_sub(bit) }
                };
                let (Some(a), Some(b), Some(c)) = (step(0), step(1), step(2)) else { continue };
                let z = [a, b, c];
                if points.contains(&z) && seen.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    false
}

/// Disagreements between the library and the reference on one instance.
#[derive(Debug, Default)]
pub struct Comparison {
    pub membership: usize,
    pub spanning: bool,
    pub hypotheses: bool,
}

impl Comparison {
    pub fn agrees(&self) -> bool {
        self.membership == 0 && !self.spanning && !self.hypotheses
    }
}

fn compare_fibers(s: &TwoState, far: bool, h: &HullCorrespondence, n: u32) -> usize {
    let mut ts: BTreeSet<Q> = (0..=n).map(|c| q(c as i64, n as i64)).collect();
    ts.extend(s.fk.iter().map(|p| p.0.clone()));
    let mut bad = 0;
    for y0 in 0..=s.res {
        for y1 in 0..=s.res {
            for t in &ts {
                if h.contains(&strategy(t), &[y0, y1]) != s.in_fiber(far, [y0, y1], t) {
                    bad += 1;
                }
            }
        }
    }
    bad
}

pub fn compare(s: &TwoState, far: bool) -> Comparison {
    let n = s.res;
    let inst = s.instance();
    let (h, holds) = if far {
        (gamma_far(&inst), inst.far_hypotheses().holds)
    } else {
        (gamma_close(&inst).unwrap(), inst.close_hypotheses().holds)
    };
    let reference_holds = if far { s.far_holds(n) } else { s.close_holds() };
    Comparison {
        membership: compare_fibers(s, far, &h, n),
        spanning: spanning_empirical(&h, n).spans() != connects(&s.gamma_points(far, n), n),
        hypotheses: holds != reference_holds,
    }
}

/// Every instance at `res = 1` with `F_K` drawn from four candidates, then
/// seeded random instances up to `res = 16`.
pub fn reference_instances() -> Vec<TwoState> {
    use rand::SeedableRng;
    let mut out = Vec::new();
    let candidates = [(q(0, 1), 1, 0), (q(1, 2), 1, 1), (q(1, 1), 0, 1), (q(1, 1), 0, 0)];
    for bits in 0..1u32 << 8 {
        let set = |shift: u32| -> BTreeSet<u32> { (0..2).filter(|y| bits >> (shift + y) & 1 == 1).collect() };
        let fk = (0..4).filter(|i| bits >> (4 + i) & 1 == 1).map(|i| candidates[i as usize].clone()).collect();
        out.push(TwoState { res: 1, f0: set(0), f1: set(2), fk, u: [None; 3] });
    }
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(70);
    for res in [2, 3, 4, 6, 8, 12, 16] {
        for _ in 0..20 {
            out.push(TwoState::random(&mut rng, res));
        }
        for _ in 0..10 {
            out.push(TwoState::far_ready(&mut rng, res));
        }
    }
    out
}
