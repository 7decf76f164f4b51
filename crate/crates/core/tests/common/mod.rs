#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use z2square::gf2::BitVec;
use std::collections::HashSet;

pub mod corr;

use z2square::sym_square::{induced_sym_map, square_on, DiagonalNeighborhood, SymSquarePair};
use z2square::z2_chain::{
    fundamental_class, homologous, homology, is_boundary, restrict, HomologyClass, Simplex, SimplicialMap,
    SimplicialPair, Subpair,
};

pub fn circle3() -> SimplicialPair {
    SimplicialPair::new(3, &[vec![0, 1], vec![1, 2], vec![0, 2]], &[]).unwrap()
}

pub fn interval_pair() -> SimplicialPair {
    SimplicialPair::new(3, &[vec![0, 1], vec![1, 2]], &[vec![0], vec![2]]).unwrap()
}

/// Boundary of the octahedron on `±e_1, ±e_2, ±e_3`.
pub fn octahedron() -> SimplicialPair {
    let mut t = Vec::new();
    for a in [0, 1] {
        for b in [2, 3] {
            for c in [4, 5] {
                t.push(vec![a, b, c]);
            }
        }
    }
    SimplicialPair::new(6, &t, &[]).unwrap()
}

/// Seven-vertex torus.
pub fn torus7() -> SimplicialPair {
    let mut t = Vec::new();
    for i in 0..7 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialPair::new(7, &t, &[]).unwrap()
}

/// Five-vertex Möbius band relative to its boundary circle.
pub fn moebius5() -> SimplicialPair {
    let t: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 1) % 5, (i + 2) % 5]).collect();
    let b: Vec<Vec<usize>> = (0..5).map(|i| vec![i, (i + 2) % 5]).collect();
    SimplicialPair::new(5, &t, &b).unwrap()
}

/// Six-vertex projective plane.
pub fn rp2_6() -> SimplicialPair {
    let t = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    SimplicialPair::new(6, &t.map(|s| s.to_vec()), &[]).unwrap()
}

/// The classical complexes with their mod-2 ranks.
pub fn corpus() -> Vec<(&'static str, SimplicialPair, Vec<usize>)> {
    vec![
        ("circle", circle3(), vec![1, 1]),
        ("interval rel ends", interval_pair(), vec![0, 1]),
        ("octahedral sphere", octahedron(), vec![1, 0, 1]),
        ("torus", torus7(), vec![1, 2, 1]),
        ("Möbius band rel boundary", moebius5(), vec![0, 1, 1]),
        ("projective plane", rp2_6(), vec![1, 1, 1]),
    ]
}

/// A random pair: up to `max_top` simplices of dimension `<= 3` on a few
/// vertices, with the face closure of a random subset as subcomplex.
pub fn random_pair<R: Rng>(rng: &mut R, n_vertices: usize, max_top: usize) -> SimplicialPair {
    let verts: Vec<usize> = (0..n_vertices).collect();
    let mut tops: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_top) {
        let d = rng.gen_range(1..=3.min(n_vertices - 1));
        let mut s: Vec<usize> = verts.choose_multiple(rng, d + 1).copied().collect();
        s.sort_unstable();
        if !tops.contains(&s) {
            tops.push(s);
        }
    }
    let mut sub = Vec::new();
    for s in &tops {
        if rng.gen_bool(0.25) {
            let drop = rng.gen_range(0..s.len());
            let mut f = s.clone();
            f.remove(drop);
            sub.push(f);
        }
    }
    if rng.gen_bool(0.3) {
        sub.push(vec![verts[0]]);
    }
    let closed = SimplicialPair::new(n_vertices, &tops, &[]).unwrap();
    let sub: Vec<Vec<usize>> = sub.into_iter().filter(|s| closed.contains(s)).collect();
    SimplicialPair::new(n_vertices, &tops, &sub).unwrap()
}

/// A random nonzero class in the lowest degree that has one.
pub fn some_class<R: Rng>(p: &SimplicialPair, rng: &mut R) -> Option<HomologyClass> {
    for k in 0..=p.dim().min(1) {
        let h = homology(p, k);
        if h.rank() == 0 {
            continue;
        }
        let mut rep = BitVec::zeros(p.rel_count(k));
        let mut any = false;
        for r in h.representatives() {
            if rng.gen_bool(0.5) {
                rep.xor_assign(r);
                any = true;
            }
        }
        if !any {
            rep = h.representatives()[0].clone();
        }
        return Some(HomologyClass::new(k, rep));
    }
    None
}

/// A source pair with a class, and a weakly monotone map into a target built
/// around its image.
pub fn naturality_instance<R: Rng>(rng: &mut R) -> Option<(SimplicialPair, SimplicialPair, Vec<usize>, HomologyClass)> {
    if rng.gen_bool(0.5) {
        return cycle_wrap(rng);
    }
    let n = rng.gen_range(3..=5);
    let x = random_pair(rng, n, 4);
    if x.total_count() > 40 || x.dim() > 2 {
        return None;
    }
    let alpha = some_class(&x, rng)?;
    let m = rng.gen_range(2..=4);
    let mut fv: Vec<usize> = (0..n).map(|_| rng.gen_range(0..m)).collect();
    fv.sort_unstable();
    let image = |s: &[usize]| {
        let mut t: Vec<usize> = s.iter().map(|&v| fv[v]).collect();
        t.dedup();
        t
    };
    let mut tops: Vec<Vec<usize>> = (0..x.count_dims()).flat_map(|k| x.simplices(k).iter().map(|s| image(s))).collect();
    if rng.gen_bool(0.5) {
        let a = rng.gen_range(0..m);
        let b = rng.gen_range(0..m);
        if a != b {
            tops.push(vec![a.min(b), a.max(b)]);
        }
    }
    let sub: Vec<Vec<usize>> = (0..x.count_dims())
        .flat_map(|k| x.simplices(k).iter().filter(|s| x.simplex_in_sub(s)).map(|s| image(s)))
        .collect();
    let y = SimplicialPair::new(m, &tops, &sub).ok()?;
    if y.total_count() > 40 {
        return None;
    }
    Some((x, y, fv, alpha))
}

pub fn cycle(n: usize) -> Vec<Vec<usize>> {
    (0..n).map(|i| if i + 1 < n { vec![i, i + 1] } else { vec![0, n - 1] }).collect()
}

/// A cycle wrapped monotonically once around a shorter cycle, so the
/// fundamental class goes to the fundamental class.
pub fn cycle_wrap<R: Rng>(rng: &mut R) -> Option<(SimplicialPair, SimplicialPair, Vec<usize>, HomologyClass)> {
    let m = rng.gen_range(3..=4);
    let n = rng.gen_range(m..=6);
    let mut fv: Vec<usize> = (0..m).chain((m..n).map(|_| rng.gen_range(0..m))).collect();
    fv.sort_unstable();
    let x = SimplicialPair::new(n, &cycle(n), &[]).ok()?;
    let y = SimplicialPair::new(m, &cycle(m), &[]).ok()?;
    let alpha = HomologyClass::new(1, homology(&x, 1).representatives()[0].clone());
    Some((x, y, fv, alpha))
}

/// `(f_* α)^s` against `f^s_*(α^s)` with cellular-star neighborhoods.
/// Returns whether they agree and whether the square is nonzero.
pub fn check_naturality(x: &SimplicialPair, y: &SimplicialPair, fv: Vec<usize>, alpha: &HomologyClass) -> (bool, bool) {
    let f = SimplicialMap::new(x, y, fv).unwrap();
    let k = alpha.degree;
    let (sx, sy) = (SymSquarePair::new(x), SymSquarePair::new(y));
    let (ux, uy) = (DiagonalNeighborhood::cellular_star(&sx), DiagonalNeighborhood::cellular_star(&sy));
    let (px, a_s) = square_on(&sx, &ux, k, &x.chain_simplices(k, &alpha.rep)).unwrap();
    let pushed = f.push_chain(k, &alpha.rep);
    let (py, b_s) = square_on(&sy, &uy, k, &y.chain_simplices(k, &pushed)).unwrap();
    let g = induced_sym_map(&f, &sx, &sy).unwrap().on(&px, &py).unwrap();
    let lhs = g.push_chain(2 * k, &a_s.rep);
    (homologous(&py, 2 * k, &lhs, &b_s.rep), !is_boundary(&py, 2 * k, &b_s.rep))
}

fn faces(s: &[usize]) -> Vec<Simplex> {
    (1..1u32 << s.len())
        .map(|mask| s.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &v)| v).collect())
        .collect()
}

/// `Y` = faces of simplices meeting the vertex set `s`, `B` = simplices of
/// `Y` missing `s` or lying in the sub. The open part is the open star of
/// `s` minus the sub, so the target is admissible.
pub fn star_target(p: &SimplicialPair, s: &[usize]) -> Subpair {
    let meets = |t: &[usize]| t.iter().any(|v| s.contains(v));
    let mut y: HashSet<Simplex> = HashSet::new();
    for k in 0..p.count_dims() {
        for t in p.simplices(k).iter().filter(|t| meets(t)) {
            y.extend(faces(t));
        }
    }
    Subpair::from_predicates(p, |t| y.contains(t), |t| y.contains(t) && (!meets(t) || p.simplex_in_sub(t)))
}

/// Restriction of the fundamental class of `w` to the star of `s` equals
/// the fundamental class of the star relative to its frontier, and is nonzero.
pub fn check_fundamental_restriction(w: &SimplicialPair, s: &[usize]) -> bool {
    let fw = fundamental_class(w).unwrap();
    let r = restrict(w, &fw, &star_target(w, s)).unwrap();
    let Ok(fv) = fundamental_class(&r.pair) else { return false };
    let m = fw.degree;
    r.class.degree == m && homologous(&r.pair, m, &r.class.rep, &fv.rep) && !is_boundary(&r.pair, m, &fv.rep)
}

/// `(α|(Y, B))^s` against `α^s|(Y, B)^s` for the star target of `s`, with
/// `U` on the restricted square taken as the preimage of the cellular star.
/// Returns whether they agree and whether the restricted square is nonzero.
pub fn check_square_restriction(x: &SimplicialPair, alpha: &HomologyClass, s: &[usize]) -> (bool, bool) {
    let k = alpha.degree;
    let target = star_target(x, s);
    let r = restrict(x, alpha, &target).unwrap();

    // The quotient does not depend on the subs, so the inclusion of squares
    // is computed on the underlying complexes.
    let (ya, xa) = (r.pair.absolute(), x.absolute());
    let incl = SimplicialMap::new(&ya, &xa, r.vertices.clone()).unwrap();
    let (sya, sxa) = (SymSquarePair::new(&ya), SymSquarePair::new(&xa));
    let iota = induced_sym_map(&incl, &sya, &sxa).unwrap();
    let iota = iota.vertex_map();
    let (sy, sx) = (SymSquarePair::new(&r.pair), SymSquarePair::new(x));
    for d in 0..sy.quotient.count_dims() {
        assert_eq!(sy.quotient.simplices(d), sya.quotient.simplices(d));
    }
    for d in 0..sx.quotient.count_dims() {
        assert_eq!(sx.quotient.simplices(d), sxa.quotient.simplices(d));
    }
    let image = |t: &[usize]| {
        let mut u: Simplex = t.iter().map(|&q| iota[q]).collect();
        u.sort_unstable();
        u
    };

    let ux = DiagonalNeighborhood::cellular_star(&sx);
    let (px, a_s) = square_on(&sx, &ux, k, &x.chain_simplices(k, &alpha.rep)).unwrap();
    let pulled: Vec<Simplex> = (0..sy.quotient.count_dims())
        .flat_map(|d| sy.quotient.simplices(d).iter())
        .filter(|t| ux.contains(&image(t)))
        .cloned()
        .collect();
    let uy = DiagonalNeighborhood::from_simplices(&sy, &pulled).unwrap();
    let (py, lhs) = square_on(&sy, &uy, k, &r.pair.chain_simplices(k, &r.class.rep)).unwrap();

    let in_y = |c: &Simplex| target.in_y(c);
    let in_b = |c: &Simplex| target.in_b(c);
    let sq_target = Subpair::from_predicates(
        &px,
        |t| {
            let (a, b) = sx.carrier(t);
            in_y(&a) && in_y(&b)
        },
        |t| {
            let (a, b) = sx.carrier(t);
            in_y(&a) && in_y(&b) && (in_b(&a) || in_b(&b) || px.simplex_in_sub(t))
        },
    );
    let r2 = restrict(&px, &a_s, &sq_target).unwrap();
    let verts = iota
        .iter()
        .map(|q| r2.vertices.binary_search(q).expect("square of Y lands in (Y, B)^s"))
        .collect();
    let j = SimplicialMap::new(&py, &r2.pair, verts).unwrap();
    let pushed = j.push_chain(2 * k, &lhs.rep);
    (
        homologous(&r2.pair, 2 * k, &pushed, &r2.class.rep),
        !is_boundary(&py, 2 * k, &lhs.rep),
    )
}

/// A graph on `n` vertices containing the cycle `0..n`, with a few chords
/// and possibly a vertex or an edge in the sub.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize) -> SimplicialPair {
    let mut edges = cycle(n);
    for _ in 0..rng.gen_range(0..=2) {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let e = vec![a.min(b), a.max(b)];
        if a != b && !edges.contains(&e) {
            edges.push(e);
        }
    }
    let sub = match rng.gen_range(0..3) {
        0 => vec![],
        1 => vec![vec![rng.gen_range(0..n)]],
        _ => vec![edges[rng.gen_range(0..edges.len())].clone()],
    };
    SimplicialPair::new(n, &edges, &sub).unwrap()
}
