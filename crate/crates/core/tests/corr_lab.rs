mod common;

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use z2square::corr_lab::{convexify, q, FiniteCorrespondence, Q};

use common::corr::{compare, reference_instances};

fn random_corr<R: Rng>(rng: &mut R, k: usize, label: Vec<usize>, res: u32, n: usize) -> FiniteCorrespondence {
    let pts: Vec<(Vec<Q>, Vec<u32>)> = (0..n).map(|_| {
        // Random lattice strategy on the label.
        let den = 4i64;
        let mut left = den;
        let mut p = vec![q(0, 1); k];
        for (j, &l) in label.iter().enumerate() {
            let w = if j + 1 == label.len() { left } else { rng.gen_range(0..=left) };
            p[l] = q(w, den);
            left -= w;
        }
        let y = label.iter().map(|_| rng.gen_range(0..=res)).collect();
        (p, y)
    }).collect();
    FiniteCorrespondence::new(k, label, res, pts).unwrap()
}

#[test]
fn convexification_and_saturation_are_closures() {
    let mut rng = ChaCha8Rng::seed_from_u64(71);
    for trial in 0..60 {
        let k = 2 + trial % 2;
        let label: Vec<usize> = if trial % 3 == 0 { vec![0, 1] } else { (0..k).collect() };
        let res = rng.gen_range(1..=4);
        let (nf, ne) = (rng.gen_range(1..=5), rng.gen_range(1..=4));
        let f = random_corr(&mut rng, k, label.clone(), res, nf);
        let extra = random_corr(&mut rng, k, label.clone(), res, ne);
        let points: BTreeSet<(Vec<Q>, Vec<u32>)> = f.points.union(&extra.points).cloned().collect();
        let g = FiniteCorrespondence::new(k, label, res, points).unwrap();

        let (cf, cg) = (convexify(&f), convexify(&g));
        assert!(cf.convexify().same_set(&cf), "trial {trial}");
        assert!(cf.is_subset(&cg), "trial {trial}");
        let (sf, sg) = (f.saturate(), g.saturate());
        assert_eq!(sf.saturate(), sf, "trial {trial}");
        assert!(f.is_subset(&sf) && sf.is_subset(&sg), "trial {trial}");
    }
}

#[test]
fn two_state_constructions_match_the_reference() {
    let instances = reference_instances();
    let mut spanning = [0usize; 2];
    let far_holds = instances.iter().filter(|s| s.far_holds(s.res)).count();
    for (i, s) in instances.iter().enumerate() {
        for (j, far) in [true, false].into_iter().enumerate() {
            let c = compare(s, far);
            assert!(c.agrees(), "instance {i} far={far}: {c:?}\n{s:?}");
            spanning[j] += common::corr::connects(&s.gamma_points(far, s.res), s.res) as usize;
        }
    }
    // Both verdicts occur, and the far hypotheses are met on some inputs.
    assert!(far_holds >= 10, "far hypotheses hold on {far_holds} instances");
    for count in spanning {
        assert!(count > 10 && count < instances.len() - 10, "{spanning:?}");
    }
}
