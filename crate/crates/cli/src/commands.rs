//! One function per subcommand.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;
use serde_json::json;
use z2square::bu_family::{solution_svg, solve_bu, spanning_check, FamilyFile, SampledFamily, SphereGrid, Status, WModel};
use z2square::corr_lab::{
    gamma_close, gamma_far, spanning_empirical, Construction, EmpiricalStatus, HullCorrespondence, InstanceFile, PayoffGrid,
};
use z2square::spherical::{chord_solutions, chord_span_check, scene_svg, ChordScene, SceneFile};
use z2square::sym_square::{sym_square_class, NeighborhoodRule, SquareOptions};
use z2square::z2_chain::{
    betti_numbers, fundamental_class, homology as group, homology_report, is_h_essential, HomologyClass, RawComplex, SimplicialMap,
    SimplicialPair,
};
use z2square::Error;

use crate::report::{parse_json, read_input, to_value, write_file, CliError, Outcome, HYPOTHESIS, INCONCLUSIVE, OK};
use crate::{Feature, RunConfig};

fn no_hypotheses() -> serde_json::Value {
    json!({ "holds": true, "checks": [] })
}

/// A small random 2-dimensional pair: triangles on a few vertices, with a
/// few of their edges as the subcomplex.
pub fn random_pair(seed: u64) -> RawComplex {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(4..=8);
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for _ in 0..rng.gen_range(2..=10) {
        let mut t: Vec<usize> = rand::seq::index::sample(&mut rng, n, 3).into_vec();
        t.sort_unstable();
        if !simplices.contains(&t) {
            simplices.push(t);
        }
    }
    let mut sub = Vec::new();
    for t in simplices.clone() {
        if rng.gen_bool(0.3) {
            sub.push(simplices.len());
            simplices.push(vec![t[0], t[1]]);
        }
    }
    RawComplex { vertices: n, simplices, sub }
}

pub fn homology(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (source, raw) = match (&cfg.input, cfg.seed) {
        (Some(_), _) => {
            let (name, text) = read_input(cfg)?;
            (name.clone(), parse_json::<RawComplex>(&name, &text)?)
        }
        (None, Some(seed)) => (format!("random pair, seed {seed}"), random_pair(seed)),
        (None, None) => return Err(CliError::input("homology needs --input or --seed")),
    };
    let p = SimplicialPair::from_raw(&raw)?;
    let ranks: BTreeMap<usize, usize> = betti_numbers(&p).into_iter().enumerate().collect();
    let counts: Vec<usize> = (0..p.count_dims()).map(|k| p.count(k)).collect();
    Ok(Outcome {
        hypotheses: no_hypotheses(),
        result: json!({
            "source": source,
            "pair": if cfg.input.is_none() { to_value(&raw) } else { serde_json::Value::Null },
            "simplex_counts": counts,
            "ranks": ranks,
            "relative_euler_characteristic": p.relative_euler_characteristic(),
            "degrees": homology_report(&p),
        }),
        code: OK,
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct EssentialInput {
    source: RawComplex,
    target: RawComplex,
    map: Vec<usize>,
    #[serde(default)]
    degree: Option<usize>,
}

pub fn essential(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (name, text) = read_input(cfg)?;
    let input: EssentialInput = parse_json(&name, &text)?;
    let src = SimplicialPair::from_raw(&input.source)?;
    let tgt = SimplicialPair::from_raw(&input.target)?;
    let f = SimplicialMap::new(&src, &tgt, input.map)?;
    let d = input.degree.unwrap_or(tgt.dim());
    let fundamental = fundamental_class(&tgt).is_ok() && tgt.dim() == d;
    let verdict = is_h_essential(&f, d);
    Ok(Outcome {
        hypotheses: json!({
            "holds": fundamental,
            "target_fundamental_class": fundamental,
            "source_sub_is_preimage": f.sub_is_preimage(),
        }),
        result: to_value(&verdict),
        code: if fundamental { OK } else { HYPOTHESIS },
    })
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct SquareInput {
    pair: RawComplex,
    /// Simplices of a relative cycle; the fundamental class when omitted.
    #[serde(default)]
    class: Option<Vec<Vec<usize>>>,
    /// `cellular_star` (default), `diag_only`, `whole` or `rings:<r>`.
    #[serde(default)]
    rule: Option<String>,
    #[serde(default)]
    refine: Option<usize>,
    #[serde(default)]
    cap: Option<usize>,
}

fn parse_rule(s: &str) -> Result<NeighborhoodRule, CliError> {
    Ok(match s {
        "cellular_star" => NeighborhoodRule::CellularStar,
        "diag_only" => NeighborhoodRule::DiagOnly,
        "whole" => NeighborhoodRule::Whole,
        _ => match s.strip_prefix("rings:").and_then(|r| r.parse().ok()) {
            Some(r) => NeighborhoodRule::Rings(r),
            None => return Err(CliError::input(format!("unknown neighborhood rule {s:?}"))),
        },
    })
}

pub fn symsquare(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (name, text) = read_input(cfg)?;
    let input: SquareInput = parse_json(&name, &text)?;
    let p = SimplicialPair::from_raw(&input.pair)?;
    let alpha = match &input.class {
        Some(simplices) => {
            let k = simplices.first().map_or(0, |s| s.len().saturating_sub(1));
            if simplices.iter().any(|s| s.len() != k + 1) {
                return Err(CliError::input("class simplices must share one dimension"));
            }
            let canon: Vec<Vec<usize>> = simplices
                .iter()
                .map(|s| {
                    let mut s = s.clone();
                    s.sort_unstable();
                    s
                })
                .collect();
            HomologyClass::new(k, p.chain_from_simplices(k, &canon)?)
        }
        None => match fundamental_class(&p) {
            Ok(c) => c,
            Err(e) => {
                return Ok(Outcome {
                    hypotheses: json!({ "holds": false, "fundamental_class": false, "detail": e.to_string() }),
                    result: serde_json::Value::Null,
                    code: HYPOTHESIS,
                })
            }
        },
    };
    let mut opts = SquareOptions::default();
    if let Some(r) = &input.rule {
        opts.rule = parse_rule(r)?;
    }
    opts.refine = cfg.res.or(input.refine).unwrap_or(opts.refine);
    opts.cap = input.cap.unwrap_or(opts.cap).max(opts.refine);
    let k = alpha.degree;
    match sym_square_class(&p, &alpha, opts) {
        Ok(sq) => {
            let rank = group(&sq.pair, 2 * k).rank();
            Ok(Outcome {
                hypotheses: json!({ "holds": true, "relative_cycle": true, "small": true }),
                result: json!({
                    "degree": k,
                    "square_degree": 2 * k,
                    "subdivisions": sq.level,
                    "neighborhood_simplices": sq.neighborhood.len(),
                    "square_simplices": sq.simplices().len(),
                    "square_nonzero": !sq.is_zero(),
                    "rank_in_square_degree": rank,
                    "model": sq.space.to_json(),
                }),
                code: OK,
            })
        }
        Err(Error::NotACycle(_)) => Ok(Outcome {
            hypotheses: json!({ "holds": false, "relative_cycle": false }),
            result: serde_json::Value::Null,
            code: HYPOTHESIS,
        }),
        Err(Error::SubdivisionCap(cap)) => Ok(Outcome {
            hypotheses: json!({ "holds": true, "relative_cycle": true, "small": false }),
            result: json!({ "subdivisions_tried": cap }),
            code: INCONCLUSIVE,
        }),
        Err(e) => Err(e.into()),
    }
}

fn load_family(cfg: &RunConfig) -> Result<SampledFamily, CliError> {
    let (name, text) = read_input(cfg)?;
    let mut fam = if name.ends_with(".csv") {
        let w: WModel = match &cfg.w_model {
            Some(s) => parse_json("--w-model", s)?,
            None => return Err(CliError::input("CSV input needs --w-model")),
        };
        let res = cfg.res.ok_or_else(|| CliError::input("CSV input needs --res (sphere resolution)"))?;
        let sphere = match cfg.feature {
            #[cfg(feature = "n2")]
            Some(Feature::N2) => SphereGrid::Cube { res },
            #[cfg(not(feature = "n2"))]
            Some(Feature::N2) => return Err(CliError::input("built without two-sphere support")),
            None => SphereGrid::Circle { res },
        };
        SampledFamily::from_csv(&text, w, sphere, None).map_err(|e| CliError::input(format!("{name}: {e}")))?
    } else {
        parse_json::<FamilyFile>(&name, &text)?.into_family()?
    };
    if let Some(eps) = cfg.eps {
        fam.tol = Some(eps);
    }
    Ok(fam)
}

pub fn bu_solve(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let fam = load_family(cfg)?;
    let sol = solve_bu(&fam)?;
    let report = spanning_check(&sol, &fam);
    if let Some(p) = &cfg.svg {
        write_file(p, &solution_svg(&fam, &sol))?;
    }
    let code = if !report.hypothesis.holds {
        HYPOTHESIS
    } else if report.status == Status::Inconclusive {
        INCONCLUSIVE
    } else {
        OK
    };
    Ok(Outcome {
        hypotheses: to_value(&report.hypothesis),
        result: json!({
            "flagged_cells": sol.cells.len(),
            "components": sol.components.len(),
            "spanning": report,
        }),
        code,
    })
}

pub fn chords(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (name, text) = read_input(cfg)?;
    let mut file: SceneFile = parse_json(&name, &text)?;
    if let Some(r) = cfg.res {
        file.dir_res = r;
    }
    if let Some(e) = cfg.eps {
        file.tol = e;
    }
    let scene = ChordScene::from_file(file)?;
    let (report, _, _) = chord_span_check(&scene)?;
    let (lo, hi) = scene.bbox();
    let mut samples = Vec::new();
    for fy in [0.25, 0.5, 0.75] {
        for fx in [0.25, 0.5, 0.75] {
            let w = [lo[0] + fx * (hi[0] - lo[0]), lo[1] + fy * (hi[1] - lo[1])];
            if scene.boundary.contains(w) && scene.boundary.distance(w) > 1e-9 {
                samples.extend(chord_solutions(&scene, w)?);
            }
        }
    }
    if let Some(p) = &cfg.svg {
        write_file(p, &scene_svg(&scene, &samples))?;
    }
    let code = if !report.hypothesis_holds {
        HYPOTHESIS
    } else if report.spanning.status == Status::Inconclusive {
        INCONCLUSIVE
    } else {
        OK
    };
    Ok(Outcome {
        hypotheses: json!({ "holds": report.hypothesis_holds, "loops": report.loops }),
        result: json!({ "report": report, "sample_chords": samples }),
        code,
    })
}

fn fiber_dump(g: &HullCorrespondence, grid: &PayoffGrid) -> serde_json::Value {
    g.fibers
        .iter()
        .map(|(y, hulls)| {
            json!({
                "y": y.iter().map(|&t| grid.value(t).to_string()).collect::<Vec<_>>(),
                "hulls": hulls.iter().map(|h| json!({
                    "vertices": h.vertices.iter().map(|v| v.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "tags": h.tags,
                })).collect::<Vec<_>>(),
            })
        })
        .collect()
}

pub fn corr(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (name, text) = read_input(cfg)?;
    let file: InstanceFile = parse_json(&name, &text)?;
    let inst = file.instance()?;
    let n = cfg.res.map_or(file.lattice_res(), |r| r as u32);
    if n == 0 {
        return Err(CliError::input("lattice resolution must be positive"));
    }
    let (hyp, g) = match file.construction {
        Construction::Far => (inst.far_hypotheses(), gamma_far(&inst)),
        Construction::Close => (inst.close_hypotheses(), gamma_close(&inst)?),
    };
    let verdict = spanning_empirical(&g, n);
    let code = if !hyp.holds {
        HYPOTHESIS
    } else if verdict.status == EmpiricalStatus::Inconclusive {
        INCONCLUSIVE
    } else {
        OK
    };
    Ok(Outcome {
        hypotheses: to_value(&hyp),
        result: json!({
            "construction": file.construction,
            "verdict": verdict,
            "nonempty_fibers": g.fibers.len(),
            "hulls": g.n_hulls(),
            "fibers": fiber_dump(&g, &inst.grid),
        }),
        code,
    })
}
