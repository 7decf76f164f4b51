//! Sampled families `F: W × S^n → R^m` and box clouds `Z ⊂ W × S^n × R^m`.

use serde::{Deserialize, Serialize};

use super::model::{SphereGrid, SphereModel, WModel};
use crate::error::{Error, Result};

/// An axis-aligned box of e-values.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EBox {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl EBox {
    pub fn point(e: Vec<f64>) -> Self {
        Self { lo: e.clone(), hi: e }
    }

    pub fn center(&self) -> Vec<f64> {
        self.lo.iter().zip(&self.hi).map(|(a, b)| 0.5 * (a + b)).collect()
    }

    /// Sup-norm gap between two boxes (0 when they overlap).
    pub fn distance(&self, other: &EBox) -> f64 {
        (0..self.lo.len())
            .map(|c| (self.lo[c] - other.hi[c]).max(other.lo[c] - self.hi[c]).max(0.0))
            .fold(0.0, f64::max)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Values {
    /// `data[(w * n_dirs + v) * m + c]`.
    Function(Vec<f64>),
    /// Boxes per `(w, v)` sample, `boxes[w * n_dirs + v]`.
    Boxes(Vec<Vec<EBox>>),
}

#[derive(Clone, Debug)]
pub struct SampledFamily {
    pub w: WModel,
    pub sphere: SphereGrid,
    pub m: usize,
    pub values: Values,
    /// Matching tolerance; `None` uses twice the Lipschitz estimate.
    pub tol: Option<f64>,
    model: SphereModel,
}

impl SampledFamily {
    pub fn new(w: WModel, sphere: SphereGrid, m: usize, values: Values, tol: Option<f64>) -> Result<Self> {
        w.validate()?;
        let model = sphere.model()?;
        let n = w.n_samples() * model.n_dirs();
        match &values {
            Values::Function(d) => {
                if d.len() != n * m {
                    return Err(Error::InvalidFamily(format!(
                        "expected {} values, got {}",
                        n * m,
                        d.len()
                    )));
                }
                if d.iter().any(|x| !x.is_finite()) {
                    return Err(Error::InvalidFamily("non-finite value".into()));
                }
            }
            Values::Boxes(b) => {
                if b.len() != n {
                    return Err(Error::InvalidFamily(format!("expected {n} box lists, got {}", b.len())));
                }
                let ok = b.iter().flatten().all(|x| {
                    x.lo.len() == m
                        && x.hi.len() == m
                        && x.lo.iter().zip(&x.hi).all(|(a, b)| a.is_finite() && b.is_finite() && a <= b)
                });
                if !ok {
                    return Err(Error::InvalidFamily("malformed box".into()));
                }
            }
        }
        if let Some(t) = tol {
            if !(t > 0.0 && t.is_finite()) {
                return Err(Error::InvalidFamily("tolerance must be positive".into()));
            }
        }
        Ok(Self {
            w,
            sphere,
            m,
            values,
            tol,
            model,
        })
    }

    /// Samples `f(w_position, direction)` on the grids.
    pub fn from_fn(
        w: WModel,
        sphere: SphereGrid,
        m: usize,
        f: impl Fn(&[f64], &[f64]) -> Vec<f64>,
    ) -> Result<Self> {
        w.validate()?;
        let model = sphere.model()?;
        let mut data = Vec::with_capacity(w.n_samples() * model.n_dirs() * m);
        for wi in 0..w.n_samples() {
            let pos = w.position(wi);
            for d in &model.dirs {
                let v = f(&pos, d);
                if v.len() != m {
                    return Err(Error::InvalidFamily("function returned the wrong arity".into()));
                }
                data.extend(v);
            }
        }
        Self::new(w, sphere, m, Values::Function(data), None)
    }

    pub fn sphere_model(&self) -> &SphereModel {
        &self.model
    }

    pub fn n_dirs(&self) -> usize {
        self.model.n_dirs()
    }

    pub fn is_function(&self) -> bool {
        matches!(self.values, Values::Function(_))
    }

    /// `F[w, v]` for function families.
    pub fn value(&self, w: usize, v: usize) -> &[f64] {
        match &self.values {
            Values::Function(d) => {
                let i = (w * self.n_dirs() + v) * self.m;
                &d[i..i + self.m]
            }
            Values::Boxes(_) => panic!("value() on a box cloud"),
        }
    }

    pub fn boxes(&self, w: usize, v: usize) -> &[EBox] {
        match &self.values {
            Values::Boxes(b) => &b[w * self.n_dirs() + v],
            Values::Function(_) => panic!("boxes() on a function family"),
        }
    }

    /// Pairs of adjacent samples: same direction and neighboring `w`, or
    /// same `w` and neighboring directions.
    fn adjacent_samples(&self) -> Vec<((usize, usize), (usize, usize))> {
        let mut out = Vec::new();
        let mut w_pairs = Vec::new();
        for c in self.w.cells() {
            for i in 0..c.len() {
                for j in i + 1..c.len() {
                    w_pairs.push((c[i].min(c[j]), c[i].max(c[j])));
                }
            }
        }
        w_pairs.sort_unstable();
        w_pairs.dedup();
        for &(a, b) in &w_pairs {
            for v in 0..self.n_dirs() {
                out.push(((a, v), (b, v)));
            }
        }
        for (u, v) in self.model.adjacent_pairs() {
            for w in 0..self.w.n_samples() {
                out.push(((w, u), (w, v)));
            }
        }
        out
    }

    /// Largest sup-norm change between adjacent samples. For box clouds the
    /// change is measured between box centers, nearest to nearest.
    pub fn lipschitz_estimate(&self) -> f64 {
        let pairs = self.adjacent_samples();
        match &self.values {
            Values::Function(_) => pairs
                .iter()
                .map(|&((w1, v1), (w2, v2))| sup_dist(self.value(w1, v1), self.value(w2, v2)))
                .fold(0.0, f64::max),
            Values::Boxes(_) => pairs
                .iter()
                .flat_map(|&((w1, v1), (w2, v2))| {
                    let (a, b) = (self.boxes(w1, v1), self.boxes(w2, v2));
                    a.iter().filter_map(move |x| {
                        b.iter().map(|y| sup_dist(&x.center(), &y.center())).reduce(f64::min)
                    })
                })
                .fold(0.0, f64::max),
        }
    }

    /// The matching tolerance in use.
    pub fn epsilon(&self) -> f64 {
        self.tol.unwrap_or_else(|| 2.0 * self.lipschitz_estimate())
    }
}

pub(crate) fn sup_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

/// `g[w, v] = F[w, v] − F[w, −v]`, odd in `v` exactly on the samples.
pub fn antipodal_difference(fam: &SampledFamily) -> Result<SampledFamily> {
    if !fam.is_function() {
        return Err(Error::InvalidFamily(
            "antipodal difference needs a function family; solve box clouds directly".into(),
        ));
    }
    let n = fam.n_dirs();
    let mut g = Vec::with_capacity(fam.w.n_samples() * n * fam.m);
    for w in 0..fam.w.n_samples() {
        for v in 0..n {
            let a = fam.value(w, v);
            let b = fam.value(w, fam.model.antipode[v]);
            g.extend(a.iter().zip(b).map(|(x, y)| x - y));
        }
    }
    SampledFamily::new(fam.w.clone(), fam.sphere, fam.m, Values::Function(g), fam.tol)
}

/// On-disk forms of a family.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FamilyFile {
    Function {
        w_model: WModel,
        sphere: SphereGrid,
        m: usize,
        values: Vec<f64>,
        #[serde(default)]
        tol: Option<f64>,
    },
    Boxes {
        w_model: WModel,
        sphere: SphereGrid,
        m: usize,
        boxes: Vec<BoxEntry>,
        #[serde(default)]
        tol: Option<f64>,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxEntry {
    pub w: usize,
    pub v: usize,
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
}

impl FamilyFile {
    pub fn into_family(self) -> Result<SampledFamily> {
        match self {
            FamilyFile::Function { w_model, sphere, m, values, tol } => {
                SampledFamily::new(w_model, sphere, m, Values::Function(values), tol)
            }
            FamilyFile::Boxes { w_model, sphere, m, boxes, tol } => {
                w_model.validate()?;
                let nd = sphere.model()?.n_dirs();
                let mut out = vec![Vec::new(); w_model.n_samples() * nd];
                for b in boxes {
                    if b.w >= w_model.n_samples() || b.v >= nd {
                        return Err(Error::InvalidFamily(format!("box at ({}, {}) out of range", b.w, b.v)));
                    }
                    out[b.w * nd + b.v].push(EBox { lo: b.lo, hi: b.hi });
                }
                SampledFamily::new(w_model, sphere, m, Values::Boxes(out), tol)
            }
        }
    }
}

impl SampledFamily {
    pub fn to_file(&self) -> FamilyFile {
        match &self.values {
            Values::Function(d) => FamilyFile::Function {
                w_model: self.w.clone(),
                sphere: self.sphere,
                m: self.m,
                values: d.clone(),
                tol: self.tol,
            },
            Values::Boxes(b) => {
                let nd = self.n_dirs();
                let boxes = b
                    .iter()
                    .enumerate()
                    .flat_map(|(i, list)| {
                        list.iter().map(move |x| BoxEntry {
                            w: i / nd,
                            v: i % nd,
                            lo: x.lo.clone(),
                            hi: x.hi.clone(),
                        })
                    })
                    .collect();
                FamilyFile::Boxes {
                    w_model: self.w.clone(),
                    sphere: self.sphere,
                    m: self.m,
                    boxes,
                    tol: self.tol,
                }
            }
        }
    }

    /// Reads `w_index,v_index,value_1,...,value_m` rows. Lines starting with
    /// `#` and a non-numeric header line are skipped. Every sample must appear.
    pub fn from_csv(text: &str, w: WModel, sphere: SphereGrid, tol: Option<f64>) -> Result<Self> {
        w.validate()?;
        let nd = sphere.model()?.n_dirs();
        let n = w.n_samples() * nd;
        let mut m = None;
        let mut rows: Vec<Option<Vec<f64>>> = vec![None; n];
        for (line_no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let parse_err = |what: &str| Error::InvalidFamily(format!("line {}: {what}", line_no + 1));
            let Ok(wi) = fields[0].parse::<usize>() else {
                if line_no == 0 {
                    continue;
                }
                return Err(parse_err("bad w index"));
            };
            let vi: usize = fields.get(1).and_then(|s| s.parse().ok()).ok_or_else(|| parse_err("bad v index"))?;
            let vals = fields[2..]
                .iter()
                .map(|s| s.parse::<f64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| parse_err("bad value"))?;
            if vals.is_empty() || *m.get_or_insert(vals.len()) != vals.len() {
                return Err(parse_err("inconsistent number of values"));
            }
            if wi >= w.n_samples() || vi >= nd {
                return Err(parse_err("sample index out of range"));
            }
            rows[wi * nd + vi] = Some(vals);
        }
        let m = m.ok_or_else(|| Error::InvalidFamily("no data rows".into()))?;
        let mut data = Vec::with_capacity(n * m);
        for (i, r) in rows.into_iter().enumerate() {
            let r = r.ok_or_else(|| Error::InvalidFamily(format!("missing sample ({}, {})", i / nd, i % nd)))?;
            data.extend(r);
        }
        Self::new(w, sphere, m, Values::Function(data), tol)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("w,v");
        for c in 0..self.m {
            out.push_str(&format!(",e{c}"));
        }
        out.push('\n');
        for w in 0..self.w.n_samples() {
            for v in 0..self.n_dirs() {
                out.push_str(&format!("{w},{v}"));
                for x in self.value(w, v) {
                    out.push_str(&format!(",{x}"));
                }
                out.push('\n');
            }
        }
        out
    }
}
