//! Exact rationals and convex-hull membership.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let (n, d): (BigInt, BigInt) = (n.trim().parse().ok()?, d.trim().parse().ok()?);
        (!d.is_zero()).then(|| Q::new(n, d))
    } else if s.contains('.') || s.contains('e') || s.contains('E') {
        s.parse::<f64>().ok().and_then(Q::from_float)
    } else {
        s.parse::<BigInt>().ok().map(Q::from_integer)
    }
}

/// Serde adapter: a rational written as `"p/q"`, an integer, or a float
/// (converted exactly).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct QValue(pub Q);

impl Serialize for QValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for QValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            I(i64),
            F(f64),
            S(String),
        }
        let q = match Raw::deserialize(d)? {
            Raw::I(i) => Some(Q::from_integer(i.into())),
            Raw::F(f) => Q::from_float(f),
            Raw::S(s) => parse_q(&s),
        };
        q.map(QValue).ok_or_else(|| serde::de::Error::custom("not a rational number"))
    }
}

/// Solves `A λ = x` exactly. Returns `None` unless the solution is unique.
fn solve_unique(mut a: Vec<Vec<Q>>, mut x: Vec<Q>) -> Option<Vec<Q>> {
    let (rows, cols) = (a.len(), a.first().map_or(0, Vec::len));
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            return None;
        };
        a.swap(r, p);
        x.swap(r, p);
        let inv = a[r][c].recip();
        for j in c..cols {
            a[r][j] = &a[r][j] * &inv;
        }
        x[r] = &x[r] * &inv;
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..cols {
                    let t = &f * &a[r][j];
                    a[i][j] -= t;
                }
                let t = &f * &x[r];
                x[i] -= t;
            }
        }
        r += 1;
    }
    if x[r..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    Some(x[..cols].to_vec())
}

fn subsets(n: usize, size: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if cur.len() == size {
        return f(cur);
    }
    for i in start..n {
        cur.push(i);
        if subsets(n, size, i + 1, cur, f) {
            return true;
        }
        cur.pop();
    }
    false
}

/// Exact membership of `x` in the convex hull of `vertices`. By
/// Carathéodory it suffices to try affinely independent subsets of at most
/// `dim + 1` vertices for a nonnegative barycentric solution.
pub fn in_hull(x: &[Q], vertices: &[Vec<Q>]) -> bool {
    if vertices.iter().any(|v| v.as_slice() == x) {
        return true;
    }
    let dim = x.len();
    let max = vertices.len().min(dim + 1);
    for size in 2..=max {
        let found = subsets(vertices.len(), size, 0, &mut Vec::new(), &mut |idx| {
            let mut a: Vec<Vec<Q>> = (0..dim).map(|r| idx.iter().map(|&i| vertices[i][r].clone()).collect()).collect();
            a.push(vec![Q::one(); size]);
            let mut rhs = x.to_vec();
            rhs.push(Q::one());
            solve_unique(a, rhs).is_some_and(|l| l.iter().all(|v| !v.is_negative()))
        });
        if found {
            return true;
        }
    }
    false
}
