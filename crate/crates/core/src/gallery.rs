//! Explicit flat stable points for the standard example families.
//!
//! Randomized generators use `ChaCha8Rng::seed_from_u64(seed)`.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{rat, RMatrix, Rational};
use crate::quiver::{DimVector, Quiver};
use crate::rep::{FramedRep, ParabolicPoint};

/// Weakly decreasing positive parts. Cell `(a, b)` sits in row `b`, column `a`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::input("partition parts must be positive"));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::input("partition parts must be weakly decreasing"));
        }
        Ok(Partition(parts))
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn contains(&self, (a, b): (usize, usize)) -> bool {
        self.0.get(b).is_some_and(|&p| a < p)
    }

    /// Cells ordered by `(b, a)`.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        self.0
            .iter()
            .enumerate()
            .flat_map(|(b, &p)| (0..p).map(move |a| (a, b)))
            .collect()
    }

    pub fn cell_index(&self, cell: (usize, usize)) -> Option<usize> {
        if !self.contains(cell) {
            return None;
        }
        Some(self.0[..cell.1].iter().sum::<usize>() + cell.0)
    }

    /// Cells with neither `(a+1, b)` nor `(a, b+1)` in the diagram.
    pub fn corners(&self) -> Vec<(usize, usize)> {
        self.cells()
            .into_iter()
            .filter(|&(a, b)| !self.contains((a + 1, b)) && !self.contains((a, b + 1)))
            .collect()
    }

    /// All partitions of `n`, parts in lexicographically decreasing order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                go(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// `"2,1"`; the empty string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Partition(Vec::new()));
        }
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::input(format!("bad partition part `{p}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn one() -> Rational {
    rat(1)
}

/// Monomial-ideal fixed point of the Jordan quiver with `f = 1`: `X` moves a
/// cell right, `Y` moves it up, `i` hits `(0, 0)`, `j = 0`.
pub fn hilb_fixed_point(lambda: &Partition) -> FramedRep {
    let q = Quiver::jordan();
    let n = lambda.size();
    let mut x = RMatrix::zeros(n, n);
    let mut y = RMatrix::zeros(n, n);
    for (c, &(a, b)) in lambda.cells().iter().enumerate() {
        if let Some(r) = lambda.cell_index((a + 1, b)) {
            x.set(r, c, one());
        }
        if let Some(r) = lambda.cell_index((a, b + 1)) {
            y.set(r, c, one());
        }
    }
    let mut i = RMatrix::zeros(n, 1);
    if n > 0 {
        i.set(0, 0, one());
    }
    FramedRep::new(
        q,
        DimVector::new(vec![n as i64]).expect("non-negative"),
        DimVector::new(vec![1]).expect("non-negative"),
        vec![x],
        vec![y],
        vec![i],
        vec![RMatrix::zeros(1, n)],
    )
    .expect("shapes agree")
}

/// The monomial point with a flag spanned by the given corners, one corner per step.
pub fn hilb_corner_flag(lambda: &Partition, corners: &[(usize, usize)]) -> Result<ParabolicPoint> {
    let rep = hilb_fixed_point(lambda);
    let n = lambda.size();
    let all = lambda.corners();
    let mut seen = HashSet::new();
    let mut cols = Vec::new();
    let mut flag = Vec::new();
    for &c in corners {
        if !all.contains(&c) {
            return Err(Error::input(format!("({}, {}) is not a corner of {lambda}", c.0, c.1)));
        }
        if !seen.insert(c) {
            return Err(Error::input("corners in a flag must be distinct"));
        }
        let idx = lambda.cell_index(c).expect("corner is a cell");
        cols.push(RMatrix::unit_column(n, idx).column(0));
        flag.push(RMatrix::from_columns(&cols, n)?);
    }
    ParabolicPoint::new(rep, vec![flag])
}

/// Diagonal `X, Y` on distinct points, `i` all ones, `j = 0`.
pub fn hilb_distinct_points(points: &[(Rational, Rational)]) -> Result<FramedRep> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p) {
            return Err(Error::input(format!("repeated point ({}, {})", p.0, p.1)));
        }
    }
    let n = points.len();
    let mut x = RMatrix::zeros(n, n);
    let mut y = RMatrix::zeros(n, n);
    for (k, (px, py)) in points.iter().enumerate() {
        x.set(k, k, px.clone());
        y.set(k, k, py.clone());
    }
    let ones = vec![one(); n];
    FramedRep::new(
        Quiver::jordan(),
        DimVector::new(vec![n as i64])?,
        DimVector::new(vec![1])?,
        vec![x],
        vec![y],
        vec![RMatrix::from_vec(n, 1, ones)?],
        vec![RMatrix::zeros(1, n)],
    )
}

/// A₁ point in stratum `r = k`: `i = [I_d | 0]`, `j` sends `e_{k+m}` to
/// `e_{d+m}`, flag `K = ⟨e_0, …, e_{k-1}⟩` (omitted when `k = 0`).
pub fn a1_point(d: usize, f: usize, k: usize) -> Result<ParabolicPoint> {
    if !(k <= d && d <= f && 2 * d <= f + k) {
        return Err(Error::input(format!(
            "a1 point needs max(0, 2d-f) <= k <= d <= f, got d={d} f={f} k={k}"
        )));
    }
    let mut i = RMatrix::zeros(d, f);
    for m in 0..d {
        i.set(m, m, one());
    }
    let mut j = RMatrix::zeros(f, d);
    for m in 0..d - k {
        j.set(d + m, k + m, one());
    }
    let rep = FramedRep::new(
        Quiver::a1(),
        DimVector::new(vec![d as i64])?,
        DimVector::new(vec![f as i64])?,
        Vec::new(),
        Vec::new(),
        vec![i],
        vec![j],
    )?;
    let flag = if k == 0 {
        Vec::new()
    } else {
        let cols: Vec<Vec<Rational>> = (0..k).map(|m| RMatrix::unit_column(d, m).column(0)).collect();
        vec![RMatrix::from_columns(&cols, d)?]
    };
    ParabolicPoint::new(rep, vec![flag])
}

fn projection(rows: usize, cols: usize) -> RMatrix {
    let mut p = RMatrix::zeros(rows, cols);
    for m in 0..rows.min(cols) {
        p.set(m, m, one());
    }
    p
}

/// Equioriented Aₙ with framing `f` at the first vertex, `i` and every `A`
/// coordinate projections, `B = 0`, `j = 0`.
pub fn an_flag_point(d: &[usize], f: usize) -> Result<FramedRep> {
    let n = d.len();
    if n == 0 {
        return Err(Error::input("need at least one vertex"));
    }
    if d[0] > f || d.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::input("an point needs f >= d1 >= ... >= dn"));
    }
    let q = Quiver::path(n);
    let mut fv = vec![0i64; n];
    fv[0] = f as i64;
    let a: Vec<RMatrix> = (1..n).map(|m| projection(d[m], d[m - 1])).collect();
    let b: Vec<RMatrix> = (1..n).map(|m| RMatrix::zeros(d[m - 1], d[m])).collect();
    let i: Vec<RMatrix> = (0..n).map(|v| projection(d[v], if v == 0 { f } else { 0 })).collect();
    let j: Vec<RMatrix> = (0..n)
        .map(|v| RMatrix::zeros(if v == 0 { f } else { 0 }, d[v]))
        .collect();
    FramedRep::new(
        q,
        DimVector::new(d.iter().map(|&x| x as i64).collect())?,
        DimVector::new(fv)?,
        a,
        b,
        i,
        j,
    )
}

/// Families accepted by [`random_gallery_point`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    HilbMonomial,
    HilbDistinct,
    A1,
    An,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::HilbMonomial, Family::HilbDistinct, Family::A1, Family::An];

    pub fn name(self) -> &'static str {
        match self {
            Family::HilbMonomial => "hilb_monomial",
            Family::HilbDistinct => "hilb_distinct",
            Family::A1 => "a1",
            Family::An => "an",
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::input(format!("unknown family `{s}`")))
    }
}

fn random_partition(rng: &mut ChaCha8Rng, max: usize) -> Partition {
    let mut rest = rng.gen_range(0..=max);
    let mut parts = Vec::new();
    while rest > 0 {
        let p = rng.gen_range(1..=rest);
        parts.push(p);
        rest -= p;
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    Partition(parts)
}

/// A seeded sample from a family, always a valid point; the flag may be empty.
///
/// Size caps: `|λ| ≤ 8`; at most 6 distinct points with coordinates in
/// `[-3, 3]`; `f ≤ 8` for A₁; at most 4 vertices with `f ≤ 6` for Aₙ.
pub fn random_gallery_point(family: Family, seed: u64) -> Result<ParabolicPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        Family::HilbMonomial => {
            let lambda = random_partition(&mut rng, 8);
            let mut corners = lambda.corners();
            corners.shuffle(&mut rng);
            let k = rng.gen_range(0..=corners.len());
            hilb_corner_flag(&lambda, &corners[..k])
        }
        Family::HilbDistinct => {
            let n = rng.gen_range(0..=6);
            let mut pts: Vec<(i64, i64)> = Vec::new();
            while pts.len() < n {
                let p = (rng.gen_range(-3..=3), rng.gen_range(-3..=3));
                if !pts.contains(&p) {
                    pts.push(p);
                }
            }
            let pts: Vec<(Rational, Rational)> = pts.iter().map(|&(x, y)| (rat(x), rat(y))).collect();
            let rep = hilb_distinct_points(&pts)?;
            let origin = pts
                .iter()
                .position(|(x, y)| num::Zero::is_zero(x) && num::Zero::is_zero(y));
            let flag = match origin {
                Some(o) if rng.gen_bool(0.5) => vec![RMatrix::unit_column(n, o)],
                _ => Vec::new(),
            };
            ParabolicPoint::new(rep, vec![flag])
        }
        Family::A1 => {
            let f: usize = rng.gen_range(0..=8);
            let d = rng.gen_range(0..=f);
            let k = rng.gen_range((2 * d).saturating_sub(f)..=d);
            a1_point(d, f, k)
        }
        Family::An => {
            let n = rng.gen_range(1..=4);
            let f = rng.gen_range(0..=6);
            let mut d = Vec::with_capacity(n);
            let mut cap = f;
            for _ in 0..n {
                let x = rng.gen_range(0..=cap);
                d.push(x);
                cap = x;
            }
            let rep = an_flag_point(&d, f)?;
            // the kernel at v is spanned by the trailing coordinates e_{d_{v+1}}, ...
            let mut flags = Vec::with_capacity(n);
            for v in 0..n {
                let next = d.get(v + 1).copied().unwrap_or(0);
                let r = d[v] - next;
                let k = rng.gen_range(0..=r);
                if k == 0 {
                    flags.push(Vec::new());
                } else {
                    let cols: Vec<Vec<Rational>> = (next..next + k)
                        .map(|m| RMatrix::unit_column(d[v], m).column(0))
                        .collect();
                    flags.push(vec![RMatrix::from_columns(&cols, d[v])?]);
                }
            }
            ParabolicPoint::new(rep, flags)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn partition_basics() {
        let l = part("2,1");
        assert_eq!(l.size(), 3);
        assert_eq!(l.cells(), vec![(0, 0), (1, 0), (0, 1)]);
        assert_eq!(l.corners(), vec![(1, 0), (0, 1)]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert!(Partition::new(vec![0]).is_err());
        assert_eq!(part("").size(), 0);
        assert_eq!(Partition::all(4).len(), 5);
        assert_eq!(Partition::all(8).len(), 22);
        assert_eq!(Partition::all(0), vec![part("")]);
    }

    #[test]
    fn hilb_examples() {
        let p = hilb_fixed_point(&part("1"));
        assert_eq!(p.d.dim(0), 1);
        assert!(p.a[0].is_zero() && p.b[0].is_zero());
        assert_eq!(p.hom_dim(0).unwrap(), 1);

        let p = hilb_fixed_point(&part("2,1"));
        assert_eq!(p.d.dim(0), 3);
        assert!(p.is_flat().unwrap() && p.is_stable().unwrap());
        assert_eq!(p.hom_dim(0).unwrap(), 2);

        let p = hilb_fixed_point(&part(""));
        assert_eq!(p.d.dim(0), 0);
        assert!(p.validate().unwrap().ok());
    }

    #[test]
    fn distinct_points() {
        let pts: Vec<(Rational, Rational)> = [(1, 2), (3, -1), (0, 5)]
            .iter()
            .map(|&(x, y)| (rat(x), rat(y)))
            .collect();
        let p = hilb_distinct_points(&pts).unwrap();
        assert!(p.validate().unwrap().ok());
        assert_eq!(p.hom_dim(0).unwrap(), 0);

        let with_origin = vec![(rat(0), rat(0)), (rat(1), rat(0))];
        let p = hilb_distinct_points(&with_origin).unwrap();
        assert!(p.validate().unwrap().ok());
        assert_eq!(p.hom_dim(0).unwrap(), 1);

        assert_eq!(hilb_distinct_points(&[]).unwrap().d.dim(0), 0);
        let dup = vec![(rat(1), rat(1)), (rat(1), rat(1))];
        assert!(hilb_distinct_points(&dup).is_err());
    }

    #[test]
    fn a1_examples() {
        let p = a1_point(2, 5, 1).unwrap();
        assert!(p.validate().unwrap().ok());
        assert_eq!(p.rep.hom_dim(0).unwrap(), 1);

        let p = a1_point(3, 5, 3).unwrap();
        assert!(p.rep.j[0].is_zero());

        let p = a1_point(2, 3, 1).unwrap();
        assert!(p.validate().unwrap().ok());
        assert_eq!(p.rep.hom_dim(0).unwrap(), 1);

        assert!(a1_point(2, 3, 0).is_err());
        assert!(a1_point(4, 3, 4).is_err());
    }

    #[test]
    fn an_examples() {
        let p = an_flag_point(&[3, 1], 4).unwrap();
        assert!(p.validate().unwrap().ok());
        let (r, warn) = p.bn_stratum_of().unwrap();
        assert!(warn.is_empty());
        assert_eq!(r.as_slice(), &[2, 1]);

        let single = an_flag_point(&[2], 4).unwrap();
        let a1 = a1_point(2, 4, 2).unwrap().rep;
        assert_eq!(single.i, a1.i);
        assert_eq!(single.j, a1.j);

        let empty = an_flag_point(&[0, 0], 0).unwrap();
        assert!(empty.validate().unwrap().ok());
        assert!(an_flag_point(&[1, 2], 3).is_err());
        assert!(an_flag_point(&[4], 3).is_err());
    }

    #[test]
    fn random_points_are_valid_and_deterministic() {
        for fam in Family::ALL {
            for seed in 0..25 {
                let p = random_gallery_point(fam, seed).unwrap();
                assert!(p.validate().unwrap().ok(), "{} seed {seed}", fam.name());
                assert_eq!(p, random_gallery_point(fam, seed).unwrap());
            }
        }
        assert_eq!("an".parse::<Family>().unwrap(), Family::An);
        assert!("b2".parse::<Family>().is_err());
    }
}
