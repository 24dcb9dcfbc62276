//! Positive-root test for graphs with loops, and the nonemptiness decisions
//! built on it.
//!
//! The root test reflects at loop-free vertices while that lowers the height.
//! It stops in one of three ways: the vector leaves the positive cone (not a
//! root, unless it was a loop-free simple root), the support disconnects (not
//! a root), or no reflection lowers the height (fundamental region, imaginary).

use serde_json::{json, Value};

use crate::dims::{dim_bn_stratum, dim_nakajima, fiber_dim_pminus, preimage_dim_pminus};
use crate::error::{Error, Result};
use crate::quiver::{k0, DimVector, Quiver};

pub const INFINITY_LABEL: &str = "inf";

/// Default bound on the number of candidate strata visited by [`strata_table`].
pub const DEFAULT_STRATA_CAP: u128 = 1_000_000;

/// Undirected multigraph with loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGraph {
    labels: Vec<String>,
    /// Symmetric, zero diagonal.
    edges: Vec<Vec<i64>>,
    loops: Vec<i64>,
}

impl RootGraph {
    pub fn new(labels: Vec<String>, edges: Vec<Vec<i64>>, loops: Vec<i64>) -> Result<Self> {
        let n = labels.len();
        if edges.len() != n || loops.len() != n || edges.iter().any(|r| r.len() != n) {
            return Err(Error::input("edge matrix and loop list must match the vertex count"));
        }
        for v in 0..n {
            if edges[v][v] != 0 {
                return Err(Error::input("use the loop list for loops"));
            }
            if loops[v] < 0 {
                return Err(Error::input("negative loop count"));
            }
            for w in 0..n {
                if edges[v][w] != edges[w][v] || edges[v][w] < 0 {
                    return Err(Error::input("edge multiplicities must be symmetric and non-negative"));
                }
            }
        }
        Ok(RootGraph { labels, edges, loops })
    }

    /// Underlying graph of a quiver.
    pub fn of_quiver(q: &Quiver) -> Self {
        let n = q.num_vertices();
        let edges = (0..n)
            .map(|v| {
                (0..n)
                    .map(|w| if v == w { 0 } else { q.edge_multiplicity(v, w) as i64 })
                    .collect()
            })
            .collect();
        RootGraph {
            labels: q.vertices().iter().map(|v| v.label.clone()).collect(),
            edges,
            loops: (0..n).map(|v| q.loops_at(v) as i64).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn edge(&self, v: usize, w: usize) -> i64 {
        self.edges[v][w]
    }

    pub fn loops(&self, v: usize) -> i64 {
        self.loops[v]
    }

    /// `(Cα)_v` with `C_vv = 2 − 2 l_v` and `C_vw = −m_vw`.
    pub fn pairing(&self, alpha: &[i64], v: usize) -> i64 {
        let mut s = (2 - 2 * self.loops[v]) * alpha[v];
        for w in 0..self.len() {
            if w != v {
                s -= self.edges[v][w] * alpha[w];
            }
        }
        s
    }

    fn support_connected(&self, alpha: &[i64]) -> bool {
        let support: Vec<usize> = (0..self.len()).filter(|&v| alpha[v] > 0).collect();
        let Some(&start) = support.first() else {
            return true;
        };
        let mut seen = vec![false; self.len()];
        seen[start] = true;
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for w in 0..self.len() {
                if !seen[w] && alpha[w] > 0 && self.edges[v][w] > 0 {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        support.iter().all(|&v| seen[v])
    }

    pub fn to_json(&self) -> Value {
        json!({"vertices": self.labels, "edges": self.edges, "loops": self.loops})
    }
}

/// `Q₀ ∪ {∞}` with `f_v` edges between `v` and `∞`.
pub fn framed_graph(q: &Quiver, f: &DimVector) -> Result<RootGraph> {
    if f.len() != q.num_vertices() {
        return Err(Error::input("framing does not match the quiver"));
    }
    let base = RootGraph::of_quiver(q);
    let n = base.len();
    let mut labels = base.labels.clone();
    labels.push(INFINITY_LABEL.to_string());
    let mut edges = vec![vec![0; n + 1]; n + 1];
    for v in 0..n {
        for w in 0..n {
            edges[v][w] = base.edges[v][w];
        }
        edges[v][n] = f.get(v);
        edges[n][v] = f.get(v);
    }
    let mut loops = base.loops;
    loops.push(0);
    RootGraph::new(labels, edges, loops)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootVerdict {
    NotPositiveRoot,
    RealRoot,
    ImaginaryRoot,
}

impl RootVerdict {
    pub fn is_root(self) -> bool {
        self != RootVerdict::NotPositiveRoot
    }

    pub fn name(self) -> &'static str {
        match self {
            RootVerdict::NotPositiveRoot => "NotPositiveRoot",
            RootVerdict::RealRoot => "RealRoot",
            RootVerdict::ImaginaryRoot => "ImaginaryRoot",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootCheckResult {
    pub verdict: RootVerdict,
    pub start: Vec<i64>,
    /// Each reflection: the vertex and the vector it produced.
    pub trace: Vec<(usize, Vec<i64>)>,
    /// Last vector examined; may have a negative entry when the test fails
    /// by leaving the positive cone.
    pub terminal: Vec<i64>,
}

impl RootCheckResult {
    /// Replays the reflections from `start` and checks they reproduce the trace.
    pub fn replay(&self, g: &RootGraph) -> bool {
        let mut alpha = self.start.clone();
        for (v, next) in &self.trace {
            let c = g.pairing(&alpha, *v);
            alpha[*v] -= c;
            if &alpha != next {
                return false;
            }
        }
        alpha == self.terminal || self.verdict != RootVerdict::ImaginaryRoot
    }

    pub fn to_json(&self, g: &RootGraph) -> Value {
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|(v, a)| json!({"reflect": g.labels[*v], "vector": a}))
            .collect();
        json!({
            "verdict": self.verdict.name(),
            "vertices": g.labels,
            "start": self.start,
            "trace": trace,
            "terminal": self.terminal,
        })
    }
}

pub fn is_positive_root(g: &RootGraph, alpha: &[i64]) -> Result<RootCheckResult> {
    if alpha.len() != g.len() {
        return Err(Error::input(format!(
            "vector has {} entries, graph has {} vertices",
            alpha.len(),
            g.len()
        )));
    }
    if alpha.iter().any(|&x| x < 0) {
        return Err(Error::input("root test needs a non-negative vector"));
    }
    if alpha.iter().all(|&x| x == 0) {
        return Err(Error::input("root test needs a nonzero vector"));
    }
    let start = alpha.to_vec();
    let mut cur = start.clone();
    let mut trace = Vec::new();
    let done = |verdict, trace, terminal| {
        Ok(RootCheckResult {
            verdict,
            start: alpha.to_vec(),
            trace,
            terminal,
        })
    };
    loop {
        if !g.support_connected(&cur) {
            return done(RootVerdict::NotPositiveRoot, trace, cur);
        }
        let step = (0..g.len())
            .filter(|&v| g.loops[v] == 0 && cur[v] > 0)
            .map(|v| (v, g.pairing(&cur, v)))
            .find(|&(_, c)| c > 0);
        let Some((v, c)) = step else {
            return done(RootVerdict::ImaginaryRoot, trace, cur);
        };
        let mut next = cur.clone();
        next[v] -= c;
        if next[v] < 0 {
            let simple = cur[v] == 1 && cur.iter().filter(|&&x| x != 0).count() == 1;
            let verdict = if simple {
                RootVerdict::RealRoot
            } else {
                RootVerdict::NotPositiveRoot
            };
            return done(verdict, trace, if simple { cur } else { next });
        }
        trace.push((v, next.clone()));
        cur = next;
    }
}

/// Outcome of a nonemptiness decision with its reduction trace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonemptyVerdict {
    pub nonempty: bool,
    /// `(d, k)` at each stage of the reduction.
    pub trace: Vec<(DimVector, DimVector)>,
    /// Root test run at the end, if the reduction reached one.
    pub root: Option<RootCheckResult>,
    pub reason: String,
}

impl NonemptyVerdict {
    pub fn to_json(&self, q: &Quiver, f: &DimVector) -> Value {
        let trace: Vec<Value> = self
            .trace
            .iter()
            .map(|(d, k)| json!({"d": d.to_json(q), "k": k.to_json(q)}))
            .collect();
        let root = match (&self.root, framed_graph(q, f)) {
            (Some(r), Ok(g)) => r.to_json(&g),
            _ => Value::Null,
        };
        json!({
            "nonempty": self.nonempty,
            "reason": self.reason,
            "trace": trace,
            "root_check": root,
        })
    }
}

fn nakajima_step(
    q: &Quiver,
    d: &DimVector,
    f: &DimVector,
    trace: Vec<(DimVector, DimVector)>,
) -> Result<NonemptyVerdict> {
    if d.is_zero() {
        return Ok(NonemptyVerdict {
            nonempty: true,
            trace,
            root: None,
            reason: "d = 0: a point".into(),
        });
    }
    let g = framed_graph(q, f)?;
    let mut alpha = d.as_slice().to_vec();
    alpha.push(1);
    let res = is_positive_root(&g, &alpha)?;
    let nonempty = res.verdict.is_root();
    Ok(NonemptyVerdict {
        nonempty,
        trace,
        reason: format!("(d,1) root test: {}", res.verdict.name()),
        root: Some(res),
    })
}

/// `M(d; f)` is nonempty iff `d = 0` or `(d, 1)` is a positive root of the framed graph.
pub fn nakajima_nonempty(q: &Quiver, d: &DimVector, f: &DimVector) -> Result<NonemptyVerdict> {
    nakajima_step(q, d, f, vec![(d.clone(), DimVector::zeros(d.len()))])
}

/// Nonemptiness of `P(d, d−k)` by repeatedly passing to
/// `(d−k, max(k + k⁰[d−k], 0))` until `k = 0`.
pub fn parabolic_nonempty(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector) -> Result<NonemptyVerdict> {
    if d.len() != q.num_vertices() || k.len() != d.len() || f.len() != d.len() {
        return Err(Error::input("vectors do not match the quiver"));
    }
    let mut d = d.clone();
    let mut k = k.clone();
    let mut trace = Vec::new();
    loop {
        trace.push((d.clone(), k.clone()));
        if !k.le(&d)? {
            return Ok(NonemptyVerdict {
                nonempty: false,
                trace,
                root: None,
                reason: format!("k = {k} exceeds d = {d}"),
            });
        }
        if k.is_zero() {
            return nakajima_step(q, &d, f, trace);
        }
        let next_d = d.checked_sub(&k)?;
        let next_k = k.to_int().add(&k0(q, &next_d, f)?)?.positive_part();
        d = next_d;
        k = next_k;
    }
}

/// `BN^k` is nonempty iff `k ≤ d` and `P(d, d−k)` is nonempty.
pub fn bn_nonempty(q: &Quiver, d: &DimVector, f: &DimVector, k: &DimVector) -> Result<NonemptyVerdict> {
    if k.len() != d.len() {
        return Err(Error::input("k does not match d"));
    }
    if !k.le(d)? {
        return Ok(NonemptyVerdict {
            nonempty: false,
            trace: vec![(d.clone(), k.clone())],
            root: None,
            reason: format!("k = {k} exceeds d = {d}"),
        });
    }
    parabolic_nonempty(q, d, k, f)
}

/// One row of the Brill-Noether strata table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumReport {
    pub r: DimVector,
    pub stratum_dim: i64,
    pub pminus_fiber_dim: i64,
    pub pminus_preimage_dim: i64,
    pub nonempty: bool,
}

impl StratumReport {
    pub fn to_json(&self, q: &Quiver) -> Value {
        json!({
            "r": self.r.to_json(q),
            "stratum_dim": self.stratum_dim,
            "pminus_fiber_dim": self.pminus_fiber_dim,
            "pminus_preimage_dim": self.pminus_preimage_dim,
            "nonempty": self.nonempty,
        })
    }
}

/// Strata `BN^{=r}` of `BN^k` for `max(k, k⁰[d], 0) ≤ r ≤ d`, in lexicographic
/// order of `r` (first vertex most significant). Strata of negative dimension
/// are skipped. Fails once more than `cap` candidates have been visited.
pub fn strata_table(q: &Quiver, d: &DimVector, f: &DimVector, k: &DimVector, cap: u128) -> Result<Vec<StratumReport>> {
    if d.len() != q.num_vertices() || k.len() != d.len() || f.len() != d.len() {
        return Err(Error::input("vectors do not match the quiver"));
    }
    if !k.le(d)? {
        return Err(Error::input(format!("k = {k} is not <= d = {d}")));
    }
    let k0v = k0(q, d, f)?;
    let n = d.len();
    let lo: Vec<i64> = (0..n).map(|v| k.get(v).max(k0v.0[v]).max(0)).collect();
    if (0..n).any(|v| lo[v] > d.get(v)) {
        return Ok(Vec::new());
    }
    let dim_m = dim_nakajima(q, d, f)?;
    let cost = |v: usize, r: i64| r * (r - k0v.0[v]);
    // cheapest possible correction from coordinate v onward
    let mut tail_min = vec![0i64; n + 1];
    for v in (0..n).rev() {
        tail_min[v] = tail_min[v + 1] + cost(v, lo[v]);
    }

    let mut out = Vec::new();
    let mut visited: u128 = 0;
    let mut r = lo.clone();
    // iterative lexicographic walk with pruning on the running correction
    #[allow(clippy::too_many_arguments)]
    fn walk(
        v: usize,
        acc: i64,
        r: &mut Vec<i64>,
        ctx: &mut dyn FnMut(&[i64], i64) -> Result<()>,
        lo: &[i64],
        hi: &[i64],
        tail_min: &[i64],
        budget: i64,
        cost: &dyn Fn(usize, i64) -> i64,
    ) -> Result<()> {
        if v == r.len() {
            return ctx(r, acc);
        }
        for x in lo[v]..=hi[v] {
            let c = acc + cost(v, x);
            // cost is increasing in x on this range, so later x only get worse
            if c + tail_min[v + 1] > budget {
                break;
            }
            r[v] = x;
            walk(v + 1, c, r, ctx, lo, hi, tail_min, budget, cost)?;
        }
        r[v] = lo[v];
        Ok(())
    }
    let hi: Vec<i64> = d.as_slice().to_vec();
    let mut emit = |rv: &[i64], _acc: i64| -> Result<()> {
        visited += 1;
        if visited > cap {
            return Err(Error::CapExceeded { count: visited, cap });
        }
        let r = DimVector::new(rv.to_vec())?;
        let stratum_dim = dim_bn_stratum(q, d, f, &r)?;
        out.push(StratumReport {
            stratum_dim,
            pminus_fiber_dim: fiber_dim_pminus(k, &r)?,
            pminus_preimage_dim: preimage_dim_pminus(q, d, k, f, &r)?,
            nonempty: parabolic_nonempty(q, d, &r, f)?.nonempty,
            r,
        });
        Ok(())
    };
    walk(0, 0, &mut r, &mut emit, &lo, &hi, &tail_min, dim_m, &cost)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec()).unwrap()
    }

    fn a2() -> RootGraph {
        RootGraph::new(vec!["a".into(), "b".into()], vec![vec![0, 1], vec![1, 0]], vec![0, 0]).unwrap()
    }

    #[test]
    fn framed_graphs() {
        let g = framed_graph(&Quiver::a1(), &dv(&[1])).unwrap();
        assert_eq!(
            g,
            RootGraph::new(vec!["v".into(), "inf".into()], vec![vec![0, 1], vec![1, 0]], vec![0, 0]).unwrap()
        );
        let g = framed_graph(&Quiver::jordan(), &dv(&[1])).unwrap();
        assert_eq!((g.loops(0), g.edge(0, 1)), (1, 1));
        let g = framed_graph(&Quiver::path(2), &dv(&[0, 0])).unwrap();
        assert_eq!((g.edge(0, 1), g.edge(0, 2), g.edge(1, 2)), (1, 0, 0));
    }

    #[test]
    fn a2_roots() {
        let g = a2();
        assert_eq!(is_positive_root(&g, &[1, 1]).unwrap().verdict, RootVerdict::RealRoot);
        assert_eq!(
            is_positive_root(&g, &[2, 1]).unwrap().verdict,
            RootVerdict::NotPositiveRoot
        );
        assert_eq!(is_positive_root(&g, &[0, 1]).unwrap().verdict, RootVerdict::RealRoot);
        assert!(is_positive_root(&g, &[0, 0]).is_err());
        assert!(is_positive_root(&g, &[-1, 2]).is_err());
    }

    #[test]
    fn disconnected_support() {
        let g = RootGraph::new(vec!["a".into(), "b".into()], vec![vec![0, 0], vec![0, 0]], vec![0, 0]).unwrap();
        assert_eq!(
            is_positive_root(&g, &[1, 1]).unwrap().verdict,
            RootVerdict::NotPositiveRoot
        );
    }

    #[test]
    fn jordan_framed_roots() {
        let g = framed_graph(&Quiver::jordan(), &dv(&[1])).unwrap();
        for d in 0..=20 {
            let r = is_positive_root(&g, &[d, 1]).unwrap();
            assert!(r.verdict.is_root(), "d = {d}");
            assert!(r.replay(&g));
        }
        // loop simple root
        assert_eq!(
            is_positive_root(&g, &[1, 0]).unwrap().verdict,
            RootVerdict::ImaginaryRoot
        );
    }

    #[test]
    fn affine_a1_imaginary() {
        // two vertices joined by two edges: δ = (1,1) is imaginary
        let g = RootGraph::new(vec!["a".into(), "b".into()], vec![vec![0, 2], vec![2, 0]], vec![0, 0]).unwrap();
        assert_eq!(
            is_positive_root(&g, &[1, 1]).unwrap().verdict,
            RootVerdict::ImaginaryRoot
        );
        assert_eq!(is_positive_root(&g, &[2, 1]).unwrap().verdict, RootVerdict::RealRoot);
        assert_eq!(
            is_positive_root(&g, &[3, 1]).unwrap().verdict,
            RootVerdict::NotPositiveRoot
        );
    }

    #[test]
    fn nakajima_examples() {
        let a = Quiver::a1();
        for f in 0..6 {
            for d in 0..8 {
                assert_eq!(nakajima_nonempty(&a, &dv(&[d]), &dv(&[f])).unwrap().nonempty, d <= f);
            }
        }
        assert!(
            nakajima_nonempty(&Quiver::jordan(), &dv(&[7]), &dv(&[1]))
                .unwrap()
                .nonempty
        );
        assert!(
            nakajima_nonempty(&Quiver::path(3), &dv(&[0, 0, 0]), &dv(&[0, 0, 0]))
                .unwrap()
                .nonempty
        );
    }

    #[test]
    fn parabolic_examples() {
        let j = Quiver::jordan();
        let f = dv(&[1]);
        assert!(parabolic_nonempty(&j, &dv(&[3]), &dv(&[2]), &f).unwrap().nonempty);
        let v = parabolic_nonempty(&j, &dv(&[2]), &dv(&[2]), &f).unwrap();
        assert!(!v.nonempty);
        assert!(bn_nonempty(&j, &dv(&[6]), &f, &dv(&[3])).unwrap().nonempty);
        assert!(!bn_nonempty(&j, &dv(&[2]), &f, &dv(&[3])).unwrap().nonempty);
        assert!(parabolic_nonempty(&j, &dv(&[0]), &dv(&[0]), &f).unwrap().nonempty);

        let a = Quiver::a1();
        for f in 0..6 {
            for d in 0..7 {
                for k in (2 * d - f).max(0)..=d {
                    let got = parabolic_nonempty(&a, &dv(&[d]), &dv(&[k]), &dv(&[f])).unwrap();
                    assert_eq!(got.nonempty, d <= f, "d={d} f={f} k={k}");
                }
            }
        }
    }

    #[test]
    fn recursion_trace_shape() {
        let j = Quiver::jordan();
        let f = dv(&[1]);
        let v = parabolic_nonempty(&j, &dv(&[6]), &dv(&[3]), &f).unwrap();
        for w in v.trace.windows(2) {
            let (d, k) = &w[0];
            let nd = d.checked_sub(k).unwrap();
            let nk = k.to_int().add(&k0(&j, &nd, &f).unwrap()).unwrap().positive_part();
            assert_eq!(w[1], (nd, nk));
        }
    }

    #[test]
    fn strata_examples() {
        let j = Quiver::jordan();
        let t = strata_table(&j, &dv(&[3]), &dv(&[1]), &dv(&[0]), DEFAULT_STRATA_CAP).unwrap();
        let rs: Vec<(i64, i64, bool)> = t.iter().map(|s| (s.r.get(0), s.stratum_dim, s.nonempty)).collect();
        assert_eq!(rs, vec![(0, 6, true), (1, 4, true), (2, 0, true)]);

        let a = Quiver::a1();
        let t = strata_table(&a, &dv(&[2]), &dv(&[3]), &dv(&[1]), DEFAULT_STRATA_CAP).unwrap();
        assert_eq!(t.iter().map(|s| s.r.get(0)).collect::<Vec<_>>(), vec![1, 2]);

        let t = strata_table(&a, &dv(&[2]), &dv(&[5]), &dv(&[2]), DEFAULT_STRATA_CAP).unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].r, dv(&[2]));
        let t = strata_table(&j, &dv(&[10]), &dv(&[1]), &dv(&[3]), DEFAULT_STRATA_CAP).unwrap();
        assert_eq!(t[0].r.get(0), 3);

        let p = Quiver::path(3);
        let err = strata_table(&p, &dv(&[9, 9, 9]), &dv(&[20, 20, 20]), &dv(&[0, 0, 0]), 10);
        assert!(matches!(err, Err(Error::CapExceeded { .. })));
    }
}
