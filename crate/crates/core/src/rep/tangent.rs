use num::Zero;
use serde_json::{json, Value};

use super::ParabolicPoint;
use crate::dims::dim_parabolic_steps;
use crate::error::{Error, Result};
use crate::linalg::{complete_basis, extend_basis, RMatrix, Rational};

/// Ranks in the deformation complex `Lie(P) → Rep → ⊕ Hom(D̂_v, D_v)` at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub rep_dim: usize,
    pub lie_dim: usize,
    pub rank_j: usize,
    pub rank_dmu: usize,
    pub injective: bool,
    pub surjective: bool,
    /// `dμ ∘ ȷ = 0`.
    pub complex_ok: bool,
    /// Middle cohomology `rep_dim − rank ȷ − rank dμ`.
    pub h_dim: i64,
    pub formula_dim: i64,
}

impl TangentReport {
    pub fn ok(&self) -> bool {
        self.injective && self.surjective && self.complex_ok && self.h_dim == self.formula_dim
    }

    pub fn to_json(&self) -> Value {
        json!({
            "ok": self.ok(),
            "rep_dim": self.rep_dim,
            "lie_dim": self.lie_dim,
            "rank_j": self.rank_j,
            "rank_dmu": self.rank_dmu,
            "injective": self.injective,
            "surjective": self.surjective,
            "complex_ok": self.complex_ok,
            "h_dim": self.h_dim,
            "formula_dim": self.formula_dim,
        })
    }
}

// Reduced data in a flag-adapted basis: the maps out of each D_v only see D̂_v.
struct Reduced {
    d: Vec<usize>,
    k: Vec<usize>,
    f: Vec<usize>,
    ends: Vec<(usize, usize)>,
    a: Vec<RMatrix>,
    b: Vec<RMatrix>,
    i: Vec<RMatrix>,
    j: Vec<RMatrix>,
    blocks: Vec<Vec<usize>>,
}

impl Reduced {
    fn dhat(&self, v: usize) -> usize {
        self.d[v] - self.k[v]
    }

    fn pi(&self, v: usize) -> RMatrix {
        let mut p = RMatrix::zeros(self.dhat(v), self.d[v]);
        for r in 0..self.dhat(v) {
            p.set(r, self.k[v] + r, Rational::from_integer(1.into()));
        }
        p
    }

    fn hat(&self, xi: &RMatrix, v: usize) -> RMatrix {
        xi.submatrix(self.k[v]..self.d[v], self.k[v]..self.d[v])
    }

    // (Â_e, B̂_e) per arrow, then (i_v, ĵ_v) per vertex.
    fn rep_shapes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &(s, t) in &self.ends {
            out.push((self.d[t], self.dhat(s)));
            out.push((self.d[s], self.dhat(t)));
        }
        for v in 0..self.d.len() {
            out.push((self.d[v], self.f[v]));
            out.push((self.f[v], self.dhat(v)));
        }
        out
    }

    fn lie_basis(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for v in 0..self.d.len() {
            for a in 0..self.d[v] {
                for b in 0..self.d[v] {
                    if self.blocks[v][a] <= self.blocks[v][b] {
                        out.push((v, a, b));
                    }
                }
            }
        }
        out
    }

    fn jmap(&self, xi: &[RMatrix]) -> Result<Vec<RMatrix>> {
        let mut out = Vec::new();
        for (e, &(s, t)) in self.ends.iter().enumerate() {
            out.push(xi[t].mul(&self.a[e])?.sub(&self.a[e].mul(&self.hat(&xi[s], s))?)?);
            out.push(xi[s].mul(&self.b[e])?.sub(&self.b[e].mul(&self.hat(&xi[t], t))?)?);
        }
        for v in 0..self.d.len() {
            out.push(xi[v].mul(&self.i[v])?);
            out.push(self.j[v].mul(&self.hat(&xi[v], v))?.neg());
        }
        Ok(out)
    }

    fn dmu(&self, delta: &[RMatrix]) -> Result<Vec<RMatrix>> {
        let n = self.d.len();
        let mut out: Vec<RMatrix> = (0..n).map(|v| RMatrix::zeros(self.d[v], self.dhat(v))).collect();
        for (e, &(s, t)) in self.ends.iter().enumerate() {
            let (da, db) = (&delta[2 * e], &delta[2 * e + 1]);
            let (a, b) = (&self.a[e], &self.b[e]);
            let (ps, pt) = (self.pi(s), self.pi(t));
            let at_t = RMatrix::product(&[da, &ps, b])?.add(&RMatrix::product(&[a, &ps, db])?)?;
            out[t] = out[t].add(&at_t)?;
            let at_s = RMatrix::product(&[db, &pt, a])?.add(&RMatrix::product(&[b, &pt, da])?)?;
            out[s] = out[s].sub(&at_s)?;
        }
        let base = 2 * self.ends.len();
        for (v, o) in out.iter_mut().enumerate() {
            let (di, dj) = (&delta[base + 2 * v], &delta[base + 2 * v + 1]);
            *o = o.add(&di.mul(&self.j[v])?)?.add(&self.i[v].mul(dj)?)?;
        }
        Ok(out)
    }
}

fn flatten(ms: &[RMatrix]) -> Vec<Rational> {
    ms.iter().flat_map(|m| m.entries().iter().cloned()).collect()
}

fn reduce(pt: &ParabolicPoint) -> Result<Reduced> {
    let rep = &pt.rep;
    let q = &rep.quiver;
    let n = q.num_vertices();
    let mut g = Vec::with_capacity(n);
    let mut blocks = Vec::with_capacity(n);
    for v in 0..n {
        let dv = rep.d.dim(v);
        let mut basis = RMatrix::zeros(dv, 0);
        let mut labels = Vec::new();
        for (s, step) in pt.flags[v].iter().enumerate() {
            basis = extend_basis(&basis, step)?;
            labels.resize(basis.cols(), s);
        }
        let full = complete_basis(&basis)?;
        labels.resize(dv, pt.flags[v].len());
        g.push(full);
        blocks.push(labels);
    }
    let ginv = g.iter().map(RMatrix::inverse).collect::<Result<Vec<_>>>()?;
    let k: Vec<usize> = (0..n).map(|v| pt.top(v).cols()).collect();
    let d: Vec<usize> = (0..n).map(|v| rep.d.dim(v)).collect();
    let cut = |m: RMatrix, from: usize| m.submatrix(0..m.rows(), from..m.cols());
    let mut ends = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for (e, ar) in q.arrows().iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        ends.push((s, t));
        a.push(cut(RMatrix::product(&[&ginv[t], &rep.a[e], &g[s]])?, k[s]));
        b.push(cut(RMatrix::product(&[&ginv[s], &rep.b[e], &g[t]])?, k[t]));
    }
    let mut i = Vec::with_capacity(n);
    let mut j = Vec::with_capacity(n);
    for v in 0..n {
        i.push(ginv[v].mul(&rep.i[v])?);
        j.push(cut(rep.j[v].mul(&g[v])?, k[v]));
    }
    Ok(Reduced {
        d,
        k,
        f: (0..n).map(|v| rep.f.dim(v)).collect(),
        ends,
        a,
        b,
        i,
        j,
        blocks,
    })
}

/// Builds `ȷ : Lie(P) → Rep` and `dμ : Rep → ⊕ Hom(D̂_v, D_v)` at a valid
/// point as exact matrices and compares the middle cohomology with the
/// dimension formula for the flag type of the point.
pub fn tangent_complex(pt: &ParabolicPoint) -> Result<TangentReport> {
    let val = pt.validate()?;
    if !val.ok() {
        let names: Vec<String> = val.failures().iter().map(|c| c.name.clone()).collect();
        return Err(Error::input(format!("invalid point: {}", names.join(", "))));
    }
    let red = reduce(pt)?;
    let n = red.d.len();
    let shapes = red.rep_shapes();
    let rep_dim: usize = shapes.iter().map(|(r, c)| r * c).sum();

    let lie = red.lie_basis();
    let mut jcols = Vec::with_capacity(lie.len());
    for &(v, r, c) in &lie {
        let mut xi: Vec<RMatrix> = (0..n).map(|w| RMatrix::zeros(red.d[w], red.d[w])).collect();
        xi[v].set(r, c, Rational::from_integer(1.into()));
        jcols.push(flatten(&red.jmap(&xi)?));
    }
    let jmat = RMatrix::from_columns(&jcols, rep_dim)?;

    let target_dim: usize = (0..n).map(|v| red.d[v] * red.dhat(v)).sum();
    let mut mcols = Vec::with_capacity(rep_dim);
    for (slot, &(rows, cols)) in shapes.iter().enumerate() {
        for r in 0..rows {
            for c in 0..cols {
                let mut delta: Vec<RMatrix> = shapes.iter().map(|&(x, y)| RMatrix::zeros(x, y)).collect();
                delta[slot].set(r, c, Rational::from_integer(1.into()));
                mcols.push(flatten(&red.dmu(&delta)?));
            }
        }
    }
    let dmat = RMatrix::from_columns(&mcols, target_dim)?;

    let rank_j = jmat.rank();
    let rank_dmu = dmat.rank();
    let complex_ok = dmat.mul(&jmat)?.entries().iter().all(Zero::is_zero);
    let formula_dim = dim_parabolic_steps(&pt.rep.quiver, &pt.rep.d, &pt.rep.f, &pt.steps())?;
    Ok(TangentReport {
        rep_dim,
        lie_dim: lie.len(),
        rank_j,
        rank_dmu,
        injective: rank_j == lie.len(),
        surjective: rank_dmu == target_dim,
        complex_ok,
        h_dim: rep_dim as i64 - rank_j as i64 - rank_dmu as i64,
        formula_dim,
    })
}
