use serde_json::{json, Map, Value};

use super::{FramedRep, Validation};
use crate::error::{Error, Result};
use crate::linalg::{span_contains, RMatrix};
use crate::quiver::DimVector;

/// A representation with a flag `K_{v,1} ⊂ … ⊂ K_{v,s}` of annihilated
/// subspaces at every vertex. Each flag step is a matrix whose columns span it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicPoint {
    pub rep: FramedRep,
    pub flags: Vec<Vec<RMatrix>>,
}

/// Fiber dimensions of `P₋,v` and `P₊,v` through a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberDims {
    pub pminus: i64,
    pub pplus: i64,
    /// Dimension of `ker M₁,v / K`, the space the `P₋,v` Grassmannian lives in.
    pub pminus_space: i64,
    /// Dimension of `ker M̃₂,v / Im M̂₁,v`.
    pub pplus_space: i64,
}

impl ParabolicPoint {
    pub fn new(rep: FramedRep, flags: Vec<Vec<RMatrix>>) -> Result<Self> {
        let n = rep.quiver.num_vertices();
        if flags.len() != n {
            return Err(Error::shape("one flag per vertex is required"));
        }
        for (v, fl) in flags.iter().enumerate() {
            for m in fl {
                if m.rows() != rep.d.dim(v) {
                    return Err(Error::shape(format!(
                        "flag step at {} has {} rows, expected {}",
                        rep.quiver.label(v),
                        m.rows(),
                        rep.d.dim(v)
                    )));
                }
            }
        }
        Ok(ParabolicPoint { rep, flags })
    }

    pub fn unflagged(rep: FramedRep) -> Self {
        let n = rep.quiver.num_vertices();
        ParabolicPoint {
            rep,
            flags: vec![Vec::new(); n],
        }
    }

    /// `k_v = dim K_{v,top}`.
    pub fn k(&self) -> DimVector {
        DimVector::new(
            self.flags
                .iter()
                .map(|fl| fl.last().map_or(0, |m| m.cols() as i64))
                .collect(),
        )
        .expect("column counts are non-negative")
    }

    /// Dimension increments of each flag.
    pub fn steps(&self) -> Vec<Vec<i64>> {
        self.flags
            .iter()
            .map(|fl| {
                let mut prev = 0;
                fl.iter()
                    .map(|m| {
                        let s = m.cols() as i64 - prev;
                        prev = m.cols() as i64;
                        s
                    })
                    .collect()
            })
            .collect()
    }

    pub fn top(&self, v: usize) -> RMatrix {
        self.flags[v]
            .last()
            .cloned()
            .unwrap_or_else(|| RMatrix::zeros(self.rep.d.dim(v), 0))
    }

    pub fn tops(&self) -> Vec<RMatrix> {
        (0..self.flags.len()).map(|v| self.top(v)).collect()
    }

    /// Flat, stable, flags strictly nested with independent columns, and the
    /// top of each flag inside `Hom(C_v, D)`.
    pub fn validate(&self) -> Result<Validation> {
        let mut val = self.rep.validate()?;
        let q = &self.rep.quiver;
        for (v, fl) in self.flags.iter().enumerate() {
            let label = q.label(v);
            let mut nested = true;
            let mut detail = Vec::new();
            let mut prev: Option<&RMatrix> = None;
            for (s, m) in fl.iter().enumerate() {
                if m.rank() != m.cols() {
                    nested = false;
                    detail.push(format!("step {} has dependent columns", s + 1));
                }
                if let Some(p) = prev {
                    if m.cols() <= p.cols() {
                        nested = false;
                        detail.push(format!("step {} does not grow", s + 1));
                    }
                    if !span_contains(m, p)? {
                        nested = false;
                        detail.push(format!("step {} does not contain step {s}", s + 1));
                    }
                } else if m.cols() == 0 {
                    nested = false;
                    detail.push("first step is zero".into());
                }
                prev = Some(m);
            }
            if !fl.is_empty() {
                val.push(
                    format!("flag[{label}] nested"),
                    nested,
                    if nested {
                        format!("{} steps", fl.len())
                    } else {
                        detail.join("; ")
                    },
                );
                let hom = self.rep.hom_basis(v)?;
                let inside = span_contains(&hom, &self.top(v))?;
                val.push(
                    format!("flag[{label}] annihilated"),
                    inside,
                    if inside {
                        format!("top step inside the {}-dim Hom space", hom.cols())
                    } else {
                        "top step is not killed by A, B and j".to_string()
                    },
                );
            }
        }
        Ok(val)
    }

    fn require_valid(&self) -> Result<()> {
        let val = self.validate()?;
        if !val.ok() {
            let names: Vec<String> = val.failures().iter().map(|c| c.name.clone()).collect();
            return Err(Error::input(format!("invalid point: {}", names.join(", "))));
        }
        Ok(())
    }

    /// `p₋`: the representation `D` itself.
    pub fn pminus(&self) -> Result<FramedRep> {
        self.require_valid()?;
        Ok(self.rep.clone())
    }

    /// `p₊`: the quotient of `D` by the top of every flag.
    pub fn pplus(&self) -> Result<FramedRep> {
        self.require_valid()?;
        Ok(self.rep.quotient_by_k(&self.tops())?.rep)
    }

    fn require_step(&self, v: usize) -> Result<()> {
        if v >= self.flags.len() {
            return Err(Error::input(format!("no vertex with index {v}")));
        }
        if self.flags[v].is_empty() {
            return Err(Error::input(format!("k is zero at {}", self.rep.quiver.label(v))));
        }
        Ok(())
    }

    /// `P₋,v`: drops the top step of the flag at `v`.
    pub fn flag_p_minus_v(&self, v: usize) -> Result<ParabolicPoint> {
        self.require_step(v)?;
        let mut out = self.clone();
        out.flags[v].pop();
        out.require_valid()
            .map_err(|e| Error::Internal(format!("P-,v produced an invalid point: {e}")))?;
        Ok(out)
    }

    /// `P₊,v`: divides by the first step `K_{v,1}` and pushes the rest of the
    /// flag at `v` (and the flags elsewhere) to the quotient.
    pub fn flag_p_plus_v(&self, v: usize) -> Result<ParabolicPoint> {
        self.require_step(v)?;
        self.require_valid()?;
        let n = self.flags.len();
        let k: Vec<RMatrix> = (0..n)
            .map(|w| {
                if w == v {
                    self.flags[v][0].clone()
                } else {
                    RMatrix::zeros(self.rep.d.dim(w), 0)
                }
            })
            .collect();
        let quo = self.rep.quotient_by_k(&k)?;
        let mut flags = Vec::with_capacity(n);
        for w in 0..n {
            let skip = usize::from(w == v);
            let fl = self.flags[w][skip..]
                .iter()
                .map(|m| quo.pi[w].mul(m).map(|x| x.column_span()))
                .collect::<Result<Vec<_>>>()?;
            flags.push(fl);
        }
        let out = ParabolicPoint::new(quo.rep, flags)?;
        out.require_valid()
            .map_err(|e| Error::Internal(format!("P+,v produced an invalid point: {e}")))?;
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = self.rep.to_json();
        let mut flags = Map::new();
        for (v, fl) in self.flags.iter().enumerate() {
            if !fl.is_empty() {
                flags.insert(
                    self.rep.quiver.label(v).to_string(),
                    Value::Array(fl.iter().map(RMatrix::to_json).collect()),
                );
            }
        }
        obj.as_object_mut()
            .expect("rep json is an object")
            .insert("flags".into(), Value::Object(flags));
        obj
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let rep = FramedRep::from_json(value)?;
        let n = rep.quiver.num_vertices();
        let mut flags = vec![Vec::new(); n];
        match value.get("flags") {
            None | Some(Value::Null) => {}
            Some(Value::Object(map)) => {
                for (label, steps) in map {
                    let v = rep.quiver.vertex_index(label)?;
                    let steps = steps
                        .as_array()
                        .ok_or_else(|| Error::input(format!("flags[{label}] must be a list")))?;
                    for s in steps {
                        flags[v].push(RMatrix::from_json_any(s)?);
                    }
                }
            }
            Some(_) => return Err(Error::input("`flags` must map vertices to lists")),
        }
        ParabolicPoint::new(rep, flags)
    }
}

/// Fiber dimensions of `P₋,v` and `P₊,v` through `pt`.
///
/// `P₋,v` forgets the top step `K_top ⊃ K_below` at `v`; its fiber is the
/// Grassmannian of `κ`-dimensional subspaces in `ker M₁,v / K_below`.
/// `P₊,v` divides by `K_{v,1}`; its fiber is a Grassmannian of codimension
/// `dim K_{v,1}` in `ker M̃₂,v / Im M̂₁,v`, computed over the fully divided
/// representation `D̂ = D / K_top`.
pub fn fiber_dims_at(pt: &ParabolicPoint, v: usize) -> Result<FiberDims> {
    pt.require_step(v)?;
    pt.require_valid()?;
    let fl = &pt.flags[v];

    let top = fl.last().expect("nonempty").cols() as i64;
    let below = if fl.len() >= 2 {
        fl[fl.len() - 2].cols() as i64
    } else {
        0
    };
    let kappa = top - below;
    let n_minus = pt.rep.hom_dim(v)? as i64 - below;
    let pminus = kappa * (n_minus - kappa);

    let kappa1 = fl[0].cols() as i64;
    let base = pt.flag_p_plus_v(v)?;
    let hat = base.rep.quotient_by_k(&base.tops())?;
    let dprime = &base.rep;
    let dhat = &hat.rep;
    let mut blocks = Vec::new();
    for (e, arrow) in dprime.quiver.arrows().iter().enumerate() {
        if arrow.source == v {
            blocks.push(dprime.b[e].mul(&hat.section[arrow.target])?.neg());
        }
        if arrow.target == v {
            blocks.push(dprime.a[e].mul(&hat.section[arrow.source])?);
        }
    }
    blocks.push(dprime.i[v].clone());
    let refs: Vec<&RMatrix> = blocks.iter().collect();
    let m2_tilde = RMatrix::hstack(&refs, dprime.d.dim(v))?;
    let m1_hat = dhat.m1(v)?;
    if !m2_tilde.mul(&m1_hat)?.is_zero() {
        return Err(Error::Internal(
            "image of the lifted M1 is not inside the kernel of M2".into(),
        ));
    }
    let ker = m2_tilde.cols() as i64 - m2_tilde.rank() as i64;
    let n_plus = ker - m1_hat.rank() as i64;
    let pplus = kappa1 * (n_plus - kappa1);
    Ok(FiberDims {
        pminus,
        pplus,
        pminus_space: n_minus,
        pplus_space: n_plus,
    })
}

impl FiberDims {
    pub fn to_json(&self) -> Value {
        json!({
            "pminus_fiber_dim": self.pminus,
            "pplus_fiber_dim": self.pplus,
            "pminus_space_dim": self.pminus_space,
            "pplus_space_dim": self.pplus_space,
        })
    }
}
