//! Explicit framed representations of the doubled quiver and the checks the
//! varieties are defined by.

mod chain;
mod point;
mod tangent;

pub use chain::{block_form_check, BlockFormReport, ParabolicChainPoint};
pub use point::{fiber_dims_at, FiberDims, ParabolicPoint};
pub use tangent::{tangent_complex, TangentReport};

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::{intersect, RMatrix};
use crate::quiver::{DimVector, Quiver};

/// `(A_e, B_e, i_v, j_v)` with `A_e : D_out → D_in`, `B_e : D_in → D_out`,
/// `i_v : F_v → D_v`, `j_v : D_v → F_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedRep {
    pub quiver: Quiver,
    pub d: DimVector,
    pub f: DimVector,
    pub a: Vec<RMatrix>,
    pub b: Vec<RMatrix>,
    pub i: Vec<RMatrix>,
    pub j: Vec<RMatrix>,
}

/// Named pass/fail checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Validation {
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

impl Validation {
    pub fn push(&mut self, name: impl Into<String>, ok: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            ok,
            detail: detail.into(),
        });
    }

    pub fn extend(&mut self, prefix: &str, other: Validation) {
        for c in other.checks {
            self.push(format!("{prefix}{}", c.name), c.ok, c.detail);
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| !c.ok).collect()
    }

    pub fn to_json(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"check": c.name, "ok": c.ok, "detail": c.detail}))
            .collect();
        json!({"ok": self.ok(), "checks": checks})
    }
}

/// Result of the saturation run behind [`FramedRep::is_stable`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    /// Smallest collection containing the images of `i` and closed under `A`, `B`.
    pub subspaces: Vec<RMatrix>,
    pub iterations: usize,
}

/// Quotient representation with the maps relating it to the original.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub rep: FramedRep,
    /// `π_v : D_v → D_v/K_v`.
    pub pi: Vec<RMatrix>,
    /// Section of `π_v` spanned by standard basis vectors.
    pub section: Vec<RMatrix>,
    pub flat: bool,
    pub stable: bool,
}

impl FramedRep {
    pub fn new(
        quiver: Quiver,
        d: DimVector,
        f: DimVector,
        a: Vec<RMatrix>,
        b: Vec<RMatrix>,
        i: Vec<RMatrix>,
        j: Vec<RMatrix>,
    ) -> Result<Self> {
        let rep = FramedRep {
            quiver,
            d,
            f,
            a,
            b,
            i,
            j,
        };
        rep.check_shapes()?;
        Ok(rep)
    }

    pub fn zero(quiver: &Quiver, d: &DimVector, f: &DimVector) -> Result<Self> {
        let dd = |v: usize| d.dim(v);
        let ff = |v: usize| f.dim(v);
        let arrows = quiver.arrows();
        let n = quiver.num_vertices();
        if d.len() != n || f.len() != n {
            return Err(Error::input("d and f must match the quiver"));
        }
        FramedRep::new(
            quiver.clone(),
            d.clone(),
            f.clone(),
            arrows
                .iter()
                .map(|e| RMatrix::zeros(dd(e.target), dd(e.source)))
                .collect(),
            arrows
                .iter()
                .map(|e| RMatrix::zeros(dd(e.source), dd(e.target)))
                .collect(),
            (0..n).map(|v| RMatrix::zeros(dd(v), ff(v))).collect(),
            (0..n).map(|v| RMatrix::zeros(ff(v), dd(v))).collect(),
        )
    }

    fn check_shapes(&self) -> Result<()> {
        let n = self.quiver.num_vertices();
        if self.d.len() != n || self.f.len() != n {
            return Err(Error::shape("d and f must match the quiver"));
        }
        let arrows = self.quiver.arrows();
        if self.a.len() != arrows.len() || self.b.len() != arrows.len() {
            return Err(Error::shape("one A and one B matrix per arrow"));
        }
        if self.i.len() != n || self.j.len() != n {
            return Err(Error::shape("one i and one j matrix per vertex"));
        }
        let expect = |m: &RMatrix, r: usize, c: usize, what: String| {
            if m.shape() != (r, c) {
                Err(Error::shape(format!(
                    "{what} is {}x{}, expected {r}x{c}",
                    m.rows(),
                    m.cols()
                )))
            } else {
                Ok(())
            }
        };
        for (e, arrow) in arrows.iter().enumerate() {
            let (s, t) = (self.d.dim(arrow.source), self.d.dim(arrow.target));
            expect(&self.a[e], t, s, format!("A[{}]", arrow.id))?;
            expect(&self.b[e], s, t, format!("B[{}]", arrow.id))?;
        }
        for v in 0..n {
            let label = self.quiver.label(v);
            expect(&self.i[v], self.d.dim(v), self.f.dim(v), format!("i[{label}]"))?;
            expect(&self.j[v], self.f.dim(v), self.d.dim(v), format!("j[{label}]"))?;
        }
        Ok(())
    }

    /// `Σ_{in(e)=v} A_e B_e − Σ_{out(e)=v} B_e A_e + i_v j_v` at each vertex.
    pub fn moment_residual(&self) -> Result<Vec<RMatrix>> {
        let n = self.quiver.num_vertices();
        let mut res: Vec<RMatrix> = (0..n).map(|v| self.i[v].mul(&self.j[v])).collect::<Result<_>>()?;
        for (e, arrow) in self.quiver.arrows().iter().enumerate() {
            let ab = self.a[e].mul(&self.b[e])?;
            res[arrow.target] = res[arrow.target].add(&ab)?;
            let ba = self.b[e].mul(&self.a[e])?;
            res[arrow.source] = res[arrow.source].sub(&ba)?;
        }
        Ok(res)
    }

    pub fn is_flat(&self) -> Result<bool> {
        Ok(self.moment_residual()?.iter().all(RMatrix::is_zero))
    }

    pub fn stability(&self) -> Result<StabilityReport> {
        let n = self.quiver.num_vertices();
        let mut s: Vec<RMatrix> = (0..n).map(|v| self.i[v].column_span()).collect();
        let mut iterations = 0;
        loop {
            let mut changed = false;
            for (e, arrow) in self.quiver.arrows().iter().enumerate() {
                let (out, inn) = (arrow.source, arrow.target);
                let grown = grow(&s[inn], &self.a[e].mul(&s[out])?)?;
                if grown.cols() > s[inn].cols() {
                    s[inn] = grown;
                    changed = true;
                }
                let grown = grow(&s[out], &self.b[e].mul(&s[inn])?)?;
                if grown.cols() > s[out].cols() {
                    s[out] = grown;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
            iterations += 1;
        }
        let stable = (0..n).all(|v| s[v].cols() == self.d.dim(v));
        Ok(StabilityReport {
            stable,
            subspaces: s,
            iterations,
        })
    }

    pub fn is_stable(&self) -> Result<bool> {
        Ok(self.stability()?.stable)
    }

    /// Stacked map `D_v → ⊕_{out(e)=v} D_in(e) ⊕ ⊕_{in(e)=v} D_out(e) ⊕ F_v`,
    /// summands in arrow order with `F_v` last.
    pub fn m1(&self, v: usize) -> Result<RMatrix> {
        let mut blocks = Vec::new();
        for (e, arrow) in self.quiver.arrows().iter().enumerate() {
            if arrow.source == v {
                blocks.push(&self.a[e]);
            }
            if arrow.target == v {
                blocks.push(&self.b[e]);
            }
        }
        blocks.push(&self.j[v]);
        RMatrix::vstack(&blocks, self.d.dim(v))
    }

    /// Map back into `D_v` from the same summands, with `m2(v) · m1(v)` the
    /// moment map at `v`.
    pub fn m2(&self, v: usize) -> Result<RMatrix> {
        let mut blocks = Vec::new();
        for (e, arrow) in self.quiver.arrows().iter().enumerate() {
            if arrow.source == v {
                blocks.push(self.b[e].neg());
            }
            if arrow.target == v {
                blocks.push(self.a[e].clone());
            }
        }
        blocks.push(self.i[v].clone());
        let refs: Vec<&RMatrix> = blocks.iter().collect();
        RMatrix::hstack(&refs, self.d.dim(v))
    }

    /// Basis of `Hom(C_v, D)`: vectors of `D_v` killed by every outgoing map.
    pub fn hom_basis(&self, v: usize) -> Result<RMatrix> {
        let mut kernels = Vec::new();
        for (e, arrow) in self.quiver.arrows().iter().enumerate() {
            if arrow.source == v {
                kernels.push(self.a[e].kernel_basis());
            }
            if arrow.target == v {
                kernels.push(self.b[e].kernel_basis());
            }
        }
        kernels.push(self.j[v].kernel_basis());
        intersect(self.d.dim(v), &kernels)
    }

    pub fn hom_dim(&self, v: usize) -> Result<usize> {
        Ok(self.hom_basis(v)?.cols())
    }

    /// `r_v = dim Hom(C_v, D)` with warnings when the point is not flat or not stable.
    pub fn bn_stratum_of(&self) -> Result<(DimVector, Vec<String>)> {
        let mut warnings = Vec::new();
        if !self.is_flat()? {
            warnings.push("representation is not flat".to_string());
        }
        if !self.is_stable()? {
            warnings.push("representation is not stable".to_string());
        }
        let r = (0..self.quiver.num_vertices())
            .map(|v| self.hom_dim(v).map(|x| x as i64))
            .collect::<Result<Vec<_>>>()?;
        Ok((DimVector::new(r)?, warnings))
    }

    /// Flatness and stability.
    pub fn validate(&self) -> Result<Validation> {
        let mut val = Validation::default();
        let res = self.moment_residual()?;
        let bad: Vec<&str> = (0..res.len())
            .filter(|&v| !res[v].is_zero())
            .map(|v| self.quiver.label(v))
            .collect();
        val.push(
            "flat",
            bad.is_empty(),
            if bad.is_empty() {
                "moment map vanishes".to_string()
            } else {
                format!("moment map nonzero at {}", bad.join(", "))
            },
        );
        let st = self.stability()?;
        let short: Vec<String> = (0..st.subspaces.len())
            .filter(|&v| st.subspaces[v].cols() < self.d.dim(v))
            .map(|v| {
                format!(
                    "{} ({} of {})",
                    self.quiver.label(v),
                    st.subspaces[v].cols(),
                    self.d.dim(v)
                )
            })
            .collect();
        val.push(
            "stable",
            st.stable,
            if st.stable {
                format!("saturated after {} rounds", st.iterations)
            } else {
                format!("framing generates a proper subspace at {}", short.join(", "))
            },
        );
        Ok(val)
    }

    /// Quotient by subspaces `K_v ⊆ Hom(C_v, D)`, using the complement spanned
    /// by the standard vectors off the pivots of `K`'s reduced echelon basis.
    pub fn quotient_by_k(&self, k: &[RMatrix]) -> Result<Quotient> {
        let n = self.quiver.num_vertices();
        if k.len() != n {
            return Err(Error::input("one subspace per vertex is required"));
        }
        let mut pi = Vec::with_capacity(n);
        let mut section = Vec::with_capacity(n);
        let mut kspan = Vec::with_capacity(n);
        for v in 0..n {
            if k[v].rows() != self.d.dim(v) {
                return Err(Error::shape(format!(
                    "subspace at {} lives in dimension {}, expected {}",
                    self.quiver.label(v),
                    k[v].rows(),
                    self.d.dim(v)
                )));
            }
            let (p, s, ks) = canonical_projection(&k[v])?;
            pi.push(p);
            section.push(s);
            kspan.push(ks);
        }
        let label = |v: usize| self.quiver.label(v).to_string();
        for (e, arrow) in self.quiver.arrows().iter().enumerate() {
            if !self.a[e].mul(&kspan[arrow.source])?.is_zero() {
                return Err(Error::input(format!("A[{}] does not vanish on K", arrow.id)));
            }
            if !self.b[e].mul(&kspan[arrow.target])?.is_zero() {
                return Err(Error::input(format!("B[{}] does not vanish on K", arrow.id)));
            }
        }
        for v in 0..n {
            if !self.j[v].mul(&kspan[v])?.is_zero() {
                return Err(Error::input(format!("j[{}] does not vanish on K", label(v))));
            }
        }
        let arrows = self.quiver.arrows();
        let a = arrows
            .iter()
            .enumerate()
            .map(|(e, ar)| RMatrix::product(&[&pi[ar.target], &self.a[e], &section[ar.source]]))
            .collect::<Result<Vec<_>>>()?;
        let b = arrows
            .iter()
            .enumerate()
            .map(|(e, ar)| RMatrix::product(&[&pi[ar.source], &self.b[e], &section[ar.target]]))
            .collect::<Result<Vec<_>>>()?;
        let i = (0..n).map(|v| pi[v].mul(&self.i[v])).collect::<Result<Vec<_>>>()?;
        let j = (0..n).map(|v| self.j[v].mul(&section[v])).collect::<Result<Vec<_>>>()?;
        let d = DimVector::new((0..n).map(|v| pi[v].rows() as i64).collect())?;
        let rep = FramedRep::new(self.quiver.clone(), d, self.f.clone(), a, b, i, j)?;
        let flat = rep.is_flat()?;
        let stable = rep.is_stable()?;
        Ok(Quotient {
            rep,
            pi,
            section,
            flat,
            stable,
        })
    }

    pub fn to_json(&self) -> Value {
        let q = &self.quiver;
        let by_arrow = |ms: &[RMatrix]| {
            let mut m = Map::new();
            for (e, a) in q.arrows().iter().enumerate() {
                m.insert(a.id.clone(), ms[e].to_json());
            }
            Value::Object(m)
        };
        let by_vertex = |ms: &[RMatrix]| {
            let mut m = Map::new();
            for v in 0..q.num_vertices() {
                m.insert(q.label(v).to_string(), ms[v].to_json());
            }
            Value::Object(m)
        };
        json!({
            "quiver": q.to_json(),
            "d": self.d.to_json(q),
            "f": self.f.to_json(q),
            "A": by_arrow(&self.a),
            "B": by_arrow(&self.b),
            "i": by_vertex(&self.i),
            "j": by_vertex(&self.j),
        })
    }

    /// Parses the rep schema; absent matrices are zero.
    pub fn from_json(value: &Value) -> Result<Self> {
        let qv = value
            .get("quiver")
            .ok_or_else(|| Error::input("representation needs a `quiver`"))?;
        let q = Quiver::from_json(qv)?;
        let vec_field = |k: &str| -> Result<DimVector> {
            match value.get(k) {
                Some(x) => DimVector::from_json(&q, x),
                None => Ok(DimVector::zeros(q.num_vertices())),
            }
        };
        let d = vec_field("d")?;
        let f = vec_field("f")?;
        let mut rep = FramedRep::zero(&q, &d, &f)?;
        let matrices = |k: &str| -> Result<Map<String, Value>> {
            match value.get(k) {
                None | Some(Value::Null) => Ok(Map::new()),
                Some(Value::Object(m)) => Ok(m.clone()),
                Some(_) => Err(Error::input(format!("`{k}` must map names to matrices"))),
            }
        };
        for (id, m) in matrices("A")? {
            let e = q.arrow_index(&id)?;
            let ar = &q.arrows()[e];
            rep.a[e] = RMatrix::from_json(&m, d.dim(ar.target), d.dim(ar.source))?;
        }
        for (id, m) in matrices("B")? {
            let e = q.arrow_index(&id)?;
            let ar = &q.arrows()[e];
            rep.b[e] = RMatrix::from_json(&m, d.dim(ar.source), d.dim(ar.target))?;
        }
        for (label, m) in matrices("i")? {
            let v = q.vertex_index(&label)?;
            rep.i[v] = RMatrix::from_json(&m, d.dim(v), f.dim(v))?;
        }
        for (label, m) in matrices("j")? {
            let v = q.vertex_index(&label)?;
            rep.j[v] = RMatrix::from_json(&m, f.dim(v), d.dim(v))?;
        }
        Ok(rep)
    }
}

fn grow(base: &RMatrix, extra: &RMatrix) -> Result<RMatrix> {
    if extra.cols() == 0 || extra.is_zero() {
        return Ok(base.clone());
    }
    Ok(RMatrix::hstack(&[base, extra], base.rows())?.column_span())
}

/// `(π, S, K')` for a subspace `K`: `K'` is the canonical basis of `K`, `S`
/// the standard vectors at the non-pivot rows of `K'`, and `π` the last rows
/// of `[K' | S]⁻¹`.
pub(crate) fn canonical_projection(k: &RMatrix) -> Result<(RMatrix, RMatrix, RMatrix)> {
    let n = k.rows();
    let kspan = k.column_span();
    let pivots = k.transpose().rref().pivots;
    let free: Vec<usize> = (0..n).filter(|r| !pivots.contains(r)).collect();
    let section = RMatrix::identity(n).select_columns(&free);
    let g = RMatrix::hstack(&[&kspan, &section], n)?;
    let ginv = g.inverse()?;
    let pi = ginv.submatrix(kspan.cols()..n, 0..n);
    Ok((pi, section, kspan))
}
