use serde_json::{json, Map, Value};

use super::point::{fiber_dims_at, FiberDims};
use super::{FramedRep, ParabolicPoint, Validation};
use crate::dims::ChainDims;
use crate::error::{Error, Result};
use crate::linalg::{complete_basis, extend_basis, RMatrix};

/// Representations `D⁽⁰⁾ → D⁽¹⁾ → … → D⁽ℓ⁾` joined by surjections
/// `π⁽ᵐ⁾_v : D⁽ᵐ⁾_v → D⁽ᵐ⁺¹⁾_v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicChainPoint {
    pub levels: Vec<FramedRep>,
    pub pi: Vec<Vec<RMatrix>>,
}

impl ParabolicChainPoint {
    pub fn new(levels: Vec<FramedRep>, pi: Vec<Vec<RMatrix>>) -> Result<Self> {
        let first = levels
            .first()
            .ok_or_else(|| Error::input("a chain needs at least one level"))?;
        if pi.len() + 1 != levels.len() {
            return Err(Error::shape(format!(
                "{} levels need {} projections, got {}",
                levels.len(),
                levels.len() - 1,
                pi.len()
            )));
        }
        let n = first.quiver.num_vertices();
        for l in &levels {
            if l.quiver != first.quiver || l.f != first.f {
                return Err(Error::input("all levels must share the quiver and the framing"));
            }
        }
        for (m, maps) in pi.iter().enumerate() {
            if maps.len() != n {
                return Err(Error::shape("one projection per vertex is required"));
            }
            for (v, p) in maps.iter().enumerate() {
                let want = (levels[m + 1].d.dim(v), levels[m].d.dim(v));
                if p.shape() != want {
                    return Err(Error::shape(format!(
                        "pi[{m}][{}] is {}x{}, expected {}x{}",
                        first.quiver.label(v),
                        p.rows(),
                        p.cols(),
                        want.0,
                        want.1
                    )));
                }
            }
        }
        Ok(ParabolicChainPoint { levels, pi })
    }

    /// Number of steps ℓ.
    pub fn len(&self) -> usize {
        self.pi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pi.is_empty()
    }

    pub fn dims(&self) -> Result<ChainDims> {
        ChainDims::new(
            self.levels.iter().map(|l| l.d.clone()).collect(),
            self.levels[0].f.clone(),
        )
    }

    /// `π⁽ᵐ⁻¹⁾_v ∘ … ∘ π⁽⁰⁾_v`; the identity for `m = 0`.
    pub fn composite(&self, v: usize, m: usize) -> Result<RMatrix> {
        let mut acc = RMatrix::identity(self.levels[0].d.dim(v));
        for step in &self.pi[..m] {
            acc = step[v].mul(&acc)?;
        }
        Ok(acc)
    }

    /// One chain step per flag step, vertices in order and each flag from the
    /// bottom up. Level `m` is `D` divided by the flag steps taken so far.
    pub fn from_flag(pt: &ParabolicPoint) -> Result<Self> {
        let val = pt.validate()?;
        if !val.ok() {
            return Err(Error::input("cannot build a chain from an invalid point"));
        }
        let n = pt.flags.len();
        let d = &pt.rep.d;
        let mut cumulative: Vec<RMatrix> = (0..n).map(|v| RMatrix::zeros(d.dim(v), 0)).collect();
        let mut quotients = vec![pt.rep.quotient_by_k(&cumulative)?];
        for v in 0..n {
            for step in &pt.flags[v] {
                cumulative[v] = step.clone();
                quotients.push(pt.rep.quotient_by_k(&cumulative)?);
            }
        }
        let mut pi = Vec::with_capacity(quotients.len() - 1);
        for w in quotients.windows(2) {
            let maps = (0..n)
                .map(|v| w[1].pi[v].mul(&w[0].section[v]))
                .collect::<Result<Vec<_>>>()?;
            pi.push(maps);
        }
        let levels = quotients.into_iter().map(|q| q.rep).collect();
        ParabolicChainPoint::new(levels, pi)
    }

    /// Flags of kernels of the composite projections, repeated kernels dropped.
    pub fn to_flag(&self) -> Result<ParabolicPoint> {
        let val = self.validate()?;
        if !val.ok() {
            return Err(Error::input("cannot build a flag from an invalid chain"));
        }
        let n = self.levels[0].quiver.num_vertices();
        let mut flags = vec![Vec::new(); n];
        for (v, fl) in flags.iter_mut().enumerate() {
            let mut prev = 0;
            for m in 1..=self.len() {
                let ker = self.composite(v, m)?.kernel_basis();
                if ker.cols() > prev {
                    prev = ker.cols();
                    fl.push(ker.column_span());
                }
            }
        }
        ParabolicPoint::new(self.levels[0].clone(), flags)
    }

    pub fn validate(&self) -> Result<Validation> {
        let mut val = Validation::default();
        for (m, l) in self.levels.iter().enumerate() {
            val.extend(&format!("level {m}: "), l.validate()?);
        }
        let q = &self.levels[0].quiver;
        for (m, maps) in self.pi.iter().enumerate() {
            let (src, dst) = (&self.levels[m], &self.levels[m + 1]);
            let short: Vec<&str> = (0..maps.len())
                .filter(|&v| maps[v].rank() < maps[v].rows())
                .map(|v| q.label(v))
                .collect();
            val.push(
                format!("pi[{m}] surjective"),
                short.is_empty(),
                if short.is_empty() {
                    String::new()
                } else {
                    format!("not onto at {}", short.join(", "))
                },
            );
            let mut broken = Vec::new();
            for (e, ar) in q.arrows().iter().enumerate() {
                let (s, t) = (ar.source, ar.target);
                if dst.a[e].mul(&maps[s])? != maps[t].mul(&src.a[e])? {
                    broken.push(format!("A[{}]", ar.id));
                }
                if dst.b[e].mul(&maps[t])? != maps[s].mul(&src.b[e])? {
                    broken.push(format!("B[{}]", ar.id));
                }
            }
            for v in 0..maps.len() {
                if maps[v].mul(&src.i[v])? != dst.i[v] {
                    broken.push(format!("i[{}]", q.label(v)));
                }
                if dst.j[v].mul(&maps[v])? != src.j[v] {
                    broken.push(format!("j[{}]", q.label(v)));
                }
            }
            val.push(
                format!("pi[{m}] commutes"),
                broken.is_empty(),
                if broken.is_empty() {
                    String::new()
                } else {
                    format!("squares fail for {}", broken.join(", "))
                },
            );
        }
        let mut loud = Vec::new();
        for v in 0..q.num_vertices() {
            let k = self.composite(v, self.len())?.kernel_basis();
            if !self.levels[0].m1(v)?.mul(&k)?.is_zero() {
                loud.push(q.label(v).to_string());
            }
        }
        val.push(
            "composite kernel trivial",
            loud.is_empty(),
            if loud.is_empty() {
                String::new()
            } else {
                format!("A, B or j act nontrivially on the kernel at {}", loud.join(", "))
            },
        );
        Ok(val)
    }

    pub fn forget_first(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::input("chain has no step to forget"));
        }
        ParabolicChainPoint::new(self.levels[1..].to_vec(), self.pi[1..].to_vec())
    }

    pub fn forget_last(&self) -> Result<Self> {
        if self.is_empty() {
            return Err(Error::input("chain has no step to forget"));
        }
        let l = self.len();
        ParabolicChainPoint::new(self.levels[..l].to_vec(), self.pi[..l - 1].to_vec())
    }

    /// Fiber dimensions at `v` of the flag point this chain corresponds to.
    pub fn fiber_dims_at(&self, v: usize) -> Result<FiberDims> {
        fiber_dims_at(&self.to_flag()?, v)
    }

    pub fn to_json(&self) -> Value {
        let q = &self.levels[0].quiver;
        let pi: Vec<Value> = self
            .pi
            .iter()
            .map(|maps| {
                let mut m = Map::new();
                for (v, p) in maps.iter().enumerate() {
                    m.insert(q.label(v).to_string(), p.to_json());
                }
                Value::Object(m)
            })
            .collect();
        json!({
            "levels": self.levels.iter().map(FramedRep::to_json).collect::<Vec<_>>(),
            "pi": pi,
        })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let levels = value
            .get("levels")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::input("chain needs a `levels` array"))?
            .iter()
            .map(FramedRep::from_json)
            .collect::<Result<Vec<_>>>()?;
        let first = levels
            .first()
            .ok_or_else(|| Error::input("a chain needs at least one level"))?;
        let q = first.quiver.clone();
        let pis = match value.get("pi") {
            None => Vec::new(),
            Some(p) => p
                .as_array()
                .ok_or_else(|| Error::input("`pi` must be an array"))?
                .clone(),
        };
        if pis.len() + 1 != levels.len() {
            return Err(Error::shape("need one `pi` entry per step"));
        }
        let mut pi = Vec::with_capacity(pis.len());
        for (m, obj) in pis.iter().enumerate() {
            let obj = obj
                .as_object()
                .ok_or_else(|| Error::input("each `pi` entry maps vertices to matrices"))?;
            let mut maps: Vec<RMatrix> = (0..q.num_vertices())
                .map(|v| RMatrix::zeros(levels[m + 1].d.dim(v), levels[m].d.dim(v)))
                .collect();
            for (label, mat) in obj {
                let v = q.vertex_index(label)?;
                maps[v] = RMatrix::from_json(mat, levels[m + 1].d.dim(v), levels[m].d.dim(v))?;
            }
            pi.push(maps);
        }
        ParabolicChainPoint::new(levels, pi)
    }
}

/// Outcome of [`block_form_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockFormReport {
    /// Every block outside the `?` columns and the `⋆` block vanishes.
    pub zero_pattern_ok: bool,
    /// The `⋆` block, `ker π⁽¹⁾ → ker π⁽⁰⁾`, vanishes as well.
    pub star_zero: bool,
    pub violations: Vec<String>,
}

impl BlockFormReport {
    pub fn passes(&self) -> bool {
        self.zero_pattern_ok && self.star_zero
    }

    pub fn to_json(&self) -> Value {
        json!({
            "pass": self.passes(),
            "zero_pattern_ok": self.zero_pattern_ok,
            "star_zero": self.star_zero,
            "violations": self.violations,
        })
    }
}

/// Writes `A⁽⁰⁾_e, B⁽⁰⁾_e` of a two-step chain in a basis
/// `D⁽⁰⁾_v = C_v ⊕ K'_v ⊕ K_v` with `K = ker π⁽⁰⁾` and `K ⊕ K' = ker π⁽¹⁾π⁽⁰⁾`,
/// and checks the zero blocks. Columns of `K` must vanish; columns of `K'` may
/// only be nonzero in the `K` rows (the `⋆` block).
pub fn block_form_check(ch: &ParabolicChainPoint) -> Result<BlockFormReport> {
    if ch.len() != 2 {
        return Err(Error::input(format!(
            "block form needs a two-step chain, got {} steps",
            ch.len()
        )));
    }
    let d0 = &ch.levels[0];
    let q = &d0.quiver;
    let n = q.num_vertices();
    let mut bases = Vec::with_capacity(n);
    let mut sizes = Vec::with_capacity(n);
    for v in 0..n {
        let k = ch.pi[0][v].kernel_basis();
        let ktot = ch.composite(v, 2)?.kernel_basis();
        let with_kp = extend_basis(&k, &ktot)?;
        let full = complete_basis(&with_kp)?;
        let (kc, kpc, dim) = (k.cols(), with_kp.cols() - k.cols(), d0.d.dim(v));
        if full.cols() != dim {
            return Err(Error::Internal(format!("could not complete a basis at {}", q.label(v))));
        }
        let c = dim - kc - kpc;
        // reorder columns to (C, K', K)
        let order: Vec<usize> = (kc + kpc..dim).chain(kc..kc + kpc).chain(0..kc).collect();
        bases.push(full.select_columns(&order));
        sizes.push((c, kpc, kc));
    }
    let inverses = bases
        .iter()
        .map(RMatrix::inverse)
        .collect::<Result<Vec<_>>>()
        .map_err(|e| Error::Internal(format!("adapted basis is singular: {e}")))?;

    let mut zero_ok = true;
    let mut star_zero = true;
    let mut violations = Vec::new();
    let mut inspect = |name: String, m: &RMatrix, rows: (usize, usize, usize), cols: (usize, usize, usize)| {
        let (rc, rkp, _) = rows;
        let (cc, ckp, ck) = cols;
        let upper = rc + rkp;
        let nonzero = |r0: usize, r1: usize, c0: usize, c1: usize| {
            (r0..r1).any(|r| (c0..c1).any(|c| !num::Zero::is_zero(m.get(r, c))))
        };
        if nonzero(0, m.rows(), cc + ckp, cc + ckp + ck) {
            zero_ok = false;
            violations.push(format!("{name}: nonzero on K columns"));
        }
        if nonzero(0, upper, cc, cc + ckp) {
            zero_ok = false;
            violations.push(format!("{name}: nonzero K' columns above the star block"));
        }
        if nonzero(upper, m.rows(), cc, cc + ckp) {
            star_zero = false;
            violations.push(format!("{name}: star block K' -> K is nonzero"));
        }
    };
    for (e, ar) in q.arrows().iter().enumerate() {
        let (s, t) = (ar.source, ar.target);
        let a = RMatrix::product(&[&inverses[t], &d0.a[e], &bases[s]])?;
        inspect(format!("A[{}]", ar.id), &a, sizes[t], sizes[s]);
        let b = RMatrix::product(&[&inverses[s], &d0.b[e], &bases[t]])?;
        inspect(format!("B[{}]", ar.id), &b, sizes[s], sizes[t]);
    }
    Ok(BlockFormReport {
        zero_pattern_ok: zero_ok,
        star_zero,
        violations,
    })
}
