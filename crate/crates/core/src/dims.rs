//! Closed-form dimension, fiber-dimension and excess formulas.
//!
//! Every function returns the integer the formula produces, negative values
//! included. Whether the variety is actually nonempty is decided in
//! [`crate::roots`].

use crate::error::{Error, Result};
use crate::quiver::{k0, DimVector, IntVector, Quiver};

fn check(q: &Quiver, vs: &[&DimVector]) -> Result<()> {
    for v in vs {
        if v.len() != q.num_vertices() {
            return Err(Error::input(format!(
                "vector {v} does not match the {} vertices of the quiver",
                q.num_vertices()
            )));
        }
    }
    Ok(())
}

fn require_le(k: &DimVector, d: &DimVector) -> Result<()> {
    if !k.le(d)? {
        return Err(Error::input(format!("k = {k} is not <= d = {d}")));
    }
    Ok(())
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `2 fᵀd − dᵀCd`.
pub fn dim_nakajima(q: &Quiver, d: &DimVector, f: &DimVector) -> Result<i64> {
    check(q, &[d, f])?;
    let c = q.cartan();
    Ok(2 * dot(f.as_slice(), d.as_slice()) - c.form(d.as_slice(), d.as_slice()))
}

/// The same dimension summed over arrows and vertices, without the Cartan matrix.
pub fn dim_nakajima_expanded(q: &Quiver, d: &DimVector, f: &DimVector) -> Result<i64> {
    check(q, &[d, f])?;
    let arrows: i64 = q.arrows().iter().map(|a| d.get(a.source) * d.get(a.target)).sum();
    let verts: i64 = (0..q.num_vertices())
        .map(|v| d.get(v) * f.get(v) - d.get(v) * d.get(v))
        .sum();
    Ok(2 * arrows + 2 * verts)
}

/// Dimension of the pair variety `P(d, d−k)`.
pub fn dim_parabolic_pair(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector) -> Result<i64> {
    check(q, &[d, k, f])?;
    require_le(k, d)?;
    let k0 = k0(q, d, f)?;
    let corr: i64 = k.as_slice().iter().zip(k0.as_slice()).map(|(k, k0)| k * (k - k0)).sum();
    Ok(dim_nakajima(q, d, f)? - corr)
}

/// `dim M − fᵀk + dᵀCk − Σ_v Σ_{i≤j} κ_{v,i} κ_{v,j}` for flags at each vertex
/// with step sizes `steps[v]`; `k_v` is the sum of the steps.
pub fn dim_parabolic_steps(q: &Quiver, d: &DimVector, f: &DimVector, steps: &[Vec<i64>]) -> Result<i64> {
    check(q, &[d, f])?;
    if steps.len() != q.num_vertices() {
        return Err(Error::input("one list of flag steps per vertex is required"));
    }
    if steps.iter().flatten().any(|&s| s < 0) {
        return Err(Error::input("flag steps must be non-negative"));
    }
    let k = DimVector::new(steps.iter().map(|s| s.iter().sum()).collect())?;
    require_le(&k, d)?;
    let c = q.cartan();
    let mut flag_terms = 0;
    for s in steps {
        let total: i64 = s.iter().sum();
        let squares: i64 = s.iter().map(|x| x * x).sum();
        // Σ_{i≤j} κ_i κ_j = (total² + Σ κ²) / 2
        flag_terms += (total * total + squares) / 2;
    }
    Ok(dim_nakajima(q, d, f)? - dot(f.as_slice(), k.as_slice()) + c.form(d.as_slice(), k.as_slice()) - flag_terms)
}

/// Complete flags in each `K_v`.
pub fn dim_parabolic_full(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector) -> Result<i64> {
    check(q, &[d, k, f])?;
    let steps: Vec<Vec<i64>> = k.as_slice().iter().map(|&x| vec![1; x as usize]).collect();
    dim_parabolic_steps(q, d, f, &steps)
}

/// Monotone sequence `d⁽⁰⁾ ≥ … ≥ d⁽ℓ⁾` with a framing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainDims {
    levels: Vec<DimVector>,
    f: DimVector,
}

impl ChainDims {
    pub fn new(levels: Vec<DimVector>, f: DimVector) -> Result<Self> {
        let first = levels
            .first()
            .ok_or_else(|| Error::input("a chain needs at least one level"))?;
        for l in &levels {
            if l.len() != first.len() || f.len() != first.len() {
                return Err(Error::input("chain levels have different lengths"));
            }
        }
        for (m, w) in levels.windows(2).enumerate() {
            if !w[1].le(&w[0])? {
                return Err(Error::input(format!(
                    "chain is not monotone: level {} = {} exceeds level {m} = {}",
                    m + 1,
                    w[1],
                    w[0]
                )));
            }
        }
        Ok(ChainDims { levels, f })
    }

    pub fn levels(&self) -> &[DimVector] {
        &self.levels
    }

    pub fn framing(&self) -> &DimVector {
        &self.f
    }

    /// Number of steps ℓ.
    pub fn len(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `κ⁽ᵐ⁾_v = d⁽ᵐ⁻¹⁾_v − d⁽ᵐ⁾_v`, listed per vertex.
    pub fn steps(&self) -> Vec<Vec<i64>> {
        let n = self.f.len();
        (0..n)
            .map(|v| self.levels.windows(2).map(|w| w[0].get(v) - w[1].get(v)).collect())
            .collect()
    }

    /// `d⁽⁰⁾ − d⁽ℓ⁾`.
    pub fn total_k(&self) -> DimVector {
        self.levels[0]
            .checked_sub(self.levels.last().expect("nonempty"))
            .expect("monotone")
    }
}

pub fn dim_parabolic_chain(q: &Quiver, chain: &ChainDims) -> Result<i64> {
    dim_parabolic_steps(q, &chain.levels[0], &chain.f, &chain.steps())
}

/// Dimension of `BN^k` together with the clamped `k' = max(k, k⁰[d])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BnDim {
    pub raw_k: DimVector,
    pub effective_k: IntVector,
    pub dim: i64,
}

pub fn dim_bn(q: &Quiver, d: &DimVector, f: &DimVector, k: &DimVector) -> Result<BnDim> {
    check(q, &[d, f, k])?;
    require_le(k, d)?;
    let k0 = k0(q, d, f)?;
    let eff = k.to_int().max(&k0)?;
    let corr: i64 = eff
        .as_slice()
        .iter()
        .zip(k0.as_slice())
        .map(|(k, k0)| k * (k - k0))
        .sum();
    Ok(BnDim {
        raw_k: k.clone(),
        effective_k: eff,
        dim: dim_nakajima(q, d, f)? - corr,
    })
}

/// Dimension of the stratum `BN^{=r}`.
pub fn dim_bn_stratum(q: &Quiver, d: &DimVector, f: &DimVector, r: &DimVector) -> Result<i64> {
    check(q, &[d, f, r])?;
    let k0 = k0(q, d, f)?;
    if !k0.le(&r.to_int())? {
        return Err(Error::input(format!("stratum r = {r} is below k0 = {k0}")));
    }
    let corr: i64 = r.as_slice().iter().zip(k0.as_slice()).map(|(r, k0)| r * (r - k0)).sum();
    Ok(dim_nakajima(q, d, f)? - corr)
}

/// `Σ k_v (r_v − k_v)`: the product of Grassmannians `Gr(k_v, r_v)`.
pub fn fiber_dim_pminus(k: &DimVector, r: &DimVector) -> Result<i64> {
    if !k.le(r)? {
        return Err(Error::EmptyFiber(format!("k = {k} exceeds r = {r}")));
    }
    Ok(dot(k.as_slice(), r.as_slice()) - dot(k.as_slice(), k.as_slice()))
}

/// `Σ k_v (r_v − k⁰_v[d−k] − k_v)`, where `r` is the stratum of the quotient.
pub fn fiber_dim_pplus(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector, r: &DimVector) -> Result<i64> {
    check(q, &[d, k, f, r])?;
    require_le(k, d)?;
    let k0_hat = k0(q, &d.checked_sub(k)?, f)?;
    let bound = k.to_int().add(&k0_hat)?;
    if !bound.le(&r.to_int())? {
        return Err(Error::EmptyFiber(format!("r = {r} is below k + k0[d-k] = {bound}")));
    }
    Ok((0..k.len())
        .map(|v| k.get(v) * (r.get(v) - k0_hat.0[v] - k.get(v)))
        .sum())
}

/// Dimension of `p₋⁻¹(BN^{=r})` inside `P(d, d−k)`.
pub fn preimage_dim_pminus(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector, r: &DimVector) -> Result<i64> {
    check(q, &[d, k, f, r])?;
    let k0 = k0(q, d, f)?;
    if !k.le(r)? || !k0.le(&r.to_int())? {
        return Err(Error::input(format!(
            "stratum r = {r} must satisfy r >= k = {k} and r >= k0 = {k0}"
        )));
    }
    let corr: i64 = (0..r.len()).map(|v| (r.get(v) - k.get(v)) * (r.get(v) - k0.0[v])).sum();
    Ok(dim_parabolic_pair(q, d, k, f)? - corr)
}

/// Dimension of `p₊⁻¹(BN^{=r})`, with `r` a stratum of `M(d−k)`.
pub fn preimage_dim_pplus(q: &Quiver, d: &DimVector, k: &DimVector, f: &DimVector, r: &DimVector) -> Result<i64> {
    check(q, &[d, k, f, r])?;
    require_le(k, d)?;
    let k0_hat = k0(q, &d.checked_sub(k)?, f)?;
    let bound = k.to_int().add(&k0_hat)?;
    if !bound.le(&r.to_int())? {
        return Err(Error::input(format!("stratum r = {r} is below k + k0[d-k] = {bound}")));
    }
    let corr: i64 = (0..r.len())
        .map(|v| r.get(v) * (r.get(v) - k.get(v) - k0_hat.0[v]))
        .sum();
    Ok(dim_parabolic_pair(q, d, k, f)? - corr)
}

/// `(R1, R2)` for `d0 ≥ d1 ≥ d2`.
pub fn excess(q: &Quiver, d0: &DimVector, d1: &DimVector, d2: &DimVector) -> Result<(i64, i64)> {
    check(q, &[d0, d1, d2])?;
    if !d1.le(d0)? || !d2.le(d1)? {
        return Err(Error::input(format!(
            "excess needs d0 >= d1 >= d2, got {d0}, {d1}, {d2}"
        )));
    }
    let k = d0.checked_sub(d1)?;
    let kp = d1.checked_sub(d2)?;
    let r1 = dot(k.as_slice(), kp.as_slice());
    let n = q.num_vertices();
    let mut r2 = 0;
    for v in 0..n {
        for w in 0..n {
            let m = (q.arrow_count_idx(v, w) + q.arrow_count_idx(w, v)) as i64;
            r2 += m * kp.get(v) * k.get(w);
        }
    }
    Ok((r1, r2))
}

/// `Σ_{v,w} |Q₁(v,w)| k_v k_w`.
pub fn half_dim_defect(q: &Quiver, k: &DimVector) -> Result<i64> {
    check(q, &[k])?;
    Ok(q.arrows().iter().map(|a| k.get(a.source) * k.get(a.target)).sum())
}

/// No arrow (loops included) joins two vertices in the support of `k`.
pub fn is_lagrangian_support(q: &Quiver, k: &DimVector) -> Result<bool> {
    check(q, &[k])?;
    Ok(q.arrows().iter().all(|a| k.get(a.source) == 0 || k.get(a.target) == 0))
}

/// `Σ_v Σ_{m₁<m₂} κ⁽ᵐ¹⁾_v κ⁽ᵐ²⁾_v`.
pub fn flag_fiber_dim(chain: &ChainDims) -> i64 {
    chain
        .steps()
        .iter()
        .map(|s| {
            let total: i64 = s.iter().sum();
            let squares: i64 = s.iter().map(|x| x * x).sum();
            (total * total - squares) / 2
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(x: &[i64]) -> DimVector {
        DimVector::new(x.to_vec()).unwrap()
    }

    fn jordan_chain(ds: &[i64]) -> ChainDims {
        ChainDims::new(ds.iter().map(|&d| dv(&[d])).collect(), dv(&[1])).unwrap()
    }

    #[test]
    fn nakajima_examples() {
        let j = Quiver::jordan();
        assert_eq!(dim_nakajima(&j, &dv(&[3]), &dv(&[1])).unwrap(), 6);
        let a = Quiver::a1();
        assert_eq!(dim_nakajima(&a, &dv(&[2]), &dv(&[5])).unwrap(), 12);
        assert_eq!(dim_nakajima(&a, &dv(&[0]), &dv(&[5])).unwrap(), 0);
    }

    #[test]
    fn pair_and_full() {
        let j = Quiver::jordan();
        let f = dv(&[1]);
        for d in 2..10 {
            assert_eq!(dim_parabolic_pair(&j, &dv(&[d]), &dv(&[1]), &f).unwrap(), 2 * d - 2);
            assert_eq!(dim_parabolic_pair(&j, &dv(&[d]), &dv(&[2]), &f).unwrap(), 2 * d - 6);
        }
        assert_eq!(dim_parabolic_pair(&j, &dv(&[4]), &dv(&[0]), &f).unwrap(), 8);
        assert!(dim_parabolic_pair(&j, &dv(&[1]), &dv(&[2]), &f).is_err());
        assert_eq!(dim_parabolic_full(&j, &dv(&[3]), &dv(&[1]), &f).unwrap(), 4);
        assert_eq!(dim_parabolic_full(&j, &dv(&[4]), &dv(&[2]), &f).unwrap(), 3);
        assert_eq!(dim_parabolic_full(&j, &dv(&[4]), &dv(&[0]), &f).unwrap(), 8);
    }

    #[test]
    fn chain_examples() {
        let j = Quiver::jordan();
        for d in 3..10 {
            assert_eq!(
                dim_parabolic_chain(&j, &jordan_chain(&[d, d - 1, d - 2])).unwrap(),
                2 * d - 5
            );
            assert_eq!(
                dim_parabolic_chain(&j, &jordan_chain(&[d, d - 2])).unwrap(),
                dim_parabolic_pair(&j, &dv(&[d]), &dv(&[2]), &dv(&[1])).unwrap()
            );
            assert_eq!(flag_fiber_dim(&jordan_chain(&[d, d - 1, d - 2])), 1);
        }
        assert_eq!(
            dim_parabolic_chain(&j, &jordan_chain(&[5, 4, 3, 2])).unwrap(),
            dim_parabolic_full(&j, &dv(&[5]), &dv(&[3]), &dv(&[1])).unwrap()
        );
        assert!(ChainDims::new(vec![dv(&[1]), dv(&[2])], dv(&[1])).is_err());
        assert_eq!(flag_fiber_dim(&jordan_chain(&[4, 1])), 0);
        assert_eq!(flag_fiber_dim(&jordan_chain(&[4, 3, 2, 1])), 3);
    }

    #[test]
    fn bn_examples() {
        let j = Quiver::jordan();
        for d in 1..8 {
            for k in 0..=d {
                assert_eq!(
                    dim_bn(&j, &dv(&[d]), &dv(&[1]), &dv(&[k])).unwrap().dim,
                    2 * d - k * (k + 1)
                );
                assert_eq!(
                    dim_bn(&j, &dv(&[d]), &dv(&[3]), &dv(&[k])).unwrap().dim,
                    6 * d - k * (k + 3)
                );
            }
        }
        // A1, d=2, f=3: k0 = 1, so k = 0 clamps to 1
        let b = dim_bn(&Quiver::a1(), &dv(&[2]), &dv(&[3]), &dv(&[0])).unwrap();
        assert_eq!(b.effective_k, IntVector(vec![1]));
        assert_eq!(b.dim, (4 - 1) * 3 - 2 * 2 - 1);
    }

    #[test]
    fn stratum_examples() {
        let j = Quiver::jordan();
        assert_eq!(dim_bn_stratum(&j, &dv(&[3]), &dv(&[1]), &dv(&[2])).unwrap(), 0);
        assert_eq!(dim_bn_stratum(&j, &dv(&[3]), &dv(&[1]), &dv(&[0])).unwrap(), 6);
        let a = Quiver::a1();
        assert_eq!(dim_bn_stratum(&a, &dv(&[2]), &dv(&[5]), &dv(&[1])).unwrap(), 10);
        assert!(dim_bn_stratum(&a, &dv(&[2]), &dv(&[1]), &dv(&[0])).is_err());
    }

    #[test]
    fn fibers_and_preimages() {
        assert_eq!(fiber_dim_pminus(&dv(&[2]), &dv(&[2])).unwrap(), 0);
        assert_eq!(fiber_dim_pminus(&dv(&[1]), &dv(&[2])).unwrap(), 1);
        assert!(matches!(
            fiber_dim_pminus(&dv(&[3]), &dv(&[2])),
            Err(Error::EmptyFiber(_))
        ));

        let a = Quiver::a1();
        for f in 0..8i64 {
            for d in 0..=f {
                for k in 0..=d {
                    let k0h = 2 * (d - k) - f;
                    if k0h < -k {
                        let got = fiber_dim_pplus(&a, &dv(&[d]), &dv(&[k]), &dv(&[f]), &dv(&[0])).unwrap();
                        assert_eq!(got, k * (f - 2 * (d - k) - k));
                    }
                }
            }
        }

        let j = Quiver::jordan();
        let (d, k, f) = (dv(&[3]), dv(&[1]), dv(&[1]));
        assert_eq!(preimage_dim_pminus(&j, &d, &k, &f, &dv(&[2])).unwrap(), 1);
        assert_eq!(
            preimage_dim_pminus(&j, &d, &k, &f, &k).unwrap(),
            dim_parabolic_pair(&j, &d, &k, &f).unwrap()
        );
        // dense p+ stratum: r = max(k + k0[d-k], 0) = 0
        assert_eq!(
            preimage_dim_pplus(&j, &d, &k, &f, &dv(&[0])).unwrap(),
            dim_parabolic_pair(&j, &d, &k, &f).unwrap()
        );
    }

    #[test]
    fn excess_examples() {
        let j = Quiver::jordan();
        assert_eq!(excess(&j, &dv(&[5]), &dv(&[4]), &dv(&[3])).unwrap(), (1, 2));
        assert_eq!(excess(&j, &dv(&[5]), &dv(&[5]), &dv(&[3])).unwrap(), (0, 0));
        let a = Quiver::a1();
        assert_eq!(excess(&a, &dv(&[5]), &dv(&[4]), &dv(&[3])).unwrap(), (1, 0));
        assert!(excess(&a, &dv(&[3]), &dv(&[4]), &dv(&[3])).is_err());
    }

    #[test]
    fn defect_examples() {
        let j = Quiver::jordan();
        assert_eq!(half_dim_defect(&j, &dv(&[1])).unwrap(), 1);
        assert!(!is_lagrangian_support(&j, &dv(&[1])).unwrap());
        let a = Quiver::a1();
        assert_eq!(half_dim_defect(&a, &dv(&[4])).unwrap(), 0);
        assert!(is_lagrangian_support(&a, &dv(&[4])).unwrap());
        let p = Quiver::path(2);
        assert_eq!(half_dim_defect(&p, &dv(&[1, 0])).unwrap(), 0);
        assert!(is_lagrangian_support(&p, &dv(&[1, 0])).unwrap());
    }

    #[test]
    fn expanded_matches() {
        let p = Quiver::path(3).double();
        let (d, f) = (dv(&[2, 3, 1]), dv(&[1, 0, 4]));
        assert_eq!(
            dim_nakajima(&p, &d, &f).unwrap(),
            dim_nakajima_expanded(&p, &d, &f).unwrap()
        );
    }
}
