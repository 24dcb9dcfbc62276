//! Seeded run of the invariant suite at desk scale.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::dims::{
    dim_bn, dim_bn_stratum, dim_nakajima, dim_nakajima_expanded, dim_parabolic_chain, dim_parabolic_pair, excess,
    fiber_dim_pminus, flag_fiber_dim, half_dim_defect, is_lagrangian_support, preimage_dim_pminus, ChainDims,
};
use crate::gallery::{hilb_fixed_point, random_gallery_point, Family, Partition};
use crate::linalg::{rat, span_eq, RMatrix};
use crate::quiver::{k0, DimVector, Quiver};
use crate::rep::{tangent_complex, ParabolicChainPoint};
use crate::roots::{bn_nonempty, framed_graph, is_positive_root, nakajima_nonempty, parabolic_nonempty, RootGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestRow {
    pub name: String,
    pub cases: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SelftestSummary {
    pub seed: u64,
    pub rows: Vec<SelftestRow>,
}

impl SelftestSummary {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.failures == 0)
    }

    pub fn table(&self) -> String {
        let width = self.rows.iter().map(|r| r.name.len()).max().unwrap_or(0);
        let mut out = format!("seed {}\n", self.seed);
        for r in &self.rows {
            let status = if r.failures == 0 { "ok" } else { "FAIL" };
            out.push_str(&format!(
                "{:<width$}  {:>6} cases  {:>4} failed  {status}\n",
                r.name, r.cases, r.failures
            ));
            if let Some(f) = &r.first_failure {
                out.push_str(&format!("{:<width$}  first failure: {f}\n", ""));
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "pass": self.ok(),
            "checks": self.rows.iter().map(|r| json!({
                "name": r.name,
                "cases": r.cases,
                "failures": r.failures,
                "first_failure": r.first_failure,
            })).collect::<Vec<_>>(),
        })
    }
}

type Check = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn row(name: &str, cases: usize, mut run: impl FnMut(usize) -> Check) -> SelftestRow {
    let mut failures = 0;
    let mut first_failure = None;
    for c in 0..cases {
        if let Err(e) = run(c) {
            failures += 1;
            first_failure.get_or_insert(e);
        }
    }
    SelftestRow {
        name: name.to_string(),
        cases,
        failures,
        first_failure,
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn dv(x: Vec<i64>) -> DimVector {
    DimVector::new(x).expect("non-negative")
}

fn random_quiver(rng: &mut ChaCha8Rng) -> Quiver {
    let n = rng.gen_range(1..=4);
    let labels: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let mut arrows = Vec::new();
    for v in 0..n {
        for w in v..n {
            for _ in 0..rng.gen_range(0..=3) {
                let (s, t) = if rng.gen_bool(0.5) { (v, w) } else { (w, v) };
                arrows.push((format!("e{}", arrows.len()), labels[s].clone(), labels[t].clone()));
            }
        }
    }
    Quiver::new(&labels, &arrows).expect("fresh labels")
}

struct Case {
    q: Quiver,
    d0: DimVector,
    d1: DimVector,
    d2: DimVector,
    f: DimVector,
}

fn random_case(rng: &mut ChaCha8Rng, max: i64) -> Case {
    let q = random_quiver(rng);
    let n = q.num_vertices();
    let d0: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    let d1: Vec<i64> = d0.iter().map(|&x| rng.gen_range(0..=x)).collect();
    let d2: Vec<i64> = d1.iter().map(|&x| rng.gen_range(0..=x)).collect();
    let f: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
    Case {
        q,
        d0: dv(d0),
        d1: dv(d1),
        d2: dv(d2),
        f: dv(f),
    }
}

fn identities(c: &Case) -> Check {
    let Case { q, d0, d1, d2, f } = c;
    let ctx = || format!("d={d0} d'={d1} d''={d2} f={f} on {}", q.to_json());
    let k = d0.checked_sub(d1).map_err(err)?;
    let kp = d1.checked_sub(d2).map_err(err)?;
    let m0 = dim_nakajima(q, d0, f).map_err(err)?;
    let m1 = dim_nakajima(q, d1, f).map_err(err)?;
    ensure(m0 == dim_nakajima_expanded(q, d0, f).map_err(err)?, || {
        format!("expanded form, {}", ctx())
    })?;

    let cd = q.cartan().apply(d0.as_slice());
    let base = k0(q, d0, f).map_err(err)?;
    ensure((0..q.num_vertices()).all(|v| base.0[v] + f.get(v) == cd[v]), || {
        format!("k0 + f = Cd, {}", ctx())
    })?;
    let ck = q.cartan().apply(k.as_slice());
    let shifted = k0(q, d1, f).map_err(err)?;
    ensure((0..q.num_vertices()).all(|v| shifted.0[v] == base.0[v] - ck[v]), || {
        format!("k0 shift, {}", ctx())
    })?;

    let pair = dim_parabolic_pair(q, d0, &k, f).map_err(err)?;
    let defect = half_dim_defect(q, &k).map_err(err)?;
    ensure(2 * pair == m0 + m1 - 2 * defect, || {
        format!("half dimension, {}", ctx())
    })?;
    let lag = is_lagrangian_support(q, &k).map_err(err)?;
    ensure(lag == (2 * pair == m0 + m1), || {
        format!("Lagrangian support, {}", ctx())
    })?;

    let chain = ChainDims::new(vec![d0.clone(), d1.clone(), d2.clone()], f.clone()).map_err(err)?;
    let triple = dim_parabolic_chain(q, &chain).map_err(err)?;
    let second = dim_parabolic_pair(q, d1, &kp, f).map_err(err)?;
    let (r1, r2) = excess(q, d0, d1, d2).map_err(err)?;
    ensure(triple == pair + second - m1 + r1 - r2, || {
        format!("triple identity, {}", ctx())
    })?;
    let outer = dim_parabolic_pair(q, d0, &d0.checked_sub(d2).map_err(err)?, f).map_err(err)?;
    ensure(triple == outer + flag_fiber_dim(&chain), || {
        format!("fibration, {}", ctx())
    })?;

    // additivity and strict drop over one stratum r >= max(k, k0, 0)
    let n = q.num_vertices();
    let r: Vec<i64> = (0..n)
        .map(|v| (k.get(v).max(base.0[v]).max(0) + (v as i64 % 2)).min(d0.get(v)))
        .collect();
    if (0..n).all(|v| r[v] >= k.get(v) && r[v] >= base.0[v]) {
        let r = dv(r);
        let pre = preimage_dim_pminus(q, d0, &k, f, &r).map_err(err)?;
        let stratum = dim_bn_stratum(q, d0, f, &r).map_err(err)?;
        ensure(pre == stratum + fiber_dim_pminus(&k, &r).map_err(err)?, || {
            format!("additivity, {}", ctx())
        })?;
        let strict = (0..n).any(|v| r.get(v) > k.get(v).max(base.0[v]));
        ensure(if strict { pre < pair } else { pre == pair }, || {
            format!("strict drop at r={r}, {}", ctx())
        })?;
    }
    Ok(())
}

fn roots(c: &Case) -> Check {
    let Case { q, d0, d1, f, .. } = c;
    let ctx = || format!("d={d0} d'={d1} f={f} on {}", q.to_json());
    let g = RootGraph::of_quiver(q);
    if !d0.is_zero() {
        let res = is_positive_root(&g, d0.as_slice()).map_err(err)?;
        ensure(res.replay(&g), || format!("trace replay, {}", ctx()))?;
        let mut h = d0.total();
        for (_, v) in &res.trace {
            let next: i64 = v.iter().sum();
            ensure(next < h, || format!("height must drop, {}", ctx()))?;
            h = next;
        }
    }
    let k = d0.checked_sub(d1).map_err(err)?;
    if parabolic_nonempty(q, d0, &k, f).map_err(err)?.nonempty {
        ensure(nakajima_nonempty(q, d0, f).map_err(err)?.nonempty, || {
            format!("source empty, {}", ctx())
        })?;
        ensure(nakajima_nonempty(q, d1, f).map_err(err)?.nonempty, || {
            format!("target empty, {}", ctx())
        })?;
    }
    let r = dv((0..q.num_vertices()).map(|v| (k.get(v) + 1).min(d0.get(v))).collect());
    if bn_nonempty(q, d0, f, &r).map_err(err)?.nonempty {
        ensure(bn_nonempty(q, d0, f, &k).map_err(err)?.nonempty, || {
            format!("monotonicity, {}", ctx())
        })?;
    }
    Ok(())
}

fn gallery_point(fam: Family, seed: u64) -> Check {
    let ctx = format!("{} seed {seed}", fam.name());
    let pt = random_gallery_point(fam, seed).map_err(err)?;
    let rep = &pt.rep;
    ensure(pt.validate().map_err(err)?.ok(), || format!("invalid point, {ctx}"))?;
    let st = rep.stability().map_err(err)?;
    ensure(st.iterations <= rep.d.total() as usize + 1, || {
        format!("saturation too long, {ctx}")
    })?;

    let (r, _) = rep.bn_stratum_of().map_err(err)?;
    let k0v = k0(&rep.quiver, &rep.d, &rep.f).map_err(err)?;
    ensure(k0v.le(&r.to_int()).map_err(err)?, || format!("stratum below k0, {ctx}"))?;

    let t = tangent_complex(&pt).map_err(err)?;
    ensure(t.ok(), || format!("tangent complex {:?}, {ctx}", t))?;

    let plus = pt.pplus().map_err(err)?;
    let (r_hat, _) = plus.bn_stratum_of().map_err(err)?;
    let k0_hat = k0(&rep.quiver, &rep.d.checked_sub(&pt.k()).map_err(err)?, &rep.f).map_err(err)?;
    ensure(k0_hat.le(&r_hat.to_int()).map_err(err)?, || {
        format!("p+ stratum below k0[d-k], {ctx}")
    })?;

    let quo = rep.quotient_by_k(&pt.tops()).map_err(err)?;
    ensure(quo.flat && quo.stable, || {
        format!("quotient not flat and stable, {ctx}")
    })?;

    let ch = ParabolicChainPoint::from_flag(&pt).map_err(err)?;
    ensure(ch.validate().map_err(err)?.ok(), || format!("chain invalid, {ctx}"))?;
    let back = ch.to_flag().map_err(err)?;
    ensure(back.steps() == pt.steps(), || {
        format!("round trip changed steps, {ctx}")
    })?;
    for (a, b) in back.flags.iter().flatten().zip(pt.flags.iter().flatten()) {
        ensure(span_eq(a, b).map_err(err)?, || {
            format!("round trip changed a flag, {ctx}")
        })?;
    }
    Ok(())
}

/// Runs every check family; the same seed always gives the same summary.
pub fn run(seed: u64) -> SelftestSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();

    let cases: Vec<Case> = (0..500).map(|_| random_case(&mut rng, 6)).collect();
    rows.push(row("dimension identities", cases.len(), |i| identities(&cases[i])));
    let small: Vec<Case> = (0..200).map(|_| random_case(&mut rng, 3)).collect();
    rows.push(row("root test and nonemptiness", small.len(), |i| roots(&small[i])));

    let jordan = Quiver::jordan();
    rows.push(row("Hilbert scheme closed forms", 21 * 21, |i| {
        let (d, k) = ((i / 21) as i64, (i % 21) as i64);
        let ne = parabolic_nonempty(&jordan, &dv(vec![d]), &dv(vec![k]), &dv(vec![1])).map_err(err)?;
        ensure(ne.nonempty == (2 * d >= k * (k + 1)), || {
            format!("nonempty d={d} k={k}")
        })?;
        if k <= d && (1..=12).contains(&d) {
            let bn = dim_bn(&jordan, &dv(vec![d]), &dv(vec![1]), &dv(vec![k])).map_err(err)?;
            ensure(bn.dim == 2 * d - k * (k + 1), || format!("dim d={d} k={k}"))?;
        }
        Ok(())
    }));

    let a1 = Quiver::a1();
    rows.push(row("A1 closed forms", 16 * 16, |i| {
        let (d, f) = ((i / 16) as i64, (i % 16) as i64);
        let ne = nakajima_nonempty(&a1, &dv(vec![d]), &dv(vec![f])).map_err(err)?;
        ensure(ne.nonempty == (d <= f), || format!("nonempty d={d} f={f}"))?;
        let g = framed_graph(&a1, &dv(vec![f])).map_err(err)?;
        if d > 0 {
            let res = is_positive_root(&g, &[d, 1]).map_err(err)?;
            ensure(res.verdict.is_root() == (d <= f), || format!("root d={d} f={f}"))?;
        }
        Ok(())
    }));

    let partitions: Vec<Partition> = (0..=8).flat_map(Partition::all).collect();
    rows.push(row("monomial strata = corners", partitions.len(), |i| {
        let l = &partitions[i];
        let (r, _) = hilb_fixed_point(l).bn_stratum_of().map_err(err)?;
        let mut parts = l.parts().to_vec();
        parts.dedup();
        ensure(r.as_slice() == [parts.len() as i64], || format!("{l}: r = {r}"))
    }));

    let seeds: Vec<u64> = (0..25).map(|_| rng.gen()).collect();
    for fam in Family::ALL {
        let name = format!("gallery {}", fam.name());
        rows.push(row(&name, seeds.len(), |i| gallery_point(fam, seeds[i])));
    }

    rows.push(row("exact arithmetic", 100, |_| {
        let a = rat(rng.gen::<i64>()) / rat(rng.gen_range(1..i64::MAX));
        let b = rat(rng.gen::<i64>());
        ensure((&a + &b) - &b == a, || format!("({a} + {b}) - {b}"))?;
        let m = RMatrix::from_vec(3, 4, (0..12).map(|_| rat(rng.gen_range(-5..=5))).collect()).map_err(err)?;
        ensure(m.rank() == m.transpose().rank(), || "rank of transpose".into())?;
        ensure(m.cols() == m.rank() + m.kernel_basis().cols(), || "rank nullity".into())
    }));

    SelftestSummary { seed, rows }
}
