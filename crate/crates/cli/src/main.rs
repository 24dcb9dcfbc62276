use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use quiver_bn::dims::{
    dim_bn, dim_bn_stratum, dim_nakajima, dim_parabolic_chain, dim_parabolic_full, dim_parabolic_pair, excess,
    ChainDims,
};
use quiver_bn::gallery::{
    a1_point, an_flag_point, hilb_corner_flag, hilb_distinct_points, random_gallery_point, Family, Partition,
};
use quiver_bn::linalg::{parse_rational, Rational};
use quiver_bn::rep::{block_form_check, tangent_complex, ParabolicChainPoint, ParabolicPoint, Validation};
use quiver_bn::roots::{
    bn_nonempty, framed_graph, is_positive_root, nakajima_nonempty, parabolic_nonempty, strata_table, RootGraph,
    DEFAULT_STRATA_CAP,
};
use quiver_bn::{selftest, DimVector, Error, IntVector, Quiver};

/// Dimensions, nonemptiness and exact point verification for quiver varieties.
#[derive(Parser)]
#[command(name = "qbn", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Clone)]
struct QuiverArgs {
    /// Quiver JSON file.
    #[arg(long, conflicts_with = "preset")]
    quiver: Option<PathBuf>,
    /// Built-in quiver: jordan, a1, a<n> or path<n>. Defaults to jordan.
    #[arg(long)]
    preset: Option<String>,
}

impl QuiverArgs {
    fn load(&self) -> Result<Quiver, Error> {
        match (&self.quiver, &self.preset) {
            (Some(path), _) => Quiver::from_json(&read_json(path)?),
            (None, Some(name)) => Quiver::preset(name),
            (None, None) => Ok(Quiver::jordan()),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension formulas.
    Dim {
        #[command(subcommand)]
        which: DimCmd,
    },
    /// Nonemptiness of M(d), P(d, d-k) or BN^k (with --bn).
    Nonempty {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long)]
        k: Option<String>,
        /// Decide BN^k instead of P(d, d-k).
        #[arg(long, requires = "k")]
        bn: bool,
        /// Include the reduction and reflection trace.
        #[arg(long)]
        trace: bool,
    },
    /// Kac root test on the graph of a quiver, or on its framed graph when --f is given.
    RootCheck {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        f: Option<String>,
        /// Coefficient of the framing vertex.
        #[arg(long, default_value_t = 1)]
        inf: i64,
    },
    /// Brill-Noether strata of BN^k.
    Strata {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long, default_value = "")]
        k: String,
        #[arg(long, default_value_t = DEFAULT_STRATA_CAP)]
        cap: u128,
        /// Tab-separated rows: r, stratum_dim, fiber_dim, preimage_dim, nonempty.
        #[arg(long)]
        tsv: bool,
    },
    /// Excess numbers (R1, R2) for d0 >= d1 >= d2.
    Excess {
        #[command(flatten)]
        q: QuiverArgs,
        /// Give exactly three levels, largest first.
        #[arg(long = "level", num_args = 1, required = true)]
        levels: Vec<String>,
    },
    /// Check a representation, flagged point or chain file.
    Verify {
        file: PathBuf,
        /// Also certify the tangent complex.
        #[arg(long)]
        tangent: bool,
    },
    /// Emit an explicit point of an example family.
    Example {
        #[command(subcommand)]
        family: ExampleCmd,
        /// Output file; stdout when absent.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Run the invariant suite. JSON on stdout, table on stderr.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum DimCmd {
    Nakajima {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "")]
        f: String,
    },
    Parabolic {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long)]
        k: String,
        #[arg(long, default_value = "")]
        f: String,
    },
    ParabolicFull {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long)]
        k: String,
        #[arg(long, default_value = "")]
        f: String,
    },
    Chain {
        #[command(flatten)]
        q: QuiverArgs,
        /// Repeat for each level d(0) >= d(1) >= ...
        #[arg(long = "level", num_args = 1, required = true)]
        levels: Vec<String>,
        #[arg(long, default_value = "")]
        f: String,
    },
    Bn {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long)]
        k: String,
    },
    Stratum {
        #[command(flatten)]
        q: QuiverArgs,
        #[arg(long)]
        d: String,
        #[arg(long, default_value = "")]
        f: String,
        #[arg(long)]
        r: String,
    },
}

#[derive(Subcommand)]
enum ExampleCmd {
    /// Monomial fixed point of the Hilbert scheme, flagged by its first k corners.
    Hilb {
        #[arg(long, allow_hyphen_values = true)]
        partition: String,
        #[arg(long, default_value_t = 0)]
        k: usize,
    },
    /// Distinct points "x,y;x,y;...".
    HilbPoints {
        #[arg(long, allow_hyphen_values = true)]
        points: String,
    },
    A1 {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        f: usize,
        #[arg(long)]
        k: usize,
    },
    /// Equioriented A_n, d given as "3,1".
    An {
        #[arg(long)]
        d: String,
        #[arg(long)]
        f: usize,
    },
    Random {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    HilbMonomial,
    HilbDistinct,
    A1,
    An,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::HilbMonomial => Family::HilbMonomial,
            FamilyArg::HilbDistinct => Family::HilbDistinct,
            FamilyArg::A1 => Family::A1,
            FamilyArg::An => Family::An,
        }
    }
}

/// What a command produced: the payload and whether it counts as success.
struct Output {
    body: String,
    ok: bool,
}

impl Output {
    fn json(v: Value, ok: bool) -> Self {
        Output {
            body: serde_json::to_string_pretty(&v).expect("serializable") + "\n",
            ok,
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn vec_of(q: &Quiver, s: &str) -> Result<DimVector, Error> {
    DimVector::parse(q, s)
}

fn int_json(q: &Quiver, x: &IntVector) -> Value {
    let mut m = Map::new();
    for (v, val) in x.as_slice().iter().enumerate() {
        m.insert(q.label(v).to_string(), json!(val));
    }
    Value::Object(m)
}

fn run_dim(which: DimCmd) -> Result<Output, Error> {
    let out = match which {
        DimCmd::Nakajima { q, d, f } => {
            let q = q.load()?;
            let (d, f) = (vec_of(&q, &d)?, vec_of(&q, &f)?);
            json!({"kind": "nakajima", "d": d.to_json(&q), "f": f.to_json(&q), "dim": dim_nakajima(&q, &d, &f)?})
        }
        DimCmd::Parabolic { q, d, k, f } => {
            let q = q.load()?;
            let (d, k, f) = (vec_of(&q, &d)?, vec_of(&q, &k)?, vec_of(&q, &f)?);
            let dim = dim_parabolic_pair(&q, &d, &k, &f)?;
            json!({"kind": "parabolic", "d": d.to_json(&q), "k": k.to_json(&q), "f": f.to_json(&q), "dim": dim})
        }
        DimCmd::ParabolicFull { q, d, k, f } => {
            let q = q.load()?;
            let (d, k, f) = (vec_of(&q, &d)?, vec_of(&q, &k)?, vec_of(&q, &f)?);
            let dim = dim_parabolic_full(&q, &d, &k, &f)?;
            json!({"kind": "parabolic-full", "d": d.to_json(&q), "k": k.to_json(&q), "f": f.to_json(&q), "dim": dim})
        }
        DimCmd::Chain { q, levels, f } => {
            let q = q.load()?;
            let f = vec_of(&q, &f)?;
            let levels = levels.iter().map(|l| vec_of(&q, l)).collect::<Result<Vec<_>, _>>()?;
            let chain = ChainDims::new(levels, f.clone())?;
            let dim = dim_parabolic_chain(&q, &chain)?;
            json!({
                "kind": "chain",
                "levels": chain.levels().iter().map(|l| l.to_json(&q)).collect::<Vec<_>>(),
                "f": f.to_json(&q),
                "dim": dim,
            })
        }
        DimCmd::Bn { q, d, f, k } => {
            let q = q.load()?;
            let (d, f, k) = (vec_of(&q, &d)?, vec_of(&q, &f)?, vec_of(&q, &k)?);
            let bn = dim_bn(&q, &d, &f, &k)?;
            json!({
                "kind": "bn",
                "d": d.to_json(&q),
                "f": f.to_json(&q),
                "k": bn.raw_k.to_json(&q),
                "effective_k": int_json(&q, &bn.effective_k),
                "dim": bn.dim,
            })
        }
        DimCmd::Stratum { q, d, f, r } => {
            let q = q.load()?;
            let (d, f, r) = (vec_of(&q, &d)?, vec_of(&q, &f)?, vec_of(&q, &r)?);
            let dim = dim_bn_stratum(&q, &d, &f, &r)?;
            json!({"kind": "stratum", "d": d.to_json(&q), "f": f.to_json(&q), "r": r.to_json(&q), "dim": dim})
        }
    };
    Ok(Output::json(out, true))
}

fn verify(path: &PathBuf, tangent: bool) -> Result<Output, Error> {
    let value = read_json(path)?;
    let mut report = Map::new();
    let (val, point): (Validation, Option<ParabolicPoint>) = if value.get("levels").is_some() {
        let ch = ParabolicChainPoint::from_json(&value)?;
        report.insert("kind".into(), json!("chain"));
        report.insert("steps".into(), json!(ch.len()));
        let val = ch.validate()?;
        if ch.len() == 2 {
            report.insert("block_form".into(), block_form_check(&ch)?.to_json());
        }
        let pt = if val.ok() { Some(ch.to_flag()?) } else { None };
        (val, pt)
    } else {
        let pt = ParabolicPoint::from_json(&value)?;
        let kind = if pt.flags.iter().all(Vec::is_empty) {
            "rep"
        } else {
            "point"
        };
        report.insert("kind".into(), json!(kind));
        (pt.validate()?, Some(pt))
    };
    let mut ok = val.ok();
    report.insert("checks".into(), val.to_json()["checks"].clone());
    if let Some(pt) = &point {
        let q = &pt.rep.quiver;
        let (r, warnings) = pt.rep.bn_stratum_of()?;
        report.insert("d".into(), pt.rep.d.to_json(q));
        report.insert("k".into(), pt.k().to_json(q));
        report.insert("stratum".into(), r.to_json(q));
        if !warnings.is_empty() {
            report.insert("warnings".into(), json!(warnings));
        }
        if tangent {
            if val.ok() {
                let t = tangent_complex(pt)?;
                ok &= t.ok();
                report.insert("tangent".into(), t.to_json());
            } else {
                report.insert("tangent".into(), json!("skipped: the point is not valid"));
            }
        }
    }
    report.insert("pass".into(), json!(ok));
    Ok(Output::json(Value::Object(report), ok))
}

fn parse_points(s: &str) -> Result<Vec<(Rational, Rational)>, Error> {
    s.split(';')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| {
            let (x, y) = p
                .split_once(',')
                .ok_or_else(|| Error::Input(format!("point `{p}` is not `x,y`")))?;
            Ok((parse_rational(x.trim())?, parse_rational(y.trim())?))
        })
        .collect()
}

fn point_json(pt: &ParabolicPoint) -> Value {
    if pt.flags.iter().all(Vec::is_empty) {
        pt.rep.to_json()
    } else {
        pt.to_json()
    }
}

fn example(family: ExampleCmd) -> Result<Value, Error> {
    Ok(match family {
        ExampleCmd::Hilb { partition, k } => {
            let lambda: Partition = partition.parse()?;
            let corners = lambda.corners();
            if k > corners.len() {
                return Err(Error::Input(format!(
                    "{lambda} has {} corners, cannot flag {k}",
                    corners.len()
                )));
            }
            point_json(&hilb_corner_flag(&lambda, &corners[..k])?)
        }
        ExampleCmd::HilbPoints { points } => hilb_distinct_points(&parse_points(&points)?)?.to_json(),
        ExampleCmd::A1 { d, f, k } => point_json(&a1_point(d, f, k)?),
        ExampleCmd::An { d, f } => {
            let d = d
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Input(format!("bad dimension `{x}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            an_flag_point(&d, f)?.to_json()
        }
        ExampleCmd::Random { family, seed } => {
            let fam = Family::from(family);
            let mut v = point_json(&random_gallery_point(fam, seed)?);
            v.as_object_mut().expect("object").insert(
                "generator".into(),
                json!({"family": fam.name(), "seed": seed, "prng": "ChaCha8"}),
            );
            v
        }
    })
}

fn run(cli: Cli) -> Result<Output, Error> {
    match cli.cmd {
        Command::Dim { which } => run_dim(which),
        Command::Nonempty { q, d, f, k, bn, trace } => {
            let q = q.load()?;
            let (d, f) = (vec_of(&q, &d)?, vec_of(&q, &f)?);
            let verdict = match &k {
                None => nakajima_nonempty(&q, &d, &f)?,
                Some(k) if bn => bn_nonempty(&q, &d, &f, &vec_of(&q, k)?)?,
                Some(k) => parabolic_nonempty(&q, &d, &vec_of(&q, k)?, &f)?,
            };
            let mut v = verdict.to_json(&q, &f);
            let obj = v.as_object_mut().expect("object");
            if !trace {
                obj.remove("trace");
                obj.remove("root_check");
            }
            let mode = match (&k, bn) {
                (None, _) => "nakajima",
                (Some(_), true) => "bn",
                (Some(_), false) => "parabolic",
            };
            obj.insert("mode".into(), json!(mode));
            obj.insert(
                "verdict".into(),
                json!(if verdict.nonempty { "nonempty" } else { "empty" }),
            );
            Ok(Output::json(v, verdict.nonempty))
        }
        Command::RootCheck { q, alpha, f, inf } => {
            let q = q.load()?;
            let a = vec_of(&q, &alpha)?;
            let (g, vector): (RootGraph, Vec<i64>) = match f {
                Some(f) => {
                    let mut v = a.as_slice().to_vec();
                    v.push(inf);
                    (framed_graph(&q, &vec_of(&q, &f)?)?, v)
                }
                None => (RootGraph::of_quiver(&q), a.as_slice().to_vec()),
            };
            let res = is_positive_root(&g, &vector)?;
            Ok(Output::json(res.to_json(&g), true))
        }
        Command::Strata { q, d, f, k, cap, tsv } => {
            let q = q.load()?;
            let (d, f, k) = (vec_of(&q, &d)?, vec_of(&q, &f)?, vec_of(&q, &k)?);
            let rows = strata_table(&q, &d, &f, &k, cap)?;
            if tsv {
                let mut body = String::from("r\tstratum_dim\tfiber_dim\tpreimage_dim\tnonempty\n");
                for r in &rows {
                    body.push_str(&format!(
                        "{}\t{}\t{}\t{}\t{}\n",
                        r.r, r.stratum_dim, r.pminus_fiber_dim, r.pminus_preimage_dim, r.nonempty
                    ));
                }
                Ok(Output { body, ok: true })
            } else {
                let v = json!({
                    "d": d.to_json(&q),
                    "f": f.to_json(&q),
                    "k": k.to_json(&q),
                    "strata": rows.iter().map(|r| r.to_json(&q)).collect::<Vec<_>>(),
                });
                Ok(Output::json(v, true))
            }
        }
        Command::Excess { q, levels } => {
            let q = q.load()?;
            if levels.len() != 3 {
                return Err(Error::Input(format!("excess needs three levels, got {}", levels.len())));
            }
            let l = levels.iter().map(|s| vec_of(&q, s)).collect::<Result<Vec<_>, _>>()?;
            let (r1, r2) = excess(&q, &l[0], &l[1], &l[2])?;
            Ok(Output::json(json!({"R1": r1, "R2": r2}), true))
        }
        Command::Verify { file, tangent } => verify(&file, tangent),
        Command::Example { family, output } => {
            let v = example(family)?;
            let text = serde_json::to_string_pretty(&v).expect("serializable") + "\n";
            match output {
                Some(path) => {
                    fs::write(&path, text)
                        .map_err(|e| Error::Input(format!("cannot write {}: {e}", path.display())))?;
                    eprintln!("wrote {}", path.display());
                    Ok(Output {
                        body: String::new(),
                        ok: true,
                    })
                }
                None => Ok(Output { body: text, ok: true }),
            }
        }
        Command::Selftest { seed } => {
            let summary = selftest::run(seed);
            eprint!("{}", summary.table());
            Ok(Output::json(summary.to_json(), summary.ok()))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::CapExceeded { .. } | Error::EmptyFiber(_) | Error::Internal(_) => 1,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.body);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn points_parse() {
        let p = parse_points("0,0; 1/2,-3").unwrap();
        assert_eq!(p.len(), 2);
        assert!(parse_points("1").is_err());
        assert!(parse_points("").unwrap().is_empty());
    }
}
