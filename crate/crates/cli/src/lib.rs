//! The `projmet` command line, as a library so it can be driven from tests.

mod verify;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use projmet_core::bounds::{exact_anticode_max, mu_profile, singleton_bound};
use projmet_core::codes::{is_perfect, min_distance_f, packing_ratio, perfect_transfer};
use projmet_core::embed::{embed_into_projective, WeightedSpace};
use projmet_core::isometry::{are_equivalent, aut_group};
use projmet_core::matroid::{extended_family, is_closed, LinearMatroid};
use projmet_core::parent::{coset_leader_weight_distribution, min_hamming_distance};
use projmet_core::schema::{code_from_json, family_from_json, weights_from_json, CodeJson, FamilyJson};
use projmet_core::weight::{minimal_representation, projective_weight, weight_table};
use projmet_core::{Budget, Error, FiniteField, FqMatrix, FqVector, ParentFunction, SpanningFamily, INF};
use serde_json::{json, Value};

pub use verify::{reference_examples, Example};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

#[derive(Parser, Debug)]
#[command(name = "projmet", version, about = "Projective metrics over finite fields")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest table or state set any operation may allocate.
    #[arg(long, global = true, default_value_t = 1 << 24)]
    max_states: u64,
    /// Largest number of search nodes any exhaustive operation may visit.
    #[arg(long, global = true, default_value_t = 50_000_000)]
    max_search: u64,
    /// Seed for the randomized checks in `verify`.
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    /// Field order for named families and weight files.
    #[arg(long, global = true, default_value_t = 2)]
    q: u64,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Sphere and ball sizes as CSV.
    Spheres {
        #[arg(long)]
        family: String,
        /// Also write the weight table in binary form.
        #[arg(long)]
        export: Option<PathBuf>,
    },
    /// Weight of one vector and a shortest representation.
    Weight {
        #[arg(long)]
        family: String,
        #[arg(long)]
        vector: String,
    },
    /// Parent matrix, parent code, its distance and coset leader distribution.
    Parent {
        #[arg(long)]
        family: String,
    },
    /// A linear map carrying one family onto another.
    Equiv {
        #[arg(long, num_args = 1, required = true)]
        family: Vec<String>,
    },
    /// The linear isometry group.
    Aut {
        #[arg(long)]
        family: String,
    },
    /// Matroid data; with `--extend`, the extended family.
    Matroid {
        #[arg(long)]
        family: String,
        #[arg(long)]
        extend: bool,
    },
    /// Anticode profile and Singleton-type bounds.
    Bounds {
        #[arg(long)]
        family: String,
        #[arg(long)]
        d: u16,
        #[arg(long)]
        exact_anticode: bool,
        #[arg(long, default_value_t = 4)]
        dim_cap: usize,
    },
    /// Perfectness of a code in the family metric. A code of length equal to
    /// the number of family points is treated as a parent-side code.
    Perfect {
        #[arg(long)]
        family: String,
        #[arg(long)]
        code: PathBuf,
    },
    /// Embed a weight table into a family metric.
    Embed {
        #[arg(long)]
        weights: PathBuf,
    },
    /// Replay the reference examples.
    Verify,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    /// Domain-level failure whose message is already formatted.
    Report(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Out = std::result::Result<String, Failure>;

/// Runs the command line and returns the exit code and everything that
/// should be printed (stdout for code 0, stderr otherwise).
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return (code, e.to_string());
        }
    };
    match dispatch(&cli) {
        Ok(s) => (EXIT_OK, s),
        Err(Failure::Usage(m)) => (EXIT_USAGE, format!("usage error: {m}\n")),
        Err(Failure::Report(m)) => (EXIT_DOMAIN, m),
        Err(Failure::Core(e)) if e.is_budget() => (EXIT_BUDGET, format!("budget exceeded: {e}\n")),
        Err(Failure::Core(e)) => (EXIT_DOMAIN, format!("error: {e}\n")),
    }
}

fn field(q: u64) -> Result<FiniteField, Failure> {
    FiniteField::with_order(q).map_err(Failure::Core)
}

/// `name:params` or `@file.json`.
pub fn parse_family(spec: &str, q: u64) -> projmet_core::Result<SpanningFamily> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        return family_from_json(&text);
    }
    projmet_core::family::named(&FiniteField::with_order(q)?, spec)
}

fn parse_vector(f: &FiniteField, s: &str) -> Result<FqVector, Failure> {
    let coords = s
        .split(',')
        .map(|c| c.trim().parse::<u16>().map_err(|_| Failure::Usage(format!("bad coordinate {c:?}"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FqVector::new(f, coords)?)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Core(Error::Parse(format!("{}: {e}", path.display()))))
}

fn fmt_row(r: &[u16]) -> String {
    r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ")
}

fn fmt_matrix(m: &FqMatrix) -> String {
    m.rows().iter().map(|r| format!("  {}\n", fmt_row(r))).collect()
}

fn fmt_weight(w: u16) -> String {
    if w == INF {
        "inf".into()
    } else {
        w.to_string()
    }
}

fn pretty(v: Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(&v).expect("serializable"))
}

fn dispatch(cli: &Cli) -> Out {
    let g = &cli.global;
    let budget = Budget { max_states: g.max_states, max_search: g.max_search };
    let fam = |s: &str| parse_family(s, g.q).map_err(Failure::Core);
    match &cli.cmd {
        Cmd::Spheres { family, export } => {
            let f = fam(family)?;
            let t = weight_table(&f, &budget)?;
            if let Some(p) = export {
                std::fs::write(p, t.to_bytes()).map_err(|e| Failure::Core(Error::Parse(e.to_string())))?;
            }
            if g.json {
                return Ok(pretty(json!({ "spheres": t.sphere_sizes(), "balls": t.ball_sizes() })));
            }
            Ok(t.sphere_csv())
        }
        Cmd::Weight { family, vector } => {
            let f = fam(family)?;
            let x = parse_vector(f.field(), vector)?;
            if x.len() != f.dim() {
                return Err(Failure::Core(Error::DimensionMismatch { expected: f.dim(), got: x.len() }));
            }
            let w = projective_weight(&f, &x, &budget)?;
            // a representation needs the full table; skip it when that is too big
            let rep = match weight_table(&f, &budget) {
                Ok(t) if w != INF => Some(minimal_representation(&f, &t, &x)?),
                _ => None,
            };
            if g.json {
                let rep = rep.map(|r| {
                    r.iter().map(|(c, i)| json!({ "coef": c.value(), "index": i, "point": f.point(*i).coords() })).collect::<Vec<_>>()
                });
                return Ok(pretty(json!({ "weight": if w == INF { Value::Null } else { json!(w) }, "representation": rep })));
            }
            let mut s = format!("{}\n", fmt_weight(w));
            if let Some(r) = rep {
                for (c, i) in r {
                    let _ = writeln!(s, "  {} * f{} = ({})", c.value(), i, fmt_row(f.point(i).coords()));
                }
            }
            Ok(s)
        }
        Cmd::Parent { family } => {
            let f = fam(family)?;
            let phi = ParentFunction::new(&f);
            let pc = phi.parent_code();
            let d = min_hamming_distance(&pc, &budget)?;
            let dist = coset_leader_weight_distribution(&pc, &budget)?;
            if g.json {
                return Ok(pretty(json!({
                    "matrix": phi.matrix().rows(),
                    "code": CodeJson::from(&pc),
                    "distance": if d == INF { Value::Null } else { json!(d) },
                    "coset_distribution": dist,
                })));
            }
            let mut s = format!("parent matrix ({} x {}):\n{}", f.len(), f.dim(), fmt_matrix(phi.matrix()));
            let _ = write!(s, "parent code basis (dim {}):\n{}", pc.dim(), fmt_matrix(pc.basis()));
            let _ = writeln!(s, "d_H = {}", fmt_weight(d));
            let _ = writeln!(s, "coset leader distribution = {:?}", dist);
            Ok(s)
        }
        Cmd::Equiv { family } => {
            if family.len() != 2 {
                return Err(Failure::Usage("equiv takes exactly two --family arguments".into()));
            }
            let (a, b) = (fam(&family[0])?, fam(&family[1])?);
            let found = are_equivalent(&a, &b, &budget)?;
            if g.json {
                return Ok(pretty(json!({ "witness": found.map(|l| l.matrix().rows().to_vec()) })));
            }
            Ok(match found {
                Some(l) => fmt_matrix(l.matrix()),
                None => "NONE\n".into(),
            })
        }
        Cmd::Aut { family } => {
            let f = fam(family)?;
            let grp = aut_group(&f, &budget)?;
            if g.json {
                let els: Vec<_> = grp.iter().map(|l| l.matrix().rows().to_vec()).collect();
                return Ok(pretty(json!({ "order": grp.len(), "elements": els })));
            }
            let mut s = format!("order {}\n", grp.len());
            for (i, l) in grp.iter().enumerate() {
                let _ = write!(s, "element {i}:\n{}", fmt_matrix(l.matrix()));
            }
            Ok(s)
        }
        Cmd::Matroid { family, extend } => {
            let f = fam(family)?;
            if *extend {
                let ext = extended_family(&f, &budget)?;
                let closed = is_closed(&f, &budget)?;
                if g.json {
                    return Ok(pretty(json!({ "extended": FamilyJson::from(&ext), "closed": closed })));
                }
                let mut s = format!("extended family ({} points):\n", ext.len());
                for p in ext.points() {
                    let tag = if f.contains(p.rep()) { "" } else { "  (new)" };
                    let _ = writeln!(s, "  {}{tag}", fmt_row(p.coords()));
                }
                let _ = writeln!(s, "closed = {closed}");
                return Ok(s);
            }
            let m = LinearMatroid::new(&f)?;
            let circuits = m.circuits(f.dim() + 1, &budget)?;
            if g.json {
                return Ok(pretty(json!({ "size": m.len(), "rank": m.rank(m.full()), "circuits": circuits })));
            }
            let mut s = format!("size {}\nrank {}\ncircuits ({}):\n", m.len(), m.rank(m.full()), circuits.len());
            for c in circuits {
                let _ = writeln!(s, "  {c:?}");
            }
            Ok(s)
        }
        Cmd::Bounds { family, d, exact_anticode, dim_cap } => {
            let f = fam(family)?;
            let t = weight_table(&f, &budget)?;
            let prof = mu_profile(&f, &t, &budget)?;
            let sb = singleton_bound(&f, &t, *d, &budget)?;
            let anti = if *exact_anticode { Some(exact_anticode_max(&t, d.saturating_sub(1), *dim_cap, &budget)?) } else { None };
            let gap = anti.as_ref().map(|a| a.dim > sb.mu);
            let opt = |v: Option<u128>| v.map_or(Value::Null, |x| json!(x.to_string()));
            if g.json {
                return Ok(pretty(json!({
                    "mu": prof,
                    "singleton": opt(sb.value()),
                    "classical_singleton": opt(sb.classical_value()),
                    "exponent": sb.exponent,
                    "classical_exponent": sb.classical_exponent,
                    "anticode_max": anti.as_ref().map(|a| a.dim),
                    "anticode_capped": anti.as_ref().map(|a| a.capped),
                    "gap": gap,
                })));
            }
            let show = |v: Option<u128>, e: i64| v.map_or(format!("q^{e}"), |x| x.to_string());
            let mut s = format!("mu = {prof:?}\n");
            let _ = writeln!(s, "singleton (q^(N - mu(d-1))) = {}", show(sb.value(), sb.exponent));
            let _ = writeln!(s, "classical (q^(N - d + 1)) = {}", show(sb.classical_value(), sb.classical_exponent));
            if let (Some(a), Some(gap)) = (anti, gap) {
                let _ = writeln!(s, "exact anticode max (t = {}) = {}{}", d.saturating_sub(1), a.dim, if a.capped { " (cap reached)" } else { "" });
                let _ = writeln!(s, "gap = {gap}");
            }
            Ok(s)
        }
        Cmd::Perfect { family, code } => {
            let f = fam(family)?;
            let c = code_from_json(&read(code)?)?;
            if c.len() == f.dim() {
                let t = weight_table(&f, &budget)?;
                let r = is_perfect(&c, &t, &budget)?;
                let d = min_distance_f(&c, &t, &budget)?;
                let radius = r.unwrap_or((d.saturating_sub(1)) / 2);
                let (num, den) = packing_ratio(&c, &t, radius);
                if g.json {
                    return Ok(pretty(json!({ "perfect": r.is_some(), "t": radius, "d_F": d, "packing": [num.to_string(), den.to_string()] })));
                }
                return Ok(format!(
                    "perfect = {}\nt = {radius}\nd_F = {}\npacking ratio = {num}/{den}\n",
                    r.is_some(),
                    fmt_weight(d)
                ));
            }
            if c.len() == f.len() {
                let r = perfect_transfer(&c, &ParentFunction::new(&f), &budget)?;
                if g.json {
                    return Ok(pretty(json!({
                        "perfect": r.family_radius.is_some(),
                        "t": r.family_radius,
                        "d_F": r.family_distance,
                        "hamming_perfect": r.hamming_radius.is_some(),
                        "d_H": r.hamming_distance,
                        "image": CodeJson::from(&r.image),
                    })));
                }
                let t = weight_table(&f, &budget)?;
                let radius = r.family_radius.unwrap_or(r.family_distance.saturating_sub(1) / 2);
                let (num, den) = packing_ratio(&r.image, &t, radius);
                return Ok(format!(
                    "perfect = {}\nt = {radius}\nd_F = {}\nd_H = {}\nhamming perfect = {}\npacking ratio = {num}/{den}\n",
                    r.family_radius.is_some(),
                    fmt_weight(r.family_distance),
                    fmt_weight(r.hamming_distance),
                    r.hamming_radius.is_some()
                ));
            }
            Err(Failure::Core(Error::DimensionMismatch { expected: f.dim(), got: c.len() }))
        }
        Cmd::Embed { weights } => {
            let fl = field(g.q)?;
            let (n, w) = weights_from_json(fl.q(), &read(weights)?)?;
            let v = WeightedSpace::new(&fl, n, w, &budget)?;
            let e = embed_into_projective(&v, &budget)?;
            if g.json {
                return Ok(pretty(json!({
                    "r": e.r, "a": e.a, "b": e.b,
                    "iota": e.iota.rows(),
                    "verified": e.verified,
                    "target": FamilyJson::from(&e.target),
                })));
            }
            Ok(format!(
                "r = {}\na = {}\nb = {}\niota ({} x {}):\n{}verified = {}\n",
                e.r,
                e.a,
                e.b,
                e.iota.nrows(),
                e.iota.ncols(),
                fmt_matrix(&e.iota),
                e.verified
            ))
        }
        Cmd::Verify => {
            let results = verify::run_all(g.seed, &budget);
            let passed = results.iter().filter(|r| r.1).count();
            let failed = results.len() - passed;
            if g.json {
                let rows: Vec<_> = results.iter().map(|(n, ok)| json!({ "name": n, "pass": ok })).collect();
                let out = pretty(json!({ "passed": passed, "failed": failed, "examples": rows }));
                return if failed == 0 { Ok(out) } else { Err(Failure::Report(out)) };
            }
            let mut s = String::new();
            for (name, ok) in &results {
                let _ = writeln!(s, "{} {name}", if *ok { "PASS" } else { "FAIL" });
            }
            let _ = writeln!(s, "{passed} passed, {failed} failed");
            if failed > 0 {
                return Err(Failure::Report(s));
            }
            Ok(s)
        }
    }
}
