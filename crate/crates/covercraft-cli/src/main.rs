//! `covercraft`: builds, verifies and tabulates covering codes and
//! saturating sets. Every command prints a JSON run report on stdout.
//!
//! Exit codes: 0 success, 2 bad input or unmet precondition, 3 a claimed
//! property failed, 4 a cap or time budget was hit.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value as Json};
use sha2::{Digest, Sha256};

use covercraft::blocking::{
    baer_pair_set, construction_a_step, cubic_blocking_pair, four_lines_set, nine_planes_set, verify_strong_blocking,
    verify_tfold_blocking, weight_set_bk,
};
use covercraft::codes::{partition_max_ell, verify_partition, verify_saturating, Code, Partition};
use covercraft::concat::{direct_sum, doubling, hamming_pcm, qm_construct, sigma_matrix, QmVariant};
use covercraft::families::{self, FamilyDescriptor};
use covercraft::gf::{field_of_order, FieldSpec};
use covercraft::io;
use covercraft::pg::{embed_set, theta, PointSet};
use covercraft::search::{self, BoundKind, ReproOptions, ReproStatus, Seed};
use covercraft::tables::TableId;
use covercraft::Error;

const EXIT_INPUT: u8 = 2;
const EXIT_MISMATCH: u8 = 3;
const EXIT_LIMIT: u8 = 4;

#[derive(Parser)]
#[command(name = "covercraft", version, about = "Covering codes, saturating sets and strong blocking sets")]
struct Cli {
    /// Worker threads for the parallel searches.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Time budget for searches, in seconds.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Output format for tabular results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Also write the JSON run report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code or point set.
    #[command(subcommand)]
    Construct(Construct),
    /// Check a claimed property of a stored object.
    #[command(subcommand)]
    Verify(Verify),
    /// Query the catalog of closed-form length families.
    #[command(subcommand)]
    Families(Families),
    /// Reproduce stored tables and check the coefficient bounds.
    #[command(subcommand)]
    Tables(Tables),
    /// Search for small saturating sets.
    #[command(subcommand)]
    Search(Search),
}

#[derive(Args)]
struct Out {
    /// Write the artifact here; otherwise it is embedded in the report.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Construct {
    /// Four lines of PG(3,q): a 3-fold strong blocking set.
    FourLines {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Four lines lifted to PG(v,q) by repeated cone steps.
    ConstructionA {
        #[arg(long)]
        q: u64,
        /// Target dimension, at least 3.
        #[arg(long)]
        v: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Points of PG(v,q) of weight at most v-k+1.
    WeightBk {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Nine coordinate planes of PG(4,q), 2-saturating over GF(q^3).
    NinePlanes {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// Two disjoint Baer subplanes of PG(2,q), q a square.
    BaerPair {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
    /// 2-fold blocking set in PG(2,p^3) from a pair of cubic curves.
    CubicPair {
        #[arg(long)]
        p: u64,
        #[command(flatten)]
        out: Out,
    },
    /// q^m-concatenating construction applied to a starting code.
    Qm {
        #[arg(long)]
        variant: QmVariant,
        #[arg(long)]
        start: PathBuf,
        #[arg(long)]
        m: u32,
        /// Column partition of the starting code; singletons by default.
        #[arg(long)]
        partition: Option<PathBuf>,
        /// Defaults to the largest ell the partition supports.
        #[arg(long)]
        ell0: Option<usize>,
        /// Auxiliary code for the variants that need one.
        #[arg(long)]
        aux: Option<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Direct sum of codes over one field.
    Ds {
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[command(flatten)]
        out: Out,
    },
    /// Ternary doubling of a radius 2 code.
    Doubling {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Hamming code with m check rows.
    Hamming {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Block diagonal sum of Hamming matrices.
    Sigma {
        #[arg(long)]
        copies: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Subcommand)]
enum Verify {
    /// Covering radius of a code.
    Radius {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        claim: usize,
    },
    /// Smallest rho for which a point set is rho-saturating.
    Saturating {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        claim: usize,
        /// Re-embed the set over GF(Q) first.
        #[arg(long)]
        over: Option<u64>,
    },
    /// t-fold strong blocking, or t-fold blocking of subspaces with --dim.
    Blocking {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// (R,ell)-partition property of a column partition.
    Partition {
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long)]
        radius: usize,
        #[arg(long)]
        ell: usize,
    },
}

#[derive(Subcommand)]
enum Families {
    /// Catalog entries, or the instances admitting (R, q).
    List {
        #[arg(long)]
        radius: Option<u32>,
        #[arg(long)]
        q: Option<u64>,
    },
    /// Length of a family member.
    Eval {
        #[arg(long)]
        id: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        r: u32,
        /// Parameter binding such as R=4 or g=2.
        #[arg(long)]
        bind: Vec<String>,
    },
    /// Build the smallest member and compare with the formula.
    Check {
        #[arg(long)]
        id: String,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        bind: Vec<String>,
    },
    /// Which families give a constant density for every residue of r mod R.
    OpenProblem {
        #[arg(long)]
        radius: u32,
        #[arg(long)]
        q: u64,
    },
}

#[derive(Subcommand)]
enum Tables {
    /// Recompute a stored table.
    Reproduce {
        #[arg(long)]
        table: TableId,
        /// Largest q to include.
        #[arg(long)]
        qmax: Option<u64>,
        /// Largest q searched exhaustively.
        #[arg(long)]
        exact_qmax: Option<u64>,
        #[arg(long)]
        r_max: Option<u32>,
    },
    /// Check a coefficient bound against the stored lengths.
    Bounds {
        /// a, b or c.
        #[arg(long)]
        theorem: BoundKind,
    },
}

#[derive(Subcommand)]
enum Search {
    /// Smallest rho-saturating set in PG(v,q), with proof of minimality.
    Exhaustive {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        rho: usize,
        #[arg(long, default_value_t = 64)]
        n_max: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Greedy rho-saturating set.
    Greedy {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        q: u64,
        #[arg(long)]
        rho: usize,
        #[arg(long, default_value = "basis")]
        seed: Seed,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum CheckStatus {
    Verified,
    Failed,
    /// Too large to verify; the property is claimed by construction.
    Asserted,
}

#[derive(Serialize)]
struct CheckRecord {
    name: String,
    status: CheckStatus,
    #[serde(skip_serializing_if = "String::is_empty")]
    detail: String,
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct OutputRecord {
    kind: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sha256: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    text: Option<String>,
}

#[derive(Serialize)]
struct RunReport {
    command: Vec<String>,
    inputs: Vec<InputRecord>,
    outputs: Vec<OutputRecord>,
    checks: Vec<CheckRecord>,
    result: Json,
    elapsed_ms: u128,
    ok: bool,
}

struct Ctx {
    budget: Duration,
    format: Format,
    inputs: Vec<InputRecord>,
    outputs: Vec<OutputRecord>,
    checks: Vec<CheckRecord>,
    result: Json,
    /// CSV body printed instead of the report when `--format csv`.
    csv: Option<String>,
    /// Exit code forced by the command itself (table rows out of budget).
    code: Option<u8>,
}

fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Ctx {
    fn read(&mut self, path: &Path) -> Result<String> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(InputRecord { path: path.display().to_string(), sha256: digest(text.as_bytes()) });
        Ok(text)
    }

    fn read_code(&mut self, path: &Path) -> Result<Code> {
        let text = self.read(path)?;
        io::read_code(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn read_points(&mut self, path: &Path) -> Result<PointSet> {
        let text = self.read(path)?;
        io::read_points(&text).with_context(|| format!("parsing {}", path.display()))
    }

    fn emit(&mut self, kind: &'static str, text: String, out: &Out) -> Result<()> {
        let rec = match &out.output {
            Some(p) => {
                fs::write(p, &text).with_context(|| format!("writing {}", p.display()))?;
                OutputRecord { kind, path: Some(p.display().to_string()), sha256: Some(digest(text.as_bytes())), text: None }
            }
            None => OutputRecord { kind, path: None, sha256: Some(digest(text.as_bytes())), text: Some(text) },
        };
        self.outputs.push(rec);
        Ok(())
    }

    fn emit_code(&mut self, c: &Code, out: &Out) -> Result<()> {
        self.emit("code", io::write_code(c), out)
    }

    fn emit_points(&mut self, s: &PointSet, out: &Out) -> Result<()> {
        self.emit("points", io::write_points(s), out)
    }

    fn record(&mut self, name: impl Into<String>, status: CheckStatus, detail: impl Into<String>) {
        self.checks.push(CheckRecord { name: name.into(), status, detail: detail.into() });
    }

    /// Records a computed check; caps downgrade it to an assertion.
    fn check(&mut self, name: impl Into<String>, outcome: covercraft::Result<bool>) -> Result<()> {
        match outcome {
            Ok(true) => self.record(name, CheckStatus::Verified, ""),
            Ok(false) => self.record(name, CheckStatus::Failed, ""),
            Err(e @ Error::CapExceeded { .. }) => self.record(name, CheckStatus::Asserted, e.to_string()),
            Err(e) => return Err(e.into()),
        }
        Ok(())
    }

    fn check_eq<T: PartialEq + std::fmt::Display>(&mut self, name: &str, got: T, want: T) {
        let status = if got == want { CheckStatus::Verified } else { CheckStatus::Failed };
        self.record(name, status, format!("got {got}, expected {want}"));
    }

    fn table<T: Serialize>(&mut self, rows: &[T]) -> Result<()> {
        if self.format == Format::Csv {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r)?;
            }
            self.csv = Some(String::from_utf8(w.into_inner()?)?);
        }
        Ok(())
    }
}

fn field(q: u64) -> Result<FieldSpec> {
    Ok(field_of_order(q)?)
}

fn radius_claim(ctx: &mut Ctx, c: &Code, want: usize) -> Result<()> {
    let outcome = c.covering_radius().map(|r| r == want);
    ctx.check(format!("covering radius {want}"), outcome)
}

fn code_summary(c: &Code) -> Json {
    json!({ "q": c.field().q(), "n": c.n(), "r": c.r() })
}

fn points_summary(s: &PointSet) -> Json {
    json!({ "v": s.v(), "q": s.field().q(), "size": s.len() })
}

fn construct(ctx: &mut Ctx, cmd: Construct) -> Result<()> {
    match cmd {
        Construct::FourLines { q, out } => {
            let s = four_lines_set(&field(q)?)?;
            ctx.check_eq("size 4q+4", s.len() as u64, 4 * q + 4);
            ctx.check("3-fold strong blocking", verify_strong_blocking(&s, 3).map(|r| r.is_tfold_strong))?;
            ctx.result = points_summary(&s);
            ctx.emit_points(&s, &out)
        }
        Construct::ConstructionA { q, v, out } => {
            if v < 3 {
                bail!(Error::DomainViolation(format!("v = {v} below 3")));
            }
            let mut s = four_lines_set(&field(q)?)?;
            for _ in 3..v {
                s = construction_a_step(&s)?;
            }
            let vv = v as u64;
            ctx.check_eq("size (q-1)(v(v+1)/2-2)+v+5", s.len() as u64, (q - 1) * (vv * (vv + 1) / 2 - 2) + vv + 5);
            ctx.check(format!("{v}-fold strong blocking"), verify_strong_blocking(&s, v).map(|r| r.is_tfold_strong))?;
            ctx.result = points_summary(&s);
            ctx.emit_points(&s, &out)
        }
        Construct::WeightBk { v, q, k, out } => {
            let s = weight_set_bk(v, &field(q)?, k)?;
            let t = k + 1;
            ctx.check(format!("{t}-fold strong blocking"), verify_strong_blocking(&s, t).map(|r| r.is_tfold_strong))?;
            ctx.result = points_summary(&s);
            ctx.emit_points(&s, &out)
        }
        Construct::NinePlanes { q, out } => {
            let s = nine_planes_set(q)?;
            ctx.check_eq("size 9q^2-8q+4", s.len() as u64, 9 * q * q - 8 * q + 4);
            let big = field(q.pow(3))?;
            let outcome = embed_set(&s, &big).and_then(|e| verify_saturating(&e, Some(2))).map(|r| r.matches_claim);
            ctx.check(format!("2-saturating in PG(4,{})", q.pow(3)), outcome)?;
            ctx.result = points_summary(&s);
            ctx.emit_points(&s, &out)
        }
        Construct::BaerPair { q, out } => {
            let s = baer_pair_set(q)?;
            let root = (1..=q).find(|x| x * x == q).ok_or_else(|| anyhow!(Error::DomainViolation(format!("{q} is not a square"))))?;
            ctx.check_eq("size 2(q+sqrt q+1)", s.len() as u64, 2 * (q + root + 1));
            ctx.check("2-fold blocking", verify_tfold_blocking(&s, 2, 1))?;
            let big = field(q * q)?;
            let outcome = embed_set(&s, &big).and_then(|e| verify_saturating(&e, Some(1))).map(|r| r.matches_claim);
            ctx.check(format!("1-saturating in PG(2,{})", q * q), outcome)?;
            ctx.result = points_summary(&s);
            ctx.emit_points(&s, &out)
        }
        Construct::CubicPair { p, out } => {
            let pair = cubic_blocking_pair(p)?;
            let s = pair.set;
            ctx.check_eq("size 2(p^3+p^2+p+1)", s.len() as u64, 2 * (p * p * p + p * p + p + 1));
            ctx.check("2-fold blocking", verify_tfold_blocking(&s, 2, 1))?;
            ctx.result = json!({ "v": 2, "q": s.field().q(), "size": s.len(),
                "c": pair.c, "d": pair.d, "a": pair.a, "b": pair.b });
            ctx.emit_points(&s, &out)
        }
        Construct::Qm { variant, start, m, partition, ell0, aux, out } => {
            let v0 = ctx.read_code(&start)?;
            let part = match partition {
                Some(p) => {
                    let text = ctx.read(&p)?;
                    let (part, n) = io::read_partition(&text)?;
                    if n != v0.n() {
                        bail!(Error::DimensionMismatch(format!("partition of {n} columns for a code of length {}", v0.n())));
                    }
                    part
                }
                None => Partition::trivial(v0.n()),
            };
            let radius = v0.covering_radius()?;
            let ell0 = match ell0 {
                Some(l) => l,
                None => partition_max_ell(&v0, &part, radius)?
                    .ok_or_else(|| anyhow!(Error::PartitionInvalid))?,
            };
            let aux = aux.map(|p| ctx.read_code(&p)).transpose()?;
            let res = qm_construct(variant, &v0, &part, ell0, m, aux.as_ref())?;
            ctx.check_eq("length", res.code.n() as u128, res.expected_length);
            match res.radius {
                Some(r) if res.verified => ctx.check_eq("covering radius", r, res.radius_target),
                _ => ctx.record(
                    format!("covering radius {}", res.radius_target),
                    CheckStatus::Asserted,
                    "syndrome space above the cap",
                ),
            }
            ctx.result = json!({ "variant": variant.to_string(), "m": m, "ell0": ell0,
                "radius": res.radius_target, "code": code_summary(&res.code) });
            ctx.emit_code(&res.code, &out)
        }
        Construct::Ds { inputs, out } => {
            let parts = inputs.iter().map(|p| ctx.read_code(p)).collect::<Result<Vec<_>>>()?;
            let c = direct_sum(&parts)?;
            match parts.iter().map(|p| p.covering_radius()).sum::<covercraft::Result<usize>>() {
                Ok(want) => radius_claim(ctx, &c, want)?,
                Err(e @ Error::CapExceeded { .. }) => ctx.record("covering radius additive", CheckStatus::Asserted, e.to_string()),
                Err(e) => return Err(e.into()),
            }
            ctx.result = code_summary(&c);
            ctx.emit_code(&c, &out)
        }
        Construct::Doubling { input, out } => {
            let c0 = ctx.read_code(&input)?;
            let c = doubling(&c0)?;
            ctx.check_eq("length doubles", c.n(), 2 * c0.n());
            radius_claim(ctx, &c, 2)?;
            ctx.result = code_summary(&c);
            ctx.emit_code(&c, &out)
        }
        Construct::Hamming { q, m, out } => {
            let c = Code::new(hamming_pcm(m, &field(q)?)?)?;
            ctx.check_eq("length theta", c.n() as u128, theta(m as u32, q));
            radius_claim(ctx, &c, 1)?;
            ctx.result = code_summary(&c);
            ctx.emit_code(&c, &out)
        }
        Construct::Sigma { copies, m, q, out } => {
            let c = Code::new(sigma_matrix(copies, m, &field(q)?)?)?;
            radius_claim(ctx, &c, copies)?;
            ctx.result = code_summary(&c);
            ctx.emit_code(&c, &out)
        }
    }
}

fn verify(ctx: &mut Ctx, cmd: Verify) -> Result<()> {
    match cmd {
        Verify::Radius { code, claim } => {
            let c = ctx.read_code(&code)?;
            let r = c.covering_radius()?;
            ctx.check_eq("covering radius", r, claim);
            ctx.result = json!({ "code": code_summary(&c), "covering_radius": r });
        }
        Verify::Saturating { points, claim, over } => {
            let mut s = ctx.read_points(&points)?;
            if let Some(q) = over {
                s = embed_set(&s, &field(q)?)?;
            }
            let rep = verify_saturating(&s, Some(claim))?;
            let status = if rep.matches_claim { CheckStatus::Verified } else { CheckStatus::Failed };
            ctx.record(format!("{claim}-saturating"), status, format!("smallest rho {:?}", rep.smallest_rho));
            ctx.result = json!({ "set": points_summary(&s), "report": rep });
        }
        Verify::Blocking { points, t, dim } => {
            let s = ctx.read_points(&points)?;
            match dim {
                Some(d) => {
                    let ok = verify_tfold_blocking(&s, t, d)?;
                    let status = if ok { CheckStatus::Verified } else { CheckStatus::Failed };
                    ctx.record(format!("{t}-fold blocking of {d}-spaces"), status, "");
                    ctx.result = json!({ "set": points_summary(&s), "blocking": ok });
                }
                None => {
                    let rep = verify_strong_blocking(&s, t)?;
                    let status = if rep.is_tfold_strong { CheckStatus::Verified } else { CheckStatus::Failed };
                    ctx.record(format!("{t}-fold strong blocking"), status, "");
                    ctx.result = json!({ "set": points_summary(&s), "report": rep });
                }
            }
        }
        Verify::Partition { code, partition, radius, ell } => {
            let c = ctx.read_code(&code)?;
            let text = ctx.read(&partition)?;
            let (part, n) = io::read_partition(&text)?;
            if n != c.n() {
                bail!(Error::DimensionMismatch(format!("partition of {n} columns for a code of length {}", c.n())));
            }
            let ok = verify_partition(&c, &part, radius, ell)?;
            let status = if ok { CheckStatus::Verified } else { CheckStatus::Failed };
            ctx.record(format!("({radius},{ell})-partition"), status, "");
            ctx.result = json!({ "code": code_summary(&c), "subsets": part.len(), "holds": ok });
        }
    }
    Ok(())
}

fn bound(id: &str, binds: &[String]) -> Result<FamilyDescriptor> {
    let mut d = families::family(id)
        .cloned()
        .ok_or_else(|| anyhow!(Error::Parse(format!("unknown family {id}"))))?;
    for b in binds {
        let (k, v) = b.split_once('=').ok_or_else(|| anyhow!(Error::Parse(format!("binding {b:?} is not k=v"))))?;
        let v: i64 = v.trim().parse().map_err(|_| anyhow!(Error::Parse(format!("binding {b:?}"))))?;
        d = d.with(k.trim(), v);
    }
    Ok(d)
}

#[derive(Serialize)]
struct FamilyRow {
    id: String,
    label: String,
    #[serde(rename = "R")]
    radius: Option<u32>,
    gamma: Option<i64>,
    r_min: Option<u32>,
    summary: String,
}

fn family_row(d: &FamilyDescriptor, q: Option<u64>) -> FamilyRow {
    FamilyRow {
        id: d.id.clone(),
        label: d.label(),
        radius: d.radius_value(),
        gamma: q.and_then(|q| d.gamma_value(q).ok()),
        r_min: q.and_then(|q| d.r_min(q)),
        summary: d.summary.clone(),
    }
}

fn families_cmd(ctx: &mut Ctx, cmd: Families) -> Result<()> {
    match cmd {
        Families::List { radius, q } => {
            let rows: Vec<FamilyRow> = match (radius, q) {
                (Some(r), Some(q)) => families::list_families(r, q).iter().map(|d| family_row(d, Some(q))).collect(),
                (None, None) => families::catalog().iter().map(|d| family_row(d, None)).collect(),
                _ => bail!(Error::Parse("--radius and --q go together".into())),
            };
            ctx.table(&rows)?;
            ctx.result = json!(rows);
        }
        Families::Eval { id, q, r, bind } => {
            let d = bound(&id, &bind)?;
            let e = families::family_eval(&d, q, r)?;
            let density = families::family_density_bound(&d, q)?
                .map(|b| json!({ "kind": b.kind, "value": b.value.to_string(), "approx": b.value.to_f64() }));
            ctx.result = json!({ "family": d.label(), "q": q, "r": r, "n": e.n.to_string(),
                "width": e.width.to_string(), "density": density });
        }
        Families::Check { id, q, bind } => {
            let d = bound(&id, &bind)?;
            let cc = families::cross_check_family(&d, q)?;
            ctx.check_eq("constructed length", cc.constructed as u128, cc.formula);
            match cc.radius_ok {
                Some(ok) => {
                    let status = if ok { CheckStatus::Verified } else { CheckStatus::Failed };
                    ctx.record("covering radius", status, "");
                }
                None => ctx.record("covering radius", CheckStatus::Asserted, "syndrome space above the cap"),
            }
            ctx.result = json!(cc);
        }
        Families::OpenProblem { radius, q } => {
            let rep = families::open_problem_one_check(radius, q);
            #[derive(Serialize)]
            struct Row {
                gamma: usize,
                family: Option<String>,
            }
            let rows: Vec<Row> =
                rep.per_gamma.iter().enumerate().map(|(gamma, f)| Row { gamma, family: f.clone() }).collect();
            ctx.table(&rows)?;
            ctx.result = json!(rep);
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct BoundRow {
    q_max: u64,
    threshold: String,
    max_value: f64,
    argmax_q: u64,
    entries: usize,
    failures: String,
    pass: bool,
}

fn tables_cmd(ctx: &mut Ctx, cmd: Tables) -> Result<()> {
    match cmd {
        Tables::Reproduce { table, qmax, exact_qmax, r_max } => {
            let mut opts = ReproOptions::defaults(table);
            opts.budget = ctx.budget;
            if let Some(q) = qmax {
                opts.upper_qmax = q;
                opts.exact_qmax = opts.exact_qmax.min(q);
            }
            if let Some(q) = exact_qmax {
                opts.exact_qmax = q;
            }
            if let Some(r) = r_max {
                opts.r_max = r;
            }
            let rows = search::table_reproduce(table, &opts)?;
            let mismatches = rows.iter().filter(|r| r.status == ReproStatus::Mismatch).count();
            let budget = rows.iter().filter(|r| r.status == ReproStatus::Budget).count();
            let status = if mismatches == 0 { CheckStatus::Verified } else { CheckStatus::Failed };
            ctx.record(format!("table {table} rows"), status, format!("{mismatches} mismatches of {}", rows.len()));
            if budget > 0 && mismatches == 0 {
                ctx.code = Some(EXIT_LIMIT);
            }
            ctx.table(&rows)?;
            ctx.result = json!(rows);
        }
        Tables::Bounds { theorem } => {
            let rep = search::bound_theorem_check(theorem)?;
            let status = if rep.pass { CheckStatus::Verified } else { CheckStatus::Failed };
            ctx.record(format!("bound {theorem:?}"), status, "");
            let rows: Vec<BoundRow> = rep
                .rows
                .iter()
                .map(|r| BoundRow {
                    q_max: r.q_max,
                    threshold: r.threshold.clone(),
                    max_value: r.max_value,
                    argmax_q: r.argmax_q,
                    entries: r.entries,
                    failures: r.failures.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                    pass: r.pass,
                })
                .collect();
            ctx.table(&rows)?;
            ctx.result = json!(rep);
        }
    }
    Ok(())
}

fn search_cmd(ctx: &mut Ctx, cmd: Search) -> Result<()> {
    match cmd {
        Search::Exhaustive { v, q, rho, n_max, out } => {
            let f = field(q)?;
            match search::exhaustive_min_saturating(v, &f, rho, n_max, ctx.budget) {
                Ok(res) => {
                    let status = if res.lower_proven { CheckStatus::Verified } else { CheckStatus::Asserted };
                    ctx.record(format!("no smaller {rho}-saturating set"), status, format!("{} nodes", res.nodes));
                    ctx.check(
                        format!("witness is {rho}-saturating"),
                        verify_saturating(&res.witness, Some(rho)).map(|r| r.matches_claim),
                    )?;
                    ctx.result = json!({ "v": v, "q": q, "rho": rho, "n_min": res.n_min, "nodes": res.nodes });
                    ctx.emit_points(&res.witness, &out)?;
                }
                Err(Error::SearchExhausted(msg)) => {
                    ctx.result = json!({ "v": v, "q": q, "rho": rho, "n_min": null, "detail": msg });
                }
                Err(e) => return Err(e.into()),
            }
        }
        Search::Greedy { v, q, rho, seed, out } => {
            let s = search::greedy_saturating(v, &field(q)?, rho, &seed)?;
            ctx.check(format!("{rho}-saturating"), verify_saturating(&s, Some(rho)).map(|r| r.matches_claim))?;
            ctx.result = json!({ "v": v, "q": q, "rho": rho, "size": s.len() });
            ctx.emit_points(&s, &out)?;
        }
    }
    Ok(())
}

fn exit_code_for(e: &anyhow::Error) -> u8 {
    match e.downcast_ref::<Error>() {
        Some(Error::CapExceeded { .. } | Error::BudgetExceeded { .. }) => EXIT_LIMIT,
        _ => EXIT_INPUT,
    }
}

fn main() -> ExitCode {
    let start = Instant::now();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    let mut ctx = Ctx {
        budget: cli.budget.map(Duration::from_secs).unwrap_or_else(search::default_budget),
        format: cli.format,
        inputs: Vec::new(),
        outputs: Vec::new(),
        checks: Vec::new(),
        result: Json::Null,
        csv: None,
        code: None,
    };
    let outcome = match cli.cmd {
        Cmd::Construct(c) => construct(&mut ctx, c),
        Cmd::Verify(c) => verify(&mut ctx, c),
        Cmd::Families(c) => families_cmd(&mut ctx, c),
        Cmd::Tables(c) => tables_cmd(&mut ctx, c),
        Cmd::Search(c) => search_cmd(&mut ctx, c),
    };
    if let Err(e) = outcome {
        eprintln!("error: {e:#}");
        return ExitCode::from(exit_code_for(&e));
    }
    let failed = ctx.checks.iter().any(|c| matches!(c.status, CheckStatus::Failed));
    let code = if failed { EXIT_MISMATCH } else { ctx.code.unwrap_or(0) };
    let report = RunReport {
        command: std::env::args().collect(),
        inputs: ctx.inputs,
        outputs: ctx.outputs,
        checks: ctx.checks,
        result: ctx.result,
        elapsed_ms: start.elapsed().as_millis(),
        ok: code == 0,
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    if let Some(p) = &cli.report {
        if let Err(e) = fs::write(p, &text) {
            eprintln!("error: writing {}: {e}", p.display());
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match ctx.csv {
        Some(csv) if cli.format == Format::Csv => print!("{csv}"),
        _ => println!("{text}"),
    }
    ExitCode::from(code)
}
