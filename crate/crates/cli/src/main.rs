//! Command-line front end: enumerate relation families, apply the structure
//! maps to relations in the text format, compare the two sides of the count
//! equality, and export Hasse diagrams as DOT.
//!
//! Exit codes: 0 on success (and equality for the counting verbs), 1 when
//! counts differ or an input fails a family precondition, 2 on usage or
//! parse errors.

use std::fmt;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use porder::bijections::{
    phi_inverse, sigma, sigma_inverse, tau, theorem_count_check, BijectionError,
};
use porder::dot::to_dot;
use porder::enumeration::{all_posets, ClassCount, CountReport};
use porder::families::{
    enumerate_family, is_member, verify_partition, FamilyError, FamilyKind, FamilySpec,
    PartitionSystem,
};
use porder::relation::{ElemSet, Relation, SplitContext};
use porder::text::{parse_relation, write_relation, Labels, TextError};

#[derive(Parser)]
#[command(
    name = "porder",
    version,
    about = "Finite partial order relations: enumerate, map, count, verify, export"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compare the number of relations extending the anchor (dualized)
    /// against the number of extensions carrying a fresh maximal apex.
    /// Exits 0 iff the two counts agree.
    Count {
        #[command(flatten)]
        anchor: AnchorArgs,
        /// Label for the apex point
        #[arg(long, default_value = "y")]
        apex: String,
        /// Emit one JSON line instead of the table
        #[arg(long)]
        json: bool,
    },
    /// List every member of a relation family in the text format
    Enumerate {
        /// Family kind: u, c, m, mstar, i, nstar or g
        #[arg(long)]
        family: FamilyKind,
        #[command(flatten)]
        anchor: AnchorArgs,
        /// Label for a fresh apex point extending the anchor
        #[arg(long)]
        apex: Option<String>,
    },
    /// Apply a structure map to a relation read from a file or stdin
    Map {
        verb: MapVerb,
        /// Input file (defaults to stdin)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Lower-part labels, comma separated (default: everything else)
        #[arg(long = "X")]
        x: Option<String>,
        /// Upper-part labels for tau and phi-inverse
        #[arg(long = "Y")]
        y: Option<String>,
        /// Anchor-part labels for sigma and sigma-inverse
        #[arg(long = "Z")]
        z: Option<String>,
        /// Apex label: an existing element for sigma, a fresh one for
        /// sigma-inverse
        #[arg(long)]
        apex: Option<String>,
        /// Re-validate family membership of the image
        #[arg(long)]
        check: bool,
    },
    /// Render the Hasse diagram as a Graphviz digraph, bottom-to-top
    ExportDot {
        /// Input file (defaults to stdin)
        #[arg(long)]
        input: Option<PathBuf>,
        /// Anchor-part labels, drawn as filled black circles
        #[arg(long = "Z")]
        z: Option<String>,
        /// Lower-part labels, drawn as plain circles (default: the rest)
        #[arg(long = "X")]
        x: Option<String>,
        /// Apex label, drawn as a hollow diamond
        #[arg(long)]
        apex: Option<String>,
    },
    /// Batch verification over parameter sweeps
    Verify {
        #[command(subcommand)]
        what: VerifyCmd,
    },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Check the count equality for every anchor up to the given sizes.
    /// Exits 0 iff every instance agrees.
    Theorem {
        #[arg(long = "maxZ", default_value_t = 3)]
        max_z: usize,
        #[arg(long = "maxX", default_value_t = 2)]
        max_x: usize,
        /// Emit one JSON line per instance
        #[arg(long)]
        json: bool,
    },
    /// Check that the hull-spanning blocks partition the chosen family
    Partition {
        #[command(flatten)]
        anchor: AnchorArgs,
        /// Which system: the convex blocks of the induced family (c) or
        /// the max-pinned blocks of the max-pinned family (mstar)
        #[arg(long)]
        which: WhichPartition,
        /// Emit the report as JSON
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct AnchorArgs {
    /// Anchor relation: a preset (empty, antichain<k>, chain<k>, lambda,
    /// vee) or a file in the text format
    #[arg(long = "Q")]
    q: String,
    /// Extra lower elements: a count (labels x1..xk) or a comma-separated
    /// list of fresh labels
    #[arg(long = "X", default_value = "0")]
    x: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum MapVerb {
    Sigma,
    SigmaInverse,
    Tau,
    PhiInverse,
}

#[derive(Clone, Copy, ValueEnum)]
enum WhichPartition {
    C,
    Mstar,
}

impl From<WhichPartition> for PartitionSystem {
    fn from(w: WhichPartition) -> PartitionSystem {
        match w {
            WhichPartition::C => PartitionSystem::Convex,
            WhichPartition::Mstar => PartitionSystem::ConvexMax,
        }
    }
}

/// Errors with their process exit code: 1 for "well-formed but not in the
/// family / not equal", 2 for usage and parse problems.
#[derive(Debug)]
struct CliError {
    message: String,
    code: u8,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl From<TextError> for CliError {
    fn from(e: TextError) -> CliError {
        CliError::usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::usage(e.to_string())
    }
}

impl From<BijectionError> for CliError {
    fn from(e: BijectionError) -> CliError {
        let code = match e {
            BijectionError::NotInFamily(_) | BijectionError::NotMonotone { .. } => 1,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> CliError {
        let code = match e {
            FamilyError::PartitionViolation { .. } => 1,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.cmd {
        Cmd::Count { anchor, apex, json } => cmd_count(&anchor, &apex, json),
        Cmd::Enumerate {
            family,
            anchor,
            apex,
        } => cmd_enumerate(family, &anchor, apex.as_deref()),
        Cmd::Map {
            verb,
            input,
            x,
            y,
            z,
            apex,
            check,
        } => cmd_map(verb, input, x, y, z, apex, check),
        Cmd::ExportDot { input, z, x, apex } => cmd_export_dot(input, z, x, apex),
        Cmd::Verify { what } => match what {
            VerifyCmd::Theorem { max_z, max_x, json } => cmd_verify_theorem(max_z, max_x, json),
            VerifyCmd::Partition {
                anchor,
                which,
                json,
            } => cmd_verify_partition(&anchor, which, json),
        },
    }
}

/// The anchor and the extra lower elements resolved to ids: anchor ids
/// first, then the lower part (an apex, when used, goes on top).
struct Instance {
    q: Relation,
    lower: ElemSet,
    labels: Labels,
}

fn load_anchor(spec: &str) -> Result<(Relation, Labels), CliError> {
    let preset = |r: Relation, n: usize| -> Result<(Relation, Labels), CliError> {
        Ok((r, Labels::numbered("z", n)?))
    };
    if spec == "empty" {
        return preset(Relation::empty(), 0);
    }
    if spec == "lambda" {
        return preset(Relation::lambda(), 3);
    }
    if spec == "vee" {
        return preset(Relation::vee(), 3);
    }
    for (name, make) in [
        ("antichain", Relation::antichain as fn(usize) -> Relation),
        ("chain", Relation::chain as fn(usize) -> Relation),
    ] {
        if let Some(rest) = spec.strip_prefix(name) {
            if let Ok(k) = rest.parse::<usize>() {
                if k > porder::MAX_ELEMENTS {
                    return Err(CliError::usage(format!("preset {spec} is too large")));
                }
                return preset(make(k), k);
            }
        }
    }
    let content = std::fs::read_to_string(spec)
        .map_err(|e| CliError::usage(format!("cannot read {spec}: {e}")))?;
    Ok(parse_relation(&content)?)
}

fn build_instance(args: &AnchorArgs) -> Result<Instance, CliError> {
    let (q, mut labels) = load_anchor(&args.q)?;
    let base = labels.len();
    let x_names: Vec<String> = if let Ok(k) = args.x.parse::<usize>() {
        (1..=k).map(|i| format!("x{i}")).collect()
    } else {
        args.x
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::to_string)
            .collect()
    };
    for name in &x_names {
        labels.push(name)?;
    }
    let lower: ElemSet = (base..base + x_names.len()).collect();
    Ok(Instance { q, lower, labels })
}

fn legend(labels: &Labels) -> String {
    labels
        .iter()
        .enumerate()
        .map(|(id, name)| format!("{name}={id}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn classes_json(classes: &[ClassCount]) -> serde_json::Value {
    serde_json::Value::Array(
        classes
            .iter()
            .map(|c| serde_json::json!([c.form, c.count]))
            .collect(),
    )
}

fn count_json(command: &str, params: serde_json::Value, report: &CountReport) -> String {
    serde_json::json!({
        "command": command,
        "params": params,
        "lhs": report.lhs_count,
        "rhs": report.rhs_count,
        "equal": report.equal(),
        "classes": {
            "lhs": classes_json(&report.lhs_classes),
            "rhs": classes_json(&report.rhs_classes),
        },
    })
    .to_string()
}

fn cmd_count(args: &AnchorArgs, apex: &str, json: bool) -> Result<u8, CliError> {
    let mut inst = build_instance(args)?;
    let apex_id = inst.labels.push(apex)?;
    let report = theorem_count_check(&inst.q, inst.lower, apex_id)?;
    if json {
        let params = serde_json::json!({
            "q": inst.q.to_string(),
            "x": inst.lower.len(),
            "apex": apex,
        });
        println!("{}", count_json("count", params, &report));
    } else {
        println!("labels: {}", legend(&inst.labels));
        print!("{report}");
    }
    Ok(if report.equal() { 0 } else { 1 })
}

fn cmd_enumerate(
    family: FamilyKind,
    args: &AnchorArgs,
    apex: Option<&str>,
) -> Result<u8, CliError> {
    let mut inst = build_instance(args)?;
    let ctx = match apex {
        Some(label) => {
            let apex_id = inst.labels.push(label)?;
            SplitContext::with_apex(inst.lower, inst.q.carrier(), apex_id)
        }
        None => SplitContext::new(inst.lower, inst.q.carrier()),
    }
    .expect("instance ids are disjoint by construction");
    let spec = FamilySpec::new(family, ctx, Some(inst.q))?;
    let members = enumerate_family(&spec)?;
    let mut first = true;
    for r in &members {
        if !first {
            println!();
        }
        print!("{}", write_relation(r, &inst.labels));
        first = false;
    }
    eprintln!("{} members", members.len());
    Ok(0)
}

fn read_input(input: Option<PathBuf>) -> Result<(Relation, Labels), CliError> {
    let content = match input {
        Some(path) => std::fs::read_to_string(path)?,
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            buf
        }
    };
    Ok(parse_relation(&content)?)
}

fn resolve(labels: &Labels, list: &Option<String>) -> Result<Option<ElemSet>, CliError> {
    match list {
        Some(l) => Ok(Some(labels.resolve_list(l)?)),
        None => Ok(None),
    }
}

fn split_for(
    r: &Relation,
    labels: &Labels,
    x: &Option<String>,
    upper_flag: &Option<String>,
    verb: &str,
) -> Result<SplitContext, CliError> {
    let x_set = resolve(labels, x)?;
    let upper_set = resolve(labels, upper_flag)?;
    let (lower, upper) = match (x_set, upper_set) {
        (Some(l), Some(u)) => (l, u),
        (Some(l), None) => (l, r.carrier() - l),
        (None, Some(u)) => (r.carrier() - u, u),
        (None, None) => {
            return Err(CliError::usage(format!(
                "{verb} needs --X and/or its upper-part flag"
            )))
        }
    };
    SplitContext::new(lower, upper)
        .map_err(|e| CliError::usage(format!("bad split for {verb}: {e}")))
}

fn cmd_map(
    verb: MapVerb,
    input: Option<PathBuf>,
    x: Option<String>,
    y: Option<String>,
    z: Option<String>,
    apex: Option<String>,
    check: bool,
) -> Result<u8, CliError> {
    let (r, mut labels) = read_input(input)?;
    match verb {
        MapVerb::Tau => {
            let ctx = split_for(&r, &labels, &x, &y, "tau")?;
            let image = tau(&r, &ctx)?;
            print!("{}", write_relation(&image, &labels));
            if check {
                eprintln!("check: image keeps {} as an upper end", ctx.upper());
            }
        }
        MapVerb::PhiInverse => {
            let ctx = split_for(&r, &labels, &x, &y, "phi-inverse")?;
            let f = phi_inverse(&r, &ctx)?;
            print!("{}", write_relation(f.base(), &labels));
            for yy in f.domain().iter() {
                let members: Vec<&str> = f.image(yy).iter().map(|i| labels.label(i)).collect();
                println!("{} <- {}", labels.label(yy), members.join(" "));
            }
            if check {
                eprintln!(
                    "check: map is {}",
                    if f.is_starred() {
                        "starred"
                    } else {
                        "not starred"
                    }
                );
            }
        }
        MapVerb::Sigma => {
            let z_list = z.ok_or_else(|| CliError::usage("sigma needs --Z"))?;
            let apex_label = apex.ok_or_else(|| CliError::usage("sigma needs --apex"))?;
            let z_set = labels.resolve_list(&z_list)?;
            let apex_id = labels
                .id_of(&apex_label)
                .ok_or_else(|| CliError::usage(format!("unknown apex label {apex_label:?}")))?;
            let lower = match resolve(&labels, &x)? {
                Some(l) => l,
                None => (r.carrier() - z_set).without(apex_id),
            };
            let ctx = SplitContext::with_apex(lower, z_set, apex_id)
                .map_err(|e| CliError::usage(format!("bad split for sigma: {e}")))?;
            let image = sigma(&r, &ctx)?;
            print!("{}", write_relation(&image, &labels));
            if check {
                let anchor = r
                    .induced(z_set)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                let flat = SplitContext::new(lower, z_set).expect("parts already disjoint");
                let spec = FamilySpec::new(FamilyKind::Convex, flat, Some(anchor.dual()))?;
                confirm_membership(&image, &spec, "the dual convex family")?;
            }
        }
        MapVerb::SigmaInverse => {
            let z_list = z.ok_or_else(|| CliError::usage("sigma-inverse needs --Z"))?;
            let apex_label =
                apex.ok_or_else(|| CliError::usage("sigma-inverse needs --apex (a fresh label)"))?;
            let z_set = labels.resolve_list(&z_list)?;
            let lower = match resolve(&labels, &x)? {
                Some(l) => l,
                None => r.carrier() - z_set,
            };
            let apex_id = labels.push(&apex_label)?;
            let ctx = SplitContext::with_apex(lower, z_set, apex_id)
                .map_err(|e| CliError::usage(format!("bad split for sigma-inverse: {e}")))?;
            let image = sigma_inverse(&r, &ctx)?;
            print!("{}", write_relation(&image, &labels));
            if check {
                let anchor = r
                    .induced(z_set)
                    .map_err(|e| CliError::usage(e.to_string()))?;
                let spec = FamilySpec::new(FamilyKind::ConvexMax, ctx, Some(anchor.dual()))?;
                confirm_membership(&image, &spec, "the apex-extended max-pinned family")?;
            }
        }
    }
    Ok(0)
}

fn confirm_membership(image: &Relation, spec: &FamilySpec, family: &str) -> Result<(), CliError> {
    if is_member(image, spec)? {
        eprintln!("check: image is in {family}");
        Ok(())
    } else {
        Err(CliError {
            message: format!("check failed: image {image} is not in {family}"),
            code: 1,
        })
    }
}

fn cmd_export_dot(
    input: Option<PathBuf>,
    z: Option<String>,
    x: Option<String>,
    apex: Option<String>,
) -> Result<u8, CliError> {
    let (r, labels) = read_input(input)?;
    let styled = z.is_some() || x.is_some() || apex.is_some();
    let roles = if styled {
        let z_set = resolve(&labels, &z)?.unwrap_or(ElemSet::EMPTY);
        let apex_id = match &apex {
            Some(a) => Some(
                labels
                    .id_of(a)
                    .ok_or_else(|| CliError::usage(format!("unknown apex label {a:?}")))?,
            ),
            None => None,
        };
        let lower = match resolve(&labels, &x)? {
            Some(l) => l,
            None => {
                let mut rest = r.carrier() - z_set;
                if let Some(a) = apex_id {
                    rest = rest.without(a);
                }
                rest
            }
        };
        let ctx = match apex_id {
            Some(a) => SplitContext::with_apex(lower, z_set, a),
            None => SplitContext::new(lower, z_set),
        }
        .map_err(|e| CliError::usage(format!("bad roles: {e}")))?;
        Some(ctx)
    } else {
        None
    };
    print!("{}", to_dot(&r, &labels, roles.as_ref()));
    Ok(0)
}

fn cmd_verify_theorem(max_z: usize, max_x: usize, json: bool) -> Result<u8, CliError> {
    let mut all_equal = true;
    if !json {
        println!(
            "{:<24} {:>4} {:>6} {:>6}  equal",
            "anchor", "|X|", "left", "right"
        );
    }
    for zsize in 0..=max_z {
        let anchors = all_posets(ElemSet::first(zsize)).map_err(BijectionError::from)?;
        for q in anchors {
            for xsize in 0..=max_x {
                let lower: ElemSet = (zsize..zsize + xsize).collect();
                let report = theorem_count_check(&q, lower, zsize + xsize)?;
                all_equal &= report.equal();
                if json {
                    let params = serde_json::json!({
                        "q": q.to_string(),
                        "x": xsize,
                        "apex": "y",
                    });
                    println!("{}", count_json("verify-theorem", params, &report));
                } else {
                    println!(
                        "{:<24} {:>4} {:>6} {:>6}  {}",
                        q.to_string(),
                        xsize,
                        report.lhs_count,
                        report.rhs_count,
                        if report.equal() { "yes" } else { "NO" }
                    );
                }
            }
        }
    }
    Ok(if all_equal { 0 } else { 1 })
}

fn cmd_verify_partition(
    args: &AnchorArgs,
    which: WhichPartition,
    json: bool,
) -> Result<u8, CliError> {
    let inst = build_instance(args)?;
    let report = verify_partition(&inst.q, inst.lower, which.into())?;
    if json {
        println!(
            "{}",
            serde_json::to_string(&report).expect("report serializes")
        );
    } else {
        println!("labels: {}", legend(&inst.labels));
        print!("{report}");
    }
    Ok(0)
}
