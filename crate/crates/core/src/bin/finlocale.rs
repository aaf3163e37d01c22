use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use finlocale::frame::{is_regular, is_spectral, is_stone, is_zero_dimensional, points, check_frame, Frame};
use finlocale::io::{emit_dot, format_lattice, parse_input, Input, InputError, InputKind};
use finlocale::lattice::{validate_lattice, Lattice};
use finlocale::nuclei::{enumerate_nuclei, format_table, parse_table, sublocale_frame, validate_nucleus};
use finlocale::patch::{nucleus_label, patch, patch_base, verify_patch_up};
use finlocale::report::{input_digest, Report};
use finlocale::scott::{
    is_spectral_scott, points_equivalences, scott_frame, sharp_elements, verify_sierpinski_up,
    ScottDomain, FINITE_COLLAPSE_NOTE,
};
use finlocale::spectrum::{duality_roundtrip_frame, duality_roundtrip_object, spectrum};
use finlocale::{suite, DEFAULT_CAP};

/// Finite point-free topology: frames, nuclei, spectra, patch and Scott locales.
#[derive(Parser)]
#[command(name = "finlocale", version)]
struct Cli {
    /// Candidate budget for every enumeration.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Record wall-clock time in the report.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Poset,
    Lattice,
    Domain,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and validate a poset, lattice or domain file.
    Validate {
        file: PathBuf,
        /// Defaults from the extension: .pos, .lat, .dom.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Echo the order and operation tables as JSON.
    Show {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    /// Hasse diagram in DOT, wrapped in a report.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum)]
        kind: Option<Kind>,
    },
    #[command(subcommand)]
    Frame(FrameCmd),
    #[command(subcommand)]
    Nuclei(NucleiCmd),
    /// Frame of ideals of a lattice.
    Spectrum { file: PathBuf },
    #[command(subcommand)]
    Duality(DualityCmd),
    /// Frame of nuclei of a frame.
    #[command(args_conflicts_with_subcommands = true)]
    Patch {
        file: Option<PathBuf>,
        #[command(subcommand)]
        sub: Option<PatchCmd>,
    },
    #[command(subcommand)]
    Scott(ScottCmd),
    /// Run an acceptance group: all, spectrum, duality, nuclei, patch, aft, scott, collapse, or 1..12.
    Suite { name: String },
}

#[derive(Subcommand)]
enum FrameCmd {
    /// Lattice laws and subset distributivity.
    Check { file: PathBuf },
    /// Completely prime filters.
    Points { file: PathBuf },
    /// Spectral, zero-dimensional, regular and Stone, with witnesses.
    Classes { file: PathBuf },
}

#[derive(Subcommand)]
enum NucleiCmd {
    List { file: PathBuf },
    /// Check a table such as `j: 0->a a->a 1->1`.
    Check { file: PathBuf, table: String },
}

#[derive(Subcommand)]
enum DualityCmd {
    Check { file: PathBuf },
}

#[derive(Subcommand)]
enum PatchCmd {
    /// Universal property of the patch for frames A and Stone X.
    VerifyUp { a: PathBuf, x: PathBuf },
}

#[derive(Subcommand)]
enum ScottCmd {
    Frame { file: PathBuf },
    Points { file: PathBuf },
    Sharp { file: PathBuf },
    /// Run every certificate.
    Verify { file: PathBuf },
}

type Outcome = Result<(Value, Vec<Value>), String>;

fn kind_of(path: &Path, kind: Option<Kind>) -> InputKind {
    match kind {
        Some(Kind::Poset) => InputKind::Poset,
        Some(Kind::Lattice) => InputKind::Lattice,
        Some(Kind::Domain) => InputKind::Domain,
        None => match path.extension().and_then(|e| e.to_str()) {
            Some("pos") => InputKind::Poset,
            Some("dom") => InputKind::Domain,
            _ => InputKind::Lattice,
        },
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn load(path: &Path, kind: InputKind) -> Result<Input, String> {
    parse_input(path, kind).map_err(|e| match e {
        InputError::Parse { .. } => format!("{}:{e}", path.display()),
        e => format!("{}: {e}", path.display()),
    })
}

fn lattice(path: &Path) -> Result<Lattice, String> {
    match load(path, InputKind::Lattice)? {
        Input::Lattice(l) => Ok(l),
        _ => unreachable!(),
    }
}

fn frame(path: &Path) -> Result<Frame, String> {
    lattice(path).map(Frame::new)
}

fn domain(path: &Path) -> Result<ScottDomain, String> {
    match load(path, InputKind::Domain)? {
        Input::Domain(d) => Ok(d),
        _ => unreachable!(),
    }
}

fn to_json<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn labels(l: &Lattice, s: impl IntoIterator<Item = usize>) -> Vec<String> {
    s.into_iter().map(|i| l.label(i).to_string()).collect()
}

fn show(input: &Input) -> Value {
    let poset = match input {
        Input::Poset(p) => p,
        Input::Lattice(l) => l.poset(),
        Input::Domain(d) => d.poset(),
    };
    let mut v = json!({
        "elements": poset.labels(),
        "leq": poset.relation().to_rows(),
    });
    match input {
        Input::Lattice(l) => {
            let n = l.len();
            let rows = |t: &[usize]| t.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>();
            v["top"] = json!(l.top());
            v["bot"] = json!(l.bot());
            v["meet"] = json!(rows(l.meet_table()));
            v["join"] = json!(rows(l.join_table()));
        }
        Input::Domain(d) => v["bot"] = json!(d.bot()),
        Input::Poset(_) => {}
    }
    v
}

fn frame_cmd(cmd: &FrameCmd, cap: u64) -> Outcome {
    match cmd {
        FrameCmd::Check { file } => {
            let f = frame(file)?;
            let r = check_frame(&f, cap).map_err(err)?;
            let mut w: Vec<Value> = r.lattice_violations.iter().map(to_json).collect();
            w.extend(r.distributivity_failure.iter().map(to_json));
            Ok((json!({ "frame": r.ok(), "size": f.len() }), w))
        }
        FrameCmd::Points { file } => {
            let f = frame(file)?;
            let pts = points(&f, cap).map_err(err)?;
            let filters: Vec<Value> = pts
                .iter()
                .map(|p| json!({ "filter": p.filter, "labels": labels(&f, p.filter) }))
                .collect();
            Ok((json!({ "count": pts.len(), "points": filters }), vec![]))
        }
        FrameCmd::Classes { file } => {
            let f = frame(file)?;
            let classes = vec![
                is_spectral(&f, cap).map_err(err)?,
                is_zero_dimensional(&f),
                is_regular(&f),
                is_stone(&f, cap).map_err(err)?,
            ];
            Ok((to_json(&classes), vec![]))
        }
    }
}

fn nuclei_cmd(cmd: &NucleiCmd, cap: u64) -> Outcome {
    match cmd {
        NucleiCmd::List { file } => {
            let f = frame(file)?;
            let ns = enumerate_nuclei(&f, cap).map_err(err)?;
            let list: Vec<Value> = ns
                .iter()
                .map(|j| json!({ "table": format_table(&f, j.table()), "label": nucleus_label(&f, j) }))
                .collect();
            Ok((json!({ "count": ns.len(), "nuclei": list }), vec![]))
        }
        NucleiCmd::Check { file, table } => {
            let f = frame(file)?;
            let t = parse_table(&f, table)?;
            match validate_nucleus(&f, t.clone()) {
                Ok(j) => {
                    let sub = sublocale_frame(&f, &j);
                    Ok((
                        json!({
                            "nucleus": true,
                            "label": nucleus_label(&f, &j),
                            "fixed_points": labels(&f, j.fixed_points()),
                            "sublocale_size": sub.frame.len(),
                        }),
                        vec![],
                    ))
                }
                Err(e) => Ok((json!({ "nucleus": false, "table": t }), vec![json!(e.to_string())])),
            }
        }
    }
}

fn patch_frame(file: &Path, cap: u64) -> Outcome {
    let x = frame(file)?;
    let p = patch(&x, cap).map_err(err)?;
    let base = patch_base(&p, cap).map_err(err)?;
    let nuclei: Vec<Value> = p
        .nuclei
        .iter()
        .enumerate()
        .map(|(i, j)| json!({ "label": p.frame.label(i), "table": format_table(&x, j.table()) }))
        .collect();
    Ok((
        json!({
            "size": p.frame.len(),
            "nuclei": nuclei,
            "base": labels(&p.frame, base.family.image()),
            "frame_file": format_lattice(&p.frame),
            "dot": emit_dot(p.frame.poset()),
        }),
        vec![],
    ))
}

fn scott_cmd(cmd: &ScottCmd, cap: u64) -> Outcome {
    match cmd {
        ScottCmd::Frame { file } => {
            let d = domain(file)?;
            let loc = scott_frame(&d, cap).map_err(err)?;
            let w: Vec<Value> = validate_lattice(&loc.frame).iter().map(to_json).collect();
            Ok((
                json!({
                    "opens": loc.frame.poset().labels(),
                    "frame_file": format_lattice(&loc.frame),
                    "dot": emit_dot(loc.frame.poset()),
                }),
                w,
            ))
        }
        ScottCmd::Points { file } => {
            let d = domain(file)?;
            let c = points_equivalences(&d, cap).map_err(err)?;
            Ok((json!({ "points": c.scott_points, "nu": c.nu, "pt": c.pt }), vec![]))
        }
        ScottCmd::Sharp { file } => {
            let d = domain(file)?;
            let s = sharp_elements(&d, cap).map_err(err)?;
            let names: Vec<&str> = s.iter().map(|x| d.poset().label(x)).collect();
            Ok((json!({ "sharp": names }), vec![]))
        }
        ScottCmd::Verify { file } => {
            let d = domain(file)?;
            let loc = scott_frame(&d, cap).map_err(err)?;
            let mut w: Vec<Value> = validate_lattice(&loc.frame).iter().map(to_json).collect();
            let spectral = is_spectral_scott(&d, cap).map_err(err)?;
            if !spectral.ok() {
                w.push(json!({ "spectral": spectral.spectral }));
            }
            let up = verify_sierpinski_up(&loc.frame, cap).map_err(err)?;
            let pts = points_equivalences(&d, cap).map_err(err)?;
            Ok((json!({ "spectral": spectral, "sierpinski_homs": up.len(), "points": pts }), w))
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let cap = cli.cap;
    match &cli.command {
        Command::Validate { file, kind } => {
            let input = load(file, kind_of(file, *kind))?;
            let w = match &input {
                Input::Lattice(l) => validate_lattice(l).iter().map(to_json).collect(),
                _ => vec![],
            };
            Ok((json!({ "valid": true, "size": show(&input)["elements"].as_array().map(Vec::len) }), w))
        }
        Command::Show { file, kind } => Ok((show(&load(file, kind_of(file, *kind))?), vec![])),
        Command::Dot { file, kind } => {
            let dot = match load(file, kind_of(file, *kind))? {
                Input::Poset(p) => emit_dot(&p),
                Input::Lattice(l) => emit_dot(l.poset()),
                Input::Domain(d) => emit_dot(d.poset()),
            };
            Ok((json!({ "dot": dot }), vec![]))
        }
        Command::Frame(c) => frame_cmd(c, cap),
        Command::Nuclei(c) => nuclei_cmd(c, cap),
        Command::Spectrum { file } => {
            let l = lattice(file)?;
            let s = spectrum(&l, cap).map_err(err)?;
            let ideals: Vec<Vec<String>> = s.ideals.iter().map(|i| labels(&l, i.members)).collect();
            Ok((
                json!({
                    "ideals": ideals,
                    "frame_file": format_lattice(&s.frame),
                    "dot": emit_dot(s.frame.poset()),
                }),
                vec![],
            ))
        }
        Command::Duality(DualityCmd::Check { file }) => {
            let l = lattice(file)?;
            let object = duality_roundtrip_object(&l, cap).map_err(err)?;
            let frame = duality_roundtrip_frame(&Frame::new(l), cap).map_err(err)?;
            Ok((json!({ "object": object, "frame": frame }), vec![]))
        }
        Command::Patch { file: Some(file), .. } => patch_frame(file, cap),
        Command::Patch { sub: Some(PatchCmd::VerifyUp { a, x }), .. } => {
            let cert = verify_patch_up(&frame(a)?, &frame(x)?, cap).map_err(err)?;
            let note = (!cert.uniqueness_checked).then_some("existence verified, uniqueness skipped");
            Ok((json!({ "certificate": cert, "note": note }), vec![]))
        }
        Command::Patch { .. } => Err("patch needs a frame file or `verify-up A X`".into()),
        Command::Scott(c) => scott_cmd(c, cap),
        Command::Suite { name } => {
            let results = suite::run(name, cap)
                .ok_or_else(|| format!("unknown suite `{name}`; groups: {}", suite::GROUPS.join(", ")))?;
            for r in &results {
                eprintln!("[{:?}] {:>2} {} ({:.0} ms)", r.status, r.id, r.name, r.elapsed_ms);
            }
            let w = results
                .iter()
                .filter(|r| r.violated())
                .map(|r| json!({ "criterion": r.id, "witness": r.witness, "within_budget": r.within_budget }))
                .collect();
            Ok((to_json(&results), w))
        }
    }
}

fn operation(cmd: &Command) -> String {
    match cmd {
        Command::Validate { .. } => "validate".into(),
        Command::Show { .. } => "show".into(),
        Command::Dot { .. } => "dot".into(),
        Command::Frame(FrameCmd::Check { .. }) => "frame check".into(),
        Command::Frame(FrameCmd::Points { .. }) => "frame points".into(),
        Command::Frame(FrameCmd::Classes { .. }) => "frame classes".into(),
        Command::Nuclei(NucleiCmd::List { .. }) => "nuclei list".into(),
        Command::Nuclei(NucleiCmd::Check { .. }) => "nuclei check".into(),
        Command::Spectrum { .. } => "spectrum".into(),
        Command::Duality(_) => "duality check".into(),
        Command::Patch { sub: Some(_), .. } => "patch verify-up".into(),
        Command::Patch { .. } => "patch".into(),
        Command::Scott(ScottCmd::Frame { .. }) => "scott frame".into(),
        Command::Scott(ScottCmd::Points { .. }) => "scott points".into(),
        Command::Scott(ScottCmd::Sharp { .. }) => "scott sharp".into(),
        Command::Scott(ScottCmd::Verify { .. }) => "scott verify".into(),
        Command::Suite { name } => format!("suite {name}"),
    }
}

fn inputs(cmd: &Command) -> Vec<&Path> {
    match cmd {
        Command::Validate { file, .. }
        | Command::Show { file, .. }
        | Command::Dot { file, .. }
        | Command::Spectrum { file }
        | Command::Duality(DualityCmd::Check { file })
        | Command::Patch { file: Some(file), .. } => vec![file],
        Command::Frame(FrameCmd::Check { file } | FrameCmd::Points { file } | FrameCmd::Classes { file })
        | Command::Nuclei(NucleiCmd::List { file } | NucleiCmd::Check { file, .. })
        | Command::Scott(
            ScottCmd::Frame { file } | ScottCmd::Points { file } | ScottCmd::Sharp { file } | ScottCmd::Verify { file },
        ) => vec![file],
        Command::Patch { sub: Some(PatchCmd::VerifyUp { a, x }), .. } => vec![a, x],
        Command::Patch { .. } | Command::Suite { .. } => vec![],
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut bytes: Vec<Vec<u8>> = inputs(&cli.command)
        .iter()
        .map(|p| std::fs::read(p).unwrap_or_default())
        .collect();
    if let Command::Nuclei(NucleiCmd::Check { table, .. }) = &cli.command {
        bytes.push(table.clone().into_bytes());
    }
    let digest = input_digest(&bytes);
    let mut report = match run(&cli) {
        Ok((result, witnesses)) => Report::new(operation(&cli.command), digest, result, witnesses),
        Err(msg) => {
            eprintln!("error: {msg}");
            Report::new(operation(&cli.command), digest, Value::Null, vec![json!(msg)])
        }
    };
    if matches!(cli.command, Command::Scott(_)) {
        report = report.with_note(FINITE_COLLAPSE_NOTE);
    }
    if cli.timing {
        report.timing_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    // a closed pipe is not our failure
    let _ = writeln!(std::io::stdout().lock(), "{}", report.to_json());
    if report.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
