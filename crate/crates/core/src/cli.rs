//! The `quatcube` command line.
//!
//! Exit codes: 0 on success, 1 when the answer is negative (not
//! representable, not a member, a failed check), 2 on usage or parse errors.

use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::decompose::{decompose, member_cube_subgroup, Decomposition};
use crate::error::Error;
use crate::expr::{parse_quaternion, parse_ring};
use crate::quat::{sum_of_cubes, Quaternion, RingParams};
use crate::residue::{classify_case, CaseKind};
use crate::search::{
    check_all_lemmas, lemma_residue_check, min_cubes_search_with, three_cube_residues_mod9,
    two_cube_obstruction, Exec, LemmaReport, SearchConfig,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "quatcube", version, about = "Sums of cubes in the quaternion rings LQ_{a,b}")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct RingArgs {
    /// Ring parameters as A,B (i² = -A, j² = -B).
    #[arg(long, value_parser = ring_arg)]
    ring: RingParams,

    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct QuatArgs {
    #[command(flatten)]
    ring: RingArgs,

    /// Quaternion such as "3 + 3i" or "-k + 2j".
    #[arg(allow_hyphen_values = true)]
    quaternion: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Write an element as a sum of at most 6 (or 5) cubes.
    Decompose(QuatArgs),
    /// Cube an element.
    Cube(QuatArgs),
    /// Test membership in the additive group generated by cubes.
    Member(QuatArgs),
    /// Search a coefficient box for a shortest sum of cubes.
    Search {
        #[command(flatten)]
        args: QuatArgs,
        #[arg(long, default_value_t = 3)]
        max_cubes: usize,
        #[arg(long, default_value_t = 10)]
        bound: u32,
        #[arg(long, default_value_t = 6)]
        outer_bound: u32,
        /// Run single-threaded.
        #[arg(long)]
        serial: bool,
    },
    /// Certify the congruence recipes and pair tables over residue classes.
    CheckLemmas {
        /// Restrict to a single pair a mod 6, b mod 6.
        #[arg(long, value_parser = residues_arg)]
        residues: Option<(u8, u8)>,
        #[arg(long)]
        json: bool,
    },
    /// Verify the modular obstruction behind the lower bound for a ring.
    CheckLowerBounds(RingArgs),
}

fn ring_arg(s: &str) -> Result<RingParams, String> {
    parse_ring(s).map_err(|e| e.to_string())
}

fn residues_arg(s: &str) -> Result<(u8, u8), String> {
    let parse = |v: &str| v.trim().parse::<u8>().ok().filter(|&r| r < 6);
    s.split_once(',')
        .and_then(|(a, b)| Some((parse(a)?, parse(b)?)))
        .ok_or_else(|| format!("expected a6,b6 with both in 0..=5, got '{s}'"))
}

fn coeff_strings(q: &Quaternion) -> [String; 4] {
    q.coeffs().clone().map(|c| c.to_string())
}

fn ring_strings(r: &RingParams) -> [String; 2] {
    [r.a().to_string(), r.b().to_string()]
}

#[derive(Serialize)]
pub struct DecompositionJson {
    pub ring: [String; 2],
    pub target: [String; 4],
    pub case: &'static str,
    pub roots: Vec<[String; 4]>,
    pub count: usize,
    pub verified: bool,
}

impl DecompositionJson {
    /// Verifies `dec` while building the record.
    pub fn new(dec: &Decomposition) -> Self {
        DecompositionJson {
            ring: ring_strings(dec.target.params()),
            target: coeff_strings(&dec.target),
            case: dec.case.kind.name(),
            roots: dec.roots.iter().map(coeff_strings).collect(),
            count: dec.count(),
            verified: dec.verify(),
        }
    }
}

#[derive(Serialize)]
pub struct SearchJson {
    pub ring: [String; 2],
    pub target: [String; 4],
    pub max_cubes: usize,
    pub bound: u32,
    pub outer_bound: u32,
    pub found: bool,
    pub count: Option<usize>,
    pub roots: Vec<[String; 4]>,
    pub verified: bool,
}

impl SearchJson {
    pub fn new(target: &Quaternion, cfg: &SearchConfig, roots: Option<&[Quaternion]>) -> Self {
        let verified = roots.is_some_and(|r| {
            r.len() <= cfg.max_cubes
                && sum_of_cubes(target.params(), r).is_ok_and(|s| s == *target)
        });
        SearchJson {
            ring: ring_strings(target.params()),
            target: coeff_strings(target),
            max_cubes: cfg.max_cubes,
            bound: cfg.coeff_bound,
            outer_bound: cfg.outer_bound,
            found: roots.is_some(),
            count: roots.map(<[_]>::len),
            roots: roots.unwrap_or_default().iter().map(coeff_strings).collect(),
            verified,
        }
    }
}

#[derive(Serialize)]
pub struct LowerBoundJson {
    pub ring: [String; 2],
    pub case: &'static str,
    pub target: [String; 4],
    /// The target is shown not to be a sum of this many cubes.
    pub cubes: usize,
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub three_cube_residues_mod9: Option<Vec<u8>>,
}

/// The lower-bound witness for a ring: `4` is not a sum of 3 cubes when
/// `3 | a` and `3 | b`; otherwise `3 + 3i` is not a sum of 2 cubes.
pub fn lower_bound_check(params: &RingParams) -> LowerBoundJson {
    let case = classify_case(params).kind;
    if case == CaseKind::Case3 {
        let residues: Vec<u8> = three_cube_residues_mod9().into_iter().collect();
        let target = Quaternion::scalar(params, 4);
        LowerBoundJson {
            ring: ring_strings(params),
            case: case.name(),
            target: coeff_strings(&target),
            cubes: 3,
            obstructed: !residues.contains(&4),
            three_cube_residues_mod9: Some(residues),
        }
    } else {
        let target = Quaternion::from_coeffs(params, [3, 3, 0, 0]);
        LowerBoundJson {
            ring: ring_strings(params),
            case: case.name(),
            target: coeff_strings(&target),
            cubes: 2,
            obstructed: two_cube_obstruction(params, &target),
            three_cube_residues_mod9: None,
        }
    }
}

#[derive(Serialize)]
struct LemmaJson {
    a6: u8,
    b6: u8,
    case: &'static str,
    swapped: bool,
    classes_checked: usize,
    targets_checked: usize,
    failures: Vec<String>,
}

impl LemmaJson {
    fn new((a6, b6): (u8, u8), r: &LemmaReport) -> Self {
        LemmaJson {
            a6,
            b6,
            case: r.case.kind.name(),
            swapped: r.case.swapped,
            classes_checked: r.classes_checked,
            targets_checked: r.targets_checked,
            failures: r.failures.iter().map(ToString::to_string).collect(),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("serializable")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let informational = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if informational {
                let _ = write!(out, "{e}");
                return EXIT_OK;
            }
            let _ = write!(err, "{e}");
            return EXIT_USAGE;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Parse { .. } | Error::InvalidParams { .. } | Error::InvalidResidues { .. } => EXIT_USAGE,
                _ => EXIT_NEGATIVE,
            }
        }
    }
}

fn parse_target(args: &QuatArgs) -> Result<Quaternion, Error> {
    parse_quaternion(&args.quaternion, &args.ring.ring)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, Error> {
    let mut emit = |s: String| {
        let _ = writeln!(out, "{s}");
    };
    match command {
        Command::Decompose(args) => {
            let alpha = parse_target(&args)?;
            let dec = decompose(&alpha)?;
            let record = DecompositionJson::new(&dec);
            if args.ring.json {
                emit(to_json(&record));
            } else {
                emit(format!("ring: LQ_{{{}}} ({})", alpha.params(), dec.case));
                emit(format!("target: {alpha}"));
                emit(format!("roots ({}):", dec.count()));
                for r in &dec.roots {
                    emit(format!("  {r}"));
                }
                emit(format!("verified: {}", record.verified));
            }
            Ok(if record.verified { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Cube(args) => {
            let x = parse_target(&args)?;
            let cube = x.cube();
            if args.ring.json {
                #[derive(Serialize)]
                struct CubeJson {
                    ring: [String; 2],
                    input: [String; 4],
                    cube: [String; 4],
                }
                emit(to_json(&CubeJson {
                    ring: ring_strings(x.params()),
                    input: coeff_strings(&x),
                    cube: coeff_strings(&cube),
                }));
            } else {
                emit(format!("({x})^3 = {cube}"));
            }
            Ok(EXIT_OK)
        }
        Command::Member(args) => {
            let alpha = parse_target(&args)?;
            let member = member_cube_subgroup(&alpha);
            let case = classify_case(alpha.params());
            if args.ring.json {
                #[derive(Serialize)]
                struct MemberJson {
                    ring: [String; 2],
                    target: [String; 4],
                    case: &'static str,
                    member: bool,
                }
                emit(to_json(&MemberJson {
                    ring: ring_strings(alpha.params()),
                    target: coeff_strings(&alpha),
                    case: case.kind.name(),
                    member,
                }));
            } else {
                emit(member.to_string());
            }
            Ok(if member { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Search {
            args,
            max_cubes,
            bound,
            outer_bound,
            serial,
        } => {
            let alpha = parse_target(&args)?;
            let cfg = SearchConfig::new(max_cubes, bound, outer_bound).map_err(|e| Error::Parse {
                pos: 0,
                msg: e.to_string(),
            })?;
            let exec = if serial { Exec::Serial } else { Exec::Parallel };
            let roots = min_cubes_search_with(&alpha, &cfg, exec);
            let record = SearchJson::new(&alpha, &cfg, roots.as_deref());
            if args.ring.json {
                emit(to_json(&record));
            } else if let Some(roots) = &roots {
                emit(format!("{alpha} is a sum of {} cubes:", roots.len()));
                for r in roots {
                    emit(format!("  {r}"));
                }
                emit(format!("verified: {}", record.verified));
            } else {
                emit(format!(
                    "no representation of {alpha} with at most {max_cubes} cubes and |coefficients| <= {bound} (outer bound {outer_bound})"
                ));
            }
            Ok(if roots.is_none() || record.verified { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::CheckLemmas { residues, json } => {
            let reports = match residues {
                Some((a6, b6)) => vec![((a6, b6), lemma_residue_check(a6, b6)?)],
                None => check_all_lemmas(),
            };
            let all_passed = reports.iter().all(|(_, r)| r.passed());
            if json {
                let rows: Vec<LemmaJson> = reports.iter().map(|(p, r)| LemmaJson::new(*p, r)).collect();
                emit(to_json(&rows));
            } else {
                for ((a6, b6), r) in &reports {
                    emit(format!(
                        "a = {a6}, b = {b6} mod 6: {}, {} classes, {} targets, {}",
                        r.case,
                        r.classes_checked,
                        r.targets_checked,
                        if r.passed() { "ok".to_string() } else { format!("{} FAILURES", r.failures.len()) }
                    ));
                    for f in &r.failures {
                        emit(format!("  failed: {f}"));
                    }
                }
                emit(if all_passed { "all lemma checks passed".into() } else { "lemma checks FAILED".into() });
            }
            Ok(if all_passed { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::CheckLowerBounds(args) => {
            let report = lower_bound_check(&args.ring);
            if args.json {
                emit(to_json(&report));
            } else {
                let what = if report.cubes == 3 { "4" } else { "3+3i" };
                if report.obstructed {
                    emit(format!("{what} not a sum of {} cubes: mod-9 obstruction", report.cubes));
                } else {
                    emit(format!("{what}: no mod-9 obstruction to {} cubes found", report.cubes));
                }
            }
            Ok(if report.obstructed { EXIT_OK } else { EXIT_NEGATIVE })
        }
    }
}
