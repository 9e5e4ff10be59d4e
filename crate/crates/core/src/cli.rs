//! Command-line front end for the `lensurg` binary.
//!
//! Exit status is 0 on success whatever the verdict, 1 on invalid input and
//! 2 on an internal inconsistency (two rules disagreeing). Rationals are
//! written as `num/den` in every output format.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::arith::{fmt_rational, parse_rational};
use crate::obstruct::{self, ObstructionVerdict, SurgeryReport, SweepRow};
use crate::otwist;
use crate::planar::{self, CrossingProfile};
use crate::tightbook;
use crate::{ContactSurgeryDiagram, Error, LensSpace, PlanarMonodromy, Rational};

#[derive(Debug, Parser)]
#[command(name = "lensurg", version, about = "Exact invariants and obstructions for Legendrian surgeries between lens spaces")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lens space data.
    #[command(subcommand)]
    Lens(LensCommand),
    /// Tight structures on L(P,Q) from the chain of unknots.
    Tight(LensArgs),
    /// d3 and related invariants of a contact surgery diagram.
    D3 {
        #[arg(long, value_name = "FILE")]
        diagram: PathBuf,
    },
    /// Obstructions to Legendrian surgery from L(P1,Q1) to L(P2,Q2). Use P = 1 for S^3.
    #[command(subcommand)]
    Obstruct(ObstructCommand),
    /// Crossing profile and b2 bound of a planar monodromy.
    PlanarBound {
        #[arg(long, value_name = "FILE")]
        monodromy: PathBuf,
    },
    /// Knot-scope verdicts for every pair with 2 <= p <= N, as CSV.
    Sweep {
        #[arg(long, value_name = "N")]
        p_max: i64,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// d3 of a connected sum.
    D3Sum {
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        d1: Rational,
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        d2: Rational,
    },
    /// Connected sums and stabilizations taking tb to a surgery framing.
    #[command(allow_negative_numbers = true)]
    FramingPlan { tb: i64, target: i64 },
    /// Rotation numbers of a -P framed handle compatible with a target d3.
    RotSolve {
        p: i64,
        #[arg(allow_hyphen_values = true, value_parser = rational_arg)]
        target: Rational,
        bound: u64,
    },
}

#[derive(Debug, Subcommand)]
enum LensCommand {
    Info(LensArgs),
}

#[derive(Debug, Args)]
struct LensArgs {
    p: i64,
    q: i64,
}

#[derive(Debug, Subcommand)]
#[command(allow_negative_numbers = true)]
enum ObstructCommand {
    Knot(PairArgs),
    Link(PairArgs),
}

#[derive(Debug, Args)]
struct PairArgs {
    p1: i64,
    q1: i64,
    p2: i64,
    q2: i64,
}

fn rational_arg(s: &str) -> std::result::Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs the CLI on `argv` (program name first), writing reports to `out`
/// and diagnostics to stderr. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = e.print();
                    1
                }
            };
        }
    };
    match execute(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            2
        }
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Outcome {
    out.write_all(text.as_bytes())
        .map_err(|e| Failure::Internal(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Outcome {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    emit(out, &s)
}

pub fn parse_diagram(path: &Path) -> crate::Result<ContactSurgeryDiagram> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidDiagram(format!("{}: {e}", path.display())))?;
    ContactSurgeryDiagram::from_json(&text)
}

pub fn parse_monodromy(path: &Path) -> crate::Result<PlanarMonodromy> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::InvalidMonodromy(format!("{}: {e}", path.display())))?;
    PlanarMonodromy::from_json(&text)
}

fn fr(r: &Rational) -> String {
    fmt_rational(r)
}

fn fr_list(v: &[Rational]) -> Vec<String> {
    v.iter().map(fr).collect()
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Outcome {
    match &cli.command {
        Command::Lens(LensCommand::Info(a)) => lens_info(cli.json, a, out),
        Command::Tight(a) => tight(cli.json, a, out),
        Command::D3 { diagram } => d3(cli.json, diagram, out),
        Command::Obstruct(ObstructCommand::Knot(a)) => {
            let (l1, l2) = pair(a)?;
            report(cli.json, &obstruct::knot_report(&l1, &l2), out)
        }
        Command::Obstruct(ObstructCommand::Link(a)) => {
            let (l1, l2) = pair(a)?;
            report(cli.json, &obstruct::link_report(&l1, &l2), out)
        }
        Command::PlanarBound { monodromy } => planar_bound(cli.json, monodromy, out),
        Command::Sweep { p_max, out: path } => sweep(cli.json, *p_max, path, out),
        Command::D3Sum { d1, d2 } => {
            let s = fr(&otwist::connected_sum_d3(d1, d2));
            if cli.json {
                emit_json(out, &json!({ "d1": fr(d1), "d2": fr(d2), "d3": s }))
            } else {
                emit(out, &format!("{s}\n"))
            }
        }
        Command::FramingPlan { tb, target } => {
            let plan = otwist::plan_framing_adjustment(*tb, *target);
            if cli.json {
                emit_json(
                    out,
                    &json!({
                        "tb": tb,
                        "target_framing": target,
                        "connect_sums": plan.connect_sums,
                        "stabilizations": plan.stabilizations,
                    }),
                )
            } else {
                emit(
                    out,
                    &format!(
                        "connect_sums: {}\nstabilizations: {}\n",
                        plan.connect_sums, plan.stabilizations
                    ),
                )
            }
        }
        Command::RotSolve { p, target, bound } => {
            let sols = otwist::source_d3_solver(*p, target, *bound)?;
            if cli.json {
                let rows: Vec<Value> = sols
                    .iter()
                    .map(|(rot, d)| json!({ "rot": rot, "source_d3": fr(d) }))
                    .collect();
                emit_json(
                    out,
                    &json!({ "p": p, "target_d3": fr(target), "rot_bound": bound, "solutions": rows }),
                )
            } else if sols.is_empty() {
                emit(out, "no solutions\n")
            } else {
                let text: String = sols
                    .iter()
                    .map(|(rot, d)| format!("rot = {rot}, source d3 = {}\n", fr(d)))
                    .collect();
                emit(out, &text)
            }
        }
    }
}

fn pair(a: &PairArgs) -> std::result::Result<(LensSpace, LensSpace), Failure> {
    Ok((
        LensSpace::from_params(a.p1, a.q1)?,
        LensSpace::from_params(a.p2, a.q2)?,
    ))
}

fn lens_info(as_json: bool, a: &LensArgs, out: &mut dyn Write) -> Outcome {
    let l = LensSpace::new(a.p, a.q)?;
    let cf = l.neg_cf().expect("p >= 2");
    let coeffs: Vec<String> = cf.coeffs().iter().map(|c| c.to_string()).collect();
    let structures = tightbook::enumerate_tight(&l)?;
    let count = tightbook::count_tight(&l)?;
    let d3: Vec<Rational> = structures.iter().map(|s| s.d3.clone()).collect();
    let d_inv = l.d_invariants();
    let (partner, _) = l.cosmetic_partner();
    let self_linking: Vec<i64> = l.self_linking_values().into_iter().collect();
    if as_json {
        emit_json(
            out,
            &json!({
                "space": l.to_string(),
                "p": l.p(),
                "q": l.q(),
                "h1_order": l.h1_order(),
                "neg_cf": coeffs,
                "orientation_reverse": l.orientation_reverse().to_string(),
                "cosmetic_partner": partner.to_string(),
                "self_linking_values": self_linking,
                "tight_count": count,
                "d3": fr_list(&d3),
                "d_invariants": fr_list(d_inv.values()),
            }),
        )
    } else {
        let join = |v: Vec<String>| v.join(", ");
        emit(
            out,
            &format!(
                "space: {l}\nh1_order: {}\nneg_cf: [{}]\norientation_reverse: {}\ncosmetic_partner: {partner}\nself_linking_values: {}\ntight_count: {count}\nd3: {}\nd_invariants: {}\n",
                l.h1_order(),
                join(coeffs),
                l.orientation_reverse(),
                join(self_linking.iter().map(|x| x.to_string()).collect()),
                join(fr_list(&d3)),
                join(fr_list(d_inv.values())),
            ),
        )
    }
}

fn tight(as_json: bool, a: &LensArgs, out: &mut dyn Write) -> Outcome {
    let l = LensSpace::new(a.p, a.q)?;
    let structures = tightbook::enumerate_tight(&l)?;
    let groups = tightbook::indistinguishable_groups(&structures);
    if as_json {
        let rows: Vec<Value> = structures
            .iter()
            .map(|s| {
                let rep: Vec<String> =
                    s.spin_c.representative().iter().map(|x| x.to_string()).collect();
                json!({ "rots": s.rots, "d3": fr(&s.d3), "spin_c": rep })
            })
            .collect();
        emit_json(
            out,
            &json!({
                "space": l.to_string(),
                "tight_count": structures.len(),
                "structures": rows,
                "indistinguishable": groups,
            }),
        )
    } else {
        let mut text = format!("space: {l}\ntight_count: {}\n", structures.len());
        for (i, s) in structures.iter().enumerate() {
            let rots: Vec<String> = s.rots.iter().map(|r| r.to_string()).collect();
            text.push_str(&format!("{i}: rots ({}) d3 {}\n", rots.join(", "), fr(&s.d3)));
        }
        for g in groups {
            let ids: Vec<String> = g.iter().map(|i| i.to_string()).collect();
            text.push_str(&format!("indistinguishable by d3 and spin-c: {}\n", ids.join(", ")));
        }
        emit(out, &text)
    }
}

fn d3(as_json: bool, path: &Path, out: &mut dyn Write) -> Outcome {
    let diagram = parse_diagram(path)?;
    let inv = diagram.invariants()?;
    if as_json {
        emit_json(
            out,
            &json!({
                "components": diagram.len(),
                "plus_one_surgeries": diagram.plus_count(),
                "euler_char": inv.euler_char,
                "signature": inv.signature,
                "h1_order": inv.h1_order.to_string(),
                "c1_square": fr(&inv.c1_square),
                "d3": fr(&inv.d3),
            }),
        )
    } else {
        emit(out, &format!("{}\n", fr(&inv.d3)))
    }
}

fn verdict_json(v: &ObstructionVerdict) -> Value {
    json!({
        "rule": v.rule.id(),
        "verdict": v.verdict.to_string(),
        "scope": v.scope.to_string(),
        "details": v.details,
        "witness": v.witness,
    })
}

fn report(as_json: bool, r: &SurgeryReport, out: &mut dyn Write) -> Outcome {
    if r.is_contradictory() {
        return Err(Failure::Internal(format!(
            "rules disagree on {} -> {}",
            r.source, r.target
        )));
    }
    let combined = r.combined();
    if as_json {
        let rows: Vec<Value> = r.verdicts.iter().map(verdict_json).collect();
        emit_json(
            out,
            &json!({
                "source": r.source.to_string(),
                "target": r.target.to_string(),
                "components": r.components.to_string(),
                "verdict": combined.to_string(),
                "rules": rows,
            }),
        )
    } else {
        let mut text = format!(
            "{} -> {} ({}): {combined}\n",
            r.source, r.target, r.components
        );
        for v in &r.verdicts {
            text.push_str(&format!(
                "  {}: {} [{}]\n    {}\n",
                v.rule, v.verdict, v.scope, v.details
            ));
            if let Some(w) = &v.witness {
                text.push_str(&format!("    witness: {w}\n"));
            }
        }
        emit(out, &text)
    }
}

fn profile_json(p: &CrossingProfile) -> Value {
    let views: Vec<Value> = p
        .views
        .iter()
        .map(|v| {
            let linking: Vec<Value> = v
                .linking
                .iter()
                .map(|(&(a, b), &l)| json!([a, b, l]))
                .collect();
            json!({ "view": v.view, "crossing_number": v.crossing_number, "linking": linking })
        })
        .collect();
    Value::Array(views)
}

fn planar_bound(as_json: bool, path: &Path, out: &mut dyn Write) -> Outcome {
    let f = parse_monodromy(path)?;
    let profile = planar::crossing_profile(&f);
    let necessary = planar::positive_factorization_necessary(&f);
    let bound = planar::b2_bound(&f);
    if as_json {
        let (b, reason) = match &bound {
            Ok(b) => (json!(b), Value::Null),
            Err(e) => (Value::Null, json!(e.to_string())),
        };
        emit_json(
            out,
            &json!({
                "holes": f.holes(),
                "twists": f.twists().len(),
                "crossing_numbers": profile.crossing_numbers(),
                "views": profile_json(&profile),
                "positive_factorization_necessary": necessary,
                "b2_bound": b,
                "no_bound_reason": reason,
            }),
        )
    } else {
        let cr: Vec<String> = profile.crossing_numbers().iter().map(|c| c.to_string()).collect();
        let b = match &bound {
            Ok(b) => b.to_string(),
            Err(e) => format!("none ({e})"),
        };
        emit(
            out,
            &format!(
                "holes: {}\ncrossing_numbers: {}\npositive_factorization_necessary: {necessary}\nb2_bound: {b}\n",
                f.holes(),
                cr.join(", ")
            ),
        )
    }
}

/// Writes sweep rows as CSV with header `p1,q1,p2,q2,rule,verdict,trace`.
pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], w: W) -> csv::Result<()> {
    let mut wtr = csv::Writer::from_writer(w);
    wtr.write_record(["p1", "q1", "p2", "q2", "rule", "verdict", "trace"])?;
    for r in rows {
        wtr.write_record([
            r.p1.to_string(),
            r.q1.to_string(),
            r.p2.to_string(),
            r.q2.to_string(),
            r.rule.id().to_string(),
            r.verdict.to_string(),
            r.trace.clone(),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

fn sweep(as_json: bool, p_max: i64, path: &Path, out: &mut dyn Write) -> Outcome {
    if p_max < 2 {
        return Err(Failure::Input(format!("--p-max must be >= 2, got {p_max}")));
    }
    let reports = obstruct::sweep_reports(p_max);
    if let Some(r) = reports.iter().find(|r| r.is_contradictory()) {
        return Err(Failure::Internal(format!(
            "rules disagree on {} -> {}",
            r.source, r.target
        )));
    }
    let mut tally = [0usize; 3];
    for r in &reports {
        match r.combined() {
            obstruct::Verdict::Obstructed => tally[0] += 1,
            obstruct::Verdict::Possible => tally[1] += 1,
            _ => tally[2] += 1,
        }
    }
    let rows = obstruct::rows_of(reports);
    let file = fs::File::create(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    write_sweep_csv(&rows, std::io::BufWriter::new(file))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    if as_json {
        emit_json(
            out,
            &json!({
                "p_max": p_max,
                "rows": rows.len(),
                "out": path.display().to_string(),
                "obstructed": tally[0],
                "possible": tally[1],
                "inconclusive": tally[2],
            }),
        )
    } else {
        emit(
            out,
            &format!(
                "wrote {} rows to {}\npairs: {} obstructed, {} possible, {} inconclusive\n",
                rows.len(),
                path.display(),
                tally[0],
                tally[1],
                tally[2]
            ),
        )
    }
}
