//! Command-line front end.
//!
//! Every subcommand writes a JSON run report (to `--report`, or standard
//! output) and exits with 0 on success, 1 when a verification fails, and 2
//! on a usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use prismatoid::exact::{format_rational, rat, rational_circle_point};
use prismatoid::gallery::{gallery, gallery_bases, GALLERY_NAMES};
use prismatoid::geodesic::{central_fan, incidence_pattern, is_sixteen_arrow_pattern, reduce_pattern, transversality_check, two_cycle_check};
use prismatoid::hull::{polar_dual, validate_facets, VPolytope};
use prismatoid::io::{cached_facet_enumeration, digest_hex, emit_hfile, emit_vfile, parse_vfile, RunReport};
use prismatoid::oracle::minimal_pattern_oracle;
use prismatoid::prismatoid::{check_width_bound_report, width, Prismatoid, WidthReport};
use prismatoid::render::{diagram, svg_write};
use prismatoid::tower::{build_tower, published_schedule, replay_tower_exact, PerturbationSchedule, Side, TowerState};
use prismatoid::twisted::{
    default_alpha, default_alpha_small, default_tol, lattice_points, predicted_facets, two_copies_prismatoid, twisted_vertices,
    verify_twisted_hull, Parity,
};
use prismatoid::Error;

#[derive(Parser)]
#[command(name = "prismatoid", version, about = "Exact computations with prismatoids of large width")]
struct Cli {
    /// Maximum number of worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the JSON run report here instead of standard output.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// A V-file.
    #[arg(long = "in", conflicts_with = "gallery")]
    input: Option<PathBuf>,
    /// A gallery polytope (q40, q32, q28, q20, nonhirsch20).
    #[arg(long)]
    gallery: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Facet enumeration of a V-file or gallery polytope.
    Hull {
        #[command(flatten)]
        source: Source,
        /// Write the facets as an H-file.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Check every facet's ridges against the others.
        #[arg(long)]
        validate: bool,
    },
    /// Width of a prismatoid.
    Width {
        #[command(flatten)]
        source: Source,
        /// Coordinate whose values ±1 mark the bases (default: detect).
        #[arg(long)]
        axis: Option<usize>,
        /// Fail unless the width equals this value.
        #[arg(long)]
        expect_width: Option<usize>,
    },
    /// Writes a gallery polytope as a V-file.
    Gallery {
        /// Gallery name; omit with --list.
        name: Option<String>,
        #[arg(long)]
        list: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Incidence pattern of the pair of maps of a prismatoid's bases.
    Pattern {
        /// Gallery prismatoid whose bases are used.
        #[arg(long, conflicts_with_all = ["plus", "minus"])]
        gallery: Option<String>,
        /// V-file of the top base (4-dimensional, origin interior).
        #[arg(long, requires = "minus")]
        plus: Option<PathBuf>,
        /// V-file of the bottom base.
        #[arg(long, requires = "plus")]
        minus: Option<PathBuf>,
        /// Write the reduced pattern as an arrow list.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also check that the two maps are transversal.
        #[arg(long)]
        transversality: bool,
    },
    /// Widening steps by one-point suspension and perturbation.
    Tower {
        /// Starting gallery prismatoid.
        #[arg(long, default_value = "q20")]
        start: String,
        /// Number of steps (automatic mode).
        #[arg(long)]
        steps: Option<usize>,
        /// Replay the published step schedule verbatim instead of choosing
        /// steps (individual steps need not widen).
        #[arg(long)]
        published: bool,
        /// Directory for per-step V-files and the trace.
        #[arg(long)]
        out: PathBuf,
        /// Continue from the last step stored in --out.
        #[arg(long)]
        resume: bool,
        /// Largest perturbation tried, as a power of ten.
        #[arg(long, default_value_t = -5, allow_hyphen_values = true)]
        initial_exponent: i32,
        /// Maximum number of perturbation sizes tried per step.
        #[arg(long, default_value_t = 6)]
        max_retries: usize,
    },
    /// The twisted product of two polygons and its two-copies prismatoid.
    Twisted {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        q: usize,
        /// Angle alpha as a fraction of a turn (numerator).
        #[arg(long, requires = "alpha_den")]
        alpha_num: Option<i64>,
        #[arg(long, requires = "alpha_num")]
        alpha_den: Option<i64>,
        /// Compare the exact hull with the predicted facets.
        #[arg(long)]
        verify: bool,
        /// Build the two-copies prismatoid and report its width.
        #[arg(long)]
        two_copies: bool,
        /// Directory for the V-file and the predicted facet list.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG picture of geodesic maps on the flat torus.
    Render {
        /// V-files of 4-polytopes; the map of each is drawn (one or two).
        #[arg(long = "in", num_args = 1..=2)]
        input: Vec<PathBuf>,
        /// Draw the maps of a gallery prismatoid's bases.
        #[arg(long, conflicts_with = "input")]
        gallery: Option<String>,
        #[arg(long)]
        out: PathBuf,
        /// Side length of the torus in the picture's units.
        #[arg(long, default_value_t = 1.0)]
        size: f64,
    },
    /// Exhaustive search for the smallest width-forcing incidence patterns.
    Oracle {
        #[arg(long, default_value_t = 8)]
        max_nodes: usize,
    },
}

/// Outcome of a subcommand: a verification failure is not an error.
type Outcome = Result<RunReport, Failure>;

enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidArgument(_) | Error::Parse { .. } | Error::UnknownGallery(_) | Error::Io(_) => Failure::Usage(e.to_string()),
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Loads the polytope named by `--in` or `--gallery`, with its digest.
fn load(source: &Source) -> Result<(String, VPolytope, String), Failure> {
    match (&source.input, &source.gallery) {
        (Some(path), _) => {
            let text = read_text(path)?;
            let (name, p) = parse_vfile(&text)?;
            Ok((name, p, digest_hex(text.as_bytes())))
        }
        (None, Some(g)) => {
            let p = gallery(g)?;
            let digest = digest_hex(emit_vfile(g, &p).as_bytes());
            Ok((g.clone(), p, digest))
        }
        (None, None) => Err(Failure::Usage("give --in FILE or --gallery NAME".into())),
    }
}

fn record_width(report: &mut RunReport, w: &WidthReport) {
    report.n = Some(w.n);
    report.dim = Some(w.d);
    report.facets = Some(w.facets);
    report.width = Some(w.width);
    report.excesses.insert("prismatoid_excess".into(), format_rational(&w.prismatoid_excess));
    report.excesses.insert("hirsch_excess".into(), format_rational(&w.hirsch_excess_of_dual));
}

fn ms(t: Instant) -> u128 {
    t.elapsed().as_millis()
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Hull { source, out, validate } => {
            let mut report = RunReport::new("hull");
            let (name, p, digest) = load(&source)?;
            report.input_digest = Some(digest);
            let t = Instant::now();
            let fl = cached_facet_enumeration(&p)?;
            report.elapsed_ms.insert("facets".into(), ms(t));
            report.n = Some(p.n());
            report.dim = Some(fl.polytope_dim);
            report.facets = Some(fl.len());
            if validate {
                let t = Instant::now();
                let v = validate_facets(&fl);
                report.elapsed_ms.insert("validate".into(), ms(t));
                report.checks.insert("valid".into(), v.pass);
                report.details = json!({ "failures": v.failures });
            }
            if let Some(path) = out {
                let planes: Vec<_> = fl.facets.iter().map(|f| f.plane.clone()).collect();
                write_text(&path, &emit_hfile(&name, &planes))?;
            }
            Ok(report)
        }
        Command::Width { source, axis, expect_width } => {
            let mut report = RunReport::new("width");
            let (_, p, digest) = load(&source)?;
            report.input_digest = Some(digest);
            let t = Instant::now();
            let prismatoid = match axis {
                Some(a) => Prismatoid::from_body(p, a)?,
                None => Prismatoid::detect(p)?,
            };
            report.elapsed_ms.insert("facets".into(), ms(t));
            let t = Instant::now();
            let w = width(&prismatoid)?;
            report.elapsed_ms.insert("width".into(), ms(t));
            record_width(&mut report, &w);
            if w.d == 5 {
                report.checks.insert("width_bound".into(), check_width_bound_report(&w)?);
            }
            if let Some(e) = expect_width {
                report.checks.insert("expected_width".into(), w.width == e);
            }
            report.details = serde_json::to_value(&w).expect("serializable");
            Ok(report)
        }
        Command::Gallery { name, list, out } => {
            let mut report = RunReport::new("gallery");
            if list {
                report.details = json!({ "names": GALLERY_NAMES });
                return Ok(report);
            }
            let name = name.ok_or_else(|| Failure::Usage("give a gallery name or --list".into()))?;
            let p = gallery(&name)?;
            let text = emit_vfile(&name, &p);
            report.input_digest = Some(digest_hex(text.as_bytes()));
            report.n = Some(p.n());
            report.dim = Some(p.dim);
            match out {
                Some(path) => write_text(&path, &text)?,
                None => return Err(Failure::Usage("give --out FILE for the V-file".into())),
            }
            Ok(report)
        }
        Command::Pattern { gallery: g, plus, minus, out, transversality } => {
            let mut report = RunReport::new("pattern");
            let (top, bottom) = match (g, plus, minus) {
                (Some(g), _, _) => gallery_bases(&g)?,
                (None, Some(a), Some(b)) => (parse_vfile(&read_text(&a)?)?.1, parse_vfile(&read_text(&b)?)?.1),
                _ => return Err(Failure::Usage("give --gallery NAME or both --plus and --minus".into())),
            };
            let t = Instant::now();
            let gp = central_fan(&polar_dual(&top)?)?;
            let gm = central_fan(&polar_dual(&bottom)?)?;
            report.elapsed_ms.insert("maps".into(), ms(t));
            let t = Instant::now();
            let full = incidence_pattern(&gp, &gm)?;
            let reduced = reduce_pattern(&full);
            report.elapsed_ms.insert("pattern".into(), ms(t));
            let no_two_cycles = !two_cycle_check(&reduced);
            report.checks.insert("no_two_cycles".into(), no_two_cycles);
            let mut details = json!({
                "cones_plus": gp.cone_count(),
                "cones_minus": gm.cone_count(),
                "arrows": full.arrows.len(),
                "reduced_nodes_plus": reduced.nodes_plus.len(),
                "reduced_nodes_minus": reduced.nodes_minus.len(),
                "reduced_arrows": reduced.arrows.len(),
                "sixteen_arrow_pattern": is_sixteen_arrow_pattern(&reduced),
                "boundary_hits": full.boundary_hits,
            });
            if transversality {
                let t = Instant::now();
                let tr = transversality_check(&gp, &gm);
                report.elapsed_ms.insert("transversality".into(), ms(t));
                report.checks.insert("transversal".into(), tr.transversal);
                details["transversality"] = serde_json::to_value(&tr).expect("serializable");
            }
            report.details = details;
            if let Some(path) = out {
                write_text(&path, &reduced.to_lines())?;
            }
            Ok(report)
        }
        Command::Tower { start, steps, published, out, resume, initial_exponent, max_retries } => {
            tower(&start, steps, published, &out, resume, PerturbationSchedule { initial_exponent, shrink_factor: 1, max_retries })
        }
        Command::Twisted { d, q, alpha_num, alpha_den, verify, two_copies, out } => {
            let mut report = RunReport::new("twisted");
            let tol = default_tol();
            let alpha = match (alpha_num, alpha_den) {
                (Some(a), Some(b)) if b > 0 && a > 0 && 4 * a < b => rational_circle_point(&rat(a, b), &rat(1, 1_000_000))?,
                (Some(_), Some(_)) => return Err(Failure::Usage("alpha must lie strictly between 0 and 1/4 turn".into())),
                _ if two_copies => default_alpha_small(),
                _ => default_alpha(),
            };
            let lattice = lattice_points(d, q, Parity::Plus)?;
            let v = twisted_vertices(&lattice, &alpha, &tol)?;
            let predicted = predicted_facets(d, q)?;
            report.n = Some(v.n());
            report.dim = Some(4);
            let mut details = json!({ "m": lattice.m, "predicted_facets": predicted.len() });
            if let Some(dir) = &out {
                std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("{}: {e}", dir.display())))?;
                write_text(&dir.join(format!("twisted_{d}_{q}.ext")), &emit_vfile(&format!("twisted product d={d} q={q}"), &v))?;
                let lines: Vec<String> = predicted
                    .iter()
                    .map(|f| format!("{:?}: {}", f.kind, f.vertices.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")))
                    .collect();
                write_text(&dir.join(format!("twisted_{d}_{q}.facets")), &(lines.join("\n") + "\n"))?;
            }
            if verify {
                let t = Instant::now();
                let r = verify_twisted_hull(d, q, &alpha, &tol)?;
                report.elapsed_ms.insert("verify".into(), ms(t));
                report.facets = Some(r.computed_facets);
                report.checks.insert("hull_matches_prediction".into(), r.pass);
                details["verify"] = serde_json::to_value(&r).expect("serializable");
            }
            if two_copies {
                let t = Instant::now();
                let tc = two_copies_prismatoid(d, q, &alpha, &tol, 6)?;
                let w = width(&tc.prismatoid)?;
                report.elapsed_ms.insert("two_copies".into(), ms(t));
                record_width(&mut report, &w);
                report.checks.insert("width_is_4_plus_q_over_2".into(), w.width == 4 + q / 2);
                details["two_copies"] = json!({ "width": serde_json::to_value(&w).expect("serializable"), "alpha_attempts": tc.attempts });
                if let Some(dir) = &out {
                    write_text(&dir.join(format!("two_copies_{d}_{q}.ext")), &emit_vfile(&format!("two copies d={d} q={q}"), &tc.prismatoid.body))?;
                }
            }
            report.details = details;
            Ok(report)
        }
        Command::Render { input, gallery: g, out, size } => {
            let mut report = RunReport::new("render");
            let polytopes: Vec<VPolytope> = match g {
                Some(g) => {
                    let (top, bottom) = gallery_bases(&g)?;
                    vec![polar_dual(&top)?, polar_dual(&bottom)?]
                }
                None if !input.is_empty() => {
                    input.iter().map(|p| Ok(parse_vfile(&read_text(p)?)?.1)).collect::<Result<_, Failure>>()?
                }
                None => return Err(Failure::Usage("give --in FILE (once or twice) or --gallery NAME".into())),
            };
            let maps = polytopes.iter().map(central_fan).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<_> = maps.iter().collect();
            let d = diagram(&refs, size);
            svg_write(&d, &out)?;
            let layers: Vec<_> = d
                .layers
                .iter()
                .map(|l| json!({ "tag": l.tag, "markers": l.markers.len(), "segments": l.polylines.len(), "warnings": l.warnings }))
                .collect();
            report.details = json!({ "layers": layers });
            Ok(report)
        }
        Command::Oracle { max_nodes } => {
            let mut report = RunReport::new("oracle");
            let t = Instant::now();
            let s = minimal_pattern_oracle(max_nodes)?;
            report.elapsed_ms.insert("search".into(), ms(t));
            report.details = serde_json::to_value(&s).expect("serializable");
            Ok(report)
        }
    }
}

/// The `tower` subcommand: step files `step_XX.ext`, `trace.json` and
/// `state.json` (what `--resume` needs) in `out`.
fn tower(start: &str, steps: Option<usize>, published: bool, out: &Path, resume: bool, schedule: PerturbationSchedule) -> Outcome {
    let mut report = RunReport::new("tower");
    std::fs::create_dir_all(out).map_err(|e| Failure::Usage(format!("{}: {e}", out.display())))?;
    let (mut state, done, mut trace) = if resume {
        let saved: serde_json::Value = serde_json::from_str(&read_text(&out.join("state.json"))?)
            .map_err(|e| Failure::Usage(format!("state.json: {e}")))?;
        let done = saved["steps_done"].as_u64().ok_or_else(|| Failure::Usage("state.json lacks steps_done".into()))? as usize;
        let axis = saved["axis"].as_u64().ok_or_else(|| Failure::Usage("state.json lacks axis".into()))? as usize;
        let (_, body) = parse_vfile(&read_text(&out.join(format!("step_{done:02}.ext")))?)?;
        let mut st = TowerState::new(Prismatoid::from_body(body, axis)?, axis)?;
        st.perturbed_side = match saved["perturbed_side"].as_str() {
            Some("Top") => Some(Side::Top),
            Some("Bottom") => Some(Side::Bottom),
            _ => None,
        };
        let trace: Vec<serde_json::Value> = serde_json::from_str(&read_text(&out.join("trace.json"))?).unwrap_or_default();
        (st, done, trace)
    } else {
        // The 5-dimensional gallery prismatoids carry their base indicator
        // in the last coordinate.
        let axis = 4;
        let st = TowerState::new(Prismatoid::from_body(gallery(start)?, axis)?, axis)?;
        write_text(&out.join("step_00.ext"), &emit_vfile(start, &st.prismatoid.body))?;
        (st, 0, Vec::new())
    };
    let t = Instant::now();
    let start_width = state.width;
    let records = if published {
        let rest: Vec<_> = published_schedule().into_iter().skip(done).collect();
        let rest = match steps {
            Some(k) => rest.into_iter().take(k).collect(),
            None => rest,
        };
        let (s, recs) = replay_tower_exact(state, &rest)?;
        state = s;
        recs
    } else {
        let (s, recs) = build_tower(state, steps.unwrap_or(1), &schedule)?;
        state = s;
        recs
    };
    report.elapsed_ms.insert("steps".into(), ms(t));
    let last = done + records.len();
    trace.extend(records.iter().map(|r| serde_json::to_value(r).expect("serializable")));
    write_text(&out.join(format!("step_{last:02}.ext")), &emit_vfile(&format!("step {last}"), &state.prismatoid.body))?;
    write_text(&out.join("trace.json"), &serde_json::to_string_pretty(&trace).expect("serializable"))?;
    let saved = json!({
        "steps_done": last,
        "axis": state.axis,
        "perturbed_side": state.perturbed_side.map(|s| format!("{s:?}")),
        "width": state.width,
    });
    write_text(&out.join("state.json"), &serde_json::to_string_pretty(&saved).expect("serializable"))?;
    let p = &state.prismatoid;
    report.n = Some(p.n());
    report.dim = Some(p.dim());
    report.facets = Some(p.facets.len());
    report.width = Some(state.width);
    if published {
        // The published schedule is only known to widen in total.
        report.checks.insert("width_grew".into(), state.width > start_width || records.is_empty());
        if last == published_schedule().len() {
            report.checks.insert("violates_hirsch".into(), state.width > p.n() - p.dim());
        }
    } else {
        let mut prev = start_width;
        report.checks.insert("width_grew_each_step".into(), records.iter().all(|r| std::mem::replace(&mut prev, r.width) < r.width));
    }
    report.details = json!({ "steps": trace });
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global() {
            eprintln!("warning: could not size the thread pool: {e}");
        }
    }
    let (report, code) = match run(cli.command) {
        Ok(r) => {
            let code = if r.passed() { 0 } else { 1 };
            (r, code)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            let mut r = RunReport::new("error");
            r.details = json!({ "usage_error": msg });
            (r, 2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            let mut r = RunReport::new("error");
            r.details = json!({ "error": msg });
            (r, 1)
        }
    };
    let text = report.to_json();
    match &cli.report {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    ExitCode::from(code)
}
