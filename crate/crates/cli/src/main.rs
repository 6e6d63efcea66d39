//! Experiment harness: verification suites, configuration checks, modulus
//! computations, dessin refinement and loop search, with JSON reports and
//! optional SVG output.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 input or usage error.

mod report;
mod suites;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use report::{CheckEntry, RunConfig, VerificationReport};
use schottkylab::annulus::{
    find_separating_circle, modulus_numeric, AnnulusSpec, NumericParams, SeparatingCircle,
    COVER_ORIENTATION_NOTE,
};
use schottkylab::belyi::TripleFile;
use schottkylab::dessin::{
    find_disjoint_loops_with_refinement, Dessin, DessinExport, LoopSearchOutcome, SearchLimits,
};
use schottkylab::schottky::ConfigurationFile;
use schottkylab::svg;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "schottkylab", version, about = "Circle-geometry and Belyi/dessin experiments")]
struct Cli {
    /// Geometric tolerance for predicates and clearances.
    #[arg(long, global = true, env = "SCHOTTKYLAB_TOLERANCE", default_value_t = 1e-9)]
    tolerance: f64,
    /// Grid step of the numeric modulus solver.
    #[arg(long, global = true, env = "SCHOTTKYLAB_GRID_H", default_value_t = 0.02)]
    grid_h: f64,
    /// Sample points per boundary component.
    #[arg(long, global = true, env = "SCHOTTKYLAB_BOUNDARY_SAMPLES", default_value_t = 512)]
    boundary_samples: usize,
    /// Word-length cap for enumeration and limit sampling.
    #[arg(long, global = true, env = "SCHOTTKYLAB_MAX_WORD_LEN", default_value_t = 3)]
    max_word_len: usize,
    /// Refinement budget for the loop search.
    #[arg(long, global = true, env = "SCHOTTKYLAB_REFINE_MAX", default_value_t = 3)]
    refine_max: usize,
    /// Random seed for the verification suites.
    #[arg(long, global = true, env = "SCHOTTKYLAB_SEED", default_value_t = 42)]
    seed: u64,
    /// Output directory for reports and figures.
    #[arg(long, global = true, env = "SCHOTTKYLAB_OUT", default_value = "out")]
    out: PathBuf,
    /// Also write SVG figures where available.
    #[arg(long, global = true, env = "SCHOTTKYLAB_SVG")]
    svg: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a circle-pairing configuration, enumerate words, sample the
    /// limit set.
    Schottky {
        /// JSON configuration: {"genus": g, "pairings": [{"c", "c_prime", "theta"}, …]}.
        #[arg(long)]
        config: PathBuf,
    },
    /// Modulus computations and the separating-circle search for an annulus
    /// descriptor.
    Annulus {
        /// JSON descriptor: {"round": …} | {"ring": …} | {"mapped": …}.
        #[arg(long)]
        descriptor: PathBuf,
    },
    /// Validate a monodromy triple, build its triangulation, optionally
    /// refine and search for disjoint covering loops.
    Dessin {
        /// JSON monodromy file: {"degree", "s1", "sw", "sw2"}.
        #[arg(long)]
        monodromy: PathBuf,
        /// Apply this many refinement stages before reporting.
        #[arg(long, default_value_t = 0)]
        refine: usize,
        /// Search for genus-many pairwise disjoint covering loops.
        #[arg(long)]
        find_loops: bool,
    },
    /// Run the seeded property suites.
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Copy, Clone, ValueEnum)]
enum Suite {
    Moebius,
    Schottky,
    Lemmas,
    Belyi,
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !(cli.tolerance > 0.0) || !(cli.grid_h > 0.0) || cli.boundary_samples == 0 {
        eprintln!("error: tolerance, grid step, and boundary sample count must be positive");
        return ExitCode::from(2);
    }
    let config = RunConfig {
        tolerance: cli.tolerance,
        grid_h: cli.grid_h,
        boundary_samples: cli.boundary_samples,
        max_word_len: cli.max_word_len,
        refine_max: cli.refine_max,
        seed: cli.seed,
        out_dir: cli.out.clone(),
    };
    let result = match &cli.command {
        Command::Schottky { config: path } => cmd_schottky(&config, path, cli.svg),
        Command::Annulus { descriptor } => cmd_annulus(&config, descriptor),
        Command::Dessin { monodromy, refine, find_loops } => {
            cmd_dessin(&config, monodromy, *refine, *find_loops, cli.svg)
        }
        Command::Verify { suite } => cmd_verify(&config, *suite),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> anyhow::Result<T> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
}

fn cmd_schottky(config: &RunConfig, path: &PathBuf, write_svg: bool) -> anyhow::Result<bool> {
    let file: ConfigurationFile = read_json(path)?;
    let cfg = file.build().context("configuration file is structurally invalid")?;
    let classical = cfg.verify_classical();

    let mut checks = vec![
        CheckEntry::new("2g circles pairwise disjoint", classical.circles_disjoint).note(
            match classical.first_overlap {
                Some((i, j)) => format!("first violation: circles {i} and {j}"),
                None => "no overlaps".to_string(),
            },
        ),
        CheckEntry::new(
            "each pairing map carries its circle onto its partner",
            classical.pairing_maps_circles.iter().all(|&b| b),
        ),
        CheckEntry::new(
            "each pairing maps exterior onto interior",
            classical.orientation.iter().all(|&b| b),
        ),
        CheckEntry::new(
            "pairing maps move the fundamental domain off itself (derived)",
            classical.domain_moves_off_itself,
        ),
    ];

    if classical.passed {
        let words = cfg.enumerate_words(config.max_word_len, 1_000_000)?;
        let sample = cfg.limit_points(config.max_word_len, 1_000_000)?;
        checks.push(
            CheckEntry::new("word enumeration", true)
                .measured(words.len() as f64)
                .note(format!("reduced words up to length {}", config.max_word_len)),
        );
        checks.push(
            CheckEntry::new("limit sample", true)
                .measured(sample.points.len() as f64)
                .note(format!("points at word length {}", config.max_word_len)),
        );
        if write_svg {
            std::fs::create_dir_all(&config.out_dir)?;
            let path = config.out_dir.join("schottky.svg");
            std::fs::write(&path, svg::schottky_svg(&cfg, Some(&sample)))?;
            println!("wrote {}", path.display());
        }
    }

    let report = VerificationReport::new("schottky", config.seed, checks);
    report.print_lines();
    let written = report.write_to(&config.out_dir)?;
    println!("wrote {}", written.display());
    Ok(report.passed())
}

fn cmd_annulus(config: &RunConfig, path: &PathBuf) -> anyhow::Result<bool> {
    let spec: AnnulusSpec = read_json(path)?;
    let params = NumericParams { grid_h: config.grid_h, boundary_samples: config.boundary_samples };
    spec.validated(&params).context("annulus descriptor is invalid")?;

    let mut checks = Vec::new();
    let closed_form = match &spec {
        AnnulusSpec::Mapped { .. } => None,
        other => Some(other.modulus(&params)?),
    };
    let sampling = spec.sample_boundaries(params.boundary_samples)?;
    let numeric = modulus_numeric(&sampling, params.grid_h)?;
    match closed_form {
        Some(exact) => {
            let rel = (numeric - exact).abs() / exact;
            checks.push(
                CheckEntry::new("closed-form vs numeric modulus agreement", rel < 0.01)
                    .measured(rel)
                    .tolerance(0.01)
                    .note(format!("closed form {exact:.9}, numeric {numeric:.9}")),
            );
        }
        None => {
            checks.push(
                CheckEntry::new("numeric modulus", true)
                    .measured(numeric)
                    .note("no closed form for mapped annuli"),
            );
        }
    }
    let modulus = closed_form.unwrap_or(numeric);
    match find_separating_circle(&sampling, config.tolerance) {
        SeparatingCircle::Found { circle, clearance } => {
            let above = modulus > 0.5;
            checks.push(
                CheckEntry::new("separating circle found and verified", clearance > config.tolerance)
                    .measured(clearance)
                    .tolerance(config.tolerance)
                    .note(format!(
                        "center ({:.6}, {:.6}), radius {:.6}; modulus {modulus:.6} ({})",
                        circle.center().unwrap().re,
                        circle.center().unwrap().im,
                        circle.radius().unwrap(),
                        if above { "above the 1/2 threshold" } else { "below 1/2, found anyway" },
                    )),
            );
        }
        SeparatingCircle::NotFound { best_clearance } => {
            // guaranteed to exist only above modulus 1/2
            let acceptable = modulus <= 0.5;
            let mut entry = CheckEntry::new("separating circle", acceptable).note(format!(
                "not found; modulus {modulus:.6} is {} the guarantee threshold 1/2",
                if acceptable { "below" } else { "ABOVE" }
            ));
            if best_clearance.is_finite() {
                entry = entry.measured(best_clearance);
            }
            checks.push(entry);
        }
    }
    checks.push(CheckEntry::new("covering-modulus orientation", true).note(COVER_ORIENTATION_NOTE));

    let report = VerificationReport::new("annulus", config.seed, checks);
    report.print_lines();
    let written = report.write_to(&config.out_dir)?;
    println!("wrote {}", written.display());
    Ok(report.passed())
}

fn cmd_dessin(
    config: &RunConfig,
    path: &PathBuf,
    refine: usize,
    find_loops: bool,
    write_svg: bool,
) -> anyhow::Result<bool> {
    let file: TripleFile = read_json(path)?;
    let triple = match file.build() {
        Ok(t) => t,
        Err(e) => {
            // invalid triples are a diagnosed failure, not a usage error
            let checks = vec![CheckEntry::new("monodromy triple is valid", false).note(e.to_string())];
            let report = VerificationReport::new("dessin", config.seed, checks);
            report.print_lines();
            let written = report.write_to(&config.out_dir)?;
            println!("wrote {}", written.display());
            return Ok(false);
        }
    };

    let mut checks = vec![CheckEntry::new("monodromy triple is valid", true)
        .note(format!("degree {}, genus {}", triple.degree(), triple.genus()))];

    let mut current = triple.clone();
    for stage in 1..=refine {
        current = current.refine()?;
        let genus_ok = current.genus() == triple.genus();
        let degree_ok = current.degree() == triple.degree() * 6usize.pow(stage as u32);
        checks.push(
            CheckEntry::new(&format!("refinement stage {stage}"), genus_ok && degree_ok).note(
                format!(
                    "degree {}, genus {}; cycle types {:?} / {:?} / {:?}",
                    current.degree(),
                    current.genus(),
                    current.s1().cycle_type(),
                    current.sw().cycle_type(),
                    current.sw2().cycle_type()
                ),
            ),
        );
    }

    let dessin = Dessin::build(&current);
    let euler_ok = dessin.euler_characteristic() == 2 - 2 * current.genus() as i64;
    checks.push(
        CheckEntry::new("triangulation Euler identity V − E + F = 2 − 2g", euler_ok).note(format!(
            "V = {}, E = {}, F = {}",
            dessin.vertex_count(),
            dessin.edge_count(),
            dessin.face_count()
        )),
    );

    std::fs::create_dir_all(&config.out_dir)?;
    let export_path = config.out_dir.join("dessin.json");
    std::fs::write(&export_path, serde_json::to_string_pretty(&DessinExport::from_dessin(&dessin))?)?;
    println!("wrote {}", export_path.display());

    let mut found_loops = None;
    if find_loops {
        let outcome = find_disjoint_loops_with_refinement(
            &current,
            current.genus(),
            config.refine_max,
            &SearchLimits::default(),
        )?;
        match outcome {
            LoopSearchOutcome::Found { stages, dessin: loop_dessin, loops } => {
                let verified = loops.verify(&loop_dessin).is_ok();
                checks.push(
                    CheckEntry::new("disjoint independent covering loops", verified).note(format!(
                        "{} loops after {stages} refinement stages (degree {})",
                        loops.loops.len(),
                        loop_dessin.degree()
                    )),
                );
                let loops_path = config.out_dir.join("loops.json");
                std::fs::write(&loops_path, serde_json::to_string_pretty(&loops)?)?;
                println!("wrote {}", loops_path.display());
                found_loops = Some((loop_dessin, loops));
            }
            LoopSearchOutcome::Exhausted { stages, final_degree } => {
                // honest exhaustion: reported, not a failure
                checks.push(CheckEntry::new("disjoint independent covering loops", true).note(
                    format!(
                        "exhausted after {stages} refinements (degree {final_degree}); \
                         raise --refine-max to keep searching"
                    ),
                ));
            }
        }
    }

    if write_svg {
        let (render_dessin, render_loops) = match &found_loops {
            Some((d, l)) => (d, Some(l)),
            None => (&dessin, None),
        };
        let path = config.out_dir.join("dessin.svg");
        std::fs::write(&path, svg::dessin_svg(render_dessin, render_loops))?;
        println!("wrote {}", path.display());
    }

    let report = VerificationReport::new("dessin", config.seed, checks);
    report.print_lines();
    let written = report.write_to(&config.out_dir)?;
    println!("wrote {}", written.display());
    Ok(report.passed())
}

fn cmd_verify(config: &RunConfig, suite: Suite) -> anyhow::Result<bool> {
    let selected: Vec<(&str, fn(u64) -> Vec<CheckEntry>)> = match suite {
        Suite::Moebius => vec![("moebius", suites::moebius_suite)],
        Suite::Schottky => vec![("schottky", suites::schottky_suite)],
        Suite::Lemmas => vec![("lemmas", suites::lemmas_suite)],
        Suite::Belyi => vec![("belyi", suites::belyi_suite)],
        Suite::All => vec![
            ("moebius", suites::moebius_suite),
            ("schottky", suites::schottky_suite),
            ("lemmas", suites::lemmas_suite),
            ("belyi", suites::belyi_suite),
        ],
    };
    let mut all_pass = true;
    let mut combined: Vec<CheckEntry> = Vec::new();
    for (name, run) in &selected {
        let checks = run(config.seed);
        let report = VerificationReport::new(name, config.seed, checks);
        report.print_lines();
        let written = report.write_to(&config.out_dir)?;
        println!("wrote {}", written.display());
        all_pass &= report.passed();
        if matches!(suite, Suite::All) {
            combined.extend(report.checks);
        }
    }
    if matches!(suite, Suite::All) {
        let report = VerificationReport::new("all", config.seed, combined);
        let written = report.write_to(&config.out_dir)?;
        println!("wrote {}", written.display());
    }
    Ok(all_pass)
}
