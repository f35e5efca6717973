use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use gosset::cache;
use gosset::catalog::skew_a_lines;
use gosset::error::{Error, Result};
use gosset::inscribed::{
    self, build_3cube, build_4cube, centers, classify, classify_a3, count_inscribed,
    enumerate_inscribed, fano_structure, A3Dichotomy, CorneredTag, SimplexSampler,
};
use gosset::polytope::{verify_subpolytope_table, DegreeGraph, GossetPolytope};
use gosset::steiner::{build_steiner, verify_design, SteinerName};
use gosset::verify;

/// Exact enumeration and verification for line configurations in del Pezzo
/// surfaces and Gosset polytopes. Machine-readable output goes to stdout,
/// progress to stderr.
#[derive(Parser)]
#[command(name = "gosset", version, about)]
struct Cli {
    /// Worker threads (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    /// Catalog cache directory (overrides GOSSET_CACHE_DIR; default ./cache)
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,

    /// Seed for the deterministic samplers
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a class catalog, cache it as JSON-lines, and print its count
    Catalog {
        /// lines | roots | rulings | exceptional
        #[arg(long)]
        kind: String,
        #[arg(long)]
        r: usize,
    },
    /// Degree-graph statistics over the line catalog
    Graph {
        #[arg(long)]
        r: usize,
        /// intersection value defining edges (0..3)
        #[arg(long, default_value_t = 0)]
        degree: i64,
    },
    /// Enumerate inscribed b-degree n-simplexes (JSON lines) or their
    /// distinct-center count
    Inscribed {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        b: i64,
        /// classify each simplex (cornered/uncornered)
        #[arg(long)]
        classify: bool,
        /// print only the number of distinct centers
        #[arg(long)]
        centers_only: bool,
        /// print at most this many simplexes
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Sample A_6^8(1) simplexes and print their Fano structures
    Fano {
        #[arg(long, default_value_t = 8)]
        r: usize,
        #[arg(long, default_value_t = 7)]
        sample: usize,
    },
    /// Construct inscribed hypercubes from sampled seeds
    Cubes {
        #[arg(long)]
        r: usize,
        /// 3 (r = 7 or 8) or 4 (r = 8)
        #[arg(long)]
        dim: usize,
        #[arg(long, default_value_t = 5)]
        sample: usize,
    },
    /// Enumerate skew a-lines (witness cliques and sums)
    Skew {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
        #[arg(long)]
        limit: Option<u64>,
    },
    /// Build a named Steiner system and print it as JSON
    Steiner {
        /// SA2S7 | SA2S8 | SB3S6 | SB3S8 | SC4S7
        #[arg(long)]
        name: String,
        /// also run the design verifier and print its report
        #[arg(long)]
        verify: bool,
    },
    /// Run verification suites; exits 0 iff every check passes
    Verify {
        /// tables | theorems | steiner | all
        #[arg(long, default_value = "all")]
        scope: String,
        /// restrict table checks to one rank
        #[arg(long)]
        r: Option<usize>,
        /// sample size for per-instance theorem checks
        #[arg(long, default_value_t = 200)]
        sample: usize,
        /// suppress progress output
        #[arg(long)]
        quiet: bool,
    },
    /// Export reports (subpolytope table as CSV)
    Export {
        /// subpolytopes
        #[arg(long)]
        what: String,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn main() {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match run(cli) {
        Ok(code) => std::process::exit(code),
        // a downstream pipe closing early (e.g. `gosset ... | head`) is not
        // an error for a streaming producer
        Err(Error::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => {
            std::process::exit(0)
        }
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}

fn run(cli: Cli) -> Result<i32> {
    let out = std::io::stdout();
    let mut out = std::io::BufWriter::new(out.lock());
    match cli.command {
        Command::Catalog { kind, r } => {
            let kind = cache::kind_from_str(&kind)?;
            let dir = cache::resolve_cache_dir(cli.cache_dir.as_deref());
            let (catalog, wrote) = cache::load_or_build(&dir, kind, r)?;
            eprintln!(
                "{} {}",
                if wrote { "wrote" } else { "verified cache" },
                cache::catalog_path(&dir, kind, r).display()
            );
            writeln!(out, "count: {}", catalog.len())?;
        }
        Command::Graph { r, degree } => {
            if !(0..=3).contains(&degree) {
                return Err(Error::Domain(format!("degree {degree} out of range 0..=3")));
            }
            let lines = gosset::catalog::enumerate_lines(r)?;
            let g = DegreeGraph::build(&lines, degree);
            let row = serde_json::json!({
                "r": r,
                "degree": degree,
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "regular": g.regular_degree(),
            });
            writeln!(out, "{row}")?;
        }
        Command::Inscribed {
            r,
            n,
            b,
            classify: do_classify,
            centers_only,
            limit,
        } => {
            let pt = GossetPolytope::new(r)?;
            if centers_only {
                let c = centers(&pt, n, b)?;
                writeln!(out, "{}", c.len())?;
            } else {
                let cap = limit.unwrap_or(u64::MAX);
                let mut printed = 0u64;
                let mut err = None;
                enumerate_inscribed(&pt, n, b, |s| {
                    if printed >= cap || err.is_some() {
                        return;
                    }
                    printed += 1;
                    if let Err(e) = emit_simplex(&mut out, &pt, &s, do_classify) {
                        err = Some(e);
                    }
                })?;
                if let Some(e) = err {
                    return Err(e);
                }
                if limit.is_some() {
                    eprintln!(
                        "printed {printed} of {} simplexes",
                        count_inscribed(&pt, n, b)?
                    );
                }
            }
        }
        Command::Fano { r, sample } => {
            if r != 8 {
                return Err(Error::Domain("Fano structures live in 4_21 (r = 8)".into()));
            }
            let pt = GossetPolytope::new(8)?;
            let mut sampler = SimplexSampler::new(cli.seed);
            for _ in 0..sample {
                let s = sampler.sample(&pt, 6, 1)?;
                let fano = fano_structure(&pt, &s)?;
                writeln!(out, "{}", serde_json::to_string(&fano)?)?;
            }
        }
        Command::Cubes { r, dim, sample } => {
            let pt = GossetPolytope::new(r)?;
            let mut sampler = SimplexSampler::new(cli.seed);
            for _ in 0..sample {
                let cube = match dim {
                    3 => {
                        let seed = sampler.sample(&pt, 2, 1)?;
                        build_3cube(&pt, &seed)?
                    }
                    4 => {
                        if r != 8 {
                            return Err(Error::Domain("4-cubes live in 4_21 (r = 8)".into()));
                        }
                        loop {
                            let s = sampler.sample(&pt, 3, 1)?;
                            if matches!(classify_a3(&pt, &s)?, A3Dichotomy::Cornered { .. }) {
                                break build_4cube(&pt, &s)?;
                            }
                        }
                    }
                    _ => {
                        return Err(Error::Domain(format!(
                            "no inscribed {dim}-cubes; the maximal cube dimension is 2 for \
                             r<=6, 3 for r=7, 4 for r=8"
                        )))
                    }
                };
                writeln!(out, "{}", serde_json::to_string(&cube)?)?;
            }
        }
        Command::Skew { r, a, limit } => {
            let lines = gosset::catalog::enumerate_lines(r)?;
            let skew = skew_a_lines(&lines, a)?;
            let cap = limit.unwrap_or(u64::MAX);
            for (i, s) in skew.iter().enumerate() {
                if i as u64 >= cap {
                    break;
                }
                let row = serde_json::json!({"witness": s.witness, "sum": s.sum});
                writeln!(out, "{row}")?;
            }
            eprintln!("{} skew {a}-lines", skew.len());
        }
        Command::Steiner {
            name,
            verify: do_verify,
        } => {
            let name = SteinerName::parse(&name)?;
            let pt = GossetPolytope::new(name.parameters().0)?;
            let sys = build_steiner(&pt, name)?;
            writeln!(out, "{}", serde_json::to_string(&sys)?)?;
            if do_verify {
                let report = verify_design(&pt, &sys)?;
                writeln!(out, "{}", serde_json::to_string(&report)?)?;
                if !report.pass {
                    out.flush()?;
                    return Ok(1);
                }
            }
        }
        Command::Verify {
            scope,
            r,
            sample,
            quiet,
        } => {
            let checks = run_verify(&scope, r, sample, cli.seed, quiet)?;
            let mut pass = true;
            for c in &checks {
                pass &= c.pass;
                writeln!(out, "{}", serde_json::to_string(c)?)?;
            }
            writeln!(
                out,
                "{}",
                serde_json::json!({"summary": if pass { "pass" } else { "fail" },
                                   "checks": checks.len(),
                                   "failed": checks.iter().filter(|c| !c.pass).count()})
            )?;
            out.flush()?;
            return Ok(if pass { 0 } else { 1 });
        }
        Command::Export {
            what,
            r,
            out: out_path,
        } => {
            if what != "subpolytopes" {
                return Err(Error::Domain(format!("unknown export target {what}")));
            }
            let pt = GossetPolytope::new(r)?;
            let report = verify_subpolytope_table(&pt)?;
            let csv = report.to_csv();
            match out_path {
                Some(p) => std::fs::write(p, csv)?,
                None => write!(out, "{csv}")?,
            }
        }
    }
    out.flush()?;
    Ok(0)
}

fn emit_simplex(
    out: &mut impl Write,
    pt: &GossetPolytope,
    s: &inscribed::InscribedSimplex,
    do_classify: bool,
) -> Result<()> {
    let mut row = serde_json::json!({
        "vertices": s.vertices(),
        "degree": s.degree(),
        "center": s.center(),
    });
    if do_classify {
        let obj = row.as_object_mut().unwrap();
        if s.rank() == 8 && s.dim() == 3 && s.degree() == 1 {
            match classify_a3(pt, s)? {
                A3Dichotomy::Cornered { line, .. } => {
                    obj.insert("tag".into(), "cornered".into());
                    obj.insert("corner_line".into(), line.into());
                }
                A3Dichotomy::Uncornered { companion } => {
                    obj.insert("tag".into(), "uncornered".into());
                    obj.insert("companion".into(), serde_json::to_value(companion)?);
                }
            }
        } else {
            match classify(pt, s) {
                CorneredTag::Cornered { corner_lines } => {
                    obj.insert("tag".into(), "cornered".into());
                    obj.insert("corner_line".into(), corner_lines[0].into());
                }
                CorneredTag::Uncornered => {
                    obj.insert("tag".into(), "uncornered".into());
                }
            }
        }
    }
    writeln!(out, "{row}")?;
    Ok(())
}

fn run_verify(
    scope: &str,
    r: Option<usize>,
    sample: usize,
    seed: u64,
    quiet: bool,
) -> Result<Vec<verify::Check>> {
    let mut checks = Vec::new();
    let tables = |checks: &mut Vec<verify::Check>| -> Result<()> {
        checks.extend(verify::verify_catalogs(quiet)?);
        let ranks: Vec<usize> = match r {
            Some(rank) => vec![rank],
            None => vec![4, 5, 6, 7, 8],
        };
        for rank in &ranks {
            let pt = GossetPolytope::new(*rank)?;
            checks.extend(verify::verify_table(&pt, quiet)?);
        }
        if r.is_none() || r == Some(8) {
            let pt8 = GossetPolytope::new(8)?;
            checks.extend(verify::verify_center_tables(&pt8, quiet)?);
            checks.extend(verify::verify_norm_counts(quiet)?);
        }
        Ok(())
    };
    match scope {
        "tables" => tables(&mut checks)?,
        "theorems" => {
            let pt8 = GossetPolytope::new(8)?;
            checks.extend(verify::verify_theorems(&pt8, sample, seed, quiet)?);
            checks.extend(verify::verify_skew_uniqueness(&pt8, quiet)?);
        }
        "steiner" => checks.extend(verify::verify_steiner(quiet)?),
        "all" => {
            tables(&mut checks)?;
            let pt8 = GossetPolytope::new(8)?;
            checks.extend(verify::verify_theorems(&pt8, sample, seed, quiet)?);
            checks.extend(verify::verify_skew_uniqueness(&pt8, quiet)?);
            checks.extend(verify::verify_steiner(quiet)?);
        }
        other => {
            return Err(Error::Domain(format!(
                "unknown scope {other}; expected tables|theorems|steiner|all"
            )))
        }
    }
    Ok(checks)
}
