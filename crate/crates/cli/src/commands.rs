use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::ValueEnum;
use strsel::exact::{self, Budget, CenterResult};
use strsel::experiments;
use strsel::fpt::{self, ApproxOracle, ExactOracle, InflatingOracle};
use strsel::heuristics::{self, SearchConfig, StartStrategy};
use strsel::io::{self, StringsFile};
use strsel::reductions;
use strsel::rng;
use strsel::{anticoverage, coverage, hamming, Assignment, CmsInstance, Graph, Max2SatInstance};

use crate::record::{one_based, Record};
use crate::{
    Algo, Cli, Command, ExperimentCommand, Problem, ReduceCommand, SolveArgs, Start, VerifyCommand,
};

#[derive(Debug)]
enum CliError {
    /// Bad arguments, unreadable files, malformed input: exit 2.
    Usage(String),
    /// A solver broke its contract or an internal invariant: exit 1.
    Failed(String),
}

impl From<strsel::Error> for CliError {
    fn from(e: strsel::Error) -> Self {
        match e {
            strsel::Error::ContractViolation(_) | strsel::Error::Invariant(_) => {
                CliError::Failed(e.to_string())
            }
            _ => CliError::Usage(e.to_string()),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

struct Outcome {
    body: String,
    passed: bool,
    /// Body is a data file; timing goes in a comment line.
    raw: bool,
}

impl Outcome {
    fn record(rec: &Record, passed: bool) -> Self {
        Outcome {
            body: rec.to_string(),
            passed,
            raw: false,
        }
    }
}

pub fn run(cli: Cli) -> ExitCode {
    let start = Instant::now();
    match dispatch(cli.command) {
        Ok(out) => {
            print!("{}", out.body);
            if cli.timing {
                let ms = start.elapsed().as_secs_f64() * 1e3;
                if out.raw {
                    println!("c wall_ms={ms:.3}");
                } else {
                    println!("wall_ms={ms:.3}");
                }
            }
            if out.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(1)
        }
    }
}

fn dispatch(command: Command) -> CliResult<Outcome> {
    match command {
        Command::GenMax2sat { n, m, seed, output } => gen_max2sat(n, m, seed, output),
        Command::GenGraph {
            vertices,
            p,
            seed,
            output,
        } => gen_graph(vertices, p, seed, output),
        Command::Reduce(ReduceCommand::Sat2cms {
            file,
            c,
            seed,
            output,
        }) => reduce_sat2cms(&file, c, seed, &output),
        Command::Reduce(ReduceCommand::Dks2msfbc { file, k, output }) => {
            reduce_dks2msfbc(&file, k, &output)
        }
        Command::Solve(args) => solve(&args),
        Command::Verify(v) => verify(v),
        Command::Experiment(e) => experiment(e),
        Command::DecideCks { file, d, oracle } => decide_cks(&file, d, &oracle),
    }
}

fn seed_or_draw(seed: Option<u64>) -> u64 {
    seed.unwrap_or_else(rand::random)
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text)
        .map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
}

fn in_file<T>(path: &Path, r: strsel::Result<T>) -> CliResult<T> {
    r.map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn load_strings(path: &Path) -> CliResult<StringsFile> {
    in_file(path, io::parse_strings_instance(&read(path)?))
}

fn load_cnf(path: &Path) -> CliResult<Max2SatInstance> {
    in_file(path, io::parse_cnf(&read(path)?))
}

fn load_graph(path: &Path) -> CliResult<Graph> {
    in_file(path, io::parse_graph(&read(path)?))
}

fn emit_generated(
    text: String,
    seed: u64,
    output: Option<PathBuf>,
    describe: impl FnOnce(&mut Record),
) -> CliResult<Outcome> {
    match output {
        Some(path) => {
            write(&path, &text)?;
            let mut rec = Record::new();
            rec.field("output", path.display());
            describe(&mut rec);
            rec.field("seed", seed);
            Ok(Outcome::record(&rec, true))
        }
        None => Ok(Outcome {
            body: format!("c seed={seed}\n{text}"),
            passed: true,
            raw: true,
        }),
    }
}

fn gen_max2sat(
    n: usize,
    m: usize,
    seed: Option<u64>,
    output: Option<PathBuf>,
) -> CliResult<Outcome> {
    let seed = seed_or_draw(seed);
    let phi = Max2SatInstance::random(n, m, &mut rng::seeded(seed))?;
    emit_generated(io::write_cnf(&phi), seed, output, |rec| {
        rec.field("variables", n).field("clauses", m);
    })
}

fn gen_graph(v: usize, p: f64, seed: Option<u64>, output: Option<PathBuf>) -> CliResult<Outcome> {
    if !(0.0..=1.0).contains(&p) {
        return Err(CliError::Usage(format!("--p must lie in [0, 1], got {p}")));
    }
    let seed = seed_or_draw(seed);
    let graph = Graph::random(v, p, &mut rng::seeded(seed));
    emit_generated(io::write_graph(&graph), seed, output, |rec| {
        rec.field("vertices", v).field("edges", graph.edge_count());
    })
}

fn output_paths(input: &Path, dir: &Path, ext: &str) -> CliResult<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir)
        .map_err(|e| CliError::Usage(format!("cannot create {}: {e}", dir.display())))?;
    let stem = input
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".into());
    let inst = dir.join(format!("{stem}.{ext}"));
    let cert = dir.join(format!("{stem}.{ext}.cert"));
    Ok((inst, cert))
}

fn reduce_sat2cms(file: &Path, c: usize, seed: Option<u64>, dir: &Path) -> CliResult<Outcome> {
    let phi = load_cnf(file)?;
    let seed = seed_or_draw(seed);
    let (inst, mut cert) = reductions::reduce_max2sat_to_cms(&phi, c, seed)?;
    cert.source = file.display().to_string();
    let (inst_path, cert_path) = output_paths(file, dir, "cms")?;
    write(
        &inst_path,
        &io::write_strings_instance(&StringsFile::from(&inst)),
    )?;
    write(&cert_path, &io::write_certificate(&cert))?;
    let mut rec = Record::new();
    rec.field("instance", inst_path.display())
        .field("certificate", cert_path.display())
        .field("strings", inst.set().len())
        .field("length", inst.set().word_len())
        .field("d", inst.d())
        .field("c", c)
        .field("seed", seed);
    Ok(Outcome::record(&rec, true))
}

fn reduce_dks2msfbc(file: &Path, k: usize, dir: &Path) -> CliResult<Outcome> {
    let graph = load_graph(file)?;
    let (inst, mut cert) = reductions::reduce_dks_to_msfbc(&graph, k)?;
    cert.source = file.display().to_string();
    let (inst_path, cert_path) = output_paths(file, dir, "msfbc")?;
    write(
        &inst_path,
        &io::write_strings_instance(&StringsFile::from(&inst)),
    )?;
    write(&cert_path, &io::write_certificate(&cert))?;
    let mut rec = Record::new();
    rec.field("instance", inst_path.display())
        .field("certificate", cert_path.display())
        .field("strings", inst.set().len())
        .field("length", inst.set().word_len())
        .field("k", k);
    Ok(Outcome::record(&rec, true))
}

fn problem_name(p: Problem) -> &'static str {
    match p {
        Problem::Cms => "cms",
        Problem::Ffms => "ffms",
        Problem::Cks => "cks",
        Problem::Msfbc => "msfbc",
        Problem::Max2sat => "max2sat",
        Problem::Dks => "dks",
    }
}

fn unsupported(args: &SolveArgs) -> CliError {
    CliError::Usage(format!(
        "algorithm {} is not available for {}",
        args.algo
            .to_possible_value()
            .map_or_else(String::new, |v| v.get_name().to_string()),
        problem_name(args.problem)
    ))
}

fn search_config(args: &SolveArgs, seed: u64) -> SearchConfig {
    SearchConfig {
        seed,
        restarts: args.restarts,
        max_iterations: args.iterations,
        start: match args.start {
            Start::Input => StartStrategy::InputStrings,
            Start::Random => StartStrategy::Random,
            Start::Canonical => StartStrategy::Canonical,
        },
    }
}

fn recheck(rec: &mut Record, enabled: bool, ok: bool, what: String) -> CliResult<bool> {
    if !enabled {
        return Ok(true);
    }
    rec.field("recheck", if ok { "ok" } else { "failed" });
    if !ok {
        rec.detail(format!("# {what}"));
    }
    Ok(ok)
}

fn center_fields(rec: &mut Record, r: &CenterResult) {
    rec.field("value", r.value).field("center", &r.center);
}

fn solve(args: &SolveArgs) -> CliResult<Outcome> {
    let budget = Budget::default();
    let mut rec = Record::new();
    rec.field("problem", problem_name(args.problem));
    if args.k.is_some() && args.problem != Problem::Dks {
        return Err(CliError::Usage(
            "--k applies to dks only; other problems read it from the file".into(),
        ));
    }
    let passed = match args.problem {
        Problem::Cms | Problem::Ffms => {
            let file = load_strings(&args.file)?;
            let local = match args.algo {
                Algo::Exact => false,
                Algo::Local => true,
                _ => return Err(unsupported(args)),
            };
            rec.field("algorithm", if local { "local" } else { "exact" });
            let seed = seed_or_draw(args.seed);
            let cfg = search_config(args, seed);
            let (result, rescored) = if args.problem == Problem::Cms {
                let inst = in_file(&args.file, file.to_cms())?;
                let r = if local {
                    heuristics::local_search_cms(&inst, &cfg)?
                } else {
                    exact::solve_cms_exact(&inst, &budget)?
                };
                let s = coverage(&r.center, &inst)?;
                (r, s)
            } else {
                let inst = in_file(&args.file, file.to_ffms())?;
                let r = if local {
                    heuristics::local_search_ffms(&inst, &cfg)?
                } else {
                    exact::solve_ffms_exact(&inst, &budget)?
                };
                let s = anticoverage(&r.center, &inst)?;
                (r, s)
            };
            center_fields(&mut rec, &result);
            if local {
                rec.field("seed", seed);
            }
            recheck(
                &mut rec,
                args.recheck,
                rescored == result.value,
                format!("center re-scores to {rescored}"),
            )?
        }
        Problem::Cks => {
            if args.algo != Algo::Exact {
                return Err(unsupported(args));
            }
            rec.field("algorithm", "exact");
            let inst = in_file(&args.file, load_strings(&args.file)?.to_cks())?;
            let r = exact::solve_cks_exact(&inst, &budget)?;
            let subset = r.chosen_subset.clone().unwrap_or_default();
            center_fields(&mut rec, &r);
            rec.field("subset", one_based(&subset));
            let radius = subset
                .iter()
                .map(|&i| hamming(inst.set().get(i), &r.center))
                .collect::<strsel::Result<Vec<_>>>()?
                .into_iter()
                .max()
                .unwrap_or(0);
            recheck(
                &mut rec,
                args.recheck,
                subset.len() == inst.k() && radius == r.value,
                format!("subset of {} strings has radius {radius}", subset.len()),
            )?
        }
        Problem::Msfbc => {
            let inst = in_file(&args.file, load_strings(&args.file)?.to_msfbc())?;
            let (name, r) = match args.algo {
                Algo::Exact | Algo::Subsets => {
                    ("subsets", exact::solve_msfbc_subsets(&inst, &budget)?)
                }
                Algo::Columns => ("columns", exact::solve_msfbc_columns(&inst, &budget)?),
                Algo::Local => return Err(unsupported(args)),
            };
            rec.field("algorithm", name)
                .field("value", r.size())
                .field("subset", one_based(&r.indices))
                .field("bad_columns", r.bad_column_count);
            let bad = if r.indices.is_empty() {
                0
            } else {
                inst.bad_column_count(&r.indices)?
            };
            recheck(
                &mut rec,
                args.recheck,
                bad == r.bad_column_count && bad <= inst.k(),
                format!("subset has {bad} bad columns"),
            )?
        }
        Problem::Max2sat => {
            if args.algo != Algo::Exact {
                return Err(unsupported(args));
            }
            rec.field("algorithm", "exact");
            let phi = load_cnf(&args.file)?;
            let (x, value) = exact::solve_max2sat_exact(&phi, &budget)?;
            rec.field("value", value).field("assignment", &x);
            let sat = phi.satisfied_count(&x)?;
            recheck(
                &mut rec,
                args.recheck,
                sat == value,
                format!("assignment satisfies {sat}"),
            )?
        }
        Problem::Dks => {
            if args.algo != Algo::Exact {
                return Err(unsupported(args));
            }
            let k = args
                .k
                .ok_or_else(|| CliError::Usage("dks needs --k".into()))?;
            rec.field("algorithm", "exact");
            let graph = load_graph(&args.file)?;
            let (vertices, value) = exact::solve_dks_exact(&graph, k, &budget)?;
            rec.field("value", value)
                .field("vertices", one_based(&vertices));
            let induced = graph.induced_edge_count(&vertices);
            recheck(
                &mut rec,
                args.recheck,
                induced == value && vertices.len() == k,
                format!("{} vertices induce {induced} edges", vertices.len()),
            )?
        }
    };
    Ok(Outcome::record(&rec, passed))
}

fn verify(command: VerifyCommand) -> CliResult<Outcome> {
    let mut rec = Record::new();
    let passed = match command {
        VerifyCommand::ClaimOptval {
            file,
            k,
            max_strings,
        } => {
            let graph = load_graph(&file)?;
            let budget = Budget {
                subset_strings: max_strings,
                ..Budget::default()
            };
            let r = reductions::verify_claim_optval(&graph, k, &budget)?;
            rec.field("check", "claim-optval")
                .field("k", k)
                .field("alpha", r.alpha)
                .field("beta", r.beta)
                .field("pass", r.pass);
            r.pass
        }
        VerifyCommand::CoverageIdentity { file, c, seed } => {
            let phi = load_cnf(&file)?;
            let seed = seed_or_draw(seed);
            let (inst, cert) = reductions::reduce_max2sat_to_cms(&phi, c, seed)?;
            let n = phi.variable_count();
            let budget = Budget::default();
            if n > budget.sat_variables {
                return Err(strsel::Error::Budget {
                    what: "assignment enumeration",
                    required: 1u128 << n,
                    limit: 1u128 << budget.sat_variables,
                }
                .into());
            }
            let fixing: Vec<_> = cert
                .map
                .iter()
                .zip(inst.set().words())
                .filter(|(s, _)| matches!(s, reductions::SourceRef::Fixing(_)))
                .map(|(_, w)| w)
                .collect();
            let mut coverage_failures = 0usize;
            let mut distance_failures = 0usize;
            for x in Assignment::all(n) {
                let xh = reductions::encode_assignment(&x)?;
                let want = c * phi.clause_count() + phi.satisfied_count(&x)?;
                let got = coverage(&xh, &inst)?;
                if got != want {
                    if coverage_failures == 0 {
                        rec.detail(format!("# x = {x}: coverage {got}, expected {want}"));
                    }
                    coverage_failures += 1;
                }
                for f in &fixing {
                    if hamming(&xh, f)? != n {
                        distance_failures += 1;
                    }
                }
            }
            let pass = coverage_failures == 0 && distance_failures == 0;
            rec.field("check", "coverage-identity")
                .field("assignments", 1u64 << n)
                .field("fixing_strings", fixing.len())
                .field("coverage_failures", coverage_failures)
                .field("distance_failures", distance_failures)
                .field("seed", seed)
                .field("pass", pass);
            pass
        }
        VerifyCommand::CmsDuality { file } => {
            let strings = load_strings(&file)?;
            let cms = in_file(&file, strings.to_cms())?;
            if !cms.set().alphabet().is_binary() {
                return Err(CliError::Usage(
                    "cms-duality needs a binary instance".into(),
                ));
            }
            let budget = Budget::default();
            let l = cms.set().word_len();
            let ffms = strsel::FfmsInstance::new(cms.set().clone(), l - cms.d())?;
            let a = exact::solve_cms_exact(&cms, &budget)?;
            let b = exact::solve_ffms_exact(&ffms, &budget)?;
            let bridged = anticoverage(&strsel::complement(&a.center)?, &ffms)?;
            let pass = a.value == b.value && bridged == b.value;
            rec.field("check", "cms-duality")
                .field("d", cms.d())
                .field("cms", a.value)
                .field("ffms", b.value)
                .field("complement_anticoverage", bridged)
                .field("pass", pass);
            pass
        }
    };
    Ok(Outcome::record(&rec, passed))
}

fn experiment(command: ExperimentCommand) -> CliResult<Outcome> {
    let mut rec = Record::new();
    let passed = match command {
        ExperimentCommand::FixingLemma {
            n,
            m,
            c,
            trials,
            seed,
            detail,
        } => {
            let seed = seed_or_draw(seed);
            let r = experiments::lemma_fixing_campaign(n, m.unwrap_or(n), c, trials, seed)?;
            rec.field("experiment", "fixing-lemma")
                .field("n", r.n)
                .field("m", r.m)
                .field("c", r.c)
                .field("trials", r.trials)
                .field("seed", r.seed)
                .field("failures", r.failures)
                .field("failure_fraction", format!("{:.6}", r.failure_fraction()))
                .field("bound", format!("{:.6}", r.bound))
                .field("slack", format!("{:.6}", r.slack))
                .field(
                    "within_bound",
                    r.within_bound.map_or("n/a".to_string(), |b| b.to_string()),
                );
            if detail {
                for w in &r.witnesses {
                    rec.detail(format!(
                        "witness trial={} word={} far={}",
                        w.trial, w.word, w.far_count
                    ));
                }
            }
            // statistical: reported, never a failure
            true
        }
        ExperimentCommand::QuarterBound { n } => {
            let r = experiments::per_pair_quarter_bound(n)?;
            rec.field("experiment", "quarter-bound")
                .field("n", r.n)
                .field("minimum", r.minimum)
                .field("argmin", &r.argmin)
                .field("holds", r.holds);
            r.holds
        }
        ExperimentCommand::HalfBound { n } => {
            let r = experiments::conditional_half_bound(n)?;
            rec.field("experiment", "half-bound")
                .field("n", r.n)
                .field("minimum", r.minimum)
                .field("argmin", &r.argmin)
                .field("block", r.block)
                .field("symmetric", r.symmetric)
                .field("holds", r.holds);
            r.holds
        }
        ExperimentCommand::Inequalities { c, m, detail } => {
            let r = experiments::inequality_checks(c, m)?;
            rec.field("experiment", "inequalities")
                .field("c", r.c)
                .field("m_max", r.m_max)
                .field("epsilon_threshold", r.epsilon_threshold)
                .field("exponent", format!("{:.6}", r.exponent))
                .field("amplification_checked", r.amplification_checked)
                .field("structural_checked", r.structural_checked)
                .field("union_checked", r.union_checked)
                .field("failures", r.failures.len())
                .field("pass", r.pass());
            if detail {
                for f in &r.failures {
                    rec.detail(format!("failure {f:?}"));
                }
            }
            r.pass()
        }
        ExperimentCommand::LasVegas {
            file,
            n,
            m,
            c,
            trials,
            max_trials,
            seed,
            detail,
        } => {
            let fixed = file.as_deref().map(load_cnf).transpose()?;
            let seed = seed_or_draw(seed);
            las_vegas(
                &mut rec,
                fixed,
                n,
                m.unwrap_or(n),
                c,
                trials,
                max_trials,
                seed,
                detail,
            )?
        }
    };
    Ok(Outcome::record(&rec, passed))
}

#[allow(clippy::too_many_arguments)]
fn las_vegas(
    rec: &mut Record,
    fixed: Option<Max2SatInstance>,
    n: usize,
    m: usize,
    c: usize,
    runs: usize,
    max_trials: usize,
    seed: u64,
    detail: bool,
) -> CliResult<bool> {
    let budget = Budget::default();
    let mut solver = |inst: &CmsInstance| exact::solve_cms_exact(inst, &budget);
    let (mut total, mut checked, mut wrong, mut capped) = (0usize, 0usize, 0usize, 0usize);
    for run in 0..runs {
        let run_seed = rng::derive_seed(seed, run as u64);
        let phi = match &fixed {
            Some(phi) => phi.clone(),
            None => Max2SatInstance::random(n, m, &mut rng::seeded(run_seed ^ 1))?,
        };
        let out = match experiments::las_vegas_loop(&phi, c, run_seed, &mut solver, max_trials) {
            Ok(out) => out,
            Err(strsel::Error::Budget { .. }) => {
                capped += 1;
                if detail {
                    rec.detail(format!("run={run} trials>{max_trials} capped"));
                }
                continue;
            }
            Err(e) => return Err(e.into()),
        };
        total += out.trials;
        let sat = phi.satisfied_count(&out.assignment)?;
        let lemma = out.final_lemma_holds();
        let mut optimum = None;
        if lemma == Some(true) {
            let (_, opt) = exact::solve_max2sat_exact(&phi, &budget)?;
            checked += 1;
            if sat != opt {
                wrong += 1;
            }
            optimum = Some(opt);
        }
        if detail {
            rec.detail(format!(
                "run={run} trials={} assignment={} satisfied={sat} optimum={} lemma={}",
                out.trials,
                out.assignment,
                optimum.map_or("-".to_string(), |o| o.to_string()),
                lemma.map_or("-".to_string(), |b| b.to_string()),
            ));
        }
    }
    let finished = runs - capped;
    let (vars, clauses) = fixed
        .as_ref()
        .map_or((n, m), |phi| (phi.variable_count(), phi.clause_count()));
    rec.field("experiment", "las-vegas")
        .field("n", vars)
        .field("m", clauses)
        .field("c", c)
        .field("runs", runs)
        .field("seed", seed)
        .field("capped", capped)
        .field(
            "mean_trials",
            if finished == 0 {
                "n/a".to_string()
            } else {
                format!("{:.4}", total as f64 / finished as f64)
            },
        )
        .field("optimality_checked", checked)
        .field("optimality_failures", wrong);
    Ok(capped == 0 && wrong == 0)
}

fn decide_cks(file: &Path, d: usize, oracle: &str) -> CliResult<Outcome> {
    let inst = in_file(file, load_strings(file)?.to_cks())?;
    let (name, mut oracle): (String, Box<dyn ApproxOracle>) = match oracle.split_once(':') {
        None if oracle == "exact" => ("exact".into(), Box::new(ExactOracle::default())),
        None if oracle == "inflate" => {
            let seed = seed_or_draw(None);
            (
                format!("inflate:{seed}"),
                Box::new(InflatingOracle::new(seed)),
            )
        }
        Some(("inflate", s)) => {
            let seed: u64 = s
                .parse()
                .map_err(|_| CliError::Usage(format!("bad oracle seed `{s}`")))?;
            (
                format!("inflate:{seed}"),
                Box::new(InflatingOracle::new(seed)),
            )
        }
        _ => {
            return Err(CliError::Usage(format!(
                "unknown oracle `{oracle}`; expected exact, inflate or inflate:<seed>"
            )))
        }
    };
    let answer = fpt::decide_cks(&inst, d, oracle.as_mut())?;
    let mut rec = Record::new();
    rec.field("problem", "cks-decision")
        .field("k", inst.k())
        .field("d", d)
        .field("oracle", name);
    if d > 0 {
        rec.field("epsilon", fpt::epsilon_for(d));
    }
    rec.field("answer", if answer { "yes" } else { "no" });
    Ok(Outcome::record(&rec, true))
}
