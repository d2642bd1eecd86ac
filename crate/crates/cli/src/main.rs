mod report;
mod verify_all;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ybl_core::brace::BraceIdeal;
use ybl_core::chain::{verify_rtt, verify_shift_action, ChainSystem, DEFAULT_BUDGET};
use ybl_core::corpus::{parse_brace, parse_ring, parse_solution, Corpus};
use ybl_core::exact::{LegMatrix, Poly, Rational};
use ybl_core::qalgebra::{
    check_representation, generate_relations, induce_hom, level01_checks, relations_json, yangian_form, RepKind,
    RepSpec, DEFAULT_MAX_LEVEL,
};
use ybl_core::report::{CheckResult, Witness};
use ybl_core::rmatrix::RBundle;
use ybl_core::solution::{check_hom, isomorphisms, quotient_by_ideal, retract_to_lyubashenko, SetSolution};
use ybl_core::symmetry::{
    central_symmetry, fixed_element_gl, lift_check, orbit_projector_symmetry, solve_cocycle, square_free_symmetry,
    verify_m_symmetry, DiagonalSymmetry, SymmetryReport,
};

use report::{prefixed, symmetry_checks, RunReport};

#[derive(Parser)]
#[command(name = "ybl", version, about = "Exact checks for brace solutions of the Yang-Baxter equation")]
struct Cli {
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest number of basis states allowed in one matrix.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Finite rings given by tables or `scaled:M:C`, `truncpoly:M:K`.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Braces from additive and circle tables.
    #[command(subcommand)]
    Brace(BraceCmd),
    /// Set-theoretic solutions and their homomorphisms.
    #[command(subcommand)]
    Solution(SolutionCmd),
    /// `ř`, `r` and their Baxterizations.
    #[command(subcommand)]
    Rmatrix(RmatrixCmd),
    /// Periodic transfer matrices and local charges.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Symmetries commuting with the charges.
    #[command(subcommand)]
    Symmetry(SymmetryCmd),
    /// Quadratic algebra relations and representations.
    #[command(subcommand)]
    Qalgebra(QalgebraCmd),
    /// Run every check on a corpus.
    VerifyAll {
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long, default_value_t = 4)]
        max_sites: usize,
    },
}

#[derive(Args)]
struct Sol {
    /// `trivial:N`, `lyubashenko:M`, `brace:<brace>` or a JSON file.
    #[arg(long)]
    solution: String,
}

#[derive(Args)]
struct SolSites {
    #[command(flatten)]
    sol: Sol,
    #[arg(long, default_value_t = 3)]
    sites: usize,
}

#[derive(Args)]
struct SolLevel {
    #[command(flatten)]
    sol: Sol,
    #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
    max_level: usize,
}

#[derive(Subcommand)]
enum RingCmd {
    Validate {
        #[arg(long)]
        ring: String,
    },
    ToBrace {
        #[arg(long)]
        ring: String,
    },
}

#[derive(Subcommand)]
enum BraceCmd {
    Validate {
        #[arg(long)]
        brace: String,
    },
    Quotient {
        #[arg(long)]
        brace: String,
        #[arg(long, value_delimiter = ',', required = true)]
        ideal: Vec<usize>,
    },
    /// Central elements with `a + a = 0` and `a∘a = 0`.
    Central {
        #[arg(long)]
        brace: String,
    },
}

#[derive(Subcommand)]
enum SolutionCmd {
    Validate(Sol),
    FromBrace {
        #[arg(long)]
        brace: String,
        /// Subset of brace elements; all elements when omitted.
        #[arg(long, value_delimiter = ',')]
        elements: Option<Vec<usize>>,
    },
    Lyubashenko {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        validate: bool,
    },
    Trivial {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        validate: bool,
    },
    Orbits(Sol),
    Retract {
        #[command(flatten)]
        sol: Sol,
        /// Search the retraction sequence for a Lyubashenko solution.
        #[arg(long)]
        to_lyubashenko: bool,
    },
    MpLevel(Sol),
    Hom {
        #[command(flatten)]
        sol: Sol,
        #[arg(long)]
        target: String,
        #[arg(long, value_delimiter = ',', required = true)]
        map: Vec<usize>,
    },
    Iso {
        #[command(flatten)]
        sol: Sol,
        #[arg(long)]
        target: String,
    },
}

#[derive(Subcommand)]
enum RmatrixCmd {
    Build(Sol),
    Check {
        #[command(flatten)]
        sol: Sol,
        /// Sites for the Hecke relations.
        #[arg(long, default_value_t = 3)]
        sites: usize,
    },
}

#[derive(Subcommand)]
enum ChainCmd {
    Build {
        #[command(flatten)]
        args: SolSites,
        #[arg(long)]
        verify_commute: bool,
        #[arg(long)]
        closed_forms: bool,
    },
    VerifyRtt(SolSites),
    ClosedForms(SolSites),
    ShiftAction {
        #[command(flatten)]
        sol: Sol,
        #[arg(long, default_value_t = 4)]
        sites: usize,
    },
}

#[derive(Subcommand)]
enum SymmetryCmd {
    /// Check a user-supplied `B`, rows separated by `;`, e.g. `1,2;3,4`.
    Lift {
        #[command(flatten)]
        args: SolSites,
        #[arg(long)]
        matrix: String,
    },
    /// Solve `α_x α_y = α_{σ_x(y)} α_{τ_y(x)}` twisted by `f`.
    Cocycle {
        #[command(flatten)]
        sol: Sol,
        /// Automorphism; the identity when omitted.
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<usize>>,
    },
    /// Check `M = Σ α_x e_{x,f(x)}`.
    MSym {
        #[command(flatten)]
        args: SolSites,
        #[arg(long, value_delimiter = ',')]
        f: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<String>,
    },
    /// Orbit multidegree projectors.
    OrbitProj(SolSites),
    /// gl generators on fixed elements.
    FixedGl(SolSites),
    /// Coproducts of `e_{x,y}` for square-free points.
    SquareFree(SolSites),
    /// Symmetry from a central involutive element `a` of a brace.
    Central {
        #[arg(long)]
        brace: String,
        #[arg(long, value_delimiter = ',')]
        elements: Option<Vec<usize>>,
        #[arg(long)]
        a: usize,
        #[arg(long, default_value_t = 0)]
        b: usize,
        #[arg(long, default_value_t = 0)]
        c: usize,
        #[arg(long, default_value_t = 3)]
        sites: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Constant,
    Tensor,
    Graded,
    LinearPoly,
}

impl From<Kind> for RepKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Constant => RepKind::Constant,
            Kind::Tensor => RepKind::Tensor,
            Kind::Graded => RepKind::Graded,
            Kind::LinearPoly => RepKind::LinearPoly,
        }
    }
}

#[derive(Subcommand)]
enum QalgebraCmd {
    /// Relations up to `--max-level`.
    Relations(SolLevel),
    /// Compare `trivial:n` with the Yangian relations.
    Yangian {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: usize,
    },
    /// Check representations of the relations.
    CheckRep {
        #[command(flatten)]
        args: SolLevel,
        /// All four kinds when omitted.
        #[arg(long, value_enum)]
        kind: Option<Kind>,
        /// Skip the structure-algebra reduction.
        #[arg(long)]
        no_nf: bool,
    },
    /// Induced map of a solution homomorphism: `--target` with `--map`,
    /// `--orbit-collapse`, or `--brace` with `--ideal`.
    Induce {
        #[arg(long)]
        solution: Option<String>,
        #[arg(long)]
        target: Option<String>,
        #[arg(long, value_delimiter = ',')]
        map: Option<Vec<usize>>,
        #[arg(long)]
        orbit_collapse: bool,
        #[arg(long)]
        brace: Option<String>,
        #[arg(long, value_delimiter = ',')]
        ideal: Option<Vec<usize>>,
        #[arg(long, default_value_t = DEFAULT_MAX_LEVEL)]
        max_level: usize,
    },
    /// Level-zero and level-one identities.
    Level01(SolLevel),
}

fn solution(spec: &str) -> anyhow::Result<SetSolution> {
    let sol = parse_solution(spec)?;
    sol.require_valid()?;
    Ok(sol)
}

fn chain(args: &SolSites, budget: usize) -> anyhow::Result<ChainSystem> {
    Ok(ChainSystem::build(&solution(&args.sol.solution)?, args.sites, budget)?)
}

fn sym_inputs(args: &SolSites) -> Value {
    json!({ "solution": args.sol.solution, "sites": args.sites })
}

fn sym_report(command: &str, inputs: Value, reports: &[SymmetryReport]) -> RunReport {
    let checks = reports.iter().enumerate().flat_map(|(i, r)| prefixed(&format!("g{i}"), symmetry_checks(r)));
    RunReport::new(command, inputs, checks.collect(), json!({ "symmetries": reports }))
}

fn matrix_entries(m: &LegMatrix) -> Value {
    Value::Array(m.entries().map(|(r, c, p)| json!([r, c, p.to_string()])).collect())
}

fn parse_matrix(text: &str, dim: usize) -> anyhow::Result<LegMatrix> {
    let rows: Vec<&str> = text.split(';').collect();
    if rows.len() != dim {
        bail!("matrix has {} rows, expected {dim}", rows.len());
    }
    let mut entries = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let vals: Vec<&str> = row.split(',').map(str::trim).collect();
        if vals.len() != dim {
            bail!("matrix row {i} has {} entries, expected {dim}", vals.len());
        }
        for (j, v) in vals.iter().enumerate() {
            let q: Rational = v.parse().map_err(|e| anyhow!("matrix entry ({i}, {j}): {e}"))?;
            entries.push((i, j, Poly::constant(q)));
        }
    }
    Ok(LegMatrix::from_entries(1, dim, entries)?)
}

fn run(cli: &Cli) -> anyhow::Result<RunReport> {
    let budget = cli.budget;
    Ok(match &cli.command {
        Command::Ring(cmd) => match cmd {
            RingCmd::Validate { ring } => {
                let r = parse_ring(ring)?;
                let rep = r.validate();
                RunReport::new(
                    "ring validate",
                    json!({ "ring": ring }),
                    rep.checks(),
                    json!({ "size": r.size, "nilpotency_index": rep.nilpotency_index }),
                )
            }
            RingCmd::ToBrace { ring } => {
                let b = ybl_core::brace::ring_to_brace(&parse_ring(ring)?)?;
                RunReport::new("ring to-brace", json!({ "ring": ring }), b.validate().checks(), json!({ "brace": b }))
            }
        },
        Command::Brace(cmd) => match cmd {
            BraceCmd::Validate { brace } => {
                let b = parse_brace(brace)?;
                RunReport::new("brace validate", json!({ "brace": brace }), b.validate().checks(), json!({ "size": b.size }))
            }
            BraceCmd::Quotient { brace, ideal } => {
                let b = parse_brace(brace)?;
                let (q, class) = b.quotient(&BraceIdeal::new(ideal.iter().copied()))?;
                RunReport::new(
                    "brace quotient",
                    json!({ "brace": brace, "ideal": ideal }),
                    q.validate().checks(),
                    json!({ "quotient": q, "coset_of": class }),
                )
            }
            BraceCmd::Central { brace } => {
                let b = parse_brace(brace)?;
                let failures: Value = (0..b.size)
                    .map(|a| (a.to_string(), json!(b.central_involutive_failure(a))))
                    .collect::<serde_json::Map<_, _>>()
                    .into();
                RunReport::new(
                    "brace central",
                    json!({ "brace": brace }),
                    vec![],
                    json!({ "central_involutive": b.central_involutive_elements(), "failures": failures }),
                )
            }
        },
        Command::Solution(cmd) => solution_cmd(cmd)?,
        Command::Rmatrix(cmd) => match cmd {
            RmatrixCmd::Build(s) => {
                let b = RBundle::build(&solution(&s.solution)?)?;
                RunReport::new(
                    "rmatrix build",
                    json!({ "solution": s.solution }),
                    vec![],
                    json!({
                        "dim": b.dim(),
                        "check": matrix_entries(&b.check),
                        "r": matrix_entries(&b.r),
                        "r_spec": matrix_entries(&b.r_spec),
                    }),
                )
            }
            RmatrixCmd::Check { sol, sites } => {
                let b = RBundle::build(&solution(&sol.solution)?)?;
                let mut checks = vec![b.dual_forms()];
                checks.extend(b.structure_checks());
                checks.extend(b.verify_spectral()?.checks());
                checks.extend(b.verify_hecke(*sites)?);
                RunReport::new("rmatrix check", json!({ "solution": sol.solution, "sites": sites }), checks, Value::Null)
            }
        },
        Command::Chain(cmd) => match cmd {
            ChainCmd::Build { args, verify_commute, closed_forms } => {
                let c = chain(args, budget)?;
                let commuting = verify_commute.then(|| c.verify_commuting());
                let closed = if *closed_forms { Some(c.verify_closed_forms()?) } else { None };
                let mut checks = vec![c.trace_consistency(&Rational::from(2)), c.shift_order()];
                checks.extend(commuting.iter().map(|r| r.result.clone()));
                checks.extend(closed.iter().flat_map(|r| r.checks()));
                RunReport::new("chain build", sym_inputs(args), checks, c.summary(commuting.as_ref(), closed.as_ref()))
            }
            ChainCmd::VerifyRtt(args) => {
                let b = RBundle::build(&solution(&args.sol.solution)?)?;
                RunReport::new("chain verify-rtt", sym_inputs(args), vec![verify_rtt(&b, args.sites, budget)?], Value::Null)
            }
            ChainCmd::ClosedForms(args) => {
                let c = chain(args, budget)?;
                RunReport::new("chain closed-forms", sym_inputs(args), c.verify_closed_forms()?.checks(), Value::Null)
            }
            ChainCmd::ShiftAction { sol, sites } => {
                let b = RBundle::build(&solution(&sol.solution)?)?;
                let checks = verify_shift_action(&b, *sites, budget)?;
                RunReport::new("chain shift-action", json!({ "solution": sol.solution, "sites": sites }), checks, Value::Null)
            }
        },
        Command::Symmetry(cmd) => symmetry_cmd(cmd, budget)?,
        Command::Qalgebra(cmd) => qalgebra_cmd(cmd)?,
        Command::VerifyAll { corpus, max_sites } => {
            let c = Corpus::load(corpus)?;
            let (checks, data) = verify_all::verify_all(&c, *max_sites, budget)?;
            RunReport::new("verify-all", json!({ "corpus": corpus, "max_sites": max_sites }), checks, data)
        }
    })
}

fn validated(command: &str, inputs: Value, sol: &SetSolution, validate: bool) -> RunReport {
    let checks = if validate { sol.validate().checks() } else { vec![] };
    RunReport::new(command, inputs, checks, json!({ "solution": sol }))
}

fn solution_cmd(cmd: &SolutionCmd) -> anyhow::Result<RunReport> {
    Ok(match cmd {
        SolutionCmd::Validate(s) => {
            let sol = parse_solution(&s.solution)?;
            validated("solution validate", json!({ "solution": s.solution }), &sol, true)
        }
        SolutionCmd::FromBrace { brace, elements } => {
            let b = parse_brace(brace)?;
            let elems = elements.clone().unwrap_or_else(|| (0..b.size).collect());
            let sol = SetSolution::from_brace(&b, &elems, format!("brace:{brace}"))?;
            validated("solution from-brace", json!({ "brace": brace, "elements": elems }), &sol, true)
        }
        SolutionCmd::Lyubashenko { m, validate } => {
            if *m == 0 {
                bail!("m must be positive");
            }
            validated("solution lyubashenko", json!({ "m": m }), &SetSolution::lyubashenko(*m), *validate)
        }
        SolutionCmd::Trivial { n, validate } => {
            if *n == 0 {
                bail!("n must be positive");
            }
            validated("solution trivial", json!({ "n": n }), &SetSolution::trivial(*n), *validate)
        }
        SolutionCmd::Orbits(s) => {
            let sol = solution(&s.solution)?;
            let orbits = sol.orbits();
            RunReport::new(
                "solution orbits",
                json!({ "solution": s.solution }),
                vec![],
                json!({ "orbits": orbits, "indecomposable": sol.is_indecomposable() }),
            )
        }
        SolutionCmd::Retract { sol, to_lyubashenko } => {
            let s = solution(&sol.solution)?;
            let (ret, hom) = s.retract()?;
            let mut data = json!({ "retraction": ret, "map": hom.map });
            if *to_lyubashenko {
                data["lyubashenko"] = match retract_to_lyubashenko(&s)? {
                    Some(t) => json!({
                        "m": t.m,
                        "chain": t.chain.iter().map(|h| h.map.clone()).collect::<Vec<_>>(),
                        "iso": t.iso.map,
                    }),
                    None => Value::Null,
                };
            }
            RunReport::new("solution retract", json!({ "solution": sol.solution }), vec![], data)
        }
        SolutionCmd::MpLevel(s) => {
            let level = solution(&s.solution)?.multipermutation_level()?;
            RunReport::new("solution mp-level", json!({ "solution": s.solution }), vec![], json!({ "level": level }))
        }
        SolutionCmd::Hom { sol, target, map } => {
            let (a, b) = (solution(&sol.solution)?, solution(target)?);
            let check = match check_hom(map, &a, &b) {
                Ok(_) => CheckResult::pass("hom"),
                Err(e) => CheckResult::fail("hom", Witness::note(e.to_string())),
            };
            RunReport::new("solution hom", json!({ "solution": sol.solution, "target": target, "map": map }), vec![check], Value::Null)
        }
        SolutionCmd::Iso { sol, target } => {
            let (a, b) = (solution(&sol.solution)?, solution(target)?);
            let isos = isomorphisms(&a, &b)?;
            let check = if isos.is_empty() { CheckResult::fail("iso", Witness::note("no isomorphism")) } else { CheckResult::pass("iso") };
            RunReport::new(
                "solution iso",
                json!({ "solution": sol.solution, "target": target }),
                vec![check],
                json!({ "isomorphisms": isos }),
            )
        }
    })
}

fn symmetry_cmd(cmd: &SymmetryCmd, budget: usize) -> anyhow::Result<RunReport> {
    Ok(match cmd {
        SymmetryCmd::Lift { args, matrix } => {
            let c = chain(args, budget)?;
            let b = parse_matrix(matrix, c.dim()).context("--matrix")?;
            let mut inputs = sym_inputs(args);
            inputs["matrix"] = json!(matrix);
            let r = lift_check(&b, &c)?;
            RunReport::new("symmetry lift", inputs, r.checks.clone(), json!({ "symmetries": [r] }))
        }
        SymmetryCmd::Cocycle { sol, f } => {
            let s = solution(&sol.solution)?;
            let f = f.clone().unwrap_or_else(|| (0..s.size).collect());
            let c = solve_cocycle(&s, &f)?;
            RunReport::new("symmetry cocycle", json!({ "solution": sol.solution, "f": f }), vec![], json!(c))
        }
        SymmetryCmd::MSym { args, f, alpha } => {
            let c = chain(args, budget)?;
            let f = f.clone().unwrap_or_else(|| (0..c.dim()).collect());
            let alpha = alpha
                .iter()
                .map(|a| a.parse::<Rational>().map_err(|e| anyhow!("--alpha `{a}`: {e}")))
                .collect::<anyhow::Result<Vec<_>>>()?;
            let mut inputs = sym_inputs(args);
            inputs["f"] = json!(f);
            inputs["alpha"] = json!(alpha);
            let r = verify_m_symmetry(&c, &DiagonalSymmetry { f, alpha })?;
            sym_report("symmetry m-sym", inputs, &[r])
        }
        SymmetryCmd::OrbitProj(args) => sym_report("symmetry orbit-proj", sym_inputs(args), &orbit_projector_symmetry(&chain(args, budget)?)),
        SymmetryCmd::FixedGl(args) => sym_report("symmetry fixed-gl", sym_inputs(args), &fixed_element_gl(&chain(args, budget)?)),
        SymmetryCmd::SquareFree(args) => {
            sym_report("symmetry square-free", sym_inputs(args), &square_free_symmetry(&chain(args, budget)?))
        }
        SymmetryCmd::Central { brace, elements, a, b, c, sites } => {
            let br = parse_brace(brace)?;
            let elems = elements.clone().unwrap_or_else(|| (0..br.size).collect());
            let r = central_symmetry(&br, &elems, (*a, *b, *c), *sites, budget)?;
            let inputs = json!({ "brace": brace, "elements": elems, "a": a, "b": b, "c": c, "sites": sites });
            sym_report("symmetry central", inputs, &[r])
        }
    })
}

fn qalgebra_cmd(cmd: &QalgebraCmd) -> anyhow::Result<RunReport> {
    Ok(match cmd {
        QalgebraCmd::Relations(args) => {
            let s = solution(&args.sol.solution)?;
            let rels = generate_relations(&s, args.max_level);
            RunReport::new(
                "qalgebra relations",
                json!({ "solution": args.sol.solution, "max_level": args.max_level }),
                vec![],
                json!({ "count": rels.len(), "relations": relations_json(&rels) }),
            )
        }
        QalgebraCmd::Yangian { n, max_level } => {
            if *n == 0 {
                bail!("n must be positive");
            }
            let (rels, m) = yangian_form(*n, *max_level);
            let w = (!m.pass()).then(|| Witness::note(format!("mismatched tags {:?}", m.mismatches)));
            RunReport::new(
                "qalgebra yangian",
                json!({ "n": n, "max_level": max_level }),
                vec![CheckResult::from_option("yangian_match", w)],
                json!({ "match": m, "relations": relations_json(&rels) }),
            )
        }
        QalgebraCmd::CheckRep { args, kind, no_nf } => {
            let s = solution(&args.sol.solution)?;
            let rels = generate_relations(&s, args.max_level);
            let kinds: Vec<RepKind> = kind.map_or(RepKind::ALL.to_vec(), |k| vec![k.into()]);
            let reps: Vec<_> = kinds
                .into_iter()
                .map(|k| check_representation(&s, &rels, RepSpec { kind: k, disable_nf: *no_nf }))
                .collect();
            RunReport::new(
                "qalgebra check-rep",
                json!({ "solution": args.sol.solution, "max_level": args.max_level, "no_nf": no_nf }),
                reps.iter().map(|r| r.result.clone()).collect(),
                json!({ "representations": reps }),
            )
        }
        QalgebraCmd::Induce { solution: sol, target, map, orbit_collapse, brace, ideal, max_level } => {
            let hom = match (sol, target, map, orbit_collapse, brace, ideal) {
                (Some(s), Some(t), Some(m), false, None, None) => check_hom(m, &solution(s)?, &solution(t)?)?,
                (Some(s), None, None, true, None, None) => solution(s)?.orbit_collapse()?,
                (None, None, None, false, Some(b), Some(j)) => {
                    let br = parse_brace(b)?;
                    let all: Vec<usize> = (0..br.size).collect();
                    quotient_by_ideal(&br, &all, &BraceIdeal::new(j.iter().copied()))?
                }
                _ => bail!("give --solution with --target and --map, --solution with --orbit-collapse, or --brace with --ideal"),
            };
            let r = induce_hom(&hom, *max_level)?;
            RunReport::new(
                "qalgebra induce",
                json!({ "solution": sol, "target": target, "map": map, "orbit_collapse": orbit_collapse, "brace": brace, "ideal": ideal, "max_level": max_level }),
                vec![r.result.clone()],
                json!({ "map": r.map, "relations": r.relations, "codomain_size": hom.codomain.size }),
            )
        }
        QalgebraCmd::Level01(args) => {
            let s = solution(&args.sol.solution)?;
            RunReport::new(
                "qalgebra level01",
                json!({ "solution": args.sol.solution, "max_level": args.max_level }),
                level01_checks(&s, args.max_level)?,
                Value::Null,
            )
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let mut report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    report.wall_time_s = start.elapsed().as_secs_f64();
    let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    ExitCode::from(report.exit_status as u8)
}
