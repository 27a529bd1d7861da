//! The `ddh` command line.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::axiom::{check_condition_i, check_witness, VStar};
use crate::coeffield::Field;
use crate::error::{Error, SolveFailure};
use crate::extend::{extend_to_element, ExtensionRequest};
use crate::hensel::{lift, lift_nonlocal, LiftProblem, SolverStrategy};
use crate::prolongation::{nabla, pihat, tau_generators};
use crate::reduction::{check_coherent_with_budget, ideal_member, ritt_remainder, GroebnerBudget};
use crate::session::{parse_field, parse_solver, Session, SessionFile};

#[derive(Debug, Parser)]
#[command(name = "ddh", version, about = "Exact differential algebra over Q and Q(t1, ..., ts)")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Session file (TOML).
    #[arg(long, global = true)]
    pub session: Option<PathBuf>,
    /// Coefficient field: Q, Q(t1,...,ts), optionally with :m derivations.
    #[arg(long, global = true)]
    pub field: Option<String>,
    /// Finite algebra: dual, truncated:d, split:n, or local:d,point,jets:q:n.
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Images e(t1); e(t2); ... as algebra elements.
    #[arg(long, global = true)]
    pub structure: Option<String>,
    /// exact:deg=D or jet:point=p1,...,ps,order=N.
    #[arg(long, global = true)]
    pub solver: Option<String>,
    /// Step budget for saturation computations.
    #[arg(long, global = true)]
    pub budget: Option<usize>,
    /// Write the report to this file instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Leader, degree, initial and separant of a polynomial.
    Rank {
        #[arg(long)]
        poly: String,
    },
    /// Ritt remainder with its certificate.
    Reduce {
        #[arg(long)]
        set: String,
        #[arg(long)]
        poly: String,
    },
    /// Coherence of an autoreduced set.
    Coherent {
        #[arg(long)]
        set: String,
    },
    /// Membership in the ideal of an asserted characteristic set.
    Member {
        #[arg(long)]
        set: String,
        #[arg(long)]
        poly: String,
    },
    /// Prolongation components of a set.
    Prolong {
        #[arg(long)]
        set: String,
    },
    /// The canonical section at a point.
    Nabla {
        #[arg(long)]
        point: String,
    },
    /// Projection of a prolongation point to a residue field.
    Pihat {
        #[arg(long)]
        factor: usize,
        #[arg(long)]
        point: String,
    },
    /// Differential Hensel lifting of a residue point.
    Lift {
        #[arg(long)]
        system: String,
        /// Residue point; repeat once per local factor for non-local algebras.
        #[arg(long, required = true)]
        point: Vec<String>,
        #[arg(long)]
        factor: Option<usize>,
    },
    /// Extends the structure to an element of a larger field.
    Extend {
        /// Characteristic set of the element; omit for a transcendental element.
        #[arg(long)]
        set: Option<String>,
        #[arg(long)]
        element: String,
        /// Target of sigma_i, one per non-trivial factor.
        #[arg(long)]
        target: Vec<String>,
        /// The larger field; defaults to the session field.
        #[arg(long)]
        over: Option<String>,
    },
    /// Checks the structure laws on generators and random samples.
    CheckStructure {
        #[arg(long, default_value_t = 20)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Condition (i) of the prolongation axiom and witness points.
    CheckAxiom3 {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        witness: Vec<String>,
    },
}

/// The report text and the exit code: 0 pass, 1 a check failed, 2 bad input,
/// 3 a resource or search bound was reached.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

pub fn exit_code(e: &Error) -> i32 {
    match e.root() {
        Error::Syntax { .. } | Error::UnknownSymbol(_) | Error::Invalid(_) | Error::NotAutoreduced { .. } => 2,
        Error::IndexOutOfRange { .. } | Error::DerivationOutOfRange { .. } | Error::MissingIndeterminate(_) => 2,
        Error::IdempotentsRequired | Error::InvalidIdempotents(_) | Error::InvalidAlgebra(_) => 2,
        Error::ResourceLimit(_) => 3,
        Error::Solve(SolveFailure::NoSolutionFoundAtBound(_)) => 3,
        Error::SolverFailed { failure: SolveFailure::NoSolutionFoundAtBound(_), .. } => 3,
        _ => 1,
    }
}

fn load(g: &Global) -> Result<Session, Error> {
    let mut file = match &g.session {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|e| Error::Invalid(format!("{}: {e}", p.display())))?;
            SessionFile::from_toml(&text)?
        }
        None => SessionFile::default(),
    };
    if let Some(f) = &g.field {
        file.field = Some(f.clone());
    }
    if let Some(a) = &g.algebra {
        file.algebra = Some(a.clone());
        file.table = None;
    }
    if let Some(s) = &g.structure {
        file.structure = Some(s.split(';').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect());
    }
    Session::from_file(&file)
}

fn solver(g: &Global) -> Result<SolverStrategy, Error> {
    g.solver.as_deref().map_or(Ok(SolverStrategy::default()), parse_solver)
}

/// Runs a parsed command.
pub fn execute(cli: &Cli) -> Outcome {
    let mut out = String::new();
    let code = match run_command(cli, &mut out) {
        Ok(pass) => i32::from(!pass),
        Err(e) => {
            let _ = writeln!(out, "error: {e}");
            exit_code(&e)
        }
    };
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &out) {
            return Outcome { output: format!("error: {}: {e}\n", path.display()), code: 2 };
        }
        return Outcome { output: String::new(), code };
    }
    Outcome { output: out, code }
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            Outcome { output: e.to_string(), code }
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn run_command(cli: &Cli, out: &mut String) -> Result<bool, Error> {
    let g = &cli.global;
    let s = load(g)?;
    let w = |out: &mut String, text: String| out.push_str(&text);
    match &cli.command {
        Command::Rank { poly } => {
            let p = crate::parse::parse_poly(poly)?;
            match p.rank() {
                Ok(r) => w(
                    out,
                    format!(
                        "leader: {}\ndegree: {}\nrank: {}\ninitial: {}\nseparant: {}\n",
                        r.leader,
                        r.degree,
                        r,
                        p.initial()?,
                        p.separant()?
                    ),
                ),
                Err(_) => w(out, "rank: constant (below every indeterminate)\n".into()),
            }
            Ok(true)
        }
        Command::Reduce { set, poly } => {
            let set = s.set(set)?;
            let cert = ritt_remainder(&crate::parse::parse_poly(poly)?, &set);
            w(out, cert.report(&set));
            w(out, format!("H power: {}\ncertificate verified: {}\n", cert.h_power(), yes(cert.verify(&set))));
            Ok(true)
        }
        Command::Coherent { set } => {
            let set = s.set(set)?;
            let budget = g.budget.map_or(crate::reduction::DEFAULT_BUDGET, GroebnerBudget);
            let r = check_coherent_with_budget(&set, budget)?;
            w(out, r.to_string());
            Ok(r.is_coherent())
        }
        Command::Member { set, poly } => {
            let set = s.set(set)?.assert_characteristic();
            let f = crate::parse::parse_poly(poly)?;
            let member = ideal_member(&f, &set);
            w(out, ritt_remainder(&f, &set).report(&set));
            w(out, format!("member: {}\n", yes(member)));
            Ok(member)
        }
        Command::Prolong { set } => {
            let set = s.set(set)?;
            w(out, tau_generators(&set, &s.structure)?.to_string());
            Ok(true)
        }
        Command::Nabla { point } => {
            let n = nabla(&s.point(point)?, &s.structure)?;
            for (v, a) in n.iter() {
                w(out, format!("{v} = {a}\n"));
            }
            Ok(true)
        }
        Command::Pihat { factor, point } => {
            let p = pihat(*factor, &s.point(point)?, &s.structure)?;
            for (v, a) in p.iter() {
                w(out, format!("{v} = {a}\n"));
            }
            Ok(true)
        }
        Command::Lift { system, point, factor } => {
            let problem = LiftProblem { algebra: s.algebra(), field: s.field(), system: s.system(system)? };
            let points = point.iter().map(|p| s.point(p)).collect::<Result<Vec<_>, _>>()?;
            let strategy = solver(g)?;
            let n = s.algebra().decomposition()?.len();
            let l = match (factor, points.as_slice()) {
                (Some(i), [a]) => lift(&problem, *i, a, &strategy)?,
                (None, [a]) if n == 1 => lift(&problem, 0, a, &strategy)?,
                (None, pts) => lift_nonlocal(&problem, pts, &strategy)?,
                (Some(_), _) => return Err(Error::Invalid("--factor takes a single --point".into())),
            };
            w(out, format!("solver: {strategy}\n{l}"));
            let r = l.render(s.algebra());
            w(out, format!("b = {}\n", if r.len() == 1 { r[0].clone() } else { format!("({})", r.join(", ")) }));
            Ok(true)
        }
        Command::Extend { set, element, target, over } => {
            let field: Field = match over {
                Some(f) => parse_field(f)?,
                None => s.field().clone(),
            };
            let charset = set.as_ref().map(|x| s.set(x).map(|c| c.assert_characteristic())).transpose()?;
            let req = ExtensionRequest {
                structure: &s.structure,
                field: &field,
                element: s.point(element)?,
                charset,
                targets: target.iter().map(|t| s.point(t)).collect::<Result<_, _>>()?,
            };
            let e = extend_to_element(&req, &solver(g)?)?;
            w(out, e.to_string());
            Ok(true)
        }
        Command::CheckStructure { samples, seed } => {
            let r = s.structure.check(*samples, *seed);
            w(out, format!("algebra: {}\n", s.algebra()));
            for (k, img) in s.structure.images().iter().enumerate() {
                w(out, format!("e(t{}) = {}\n", k + 1, s.structure.render(img)));
            }
            w(out, r.to_string());
            Ok(r.passed())
        }
        Command::CheckAxiom3 { lambda, gamma, witness } => {
            let l = VStar::new(s.set(lambda)?)?;
            let gm = VStar::new(s.set(gamma)?)?;
            let r = check_condition_i(&l, &gm, &s.structure)?;
            w(out, r.to_string());
            let mut pass = r.passed();
            for p in witness {
                let wr = check_witness(&s.point(p)?, &l, &gm, &s.structure)?;
                w(out, wr.to_string());
                pass &= wr.passed();
            }
            Ok(pass)
        }
    }
}
