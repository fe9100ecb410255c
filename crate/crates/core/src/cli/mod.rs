//! Command-line driver.

mod expr;

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};

pub use expr::{parse_ast, parse_snplus, parse_wreath, Ast};

use crate::error::{QwError, Result};
use crate::grp::{parse_group_spec, GroupSpec, Subgroup};
use crate::kcalc::{
    bs_wreath_k, cyclic_k, free_group_k, kdata, reflection_k, reflection_signature, render_signature,
    render_vector, sl2z_wreath_k, solve_six_term, wreath_k, FgAbGroup, KPair, SixTermSolution,
};
use crate::ncpart::{character_moment, SnPlus};
use crate::wreath::WreathCtx;
use crate::Rational;

#[derive(Debug, Parser)]
#[command(name = "qwreath", version, about = "Haar states and K-theory of free wreath products by S_N+")]
pub struct Cli {
    /// Print flat key=value lines instead of the human report.
    #[arg(long, global = true)]
    pub machine: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct ExprArgs {
    /// Expression, e.g. "nu(1,a)*u(1,2)*nu(2,a^-1)".
    #[arg(long, conflicts_with = "expr_file")]
    pub expr: Option<String>,
    /// File holding the expression.
    #[arg(long)]
    pub expr_file: Option<String>,
}

#[derive(Debug, Args)]
pub struct GroupArgs {
    /// cyclic(s) | int | trivial | free(m) | finite(@file) | amalgam(spec,spec,k,word,word)
    #[arg(long)]
    pub group: String,
    /// trivial | <word> | amalgam
    #[arg(long, default_value = "trivial")]
    pub subgroup: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Haar state of a C(S_N+) expression.
    WgMoment {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// k-th moment of the character u_11 + ... + u_NN.
    WgCharacter {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Conditional expectation onto the span of row i.
    ExpectRow {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        row: usize,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Haar state on the free wreath product.
    Haar {
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// Haar state at N = 2 through the semidirect-product model.
    HaarOracle2 {
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[command(flatten)]
        group: GroupArgs,
        #[command(flatten)]
        expr: ExprArgs,
    },
    /// K-theory of the free wreath product of a group dual by S_N+.
    KtheoryWreath {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "kdata_file", required_unless_present = "kdata_file")]
        group: Option<String>,
        /// K-data of C*(group) with a unit class.
        #[arg(long)]
        kdata_file: Option<String>,
    },
    /// K-theory of the quantum reflection group H_N^{s+}.
    KtheoryReflection {
        #[arg(long)]
        n: usize,
        /// Positive integer or "inf".
        #[arg(long)]
        s: String,
    },
    /// K-theory of the Baumslag-Solitar free wreath products.
    KtheoryBs {
        #[arg(long, default_value_t = 4)]
        n: usize,
        /// "n,m".
        #[arg(long, allow_hyphen_values = true)]
        bs: String,
        #[arg(long)]
        amalgamated: bool,
    },
    /// K-theory of the free wreath product of SL2(Z) by S_N+.
    KtheorySl2z {
        #[arg(long)]
        n: usize,
    },
    /// Six-term sequence of a graph of C*-algebras given as K-data.
    KtheoryGraph {
        #[arg(long)]
        kdata_file: String,
    },
    /// Traces of a K0 basis of H_N^{s+} with multiplicities.
    Signature {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        s: u64,
    },
}

fn read_file(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| QwError::Io(format!("{path}: {e}")))
}

fn expr_text(a: &ExprArgs) -> Result<String> {
    match (&a.expr, &a.expr_file) {
        (Some(e), _) => Ok(e.clone()),
        (None, Some(p)) => read_file(p),
        (None, None) => Err(QwError::Syntax { line: 1, col: 1, msg: "missing --expr or --expr-file".into() }),
    }
}

fn context(n: usize, g: &GroupArgs) -> Result<Arc<WreathCtx>> {
    let group = parse_group_spec(&g.group)?;
    let sub = Subgroup::parse(&group, &g.subgroup)?;
    WreathCtx::new(n, group, sub)
}

fn group_kdata(spec: &GroupSpec) -> Result<KPair> {
    match spec {
        GroupSpec::Cyclic(s) => cyclic_k(*s),
        GroupSpec::Int => Ok(free_group_k(1)),
        GroupSpec::Free(m) => Ok(free_group_k(*m)),
        _ => Err(QwError::Unsupported("K-data for this group is not built in; pass --kdata-file".into())),
    }
}

struct Report {
    machine: bool,
    human: String,
    keys: Vec<(String, String)>,
}

impl Report {
    fn new(machine: bool) -> Self {
        Report { machine, human: String::new(), keys: Vec::new() }
    }

    fn line(&mut self, s: impl Into<String>) {
        let _ = writeln!(self.human, "{}", s.into());
    }

    fn key(&mut self, k: &str, v: impl ToString) {
        self.keys.push((k.to_string(), v.to_string()));
    }

    fn value(mut self, v: impl ToString) -> Self {
        let v = v.to_string();
        self.line(v.clone());
        self.key("value", v);
        self
    }

    fn group(&mut self, name: &str, g: &FgAbGroup) {
        let (rank, torsion) = g.invariant_factors();
        self.key(name, g);
        self.key(&format!("{name}_rank"), rank);
        self.key(&format!("{name}_torsion"), render_vector(&torsion));
    }

    fn kpair(mut self, k: &KPair) -> Self {
        self.line(format!("K0 = {}, K1 = {}", k.k0, k.k1));
        self.group("k0", &k.k0);
        self.group("k1", &k.k1);
        self
    }

    fn solution(self, s: &SixTermSolution) -> Self {
        let mut r = self.kpair(&s.pair());
        r.key("split_certain_k0", s.split_certain_k0);
        r.key("split_certain_k1", s.split_certain_k1);
        if !(s.split_certain_k0 && s.split_certain_k1) {
            r.line(format!("note: {}", s.diagnostic));
            r.key("diagnostic", &s.diagnostic);
        }
        r
    }

    fn finish(self) -> String {
        if self.machine {
            self.keys.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
        } else {
            self.human
        }
    }
}

/// Run a parsed command and return its report.
pub fn execute(cli: &Cli) -> Result<String> {
    let r = Report::new(cli.machine);
    let r = match &cli.command {
        Command::WgMoment { n, expr } => {
            let x = parse_snplus(&expr_text(expr)?, *n)?;
            r.value(x.haar()?)
        }
        Command::WgCharacter { n, k } => r.value(character_moment::<Rational>(*n, *k)?),
        Command::ExpectRow { n, row, expr } => {
            let x: SnPlus<Rational> = parse_snplus(&expr_text(expr)?, *n)?;
            r.value(x.cond_expect_row(*row)?)
        }
        Command::Haar { n, group, expr } => {
            let ctx = context(*n, group)?;
            r.value(parse_wreath(&expr_text(expr)?, &ctx)?.haar()?)
        }
        Command::HaarOracle2 { n, group, expr } => {
            let ctx = context(*n, group)?;
            r.value(parse_wreath(&expr_text(expr)?, &ctx)?.haar_semidirect_n2()?)
        }
        Command::KtheoryWreath { n, group, kdata_file } => {
            let kg = match (group, kdata_file) {
                (Some(g), _) => group_kdata(&parse_group_spec(g)?)?,
                (None, Some(p)) => kdata::parse_kpair(&read_file(p)?)?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            r.kpair(&wreath_k(&kg, *n)?)
        }
        Command::KtheoryReflection { n, s } => {
            let s = match s.trim() {
                "inf" | "infinity" | "oo" => None,
                t => Some(t.parse::<u64>().map_err(|_| QwError::OutOfRange(format!("bad --s `{t}`")))?),
            };
            r.kpair(&reflection_k(*n, s)?)
        }
        Command::KtheoryBs { n, bs, amalgamated } => {
            let parts: Vec<&str> = bs.split(',').map(str::trim).collect();
            let parse = |t: &str| t.parse::<i64>().map_err(|_| QwError::OutOfRange(format!("bad --bs `{bs}`")));
            if parts.len() != 2 {
                return Err(QwError::OutOfRange(format!("--bs expects n,m, got `{bs}`")));
            }
            r.solution(&bs_wreath_k(*n, parse(parts[0])?, parse(parts[1])?, *amalgamated)?)
        }
        Command::KtheorySl2z { n } => r.solution(&sl2z_wreath_k(*n)?),
        Command::KtheoryGraph { kdata_file } => {
            r.solution(&solve_six_term(&kdata::parse_graph(&read_file(kdata_file)?)?)?)
        }
        Command::Signature { n, s } => {
            let sig = reflection_signature(*n, *s)?;
            let text = render_signature(&sig);
            let mut r = r;
            r.line(text);
            for (v, m) in sig.iter().rev() {
                r.key(&format!("trace[{v}]"), m);
            }
            r
        }
    };
    Ok(r.finish())
}

/// Parse arguments, run, and return (exit code, stdout, stderr).
pub fn run<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    match execute(&cli) {
        Ok(out) => (0, out, String::new()),
        Err(e) => (e.code(), String::new(), format!("error: {e}\n")),
    }
}
