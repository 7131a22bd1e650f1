//! Command-line front end: argument parsing, character files, dispatch and
//! rendering of results as text or canonical JSON.

mod character;
mod render;

use std::fmt;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use postlie::sample::check_axioms;
use postlie::text::{
    parse_basis_word, parse_generator, parse_grade, parse_lelement, parse_multi_index, parse_polynomial,
    parse_uelement, parse_word,
};
use postlie::{
    comp_bracket, pl_bracket, pl_product, BasisWord, Character, Config, Engine, Functional, Grade, Space,
    TruncatedSeries, UElement,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use character::{load_character, parse_character};
use render::Rendered;

/// Exact computations with the post-Lie algebra of derivations on multi-indices.
#[derive(Parser, Debug)]
#[command(name = "postlie", version, about)]
pub struct Cli {
    /// Spatial dimension d (defaults to 1, or to the character file's value).
    #[arg(long, global = true)]
    pub dim: Option<usize>,
    /// Weight α of pure variables, as p/q in (0, 1) (default 2/5).
    #[arg(long, global = true)]
    pub alpha: Option<String>,
    /// L (graded subalgebra) or L0 (all generators).
    #[arg(long, global = true)]
    pub space: Option<String>,
    /// Grade budget or series cutoff, as p/q.
    #[arg(long = "max-hom", global = true)]
    pub max_hom: Option<String>,
    /// Emit canonically sorted JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials for randomized commands.
    #[arg(long, global = true, default_value_t = 100)]
    pub trials: usize,
    /// Character file (JSON); repeat for commands taking several.
    #[arg(long = "char", global = true)]
    pub chars: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Grade of a basis word or generator, or homogeneity of a multi-index.
    Grade { element: String },
    /// Post-Lie product x ▷ y in L.
    PlProd { x: String, y: String },
    /// Lie bracket [x, y] in L.
    PlBracket { x: String, y: String },
    /// Composition bracket ⟦x, y⟧ = x▷y − y▷x + [x, y].
    CompBracket { x: String, y: String },
    /// Normal-ordered form of a raw word such as `D{0:1|(0)} . P(1)`.
    NormalForm { word: String },
    /// Concatenation product in the enveloping algebra.
    Conc { u: String, v: String },
    /// The product u ▷̄ v.
    Gl { u: String, v: String },
    /// The product u ▷̄ v of two basis words by the closed expansion.
    GlExplicit { u: String, v: String },
    /// Coshuffle coproduct of an element.
    CopStar { u: String },
    /// Coproduct dual to ▷̄ (needs --max-hom).
    CopGl { v: String },
    /// ∗-product of two dual elements.
    Star { u: String, v: String },
    /// Θ(u ⊗ z^target).
    Theta { u: String, target: String },
    /// Coaction of the dual algebra on z^a (budget defaults to |a|).
    Comodule { a: String },
    /// Value of a character on the dual basis element of a word.
    CharEval { word: String },
    /// Convolution of the given characters: its table up to --max-hom, or its value on WORD.
    Convolve { word: Option<String> },
    /// Convolution inverse of a character: its table up to --max-hom, or its value on WORD.
    Inverse { word: Option<String> },
    /// Action of a character on a series truncated at --max-hom.
    CharAct { series: String },
    /// Dual action Γ_f on a polynomial with budget --max-hom.
    Gamma { poly: String },
    /// Λ(f ⊗ s) on a series truncated at --max-hom.
    Lambda { series: String },
    /// Randomized check of the post-Lie laws.
    CheckAxioms,
}

/// Failure categories, each with its own exit code.
#[derive(Debug)]
pub enum CliError {
    Parse(String),
    Config(String),
    Budget(String),
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Config(_) => 3,
            CliError::Budget(_) => 4,
            CliError::Internal(_) => 5,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, msg) = match self {
            CliError::Parse(m) => ("parse error", m),
            CliError::Config(m) => ("configuration error", m),
            CliError::Budget(m) => ("budget error", m),
            CliError::Internal(m) => ("internal error", m),
        };
        write!(f, "{kind}: {msg}")
    }
}

impl std::error::Error for CliError {}

impl From<postlie::Error> for CliError {
    fn from(e: postlie::Error) -> Self {
        use postlie::Error as E;
        let msg = e.to_string();
        match e {
            E::Parse { .. } | E::Dimension { .. } | E::InvalidGenerator { .. } => CliError::Parse(msg),
            E::Config(_) => CliError::Config(msg),
            E::Budget { .. } | E::Truncation { .. } => CliError::Budget(msg),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

/// Resolved settings shared by every command.
struct Session {
    cfg: Config,
    max_hom: Option<Grade>,
    chars: Vec<Character>,
}

impl Session {
    fn budget(&self, command: &str) -> CliResult<Grade> {
        self.max_hom.ok_or_else(|| CliError::Config(format!("{command} needs an explicit --max-hom")))
    }

    fn one_char(&self, command: &str) -> CliResult<&Character> {
        match self.chars.as_slice() {
            [c] => Ok(c),
            [] => Err(CliError::Config(format!("{command} needs a character file (--char)"))),
            _ => Err(CliError::Config(format!("{command} takes exactly one --char"))),
        }
    }

    fn header(&self) -> String {
        let max_hom = self.max_hom.map_or_else(|| "none".to_string(), |g| g.to_string());
        format!("# dim={} alpha={} space={} max_hom={}", self.cfg.dim, self.cfg.alpha, self.cfg.space, max_hom)
    }

    fn header_json(&self) -> Value {
        json!({
            "dim": self.cfg.dim,
            "alpha": self.cfg.alpha.to_string(),
            "space": self.cfg.space.to_string(),
            "max_hom": self.max_hom.map(|g| g.to_string()),
        })
    }
}

fn resolve(cli: &Cli) -> CliResult<Session> {
    let loaded: Vec<character::CharacterFile> =
        cli.chars.iter().map(|p| character::read_file(p)).collect::<CliResult<_>>()?;
    let flag_alpha = cli.alpha.as_deref().map(parse_grade).transpose()?;
    let flag_space = cli.space.as_deref().map(|s| s.parse::<Space>()).transpose()?;
    let pick = |flag: Option<String>, file: Vec<Option<String>>, what: &str| -> CliResult<Option<String>> {
        let mut chosen = flag;
        for v in file.into_iter().flatten() {
            match &chosen {
                Some(c) if *c != v => {
                    return Err(CliError::Config(format!("character file has {what} {v} but {c} is in effect")));
                }
                _ => chosen = Some(v),
            }
        }
        Ok(chosen)
    };
    let dim = pick(cli.dim.map(|d| d.to_string()), loaded.iter().map(|f| f.dim.map(|d| d.to_string())).collect(), "dim")?;
    let alpha = pick(
        flag_alpha.map(|a| a.to_string()),
        loaded
            .iter()
            .map(|f| f.alpha.as_deref().map(|a| parse_grade(a).map(|g| g.to_string())).transpose())
            .collect::<Result<_, _>>()?,
        "alpha",
    )?;
    let space = pick(flag_space.map(|s| s.to_string()), loaded.iter().map(|f| f.space.clone()).collect(), "space")?;
    let dim = dim.map_or(Ok(1), |d| d.parse::<usize>().map_err(|e| CliError::Config(format!("dim {d}: {e}"))))?;
    let alpha = alpha.map_or(Ok(Grade::new(2, 5)), |a| parse_grade(&a))?;
    let space = space.map_or(Ok(Space::L), |s| s.parse::<Space>())?;
    let cfg = Config::new(dim, alpha, space)?;
    let max_hom = cli.max_hom.as_deref().map(parse_grade).transpose()?;
    if let Some(m) = max_hom {
        if m < Grade::from_integer(0) {
            return Err(CliError::Config(format!("--max-hom {m} must be nonnegative")));
        }
    }
    let chars = loaded.iter().map(|f| f.to_character(&cfg)).collect::<CliResult<_>>()?;
    Ok(Session { cfg, max_hom, chars })
}

fn series(s: &Session, src: &str, cutoff: Grade) -> CliResult<TruncatedSeries> {
    let p = parse_polynomial(src, &s.cfg)?;
    Ok(TruncatedSeries::from_polynomial(s.cfg.dim, s.cfg.alpha, cutoff, &p))
}

/// A basis word, or a single generator standing for its one-letter word.
fn basis_or_generator(src: &str, cfg: &Config) -> CliResult<BasisWord> {
    let t = src.trim();
    if t.starts_with("P(") || t.starts_with("D{") {
        Ok(BasisWord::generator(cfg.dim, &parse_generator(t, cfg)?))
    } else {
        Ok(parse_basis_word(t, cfg)?)
    }
}

fn character_table(c: &Character) -> Rendered {
    Rendered::Character(c.clone())
}

fn compute(s: &Session, command: &Command, cli: &Cli) -> CliResult<Rendered> {
    let cfg = &s.cfg;
    let engine = Engine::new(cfg.clone());
    let dim = cfg.dim;
    Ok(match command {
        Command::Grade { element } => {
            let src = element.trim();
            let grade = if src.starts_with('{') {
                parse_multi_index(src, cfg)?.homogeneity(cfg.alpha)
            } else {
                basis_or_generator(src, cfg)?.grade(cfg.alpha)
            };
            Rendered::Grade(grade)
        }
        Command::PlProd { x, y } => {
            Rendered::LElement(pl_product(dim, &parse_lelement(x, cfg)?, &parse_lelement(y, cfg)?))
        }
        Command::PlBracket { x, y } => Rendered::LElement(pl_bracket(&parse_lelement(x, cfg)?, &parse_lelement(y, cfg)?)),
        Command::CompBracket { x, y } => {
            Rendered::LElement(comp_bracket(dim, &parse_lelement(x, cfg)?, &parse_lelement(y, cfg)?))
        }
        Command::NormalForm { word } => Rendered::UElement(engine.normal_form(&parse_word(word, cfg)?)?),
        Command::Conc { u, v } => Rendered::UElement(engine.conc(&parse_uelement(u, cfg)?, &parse_uelement(v, cfg)?)),
        Command::Gl { u, v } => Rendered::UElement(engine.gl(&parse_uelement(u, cfg)?, &parse_uelement(v, cfg)?)),
        Command::GlExplicit { u, v } => {
            Rendered::UElement(engine.gl_explicit(&parse_basis_word(u, cfg)?, &parse_basis_word(v, cfg)?))
        }
        Command::CopStar { u } => Rendered::Tensor(postlie::envelope::delta_star(&parse_uelement(u, cfg)?)),
        Command::CopGl { v } => {
            let budget = s.budget("cop-gl")?;
            Rendered::Tensor(engine.delta_gl(&parse_uelement(v, cfg)?, budget)?)
        }
        Command::Star { u, v } => {
            Rendered::UElement(postlie::duality::star_u(&parse_uelement(u, cfg)?, &parse_uelement(v, cfg)?))
        }
        Command::Theta { u, target } => {
            Rendered::Polynomial(engine.theta(&parse_basis_word(u, cfg)?, &parse_multi_index(target, cfg)?)?)
        }
        Command::Comodule { a } => {
            let a = parse_multi_index(a, cfg)?;
            let budget = s.max_hom.unwrap_or_else(|| a.homogeneity(cfg.alpha));
            Rendered::Coaction(engine.comodule_delta(&a, budget)?.as_ref().clone())
        }
        Command::CharEval { word } => {
            let f = s.one_char("char-eval")?;
            Rendered::Rational(f.eval(&basis_or_generator(word, cfg)?))
        }
        Command::Convolve { word } => {
            let budget = s.budget("convolve")?;
            if s.chars.len() < 2 {
                return Err(CliError::Config("convolve needs at least two --char files".into()));
            }
            match word {
                Some(w) => {
                    let w = basis_or_generator(w, cfg)?;
                    let (last, init) = s.chars.split_last().expect("at least two characters");
                    let mut acc: Functional = init[0].clone().into();
                    for c in &init[1..] {
                        acc = engine.convolve(&acc, &c.clone().into())?;
                    }
                    // Δ of the dual element Ē_w is reached through w!·E_w.
                    let v = UElement::term(w.clone(), postlie::Q::from_integer(w.factorial()));
                    Rendered::Rational(engine.convolve_eval(&acc, &last.clone().into(), &v, budget)?)
                }
                None => {
                    let mut acc = s.chars[0].clone();
                    for c in &s.chars[1..] {
                        acc = engine.convolve_characters(&acc, c, budget)?;
                    }
                    character_table(&acc)
                }
            }
        }
        Command::Inverse { word } => {
            let budget = s.budget("inverse")?;
            let f = s.one_char("inverse")?;
            match word {
                Some(w) => {
                    let w = basis_or_generator(w, cfg)?;
                    let g = w.grade(cfg.alpha);
                    if g > budget {
                        return Err(postlie::Error::Budget { budget, required: g }.into());
                    }
                    Rendered::Rational(engine.group_inverse(&f.clone().into())?.value(&w))
                }
                None => character_table(&engine.inverse_character(f, budget)?),
            }
        }
        Command::CharAct { series: src } => {
            let cutoff = s.budget("char-act")?;
            let f = s.one_char("char-act")?;
            Rendered::Series(engine.char_act(&f.clone().into(), &series(s, src, cutoff)?)?)
        }
        Command::Gamma { poly } => {
            let budget = s.budget("gamma")?;
            let f = s.one_char("gamma")?;
            Rendered::Polynomial(engine.gamma_act(&f.clone().into(), &parse_polynomial(poly, cfg)?, budget)?)
        }
        Command::Lambda { series: src } => {
            let cutoff = s.budget("lambda")?;
            let f = s.one_char("lambda")?;
            Rendered::Series(engine.lambda_act(&f.clone().into(), &series(s, src, cutoff)?)?)
        }
        Command::CheckAxioms => {
            let mut rng = ChaCha8Rng::seed_from_u64(cli.seed);
            Rendered::Axioms(check_axioms(&engine, &mut rng, cli.trials))
        }
    })
}

/// Runs a parsed command line and returns the text to print on stdout.
pub fn run_command(cli: &Cli) -> CliResult<String> {
    let session = resolve(cli)?;
    let result = compute(&session, &cli.command, cli)?;
    Ok(if cli.json {
        let doc = json!({ "config": session.header_json(), "result": result.to_json() });
        let mut out = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Internal(e.to_string()))?;
        out.push('\n');
        out
    } else {
        format!("{}\n{}\n", session.header(), result.to_text())
    })
}

/// Parses `args` (program name first) and runs the command.
pub fn run_args<I, T>(args: I) -> CliResult<String>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| CliError::Parse(e.to_string()))?;
    run_command(&cli)
}
