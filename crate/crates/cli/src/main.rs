mod render;

use std::collections::HashSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use stringalg::oracle::{run_all_checks, OracleBudget};
use stringalg::ranks::{BbVia, GraphMapDescriptor};
use stringalg::{
    parse_presentation, validate_string_algebra, Error, Op, Side, StringAlgebra, Word,
};

/// Combinatorics of string algebras.
#[derive(Parser)]
#[command(name = "stringalg", version)]
struct Cli {
    /// Presentation file (.sqa).
    file: PathBuf,
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the string algebra axioms.
    Validate,
    /// List strings up to a length.
    Strings {
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        /// Keep one of each string and its inverse.
        #[arg(long)]
        up_to_inverse: bool,
    },
    /// List bands up to a length, marking the prime ones.
    Bands {
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long)]
        up_to_inverse: bool,
    },
    /// List all prime bands.
    PrimeBands {
        #[arg(long)]
        up_to_inverse: bool,
    },
    /// List all band-free strings.
    BandFree,
    /// Print the bridge quiver.
    BridgeQuiver {
        /// Include lazy paths, half and zero bridges.
        #[arg(long)]
        extended: bool,
        /// Also show weak arrows that are not bridges.
        #[arg(long)]
        weak: bool,
        /// Write Graphviz output to a file, or to stdout when no file is given.
        #[arg(long, num_args = 0..=1, value_name = "FILE")]
        dot: Option<Option<PathBuf>>,
    },
    /// Domestic, torsion-free, meta-union-cyclic and meta-torsion-free tests.
    Classify,
    /// Direct successor or predecessor in a hammock.
    Hammock {
        #[arg(value_enum)]
        direction: Direction,
        #[arg(long, value_enum, default_value_t = SideArg::L)]
        side: SideArg,
        word: String,
    },
    /// Limit of iterating a hammock operator.
    Expand {
        #[arg(long, value_enum, default_value_t = OpArg::L)]
        op: OpArg,
        word: String,
    },
    /// A path in the extended bridge quiver generating a string.
    GeneratePath { word: String },
    /// Rank class of a graph map.
    Rank {
        #[command(subcommand)]
        kind: RankKind,
    },
    /// Stable rank of a meta-torsion-free algebra.
    StableRank,
    /// Brute-force cross-checks.
    Oracle {
        #[command(subcommand)]
        action: OracleAction,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Succ,
    Pred,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    L,
    R,
}

#[derive(Clone, Copy, ValueEnum)]
enum OpArg {
    L,
    Lbar,
    R,
    Rbar,
}

impl From<OpArg> for Op {
    fn from(o: OpArg) -> Op {
        match o {
            OpArg::L => Op::L,
            OpArg::Lbar => Op::LBar,
            OpArg::R => Op::R,
            OpArg::Rbar => Op::RBar,
        }
    }
}

#[derive(Subcommand)]
enum RankKind {
    /// String to string, through a factor substring of W that is an image substring of U.
    Ss { w: String, v: String, u: String },
    /// String to band module.
    Sb(BandArgs),
    /// Band to string module.
    Bs(BandArgs),
    /// Band to band module.
    Bb {
        band: String,
        band2: String,
        /// Factor through the string module of this word.
        #[arg(long, conflicts_with = "hom_basis")]
        via: Option<String>,
        /// Basis element between equal band modules.
        #[arg(long)]
        hom_basis: Option<String>,
    },
}

#[derive(Args)]
struct BandArgs {
    band: String,
    v: String,
    /// Band module parameters, kept as an opaque label.
    #[arg(long, default_value = "1,1")]
    label: String,
}

#[derive(Subcommand)]
enum OracleAction {
    /// Run every check.
    Check {
        /// Cap every length budget at this value.
        #[arg(long)]
        budget: Option<usize>,
    },
}

enum Failure {
    Parse(String),
    Precondition(String),
    Internal(String),
    /// Regular output that still signals failure.
    Report {
        code: u8,
        out: String,
    },
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let msg = e.to_string();
        match e {
            Error::Syntax { .. }
            | Error::UnknownVertex(_)
            | Error::UnknownArrow(_)
            | Error::NotComposable(_)
            | Error::NoVertices
            | Error::DuplicateId(_)
            | Error::NotAStringAlgebra(_)
            | Error::InconsistentSigns(_)
            | Error::BadWord { .. }
            | Error::BadDescriptor(_)
            | Error::BadPath(_) => Failure::Parse(msg),
            _ => Failure::Precondition(msg),
        }
    }
}

type Outcome = Result<String, Failure>;

fn emit(json: bool, value: Value, text: String) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(&value).unwrap_or_default();
        s.push('\n');
        s
    } else {
        text
    }
}

fn lines<I: IntoIterator<Item = String>>(items: I) -> String {
    items.into_iter().map(|s| s + "\n").collect()
}

fn load(text: &str) -> Result<StringAlgebra, Failure> {
    Ok(StringAlgebra::new(parse_presentation(text)?)?)
}

fn word(a: &StringAlgebra, literal: &str) -> Result<Word, Failure> {
    Ok(a.parse_word(literal)?)
}

/// Keeps the first of each word and its inverse.
fn dedupe_inverse(a: &StringAlgebra, ws: Vec<Word>) -> Vec<Word> {
    let mut seen = HashSet::new();
    ws.into_iter()
        .filter(|w| {
            let fresh = !seen.contains(&a.invert(w));
            seen.insert(w.clone());
            fresh
        })
        .collect()
}

fn run(cli: &Cli) -> Outcome {
    let text = std::fs::read_to_string(&cli.file)
        .map_err(|e| Failure::Parse(format!("{}: {e}", cli.file.display())))?;
    let json = cli.json;
    if let Command::Validate = cli.command {
        let p = parse_presentation(&text)?;
        let report = validate_string_algebra(&p);
        let mut out = String::new();
        for v in &report.violations {
            out.push_str(&format!("violation {}: {}\n", v.axiom, v.locus));
        }
        out.push_str(&format!("string algebra: {}\n", report.is_string_algebra));
        let value = serde_json::to_value(&report).map_err(|e| Failure::Internal(e.to_string()))?;
        let out = emit(json, value, out);
        return if report.is_string_algebra {
            Ok(out)
        } else {
            Err(Failure::Report { code: 1, out })
        };
    }
    let a = load(&text)?;
    match &cli.command {
        Command::Validate => unreachable!(),
        Command::Strings {
            max_len,
            up_to_inverse,
        } => {
            let mut ws = a.enumerate_strings(*max_len, false);
            if *up_to_inverse {
                ws = dedupe_inverse(&a, ws);
            }
            let text = lines(ws.iter().map(|w| a.render(w)));
            Ok(emit(
                json,
                json!({"max_len": max_len, "strings": render::words(&a, &ws)}),
                text,
            ))
        }
        Command::Bands {
            max_len,
            up_to_inverse,
        } => {
            let mut bands = Vec::new();
            let mut seen = HashSet::new();
            for w in a.enumerate_strings(*max_len, false) {
                if !w.is_lazy() && a.is_band(&w) {
                    let b = a.canonical_band(&w)?;
                    if seen.insert(b.rep.clone()) {
                        bands.push(b);
                    }
                }
            }
            if *up_to_inverse {
                let mut kept = HashSet::new();
                bands.retain(|b| {
                    let fresh = !kept.contains(&a.inverse_band(b).rep);
                    kept.insert(b.rep.clone());
                    fresh
                });
            }
            let text = lines(
                bands
                    .iter()
                    .map(|b| format!("{} prime={}", a.render(&b.rep), a.is_prime_band(b))),
            );
            let value: Vec<Value> = bands
                .iter()
                .map(|b| json!({"band": a.render(&b.rep), "prime": a.is_prime_band(b)}))
                .collect();
            Ok(emit(json, Value::from(value), text))
        }
        Command::PrimeBands { up_to_inverse } => {
            let mut reps = Vec::new();
            let mut seen = HashSet::new();
            for b in a.prime_bands() {
                if *up_to_inverse && seen.contains(&a.inverse_band(b).rep) {
                    continue;
                }
                seen.insert(b.rep.clone());
                reps.push(b.rep.clone());
            }
            let text = lines(reps.iter().map(|w| a.render(w)));
            Ok(emit(json, render::words(&a, &reps), text))
        }
        Command::BandFree => {
            let c = a.band_free();
            let text = lines(c.strings.iter().map(|w| a.render(w)));
            let value =
                json!({"length_bound": c.length_bound, "strings": render::words(&a, &c.strings)});
            Ok(emit(json, value, text))
        }
        Command::BridgeQuiver {
            extended,
            weak,
            dot,
        } => {
            let q = a.build_bridge_quiver(*extended, *weak);
            match dot {
                Some(Some(path)) => {
                    std::fs::write(path, a.to_dot(&q))
                        .map_err(|e| Failure::Precondition(format!("{}: {e}", path.display())))?;
                    Ok(String::new())
                }
                Some(None) => Ok(a.to_dot(&q)),
                None => {
                    let arrows = q.weak_arrows.as_ref().unwrap_or(&q.arrows);
                    let mut text = lines(
                        q.vertices
                            .iter()
                            .map(|v| format!("vertex {}", a.render_vertex(v))),
                    );
                    text.push_str(&lines(arrows.iter().map(|x| render::arrow_line(&a, x))));
                    Ok(emit(json, render::quiver(&a, &q), text))
                }
            }
        }
        Command::Classify => {
            let c = a.classify_algebra();
            let mut text = format!(
                "domestic: {}\ntorsion_free: {}\nmeta_union_cyclic: {}\nmeta_torsion_free: {}\n",
                c.domestic, c.torsion_free, c.meta_union_cyclic, c.meta_torsion_free
            );
            for (k, v) in &c.witnesses {
                text.push_str(&format!("{k}: {v}\n"));
            }
            let value = serde_json::to_value(&c).map_err(|e| Failure::Internal(e.to_string()))?;
            Ok(emit(json, value, text))
        }
        Command::Hammock {
            direction,
            side,
            word: lit,
        } => {
            let u = word(&a, lit)?;
            let h = match side {
                SideArg::L => a.left_hammock_of(&u),
                SideArg::R => a.right_hammock_of(&u),
            };
            let n = match direction {
                Direction::Succ => a.successor(&u, h)?,
                Direction::Pred => a.predecessor(&u, h)?,
            };
            let shown = n.as_ref().map(|w| a.render(w));
            let side = if h.side == Side::L { "l" } else { "r" };
            let key = match direction {
                Direction::Succ => "successor",
                Direction::Pred => "predecessor",
            };
            let text = format!("{}\n", shown.clone().unwrap_or_else(|| "undefined".into()));
            Ok(emit(
                json,
                json!({"word": a.render(&u), "side": side, key: shown}),
                text,
            ))
        }
        Command::Expand { op, word: lit } => {
            let u = word(&a, lit)?;
            let e = a.one_sided_expansion(&u, (*op).into());
            Ok(emit(
                json,
                render::expansion(&a, &e),
                format!("{}\n", a.render_expansion(&e)),
            ))
        }
        Command::GeneratePath { word: lit } => {
            let u = word(&a, lit)?;
            let p = a.find_generating_path(&u).ok_or_else(|| {
                Failure::Internal(format!("no generating path for {}", a.render(&u)))
            })?;
            let back = a.generate_string(&p)?;
            if back != u {
                return Err(Failure::Internal(format!(
                    "path generates {}",
                    a.render(&back)
                )));
            }
            let value = json!({
                "word": a.render(&u),
                "path": a.render_path(&p),
                "arrows": p.arrows.iter().map(|x| render::arrow(&a, x)).collect::<Vec<_>>(),
                "exponents": p.exponents,
            });
            Ok(emit(json, value, format!("{}\n", a.render_path(&p))))
        }
        Command::Rank { kind } => {
            let d = match kind {
                RankKind::Ss { w, v, u } => GraphMapDescriptor::Ss {
                    w: word(&a, w)?,
                    v: word(&a, v)?,
                    u: word(&a, u)?,
                },
                RankKind::Sb(b) => GraphMapDescriptor::Sb {
                    v: word(&a, &b.v)?,
                    band: word(&a, &b.band)?,
                    label: b.label.clone(),
                },
                RankKind::Bs(b) => GraphMapDescriptor::Bs {
                    band: word(&a, &b.band)?,
                    v: word(&a, &b.v)?,
                    label: b.label.clone(),
                },
                RankKind::Bb {
                    band,
                    band2,
                    via,
                    hom_basis,
                } => {
                    let via = match (via, hom_basis) {
                        (Some(s), _) => BbVia::String(word(&a, s)?),
                        (None, Some(h)) => BbVia::HomBasis(h.clone()),
                        (None, None) => {
                            return Err(Failure::Parse("bb needs --via or --hom-basis".into()));
                        }
                    };
                    GraphMapDescriptor::Bb {
                        band: word(&a, band)?,
                        via,
                        band2: word(&a, band2)?,
                    }
                }
            };
            let r = a.rank(&d)?;
            Ok(emit(
                json,
                render::rank(&a, &r),
                format!("{}\n", render::rank_text(&a, &r)),
            ))
        }
        Command::StableRank => {
            let e = a.stable_rank_estimate()?;
            Ok(emit(
                json,
                render::stable_rank(&a, &e),
                format!("{}\n", e.value),
            ))
        }
        Command::Oracle {
            action: OracleAction::Check { budget },
        } => {
            let budget = budget.map_or_else(OracleBudget::default, OracleBudget::capped);
            let reports = run_all_checks(&a, &budget);
            let value =
                serde_json::to_value(&reports).map_err(|e| Failure::Internal(e.to_string()))?;
            let out = emit(json, value, render::oracle_table(&reports));
            if reports.iter().all(|r| r.passed()) {
                Ok(out)
            } else {
                Err(Failure::Report { code: 3, out })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = std::panic::catch_unwind(|| run(&cli))
        .unwrap_or_else(|_| Err(Failure::Internal("internal error".into())));
    match outcome {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(msg)) => {
            eprint!("{}", with_newline(msg));
            ExitCode::from(1)
        }
        Err(Failure::Precondition(msg)) => {
            eprint!("{}", with_newline(msg));
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprint!("{}", with_newline(msg));
            ExitCode::from(3)
        }
        Err(Failure::Report { code, out }) => {
            print!("{out}");
            ExitCode::from(code)
        }
    }
}

fn with_newline(mut s: String) -> String {
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s
}
