use clap::{Parser, Subcommand, ValueEnum};
use digraph_hopf::calculus::Calculus;
use digraph_hopf::digraph::{double, parse_digraph, Digraph};
use digraph_hopf::groupoid::{
    abelianization, enumerate_arrows, free_groupoid, fundamental_groupoid, h1, pi1_presentation, tietze_simplify,
    word_equal, ArrowCount, GroupoidPresentation, WordEq,
};
use digraph_hopf::hopf::{
    check_antipode, check_bialgebroid, check_coring, check_translation, check_well_defined, dx_hopf, hx1_hopf,
    HopfPresentation,
};
use digraph_hopf::isotopy::{digraph_iso_dx, digraph_iso_hx1, isotopy_quotient, verify_iso_dx, verify_iso_hx1};
use digraph_hopf::path_algebra::{parse_elem, IdealFamily};
use digraph_hopf::presentations::{dx_relations, hx1_relations};
use digraph_hopf::report::Report;
use serde_json::{json, Value};
use std::io::Write;
use std::process::ExitCode;

const WORD_HELP: &str = "\
Groupoid words: the letter for an edge s->t is (t<s), its inverse (t<s)^-1,
the empty word at v is (v), and '.' composes with the right factor applied
first, so the path p->q->r is written (r<q).(q<p).

Algebra elements: terms joined by + or -, each a '*' product of an optional
rational coefficient and generator labels: vertices (p|q), edges L[a>b,c>d],
R[a>b,c>d], LY[a>b,q], RY[c>d,p]. The leftmost factor is applied last.

Exit codes: 0 all pass / Equal / Zero / Finite, 1 definite failure,
2 Unknown or NotStabilized present, 3 input error.
The default degree is 4, or HOPF_DEFAULT_DEGREE when set.";

#[derive(Parser)]
#[command(name = "digraph-hopf", about = "Hopf algebroids and fundamental groupoids of digraphs", after_help = WORD_HELP)]
struct Cli {
    /// Suppress the summary on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algebra {
    Hx1,
    Dx,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Calculus,
    Coring,
    Bialgebroid,
    Antipode,
    Translation,
    WellDefined,
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum Relators {
    Free,
    Fundamental,
}

#[derive(Subcommand)]
enum Cmd {
    /// The double quiver.
    Double { graph: String },
    /// Relations of H𝔛¹ or D𝔛.
    Presentation { algebra: Algebra, graph: String },
    /// Run axiom checks and emit a report.
    Check {
        graph: String,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "hx1")]
        algebra: Algebra,
    },
    /// Groupoid presented by the isotopy quotient.
    Iso {
        algebra: Algebra,
        graph: String,
        /// Also certify the collapse in the quotient algebra.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Isotropy group of Π_D at a vertex.
    Pi1 {
        graph: String,
        #[arg(long)]
        base: String,
        #[arg(long)]
        simplify: bool,
        #[arg(long, default_value_t = 100)]
        budget: usize,
    },
    /// First homology of the presentation complex of Π_D.
    H1 { graph: String },
    /// Bounded word problem in Π_D.
    WordEq {
        graph: String,
        w1: String,
        w2: String,
        #[arg(long, default_value_t = 8)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "fundamental")]
        relators: Relators,
    },
    /// Count arrows of Π_D by bounded enumeration.
    Arrows {
        graph: String,
        #[arg(long, default_value_t = 6)]
        cap: usize,
    },
    /// Membership of an element in the relation ideal.
    IdealMember {
        graph: String,
        #[arg(long)]
        element: String,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long, value_enum, default_value = "hx1")]
        algebra: Algebra,
        /// Work in the isotopy quotient.
        #[arg(long)]
        iso: bool,
    },
}

struct Out {
    json: Value,
    summary: String,
    code: u8,
}

/// Exit code and diagnostic.
type Fail = (u8, String);

fn input_err(msg: impl std::fmt::Display) -> Fail {
    (3, msg.to_string())
}

fn load(path: &str) -> Result<Digraph, Fail> {
    let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{path}: {e}")))?;
    parse_digraph(&text).map_err(|e| input_err(format!("{path}: {e}")))
}

fn default_degree() -> Result<usize, Fail> {
    match std::env::var("HOPF_DEFAULT_DEGREE") {
        Ok(v) => v.trim().parse().map_err(|_| input_err(format!("HOPF_DEFAULT_DEGREE: not a degree: {v}"))),
        Err(_) => Ok(4),
    }
}

fn degree(d: Option<usize>) -> Result<usize, Fail> {
    d.map_or_else(default_degree, Ok)
}

// D𝔛 on a non-flat calculus is a definite failure, not bad input
fn hopf(d: &Digraph, a: Algebra) -> Result<HopfPresentation, Fail> {
    match a {
        Algebra::Hx1 => Ok(hx1_hopf(d)),
        Algebra::Dx => dx_hopf(d).map_err(|e| (1, e.to_string())),
    }
}

fn report_out(r: Report) -> Out {
    let code = r.exit_code() as u8;
    Out { summary: r.to_string(), json: serde_json::to_value(&r).expect("serializable"), code }
}

fn groupoid_pres(d: &Digraph, r: Relators) -> GroupoidPresentation {
    match r {
        Relators::Free => free_groupoid(d),
        Relators::Fundamental => fundamental_groupoid(d),
    }
}

fn run(cmd: Cmd) -> Result<Out, Fail> {
    Ok(match cmd {
        Cmd::Double { graph } => {
            let dq = double(&load(&graph)?);
            let [l, r, ly, ry] = dq.family_counts();
            Out {
                summary: format!("{} vertices, edges by family {l}/{r}/{ly}/{ry}", dq.quiver.vertex_count()),
                json: dq.to_json(),
                code: 0,
            }
        }
        Cmd::Presentation { algebra, graph } => {
            let d = load(&graph)?;
            let p = match algebra {
                Algebra::Hx1 => hx1_relations(&d),
                Algebra::Dx => dx_relations(&d),
            };
            Out { summary: format!("{} relations", p.relations.len()), json: p.to_json(), code: 0 }
        }
        Cmd::Check { graph, suite, degree: n, algebra } => {
            let d = load(&graph)?;
            let n = degree(n)?;
            let mut r = Report::new("check", n);
            if matches!(suite, Suite::Calculus | Suite::All) {
                r.merge(Calculus::new(&d).check_all());
            }
            if !matches!(suite, Suite::Calculus) {
                let hp = hopf(&d, algebra)?;
                match suite {
                    Suite::Coring => r.merge(check_coring(&hp, n)),
                    Suite::Bialgebroid => r.merge(check_bialgebroid(&hp, n)),
                    Suite::Antipode => r.merge(check_antipode(&hp, n)),
                    Suite::Translation => r.merge(check_translation(&hp, n)),
                    Suite::WellDefined => r.merge(check_well_defined(&hp, n)),
                    _ => r.merge(digraph_hopf::hopf::check_all(&hp, n)),
                }
            }
            report_out(r)
        }
        Cmd::Iso { algebra, graph, verify, degree: n } => {
            let d = load(&graph)?;
            let pres = match algebra {
                Algebra::Hx1 => digraph_iso_hx1(&d),
                Algebra::Dx => digraph_iso_dx(&d),
            };
            let mut json = json!({ "presentation": pres.to_json() });
            let mut summary = format!("{} generators, {} relators", d.edge_count(), pres.relators.len());
            let mut code = 0;
            if verify {
                let n = degree(n)?;
                let r = match algebra {
                    Algebra::Hx1 => verify_iso_hx1(&d, n),
                    Algebra::Dx => verify_iso_dx(&d, n).map_err(|e| (1, e.to_string()))?,
                };
                code = r.exit_code() as u8;
                summary = format!("{summary}\n{r}");
                json["verification"] = serde_json::to_value(&r).expect("serializable");
            }
            Out { json, summary, code }
        }
        Cmd::Pi1 { graph, base, simplify, budget } => {
            let d = load(&graph)?;
            let mut gp = pi1_presentation(&fundamental_groupoid(&d), &base).map_err(input_err)?;
            if simplify {
                gp = tietze_simplify(&gp, budget);
            }
            let ab = abelianization(&gp);
            Out {
                summary: format!("{} generators, {} relators", gp.generators.len(), gp.relators.len()),
                json: json!({ "presentation": gp.to_json(), "abelianization": ab.to_json() }),
                code: 0,
            }
        }
        Cmd::H1 { graph } => {
            let ab = h1(&fundamental_groupoid(&load(&graph)?));
            Out { summary: format!("free rank {}, torsion {:?}", ab.free_rank, ab.torsion), json: ab.to_json(), code: 0 }
        }
        Cmd::WordEq { graph, w1, w2, max_len, relators } => {
            let d = load(&graph)?;
            let pres = groupoid_pres(&d, relators);
            let a = pres.parse_word(&w1).map_err(input_err)?;
            let b = pres.parse_word(&w2).map_err(input_err)?;
            match word_equal(&pres, &a, &b, max_len).map_err(input_err)? {
                WordEq::Equal(steps) => Out {
                    summary: format!("Equal after {} rewrites", steps.len()),
                    json: json!({ "result": "Equal", "certificate": steps }),
                    code: 0,
                },
                WordEq::Unknown => Out {
                    summary: format!("Unknown at length cap {max_len}"),
                    json: json!({ "result": "Unknown", "max_len": max_len }),
                    code: 2,
                },
            }
        }
        Cmd::Arrows { graph, cap } => {
            let count = enumerate_arrows(&fundamental_groupoid(&load(&graph)?), cap);
            let (json, code) = match count {
                ArrowCount::Finite(k) => (json!({ "result": "Finite", "count": k, "heuristic": true }), 0),
                ArrowCount::NotStabilized => (json!({ "result": "NotStabilized", "cap": cap }), 2),
            };
            Out { summary: format!("{count:?} (stabilization heuristic)"), json, code }
        }
        Cmd::IdealMember { graph, element, degree: n, algebra, iso } => {
            let d = load(&graph)?;
            let n = degree(n)?;
            let mut hp = hopf(&d, algebra)?;
            if iso {
                hp = isotopy_quotient(&hp);
            }
            let x = parse_elem(&hp.quiver, &element).map_err(input_err)?;
            let fam = IdealFamily::new(&hp.quiver, hp.relation_elements(), n);
            let found = fam.minimal(x.max_len().min(n), |o| o.nf(&x).is_zero());
            match found {
                Some(m) => Out {
                    summary: format!("Zero at degree {m}"),
                    json: json!({ "result": "Zero", "minimal_N": m }),
                    code: 0,
                },
                None => Out {
                    summary: format!("Unknown up to degree {n}"),
                    json: json!({ "result": "Unknown", "degree": n }),
                    code: 2,
                },
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let help = matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion);
            let _ = e.print();
            return ExitCode::from(if help { 0 } else { 3 });
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            // a closed pipe downstream is not an error of ours
            let _ = writeln!(std::io::stdout(), "{}", serde_json::to_string_pretty(&out.json).expect("serializable"));
            if !cli.quiet {
                eprintln!("{}", out.summary);
            }
            ExitCode::from(out.code)
        }
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
