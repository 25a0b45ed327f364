use std::fmt::Debug;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use ribbonlab::census::{self, CensusOptions};
use ribbonlab::characteristic::{self, ChiMode};
use ribbonlab::elliptic::{self, EllipticCase};
use ribbonlab::json::{graph_from_json, graph_to_json, metric_to_json, GraphInput};
use ribbonlab::rational::{self, Rational};
use ribbonlab::strebel::{self, StrebelCase};
use ribbonlab::symmetry;
use ribbonlab::uniformization::{self, ChartId, SurfacePoint};
use ribbonlab::verify::{Verifier, VerifyOptions};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(
    name = "ribbonlab",
    version,
    about = "Ribbon graphs, moduli space Euler characteristics and Belyi maps"
)]
struct Cli {
    /// Emit JSON, to FILE when given and to stdout otherwise.
    #[arg(long, global = true, value_name = "FILE", num_args = 0..=1, default_missing_value = "-")]
    json: Option<PathBuf>,
    /// Worker threads for the census and verification; 0 picks automatically.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    /// Largest edge count a census may search. Overrides RIBBONLAB_MAX_EDGES.
    #[arg(long, global = true)]
    max_edges: Option<usize>,
    /// Admit vertices of degree 1 and 2 in the census.
    #[arg(long, global = true)]
    relaxed_degrees: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Isomorphism classes of ribbon graphs of genus g with n boundary cycles.
    Census {
        g: usize,
        n: usize,
        /// List boundary-labelled classes instead.
        #[arg(long)]
        labeled: bool,
    },
    /// Orbifold Euler characteristic of the moduli space.
    Chi {
        g: usize,
        n: usize,
        /// Also evaluate the zeta-value closed form.
        #[arg(long)]
        closed_form: bool,
        /// Also sum over boundary-labelled classes.
        #[arg(long)]
        labeled: bool,
    },
    /// Automorphism group of a graph.
    Aut { graph: PathBuf },
    /// Contract one edge joining two distinct vertices.
    Contract {
        graph: PathBuf,
        #[arg(long)]
        edge: usize,
    },
    /// All one-edge expansions of a vertex.
    Expand {
        graph: PathBuf,
        #[arg(long)]
        vertex: usize,
    },
    /// Strebel differential on the thrice-punctured sphere with the given perimeters.
    Strebel03 {
        #[arg(allow_hyphen_values = true)]
        a0: String,
        #[arg(allow_hyphen_values = true)]
        a1: String,
        #[arg(allow_hyphen_values = true)]
        ainf: String,
    },
    /// Evaluate the Belyi map of an integer-length graph.
    Belyi {
        graph: PathBuf,
        /// Point as DART:RE:IM in the strip chart of DART.
        #[arg(long, value_name = "DART:RE:IM", allow_hyphen_values = true)]
        at: String,
    },
    /// The bipartite child's drawing of a graph.
    Dessin {
        graph: PathBuf,
        /// Write Graphviz DOT to FILE.
        #[arg(long, value_name = "FILE")]
        dot: Option<PathBuf>,
    },
    /// Ramification of the Belyi map over 0, 1 and infinity.
    Profile { graph: PathBuf },
    /// Normalized square or hexagonal lattice and its pullback identity.
    Elliptic {
        #[arg(long = "case", value_enum)]
        case: CaseArg,
        /// Include residuals over sample points.
        #[arg(long)]
        report: bool,
        #[arg(long, default_value_t = ribbonlab::verify::ELLIPTIC_SAMPLES)]
        samples: usize,
    },
    /// Run every acceptance criterion.
    Verify {
        /// Also run the genus-two census.
        #[arg(long)]
        stretch: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Square,
    Hexagonal,
}

impl From<CaseArg> for EllipticCase {
    fn from(c: CaseArg) -> Self {
        match c {
            CaseArg::Square => EllipticCase::Square,
            CaseArg::Hexagonal => EllipticCase::Hexagonal,
        }
    }
}

enum Failure {
    Usage(String),
    Domain { name: String, message: String },
}

fn domain<E: Debug + std::fmt::Display>(kind: &str) -> impl Fn(E) -> Failure + '_ {
    move |e| {
        let debug = format!("{e:?}");
        let variant: String = debug.chars().take_while(|c| c.is_alphanumeric() || *c == '_').collect();
        Failure::Domain {
            name: format!("{kind}::{variant}"),
            message: e.to_string(),
        }
    }
}

/// A command's result: a JSON payload and its plain-text rendering.
struct Output {
    payload: Value,
    text: String,
    /// Non-zero exit without an error message, used by `verify`.
    failed: bool,
}

impl Output {
    fn new(payload: Value, text: String) -> Self {
        Output {
            payload,
            text,
            failed: false,
        }
    }
}

/// Compact JSON with every float written to 17 significant digits.
struct Formatter;

impl serde_json::ser::Formatter for Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }
}

fn render_json(value: &Value) -> String {
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, Formatter);
    serde::Serialize::serialize(value, &mut ser).expect("JSON values serialize");
    String::from_utf8(out).expect("serde_json writes UTF-8") + "\n"
}

fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_c(z: Complex64) -> String {
    format!(
        "{} {} {}i",
        fmt_f64(z.re),
        if z.im < 0.0 { '-' } else { '+' },
        fmt_f64(z.im.abs())
    )
}

fn read_graph(path: &Path) -> Result<GraphInput, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Domain {
        name: "IoError".into(),
        message: format!("{}: {e}", path.display()),
    })?;
    graph_from_json(&text).map_err(domain("JsonError"))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Domain {
        name: "IoError".into(),
        message: format!("{}: {e}", path.display()),
    })
}

fn parse_rational(text: &str) -> Result<Rational, Failure> {
    rational::parse(text).map_err(|_| Failure::Usage(format!("not a rational number: {text:?}")))
}

fn census_options(cli: &Cli) -> CensusOptions {
    let mut opts = CensusOptions::from_env();
    if let Some(m) = cli.max_edges {
        opts.max_edges = m;
    }
    opts.jobs = cli.jobs;
    opts.relaxed_degrees = cli.relaxed_degrees;
    opts
}

fn permutation_list(perms: &[ribbonlab::Permutation]) -> Vec<&[usize]> {
    perms.iter().map(|p| p.images()).collect()
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Census { g, n, labeled } => {
            let opts = census_options(cli);
            let err = domain("CensusError");
            if *labeled {
                let lc = census::enumerate_labeled(*g, *n, &opts).map_err(err)?;
                let mut text = format!("{} boundary-labelled classes for g = {g}, n = {n}\n", lc.classes.len());
                for c in &lc.classes {
                    let e = &lc.census.entries[c.entry];
                    text += &format!(
                        "graph {} labels {:?} stabilizer {} (sigma {:?}, alpha {:?})\n",
                        c.entry, c.labeling, c.stabilizer_order, e.form.sigma, e.form.alpha
                    );
                }
                let payload = json!({
                    "g": g,
                    "n": n,
                    "count": lc.classes.len(),
                    "graphs": lc.census.entries,
                    "classes": lc.classes,
                });
                Ok(Output::new(payload, text))
            } else {
                let c = census::enumerate(*g, *n, &opts).map_err(err)?;
                let mut text = format!("{} ribbon graphs for g = {g}, n = {n}\n", c.len());
                for (i, e) in c.entries.iter().enumerate() {
                    text += &format!(
                        "{i}: v = {} e = {} |Aut| = {} |Aut_b| = {}{} sigma {:?} alpha {:?}\n",
                        e.vertices,
                        e.edges,
                        e.aut_order,
                        e.aut_boundary_order,
                        if e.exceptional { " exceptional" } else { "" },
                        e.form.sigma,
                        e.form.alpha
                    );
                }
                let payload = json!({ "g": g, "n": n, "count": c.len(), "graphs": c.entries });
                Ok(Output::new(payload, text))
            }
        }
        Command::Chi {
            g,
            n,
            closed_form,
            labeled,
        } => {
            let mut opts = census_options(cli);
            opts.relaxed_degrees = false;
            let c = census::enumerate(*g, *n, &opts).map_err(domain("CensusError"))?;
            let chi = domain("ChiError");
            let plain = characteristic::chi_sum(&c, ChiMode::Plain).map_err(&chi)?;
            let orbifold = characteristic::chi_sum(&c, ChiMode::Orbifold).map_err(&chi)?;
            let mut payload = json!({
                "g": g,
                "n": n,
                "graphs": c.len(),
                "chi_plain": rational::format(&plain),
                "chi_orbifold": rational::format(&orbifold),
            });
            let mut text = format!(
                "chi plain    = {}\nchi orbifold = {}\n",
                rational::format(&plain),
                rational::format(&orbifold)
            );
            if *labeled {
                let l = characteristic::chi_sum(&c, ChiMode::Labeled).map_err(&chi)?;
                payload["chi_labeled"] = json!(rational::format(&l));
                text += &format!("chi labeled  = {}\n", rational::format(&l));
            }
            if *closed_form {
                let f = characteristic::chi_closed_form(*g, *n).map_err(&chi)?;
                payload["closed_form"] = json!(rational::format(&f));
                text += &format!("closed form  = {}\n", rational::format(&f));
            }
            Ok(Output::new(payload, text))
        }
        Command::Aut { graph } => {
            let input = read_graph(graph)?;
            let aut = symmetry::automorphisms(&input.graph);
            let generators = aut.generators();
            let exceptional = symmetry::is_exceptional(&input.graph);
            let payload = json!({
                "order": aut.order(),
                "generators": permutation_list(&generators),
                "edge_kernel_order": aut.edge_kernel_order(),
                "exceptional": exceptional,
            });
            let mut text = format!(
                "order {}\nedge kernel order {}\nexceptional {exceptional}\n",
                aut.order(),
                aut.edge_kernel_order()
            );
            for g in &generators {
                text += &format!("generator {:?}\n", g.images());
            }
            Ok(Output::new(payload, text))
        }
        Command::Contract { graph, edge } => {
            let input = read_graph(graph)?;
            if *edge >= input.graph.edge_count() {
                return Err(Failure::Usage(format!(
                    "edge {edge} out of range, the graph has {} edges",
                    input.graph.edge_count()
                )));
            }
            let contracted = input.graph.contract_edge(*edge).map_err(domain("MapError"))?;
            let payload = graph_to_json(&contracted, None);
            let text = format!(
                "v = {} e = {} b = {} g = {}\n{}",
                contracted.vertex_count(),
                contracted.edge_count(),
                contracted.boundary_count(),
                contracted.genus().map_err(domain("MapError"))?,
                render_json(&payload)
            );
            Ok(Output::new(payload, text))
        }
        Command::Expand { graph, vertex } => {
            let input = read_graph(graph)?;
            if *vertex >= input.graph.vertex_count() {
                return Err(Failure::Usage(format!(
                    "vertex {vertex} out of range, the graph has {} vertices",
                    input.graph.vertex_count()
                )));
            }
            let expansions = input.graph.expansions_at_vertex(*vertex).map_err(domain("MapError"))?;
            let graphs: Vec<Value> = expansions.iter().map(|g| graph_to_json(g, None)).collect();
            let mut text = format!("{} expansions\n", graphs.len());
            for g in &graphs {
                text += &render_json(g);
            }
            Ok(Output::new(json!({ "count": graphs.len(), "graphs": graphs }), text))
        }
        Command::Strebel03 { a0, a1, ainf } => {
            let (a0, a1, ainf) = (parse_rational(a0)?, parse_rational(a1)?, parse_rational(ainf)?);
            let s = strebel::solve_m03(&a0, &a1, &ainf).map_err(domain("StrebelError"))?;
            let case = match s.case {
                StrebelCase::Positive => "positive".to_string(),
                StrebelCase::Zero(p) => format!("zero at {p:?}"),
                StrebelCase::Negative(p) => format!("negative at {p:?}"),
            };
            let q = |xs: &[Rational]| xs.iter().map(rational::format).collect::<Vec<_>>();
            let zeros: Vec<[f64; 2]> = s.zeros.iter().map(|z| [z.re, z.im]).collect();
            let payload = json!({
                "perimeters": q(&s.perimeters),
                "case": case,
                "coefficients": q(&s.coefficients),
                "discriminant": rational::format(&s.discriminant),
                "zeros": zeros,
                "lengths": q(&s.lengths),
                "boundary_poles": s.boundary_poles.iter().map(|p| format!("{p:?}")).collect::<Vec<_>>(),
                "graph": metric_to_json(&s.graph),
            });
            let text = format!(
                "case {case}\ncoefficients (a, b, c) = ({})\ndiscriminant {}\nzeros {} and {}\nlengths (L1, L2, L3) = ({})\ngraph {}",
                q(&s.coefficients).join(", "),
                rational::format(&s.discriminant),
                fmt_c(s.zeros[0]),
                fmt_c(s.zeros[1]),
                q(&s.lengths).join(", "),
                render_json(&metric_to_json(&s.graph))
            );
            Ok(Output::new(payload, text))
        }
        Command::Belyi { graph, at } => {
            let point = parse_point(at)?;
            let input = read_graph(graph)?;
            let metric = input.metric().map_err(domain("MapError"))?;
            if let ChartId::Strip(d) = point.chart {
                if d >= metric.graph().n_darts() {
                    return Err(Failure::Usage(format!("dart {d} out of range")));
                }
            }
            let atlas = uniformization::build_atlas(&metric);
            let value = atlas.belyi_evaluate(&point).map_err(domain("UniformizationError"))?;
            let payload = if value.re.is_finite() {
                json!({ "at": at, "value": [value.re, value.im], "pole": false })
            } else {
                json!({ "at": at, "value": null, "pole": true })
            };
            let text = if value.re.is_finite() {
                format!("f = {}\n", fmt_c(value))
            } else {
                "f = infinity\n".to_string()
            };
            Ok(Output::new(payload, text))
        }
        Command::Dessin { graph, dot } => {
            let input = read_graph(graph)?;
            let base = match &input.lengths {
                Some(_) => {
                    let metric = input.metric().map_err(domain("MapError"))?;
                    uniformization::unit_subdivision(&metric).map_err(domain("UniformizationError"))?
                }
                None => input.graph.clone(),
            };
            let d = uniformization::dessin(&base);
            if let Some(path) = dot {
                write_file(path, &d.to_dot())?;
            }
            let text = format!(
                "black degrees {:?}\nwhite degrees {:?}\n",
                d.black_degrees(),
                d.white_degrees()
            );
            Ok(Output::new(d.to_json(), text))
        }
        Command::Profile { graph } => {
            let input = read_graph(graph)?;
            let metric = input.metric().map_err(domain("MapError"))?;
            let p = uniformization::ramification_profile_metric(&metric).map_err(domain("UniformizationError"))?;
            let (lhs, rhs) = p.riemann_hurwitz();
            let mut payload = serde_json::to_value(&p).expect("profiles serialize");
            payload["riemann_hurwitz"] = json!([lhs, rhs]);
            let text = format!(
                "degree {}\ngenus {}\nover 0: {:?}\nover 1: {:?}\nover infinity: {:?}\nRiemann-Hurwitz {lhs} = {rhs}\n",
                p.degree, p.genus, p.over_zero, p.over_one, p.over_infinity
            );
            Ok(Output::new(payload, text))
        }
        Command::Elliptic { case, report, samples } => {
            let case = EllipticCase::from(*case);
            if *report {
                let r = elliptic::report(case, *samples).map_err(domain("EllipticError"))?;
                let payload = serde_json::to_value(&r).expect("reports serialize");
                let text = format!(
                    "tau {}\nscale {}\ng2 {}\ng3 {}\ne-value error {}\npullback residual {}\nODE residual {}\nsamples {}\n",
                    fmt_c(r.tau),
                    fmt_c(r.scale),
                    fmt_c(r.g2),
                    fmt_c(r.g3),
                    fmt_f64(r.e_value_error),
                    fmt_f64(r.pullback_residual),
                    fmt_f64(r.ode_residual),
                    r.samples
                );
                Ok(Output::new(payload, text))
            } else {
                let lattice = elliptic::normalized(case);
                let (g2, g3) = lattice.invariants();
                let payload = json!({
                    "case": case,
                    "tau": lattice.tau,
                    "scale": lattice.scale,
                    "g2": g2,
                    "g3": g3,
                });
                let text = format!(
                    "tau {}\nscale {}\ng2 {}\ng3 {}\n",
                    fmt_c(lattice.tau),
                    fmt_c(lattice.scale),
                    fmt_c(g2),
                    fmt_c(g3)
                );
                Ok(Output::new(payload, text))
            }
        }
        Command::Verify { stretch } => {
            let mut verifier = Verifier::new(VerifyOptions {
                jobs: cli.jobs,
                include_stretch: *stretch,
            });
            let results = verifier.run_all();
            let failed = results.iter().any(|r| r.gating && !r.passed);
            let text: String = results.iter().map(|r| format!("{r}\n")).collect();
            let payload = json!({ "passed": !failed, "criteria": results });
            Ok(Output { payload, text, failed })
        }
    }
}

fn parse_point(text: &str) -> Result<SurfacePoint, Failure> {
    let bad = || Failure::Usage(format!("expected DART:RE:IM, got {text:?}"));
    let parts: Vec<&str> = text.split(':').collect();
    let [dart, re, im] = parts[..] else {
        return Err(bad());
    };
    let dart: usize = dart.parse().map_err(|_| bad())?;
    let re: f64 = re.parse().map_err(|_| bad())?;
    let im: f64 = im.parse().map_err(|_| bad())?;
    Ok(SurfacePoint::new(ChartId::Strip(dart), Complex64::new(re, im)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.json {
                Some(path) if path.as_os_str() == "-" => {
                    print!("{}", render_json(&out.payload));
                    Ok(())
                }
                Some(path) => write_file(path, &render_json(&out.payload)).map(|_| print!("{}", out.text)),
                None => {
                    print!("{}", out.text);
                    Ok(())
                }
            };
            match written {
                Err(f) => report(f),
                Ok(()) if out.failed => ExitCode::from(1),
                Ok(()) => ExitCode::SUCCESS,
            }
        }
        Err(f) => report(f),
    }
}

fn report(failure: Failure) -> ExitCode {
    match failure {
        Failure::Usage(message) => {
            eprintln!("usage error: {message}");
            ExitCode::from(2)
        }
        Failure::Domain { name, message } => {
            eprintln!("error: {name}: {message}");
            ExitCode::from(1)
        }
    }
}
