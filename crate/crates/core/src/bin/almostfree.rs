//! Command-line front end: encode graphs as Sullivan algebras, decide
//! almost-freeness, verify coloring certificates, construct torus actions
//! and run geometric consistency checks, and print Betti tables.
//!
//! Exit codes: 0 = positive verdict / success, 10 = negative verdict
//! (NotAlmostFree, certificate rejected, geometric check failed),
//! 2 = malformed input or failed validation, 3 = computation budget
//! refused, 1 = internal error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use almostfree::algebra::format::{algebra_to_string, parse_algebra};
use almostfree::borel::{
    action_to_string, assemble_action, borel_model, volume_kernel_check,
    verify_volume_differential,
};
use almostfree::certificate::{
    certificate_to_assignment, parse_certificate, verify_morphism, VerifyOutcome,
};
use almostfree::graph::{parse_dimacs, Graph};
use almostfree::oracle::{
    buchberger, cohomology_dims, default_cutoff, is_zero_dimensional, CohomologyConfig,
    GroebnerConfig, MonomialOrder, OracleError,
};
use almostfree::reduction::{
    decide_almost_free, decide_almost_free_with_order, edge_ideal, encode_original,
    encode_shifted, Method, ReductionError, Verdict,
};

const EXIT_OK: u8 = 0;
const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_BUDGET: u8 = 3;
const EXIT_NEGATIVE: u8 = 10;

#[derive(Parser)]
#[command(
    name = "almostfree",
    about = "Torus actions from graphs: encode, decide almost-freeness, verify certificates"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Shifted,
    Original,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Groebner,
    CertificateSearch,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Grevlex,
    Grlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Grevlex => MonomialOrder::GrevLex,
            OrderArg::Grlex => MonomialOrder::GrLex,
        }
    }
}

#[derive(Args)]
struct GraphInput {
    /// DIMACS .col graph file
    graph: PathBuf,
    /// Fail (exit 2) if the graph is disconnected instead of warning
    #[arg(long)]
    require_connected: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a graph as the Sullivan algebra of its Borel construction
    Encode {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: u32,
        #[arg(long, value_enum, default_value = "shifted")]
        variant: VariantArg,
        /// Output file (stdout if omitted)
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Decide whether the encoded torus action is almost free
    Decide {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: u32,
        #[arg(long, value_enum, default_value = "groebner")]
        method: MethodArg,
        /// Run both methods and require agreement
        #[arg(long)]
        cross_check: bool,
        /// Monomial order for the groebner method
        #[arg(long, value_enum, default_value = "grevlex")]
        order: OrderArg,
        /// Also print the reduced Groebner basis
        #[arg(long)]
        dump_groebner: bool,
        /// Machine-readable key=value output
        #[arg(long)]
        porcelain: bool,
    },
    /// Verify a coloring certificate against a graph or algebra file
    Verify {
        /// DIMACS graph or `sullivan v1` algebra file
        input: PathBuf,
        /// Certificate file (`cert k=<k>` header, then v/e lines)
        #[arg(short, long)]
        certificate: PathBuf,
        #[arg(long)]
        porcelain: bool,
    },
    /// Write the torus-action data for a graph
    Construct {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: u32,
        /// Emit the Sullivan model of the Borel construction (algebra
        /// format) instead of the weight-matrix action data
        #[arg(long)]
        emit_model: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check the volume differentials and the volume-kernel shape on the Borel model
    CheckBorel {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: u32,
        #[arg(long)]
        porcelain: bool,
    },
    /// Print cohomology dimensions of the encoded algebra
    Betti {
        #[command(flatten)]
        input: GraphInput,
        #[arg(short, long)]
        k: u32,
        /// Top degree (default: formal dimension estimate + 6)
        #[arg(long)]
        cutoff: Option<u32>,
    },
    /// Run the built-in consistency checks
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Encode { input, k, variant, output } => cmd_encode(&input, k, variant, output),
        Command::Decide { input, k, method, cross_check, order, dump_groebner, porcelain } => {
            cmd_decide(&input, k, method, cross_check, order, dump_groebner, porcelain)
        }
        Command::Verify { input, certificate, porcelain } => {
            cmd_verify(&input, &certificate, porcelain)
        }
        Command::Construct { input, k, emit_model, output } => {
            cmd_construct(&input, k, emit_model, output)
        }
        Command::CheckBorel { input, k, porcelain } => cmd_check_borel(&input, k, porcelain),
        Command::Betti { input, k, cutoff } => cmd_betti(&input, k, cutoff),
        Command::Selftest => cmd_selftest(),
    };
    ExitCode::from(code)
}

fn read_file(path: &Path) -> Result<String, u8> {
    std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })
}

fn write_output(path: Option<PathBuf>, text: &str) -> u8 {
    match path {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(p) => match std::fs::write(&p, text) {
            Ok(()) => EXIT_OK,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", p.display());
                EXIT_INPUT
            }
        },
    }
}

fn load_graph(input: &GraphInput) -> Result<Graph, u8> {
    let text = read_file(&input.graph)?;
    let graph = parse_dimacs(&text).map_err(|e| {
        eprintln!("error: {}: {e}", input.graph.display());
        EXIT_INPUT
    })?;
    if !graph.is_connected() {
        if input.require_connected {
            eprintln!("error: graph is not connected (--require-connected)");
            return Err(EXIT_INPUT);
        }
        eprintln!("warning: graph is not connected");
    }
    Ok(graph)
}

fn reduction_exit(e: &ReductionError) -> u8 {
    match e {
        ReductionError::Budget(_) => EXIT_BUDGET,
        ReductionError::Inconsistent => EXIT_INTERNAL,
        _ => EXIT_INPUT,
    }
}

fn cmd_encode(input: &GraphInput, k: u32, variant: VariantArg, output: Option<PathBuf>) -> u8 {
    let graph = match load_graph(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let algebra = match variant {
        VariantArg::Shifted => encode_shifted(&graph, k),
        VariantArg::Original => encode_original(&graph, k),
    };
    match algebra {
        Ok(a) => write_output(output, &algebra_to_string(&a)),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INPUT
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_decide(
    input: &GraphInput,
    k: u32,
    method: MethodArg,
    cross_check: bool,
    order: OrderArg,
    dump_groebner: bool,
    porcelain: bool,
) -> u8 {
    let graph = match load_graph(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let method = match method {
        MethodArg::Groebner => Method::Groebner,
        MethodArg::CertificateSearch => Method::CertificateSearch,
    };
    let start = Instant::now();
    let decision = match decide_almost_free_with_order(&graph, k, method, order.into()) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return reduction_exit(&e);
        }
    };
    if cross_check {
        let other = match method {
            Method::Groebner => Method::CertificateSearch,
            Method::CertificateSearch => Method::Groebner,
        };
        match decide_almost_free(&graph, k, other) {
            Ok(d2) if d2.verdict == decision.verdict => {}
            Ok(d2) => {
                eprintln!(
                    "error: methods disagree: {} says {}, {} says {}",
                    method.name(),
                    decision.verdict.name(),
                    other.name(),
                    d2.verdict.name()
                );
                return EXIT_INTERNAL;
            }
            Err(e) => {
                eprintln!("error: cross-check failed: {e}");
                return reduction_exit(&e);
            }
        }
    }
    let elapsed_ms = start.elapsed().as_millis();
    if dump_groebner {
        match buchberger(&edge_ideal(&graph, k), order.into(), &GroebnerConfig::default()) {
            Ok(gb) => print!("{}", gb.to_text()),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_BUDGET;
            }
        }
    }
    if porcelain {
        println!("verdict={}", decision.verdict.name());
        println!("method={}", decision.method.name());
        println!("k={k}");
        if let Some(w) = &decision.witness {
            let cells: Vec<String> = w.colors().iter().map(u32::to_string).collect();
            println!("witness={}", cells.join(","));
        }
        println!("cross_check={cross_check}");
        println!("time_ms={elapsed_ms}");
    } else {
        println!("verdict: {}", decision.verdict.name());
        println!("method: {}", decision.method.name());
        if let Some(w) = &decision.witness {
            println!("witness coloring (k+1 = {} colors):", k + 1);
            print!("{w}");
        }
        println!("time: {elapsed_ms} ms");
    }
    match decision.verdict {
        Verdict::AlmostFree => EXIT_OK,
        Verdict::NotAlmostFree => EXIT_NEGATIVE,
    }
}

fn cmd_verify(input: &Path, certificate: &Path, porcelain: bool) -> u8 {
    let cert_text = match read_file(certificate) {
        Ok(t) => t,
        Err(code) => return code,
    };
    let cert = match parse_certificate(&cert_text) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", certificate.display());
            return EXIT_INPUT;
        }
    };
    let input_text = match read_file(input) {
        Ok(t) => t,
        Err(code) => return code,
    };
    // algebra files declare themselves; anything else is DIMACS
    let (algebra, n) = if input_text.trim_start().starts_with("sullivan") {
        let a = match parse_algebra(&input_text) {
            Ok(a) => a,
            Err(e) => {
                eprintln!("error: {}: {e}", input.display());
                return EXIT_INPUT;
            }
        };
        let evens = a.generators().iter().filter(|g| g.is_even()).count() as u32;
        (a, evens)
    } else {
        let graph = match parse_dimacs(&input_text) {
            Ok(g) => g,
            Err(e) => {
                eprintln!("error: {}: {e}", input.display());
                return EXIT_INPUT;
            }
        };
        let n = graph.vertex_count();
        match encode_shifted(&graph, cert.k) {
            Ok(a) => (a, n),
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INPUT;
            }
        }
    };
    let assignment = match certificate_to_assignment(&cert, n) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: malformed certificate: {e}");
            return EXIT_INPUT;
        }
    };
    match verify_morphism(&algebra, &assignment) {
        Ok(outcome) => {
            if porcelain {
                println!("accepted={}", outcome.accepted());
                if let VerifyOutcome::Rejected { generator, edge, .. } = &outcome {
                    println!("failing_generator={generator}");
                    if let Some((a, b)) = edge {
                        println!("failing_edge={a},{b}");
                    }
                }
            } else {
                println!("{}", outcome.describe());
            }
            if outcome.accepted() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            }
        }
        Err(e) => {
            eprintln!("error: malformed certificate: {e}");
            EXIT_INPUT
        }
    }
}

fn cmd_construct(input: &GraphInput, k: u32, emit_model: bool, output: Option<PathBuf>) -> u8 {
    let graph = match load_graph(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let action = match assemble_action(&graph, k) {
        Ok(action) => action,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    if !emit_model {
        return write_output(output, &action_to_string(&action));
    }
    match borel_model(&action) {
        Ok(model) => write_output(output, &algebra_to_string(&model.algebra)),
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn cmd_check_borel(input: &GraphInput, k: u32, porcelain: bool) -> u8 {
    let graph = match load_graph(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let action = match assemble_action(&graph, k) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let model = match borel_model(&action) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    let mut ok = true;
    let well_formed = model.algebra.check_well_formed();
    if !well_formed.is_valid() {
        ok = false;
        for p in &well_formed.problems {
            println!("model: {p}");
        }
    }
    let kernel = match volume_kernel_check(k) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INTERNAL;
        }
    };
    if porcelain {
        println!("model_well_formed={}", well_formed.is_valid());
        println!("kernel_dim={}", kernel.kernel_dimension);
        println!("kernel_ok={}", kernel.is_ok());
    } else {
        println!(
            "volume kernel (homogeneous space): dimension {} — {}",
            kernel.kernel_dimension,
            if kernel.is_ok() { "ok (vol_1 - vol_2 - ... - vol_{k+2})" } else { "FAILED" }
        );
    }
    ok &= kernel.is_ok();
    for p in &kernel.problems {
        println!("kernel: {p}");
    }
    let mut global_sign: Option<i8> = None;
    for &(a, b) in graph.edges() {
        match verify_volume_differential(&model, (a, b)) {
            Ok(report) => {
                let sign_ok = match (global_sign, report.sign) {
                    (_, None) => false,
                    (None, Some(s)) => {
                        global_sign = Some(s);
                        true
                    }
                    (Some(prev), Some(s)) => prev == s,
                };
                if porcelain {
                    println!(
                        "edge_{a}_{b}_sign={}",
                        report.sign.map_or("none".into(), |s| format!("{s:+}"))
                    );
                    println!("edge_{a}_{b}_ok={}", report.is_ok() && sign_ok);
                } else {
                    println!(
                        "edge ({a},{b}): torus part {} — {}",
                        report.torus_part,
                        if report.is_ok() && sign_ok { "ok" } else { "FAILED" }
                    );
                }
                for p in &report.problems {
                    println!("edge ({a},{b}): {p}");
                }
                ok &= report.is_ok() && sign_ok;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_INTERNAL;
            }
        }
    }
    if porcelain {
        if let Some(s) = global_sign {
            println!("global_sign={s:+}");
        }
        println!("ok={ok}");
    } else if let Some(s) = global_sign {
        println!(
            "global sign: {s:+} (fixed by the model's H-side-minus-torus-side orientation; \
             either sign is accepted as long as it is uniform)"
        );
    }
    if ok {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn cmd_betti(input: &GraphInput, k: u32, cutoff: Option<u32>) -> u8 {
    let graph = match load_graph(input) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let algebra = match encode_shifted(&graph, k) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let cutoff = cutoff
        .unwrap_or_else(|| default_cutoff(graph.vertex_count(), graph.edge_count() as u32, k));
    match cohomology_dims(&algebra, cutoff, &CohomologyConfig::default()) {
        Ok(dims) => {
            for (n, dim) in dims.iter().enumerate() {
                println!("H^{n} {dim}");
            }
            EXIT_OK
        }
        Err(OracleError::BasisTooLarge { degree, size, budget }) => {
            eprintln!(
                "error: refusing degree {degree}: basis has {size} monomials (budget {budget})"
            );
            EXIT_BUDGET
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_INTERNAL
        }
    }
}

fn cmd_selftest() -> u8 {
    let mut failures = 0u32;
    let mut check = |name: &str, ok: bool| {
        println!("{} {name}", if ok { "ok  " } else { "FAIL" });
        if !ok {
            failures += 1;
        }
    };

    check(
        "dimension identity 2k-1 for k = 1..=50",
        (1..=50).all(|k| almostfree::borel::dimension_from_blocks(k) == 2 * i128::from(k) - 1),
    );

    let k3 = Graph::complete(3);
    let k4 = Graph::complete(4);
    let both = |g: &Graph| -> Option<(Verdict, Verdict)> {
        let a = decide_almost_free(g, 2, Method::Groebner).ok()?.verdict;
        let b = decide_almost_free(g, 2, Method::CertificateSearch).ok()?.verdict;
        Some((a, b))
    };
    check(
        "K3 decides NotAlmostFree by both methods",
        both(&k3) == Some((Verdict::NotAlmostFree, Verdict::NotAlmostFree)),
    );
    check(
        "K4 decides AlmostFree by both methods",
        both(&k4) == Some((Verdict::AlmostFree, Verdict::AlmostFree)),
    );

    let gb_ok = (|| {
        let gb =
            buchberger(&edge_ideal(&k4, 2), MonomialOrder::GrevLex, &GroebnerConfig::default())
                .ok()?;
        Some(is_zero_dimensional(&gb, 4))
    })();
    check("K4 edge ideal is zero-dimensional", gb_ok == Some(true));

    let roundtrip_ok = (|| {
        let a = encode_shifted(&k3, 2).ok()?;
        let text = algebra_to_string(&a);
        let b = parse_algebra(&text).ok()?;
        Some(algebra_to_string(&b) == text)
    })();
    check("algebra serialization round-trips", roundtrip_ok == Some(true));

    let kernel_ok =
        [2u32, 3].iter().all(|&k| volume_kernel_check(k).map(|r| r.is_ok()).unwrap_or(false));
    check("volume kernel shape for k = 2, 3", kernel_ok);

    let volume_ok = [2u32, 3].iter().all(|&k| {
        assemble_action(&Graph::path(2), k)
            .and_then(|a| borel_model(&a))
            .and_then(|m| verify_volume_differential(&m, (1, 2)))
            .map(|r| r.is_ok())
            .unwrap_or(false)
    });
    check("volume differential for K2, k = 2, 3", volume_ok);

    let cyclotomic_ok = {
        use almostfree::certificate::CyclotomicField;
        (2..=6u32).all(|k| {
            let f = CyclotomicField::new(k + 1);
            (0..=u64::from(k)).all(|a| {
                (0..=u64::from(k)).all(|b| {
                    let mut sum = f.zero();
                    for l in 0..=u64::from(k) {
                        sum = f.add(&sum, &f.zeta_pow(a * (u64::from(k) - l) + b * l));
                    }
                    sum.is_zero() == (a != b)
                })
            })
        })
    };
    check("cyclotomic edge identity for k <= 6", cyclotomic_ok);

    if failures == 0 {
        println!("selftest: all checks passed");
        EXIT_OK
    } else {
        println!("selftest: {failures} check(s) failed");
        EXIT_INTERNAL
    }
}
