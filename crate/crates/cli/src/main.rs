//! Command-line front end: generate instances, construct and verify families,
//! export DOT.
//!
//! Exit codes: 0 success, 2 invalid input or flags, 3 generation failed,
//! 4 instance outside the construction's preconditions, 5 construction bug,
//! 6 verification failed, 7 an exhaustive oracle's size cap was exceeded.

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use bridgecycles::bridges::{lambda_oracle, LAMBDA_EDGE_CAP};
use bridgecycles::document::{FamilyDocument, InstanceDocument};
use bridgecycles::dot::{aux_dot, family_dot, instance_dot};
use bridgecycles::generate::{gen_extremal, gen_k23, gen_negatives, gen_random, GenError, GenParams};
use bridgecycles::verify::{certify_longest, verify_voss, VerifyError, LONGEST_CYCLE_CAP};
use bridgecycles::{build_aux, construct, decompose_bridges, verify_feasible, Partition};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

const LONGEST_CAP_VAR: &str = "BRIDGECYCLES_LONGEST_CAP";
const LAMBDA_CAP_VAR: &str = "BRIDGECYCLES_LAMBDA_CAP";

#[derive(Parser)]
#[command(name = "bridgecycles", version, about = "Dicycle families for a cycle with tree bridges")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print an instance document.
    Gen(GenArgs),
    /// Read an instance document and print a feasible family document.
    Construct {
        /// Instance document, `-` for standard input.
        #[arg(default_value = "-")]
        input: PathBuf,
    },
    /// Check a family against an instance and print a JSON report.
    Verify {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        family: PathBuf,
        /// Also certify the host as a longest cycle and check the length bound.
        #[arg(long)]
        certify_longest: bool,
    },
    /// Print Graphviz DOT for an instance, a family or an auxiliary digraph.
    Export(ExportArgs),
    /// Print the auxiliary digraph of a partition such as `4,3,3` as JSON.
    Deta {
        partition: Partition,
        /// Print DOT instead of JSON.
        #[arg(long)]
        dot: bool,
    },
}

#[derive(Args)]
#[group(id = "kind", required = true, multiple = false)]
struct GenKind {
    /// Random instance with a tree-shaped overlap graph.
    #[arg(long, group = "kind", requires = "bridges")]
    seed: Option<u64>,
    /// The cycle on 2K vertices with K chords meeting the length bound.
    #[arg(long, value_name = "K", group = "kind")]
    extremal: Option<usize>,
    /// K_{2,3} as a 4-cycle with one bridge.
    #[arg(long, group = "kind")]
    k23: bool,
    /// All negative examples with their expected rejection.
    #[arg(long, group = "kind")]
    negatives: bool,
    /// A single negative example by name.
    #[arg(long, value_name = "NAME", group = "kind")]
    negative: Option<String>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    kind: GenKind,
    #[arg(long)]
    bridges: Option<usize>,
    #[arg(long, default_value_t = 24)]
    host_len: usize,
    #[arg(long, default_value_t = 4)]
    max_leaves: usize,
    #[arg(long, default_value_t = 4)]
    max_internal: usize,
}

#[derive(Args)]
struct ExportArgs {
    /// Emit DOT; the only export format.
    #[arg(long, required = true)]
    dot: bool,
    #[arg(long, group = "what")]
    instance: Option<PathBuf>,
    #[arg(long, group = "what")]
    family: Option<PathBuf>,
    #[arg(long, group = "what", value_name = "PARTITION")]
    deta: Option<Partition>,
}

/// A failed command: exit code plus a JSON body for standard output.
struct Failure {
    code: u8,
    body: Value,
}

impl Failure {
    fn new(code: u8, kind: &str, message: impl ToString) -> Self {
        Failure { code, body: json!({ "status": kind, "message": message.to_string() }) }
    }

    fn input(message: impl ToString) -> Self {
        Failure::new(2, "invalid-input", message)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure { code, body }) => {
            println!("{}", serde_json::to_string_pretty(&body).expect("json values serialize"));
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<String, Failure> {
    match cmd {
        Command::Gen(args) => gen(args),
        Command::Construct { input } => {
            let inst = read_instance(&input)?;
            match construct(&inst) {
                Ok(fam) => Ok(line(FamilyDocument::from_family(&fam).to_json())),
                Err(e) => match e {
                    bridgecycles::ConstructError::PreconditionViolated(p) => Err(Failure {
                        code: 4,
                        body: json!({ "status": "precondition-violated", "reason": p.reason() }),
                    }),
                    other => Err(Failure::new(5, "internal-error", other)),
                },
            }
        }
        Command::Verify { instance, family, certify_longest } => verify(&instance, &family, certify_longest),
        Command::Export(args) => export(args),
        Command::Deta { partition, dot } => {
            let d = build_aux(&partition);
            if dot {
                return Ok(aux_dot(&d));
            }
            let arcs: Vec<[u32; 3]> = d.arcs().iter().map(|a| [a.tail.0, a.head.0, u32::from(a.key)]).collect();
            let vertices: Vec<Value> = d
                .vertices()
                .map(|v| {
                    let (p, i) = d.locate(v).expect("own vertex");
                    json!({ "id": v.0, "part": p + 1, "index": i + 1 })
                })
                .collect();
            Ok(pretty(&json!({ "partition": partition.parts(), "vertices": vertices, "arcs": arcs })))
        }
    }
}

fn gen(args: GenArgs) -> Result<String, Failure> {
    let k = args.kind;
    let inst = if let Some(seed) = k.seed {
        let p = GenParams {
            host_len: args.host_len,
            bridges: args.bridges.expect("clap requires --bridges with --seed"),
            max_leaves: args.max_leaves,
            max_internal: args.max_internal,
            seed,
        };
        gen_random(&p).map_err(gen_failure)?
    } else if let Some(k) = k.extremal {
        gen_extremal(k).map_err(gen_failure)?
    } else if k.k23 {
        gen_k23()
    } else if k.negatives {
        let all: Vec<Value> = gen_negatives()
            .iter()
            .map(|n| {
                let inst = n.instance().expect("negative examples are well formed");
                json!({
                    "name": n.name,
                    "expected": n.expected,
                    "instance": InstanceDocument::from_instance(&inst),
                })
            })
            .collect();
        return Ok(pretty(&Value::Array(all)));
    } else if let Some(name) = k.negative {
        let negs = gen_negatives();
        let n = negs.iter().find(|n| n.name == name).ok_or_else(|| {
            let names: Vec<&str> = negs.iter().map(|n| n.name).collect();
            Failure::input(format!("unknown negative {name:?}; known: {}", names.join(", ")))
        })?;
        n.instance().expect("negative examples are well formed")
    } else {
        unreachable!("clap requires one generator")
    };
    Ok(line(InstanceDocument::from_instance(&inst).to_json()))
}

fn gen_failure(e: GenError) -> Failure {
    match e {
        GenError::InvalidParams(_) => Failure::input(e),
        _ => Failure::new(3, "generation-failed", e),
    }
}

fn verify(instance: &PathBuf, family: &PathBuf, certify: bool) -> Result<String, Failure> {
    let inst = read_instance(instance)?;
    let fam = FamilyDocument::parse(&read_input(family)?).and_then(|d| d.to_family()).map_err(Failure::input)?;
    let report = verify_feasible(&inst, &fam);
    let mut body = json!({
        "feasible": report.pass,
        "failed": report.failed(),
        "report": report,
    });
    let mut pass = report.pass;
    if certify {
        let cap = env_cap(LONGEST_CAP_VAR, LONGEST_CYCLE_CAP)?;
        let cert = match certify_longest(&inst, cap) {
            Ok(c) => c,
            Err(e @ VerifyError::TooLarge { .. }) => return Err(Failure::new(7, "oracle-cap-exceeded", e)),
            Err(e) => return Err(Failure::new(5, "internal-error", e)),
        };
        body["host_is_longest"] = json!(cert.is_some());
        body["lambda_oracle"] = lambda_check(&inst)?;
        match cert {
            Some(cert) => {
                let voss = verify_voss(&inst, &fam, Some(&cert)).map_err(|e| Failure::new(5, "internal-error", e))?;
                body["inequality"] = json!(format!("{} ≤ {}", voss.lambda_sum, voss.half_host_len));
                body["voss"] = json!(voss);
                pass &= voss.pass;
            }
            None => pass = false,
        }
    }
    body["pass"] = json!(pass);
    if pass {
        Ok(pretty(&body))
    } else {
        Err(Failure { code: 6, body })
    }
}

/// Bridge lengths recomputed by exhaustive search where the bridge is small
/// enough; `null` for bridges above the cap.
fn lambda_check(inst: &bridgecycles::Instance) -> Result<Value, Failure> {
    let cap = env_cap(LAMBDA_CAP_VAR, LAMBDA_EDGE_CAP)?;
    let raw = decompose_bridges(&inst.edges(), inst.host()).map_err(|e| Failure::new(5, "internal-error", e))?;
    Ok(Value::Array(raw.iter().map(|b| lambda_oracle(b, cap).map_or(Value::Null, |l| json!(l))).collect()))
}

fn export(args: ExportArgs) -> Result<String, Failure> {
    if let Some(p) = args.deta {
        Ok(aux_dot(&build_aux(&p)))
    } else if let Some(path) = args.family {
        let fam = FamilyDocument::parse(&read_input(&path)?).and_then(|d| d.to_family()).map_err(Failure::input)?;
        Ok(family_dot(&fam))
    } else {
        let path = args.instance.unwrap_or_else(|| PathBuf::from("-"));
        Ok(instance_dot(&read_instance(&path)?))
    }
}

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut s = String::new();
    if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map_err(Failure::input)?;
    } else {
        s = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    }
    Ok(s)
}

fn read_instance(path: &PathBuf) -> Result<bridgecycles::Instance, Failure> {
    InstanceDocument::parse(&read_input(path)?).and_then(|d| d.to_instance()).map_err(Failure::input)
}

fn env_cap(var: &str, default: usize) -> Result<usize, Failure> {
    match std::env::var(var) {
        Ok(s) => s.parse().map_err(|_| Failure::input(format!("{var} must be a non-negative integer, got {s:?}"))),
        Err(_) => Ok(default),
    }
}

fn pretty(v: &Value) -> String {
    line(serde_json::to_string_pretty(v).expect("json values serialize"))
}

fn line(mut s: String) -> String {
    s.push('\n');
    s
}
