use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use equiproj::build::{catalog, entry, generate, ConstructError, ExpectedK, Params};
use equiproj::equi::decide;
use equiproj::io::{read_off, write_mesh, MeshFormat, ReadError};
use equiproj::report::{verify, CertificateJson, VerifyError};
use equiproj::shadow::{degenerate_faces, silhouette_count, ShadowError, DEFAULT_SAMPLES};
use equiproj::{Polyhedron, Tolerance, Vec3};

// stdout closed early (e.g. piped into `head`): stop quietly instead of panicking
macro_rules! out {
    ($($t:tt)*) => {
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0);
        }
    };
}

const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const IO: u8 = 3;
const DEGENERATE: u8 = 4;

#[derive(Parser)]
#[command(name = "equiproj", version, about = "Build and check k-equiprojective convex polyhedra")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated solid to a mesh file.
    Gen {
        name: String,
        #[arg(long = "param", value_name = "KEY=VALUE")]
        params: Vec<String>,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long, default_value = "off")]
        format: MeshFormat,
    },
    /// Run the recognizer and the shadow sampler; exit 0 iff both agree on a constant k.
    Verify {
        #[command(flatten)]
        source: Source,
        #[arg(long = "param", value_name = "KEY=VALUE", requires = "gen")]
        params: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_SAMPLES)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Shadow size along one direction.
    Shadow {
        file: PathBuf,
        #[arg(long, value_name = "X,Y,Z")]
        dir: String,
    },
    /// List every named solid with its expected k.
    Catalog {
        #[arg(long)]
        json: bool,
    },
    /// Print only the compensating-pair certificate or refutation.
    Certify {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    file: Option<PathBuf>,
    #[arg(long, value_name = "NAME")]
    gen: Option<String>,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure { code, message: message.to_string() }
}

fn construct_failure(e: ConstructError) -> Failure {
    match e {
        ConstructError::UnknownSolid(_) | ConstructError::BadParam(_) => fail(USAGE, e),
        other => fail(DEGENERATE, other),
    }
}

fn parse_params(raw: &[String]) -> Result<Params, Failure> {
    let mut out = Params::new();
    for kv in raw {
        let (k, v) = kv.split_once('=').ok_or_else(|| fail(USAGE, format!("expected KEY=VALUE, got `{kv}`")))?;
        let v: f64 = v.trim().parse().map_err(|_| fail(USAGE, format!("`{k}` needs a number, got `{v}`")))?;
        out.insert(k.trim().to_string(), v);
    }
    Ok(out)
}

fn load(path: &Path) -> Result<Polyhedron, Failure> {
    let text = fs::read_to_string(path).map_err(|e| fail(IO, format!("{}: {e}", path.display())))?;
    read_off(&text, Tolerance::default()).map_err(|e| match e {
        ReadError::Parse { .. } => fail(IO, format!("{}: {e}", path.display())),
        ReadError::Build(b) => fail(DEGENERATE, format!("{}: {b}", path.display())),
    })
}

fn parse_dir(s: &str) -> Result<Vec3, Failure> {
    let c: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| fail(USAGE, format!("bad direction `{s}`")))?;
    match c[..] {
        [x, y, z] if c.iter().all(|v| v.is_finite()) => Ok(Vec3::new(x, y, z)),
        _ => Err(fail(USAGE, format!("direction needs three finite numbers, got `{s}`"))),
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize")
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let tol = Tolerance::default();
    match cli.cmd {
        Cmd::Gen { name, params, output, format } => {
            let p = generate(&name, &parse_params(&params)?).map_err(construct_failure)?;
            fs::write(&output, write_mesh(&p, format)).map_err(|e| fail(IO, format!("{}: {e}", output.display())))?;
            out!("wrote {} ({} vertices, {} faces)", output.display(), p.vertices().len(), p.faces().len());
            Ok(PASS)
        }
        Cmd::Verify { source, params, samples, seed, json: as_json } => {
            if samples == 0 {
                return Err(fail(USAGE, "--samples must be positive"));
            }
            let (name, p, expected) = match (source.file, source.gen) {
                (_, Some(g)) => {
                    let p = generate(&g, &parse_params(&params)?).map_err(construct_failure)?;
                    // overridden parameters void the catalog's claim
                    let expected = entry(&g).filter(|_| params.is_empty()).map(|e| e.expected_k);
                    (g, p, expected)
                }
                (Some(f), None) => {
                    let p = load(&f)?;
                    (f.display().to_string(), p, None)
                }
                (None, None) => unreachable!("clap requires a source"),
            };
            let r = verify(&name, &p, expected, samples, seed, tol).map_err(|e| match e {
                VerifyError::Shadow(ShadowError::NoSamples) => fail(USAGE, e),
                other => fail(DEGENERATE, other),
            })?;
            if as_json {
                out!("{}", json(&r));
            } else {
                out!("{r}");
            }
            Ok(if r.pass { PASS } else { FAIL })
        }
        Cmd::Shadow { file, dir } => {
            let p = load(&file)?;
            let d = parse_dir(&dir)?;
            let parallel = degenerate_faces(&p, d).map_err(|e| fail(USAGE, e))?;
            if !parallel.is_empty() {
                out!("degenerate direction: parallel to faces {parallel:?}");
                for f in parallel {
                    let n = p.face_normal(f);
                    out!("  face {f}: {} vertices, normal ({}, {}, {})", p.faces()[f].len(), n.x, n.y, n.z);
                }
                return Ok(DEGENERATE);
            }
            let k = silhouette_count(&p, d, tol).map_err(|e| fail(DEGENERATE, e))?;
            out!("{k}");
            Ok(PASS)
        }
        Cmd::Catalog { json: as_json } => {
            let c = catalog();
            if as_json {
                out!("{}", json(&c));
            } else {
                for e in c {
                    let k = match e.expected_k {
                        ExpectedK::K(k) => k.to_string(),
                        ExpectedK::NotEquiprojective => "not equiprojective".into(),
                    };
                    out!("{:<40} {k}", e.name);
                }
            }
            Ok(PASS)
        }
        Cmd::Certify { file, json: as_json } => {
            let p = load(&file)?;
            let c = decide(&p, tol).map_err(|e| fail(DEGENERATE, e))?;
            let ok = c.is_certificate();
            let c = CertificateJson::new(&p, &c);
            if as_json {
                out!("{}", json(&c));
            } else {
                match &c {
                    CertificateJson::Certificate(pairs) => {
                        for (a, b) in pairs {
                            out!("{a:?} ~ {b:?}");
                        }
                    }
                    CertificateJson::Refutation { component, cycle } => {
                        out!("odd {}: {component:?}", if *cycle { "cycle" } else { "path" });
                    }
                }
            }
            Ok(if ok { PASS } else { FAIL })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
