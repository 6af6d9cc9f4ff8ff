//! The `rsmld` command line.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or format error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::gf2m::{build_field, MAX_DEGREE};
use crate::instance_file::InstanceFile;
use crate::oracles::{
    classify_deep_hole, ml_decode_bruteforce, ml_decode_enumerate, solve_3dm, verify_instance,
};
use crate::reduction::{self, universe, Mode, ThreeDmInstance};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "rsmld",
    version,
    about = "Reed-Solomon ML decoding hardness instances over GF(2^m)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate random 3-DM instances.
    ///
    /// Each of the t^3 triples is included independently with probability --density. Unless
    /// --any-size is given, draws with |T| <= t+1 are discarded and redrawn so that every
    /// instance is accepted by `reduce --mode std`.
    Gen {
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file; a directory of instance-NNNN.json files when --count > 1.
        #[arg(long)]
        out: PathBuf,
        /// Keep draws of any size.
        #[arg(long)]
        any_size: bool,
    },
    /// Convert a 3-DM instance into an ML decoding instance.
    Reduce {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Std)]
        mode: Mode,
        #[arg(long)]
        out: PathBuf,
        /// Include gamma, z, the scalers and the syndrome matrix in the output.
        #[arg(long)]
        emit_trace: bool,
    },
    /// Solve a 3-DM instance exactly.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Brute-force ML decoding of an mldrs instance.
    Decode {
        #[arg(long = "in")]
        input: PathBuf,
        /// Defaults to the instance's w.
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long, value_enum, default_value_t = Method::Agreement)]
        method: Method,
    },
    /// Reduce a 3-DM instance and certify the result.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Std)]
        mode: Mode,
        /// Check this mldrs file instead of the freshly reduced instance.
        #[arg(long)]
        instance: Option<PathBuf>,
        /// Print the report as JSON.
        #[arg(long)]
        json: bool,
    },
    /// Print the canonical modulus and the factorization of 2^m - 1.
    FieldInfo {
        #[arg(long)]
        m: u32,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Agreement-set interpolation; needs n - radius >= k.
    Agreement,
    /// Full codeword listing; needs q^k <= 2^24.
    Enumerate,
}

/// A failure with its exit code and message.
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(EXIT_USAGE, e.to_string())
    }
}

type CmdResult = Result<i32, Failure>;

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Gen {
            t,
            count,
            density,
            seed,
            out: path,
            any_size,
        } => cmd_gen(t, count, density, seed, &path, any_size, out),
        Command::Reduce {
            input,
            mode,
            out: path,
            emit_trace,
        } => cmd_reduce(&input, mode, &path, emit_trace, out),
        Command::Solve { input } => cmd_solve(&input, out),
        Command::Decode {
            input,
            radius,
            method,
        } => cmd_decode(&input, radius, method, out),
        Command::Verify {
            input,
            mode,
            instance,
            json,
        } => cmd_verify(&input, mode, instance.as_deref(), json, out),
        Command::FieldInfo { m } => cmd_field_info(m, out),
    };
    match result {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

fn io_failure(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure(EXIT_USAGE, format!("{}: {e}", path.display()))
}

fn read_file(path: &Path) -> Result<InstanceFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| io_failure(path, e))?;
    InstanceFile::parse(&text).map_err(|e| io_failure(path, e))
}

fn read_3dm(path: &Path) -> Result<ThreeDmInstance, Failure> {
    read_file(path)?.into_3dm().map_err(|e| io_failure(path, e))
}

/// Writes through a temporary file in the target directory, then renames it into place.
fn write_atomic(path: &Path, contents: &str) -> Result<(), Failure> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| io_failure(path, e))?;
    tmp.write_all(contents.as_bytes())
        .map_err(|e| io_failure(path, e))?;
    tmp.persist(path).map_err(|e| io_failure(path, e.error))?;
    Ok(())
}

fn out_line(out: &mut dyn Write, line: impl AsRef<str>) -> Result<(), Failure> {
    writeln!(out, "{}", line.as_ref()).map_err(|e| Failure(EXIT_USAGE, e.to_string()))
}

/// Draws one instance; retries until `|T| > t + 1` unless `any_size`.
pub fn draw_instance(
    rng: &mut ChaCha8Rng,
    t: usize,
    density: f64,
    any_size: bool,
) -> ThreeDmInstance {
    let all = universe(t);
    loop {
        let triples: Vec<_> = all
            .iter()
            .copied()
            .filter(|_| rng.gen_bool(density))
            .collect();
        if any_size || triples.len() > t + 1 {
            return ThreeDmInstance::new(t, triples).expect("universe triples are valid");
        }
    }
}

fn cmd_gen(
    t: usize,
    count: usize,
    density: f64,
    seed: u64,
    path: &Path,
    any_size: bool,
    out: &mut dyn Write,
) -> CmdResult {
    if t == 0 {
        return Err(Error::ZeroT.into());
    }
    if !(density > 0.0 && density < 1.0) {
        return Err(Failure(
            EXIT_USAGE,
            format!("density {density} must lie strictly between 0 and 1"),
        ));
    }
    if count == 0 {
        return Err(Failure(EXIT_USAGE, "count must be positive".into()));
    }
    if !any_size {
        if t.pow(3) <= t + 1 {
            return Err(Failure(
                EXIT_USAGE,
                format!("no instance with t = {t} has |T| > t + 1; pass --any-size to allow smaller instances"),
            ));
        }
        reduction::std_parameters(t, t + 2)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if count == 1 {
        let inst = draw_instance(&mut rng, t, density, any_size);
        write_atomic(path, &InstanceFile::from_3dm(&inst).to_canonical())?;
        out_line(
            out,
            format!("wrote {} (|T| = {})", path.display(), inst.len()),
        )?;
    } else {
        fs::create_dir_all(path).map_err(|e| io_failure(path, e))?;
        for i in 1..=count {
            let inst = draw_instance(&mut rng, t, density, any_size);
            let file = path.join(format!("instance-{i:04}.json"));
            write_atomic(&file, &InstanceFile::from_3dm(&inst).to_canonical())?;
        }
        out_line(
            out,
            format!("wrote {count} instances to {}", path.display()),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_reduce(
    input: &Path,
    mode: Mode,
    path: &Path,
    emit_trace: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let inst = read_3dm(input)?;
    let (mld, trace) = reduction::convert(&inst, mode)?;
    let file = InstanceFile::from_mldrs(&mld, emit_trace.then_some(&trace));
    write_atomic(path, &file.to_canonical())?;
    out_line(
        out,
        format!(
            "wrote {}: m = {}, n = {}, k = {}, w = {}",
            path.display(),
            mld.ctx().m(),
            mld.code().n(),
            mld.code().k(),
            mld.w()
        ),
    )?;
    Ok(EXIT_OK)
}

fn cmd_solve(input: &Path, out: &mut dyn Write) -> CmdResult {
    let inst = read_3dm(input)?;
    match solve_3dm(&inst) {
        Some(matching) => {
            out_line(out, "YES")?;
            for tr in matching {
                out_line(out, format!("{} {} {}", tr.a, tr.b, tr.c))?;
            }
        }
        None => out_line(out, "NO")?,
    }
    Ok(EXIT_OK)
}

fn cmd_decode(
    input: &Path,
    radius: Option<usize>,
    method: Method,
    out: &mut dyn Write,
) -> CmdResult {
    let mld = read_file(input)?
        .into_mldrs()
        .map_err(|e| io_failure(input, e))?;
    let code = mld.code();
    let radius = radius.unwrap_or(mld.w());
    let decoded = match method {
        Method::Agreement => ml_decode_bruteforce(code, mld.target(), radius)?,
        Method::Enumerate => ml_decode_enumerate(code, mld.target(), radius)?,
    };
    match &decoded {
        Some(d) => {
            out_line(out, format!("FOUND distance {}", d.distance))?;
            let cw: Vec<String> = d.codeword.iter().map(|c| c.to_string()).collect();
            out_line(out, format!("codeword {}", cw.join(" ")))?;
            let support: Vec<String> = d
                .error_support
                .iter()
                .map(|i| (i + 1).to_string())
                .collect();
            out_line(out, format!("error positions {}", support.join(" ")))?;
        }
        None => out_line(out, format!("ABSENT within radius {radius}"))?,
    }
    if radius + 1 == code.rho() {
        let (distance, deep) = match &decoded {
            Some(d) => (d.distance, false),
            None => classify_deep_hole(code, mld.target())?,
        };
        out_line(
            out,
            format!(
                "deep hole: {} (distance {distance}, covering radius {})",
                if deep { "yes" } else { "no" },
                code.rho()
            ),
        )?;
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    input: &Path,
    mode: Mode,
    instance: Option<&Path>,
    json: bool,
    out: &mut dyn Write,
) -> CmdResult {
    let inst = read_3dm(input)?;
    let supplied = instance
        .map(|p| read_file(p)?.into_mldrs().map_err(|e| io_failure(p, e)))
        .transpose()?;
    let report = verify_instance(&inst, mode, supplied.as_ref())?;
    let text = if json {
        report.to_json()
    } else {
        report.to_string()
    };
    out.write_all(text.as_bytes())
        .map_err(|e| Failure(EXIT_USAGE, e.to_string()))?;
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}

fn cmd_field_info(m: u32, out: &mut dyn Write) -> CmdResult {
    if !(1..=MAX_DEGREE).contains(&m) {
        return Err(Error::DegreeOutOfRange(m).into());
    }
    let ctx = build_field(m)?;
    let factors: Vec<String> = ctx
        .factorization()
        .iter()
        .map(|&(p, e)| {
            if e == 1 {
                p.to_string()
            } else {
                format!("{p}^{e}")
            }
        })
        .collect();
    out_line(out, format!("m = {m}"))?;
    out_line(out, format!("modulus {}", ctx.modulus_hex()))?;
    out_line(out, format!("alpha order {}", ctx.group_order()))?;
    out_line(out, format!("factors [{}]", factors.join(", ")))?;
    let cert = ctx.certify();
    out_line(
        out,
        format!("certified {}", if cert.all_pass() { "yes" } else { "no" }),
    )?;
    Ok(if cert.all_pass() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    })
}
