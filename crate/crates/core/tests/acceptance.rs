//! Acceptance criteria 1-10, one PASS/FAIL line each.

mod common;

use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use common::{det_cofactor, mul_ref, pow_ref};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rsmld::algebra::Poly;
use rsmld::cli::draw_instance;
use rsmld::gf2m::mersenne;
use rsmld::instance_file::InstanceFile;
use rsmld::oracles::{
    block_solution_exhaustive, classify_deep_hole, det_closed_form, matching_matrix,
    ml_decode_bruteforce, solve_3dm, subset_sum_witness, verify_reduction, Status,
};
use rsmld::reduction::{convert, convert_prep, convert_std, syndrome_target, universe};
use rsmld::{
    build_field, hamming_distance, FieldElement, MldRsInstance, Mode, ReductionTrace, RsCode,
    ThreeDmInstance,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn e(b: u128) -> FieldElement {
    FieldElement::from_bits(b)
}

fn prime_by_trial(p: u128) -> bool {
    p >= 2
        && (2u128..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

fn criterion_1() -> Outcome {
    let degrees: Vec<u32> = (1..=16).chain([30, 90]).collect();
    for &m in &degrees {
        let ctx = build_field(m).map_err(|err| format!("m = {m}: {err}"))?;
        let low = ctx.modulus_low();
        let order = mersenne(m);
        let product = ctx
            .factorization()
            .iter()
            .fold(1u128, |acc, &(p, k)| acc * p.pow(k));
        ensure!(product == order, "m = {m}: factors multiply to {product}");
        ensure!(
            ctx.factorization().iter().all(|&(p, _)| prime_by_trial(p)),
            "m = {m}: composite factor"
        );
        let alpha = ctx.alpha().bits();
        ensure!(
            pow_ref(alpha, order, m, low) == 1,
            "m = {m}: alpha^(2^m-1) != 1"
        );
        for &(p, _) in ctx.factorization() {
            ensure!(
                pow_ref(alpha, order / p, m, low) != 1,
                "m = {m}: alpha order divides (2^m-1)/{p}"
            );
        }
        ensure!(
            ctx.certify().all_pass(),
            "m = {m}: library certification failed"
        );
    }
    Ok(format!(
        "{} fields, alpha of order exactly 2^m - 1 in each",
        degrees.len()
    ))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut compared = 0;
    for m in [6u32, 9, 12, 16] {
        let ctx = build_field(m).unwrap();
        let low = ctx.modulus_low();
        let q = 1u128 << m;
        for _ in 0..100 {
            let n = rng.gen_range(2..=24);
            let mut pts: Vec<u128> = Vec::with_capacity(n);
            while pts.len() < n {
                let x = rng.gen_range(0..q);
                if !pts.contains(&x) {
                    pts.push(x);
                }
            }
            let k = rng.gen_range(1..n);
            let code = RsCode::new(ctx.clone(), pts.iter().map(|&x| e(x)).collect(), k).unwrap();
            let fast = code.grs_scalers();
            let mut in_d = vec![false; q as usize];
            for &x in &pts {
                in_d[x as usize] = true;
            }
            for (j, &x) in pts.iter().enumerate() {
                let direct = (0..q)
                    .filter(|&b| !in_d[b as usize])
                    .fold(1u128, |acc, b| mul_ref(acc, x ^ b, m, low));
                ensure!(
                    fast.phis()[j].bits() == direct,
                    "m = {m}, D = {pts:?}, position {j}: {} vs {direct:#x}",
                    fast.phis()[j]
                );
                compared += 1;
            }
        }
    }
    Ok(format!(
        "{compared} scalers over 400 evaluation sets equal the direct product"
    ))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut zeros = 0;
    for m in [6u32, 9, 12] {
        let ctx = build_field(m).unwrap();
        for i in 0..200 {
            let w = rng.gen_range(1..=8);
            let mut xs: Vec<FieldElement> = Vec::with_capacity(w);
            while xs.len() < w {
                let x = e(rng.gen_range(0..1u128 << m));
                if !xs.contains(&x) {
                    xs.push(x);
                }
            }
            let gamma = if i % 4 == 0 {
                xs.iter().copied().sum()
            } else {
                e(rng.gen_range(0..1u128 << m))
            };
            let a = matching_matrix(&ctx, &xs, gamma);
            let closed = det_closed_form(&ctx, &xs, gamma);
            let gauss = a.determinant(&ctx).unwrap();
            ensure!(
                closed == gauss,
                "m = {m}, xs = {xs:?}, gamma = {gamma}: {closed} vs {gauss}"
            );
            if w <= 5 {
                let rows: Vec<Vec<u128>> = a
                    .row_iter()
                    .map(|r| r.iter().map(|x| x.bits()).collect())
                    .collect();
                let cof = det_cofactor(&rows, m, ctx.modulus_low());
                ensure!(
                    gauss.bits() == cof,
                    "m = {m}: elimination {gauss} vs cofactor {cof:#x}"
                );
            }
            zeros += closed.is_zero() as usize;
        }
    }
    Ok(format!(
        "600 tuples, closed form = elimination ({zeros} singular)"
    ))
}

fn t2_instances() -> Vec<ThreeDmInstance> {
    let all = universe(2);
    (0u32..256)
        .filter(|mask| (4..=8).contains(&mask.count_ones()))
        .map(|mask| {
            let triples = (0..8)
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| all[i])
                .collect();
            ThreeDmInstance::new(2, triples).unwrap()
        })
        .collect()
}

fn t3_instances() -> Vec<ThreeDmInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    (0..100)
        .map(|_| draw_instance(&mut rng, 3, 0.5, false))
        .collect()
}

fn prep_instances() -> Vec<ThreeDmInstance> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    (0..50)
        .map(|_| draw_instance(&mut rng, 2, 0.5, true))
        .collect()
}

/// The two linear identities: `H φ(y) = (0, ..., 1, γ)` and `G' H^T = 0`.
fn identities_hold(mld: &MldRsInstance, trace: &ReductionTrace) -> Result<(), String> {
    let code = mld.code();
    let ctx = code.ctx();
    let scalers = code.grs_scalers();
    let h = code.syndrome_matrix();
    let s = h
        .mul_vec(ctx, &scalers.apply(ctx, mld.target()).unwrap())
        .unwrap();
    ensure!(s == syndrome_target(mld.w(), trace.gamma), "syndrome {s:?}");
    let product = code
        .scaled_generator_matrix(&scalers)
        .mul(ctx, &h.transpose())
        .unwrap();
    ensure!(product.is_zero(), "G' H^T = {product:?}");
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut count = 0;
    for (instances, mode) in [
        (t2_instances(), Mode::Std),
        (t3_instances(), Mode::Std),
        (prep_instances(), Mode::Prep),
    ] {
        for inst in &instances {
            let (mld, trace) = convert(inst, mode).unwrap();
            identities_hold(&mld, &trace).map_err(|err| format!("{mode} {inst:?}: {err}"))?;
            count += 1;
        }
    }
    Ok(format!(
        "syndrome and G'H^T identities hold on all {count} instances of criteria 5-7"
    ))
}

/// Three-way agreement and the distance dichotomy for one std-mode instance; returns YES/NO.
fn std_instance_checks(inst: &ThreeDmInstance) -> Result<bool, String> {
    let (mld, trace) = convert_std(inst).map_err(|err| err.to_string())?;
    let code = mld.code();
    let w = mld.w();
    let matching = solve_3dm(inst).is_some();
    let subset = subset_sum_witness(code.points(), w, trace.gamma).is_some();
    let decoded = ml_decode_bruteforce(code, mld.target(), w).map_err(|err| err.to_string())?;
    ensure!(
        matching == subset && subset == decoded.is_some(),
        "{inst:?}: 3-DM {matching}, subset sum {subset}, decoding {}",
        decoded.is_some()
    );
    let (distance, deep) = classify_deep_hole(code, mld.target()).map_err(|err| err.to_string())?;
    if matching {
        ensure!(
            distance == w && !deep,
            "{inst:?}: YES at distance {distance}"
        );
        ensure!(decoded.unwrap().distance == w, "{inst:?}: decoder distance");
    } else {
        ensure!(
            distance == w + 1 && deep && code.rho() == w + 1,
            "{inst:?}: NO at distance {distance}"
        );
    }
    let report = verify_reduction(inst, Mode::Std).map_err(|err| err.to_string())?;
    ensure!(report.passed(), "{inst:?}: report\n{report}");
    Ok(matching)
}

fn std_sweep(instances: &[ThreeDmInstance]) -> Outcome {
    let mut yes = 0;
    for inst in instances {
        yes += std_instance_checks(inst)? as usize;
    }
    let w = instances[0].t();
    Ok(format!(
        "{} instances agree; {yes} YES at distance {w}, {} NO at distance {}",
        instances.len(),
        instances.len() - yes,
        w + 1
    ))
}

fn criterion_5() -> Outcome {
    let instances = t2_instances();
    ensure!(instances.len() == 163, "{} instances", instances.len());
    std_sweep(&instances)
}

fn criterion_6() -> Outcome {
    std_sweep(&t3_instances())
}

fn criterion_7() -> Outcome {
    let (mut yes, mut no) = (0, 0);
    for inst in prep_instances() {
        let report = verify_reduction(&inst, Mode::Prep).map_err(|err| err.to_string())?;
        ensure!(report.passed(), "{inst:?}:\n{report}");
        for name in [
            "w-structure",
            "gamma-layout",
            "syndrome-identity",
            "scaled-dual-identity",
            "block-search-agreement",
        ] {
            let status = report.get(name).map(|c| c.status);
            ensure!(
                status == Some(Status::Pass),
                "{inst:?}: {name} is {status:?}"
            );
        }
        let v = block_solution_exhaustive(&inst).unwrap();
        ensure!(
            v.is_some() == solve_3dm(&inst).is_some(),
            "{inst:?}: block search disagrees with 3-DM"
        );
        match v {
            Some(v) => {
                yes += 1;
                ensure!(
                    report.get("yes-chain").map(|c| c.status) == Some(Status::Pass),
                    "{inst:?}: yes-chain"
                );
                let (mld, _) = convert_prep(&inst).unwrap();
                let code = mld.code();
                let outside: Vec<_> = (0..code.n())
                    .filter(|&j| !v[j])
                    .map(|j| (code.points()[j], mld.target()[j]))
                    .collect();
                let p = Poly::interpolate(code.ctx(), &outside).unwrap();
                ensure!(
                    p.degree_below(code.k()),
                    "{inst:?}: interpolant degree {:?}",
                    p.degree()
                );
                let c = code.encode(&p).unwrap();
                ensure!(code.is_codeword(&c).unwrap(), "{inst:?}: not in code");
                let d = hamming_distance(&c, mld.target()).unwrap();
                ensure!(d == mld.w(), "{inst:?}: witness codeword at distance {d}");
            }
            None => {
                no += 1;
                let skip = report.get("ml-certification");
                ensure!(
                    skip.is_some_and(
                        |c| c.status == Status::Skip && c.detail.contains("beyond desk scale")
                    ),
                    "{inst:?}: NO report does not state the ML certification limit"
                );
            }
        }
    }
    Ok(format!("50 prep instances certified ({yes} YES with distance-10 codeword, {no} NO via the identity chain)"))
}

fn criterion_8() -> Outcome {
    let full5 = ThreeDmInstance::new(5, universe(5)).unwrap();
    let start = Instant::now();
    let (mld, _) = convert_std(&full5).map_err(|err| err.to_string())?;
    let std_time = start.elapsed();
    ensure!(
        mld.code().n() == 125 && mld.ctx().m() == 15,
        "unexpected std shape"
    );
    ensure!(
        std_time < Duration::from_secs(1),
        "std conversion took {std_time:?}"
    );

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let inst3 = draw_instance(&mut rng, 3, 0.5, true);
    let start = Instant::now();
    let (mld, _) = convert_prep(&inst3).map_err(|err| err.to_string())?;
    let prep_time = start.elapsed();
    ensure!(
        mld.code().n() == 108 && mld.ctx().m() == 90,
        "unexpected prep shape"
    );
    ensure!(
        prep_time < Duration::from_secs(10),
        "prep conversion took {prep_time:?}"
    );
    Ok(format!(
        "std t=5 |T|=125 in {:.3} s; prep t=3 (m=90, n=108) in {:.3} s",
        std_time.as_secs_f64(),
        prep_time.as_secs_f64()
    ))
}

fn rsmld(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_rsmld"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn criterion_9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut caught = 0;
    for mode in ["std", "prep"] {
        for i in 0..10 {
            let src = dir.path().join(format!("{mode}-{i}.json"));
            let red = dir.path().join(format!("{mode}-{i}-mldrs.json"));
            let seed = i.to_string();
            ensure!(
                rsmld(&["gen", "--t", "2", "--seed", &seed, "--out", path(&src)]).0 == 0,
                "gen failed"
            );
            ensure!(
                rsmld(&[
                    "reduce",
                    "--in",
                    path(&src),
                    "--mode",
                    mode,
                    "--out",
                    path(&red)
                ])
                .0 == 0,
                "reduce failed"
            );
            let (code, _) = rsmld(&[
                "verify",
                "--in",
                path(&src),
                "--mode",
                mode,
                "--instance",
                path(&red),
            ]);
            ensure!(
                code == 0,
                "{mode} seed {i}: unmutated instance fails verification"
            );

            let InstanceFile::MldRs(mut file) =
                InstanceFile::parse(&fs::read_to_string(&red).unwrap()).unwrap()
            else {
                return Err("reduce wrote a non-mldrs file".into());
            };
            let j = rng.gen_range(0..file.target.len());
            let m = file.m;
            let byte = rng.gen_range(0..m.div_ceil(8));
            let allowed = (mersenne(m) >> (8 * byte)) & 0xff;
            let flip = loop {
                let x = rng.gen_range(1u128..256) & allowed;
                if x != 0 {
                    break x;
                }
            };
            let before = file.target[j];
            file.target[j] = e(before.bits() ^ (flip << (8 * byte)));
            fs::write(&red, InstanceFile::MldRs(file).to_canonical()).unwrap();

            let (code, report) = rsmld(&[
                "verify",
                "--in",
                path(&src),
                "--mode",
                mode,
                "--instance",
                path(&red),
            ]);
            ensure!(
                code == 1,
                "{mode} seed {i}: mutated coordinate {j} gave exit {code}\n{report}"
            );
            ensure!(
                report.contains("CHECK syndrome-identity: FAIL")
                    && report.contains("[witness: row"),
                "{mode} seed {i}: syndrome failure not identified\n{report}"
            );
            caught += 1;
        }
    }
    Ok(format!(
        "{caught}/20 single-byte target mutations rejected with exit 1 at syndrome-identity"
    ))
}

fn pipeline(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let src = dir.join("instance.json");
    let mut artifacts = Vec::new();
    assert_eq!(
        rsmld(&["gen", "--t", "2", "--seed", "0", "--out", path(&src)]).0,
        0
    );
    artifacts.push(("instance.json".to_string(), fs::read(&src).unwrap()));
    for mode in ["std", "prep"] {
        let red = dir.join(format!("{mode}.json"));
        assert_eq!(
            rsmld(&[
                "reduce",
                "--in",
                path(&src),
                "--mode",
                mode,
                "--out",
                path(&red),
                "--emit-trace"
            ])
            .0,
            0
        );
        artifacts.push((format!("{mode}.json"), fs::read(&red).unwrap()));
        for json in [false, true] {
            let mut args = vec![
                "verify",
                "--in",
                path(&src),
                "--mode",
                mode,
                "--instance",
                path(&red),
            ];
            if json {
                args.push("--json");
            }
            let (code, report) = rsmld(&args);
            assert_eq!(code, 0, "{report}");
            artifacts.push((format!("{mode} report json={json}"), report.into_bytes()));
        }
    }
    artifacts
}

fn criterion_10() -> Outcome {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let first = pipeline(a.path());
    let second = pipeline(b.path());
    for ((name, x), (_, y)) in first.iter().zip(&second) {
        ensure!(x == y, "{name} differs between runs");
    }
    Ok(format!(
        "{} artifacts byte-identical across two runs",
        first.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("field certification", criterion_1, 60),
        ("scaler fast path equals definition", criterion_2, 60),
        ("determinant closed form", criterion_3, 60),
        ("syndrome and scaled-dual identities", criterion_4, 60),
        ("exhaustive t=2 oracle agreement", criterion_5, 60),
        ("sampled t=3 oracle agreement", criterion_6, 600),
        ("preprocessing reduction at t=2", criterion_7, 300),
        ("conversion time budget", criterion_8, 60),
        ("negative controls", criterion_9, 120),
        ("determinism", criterion_10, 60),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|panic| {
            let msg = panic
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| panic.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > Duration::from_secs(*budget) {
                Err(format!(
                    "{detail}; took {:.1} s, budget {budget} s",
                    elapsed.as_secs_f64()
                ))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!(
                "ACCEPTANCE {:>2} {name}: PASS — {detail} ({:.2} s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(detail) => {
                failed += 1;
                println!("ACCEPTANCE {:>2} {name}: FAIL — {detail}", i + 1);
            }
        }
    }
    println!(
        "ACCEPTANCE summary: {}/{} PASS",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
