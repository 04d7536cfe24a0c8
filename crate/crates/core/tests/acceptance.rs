//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Run with `cargo test -p partition-parity --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use partition_parity::analysis::{
    check_density_implication, check_lower_bound, joint_densities, max_even_run, odd_density, Rational,
};
use partition_parity::cli::{self, evaluate_campaign, CampaignConfig, Check};
use partition_parity::engines::{mod_values, parity_stream, Caps, ExactColumns, PartitionParams};
use partition_parity::period::{
    minimal_period, minimal_period_u64, residual_poly, structural_bound, verify_certificate, FactoredInteger,
};

use common::{coin_change_residues, least_period_by_scan, longest_zero_run};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn triangular(k: u32) -> u64 {
    k as u64 * (k as u64 + 1) / 2
}

/// Published odd densities, k = 1..10.
const TABLE: [(u64, u64); 10] = [
    (1, 1),
    (1, 2),
    (5, 12),
    (11, 24),
    (1, 2),
    (29, 60),
    (23, 56),
    (1, 2),
    (27, 56),
    (1, 2),
];

fn table_reproduction() -> Outcome {
    let t0 = Instant::now();
    let mut cfg = CampaignConfig::new(1, 10, vec![2]).map_err(|e| e.to_string())?;
    cfg.checks = [Check::Table].into_iter().collect();
    let summary = evaluate_campaign(&cfg).map_err(|e| e.to_string())?;
    ensure(summary.all_passed, || "verify campaign reported a table mismatch".into())?;
    let caps = Caps::default();
    let mut row = Vec::new();
    for (i, &(n, d)) in TABLE.iter().enumerate() {
        let k = i as u32 + 1;
        let got = odd_density(k, &caps).map_err(|e| e.to_string())?;
        ensure(got == Rational::new(n, d), || format!("k={k}: got {got}, published {n}/{d}"))?;
        row.push(got.to_string());
    }
    within(t0.elapsed(), Duration::from_secs(10))?;
    Ok(format!("({}) in {:?}", row.join(", "), t0.elapsed()))
}

fn period_soundness() -> Outcome {
    let t0 = Instant::now();
    let caps = Caps::default();
    let mut largest = 0;
    for m in 2..=6u64 {
        for k in 1..=8u32 {
            let (l, cert) = minimal_period(k, m, &caps).map_err(|e| e.to_string())?;
            let s = coin_change_residues(k, m, 2 * l as usize);
            let scanned = least_period_by_scan(&s).unwrap_or(1) as u64;
            ensure(scanned == l, || format!("k={k} m={m}: descent {l}, scan {scanned}"))?;
            let v = verify_certificate(&cert, &caps).map_err(|e| e.to_string())?;
            ensure(v.is_valid(), || format!("k={k} m={m}: certificate rejected: {v:?}"))?;
            largest = largest.max(l);
        }
    }
    within(t0.elapsed(), Duration::from_secs(120))?;
    Ok(format!("40 (k, m) pairs, largest L = {largest}, {:?}", t0.elapsed()))
}

fn bound_divisibility() -> Outcome {
    for m in 2..=6u64 {
        for k in 1..=12u32 {
            let l = minimal_period_u64(k, m).map_err(|e| e.to_string())?;
            let bound = structural_bound(k, m).map_err(|e| e.to_string())?;
            // Both the factored test and plain big-integer remainder.
            ensure(FactoredInteger::from_u64(l).divides(&bound), || format!("k={k} m={m}: {l} does not divide {bound}"))?;
            ensure(bound.value() % BigUint::from(l) == BigUint::from(0u32), || format!("k={k} m={m}: remainder"))?;
        }
    }
    Ok("60 (k, m) pairs".into())
}

fn even_run_equality() -> Outcome {
    let t0 = Instant::now();
    let caps = Caps::default();
    for k in 1..=12u32 {
        let r = max_even_run(k, &caps).map_err(|e| e.to_string())?;
        let t = triangular(k);
        ensure(r.max_even_run == t - 1, || format!("k={k}: run {} != {}", r.max_even_run, t - 1))?;
        ensure(r.run_at_period_end, || format!("k={k}: maximal run not at period end"))?;
        ensure(r.linear_rescan_agrees, || format!("k={k}: 2L rescan disagrees"))?;
        let oracle = coin_change_residues(k, 2, 2 * r.period as usize);
        let oracle_run = longest_zero_run(&oracle) as u64;
        ensure(oracle_run == t - 1, || format!("k={k}: oracle run {oracle_run}"))?;
        let tail = &oracle[(r.period - (t - 1)) as usize..r.period as usize];
        ensure(tail.iter().all(|&v| v == 0), || format!("k={k}: oracle tail not all even"))?;
    }
    within(t0.elapsed(), Duration::from_secs(60))?;
    Ok(format!("k = 1..12, {:?}", t0.elapsed()))
}

fn joint_density_equality() -> Outcome {
    let caps = Caps::default();
    for k in 2..=12u32 {
        let r = joint_densities(k, &caps).map_err(|e| e.to_string())?;
        ensure(r.joint.odd_odd == r.joint.even_odd, || {
            format!("k={k}: (odd,odd) {} != (even,odd) {}", r.joint.odd_odd, r.joint.even_odd)
        })?;
        ensure(r.joint.total() == Rational::integer(1), || format!("k={k}: joint total {}", r.joint.total()))?;
    }
    Ok("k = 2..12".into())
}

fn lower_bound() -> Outcome {
    let caps = Caps::default();
    for k in 1..=12u32 {
        let r = check_lower_bound(k, &caps).map_err(|e| e.to_string())?;
        ensure(r.odd_density >= r.bound && r.density_holds, || {
            format!("k={k}: {} < {}", r.odd_density, r.bound)
        })?;
        ensure(r.bound == Rational::new(2, k as u64 * (k as u64 + 1)), || format!("k={k}: bound {}", r.bound))?;
        ensure(r.window_holds, || format!("k={k}: an all-even window of length {}", triangular(k)))?;
    }
    Ok("k = 1..12".into())
}

fn two_thirds_implication() -> Outcome {
    let caps = Caps::default();
    let recs = check_density_implication(13, &caps).map_err(|e| e.to_string())?;
    ensure(recs.len() == 12, || format!("{} records", recs.len()))?;
    let two_thirds = Rational::new(2, 3);
    let mut premises = Vec::new();
    for r in &recs {
        let holds = !(r.density > two_thirds) || r.next_density <= two_thirds;
        ensure(holds && r.holds, || format!("k={}: {} -> {}", r.k, r.density, r.next_density))?;
        if r.density > two_thirds {
            premises.push(r.k);
        }
    }
    Ok(format!("k = 1..12, premise true for k in {premises:?}"))
}

fn degree_identity() -> Outcome {
    let caps = Caps::default();
    for k in 1..=12u32 {
        let r = residual_poly(k, &caps).map_err(|e| e.to_string())?;
        ensure(r.degree() as u64 == r.period - triangular(k), || {
            format!("k={k}: deg a = {}, L - T = {}", r.degree(), r.period - triangular(k))
        })?;
        ensure(r.reconstructs().map_err(|e| e.to_string())?, || format!("k={k}: a * D != 1 - q^L"))?;
    }
    Ok("k = 1..12, zero remainder".into())
}

fn engine_equivalence() -> Outcome {
    const WINDOW: u64 = 1_000_000;
    let caps = Caps {
        max_exact: WINDOW,
        ..Caps::default()
    };
    let mut exact = ExactColumns::new(WINDOW - 1, &caps).map_err(|e| e.to_string())?;
    for k in 1..=16u32 {
        if k > 1 {
            exact.advance();
        }
        let naive = mod_values(PartitionParams::new(k, 2).unwrap(), 0, WINDOW, &caps).map_err(|e| e.to_string())?;
        let bits = parity_stream(k, 0, WINDOW, &caps).map_err(|e| e.to_string())?;
        for (n, (v, big)) in naive.values().iter().zip(exact.values()).enumerate() {
            let b = bits.bit(n as u64) as u64;
            let e = big.bit(0) as u64;
            ensure(*v == b && b == e, || format!("k={k} n={n}: naive {v}, bits {b}, exact {e}"))?;
        }
    }
    // Offset window exercises the warm-up path.
    for k in [10u32, 16] {
        let naive = mod_values(PartitionParams::new(k, 2).unwrap(), 123_457, WINDOW, &caps).map_err(|e| e.to_string())?;
        let bits = parity_stream(k, 123_457, WINDOW, &caps).map_err(|e| e.to_string())?;
        ensure(bits.to_mod_sequence() == naive, || format!("k={k}: offset window differs"))?;
    }
    Ok(format!("k = 1..16 over [0, {WINDOW}) and an offset window"))
}

fn throughput_note() -> String {
    let n = 20_000_000u64;
    let t0 = Instant::now();
    let bits = parity_stream(10, 0, n, &Caps::default()).expect("within caps");
    let secs = t0.elapsed().as_secs_f64();
    std::hint::black_box(bits.count_ones());
    format!("{:.2e} parities/s for k = 10 (soft target 1e7)", n as f64 / secs)
}

fn determinism() -> Outcome {
    let mut outputs = Vec::new();
    for _ in 0..2 {
        let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
        let d = dir.path().to_str().unwrap().to_string();
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = cli::run(
            ["pnk", "verify", "--k-max", "8", "--mod", "2,3", "--canonical", "--format", "csv", "--jobs", "4", "--out", &d],
            &mut out,
            &mut err,
        );
        ensure(code == 0, || format!("verify exited {code}"))?;
        let summary = std::fs::read(dir.path().join("summary.json")).map_err(|e| e.to_string())?;
        let csv = std::fs::read(dir.path().join("analysis.csv")).map_err(|e| e.to_string())?;
        outputs.push((out, summary, csv));
    }
    ensure(outputs[0] == outputs[1], || "outputs differ between runs".into())?;
    Ok(format!("summary.json ({} bytes), analysis.csv and stdout identical", outputs[0].1.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1. table reproduction", table_reproduction),
        ("2. period soundness", period_soundness),
        ("3. structural-bound divisibility", bound_divisibility),
        ("4. maximal even run", even_run_equality),
        ("5. joint-density equality", joint_density_equality),
        ("6. odd-density lower bound", lower_bound),
        ("7. two-thirds implication", two_thirds_implication),
        ("8. residual degree identity", degree_identity),
        ("9. engine equivalence", engine_equivalence),
        ("10. determinism", determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  {name}: {why}");
            }
        }
    }
    println!("INFO  9. throughput: {}", throughput_note());
    println!("{} criteria, {failed} failed", criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
