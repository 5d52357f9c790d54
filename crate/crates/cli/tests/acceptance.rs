//! Acceptance criteria, one line of output each. Exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde_json::Value;

use hultman::algebra::{double_factorial, factorial};
use hultman::genfunc::{
    pg_chain_via_ode, pg_list_via_truncation, truncation_table_size, verify_f_against_pn,
    verify_pg_properties,
};
use hultman::ginibre::{mc_verify, DEFAULT_SEED, DEFAULT_Z_THRESHOLD};
use hultman::gluing::verify_gluing_bijection;
use hultman::numbers::{
    h_table_via_recursion, hultman_table_brute, hultman_table_via_stirling, p_family_via_recursion,
    stirling_table, wick_polynomial,
};
use hultman::verify::{reference_pg, reference_pn};
use hultman::{HultmanTable, IntPolynomial, McConfig};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Outcome {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn single_threaded<T: Send>(f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .expect("one-thread pool")
        .install(f)
}

fn first_difference(a: &HultmanTable, b: &HultmanTable, n_max: usize) -> Option<(usize, usize)> {
    (0..=n_max).find_map(|n| {
        (1..=n + 1)
            .find(|&k| a.get(n, k) != b.get(n, k))
            .map(|k| (n, k))
    })
}

fn rows_and_parity(t: &HultmanTable, n_max: usize) -> Option<String> {
    (0..=n_max).find_map(|n| {
        if t.row_sum(n) != factorial(n) {
            return Some(format!("{} row {n} sums to {}", t.source(), t.row_sum(n)));
        }
        (1..=n + 1)
            .find(|&k| (n + k) % 2 == 0 && t.get(n, k) != BigInt::ZERO)
            .map(|k| format!("{} H({n}, {k}) nonzero", t.source()))
    })
}

fn c1_stirling_formula() -> Outcome {
    let ((brute, closed), elapsed) =
        timed(|| single_threaded(|| (hultman_table_brute(9, 9), hultman_table_via_stirling(9))));
    let (brute, closed) = (
        brute.map_err(|e| e.to_string())?,
        closed.map_err(|e| e.to_string())?,
    );
    let s = stirling_table(11);
    // The formula evaluated directly, independent of the table builder.
    for n in 0..=9usize {
        for k in 1..=n + 1 {
            let want = if (n + k) % 2 == 1 {
                BigInt::from(2) * s.get(n + 2, k) / BigInt::from((n + 1) * (n + 2))
            } else {
                BigInt::ZERO
            };
            if brute.get(n, k) != want || closed.get(n, k) != want {
                return Err(format!(
                    "H({n}, {k}): brute {}, formula {want}",
                    brute.get(n, k)
                ));
            }
        }
    }
    ensure(
        elapsed < Duration::from_secs(30),
        format!("n <= 9 exact, {:.2?} on one thread", elapsed),
        format!("too slow: {elapsed:.2?}"),
    )
}

fn c2_recursion() -> Outcome {
    let rec = h_table_via_recursion(200).map_err(|e| e.to_string())?;
    let brute = hultman_table_brute(9, 9).map_err(|e| e.to_string())?;
    if let Some((n, k)) = first_difference(&rec, &brute, 9) {
        return Err(format!("H({n}, {k}) differs from brute force"));
    }
    if let Some(msg) = rows_and_parity(&rec, 200) {
        return Err(msg);
    }
    ensure(
        rec.n_max() == 200,
        "matches brute force for n <= 9, exact to n = 200",
        "short table",
    )
}

fn c3_reference_pn() -> Outcome {
    let rec = p_family_via_recursion(9).map_err(|e| e.to_string())?;
    if let Some(n) = (0..=9).find(|&n| rec.get(n) != &reference_pn(n)) {
        return Err(format!("p_{n} = {}", rec.get(n)));
    }
    let p6 = IntPolynomial::from_i64s(&[0, 180, 0, 469, 0, 70, 0, 1]);
    ensure(
        rec.get(6) == &p6,
        format!("p_0..p_9 exact, p_6 = {}", rec.get(6)),
        "p_6 differs",
    )
}

fn c4_gluing_bijection() -> Outcome {
    let mut total = 0;
    for n in 0..=9 {
        let r = verify_gluing_bijection(n, 9).map_err(|e| e.to_string())?;
        if let Some(c) = r.counterexample {
            return Err(format!(
                "{}: {} orbits, {} cycles",
                c.permutation, c.vertex_orbits, c.alternating_cycles
            ));
        }
        total += r.permutations;
    }
    Ok(format!("n <= 9, {total} permutations, zero exceptions"))
}

fn c5_wick() -> Outcome {
    let rec = p_family_via_recursion(9).map_err(|e| e.to_string())?;
    for n in 0..=9 {
        let w = wick_polynomial(n, 9).map_err(|e| e.to_string())?;
        if &w != rec.get(n) {
            return Err(format!("n = {n}: {w} vs {}", rec.get(n)));
        }
    }
    Ok("wick_polynomial(n) == p_n for n <= 9".into())
}

fn c6_generating_function() -> Outcome {
    let pn = p_family_via_recursion(20).map_err(|e| e.to_string())?;
    let n_values: Vec<u64> = (1..=12).collect();
    let r = verify_f_against_pn(&n_values, 20, &pn).map_err(|e| e.to_string())?;
    if let Some(o) = r.orders.iter().find(|o| !o.agree) {
        return Err(format!("n = {} disagrees: {:?}", o.n, o.mismatch));
    }
    ensure(
        r.passed && r.certified_through == Some(10),
        "N = 1..12, n <= 20 agree; identity certified for n <= 10",
        format!("certified through {:?}", r.certified_through),
    )
}

fn c7_reference_pg() -> Outcome {
    let table = h_table_via_recursion(truncation_table_size(6)).map_err(|e| e.to_string())?;
    let trunc = pg_list_via_truncation(6, &table).map_err(|e| e.to_string())?;
    if let Some(g) = (0..=5).find(|&g| trunc[g].poly != reference_pg(g)) {
        return Err(format!("P_{g} = {}", trunc[g].poly));
    }
    let ode = pg_chain_via_ode(6).map_err(|e| e.to_string())?;
    if let Some(g) = (0..=6).find(|&g| ode[g].poly != trunc[g].poly) {
        return Err(format!(
            "g = {g}: ode {} vs truncation {}",
            ode[g].poly, trunc[g].poly
        ));
    }
    Ok("P_0..P_5 exact; ode chain == truncation through g = 6".into())
}

fn c8_pg_properties() -> Outcome {
    let pgs = pg_chain_via_ode(8).map_err(|e| e.to_string())?;
    for p in &pgs[1..] {
        let r = verify_pg_properties(p).map_err(|e| e.to_string())?;
        if let Some(c) = r.checks.iter().find(|c| !c.passed) {
            return Err(format!("P_{}: {} ({})", p.g, c.name, c.detail));
        }
    }
    // P_g(1) by the ratio (4g-1)(4g-2)(4g-3)/(4g+2), starting from P_0(1) = 1.
    let mut by_ratio = vec![BigInt::from(1)];
    for g in 1..=8i64 {
        let num = by_ratio[g as usize - 1].clone() * (4 * g - 1) * (4 * g - 2) * (4 * g - 3);
        let den = BigInt::from(4 * g + 2);
        if &num % &den != BigInt::ZERO {
            return Err(format!("ratio not integral at g = {g}"));
        }
        by_ratio.push(num / den);
    }
    let direct: Vec<BigInt> = pgs.iter().map(|p| p.poly.eval(&BigInt::from(1))).collect();
    if direct != by_ratio {
        return Err(format!("direct {direct:?} vs ratio {by_ratio:?}"));
    }
    for (g, value) in direct.iter().enumerate().skip(1) {
        let df = double_factorial(4 * g as i64 - 1).map_err(|e| e.to_string())?;
        if value * (2 * g + 1) != df {
            return Err(format!("P_{g}(1) != (4g-1)!!/(2g+1)"));
        }
    }
    let head: Vec<String> = direct.iter().take(4).map(ToString::to_string).collect();
    ensure(
        head == ["1", "1", "21", "1485"],
        format!("g <= 8 hold; P_g(1) = {}, ...", head.join(", ")),
        format!("P_g(1) begins {}", head.join(", ")),
    )
}

fn c9_row_sums() -> Outcome {
    let tables = [
        hultman_table_brute(9, 9),
        hultman_table_via_stirling(30),
        h_table_via_recursion(30),
    ];
    for t in tables {
        let t = t.map_err(|e| e.to_string())?;
        if let Some(msg) = rows_and_parity(&t, t.n_max()) {
            return Err(msg);
        }
    }
    let pn = p_family_via_recursion(30).map_err(|e| e.to_string())?;
    if let Some(n) = (0..=30).find(|&n| pn.get(n).eval(&BigInt::from(1)) != factorial(n)) {
        return Err(format!("p_{n}(1) != {n}!"));
    }
    Ok("brute n <= 9, stirling and recursion n <= 30, p_n(1) = n! to n = 30".into())
}

fn c10_monte_carlo() -> Outcome {
    let pn = p_family_via_recursion(4).map_err(|e| e.to_string())?;
    let mut lines = Vec::new();
    for (dim, order, exact) in [(2, 3, 36), (3, 4, 672)] {
        let cfg = McConfig::new(dim, order, 1_000_000, DEFAULT_SEED);
        let (r, elapsed) = timed(|| mc_verify(&cfg, &pn, DEFAULT_Z_THRESHOLD));
        let r = r.map_err(|e| e.to_string())?;
        let e = &r.estimate;
        let line = format!(
            "N={dim} n={order}: mean {:.3}, z {:+.2}, {elapsed:.2?}",
            e.mean, e.z_score
        );
        if e.exact_value != BigInt::from(exact) || !r.passed || elapsed >= Duration::from_secs(60) {
            return Err(format!("{line} (exact {})", e.exact_value));
        }
        lines.push(line);
    }
    Ok(lines.join("; "))
}

fn run_verify(threads: &str) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_hultman"))
        .args([
            "verify",
            "--suite",
            "all",
            "--tier",
            "fast",
            "--threads",
            threads,
        ])
        .env_remove("HULTMAN_CACHE_DIR")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("--threads {threads} exited with {}", out.status));
    }
    serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())
}

fn c11_thread_determinism() -> Outcome {
    let one = run_verify("1")?;
    let eight = run_verify("8")?;
    let same = one["payload"] == eight["payload"] && one["params"] == eight["params"];
    ensure(
        same,
        "payloads identical for --threads 1 and 8",
        "payloads differ",
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("1 brute force == Stirling formula", c1_stirling_formula),
        ("2 h_g(n) recursion", c2_recursion),
        ("3 reference p_0..p_9", c3_reference_pn),
        ("4 gluing orbits == alternating cycles", c4_gluing_bijection),
        ("5 Wick sum == p_n", c5_wick),
        ("6 generating function F", c6_generating_function),
        ("7 reference P_0..P_5, ode == truncation", c7_reference_pg),
        ("8 P_g properties", c8_pg_properties),
        ("9 row sums and parity", c9_row_sums),
        ("10 Monte Carlo moments", c10_monte_carlo),
        ("11 thread-count determinism", c11_thread_determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
