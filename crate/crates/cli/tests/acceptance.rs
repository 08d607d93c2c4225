//! Acceptance suite. Each criterion prints one `[PASS]` or `[FAIL]` line;
//! the process exits nonzero if any criterion fails.

use std::fs;
use std::io::Write;
use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use qrgap::complexity::{
    correlation_measure_2, linear_complexity_bm, linear_complexity_gcd, max_order_complexity,
    periodic_max_order_complexity, C2_DEFAULT_CAP,
};
use qrgap::numtheory::nearest_primes;
use qrgap::sequences::{build_d, build_t};
use qrgap::theorems::{
    check_cm, check_cm_for_prime, check_imbalance, check_local_pattern, check_moc_bound, check_pattern_thm,
    exact_checks, Quantity, TheoremId, Verdict, ASYMPTOTIC_FLOOR,
};
use qrgap::{BitSequence, ValidatedPrime};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// Independent helpers: trial division, brute-force orders, residues by squaring.

fn is_prime_td(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn order_of_2(r: u64) -> u64 {
    let (mut x, mut k) = (2 % r, 1);
    while x != 1 {
        x = x * 2 % r;
        k += 1;
    }
    k
}

fn two_is_primitive_root(r: u64) -> bool {
    r > 2 && is_prime_td(r) && order_of_2(r) == r - 1
}

fn primes_upto(hi: u64) -> Vec<u64> {
    (5..=hi).filter(|&p| is_prime_td(p)).collect()
}

fn sorted_residues(p: u64) -> Vec<u64> {
    let mut q: Vec<u64> = (1..p).map(|a| a * a % p).collect();
    q.sort_unstable();
    q.dedup();
    q
}

/// `(d, t)` built straight from the residue list.
fn gap_sequences(p: u64) -> (Vec<u8>, Vec<u8>) {
    let q = sorted_residues(p);
    let t_len = ((p - 3) / 2) as usize;
    assert_eq!(q.len(), t_len + 1);
    let d = (0..t_len).map(|n| ((q[n] + q[n + 1]) % 2) as u8).collect();
    let t = (0..t_len).map(|n| u8::from(q[n + 1] == q[n] + 1)).collect();
    (d, t)
}

fn periodic(bits: &[u8]) -> BitSequence {
    BitSequence::periodic(bits).unwrap()
}

fn thm1_applies(p: u64) -> bool {
    let m = p - 3;
    // s = 0 or 1, i.e. p - 3 = 2r or 4r with r odd.
    [2u64, 4]
        .into_iter()
        .any(|f| m.is_multiple_of(f) && (m / f) % 2 == 1 && (m / f == 1 || two_is_primitive_root(m / f)))
}

fn thm_t_lc_applies(p: u64) -> bool {
    matches!(p % 16, 9 | 13) && two_is_primitive_root((p - 3) / 2)
}

/// Maximum order complexity by scanning all position pairs: one more than
/// the longest common extension that ends in a disagreement inside the word.
fn moc_pair_scan(x: &[u8]) -> usize {
    let n = x.len();
    let mut best = 0;
    let mut next = vec![0usize; n + 1];
    for i in (0..n).rev() {
        let mut cur = vec![0usize; n + 1];
        // cur[j] is the common extension of i and j; it ends in a mismatch
        // when j + cur[j] < n.
        for j in i + 1..n {
            if x[i] == x[j] {
                cur[j] = 1 + next[j + 1];
            }
            if j + cur[j] < n {
                best = best.max(cur[j] + 1);
            }
        }
        next = cur;
    }
    best.max(1)
}

fn c2_cubic(x: &[u8]) -> usize {
    let n = x.len();
    let sign = |b: u8| if b == 0 { 1i64 } else { -1 };
    let mut best = 0;
    for d2 in 1..n {
        for d1 in 0..d2 {
            for m in 1..=n - d2 {
                let s: i64 = (0..m).map(|k| sign(x[k + d1]) * sign(x[k + d2])).sum();
                best = best.max(s.unsigned_abs() as usize);
            }
        }
    }
    best
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    (0..len).map(|_| rng.gen_range(0..2u8)).collect()
}

fn qrgap_bin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_qrgap")).args(args).output().expect("binary runs")
}

fn criterion_1() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().join("survey.csv");
    let start = Instant::now();
    let o = qrgap_bin(&["survey", "--first-k", "1000", "--measures", "lc_d", "--out", out.to_str().unwrap()]);
    let secs = start.elapsed().as_secs_f64();
    ensure(o.status.success(), || format!("exit {:?}", o.status.code()))?;
    let summary = String::from_utf8_lossy(&o.stdout).to_string();
    let line = |prefix: &str| {
        summary
            .lines()
            .find(|l| l.starts_with(prefix))
            .map(str::to_string)
            .ok_or(format!("summary lacks {prefix:?}"))
    };
    let incl = line("lc_d maximal (including p = 5)")?;
    let excl = line("lc_d maximal (excluding p = 5)")?;
    ensure(summary.contains("records: 1000 (p = 5 .. 7933)"), || "selection is not 5..7933".into())?;
    ensure(incl.ends_with(": 671 of 1000") || excl.contains(": 671 of"), || {
        format!("{incl}; {excl}")
    })?;
    let csv = fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let maximal = csv.lines().skip(1).filter(|l| l.split(',').nth(3) == Some("true")).count();
    ensure(maximal == 671, || format!("CSV has {maximal} maximal rows"))?;
    Ok(format!("{incl}; {excl}; {secs:.1} s"))
}

fn criterion_2() -> Outcome {
    let primes: Vec<u64> = primes_upto(100_000).into_iter().filter(|&p| thm1_applies(p)).collect();
    let failures: Vec<String> = primes
        .par_iter()
        .filter_map(|&p| {
            let vp = ValidatedPrime::new(p).unwrap();
            let (d, _) = gap_sequences(p);
            let seq = periodic(&d);
            let lc = linear_complexity_gcd(&seq).unwrap();
            let report = exact_checks(&vp).unwrap().into_iter().find(|r| r.theorem_id == TheoremId::ThmDMaxlc);
            let report_ok = report.is_some_and(|r| r.hypothesis_holds && r.verdict == Verdict::Confirmed);
            (lc as u64 != (p - 3) / 2 || seq != build_d(&vp) || !report_ok)
                .then(|| format!("p = {p}: L = {lc}"))
        })
        .collect();
    ensure(failures.is_empty(), || failures.join(", "))?;
    ensure(primes.len() > 100, || format!("only {} primes satisfy the hypothesis", primes.len()))?;
    Ok(format!("{} primes p <= 10^5 satisfy the hypothesis, all with L(d_n) = (p-3)/2", primes.len()))
}

fn criterion_3() -> Outcome {
    let primes = primes_upto(10_000);
    let mut failures = Vec::new();
    for &p in &primes {
        let (d, t) = gap_sequences(p);
        let q = sorted_residues(p);
        let ones_d = d.iter().filter(|&&b| b == 1).count() as u64;
        let ones_t = t.iter().filter(|&&b| b == 1).count() as u64;
        if ones_d.is_multiple_of(2) != (p % 8 == 3) {
            failures.push(format!("D(1) at p = {p}"));
        }
        let largest = *q.last().unwrap();
        let largest_ok = match p % 8 {
            1 | 5 => largest == p - 1,
            3 => largest == p - 2,
            _ => (p - largest) % 2 == 1 && p - largest > 2,
        };
        if !largest_ok {
            failures.push(format!("largest residue at p = {p}"));
        }
        let e5 = if p % 4 == 3 { (p - 3) / 4 } else { (p - 5) / 4 };
        if ones_t != e5 {
            failures.push(format!("ones of t at p = {p}"));
        }
        if (ones_t % 2 == 1) != matches!(p % 8, 1 | 7) {
            failures.push(format!("T(1) at p = {p}"));
        }
    }
    let violations: usize = primes
        .par_iter()
        .map(|&p| {
            exact_checks(&ValidatedPrime::new(p).unwrap())
                .unwrap()
                .iter()
                .filter(|r| r.is_violation())
                .count()
        })
        .sum();
    ensure(failures.is_empty() && violations == 0, || {
        format!("{violations} VIOLATED reports; {}", failures.join(", "))
    })?;
    Ok(format!(
        "{} primes 5 <= p <= 10^4: D(1), largest residue, ones of t_n, T(1) all exact; 0 VIOLATED",
        primes.len()
    ))
}

fn criterion_4() -> Outcome {
    let primes: Vec<u64> = primes_upto(100_000).into_iter().filter(|&p| thm_t_lc_applies(p)).collect();
    let results: Vec<(u64, u64, u64, bool)> = primes
        .par_iter()
        .map(|&p| {
            let vp = ValidatedPrime::new(p).unwrap();
            let (_, t) = gap_sequences(p);
            let lc = linear_complexity_gcd(&periodic(&t)).unwrap() as u64;
            let predicted = if p % 16 == 9 { (p - 3) / 2 } else { (p - 5) / 2 };
            let report = exact_checks(&vp).unwrap().into_iter().find(|r| r.theorem_id == TheoremId::ThmTLc);
            let ok = report.is_some_and(|r| r.hypothesis_holds && r.verdict == Verdict::Confirmed);
            (p, predicted, lc, ok)
        })
        .collect();
    let bad: Vec<String> = results
        .iter()
        .filter(|(_, pred, lc, ok)| pred != lc || !ok)
        .map(|(p, pred, lc, _)| format!("p = {p}: predicted {pred}, L = {lc}"))
        .collect();
    ensure(bad.is_empty(), || bad.join(", "))?;
    let lc_of = |p| results.iter().find(|r| r.0 == p).map(|r| r.2);
    ensure(lc_of(29) == Some(12) && lc_of(41) == Some(19), || {
        format!("L(t) at 29, 41: {:?}, {:?}", lc_of(29), lc_of(41))
    })?;
    Ok(format!("{} primes p <= 10^5 satisfy the hypothesis; L(t_29) = 12, L(t_41) = 19", results.len()))
}

fn criterion_5() -> Outcome {
    let mut lc_cases = 0;
    for p in primes_upto(2000) {
        let vp = ValidatedPrime::new(p).unwrap();
        for seq in [build_d(&vp), build_t(&vp)] {
            let t = seq.len();
            let (g, b) = (linear_complexity_gcd(&seq).unwrap(), linear_complexity_bm(&seq, 2 * t).unwrap());
            ensure(g == b, || format!("p = {p}: gcd {g}, BM {b}"))?;
            lc_cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
    for _ in 0..500 {
        let len = rng.gen_range(1..=64);
        let seq = periodic(&random_word(&mut rng, len));
        let (g, b) = (linear_complexity_gcd(&seq).unwrap(), linear_complexity_bm(&seq, 2 * len).unwrap());
        ensure(g == b, || format!("random {seq}: gcd {g}, BM {b}"))?;
        lc_cases += 1;
    }
    let mut moc_cases = 0u64;
    for len in 2..=20usize {
        let bad = (0u32..1 << len).into_par_iter().find_any(|&w| {
            let x: Vec<u8> = (0..len).map(|i| ((w >> i) & 1) as u8).collect();
            max_order_complexity(&BitSequence::finite(&x), len).unwrap() != moc_pair_scan(&x)
        });
        ensure(bad.is_none(), || format!("word {bad:?} of length {len}"))?;
        moc_cases += 1 << len;
    }
    for _ in 0..200 {
        let len = rng.gen_range(2..=40);
        let x = random_word(&mut rng, len);
        let (a, b) = (max_order_complexity(&BitSequence::finite(&x), len).unwrap(), moc_pair_scan(&x));
        ensure(a == b, || format!("{x:?}: automaton {a}, pair scan {b}"))?;
        moc_cases += 1;
    }
    Ok(format!("{lc_cases} linear complexity cases, {moc_cases} maximum order complexity cases agree"))
}

fn near_million() -> Result<Vec<u64>, String> {
    let primes = nearest_primes(1_000_000, 10);
    // Independent: the ten primes closest to 10^6 by trial division.
    let mut expect: Vec<u64> = (999_000..1_001_000).filter(|&n| is_prime_td(n)).collect();
    expect.sort_by_key(|&q| (q.abs_diff(1_000_000), q));
    expect.truncate(10);
    expect.sort_unstable();
    ensure(primes == expect, || format!("nearest primes {primes:?} != {expect:?}"))?;
    Ok(primes)
}

fn criterion_6() -> Outcome {
    let mut worst = 0.0f64;
    for p in near_million()? {
        let (d, _) = gap_sequences(p);
        let t = d.len() as f64;
        let n1 = d.iter().filter(|&&b| b == 1).count() as f64;
        let n0 = t - n1;
        let dev = (n0 / t - 1.0 / 3.0).abs().max((n1 / t - 2.0 / 3.0).abs());
        worst = worst.max(dev);
        ensure(dev <= 0.02, || format!("p = {p}: N0/T = {:.5}, N1/T = {:.5}", n0 / t, n1 / t))?;
        let r = check_imbalance(&ValidatedPrime::new(p).unwrap(), 0.02, ASYMPTOTIC_FLOOR).unwrap();
        ensure(r.verdict == Verdict::Confirmed, || format!("p = {p}: {}", r.detail))?;
    }
    Ok(format!("largest deviation {worst:.5} <= 0.02 over the ten primes nearest 10^6"))
}

fn window_counts(t: &[u8], s: usize, starts: usize) -> Vec<usize> {
    let mut counts = vec![0; 1 << s];
    for n in 0..starts {
        let code = (0..s).fold(0usize, |acc, i| acc << 1 | t[(n + i) % t.len()] as usize);
        counts[code] += 1;
    }
    counts
}

fn criterion_7() -> Outcome {
    let (mut worst_rel, mut worst_ratio, mut worst_ratio_half) = (0.0f64, 0.0f64, 0.0f64);
    for p in near_million()? {
        let (_, t) = gap_sequences(p);
        let pf = p as f64;
        for s in 1..=4 {
            let expected = pf / (1u64 << (s + 1)) as f64;
            for (code, &c) in window_counts(&t, s, t.len()).iter().enumerate() {
                let rel = (c as f64 - expected).abs() / expected;
                worst_rel = worst_rel.max(rel);
                ensure(rel <= 0.05, || format!("p = {p}, s = {s}, pattern {code:0s$b}: {c} vs {expected:.1}"))?;
            }
        }
        let n = t.len() / 2;
        for s in 1..=3 {
            let bound = 5.0 * s as f64 * pf.sqrt() * pf.ln().powi(2);
            let stated = n as f64 / (1u64 << (s + 1)) as f64;
            let halved = n as f64 / (1u64 << s) as f64;
            for &c in &window_counts(&t, s, n) {
                let dev = (c as f64 - stated).abs();
                worst_ratio = worst_ratio.max(dev / bound);
                worst_ratio_half = worst_ratio_half.max((c as f64 - halved).abs() / bound);
                ensure(dev <= bound, || format!("p = {p}, s = {s}: prefix deviation {dev} > {bound:.0}"))?;
            }
        }
        let vp = ValidatedPrime::new(p).unwrap();
        let r = check_pattern_thm(&vp, 4, 0.05, ASYMPTOTIC_FLOOR).unwrap();
        ensure(r.verdict == Verdict::Confirmed, || format!("p = {p}: {}", r.detail))?;
        let r = check_local_pattern(&vp, n, 3, 5.0).unwrap();
        ensure(r.verdict == Verdict::Confirmed, || format!("p = {p}: {}", r.detail))?;
    }
    Ok(format!(
        "worst relative deviation {worst_rel:.5} <= 0.05; prefix N = T/2 worst deviation/bound {worst_ratio:.4} \
         against N/2^(s+1) ({worst_ratio_half:.4} against N/2^s)"
    ))
}

fn criterion_8() -> Outcome {
    // Every periodic sequence examined by the sweeps above, plus random ones.
    let mut primes: Vec<u64> = primes_upto(10_000);
    primes.extend(primes_upto(100_000).into_iter().filter(|&p| p > 10_000 && (thm1_applies(p) || thm_t_lc_applies(p))));
    let checked: Vec<Result<usize, String>> = primes
        .par_iter()
        .map(|&p| {
            let vp = ValidatedPrime::new(p).unwrap();
            let mut n = 0;
            for (name, seq) in [("d", build_d(&vp)), ("t", build_t(&vp))] {
                if p > 10_000 && !(if name == "d" { thm1_applies(p) } else { thm_t_lc_applies(p) }) {
                    continue;
                }
                let l = linear_complexity_gcd(&seq).unwrap();
                let m = periodic_max_order_complexity(&seq).unwrap();
                // The all-zero t(5) has L = 0 and M = 1; see the decisions ledger.
                ensure(l.max(1) >= m, || format!("{name}({p}): L = {l} < M = {m}"))?;
                if name == "t" && p > 5 {
                    let bound = (seq.len() as f64).log2();
                    ensure(m as f64 >= bound, || format!("t({p}): M = {m} < log2 T = {bound:.3}"))?;
                }
                n += 1;
            }
            Ok(n)
        })
        .collect();
    let lm_cases: usize = checked.into_iter().collect::<Result<Vec<_>, _>>()?.iter().sum();
    let mut trivial_cases = 0;
    for p in near_million()? {
        let seq = build_t(&ValidatedPrime::new(p).unwrap());
        let m = periodic_max_order_complexity(&seq).unwrap();
        ensure(m as f64 >= (seq.len() as f64).log2(), || format!("t({p}): M = {m}"))?;
        trivial_cases += 1;
    }

    let c2_primes: Vec<u64> = primes_upto(10_000).into_iter().filter(|&p| p - 3 <= C2_DEFAULT_CAP as u64).collect();
    let c2_bad: Vec<String> = c2_primes
        .par_iter()
        .filter_map(|&p| {
            let r = check_cm_for_prime(&ValidatedPrime::new(p).unwrap(), C2_DEFAULT_CAP).unwrap();
            (r.verdict != Verdict::Confirmed).then(|| format!("p = {p}: {}", r.detail))
        })
        .collect();
    ensure(c2_bad.is_empty(), || c2_bad.join(", "))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    for _ in 0..300 {
        let len = rng.gen_range(2..=48);
        let x = random_word(&mut rng, len);
        let seq = BitSequence::finite(&x);
        let c2 = correlation_measure_2(&seq, len, C2_DEFAULT_CAP).unwrap().value;
        let oracle = c2_cubic(&x);
        ensure(c2 == oracle, || format!("{x:?}: C2 {c2}, cubic {oracle}"))?;
        let r = check_cm(&seq, len, C2_DEFAULT_CAP).unwrap();
        ensure(r.verdict == Verdict::Confirmed, || r.detail.clone())?;
        let periodic_seq = periodic(&x);
        let l = linear_complexity_gcd(&periodic_seq).unwrap();
        let m = periodic_max_order_complexity(&periodic_seq).unwrap();
        ensure(l.max(1) >= m, || format!("{x:?}: L = {l}, M = {m}"))?;
    }
    Ok(format!(
        "L >= M on {lm_cases} prime sequences + 300 random; M >= log2 T on all tested t_n (+{trivial_cases} near 10^6); \
         C2 >= M - 1 on {} primes (2T <= 4096) + 300 random words checked against a cubic search",
        c2_primes.len()
    ))
}

fn criterion_9() -> Outcome {
    let mut lines = Vec::new();
    for p in [1009u64, 10007] {
        let vp = ValidatedPrime::new(p).unwrap();
        let t = vp.period();
        for n in [t / 4, t / 2, t] {
            let r = check_moc_bound(&vp, n).unwrap();
            let (Some(Quantity::Real(main)), Quantity::Int(m)) = (r.predicted, r.computed) else {
                return Err(format!("p = {p}, N = {n}: report lacks both sides"));
            };
            ensure(r.verdict == Verdict::Confirmed, || r.detail.clone())?;
            lines.push(format!("p={p} N={n}: M(t,N)={m} vs main term {main:.2}"));
        }
        let m = periodic_max_order_complexity(&build_t(&vp)).unwrap();
        ensure(m as f64 >= (t as f64).log2(), || format!("p = {p}: M = {m}"))?;
    }
    Ok(format!("report only; {}", lines.join("; ")))
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut digests = Vec::new();
    for format in ["csv", "jsonl"] {
        let mut outputs = Vec::new();
        for (i, jobs) in ["1", "8", "8"].into_iter().enumerate() {
            let path = dir.path().join(format!("{format}-{i}"));
            let o = qrgap_bin(&[
                "survey", "--first-k", "400", "--measures", "lc_d,lc_t,moc,c2,stats", "--jobs", jobs, "--format",
                format, "--out", path.to_str().unwrap(),
            ]);
            ensure(o.status.success(), || String::from_utf8_lossy(&o.stderr).to_string())?;
            outputs.push(fs::read(&path).map_err(|e| e.to_string())?);
        }
        ensure(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{format} outputs differ"))?;
        digests.push(format!("{format} {} bytes", outputs[0].len()));
    }
    Ok(format!("--jobs 1, 8, 8 byte-identical on the first 400 primes ({})", digests.join(", ")))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("headline survey count", criterion_1),
        ("maximal L(d_n) sweep to 10^5", criterion_2),
        ("exact formulas to 10^4", criterion_3),
        ("L(t_n) sweep to 10^5", criterion_4),
        ("oracle equivalence", criterion_5),
        ("imbalance near 10^6", criterion_6),
        ("pattern distribution near 10^6", criterion_7),
        ("unconditional inequalities", criterion_8),
        ("maximum order complexity bound, report only", criterion_9),
        ("determinism across --jobs", criterion_10),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match result {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        // Written to the stderr handle directly so the line survives output capture.
        let _ = writeln!(err, "[{tag}] criterion {} ({name}): {detail} [{secs:.1} s]", i + 1);
    }
    let _ = writeln!(err, "acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
