//! Acceptance suite. Prints one PASS/FAIL/SKIP line per criterion and exits
//! non-zero if any criterion fails.
//!
//! Criterion 7 needs benchmark PLA files; point `QEMBED_BENCH_DIR` at a
//! directory containing them to run it.

mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use common::*;
use qembed::coder::ceil_log2;
use qembed::report::{average_reduction, run_batch, RunConfig};
use qembed::{
    assign_codes, build_ph_tree, count_cofactor, count_enumerate, embed_bennett, embed_coded,
    embed_minimal, root_weight_bound, verify_embedding, width_bennett, width_encoded, width_minimal,
    BooleanFunction, RootWeight,
};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let f = table2();
    let h = count_enumerate(&f).map_err(|e| e.to_string())?;
    let got: Vec<(String, u128)> = h.iter().map(|(p, mu)| (p.to_string(), mu)).collect();
    let want: Vec<(String, u128)> = [("000", 2), ("100", 1), ("110", 4), ("111", 1)]
        .iter()
        .map(|(p, mu)| (p.to_string(), *mu))
        .collect();
    ensure(got == want, || format!("histogram {got:?}"))?;
    let tree = build_ph_tree(&h).map_err(|e| e.to_string())?;
    let cb = assign_codes(&tree);
    ensure(cb.length_multiset() == vec![1, 2, 3, 3], || {
        format!("code lengths {:?}", cb.length_multiset())
    })?;
    ensure(tree.root_weight() == 3, || format!("root weight {}", tree.root_weight()))?;
    let widths = (
        width_bennett(&f),
        width_minimal(&f, &h).map_err(|e| e.to_string())?,
        width_encoded(&f, &h).map_err(|e| e.to_string())?,
    );
    ensure(widths == (6, 5, 3), || format!("widths {widths:?}"))?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("widths (6, 5, 3), code lengths {{1,2,3,3}} in {elapsed:?}"))
}

fn criterion_2() -> Outcome {
    let f = half_adder();
    let h = count_enumerate(&f).map_err(|e| e.to_string())?;
    let widths = (
        width_bennett(&f),
        width_minimal(&f, &h).map_err(|e| e.to_string())?,
        width_encoded(&f, &h).map_err(|e| e.to_string())?,
    );
    ensure(widths == (4, 3, 2), || format!("widths {widths:?}"))?;
    let minimal = embed_minimal(&f, &h).map_err(|e| e.to_string())?;
    let restricted: Vec<u128> = (0..4)
        .map(|x| minimal.project(minimal.apply(minimal.input_word(x)).unwrap()))
        .collect();
    ensure(restricted == vec![0b00, 0b01, 0b01, 0b10], || {
        format!("a=0 outputs {restricted:?}")
    })?;
    let cb = assign_codes(&build_ph_tree(&h).map_err(|e| e.to_string())?);
    let coded = embed_coded(&f, &h, &cb).map_err(|e| e.to_string())?;
    for spec in [&minimal, &coded, &embed_bennett(&f)] {
        let report = verify_embedding(spec, &f);
        ensure(report.passed(), || report.to_string())?;
    }
    Ok("widths (4, 3, 2); a=0 rows reproduce the half adder; all embeddings verify".into())
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(3);
    let mut exact = 0;
    const RUNS: usize = 10_000;
    for i in 0..RUNS {
        let n = rng.gen_range(1..=10);
        let m = rng.gen_range(1..=8);
        let f = random_table(&mut rng, n, m);
        let h = count_enumerate(&f).map_err(|e| e.to_string())?;
        let root = build_ph_tree(&h).map_err(|e| e.to_string())?.root_weight();
        ensure(root == n || root == n + 1, || format!("run {i}: n={n}, root {root}"))?;
        let rounded: u128 = h.iter().map(|(_, mu)| 1u128 << ceil_log2_ref(mu)).sum();
        let sum_exact = rounded == 1u128 << n;
        let all_pow2 = h.iter().all(|(_, mu)| mu.count_ones() == 1);
        let bound = root_weight_bound(&h).map_err(|e| e.to_string())? == RootWeight::ExactlyN;
        ensure(
            (root == n) == sum_exact && sum_exact == all_pow2 && bound == sum_exact,
            || format!("run {i}: root {root}, n {n}, rounded {rounded}, pow2 {all_pow2}"),
        )?;
        exact += usize::from(root == n);
    }
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(30), || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{RUNS}/{RUNS} roots in {{n, n+1}} ({exact} exactly n), power-of-two equivalences hold, {elapsed:?}"
    ))
}

fn criterion_4() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut errors = 0;
    for i in 0..1_000 {
        let n = rng.gen_range(1..=16);
        let m = rng.gen_range(1..=6);
        let kind = match rng.gen_range(0..10) {
            0 => CoverKind::Uncovered,
            1 => CoverKind::Conflicting,
            _ => CoverKind::Consistent,
        };
        let holes = kind == CoverKind::Consistent && rng.gen_bool(0.3);
        let cover = random_cover(&mut rng, n, m, holes, kind);
        let enumerated = count_enumerate(&cover.function);
        let cofactored = count_cofactor(&cover.function);
        match (&enumerated, &cofactored) {
            (Ok(a), Ok(b)) => {
                ensure(a == b, || format!("case {i}: {a:?} vs {b:?}"))?;
                let tally: Vec<(u64, u128)> = a.iter().map(|(p, mu)| (p.value(), mu)).collect();
                let expected: Vec<(u64, u128)> = cover.expected().into_iter().collect();
                ensure(tally == expected, || format!("case {i}: painted table disagrees"))?;
            }
            (Err(a), Err(b)) => {
                errors += 1;
                ensure(std::mem::discriminant(a) == std::mem::discriminant(b), || {
                    format!("case {i}: {a} vs {b}")
                })?;
            }
            _ => return Err(format!("case {i}: {enumerated:?} vs {cofactored:?}")),
        }
        let want_error = cover.kind != CoverKind::Consistent;
        ensure(enumerated.is_err() == want_error, || {
            format!("case {i}: {:?} cover gave {enumerated:?}", cover.kind)
        })?;
    }
    Ok(format!("1000/1000 covers agree bit-exactly ({errors} agreeing error cases)"))
}

fn sweep_function(rng: &mut StdRng) -> BooleanFunction {
    let n = rng.gen_range(1..=4);
    let m = rng.gen_range(1..=4);
    random_table(rng, n, m)
}

fn criterion_5() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..1_000 {
        let f = sweep_function(&mut rng);
        let h = count_enumerate(&f).map_err(|e| e.to_string())?;
        let cb = assign_codes(&build_ph_tree(&h).map_err(|e| e.to_string())?);
        let specs = [
            embed_bennett(&f),
            embed_minimal(&f, &h).map_err(|e| e.to_string())?,
            embed_coded(&f, &h, &cb).map_err(|e| e.to_string())?,
        ];
        for spec in &specs {
            let report = verify_embedding(spec, &f);
            ensure(report.passed(), || format!("case {i}: {report}"))?;
        }
        let coded = &specs[2];
        for x in 0..1u64 << f.inputs() {
            let y = coded.apply(coded.input_word(x)).map_err(|e| e.to_string())?;
            let expect = f.evaluate(qembed::BitPattern::new(x, f.inputs()).unwrap()).unwrap();
            ensure(coded.decode(y) == Some(expect), || format!("case {i}: x={x} decodes wrong"))?;
        }
        let (b, mi, e) = (
            width_bennett(&f),
            width_minimal(&f, &h).map_err(|e| e.to_string())?,
            width_encoded(&f, &h).map_err(|e| e.to_string())?,
        );
        ensure(e <= mi && mi <= b, || format!("case {i}: widths {b}/{mi}/{e}"))?;
    }
    Ok("1000/1000 functions: three bijections, decode(project) = f, encoded <= minimal <= bennett".into())
}

fn criterion_6() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for i in 0..1_000 {
        let f = sweep_function(&mut rng);
        let h = count_enumerate(&f).map_err(|e| e.to_string())?;
        let cb = assign_codes(&build_ph_tree(&h).map_err(|e| e.to_string())?);
        let words: Vec<_> = cb.iter().map(|(_, e)| e.codeword).collect();
        for (a, wa) in words.iter().enumerate() {
            for (b, wb) in words.iter().enumerate() {
                ensure(a == b || !wa.is_prefix_of(wb), || {
                    format!("case {i}: {wa} is a prefix of {wb}")
                })?;
            }
        }
        for (p, mu) in h.iter() {
            let len = cb.codeword(&p).unwrap().len();
            ensure(len + ceil_log2_ref(mu) <= cb.total_width(), || {
                format!("case {i}: pattern {p} needs {len} + {}", ceil_log2(mu))
            })?;
        }
    }
    Ok("1000/1000 codebooks prefix-free with sufficient garbage budget".into())
}

/// Returns `Ok(None)` when no corpus is configured.
fn criterion_7() -> Result<Option<String>, String> {
    let Some(dir) = std::env::var_os("QEMBED_BENCH_DIR") else {
        return Ok(None);
    };
    let cfg = RunConfig {
        inputs: vec![PathBuf::from(dir)],
        implicit_zero: true,
        skip_reversible: true,
        ..Default::default()
    };
    let results = run_batch(&cfg).map_err(|e| e.to_string())?;
    let mut reports = Vec::new();
    let mut failed = 0;
    for (path, outcome) in results {
        match outcome {
            Ok(Some(a)) => reports.push(a.report),
            Ok(None) => {}
            Err(e) => {
                failed += 1;
                eprintln!("  {}: {e}", path.display());
            }
        }
    }
    ensure(!reports.is_empty(), || "no non-reversible benchmarks analyzed".into())?;
    for r in &reports {
        ensure(r.encoded == r.n || r.encoded == r.n + 1, || {
            format!("{}: encoded {} for n {}", r.name, r.encoded, r.n)
        })?;
    }
    for (name, expect) in [("cps_140", 107), ("e64_149", 65)] {
        if let Some(r) = reports.iter().find(|r| r.name == name) {
            let saved = r.minimal - r.encoded;
            ensure(saved == expect, || format!("{name}: reduction {saved}, expected {expect}"))?;
        }
    }
    let avg = average_reduction(&reports) * 100.0;
    ensure((30.0..=43.0).contains(&avg), || format!("average reduction {avg:.2}%"))?;
    Ok(Some(format!(
        "{} benchmarks ({failed} unreadable), average reduction {avg:.2}%",
        reports.len()
    )))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("1 table-2 golden values", criterion_1),
        ("2 half-adder golden values", criterion_2),
        ("3 root weight bound on 10,000 random functions", criterion_3),
        ("4 counting backends agree on 1,000 covers", criterion_4),
        ("5 embedding correctness sweep", criterion_5),
        ("6 prefix-code soundness", criterion_6),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("criterion {name}: PASS ({detail})"),
            Err(detail) => {
                failed += 1;
                println!("criterion {name}: FAIL ({detail})");
            }
        }
    }
    match criterion_7() {
        Ok(Some(detail)) => println!("criterion 7 benchmark reproduction: PASS ({detail})"),
        Ok(None) => println!(
            "criterion 7 benchmark reproduction: SKIP (set QEMBED_BENCH_DIR to a benchmark PLA directory)"
        ),
        Err(detail) => {
            failed += 1;
            println!("criterion 7 benchmark reproduction: FAIL ({detail})");
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
