//! Acceptance suite. Each test prints one `criterion N: PASS|FAIL` line;
//! run with `--nocapture` to see them.

use std::process::Command;
use std::time::{Duration, Instant};

use circular_balance::balance::{center_of_gravity, check_bc1, check_bc2, check_bc3, trig_progression_sum};
use circular_balance::reliability::{TABLE1_K, TABLE1_N};
use circular_balance::{
    enumerate_minimum_tiesets, reliability_product, BalanceCondition, SystemConfig, TieSetCatalog, UnitSet,
    WorkingStateProfile, DEFAULT_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ORDER_TOL: f64 = 1e-12;

/// Reference minimum tie-set counts: (k, n, BC1, BC2, BC3, BC2-BC1, BC3-BC2).
const REFERENCE_TABLE: [(usize, usize, usize, usize, usize, i64, i64); 20] = [
    (2, 6, 3, 5, 5, 2, 0),
    (4, 6, 3, 3, 3, 0, 0),
    (2, 8, 4, 4, 4, 0, 0),
    (4, 8, 6, 6, 6, 0, 0),
    (6, 8, 4, 4, 4, 0, 0),
    (2, 10, 5, 7, 7, 2, 0),
    (4, 10, 10, 12, 12, 2, 0),
    (6, 10, 10, 10, 10, 0, 0),
    (8, 10, 5, 5, 5, 0, 0),
    (2, 12, 6, 10, 10, 4, 0),
    (4, 12, 15, 19, 31, 4, 12),
    (6, 12, 11, 15, 36, 4, 21),
    (8, 12, 15, 15, 19, 0, 4),
    (10, 12, 6, 6, 6, 0, 0),
    (2, 14, 7, 9, 9, 2, 0),
    (4, 14, 21, 23, 23, 2, 0),
    (6, 14, 21, 23, 37, 2, 14),
    (8, 14, 21, 21, 35, 0, 14),
    (10, 14, 21, 21, 21, 0, 0),
    (12, 14, 7, 7, 7, 0, 0),
];

fn report(id: u32, name: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("criterion {id}: PASS  {name}");
    } else {
        println!("criterion {id}: FAIL  {name}");
        for f in failures {
            println!("    {f}");
        }
    }
}

fn table_systems() -> Vec<SystemConfig> {
    let mut v = Vec::new();
    for n in TABLE1_N {
        for k in TABLE1_K {
            if k < n {
                v.push(SystemConfig::new(n, k).unwrap());
            }
        }
    }
    v
}

fn catalog(config: SystemConfig, c: BalanceCondition) -> TieSetCatalog {
    enumerate_minimum_tiesets(config, c, DEFAULT_TOLERANCE).unwrap()
}

fn grid() -> Vec<f64> {
    (0..=100).map(|i| i as f64 / 100.0).collect()
}

#[test]
fn criterion_1_table_reproduction() {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_circbal")).arg("table1").output().unwrap();
    let elapsed = start.elapsed();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();

    let mut failures = Vec::new();
    if lines.first() != Some(&"k,n,bc1,bc2,bc3,diff21,diff32") {
        failures.push(format!("unexpected header {:?}", lines.first()));
    }
    if lines.len() != 21 {
        failures.push(format!("expected 20 rows, got {}", lines.len().saturating_sub(1)));
    }
    for (i, (k, n, b1, b2, b3, d21, d32)) in REFERENCE_TABLE.iter().enumerate() {
        let expected = format!("{k},{n},{b1},{b2},{b3},{d21},{d32}");
        let got = lines.get(i + 1).copied().unwrap_or("<missing>");
        if got != expected {
            failures.push(format!("row (k={k}, n={n}): expected {expected}, got {got}"));
        }
    }
    if elapsed > Duration::from_secs(10) {
        failures.push(format!("took {elapsed:?}, budget 10 s"));
    }
    report(1, "count table matches all 20 reference rows exactly", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_2_worked_cog_examples() {
    let mut failures = Vec::new();
    let balanced = center_of_gravity(&UnitSet::new(&[1, 4, 5, 9, 10], 12).unwrap());
    if balanced.norm >= 1e-9 {
        failures.push(format!("{{1,4,5,9,10}} norm {} not < 1e-9", balanced.norm));
    }
    let off = center_of_gravity(&UnitSet::new(&[3, 6, 8, 12], 12).unwrap());
    if (off.x + 0.0915).abs() > 5e-5 || (off.y - 0.0915).abs() > 5e-5 {
        failures.push(format!("{{3,6,8,12}} CoG ({}, {}) not within 5e-5 of (-0.0915, 0.0915)", off.x, off.y));
    }
    report(2, "center-of-gravity worked examples", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_3_implications_exhaustive() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut checked = 0u64;
    for n in 3..=14usize {
        for mask in 1u64..(1 << n) {
            let u = UnitSet::from_mask(mask, n).unwrap();
            let bc1 = check_bc1(&u);
            let bc2 = check_bc2(&u);
            let bc3 = check_bc3(&u, DEFAULT_TOLERANCE).unwrap();
            if bc1 && !bc3 {
                failures.push(format!("BC1 without BC3: n={n} {u}"));
            }
            if bc2 && !bc3 {
                failures.push(format!("BC2 without BC3: n={n} {u}"));
            }
            if bc1 && !bc2 {
                failures.push(format!("BC1 without BC2: n={n} {u}"));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}, budget 60 s"));
    }
    failures.truncate(20);
    report(3, &format!("BC1=>BC3 and BC2=>BC3 over {checked} subsets, n in 3..=14"), &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_4_progression_closed_form() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..1000 {
        let a: f64 = rng.gen_range(-10.0..10.0);
        let m: u64 = rng.gen_range(1..=1000);
        let d: f64 = loop {
            let d: f64 = rng.gen_range(-12.0..12.0);
            let turns = d / std::f64::consts::TAU;
            if (turns - turns.round()).abs() > 1e-3 {
                break d;
            }
        };
        let (c, s) = trig_progression_sum(a, d, m).unwrap();
        let (mut dc, mut ds) = (0.0f64, 0.0f64);
        for j in 0..m {
            let t = a + j as f64 * d;
            dc += t.cos();
            ds += t.sin();
        }
        if (c - dc).abs() > 1e-10 || (s - ds).abs() > 1e-10 {
            failures.push(format!("a={a} d={d} m={m}: closed ({c}, {s}) vs loop ({dc}, {ds})"));
        }
    }
    for m in 2..=200u64 {
        let (c, s) = trig_progression_sum(0.0, std::f64::consts::TAU / m as f64, m).unwrap();
        if c.abs() > 1e-10 || s.abs() > 1e-10 {
            failures.push(format!("full-turn progression m={m} gives ({c}, {s})"));
        }
    }
    failures.truncate(20);
    report(4, "trigonometric progression closed form vs direct summation", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_5_condition_ordering() {
    let mut failures = Vec::new();
    for config in table_systems() {
        let cats: Vec<TieSetCatalog> = BalanceCondition::ALL.iter().map(|&c| catalog(config, c)).collect();
        let profiles: Vec<WorkingStateProfile> = cats.iter().map(|c| WorkingStateProfile::new(c).unwrap()).collect();
        for r in grid() {
            let p: Vec<f64> = cats.iter().map(|c| reliability_product(c, r).unwrap()).collect();
            let e: Vec<f64> = profiles.iter().map(|w| w.reliability(r).unwrap()).collect();
            for (label, v) in [("R_product", &p), ("R_exact", &e)] {
                if v[2] < v[1] - ORDER_TOL || v[1] < v[0] - ORDER_TOL {
                    failures.push(format!("{label} {config} r={r}: BC1={} BC2={} BC3={}", v[0], v[1], v[2]));
                }
            }
        }
    }
    failures.truncate(20);
    report(5, "R(BC3) >= R(BC2) >= R(BC1) on a 101-point grid for all tabulated systems", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_6_product_form_fidelity_and_bound() {
    let mut failures = Vec::new();
    let disjoint = catalog(SystemConfig::new(6, 2).unwrap(), BalanceCondition::Bc1);
    let mut seen = 0u64;
    for t in disjoint.tiesets() {
        if seen & t.mask() != 0 {
            failures.push("6-out-of-6 BC1 tie-sets overlap".into());
        }
        seen |= t.mask();
    }
    let profile = WorkingStateProfile::new(&disjoint).unwrap();
    for r in grid() {
        let p = reliability_product(&disjoint, r).unwrap();
        let e = profile.reliability(r).unwrap();
        if (p - e).abs() > ORDER_TOL {
            failures.push(format!("disjoint case r={r}: product {p} vs exact {e}"));
        }
    }
    let at_half = profile.reliability(0.5).unwrap();
    if (at_half - 0.578125).abs() > ORDER_TOL {
        failures.push(format!("disjoint case at r=0.5: {at_half}, expected 0.578125"));
    }
    for config in table_systems() {
        for c in BalanceCondition::ALL {
            let cat = catalog(config, c);
            let w = WorkingStateProfile::new(&cat).unwrap();
            for r in grid() {
                let p = reliability_product(&cat, r).unwrap();
                let e = w.reliability(r).unwrap();
                if e > p + ORDER_TOL {
                    failures.push(format!("{config} {c} r={r}: exact {e} exceeds product {p}"));
                }
            }
        }
    }
    failures.truncate(20);
    report(6, "product form exact for disjoint tie-sets, upper bound otherwise", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_7_curve_shape() {
    let mut failures = Vec::new();
    let systems = table_systems();
    for &config in &systems {
        for c in BalanceCondition::ALL {
            let cat = catalog(config, c);
            if cat.is_empty() {
                continue;
            }
            let values: Vec<f64> = grid().iter().map(|&r| reliability_product(&cat, r).unwrap()).collect();
            if values[0] != 0.0 || values[100] != 1.0 {
                failures.push(format!("{config} {c}: R(0)={} R(1)={}", values[0], values[100]));
            }
            if let Some(i) = (1..values.len()).find(|&i| values[i] < values[i - 1]) {
                failures.push(format!("{config} {c}: R_product decreases at r={}", i as f64 / 100.0));
            }
        }
    }
    for n in TABLE1_N {
        for c in BalanceCondition::ALL {
            let curves: Vec<(usize, Vec<f64>)> = systems
                .iter()
                .filter(|s| s.n() == n)
                .map(|&s| {
                    let w = WorkingStateProfile::new(&catalog(s, c)).unwrap();
                    (s.k(), grid().iter().map(|&r| w.reliability(r).unwrap()).collect())
                })
                .collect();
            for pair in curves.windows(2) {
                let ((k_lo, lo), (k_hi, hi)) = (&pair[0], &pair[1]);
                for (i, (a, b)) in lo.iter().zip(hi).enumerate() {
                    if *b > *a + ORDER_TOL {
                        failures.push(format!("n={n} {c} r={}: R_exact(k={k_hi})={b} > R_exact(k={k_lo})={a}", i as f64 / 100.0));
                    }
                }
            }
        }
    }
    failures.truncate(20);
    report(7, "monotone S-curves with R(0)=0, R(1)=1; R_exact nonincreasing in k", &failures);
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn criterion_8_tolerance_separation() {
    // Plain summation, independent of the library's compensated path.
    let mut failures = Vec::new();
    let mut summary = Vec::new();
    for n in 3..=16usize {
        let theta = std::f64::consts::TAU / n as f64;
        let (cs, sn): (Vec<f64>, Vec<f64>) = (0..n).map(|i| ((i as f64 * theta).cos(), (i as f64 * theta).sin())).unzip();
        let mut min_nonzero = f64::INFINITY;
        let mut max_zero = 0.0f64;
        for mask in 1u64..(1 << n) {
            let (mut x, mut y, mut count) = (0.0, 0.0, 0);
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    x += cs[i];
                    y += sn[i];
                    count += 1;
                }
            }
            let norm = f64::hypot(x, y) / count as f64;
            if norm <= 1e-9 {
                max_zero = max_zero.max(norm);
            } else {
                min_nonzero = min_nonzero.min(norm);
            }
        }
        summary.push(format!("n={n}: max zero-class {max_zero:.2e}, min nonzero {min_nonzero:.4e}"));
        if min_nonzero <= 1e-3 {
            failures.push(format!("n={n}: smallest nonzero CoG norm {min_nonzero:e} <= 1e-3"));
        }
        if max_zero > 1e-12 {
            failures.push(format!("n={n}: zero-class norm {max_zero:e} not well below the 1e-9 threshold"));
        }
    }
    report(8, "nonzero CoG norms exceed 1e-3 for every n <= 16", &failures);
    for s in &summary {
        println!("    {s}");
    }
    assert!(failures.is_empty(), "{failures:#?}");
}
