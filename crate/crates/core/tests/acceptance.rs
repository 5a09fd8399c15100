//! Acceptance criteria, one PASS/FAIL line each.

use std::sync::Arc;
use std::time::{Duration, Instant};

use orbicalc::group::{catalog, catalog_names, FiniteGroup};
use orbicalc::harness::{run_suite, Config, Corpus, Report, Status, Suite};
use orbicalc::repring::cyclic::{character_iso, e_prim, maximality_check, restrict};
use orbicalc::repring::vistoli::{primitive_invariant_basis, vistoli_decompose, Mode};

fn euler_phi(m: usize) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

fn groups(max_order: usize) -> Vec<(String, Arc<FiniteGroup>)> {
    catalog_names(max_order).into_iter().map(|n| {
        let g = Arc::new(catalog(&n).unwrap());
        (n, g)
    }).collect()
}

fn suite_ok(r: &Report, suites: &[Suite]) -> (bool, String) {
    let checks: Vec<_> = r.checks.iter().filter(|c| suites.contains(&c.suite)).collect();
    let fails: Vec<_> = checks.iter().filter(|c| c.status == Status::Fail).collect();
    let detail = match fails.first() {
        None => format!("{} checks", checks.len()),
        Some(f) => format!("{} of {} failed, first {} {} #{}", fails.len(), checks.len(), f.suite.name(), f.subject, f.index),
    };
    (!checks.is_empty() && fails.is_empty(), detail)
}

struct Outcome {
    results: Vec<(usize, &'static str, bool, String)>,
}

impl Outcome {
    fn record(&mut self, n: usize, title: &'static str, ok: bool, detail: String) {
        println!("criterion {n:>2} {} {title}: {detail}", if ok { "PASS" } else { "FAIL" });
        self.results.push((n, title, ok, detail));
    }
}

fn vistoli_all(mode_ok: &mut bool) -> usize {
    let mut count = 0;
    for (_, g) in groups(24) {
        for mode in [Mode::Split, Mode::Rational] {
            let d = vistoli_decompose(&g, mode).unwrap();
            *mode_ok &= d.certificate.invertible && d.ring_hom && d.idempotents_sum_to_one && d.idempotents_orthogonal;
            count += 1;
        }
    }
    count
}

fn main() {
    let mut out = Outcome { results: Vec::new() };

    let t = Instant::now();
    let mut ok = true;
    let n = vistoli_all(&mut ok);
    let elapsed = t.elapsed();
    out.record(1, "decomposition of R(G)[1/n]", ok && elapsed < Duration::from_secs(60), format!("{n} maps in {elapsed:.2?}"));

    let spot: [(&str, &[usize]); 4] =
        [("S3", &[1, 1, 1]), ("C4", &[1, 1, 2]), ("Q8", &[1, 1, 1, 1, 1]), ("S4", &[1, 1, 1, 1, 1])];
    let ranks_ok = (1..=24).all(|m| primitive_invariant_basis(m, &[1], m as u64).len() == euler_phi(m));
    let spot_ok = spot.iter().all(|(name, r)| {
        let g = Arc::new(catalog(name).unwrap());
        vistoli_decompose(&g, Mode::Split).unwrap().ranks() == r.to_vec()
    });
    out.record(2, "primitive ranks", ranks_ok && spot_ok, format!("phi ranks {ranks_ok}, spot ranks {spot_ok}"));

    let vanish = (1..=24).all(|m| {
        let e = e_prim(m);
        (1..m).filter(|d| m % d == 0).all(|d| restrict(&e, d).iter().all(num_traits::Zero::is_zero))
    });
    let maximal = (1..=24).all(|m| maximality_check(m).holds);
    out.record(3, "restriction vanishing and maximality", vanish && maximal, format!("vanishing {vanish}, maximal {maximal}"));

    let diagram = (1..=24).all(|m| character_iso(m, m as u64).map(|r| r.holds()).unwrap_or(false));
    out.record(4, "character diagram", diagram, "m = 1..24".into());

    let config = Config { max_order: 24, gsets: 100, seed: 7, ..Config::default() };
    let first = run_suite(&Corpus::build(config.clone()).unwrap()).unwrap();

    let (ok, d) = suite_ok(&first, &[Suite::Orbifold]);
    out.record(5, "orbifold decomposition", ok, d);
    let (ok, d) = suite_ok(&first, &[Suite::Inertia]);
    out.record(6, "inertia form", ok, d);
    let (ok, d) = suite_ok(&first, &[Suite::Mackey]);
    out.record(7, "double coset identity", ok, d);
    let (ok, d) = suite_ok(&first, &[Suite::Twisted, Suite::Azumaya]);
    out.record(8, "twisted layer", ok, d);
    let (ok, d) = suite_ok(&first, &[Suite::Blocks]);
    out.record(9, "block inclusion", ok, d);

    let second = run_suite(&Corpus::build(config).unwrap()).unwrap();
    let same = first.to_jsonl() == second.to_jsonl();
    out.record(10, "determinism", same && first.passed(), format!("{} lines identical {same}", first.checks.len()));

    let failed: Vec<_> = out.results.iter().filter(|r| !r.2).map(|r| r.0).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria PASS", out.results.len());
    } else {
        println!("acceptance: failed criteria {failed:?}");
        std::process::exit(1);
    }
}
