//! Seeded corpus, property suites and reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::group::{catalog, catalog_names, cyclic_subgroup_classes, FiniteGroup, Subgroup};
use crate::gset::{
    functoriality_check, idempotent_consistency, inertia_decompose, mackey_check, orbifold_decompose, GMap, GSet,
};
use crate::repring::cyclic::{character_iso, e_prim, maximality_check, restrict};
use crate::repring::vistoli::{primitive_invariant_basis, vistoli_decompose, Mode};
use crate::skew::azumaya::{
    equivariant_azumaya, functions_on, pauli, regular_projective, strongly_graded_all, twisted_hh0_decomposition,
    AzumayaModel, ProjectiveAction,
};
use crate::skew::blocks::{simple_block_count, twisted_block_count};
use crate::skew::cocycle::{alpha_regular_classes, h2_representatives, twisted_group_algebra, CocycleTable};
use crate::skew::FinDimAlgebra;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Vistoli,
    Cyclic,
    Orbifold,
    Inertia,
    Functoriality,
    Mackey,
    Twisted,
    Azumaya,
    Blocks,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::Vistoli,
        Suite::Cyclic,
        Suite::Orbifold,
        Suite::Inertia,
        Suite::Functoriality,
        Suite::Mackey,
        Suite::Twisted,
        Suite::Azumaya,
        Suite::Blocks,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Vistoli => "vistoli",
            Suite::Cyclic => "cyclic",
            Suite::Orbifold => "orbifold",
            Suite::Inertia => "inertia",
            Suite::Functoriality => "functoriality",
            Suite::Mackey => "mackey",
            Suite::Twisted => "twisted",
            Suite::Azumaya => "azumaya",
            Suite::Blocks => "blocks",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Config {
    pub max_order: usize,
    pub gsets: usize,
    pub seed: u64,
    pub suites: Vec<Suite>,
    /// Groups up to this order get H² representatives.
    pub twisted_max_order: usize,
    /// Groups up to this order get equivariant matrix-bundle models.
    pub azumaya_max_order: usize,
    /// Random G-sets per group (of size ≤ 12) turned into `Map(X)` models.
    pub azumaya_gsets: usize,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            max_order: 24,
            gsets: 100,
            seed: 7,
            suites: Suite::ALL.to_vec(),
            twisted_max_order: 16,
            azumaya_max_order: 8,
            azumaya_gsets: 2,
        }
    }
}

#[derive(Clone, Debug)]
pub struct CorpusGroup {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub gsets: Vec<GSet>,
    pub cocycles: Vec<CocycleTable>,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub config: Config,
    pub groups: Vec<CorpusGroup>,
    /// Inputs that failed to build, with the error; reported as failures.
    pub build_errors: Vec<(String, String)>,
}

/// Per-group stream derived from the global seed.
fn group_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0x9e37_79b9_7f4a_7c15, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Random disjoint unions of `G/H`, `H` generated by up to two random elements, sizes ≤ 64.
pub fn generate_gsets(g: Arc<FiniteGroup>, count: usize, seed: u64) -> Result<Vec<GSet>> {
    if count == 0 {
        return Err(Error::InvalidArgument("count must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = g.order();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let orbits = rng.gen_range(1..=4);
        let mut x: Option<GSet> = None;
        for _ in 0..orbits {
            let k = rng.gen_range(0..=2);
            let gens: Vec<usize> = (0..k).map(|_| rng.gen_range(0..n)).collect();
            let h = Subgroup::generated(&g, &gens);
            let orbit = GSet::coset_space(g.clone(), &h);
            let size = x.as_ref().map_or(0, |x| x.size());
            if size + orbit.size() > 64 {
                continue;
            }
            x = Some(match x {
                None => orbit,
                Some(x) => x.disjoint_union(&orbit)?,
            });
        }
        out.push(x.unwrap_or_else(|| GSet::point(g.clone())));
    }
    Ok(out)
}

impl Corpus {
    pub fn build(config: Config) -> Result<Self> {
        let names = catalog_names(config.max_order);
        let groups = names
            .iter()
            .map(|name| Ok((name.clone(), catalog(name)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::from_groups(config, groups.into_iter().map(|(n, g)| (n, Ok(g))).collect())
    }

    /// Corpus over explicit groups; build failures are kept and reported.
    pub fn from_groups(config: Config, groups: Vec<(String, Result<FiniteGroup>)>) -> Result<Self> {
        let mut out = Vec::new();
        let mut build_errors = Vec::new();
        for (name, g) in groups {
            let g = match g {
                Ok(g) => Arc::new(g),
                Err(e) => {
                    build_errors.push((name, e.to_string()));
                    continue;
                }
            };
            let gsets = if config.gsets == 0 { Vec::new() } else { generate_gsets(g.clone(), config.gsets, group_seed(config.seed, &name))? };
            let cocycles = if g.order() <= config.twisted_max_order {
                h2_representatives(g.clone(), g.exponent() as u64)?.representatives
            } else {
                Vec::new()
            };
            out.push(CorpusGroup { name, group: g, gsets, cocycles });
        }
        Ok(Corpus { config, groups: out, build_errors })
    }

    /// Corpus from raw Cayley tables, e.g. user input.
    pub fn from_tables(config: Config, tables: Vec<(String, Vec<Vec<usize>>)>) -> Result<Self> {
        let groups = tables.into_iter().map(|(n, t)| (n, FiniteGroup::from_table(&t))).collect();
        Self::from_groups(config, groups)
    }

    fn runs(&self, s: Suite) -> bool {
        self.config.suites.contains(&s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub subject: String,
    pub index: usize,
    pub status: Status,
    pub certificate: Value,
    /// Inputs and seed that replay a failure.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn by_suite(&self) -> BTreeMap<Suite, (usize, usize)> {
        let mut out: BTreeMap<Suite, (usize, usize)> = BTreeMap::new();
        for c in &self.checks {
            let e = out.entry(c.suite).or_default();
            match c.status {
                Status::Pass => e.0 += 1,
                Status::Fail => e.1 += 1,
            }
        }
        out
    }

    /// One JSON object per check, sorted by (suite, subject, index).
    pub fn to_jsonl(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&serde_json::to_string(c).expect("serializable"));
            s.push('\n');
        }
        s
    }

    pub fn summary(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{:<14} {:>7} {:>7} {:>7}", "suite", "checks", "pass", "fail");
        let (mut tp, mut tf) = (0, 0);
        for (suite, (p, f)) in self.by_suite() {
            let _ = writeln!(s, "{:<14} {:>7} {:>7} {:>7}", suite.name(), p + f, p, f);
            tp += p;
            tf += f;
        }
        let _ = writeln!(s, "{:<14} {:>7} {:>7} {:>7}", "total", tp + tf, tp, tf);
        for w in &self.warnings {
            let _ = writeln!(s, "warning: {w}");
        }
        let _ = writeln!(s, "{}", if self.passed() { "PASS" } else { "FAIL" });
        s
    }
}

type Task<'a> = (Suite, String, usize, Box<dyn Fn() -> Result<(bool, Value)> + Send + Sync + 'a>, Value);

fn pool() -> Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("ORBICALC_THREADS") {
        let n: usize = v.trim().parse().map_err(|_| Error::InvalidArgument(format!("ORBICALC_THREADS={v:?}")))?;
        if n > 0 {
            b = b.num_threads(n);
        }
    }
    b.build().map_err(|e| Error::Internal(e.to_string()))
}

/// Executes the selected suites over the corpus; failures and errors become FAIL checks.
pub fn run_suite(corpus: &Corpus) -> Result<Report> {
    let tasks = tasks(corpus);
    let mut report = Report::default();
    if corpus.config.suites.is_empty() {
        report.warnings.push("no suites selected".into());
    }
    let checks: Vec<Check> = pool()?.install(|| {
        tasks
            .par_iter()
            .map(|(suite, subject, index, f, inputs)| {
                let (status, certificate, witness) = match f() {
                    Ok((true, cert)) => (Status::Pass, cert, None),
                    Ok((false, cert)) => (Status::Fail, cert, Some(inputs.clone())),
                    Err(e) => (Status::Fail, json!({ "error": e.to_string() }), Some(inputs.clone())),
                };
                Check { suite: *suite, subject: subject.clone(), index: *index, status, certificate, witness }
            })
            .collect()
    });
    report.checks = checks;
    for (name, err) in &corpus.build_errors {
        report.checks.push(Check {
            suite: Suite::Vistoli,
            subject: name.clone(),
            index: 0,
            status: Status::Fail,
            certificate: json!({ "error": err }),
            witness: Some(json!({ "group": name })),
        });
    }
    report.checks.sort_by(|a, b| (a.suite, &a.subject, a.index).cmp(&(b.suite, &b.subject, b.index)));
    Ok(report)
}

const SPOT_RANKS: [(&str, &[usize]); 4] =
    [("S3", &[1, 1, 1]), ("C4", &[1, 1, 2]), ("Q8", &[1, 1, 1, 1, 1]), ("S4", &[1, 1, 1, 1, 1])];

fn euler_phi(m: usize) -> usize {
    (1..=m).filter(|&k| num_integer::gcd(k, m) == 1).count()
}

/// Maps between coset spaces `G/1 → G/⟨t⟩ → G/N(⟨t⟩)` for each cyclic class, unioned.
fn functoriality_maps(g: &Arc<FiniteGroup>) -> Result<Vec<GMap>> {
    let mut out = Vec::new();
    for c in cyclic_subgroup_classes(g) {
        let h = c.rep.clone();
        let k = crate::group::normalizer(g, &h);
        let a = GMap::coset_projection(g.clone(), &g.trivial(), &h)?;
        let b = GMap::coset_projection(g.clone(), &h, &k)?;
        out.push(a.disjoint_union(&b)?);
    }
    Ok(out)
}

fn azumaya_models(cg: &CorpusGroup, config: &Config) -> Result<Vec<(String, AzumayaModel)>> {
    let g = &cg.group;
    let mut out = Vec::new();
    out.push(("functions:point".to_string(), functions_on(&GSet::point(g.clone()))?));
    out.push(("functions:regular".to_string(), functions_on(&GSet::regular(g.clone()))?));
    for (i, x) in cg.gsets.iter().filter(|x| x.size() <= 12).take(config.azumaya_gsets).enumerate() {
        out.push((format!("functions:gset{i}"), functions_on(x)?));
    }
    if cg.name == "C2xC2" {
        out.push(("pauli:point".to_string(), equivariant_azumaya(&GSet::point(g.clone()), 2, &ProjectiveAction::Uniform(pauli()))?));
        let free = GSet::regular(g.clone());
        out.push(("pauli:regular".to_string(), equivariant_azumaya(&free, 2, &ProjectiveAction::Uniform(pauli()))?));
    }
    if g.order() <= 6 {
        for (i, alpha) in cg.cocycles.iter().enumerate() {
            let rho = regular_projective(alpha);
            out.push((format!("projective:cocycle{i}"), equivariant_azumaya(&GSet::point(g.clone()), g.order(), &ProjectiveAction::Uniform(rho))?));
        }
    }
    Ok(out)
}

fn cert<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn tasks(corpus: &Corpus) -> Vec<Task<'_>> {
    let mut t: Vec<Task<'_>> = Vec::new();
    let seed = corpus.config.seed;
    for cg in &corpus.groups {
        let g = &cg.group;
        let name = &cg.name;
        let ginput = json!({ "group": name, "seed": seed });
        if corpus.runs(Suite::Vistoli) {
            for (i, mode) in [Mode::Split, Mode::Rational].into_iter().enumerate() {
                let g = g.clone();
                let spot = SPOT_RANKS.iter().find(|(n, _)| n == name).map(|(_, r)| r.to_vec());
                t.push((
                    Suite::Vistoli,
                    name.clone(),
                    i,
                    Box::new(move || {
                        let d = vistoli_decompose(&g, mode)?;
                        let ranks_ok = mode == Mode::Rational || spot.as_ref().map_or(true, |r| *r == d.ranks());
                        Ok((d.passes() && ranks_ok, d.to_json()))
                    }),
                    ginput.clone(),
                ));
            }
        }
        if corpus.runs(Suite::Mackey) {
            for (i, c) in cyclic_subgroup_classes(g).into_iter().enumerate() {
                let g = g.clone();
                let input = json!({ "group": name, "sigma": c.rep.elements().to_vec() });
                t.push((
                    Suite::Mackey,
                    name.clone(),
                    i,
                    Box::new(move || {
                        let r = mackey_check(&g, &c.rep)?;
                        Ok((r.holds(), cert(&r)))
                    }),
                    input,
                ));
            }
        }
        if corpus.runs(Suite::Functoriality) {
            let g2 = g.clone();
            t.push((
                Suite::Functoriality,
                name.clone(),
                0,
                Box::new(move || {
                    let maps = functoriality_maps(&g2)?;
                    let mut ok = true;
                    for m in &maps {
                        for mode in [Mode::Split, Mode::Rational] {
                            ok &= functoriality_check(m, mode)?;
                        }
                    }
                    Ok((ok, json!({ "maps": maps.len() })))
                }),
                ginput.clone(),
            ));
            for (i, x) in cg.gsets.iter().take(3).enumerate() {
                let g = g.clone();
                t.push((
                    Suite::Functoriality,
                    name.clone(),
                    i + 1,
                    Box::new(move || {
                        let v = vistoli_decompose(&g, Mode::Split)?;
                        let d = orbifold_decompose(x, Mode::Split)?;
                        Ok((idempotent_consistency(&d, &v)?, json!({ "idempotent_consistency": true, "size": x.size() })))
                    }),
                    json!({ "group": name, "seed": seed, "gset": i, "input": x.to_json() }),
                ));
            }
        }
        for (i, x) in cg.gsets.iter().enumerate() {
            let input = json!({ "group": name, "seed": seed, "gset": i, "input": x.to_json() });
            if corpus.runs(Suite::Orbifold) {
                t.push((
                    Suite::Orbifold,
                    name.clone(),
                    i + 1,
                    Box::new(move || {
                        let d = orbifold_decompose(x, Mode::Split)?;
                        Ok((d.certificate.invertible, d.to_json()))
                    }),
                    input.clone(),
                ));
            }
            if corpus.runs(Suite::Inertia) {
                t.push((
                    Suite::Inertia,
                    name.clone(),
                    i,
                    Box::new(move || {
                        let d = inertia_decompose(x)?;
                        Ok((
                            d.holds(),
                            json!({
                                "k0_rank": d.k0_rank,
                                "class_form_dim": d.class_form_dim(),
                                "invariant_form_dim": d.invariant_form_dim(),
                                "iso": d.iso,
                            }),
                        ))
                    }),
                    input,
                ));
            }
        }
        if corpus.runs(Suite::Orbifold) {
            let g = g.clone();
            t.push((
                Suite::Orbifold,
                name.clone(),
                0,
                Box::new(move || {
                    let mut ok = true;
                    for mode in [Mode::Split, Mode::Rational] {
                        let d = orbifold_decompose(&GSet::point(g.clone()), mode)?;
                        let v = vistoli_decompose(&g, mode)?;
                        ok &= d.map == v.map && d.certificate.invertible;
                    }
                    Ok((ok, json!({ "point_equals_vistoli": ok })))
                }),
                ginput.clone(),
            ));
        }
        if corpus.runs(Suite::Twisted) {
            for (i, alpha) in cg.cocycles.iter().enumerate() {
                t.push((
                    Suite::Twisted,
                    name.clone(),
                    i,
                    Box::new(move || {
                        let hh = twisted_group_algebra(alpha).hh0().dimension();
                        let regular = alpha_regular_classes(alpha);
                        Ok((hh == regular.len(), json!({ "hh0": hh, "alpha_regular_classes": regular })))
                    }),
                    json!({ "group": name, "cocycle": alpha.to_json() }),
                ));
            }
        }
        if corpus.runs(Suite::Azumaya) && g.order() <= corpus.config.azumaya_max_order {
            let config = &corpus.config;
            t.push((
                Suite::Azumaya,
                name.clone(),
                0,
                Box::new(move || {
                    let models = azumaya_models(cg, config)?;
                    let mut ok = true;
                    let mut out = Vec::new();
                    for (label, m) in &models {
                        let hh = twisted_hh0_decomposition(m)?;
                        let graded = strongly_graded_all(m)?;
                        let graded_ok = graded.values().all(|r| r.holds());
                        ok &= hh.holds() && graded_ok;
                        out.push(json!({
                            "model": label,
                            "dim": m.algebra.dim(),
                            "hh0": hh.lhs,
                            "invariants": hh.rhs,
                            "per_class": hh.per_class,
                            "strongly_graded": graded_ok,
                        }));
                    }
                    Ok((ok, Value::Array(out)))
                }),
                json!({ "group": name, "seed": seed }),
            ));
        }
        if corpus.runs(Suite::Blocks) {
            let mut alphas = vec![CocycleTable::trivial(g.clone())];
            alphas.extend(cg.cocycles.iter().filter(|a| !a.is_trivial_table()).cloned());
            for (i, alpha) in alphas.into_iter().enumerate() {
                let input = json!({ "group": name, "cocycle": alpha.to_json() });
                t.push((
                    Suite::Blocks,
                    name.clone(),
                    i,
                    Box::new(move || {
                        let from = alpha.root_order();
                        let to = from * g_exponent(&alpha);
                        let r = twisted_block_count(&alpha, from, to)?;
                        Ok((r.holds(), cert(&r)))
                    }),
                    input,
                ));
            }
        }
    }
    if corpus.runs(Suite::Cyclic) {
        for m in 1..=corpus.config.max_order {
            t.push((
                Suite::Cyclic,
                format!("C{m:02}"),
                0,
                Box::new(move || {
                    let rank = primitive_invariant_basis(m, &[1], m as u64).len();
                    let e = e_prim(m);
                    let vanishing = (1..m).filter(|d| m % d == 0).all(|d| restrict(&e, d).iter().all(|x| num_traits::Zero::is_zero(x)));
                    let maximal = maximality_check(m);
                    let iso = character_iso(m, m as u64)?;
                    let ok = rank == euler_phi(m) && vanishing && maximal.holds && iso.holds();
                    Ok((
                        ok,
                        json!({
                            "primitive_rank": rank,
                            "phi": euler_phi(m),
                            "restriction_vanishes": vanishing,
                            "rational_idempotents_checked": maximal.rational_checked,
                            "split_idempotents_checked": maximal.split_checked,
                            "square_commutes": iso.square_commutes,
                            "supported_on_generators": iso.supported_on_generators,
                        }),
                    ))
                }),
                json!({ "m": m }),
            ));
        }
    }
    if corpus.runs(Suite::Blocks) {
        let generic: Vec<(&str, FinDimAlgebra)> =
            vec![("M2", FinDimAlgebra::matrix_algebra(2)), ("UT2", FinDimAlgebra::upper_triangular(2))];
        for (label, a) in generic {
            t.push((
                Suite::Blocks,
                format!("~{label}"),
                0,
                Box::new(move || {
                    let r = simple_block_count(&a, 1, 4)?;
                    Ok((r.holds(), cert(&r)))
                }),
                json!({ "algebra": label }),
            ));
        }
    }
    t
}

fn g_exponent(alpha: &CocycleTable) -> u64 {
    alpha.group().exponent() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let c2 = Arc::new(catalog("C2").unwrap());
        assert!(generate_gsets(c2.clone(), 0, 1).is_err());
        let a = generate_gsets(c2.clone(), 5, 11).unwrap();
        let b = generate_gsets(c2, 5, 11).unwrap();
        let j = |v: &[GSet]| v.iter().map(|x| serde_json::to_string(&x.to_json()).unwrap()).collect::<Vec<_>>();
        assert_eq!(j(&a), j(&b));
        assert!(a.iter().all(|x| x.size() <= 64));
    }

    #[test]
    fn small_corpus_passes() {
        let config = Config { max_order: 6, gsets: 3, ..Config::default() };
        let r = run_suite(&Corpus::build(config).unwrap()).unwrap();
        let fails: Vec<_> = r.failures().collect();
        assert!(fails.is_empty(), "{fails:?}");
        assert!(r.checks.len() > 50);
    }

    #[test]
    fn corrupted_table_fails() {
        let config = Config { gsets: 1, ..Config::default() };
        let bad = vec![vec![0, 1, 2], vec![1, 1, 0], vec![2, 0, 1]];
        let corpus = Corpus::from_tables(config, vec![("bad".into(), bad)]).unwrap();
        assert_eq!(corpus.build_errors.len(), 1);
        let r = run_suite(&corpus).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn empty_selection_warns() {
        let config = Config { max_order: 2, gsets: 1, suites: vec![], ..Config::default() };
        let r = run_suite(&Corpus::build(config).unwrap()).unwrap();
        assert!(r.passed() && r.checks.is_empty() && !r.warnings.is_empty());
    }
}
