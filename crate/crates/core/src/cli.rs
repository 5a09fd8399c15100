//! Command-line front end. Exit codes: 0 all checks pass, 1 verification failure, 2 input error.

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::gset::{inertia_decompose, orbifold_decompose, GSet};
use crate::harness::{run_suite, Config, Corpus, Suite};
use crate::repring::chartable::character_table;
use crate::repring::vistoli::{vistoli_decompose, Mode};
use crate::skew::azumaya::{strongly_graded_all, twisted_hh0_decomposition, AzumayaModel};
use crate::skew::blocks::twisted_block_count;
use crate::skew::cocycle::{alpha_regular_classes, twisted_group_algebra, CocycleTable};
use crate::skew::FinDimAlgebra;

#[derive(Parser, Debug)]
#[command(name = "orbicalc", version, about = "Exact decompositions of representation rings, equivariant K0 and skew group algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run the property suites over a seeded corpus.
    Verify {
        #[arg(long, default_value_t = 24)]
        max_order: usize,
        #[arg(long, default_value_t = 100)]
        gsets: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Write one JSON object per check to this file.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Restrict to these suites (repeatable); default all.
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Character table of a group (catalog name, JSON, or a file holding either).
    Chartable {
        group: String,
        #[arg(long)]
        json: bool,
    },
    /// Decomposition of R(G)[1/|G|] over conjugacy classes of cyclic subgroups.
    Vistoli {
        group: String,
        #[arg(long, default_value = "split")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// Fixed-point decomposition of the equivariant K0 of a G-set.
    Orbifold {
        group: String,
        gset: String,
        #[arg(long, default_value = "split")]
        mode: String,
        #[arg(long)]
        json: bool,
    },
    /// HH0 and block counts of a twisted group algebra.
    Twisted {
        group: String,
        cocycle: String,
        #[arg(long)]
        json: bool,
    },
    /// Graded-center and HH0 checks for an algebra over a G-set.
    AzumayaCheck {
        gset: String,
        algebra: String,
        #[arg(long)]
        json: bool,
    },
}

/// A file's contents if the argument names an existing file, otherwise the argument itself.
fn read_arg(s: &str) -> Result<String> {
    let p = Path::new(s);
    if p.is_file() {
        std::fs::read_to_string(p).map_err(|e| Error::InvalidArgument(format!("{s}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn group_arg(s: &str) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::parse(&read_arg(s)?)?))
}

fn is_input_error(e: &Error) -> bool {
    !matches!(e, Error::Certificate(_) | Error::Internal(_) | Error::NotAzumaya(_))
}

fn emit(json_out: bool, value: serde_json::Value, text: String) {
    let mut out = std::io::stdout().lock();
    let _ = if json_out {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("serializable"))
    } else {
        write!(out, "{text}")
    };
}

fn verdict(ok: bool) -> i32 {
    i32::from(!ok)
}

fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { max_order, gsets, seed, json, suites } => {
            let suites = if suites.is_empty() {
                Suite::ALL.to_vec()
            } else {
                suites.iter().map(|s| s.parse()).collect::<Result<Vec<Suite>>>()?
            };
            let config = Config { max_order, gsets, seed, suites, ..Config::default() };
            let corpus = Corpus::build(config)?;
            let report = run_suite(&corpus)?;
            if let Some(path) = json {
                std::fs::write(&path, report.to_jsonl()).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
            }
            print!("{}", report.summary());
            for f in report.failures().take(20) {
                eprintln!("FAIL {} {} #{}: {}", f.suite.name(), f.subject, f.index, f.certificate);
            }
            Ok(verdict(report.passed()))
        }
        Command::Chartable { group, json } => {
            let g = group_arg(&group)?;
            let t = character_table(&g)?;
            let ok = t.verify();
            let mut text = format!("order {} classes {} conductor {}\n", g.order(), t.num_classes(), t.conductor());
            text.push_str(&format!("class sizes {:?}\n", t.class_sizes()));
            for (i, row) in t.values().iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                text.push_str(&format!("χ{i}: {}\n", cells.join("  ")));
            }
            emit(json, json!({ "table": t.to_json(), "verified": ok }), text);
            Ok(verdict(ok))
        }
        Command::Vistoli { group, mode, json } => {
            let g = group_arg(&group)?;
            let mode: Mode = mode.parse()?;
            let d = vistoli_decompose(&g, mode)?;
            let text = format!(
                "order {} mode {:?}\nranks {:?}\nsnf diagonal {:?}\ninvertible {} ring hom {} idempotents sum to 1 {} orthogonal {}\n",
                g.order(),
                mode,
                d.ranks(),
                d.certificate.diagonal,
                d.certificate.invertible,
                d.ring_hom,
                d.idempotents_sum_to_one,
                d.idempotents_orthogonal
            );
            emit(json, d.to_json(), text);
            Ok(verdict(d.passes()))
        }
        Command::Orbifold { group, gset, mode, json } => {
            let g = group_arg(&group)?;
            let x = GSet::parse(&read_arg(&gset)?)?;
            if x.group().raw_table() != g.raw_table() {
                return Err(Error::InvalidGSet("the G-set's group differs from the given group".into()));
            }
            let mode: Mode = mode.parse()?;
            let d = orbifold_decompose(&x, mode)?;
            let inertia = inertia_decompose(&x)?;
            let text = format!(
                "size {} orbits {} K0 rank {}\nsummand ranks {:?}\nsnf diagonal {:?} invertible {}\ninertia form dim {} class form dim {}\n",
                x.size(),
                x.num_orbits(),
                d.k0.rank(),
                d.ranks(),
                d.certificate.diagonal,
                d.certificate.invertible,
                inertia.invariant_form_dim(),
                inertia.class_form_dim()
            );
            let mut v = d.to_json();
            v["inertia_holds"] = json!(inertia.holds());
            emit(json, v, text);
            Ok(verdict(d.certificate.invertible && inertia.holds()))
        }
        Command::Twisted { group, cocycle, json } => {
            let g = group_arg(&group)?;
            let alpha = CocycleTable::parse(g.clone(), &read_arg(&cocycle)?)?;
            let hh = twisted_group_algebra(&alpha).hh0();
            let regular = alpha_regular_classes(&alpha);
            let n = alpha.root_order();
            let blocks = twisted_block_count(&alpha, n, n * g.exponent() as u64)?;
            let ok = hh.dimension() == regular.len() && blocks.holds();
            let text = format!(
                "dim HH0 {}\nalpha-regular classes {} {:?}\nblocks over Q(zeta_{}) -> Q(zeta_{}): {} -> {} injective {}\n",
                hh.dimension(),
                regular.len(),
                regular,
                blocks.fields.0,
                blocks.fields.1,
                blocks.blocks.0,
                blocks.blocks.1,
                blocks.injective
            );
            emit(
                json,
                json!({ "hh0": hh.dimension(), "by_class": hh.by_class, "alpha_regular_classes": regular, "blocks": blocks }),
                text,
            );
            Ok(verdict(ok))
        }
        Command::AzumayaCheck { gset, algebra, json } => {
            let x = GSet::parse(&read_arg(&gset)?)?;
            let a = FinDimAlgebra::parse(&read_arg(&algebra)?, Some(x.group_arc().clone()))?;
            let model = AzumayaModel::from_algebra(x, a)?;
            let graded = strongly_graded_all(&model)?;
            let hh = twisted_hh0_decomposition(&model)?;
            let graded_ok = graded.values().all(|r| r.holds());
            let mut text = String::new();
            for (sigma, r) in &graded {
                text.push_str(&format!(
                    "σ = {:?}: |X^σ| {} rank one {} surjective {} splitting {}{}\n",
                    sigma,
                    r.fixed_points.len(),
                    r.rank_one,
                    r.products_surjective,
                    r.splitting,
                    r.witness.as_ref().map(|w| format!(" witness: {w}")).unwrap_or_default()
                ));
            }
            text.push_str(&format!("HH0 {} invariant form {} explicit iso {}\n", hh.lhs, hh.rhs, hh.explicit_iso));
            let graded_json: Vec<_> = graded.values().collect();
            emit(json, json!({ "graded": graded_json, "hh0": hh }), text);
            Ok(verdict(graded_ok && hh.holds()))
        }
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if is_input_error(&e) {
                2
            } else {
                1
            }
        }
    }
}
