//! Graded centers and HH0 for matrix-valued functions with a projective action.

use std::sync::Arc;

use orbicalc::group::catalog;
use orbicalc::gset::GSet;
use orbicalc::skew::azumaya::{
    equivariant_azumaya, functions_on, pauli, strongly_graded_all, twisted_hh0_decomposition, AzumayaModel,
    ProjectiveAction,
};

fn report(label: &str, m: &AzumayaModel) -> orbicalc::Result<()> {
    let graded = strongly_graded_all(m)?;
    let hh = twisted_hh0_decomposition(m)?;
    println!("{label}: dim {}, HH0 {} = invariants {} ({})", m.algebra.dim(), hh.lhs, hh.rhs, hh.holds());
    for (sigma, r) in graded {
        println!("  σ = {sigma:?}: |X^σ| {}, strongly graded {}", r.fixed_points.len(), r.holds());
    }
    Ok(())
}

fn main() -> orbicalc::Result<()> {
    let k = Arc::new(catalog("C2xC2")?);
    report("functions on C2xC2", &functions_on(&GSet::regular(k.clone()))?)?;
    report("Pauli on a point", &equivariant_azumaya(&GSet::point(k.clone()), 2, &ProjectiveAction::Uniform(pauli()))?)?;
    report("Pauli on the regular set", &equivariant_azumaya(&GSet::regular(k), 2, &ProjectiveAction::Uniform(pauli()))?)?;
    Ok(())
}
