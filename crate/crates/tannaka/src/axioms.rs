//! Convolution on endomorphisms of E_F and the six axiom suites: monoid,
//! comonoid, strong bialgebra, weak bialgebra, Hopf, weak Hopf.

use crate::exactlin::{factor_permutation_indices, kronecker, swap_matrix, Matrix};
use crate::reconstruct::StructureMaps;
use crate::report::AxiomReport;

/// f ⋆ g = μ ∘ (f ⊗ g) ∘ Δ on endomorphisms of E_F.
pub fn convolve(f: &Matrix, g: &Matrix, maps: &StructureMaps) -> Matrix {
    maps.mu.dot(&kronecker(f, g)).dot(&maps.delta)
}

/// (μ⊗μ) ∘ (id⊗σ⊗id) ∘ (Δ⊗Δ), with the middle symmetry applied as a row
/// reindex of Δ⊗Δ rather than a dim⁴-sized permutation matrix.
fn mult_comult_rhs(maps: &StructureMaps) -> Matrix {
    let dim_e = maps.dim();
    let shuffle = factor_permutation_indices(&[0, 2, 1, 3], &[dim_e; 4]);
    let shuffled = kronecker(&maps.delta, &maps.delta).permute_rows(&shuffle);
    kronecker(&maps.mu, &maps.mu).dot(&shuffled)
}

pub fn suite_monoid(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("monoid");
    let dim_e = maps.dim();
    let id_e = Matrix::identity(dim_e);
    report.equation(
        "associativity",
        &maps.mu.dot(&kronecker(&maps.mu, &id_e)),
        &maps.mu.dot(&kronecker(&id_e, &maps.mu)),
    );
    report.equation("left-unit", &maps.mu.dot(&kronecker(&maps.eta, &id_e)), &id_e);
    report.equation("right-unit", &maps.mu.dot(&kronecker(&id_e, &maps.eta)), &id_e);
    report
}

pub fn suite_comonoid(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("comonoid");
    let dim_e = maps.dim();
    let id_e = Matrix::identity(dim_e);
    report.equation(
        "coassociativity",
        &kronecker(&maps.delta, &id_e).dot(&maps.delta),
        &kronecker(&id_e, &maps.delta).dot(&maps.delta),
    );
    report.equation("left-counit", &kronecker(&maps.eps, &id_e).dot(&maps.delta), &id_e);
    report.equation("right-counit", &kronecker(&id_e, &maps.eps).dot(&maps.delta), &id_e);
    report
}

/// The four bialgebra axioms of the strong case: unit/counit, Δ on the unit,
/// ε on the product, and μ/Δ coherence through the symmetry.
pub fn suite_bialgebra_strong(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("bialgebra");
    report.equation("B1: counit-of-unit", &maps.eps.dot(&maps.eta), &Matrix::identity(1));
    report.equation("B2: unit-comultiplies", &maps.delta.dot(&maps.eta), &kronecker(&maps.eta, &maps.eta));
    report.equation("B3: counit-multiplies", &maps.eps.dot(&maps.mu), &kronecker(&maps.eps, &maps.eps));
    report.equation("B4: mult-comult-coherence", &maps.delta.dot(&maps.mu), &mult_comult_rhs(maps));
    report
}

/// The weak bialgebra axioms: B4 is retained, the unit/counit coherences are
/// replaced by the four weakened identities on Δ(1) and ε∘μ.
pub fn suite_weak_bialgebra(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("weak-bialgebra");
    let dim_e = maps.dim();
    let id_e = Matrix::identity(dim_e);
    let sigma = swap_matrix(dim_e, dim_e);

    report.equation("WB-mult: mult-comult-coherence", &maps.delta.dot(&maps.mu), &mult_comult_rhs(maps));

    // unit axioms: (Δ⊗id)Δ(1) written against the two bracketings of Δ(1)²
    let delta_eta = maps.delta.dot(&maps.eta);
    let lhs_unit = kronecker(&maps.delta, &id_e).dot(&delta_eta);
    let both = kronecker(&delta_eta, &delta_eta); // k → E⁴
    let u1 = kronecker(&kronecker(&id_e, &maps.mu), &id_e).dot(&both);
    report.equation("WB-u1: weak-unit", &lhs_unit, &u1);
    let u2 = kronecker(&kronecker(&id_e, &maps.mu.dot(&sigma)), &id_e).dot(&both);
    report.equation("WB-u2: weak-unit-swapped", &lhs_unit, &u2);

    // counit axioms: ε(fgh) against the two splittings through Δ
    let eps_mu = maps.eps.dot(&maps.mu);
    let lhs_counit = eps_mu.dot(&kronecker(&maps.mu, &id_e));
    let c1 = kronecker(&eps_mu, &eps_mu).dot(&kronecker(&kronecker(&id_e, &maps.delta), &id_e));
    report.equation("WB-c1: weak-counit", &lhs_counit, &c1);
    let c2 = kronecker(&eps_mu, &eps_mu)
        .dot(&kronecker(&kronecker(&id_e, &sigma.dot(&maps.delta)), &id_e));
    report.equation("WB-c2: weak-counit-swapped", &lhs_counit, &c2);
    report
}

/// Strong antipode axioms: both convolutions of S with the identity equal η∘ε.
pub fn suite_hopf(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("hopf");
    let Some(antipode) = &maps.antipode else {
        report.record("antipode-available", false);
        return report;
    };
    let id_e = Matrix::identity(maps.dim());
    let eta_eps = maps.eta.dot(&maps.eps);
    report.equation("H1: left-antipode", &convolve(antipode, &id_e, maps), &eta_eps);
    report.equation("H2: right-antipode", &convolve(&id_e, antipode, maps), &eta_eps);
    report
}

/// Weak antipode axioms: id ⋆ S = ε_t, S ⋆ id = ε_s, S ⋆ id ⋆ S = S. If a
/// primary pairing fails, the swapped pairing is also reported so a
/// convention mismatch is visible rather than silently absorbed.
pub fn suite_weak_hopf(maps: &StructureMaps) -> AxiomReport {
    let mut report = AxiomReport::new("weak-hopf");
    let (Some(antipode), Some(eps_s), Some(eps_t)) = (&maps.antipode, &maps.eps_s, &maps.eps_t)
    else {
        report.record("antipode-and-counital-maps-available", false);
        return report;
    };
    let id_e = Matrix::identity(maps.dim());
    let id_conv_s = convolve(&id_e, antipode, maps);
    let s_conv_id = convolve(antipode, &id_e, maps);
    report.equation("WH1: id-star-S-is-target", &id_conv_s, eps_t);
    report.equation("WH2: S-star-id-is-source", &s_conv_id, eps_s);
    report.equation("WH3: S-star-id-star-S", &convolve(&s_conv_id, antipode, maps), antipode);
    if !report.result("WH1: id-star-S-is-target").unwrap().pass
        || !report.result("WH2: S-star-id-is-source").unwrap().pass
    {
        report.equation("WH1-swapped-pairing: id-star-S-is-source", &id_conv_s, eps_s);
        report.equation("WH2-swapped-pairing: S-star-id-is-target", &s_conv_id, eps_t);
    }
    report
}
