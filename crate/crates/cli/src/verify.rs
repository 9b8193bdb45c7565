//! The bundled verification battery behind `nilg2 verify-all`: every check
//! recomputes its claim from scratch in exact arithmetic and reports a
//! pass/fail line. Known transcription errata are themselves verified (the
//! transcribed variants must fail in exactly the understood way).

use nilg2::cohomology::{CochainComplex, Exactness, MasseyOutcome};
use nilg2::linalg::Matrix;
use nilg2::nilgroup::random_rational_elements;
use nilg2::report::{CheckResult, ErratumReport, VerifyAllReport};
use nilg2::resring::{heisenberg_component_ring, LiftVerdict, ResolutionRing};
use nilg2::{builtin, g2, CohomologyClass, FieldElement, Form};
use num_traits::Zero;

struct Battery {
    checks: Vec<CheckResult>,
}

impl Battery {
    fn record(&mut self, name: &str, passed: bool, details: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            passed,
            details,
        });
    }
}

pub fn run_battery(seed: u64, trials: usize, grid: u32, box_radius: i64) -> VerifyAllReport {
    let mut battery = Battery { checks: Vec::new() };

    check_structure_equations(&mut battery);
    check_invariant_cohomology(&mut battery);
    check_closed_and_exact_spaces(&mut battery);
    check_g2_standard(&mut battery);
    check_g2_bundled(&mut battery);
    check_involution_eigenstructure(&mut battery);
    check_massey(&mut battery);
    check_nilgroup(&mut battery, seed, trials);
    check_fixed_locus(&mut battery, grid, box_radius);
    check_resolution_ring(&mut battery);
    check_massey_lift(&mut battery);
    check_duality(&mut battery);

    let all_passed = battery.checks.iter().all(|c| c.passed);
    VerifyAllReport {
        seed,
        checks: battery.checks,
        errata: builtin::errata()
            .into_iter()
            .map(|e| ErratumReport {
                id: e.id.to_string(),
                description: e.description.to_string(),
            })
            .collect(),
        all_passed,
    }
}

fn check_structure_equations(battery: &mut Battery) {
    let cdga = builtin::cdga();
    let d2 = cdga.check_d_squared();
    let jacobi = cdga.to_lie_algebra().check_jacobi();
    battery.record(
        "structure-equations",
        d2.is_ok() && jacobi.is_ok(),
        format!("d^2 = 0: {}; Jacobi: {}", d2.is_ok(), jacobi.is_ok()),
    );
}

/// Mutual membership: each listed class is closed and lies in the span of
/// the computed basis, and each computed class lies in the span of the
/// listed ones.
fn spans_match(complex: &CochainComplex, degree: usize, listed: &[Form]) -> Result<bool, String> {
    let computed = complex.cohomology_basis(degree);
    if computed.len() != listed.len() {
        return Ok(false);
    }
    let mut listed_classes: Vec<CohomologyClass> = Vec::new();
    for form in listed {
        match complex.class_of(form) {
            Ok(c) => listed_classes.push(c),
            Err(e) => return Err(format!("listed representative {form} is invalid: {e}")),
        }
    }
    let listed_cols: Vec<Vec<FieldElement>> =
        listed_classes.iter().map(|c| c.coords.clone()).collect();
    let listed_matrix = Matrix::from_columns(&listed_cols);
    if listed_matrix.rank() != listed.len() {
        return Ok(false);
    }
    // computed classes are coordinate unit vectors, so full rank of the
    // listed classes already gives mutual membership; verify explicitly
    for c in &computed {
        if !listed_matrix.in_column_span(&c.coords) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_invariant_cohomology(battery: &mut Battery) {
    let complex = builtin::invariant_complex();
    let betti = complex.betti();
    let betti_ok = betti == vec![1, 1, 3, 8, 8, 3, 1, 1];

    let h1 = spans_match(&complex, 1, &builtin::h1_basis_transcribed());
    let h2 = spans_match(&complex, 2, &builtin::h2_basis_transcribed());
    let h3_corrected = spans_match(&complex, 3, &builtin::h3_basis_corrected());
    // the transcribed degree-3 list must fail in exactly the understood way:
    // its e125 term is anti-invariant (so the form leaves the subcomplex),
    // and in the full complex the form is not closed either
    let transcribed_fails_as_expected = {
        let last = builtin::h3_basis_transcribed().pop().unwrap();
        let outside = complex.class_of(&last).is_err();
        let not_closed_in_full = matches!(
            builtin::full_complex().is_exact(&last),
            Ok(Exactness::NotClosed)
        );
        outside && not_closed_in_full
    };
    let ok = betti_ok
        && h1 == Ok(true)
        && h2 == Ok(true)
        && h3_corrected == Ok(true)
        && transcribed_fails_as_expected;
    battery.record(
        "invariant-cohomology",
        ok,
        format!(
            "betti {betti:?}; H1 span {h1:?}; H2 span {h2:?}; H3 span (corrected basis) {h3_corrected:?}; \
             transcribed H3 rep non-closed as documented: {transcribed_fails_as_expected}"
        ),
    );
}

fn check_closed_and_exact_spaces(battery: &mut Battery) {
    let complex = builtin::invariant_complex();
    // dim Z^2 = dim C^2 − rank d_2, dim B^3 = rank d_2
    let rank_d2 = complex.d_matrix(2).rank();
    let z2_dim = complex.dimension(2) - rank_d2;
    let b3_dim = rank_d2;

    let z2_all_closed = builtin::z2_spanning_transcribed()
        .iter()
        .all(|f| !matches!(complex.is_exact(f), Ok(Exactness::NotClosed)));
    let b3_corrected_exact = builtin::b3_spanning_corrected()
        .iter()
        .all(|f| matches!(complex.is_exact(f), Ok(Exactness::Primitive(_))));
    let b3_transcribed_sign_fails = matches!(
        complex.is_exact(&builtin::b3_spanning_transcribed()[1]),
        Ok(Exactness::NotExact)
    );
    // spanning: the corrected sets must have full rank inside their spaces
    let z2_rank = {
        let cols: Vec<Vec<FieldElement>> = builtin::z2_spanning_transcribed()
            .iter()
            .map(|f| complex.coords(f, 2).unwrap())
            .collect();
        Matrix::from_columns(&cols).rank()
    };
    let b3_rank = {
        let cols: Vec<Vec<FieldElement>> = builtin::b3_spanning_corrected()
            .iter()
            .map(|f| complex.coords(f, 3).unwrap())
            .collect();
        Matrix::from_columns(&cols).rank()
    };
    let ok = z2_dim == 5
        && b3_dim == 4
        && z2_all_closed
        && z2_rank == 5
        && b3_corrected_exact
        && b3_rank == 4
        && b3_transcribed_sign_fails;
    battery.record(
        "closed-exact-spaces",
        ok,
        format!(
            "dim Z2 = {z2_dim} (span rank {z2_rank}), dim B3 = {b3_dim} (corrected span rank {b3_rank}); \
             transcribed B3 sign variant non-exact as documented: {b3_transcribed_sign_fails}"
        ),
    );
}

fn check_g2_standard(battery: &mut Battery) {
    let report = g2::gram_from_threeform(&g2::standard_threeform()).unwrap();
    let six_id = {
        let mut ok = true;
        for i in 0..7 {
            for j in 0..7 {
                let expected = if i == j {
                    FieldElement::from_int(6)
                } else {
                    FieldElement::zero()
                };
                ok &= report.gram[(i, j)] == expected;
            }
        }
        ok
    };
    let ok = six_id
        && report.conformal_factor == Some(FieldElement::from_int(1))
        && report.metric.as_ref() == Some(&Matrix::identity(7));
    battery.record(
        "g2-standard-gram",
        ok,
        format!("gram = 6·Id: {six_id}; c = 1 and unit metric: {ok}"),
    );
}

fn check_g2_bundled(battery: &mut Battery) {
    let phi = builtin::g2_form();
    let report = g2::gram_from_threeform(&phi).unwrap();
    let cdga = builtin::cdga();
    let j = builtin::involution();
    let closed = cdga.differential(&phi).is_zero();
    let invariant = j.apply(&phi) == phi;
    // b = 6·det(A)·AᵀA for the defining basis change
    let a = builtin::v_matrix();
    let det = a.det();
    let mut structural = true;
    for i in 0..7 {
        for j in 0..7 {
            let mut ata = FieldElement::zero();
            for k in 0..7 {
                ata += a[(k, i)].mul_ref(&a[(k, j)]);
            }
            structural &= report.gram[(i, j)] == FieldElement::from_int(6).mul_ref(&det).mul_ref(&ata);
        }
    }
    let conformal_is_det = report.conformal_factor == Some(det.clone());
    let ok = report.is_g2() && closed && invariant && structural && conformal_is_det;
    battery.record(
        "g2-bundled-form",
        ok,
        format!(
            "definite: {}; closed: {closed}; involution-invariant: {invariant}; \
             gram = 6·det(A)·AᵀA: {structural}; c = det(A) = {}",
            report.is_g2(),
            det
        ),
    );
}

fn check_involution_eigenstructure(battery: &mut Battery) {
    let signs = builtin::INVOLUTION_SIGNS;
    let standard = g2::check_g2_involution(&g2::standard_threeform(), &signs);
    let bundled = g2::check_g2_involution(&builtin::g2_form(), &signs);
    let ok = match (&standard, &bundled) {
        (Ok(s), Ok(b)) => {
            s.dims_are_3_4
                && b.dims_are_3_4
                && s.unit_volume_identity == Some(true)
                && b.unit_volume_identity == Some(true)
        }
        _ => false,
    };
    battery.record(
        "involution-eigenstructure",
        ok,
        format!(
            "standard form dims (3,4) and unit volume: {:?}; bundled form: {:?}",
            standard.map(|s| (s.fixed_dim, s.anti_dim, s.unit_volume_identity)),
            bundled.map(|b| (b.fixed_dim, b.anti_dim, b.unit_volume_identity)),
        ),
    );
}

fn check_massey(battery: &mut Battery) {
    let complex = builtin::invariant_complex();
    let xi1 = complex
        .class_of(&builtin::massey_xi1_representative())
        .unwrap();
    let xi2 = complex.class_of(&builtin::massey_xi2_corrected()).unwrap();
    let outcome = complex.massey_triple(&xi1, &xi2, &xi1).unwrap();
    let (defined, nontrivial, congruent, indet_dim) = match &outcome {
        MasseyOutcome::Defined(t) => {
            let expected = complex
                .class_of(&builtin::massey_expected_representative())
                .unwrap();
            // representative ≡ expected modulo the indeterminacy subspace
            let diff: Vec<FieldElement> = t
                .representative
                .coords
                .iter()
                .zip(&expected.coords)
                .map(|(a, b)| a.clone() - b.clone())
                .collect();
            let congruent = if diff.iter().all(FieldElement::is_zero) {
                true
            } else if t.indeterminacy.is_empty() {
                false
            } else {
                Matrix::from_columns(&t.indeterminacy).in_column_span(&diff)
            };
            (true, !t.trivial, congruent, t.indeterminacy_dim())
        }
        MasseyOutcome::Undefined { .. } => (false, false, false, 0),
    };
    // the transcribed middle class must be undefined (non-zero cup)
    let xi2_t = complex
        .class_of(&builtin::massey_xi2_transcribed())
        .unwrap();
    let transcribed_undefined = matches!(
        complex.massey_triple(&xi1, &xi2_t, &xi1).unwrap(),
        MasseyOutcome::Undefined { .. }
    );
    let ok = defined && nontrivial && congruent && transcribed_undefined;
    battery.record(
        "massey-product",
        ok,
        format!(
            "corrected middle class: defined {defined}, non-trivial {nontrivial}, representative ≡ [2e356] \
             mod indeterminacy (dim {indet_dim}): {congruent}; transcribed middle class undefined as \
             documented: {transcribed_undefined}"
        ),
    );
}

fn check_nilgroup(battery: &mut Battery, seed: u64, trials: usize) {
    let group = builtin::nilpotent_group();
    // frozen commutator table
    let frozen = builtin::expected_commutator_table();
    let table_ok = group.commutator_table().iter().all(|(i, j, z)| {
        let expected = frozen
            .iter()
            .find(|(a, b, _)| (a, b) == (i, j))
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(|| nilg2::nilgroup::GroupElement::zero(7));
        *z == expected
    });
    let symbolic = group.symbolic_integrality_check().is_ok();
    let closure = group.lattice_closure_check(trials, seed).is_ok();
    let reduction = group.reduction_identity_check(1000, seed ^ 0x5eed).is_ok();
    // the transcribed closed formula deviates from the oracle by exactly the
    // isolated u7 polynomial
    let points = random_rational_elements(7, 200, seed ^ 0xf0f0);
    let deviation_ok = points.chunks_exact(2).all(|pair| {
        let oracle = group.bch_product(&pair[0], &pair[1]);
        let printed = builtin::transcribed_product_formula(&pair[0], &pair[1]);
        let dev = builtin::transcribed_formula_deviation(&pair[0], &pair[1]);
        (0..6).all(|k| oracle.0[k] == printed.0[k])
            && oracle.0[6].clone() - printed.0[6].clone() == dev
    });
    let ok = table_ok && symbolic && closure && reduction && deviation_ok;
    battery.record(
        "nilgroup-arithmetic",
        ok,
        format!(
            "commutator table: {table_ok}; symbolic closure certificate: {symbolic}; \
             {trials} random closure trials: {closure}; 1000 reduction identities: {reduction}; \
             closed-formula deviation isolated to u7: {deviation_ok}"
        ),
    );
}

fn check_fixed_locus(battery: &mut Battery, grid: u32, box_radius: i64) {
    let group = builtin::nilpotent_group();
    let report = group
        .enumerate_isotropy_components(
            &builtin::INVOLUTION_SIGNS,
            box_radius,
            grid,
            &builtin::fixed_subgroup_samples(),
        )
        .expect("bundled group is triangular");
    let ok = report.all_ok(builtin::COMPONENT_COUNT);
    battery.record(
        "fixed-locus",
        ok,
        format!(
            "components: {}; subgroup samples ok: {}; grid points tested: {} (all fail: {})",
            report.components.len(),
            report.fixed_subgroup_samples_ok,
            report.grid_points_tested,
            report.grid_all_fail
        ),
    );
}

fn check_resolution_ring(battery: &mut Battery) {
    match ResolutionRing::build() {
        Ok(ring) => {
            let dims_ok = ring.dims() == [1, 1, 19, 40, 40, 19, 1, 1];
            let assoc = ring.audit_associativity().is_ok();
            let comm = ring.audit_graded_commutativity().is_ok();
            let tau = ring.audit_tau_relations();
            let comp = heisenberg_component_ring();
            let comp_ok = comp.complex.betti() == vec![1, 2, 2, 1] && comp.genus == 1;
            let ok = dims_ok && assoc && comm && tau && comp_ok;
            battery.record(
                "resolution-ring",
                ok,
                format!(
                    "dims {:?}; associativity: {assoc}; graded commutativity: {comm}; \
                     tau relations: {tau}; component betti (1,2,2,1) at genus 1: {comp_ok}",
                    ring.dims()
                ),
            );
        }
        Err(e) => battery.record("resolution-ring", false, format!("build failed: {e}")),
    }
}

fn check_massey_lift(battery: &mut Battery) {
    match ResolutionRing::build().and_then(|ring| ring.massey_lift_check()) {
        Ok(LiftVerdict::ObstructionPersists) => battery.record(
            "massey-lift",
            true,
            "obstruction persists on the resolution".to_string(),
        ),
        Ok(LiftVerdict::Counterexample(sol)) => battery.record(
            "massey-lift",
            false,
            format!("zero is reachable: {sol:?}"),
        ),
        Err(e) => battery.record("massey-lift", false, format!("{e}")),
    }
}

fn check_duality(battery: &mut Battery) {
    let full = builtin::full_complex().betti();
    let invariant = builtin::invariant_complex().betti();
    let ring_dims = ResolutionRing::build()
        .map(|r| r.dims().to_vec())
        .unwrap_or_default();
    let symmetric = |v: &[usize]| v.iter().eq(v.iter().rev());
    let ok = symmetric(&full) && symmetric(&invariant) && symmetric(&ring_dims);
    battery.record(
        "poincare-duality",
        ok,
        format!("full {full:?}; invariant {invariant:?}; resolution {ring_dims:?}"),
    );
}
