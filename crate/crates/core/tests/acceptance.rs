//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! and enforcing its runtime bound.
//!
//! Three criteria encode expected values transcribed from upstream tables
//! that exact recomputation disproves (see `nilg2::builtin::errata`). Those
//! tests are kept faithful to the stated expectations and therefore fail,
//! with diagnostics pointing at the verified corrected variants:
//!   - criterion 02: the last transcribed H³ representative is not a class,
//!   - criterion 06: the transcribed Massey middle class has non-zero cup,
//!   - criterion 07: two transcribed commutator relations omit central terms.

use nilg2::cohomology::{Exactness, MasseyOutcome};
use nilg2::linalg::Matrix;
use nilg2::nilgroup::GroupElement;
use nilg2::resring::{LiftVerdict, ResolutionRing};
use nilg2::{builtin, g2, FieldElement};
use num_traits::Zero;
use std::time::Instant;

fn finish(criterion: &str, start: Instant, bound_secs: f64, summary: &str) {
    let elapsed = start.elapsed().as_secs_f64();
    println!("criterion {criterion}: PASS — {summary} ({elapsed:.2}s)");
    assert!(
        elapsed < bound_secs,
        "criterion {criterion} exceeded its {bound_secs}s bound: {elapsed:.2}s"
    );
}

fn fail(criterion: &str, reason: &str) -> ! {
    println!("criterion {criterion}: FAIL — {reason}");
    panic!("criterion {criterion} failed: {reason}");
}

#[test]
fn criterion_01_d_squared() {
    let start = Instant::now();
    let cdga = builtin::cdga();
    if let Err(w) = cdga.check_d_squared() {
        fail("01 (d^2 = 0)", &format!("witness {w}"));
    }
    if let Err(w) = cdga.to_lie_algebra().check_jacobi() {
        fail("01 (d^2 = 0)", &format!("Jacobi defect at {:?}", w.triple));
    }
    finish(
        "01 (d^2 = 0)",
        start,
        1.0,
        "structure equations satisfy d^2 = 0 and Jacobi exactly",
    );
}

#[test]
fn criterion_02_invariant_betti_and_bases() {
    let start = Instant::now();
    let name = "02 (invariant Betti and listed bases)";
    let complex = builtin::invariant_complex();
    let betti = complex.betti();
    assert_eq!(
        betti[1..4].to_vec(),
        vec![1, 3, 8],
        "invariant b1, b2, b3 must be 1, 3, 8"
    );

    // mutual membership in degrees 1 and 2
    for (degree, listed) in [
        (1usize, builtin::h1_basis_transcribed()),
        (2, builtin::h2_basis_transcribed()),
    ] {
        let classes: Vec<_> = listed
            .iter()
            .map(|f| {
                complex
                    .class_of(f)
                    .unwrap_or_else(|e| fail(name, &format!("listed H^{degree} rep {f}: {e}")))
            })
            .collect();
        let cols: Vec<Vec<FieldElement>> = classes.iter().map(|c| c.coords.clone()).collect();
        let m = Matrix::from_columns(&cols);
        if m.rank() != complex.cohomology_basis(degree).len() {
            fail(name, &format!("listed H^{degree} basis does not span"));
        }
    }

    // mutual membership in degree 3 against the transcribed list
    let mut failures = Vec::new();
    let mut classes = Vec::new();
    for f in builtin::h3_basis_transcribed() {
        match complex.class_of(&f) {
            Ok(c) => classes.push(c),
            Err(e) => failures.push(format!("{f}: {e}")),
        }
    }
    if !failures.is_empty() {
        // show that the corrected list passes before failing
        let corrected: Vec<_> = builtin::h3_basis_corrected()
            .iter()
            .map(|f| complex.class_of(f).expect("corrected reps are classes"))
            .collect();
        let cols: Vec<Vec<FieldElement>> =
            corrected.iter().map(|c| c.coords.clone()).collect();
        let corrected_spans = Matrix::from_columns(&cols).rank() == 8;
        fail(
            name,
            &format!(
                "transcribed H^3 representatives are not all classes of the complex: {}; \
                 the corrected list (e125 -> e157 in the last representative) spans H^3: \
                 {corrected_spans}. See builtin::errata()[\"h3-basis-last-representative\"]",
                failures.join("; ")
            ),
        );
    }
    let cols: Vec<Vec<FieldElement>> = classes.iter().map(|c| c.coords.clone()).collect();
    if Matrix::from_columns(&cols).rank() != 8 {
        fail(name, "transcribed H^3 classes do not span");
    }
    finish(name, start, 1.0, "b = (1,3,8) and all listed bases span");
}

#[test]
fn criterion_03_closed_and_exact_dimensions() {
    let start = Instant::now();
    let name = "03 (dim B^3 = 4, dim Z^2 = 5)";
    let complex = builtin::invariant_complex();
    let rank_d2 = complex.d_matrix(2).rank();
    let z2 = complex.dimension(2) - rank_d2;
    let b3 = rank_d2;
    assert_eq!(z2, 5, "dim Z^2");
    assert_eq!(b3, 4, "dim B^3");
    // the listed spanning sets carry matching cardinalities; element-wise,
    // the second transcribed B^3 element is the documented sign typo
    assert_eq!(builtin::z2_spanning_transcribed().len(), 5);
    assert_eq!(builtin::b3_spanning_transcribed().len(), 4);
    let sign_variant_not_exact = matches!(
        complex.is_exact(&builtin::b3_spanning_transcribed()[1]),
        Ok(Exactness::NotExact)
    );
    let corrected_all_exact = builtin::b3_spanning_corrected()
        .iter()
        .all(|f| matches!(complex.is_exact(f), Ok(Exactness::Primitive(_))));
    assert!(corrected_all_exact, "corrected B^3 span must be exact");
    finish(
        name,
        start,
        1.0,
        &format!(
            "dims (5, 4) match the listed set sizes; transcribed sign variant e135 - e236 \
             non-exact as documented: {sign_variant_not_exact}"
        ),
    );
}

#[test]
fn criterion_04_g2_form() {
    let start = Instant::now();
    let name = "04 (G2 verification)";
    // standard 3-form: Gram exactly 6·Id
    let std_report = g2::gram_from_threeform(&g2::standard_threeform()).unwrap();
    for i in 0..7 {
        for j in 0..7 {
            let expected = if i == j {
                FieldElement::from_int(6)
            } else {
                FieldElement::zero()
            };
            assert_eq!(std_report.gram[(i, j)], expected, "gram({i},{j})");
        }
    }
    // bundled form: G2, closed, involution-invariant
    let phi = builtin::g2_form();
    let report = g2::gram_from_threeform(&phi).unwrap();
    if !report.is_g2() {
        fail(name, "bundled 3-form is not definite");
    }
    if !builtin::cdga().differential(&phi).is_zero() {
        fail(name, "bundled 3-form is not closed");
    }
    if builtin::involution().apply(&phi) != phi {
        fail(name, "bundled 3-form is not involution-invariant");
    }
    finish(
        name,
        start,
        5.0,
        "standard Gram is 6·Id; bundled form is a closed invariant G2 form",
    );
}

#[test]
fn criterion_05_involution_eigenstructure() {
    let start = Instant::now();
    let name = "05 (involution eigenstructure)";
    let report = g2::check_g2_involution(&builtin::g2_form(), &builtin::INVOLUTION_SIGNS)
        .unwrap_or_else(|e| fail(name, &format!("{e}")));
    assert!(report.dims_are_3_4, "eigenspace dimensions must be (3, 4)");
    assert_eq!(
        report.unit_volume_identity,
        Some(true),
        "the form must restrict to ± the unit volume on the fixed space"
    );
    finish(
        name,
        start,
        5.0,
        "dims (3,4); restriction squares to det of the induced fixed-space metric",
    );
}

#[test]
fn criterion_06_massey_product() {
    let start = Instant::now();
    let name = "06 (Massey non-formality)";
    let complex = builtin::invariant_complex();
    let xi1 = complex
        .class_of(&builtin::massey_xi1_representative())
        .unwrap();
    let xi2 = complex
        .class_of(&builtin::massey_xi2_transcribed())
        .unwrap();
    let outcome = complex.massey_triple(&xi1, &xi2, &xi1).unwrap();
    let triple = match outcome {
        MasseyOutcome::Undefined { obstruction, .. } => {
            // demonstrate the corrected class before failing
            let xi2c = complex.class_of(&builtin::massey_xi2_corrected()).unwrap();
            let corrected = complex.massey_triple(&xi1, &xi2c, &xi1).unwrap();
            let corrected_summary = match corrected {
                MasseyOutcome::Defined(t) => format!(
                    "defined, trivial = {}, indeterminacy dim {}, representative [{}]",
                    t.trivial,
                    t.indeterminacy_dim(),
                    t.representative.representative
                ),
                MasseyOutcome::Undefined { .. } => "also undefined (unexpected)".into(),
            };
            fail(
                name,
                &format!(
                    "⟨[e3], [e15 - e26], [e3]⟩ is undefined: the cup [e3]·[e15 - e26] = \
                     [{}] is non-zero in H^3, so no defining system exists. With the \
                     corrected middle class [e15 + e26 - 2e34] = 2[e15 - e34] - [e15 - e26] \
                     the product is {corrected_summary}, matching the documented description \
                     {{[2e356 + e3∧β]}}. See builtin::errata()[\"massey-middle-class\"]",
                    obstruction.representative
                ),
            );
        }
        MasseyOutcome::Defined(t) => t,
    };
    // reachable only if the transcribed class were valid
    assert!(!triple.trivial);
    let expected = complex
        .class_of(&builtin::massey_expected_representative())
        .unwrap();
    let diff: Vec<FieldElement> = triple
        .representative
        .coords
        .iter()
        .zip(&expected.coords)
        .map(|(a, b)| a.clone() - b.clone())
        .collect();
    let congruent = diff.iter().all(FieldElement::is_zero)
        || (!triple.indeterminacy.is_empty()
            && Matrix::from_columns(&triple.indeterminacy).in_column_span(&diff));
    assert!(congruent, "representative must be ≡ [2e356] mod indeterminacy");
    finish(name, start, 5.0, "defined, non-trivial, ≡ [2e356]");
}

#[test]
fn criterion_07_nilgroup() {
    let start = Instant::now();
    let name = "07 (nilpotent group arithmetic)";
    let group = builtin::nilpotent_group();

    if let Err(w) = group.lattice_closure_check(10_000, 41) {
        fail(name, &format!("lattice closure failed at {:?}", w));
    }
    if let Err((coord, exps, coeff)) = group.symbolic_integrality_check() {
        fail(
            name,
            &format!("non-integral product coefficient {coeff} at u{coord}, exponents {exps:?}"),
        );
    }
    if let Err(x) = group.reduction_identity_check(1000, 43) {
        fail(name, &format!("reduction identity failed at {x}"));
    }
    println!("  [07] closure (10^4 trials), symbolic certificate, and 10^3 reductions: ok");

    // the stated commutator table: (1,2) -> -2u4, (2,3) -> -2u5,
    // (1,3) -> 2u6, (1,6) -> 6u7, (2,5) -> -6u7, (2,6) -> -6u7,
    // (3,4) -> 6u7, all others zero
    let stated = builtin::transcribed_commutator_table();
    let mut mismatches = Vec::new();
    for (i, j, actual) in group.commutator_table() {
        let expected = stated
            .iter()
            .find(|(a, b, _)| (*a, *b) == (i, j))
            .map(|(_, _, v)| v.clone())
            .unwrap_or_else(|| GroupElement::zero(7));
        if actual != expected {
            mismatches.push(format!(
                "[u{i}, u{j}] = {actual} (stated {expected})"
            ));
        }
    }
    if !mismatches.is_empty() {
        fail(
            name,
            &format!(
                "the bracket-based commutators differ from the stated table by central \
                 corrections: {}. The first and last stated entries ([u1,u2] = -2u4 and \
                 [u3,u4] = 6u7) are exact; the full bracket-derived table is frozen and \
                 verified in builtin::expected_commutator_table(). See \
                 builtin::errata()[\"commutator-central-terms\"]",
                mismatches.join("; ")
            ),
        );
    }
    finish(name, start, 10.0, "closure, reduction, and commutator table");
}

#[test]
fn criterion_08_isotropy_locus() {
    let start = Instant::now();
    let name = "08 (isotropy locus)";
    let group = builtin::nilpotent_group();
    let report = group
        .enumerate_isotropy_components(
            &builtin::INVOLUTION_SIGNS,
            8,
            9,
            &builtin::fixed_subgroup_samples(),
        )
        .unwrap();
    assert_eq!(
        report.components.len(),
        16,
        "there must be 16 half-integer representatives"
    );
    assert!(
        report.fixed_subgroup_samples_ok,
        "representatives composed with fixed-subgroup samples must stay isotropy points"
    );
    assert_eq!(
        report.grid_points_tested, 6560,
        "9^4 - 1 off-set grid points"
    );
    assert!(report.grid_all_fail, "every off-set grid point must fail");
    finish(
        name,
        start,
        60.0,
        "16 components verified; 6560-point grid uniformly fails",
    );
}

#[test]
fn criterion_09_resolution_ring() {
    let start = Instant::now();
    let name = "09 (resolution ring)";
    let ring = ResolutionRing::build().unwrap_or_else(|e| fail(name, &format!("{e}")));
    let dims = ring.dims();
    assert_eq!(dims[1], 1, "b1 of the resolution");
    assert_eq!(dims[2], 19, "b2 of the resolution");
    assert_eq!(dims[3], 40, "b3 of the resolution");
    assert_eq!(ring.component.genus, 1, "fiber genus");
    if !ring.audit_tau_relations() {
        fail(name, "tau relations violated");
    }
    // the omega-term must vanish at genus 1: tau^2 has no exceptional part
    for i in 0..ring.component_count {
        let square = ring.product(ring.tau(i), ring.tau(i));
        let base_only = square
            .iter()
            .all(|(id, _)| matches!(ring.describe(*id), nilg2::resring::BasisElement::Base { .. }));
        assert!(base_only, "tau_{i}^2 must be -2·PD with no omega term");
    }
    if let Err((a, b, c)) = ring.audit_associativity() {
        fail(name, &format!("associativity fails at triple ({a}, {b}, {c})"));
    }
    if let Err((a, b)) = ring.audit_graded_commutativity() {
        fail(name, &format!("graded commutativity fails at ({a}, {b})"));
    }
    finish(
        name,
        start,
        30.0,
        "dims (1,19,40), tau^2 = -2·PD, full table audit",
    );
}

#[test]
fn criterion_10_massey_lift() {
    let start = Instant::now();
    let name = "10 (Massey lift)";
    let ring = ResolutionRing::build().unwrap();
    match ring.massey_lift_check().unwrap() {
        LiftVerdict::ObstructionPersists => {}
        LiftVerdict::Counterexample(sol) => {
            fail(name, &format!("zero is reachable via {sol:?}"))
        }
    }
    // the base-sector block alone must already exclude zero, realizing the
    // "only if ω = 0 and the pulled-back part is non-zero" structure
    let base = &ring.base;
    let target = base
        .class_of(&builtin::massey_expected_representative())
        .unwrap();
    let e3 = base
        .class_of(&builtin::massey_xi1_representative())
        .unwrap();
    let cols: Vec<Vec<FieldElement>> = base
        .cohomology_basis(2)
        .iter()
        .map(|h| base.cup(&e3, h).unwrap().coords)
        .collect();
    assert!(
        !Matrix::from_columns(&cols).in_column_span(&target.coords),
        "[2e356] must avoid the affine set {{[e3∧β']}} in H^3(X)"
    );
    finish(name, start, 30.0, "obstruction persists on the resolution");
}

#[test]
fn criterion_11_duality() {
    let start = Instant::now();
    let name = "11 (Poincaré duality symmetry)";
    let symmetric = |v: &[usize]| v.iter().eq(v.iter().rev());
    let full = builtin::full_complex().betti();
    let invariant = builtin::invariant_complex().betti();
    let ring = ResolutionRing::build().unwrap();
    assert!(symmetric(&full), "full complex: {full:?}");
    assert!(symmetric(&invariant), "invariant complex: {invariant:?}");
    assert!(symmetric(ring.dims()), "resolution ring: {:?}", ring.dims());
    finish(
        name,
        start,
        30.0,
        "b_k = b_(7-k) for the full complex, invariant complex, and resolution",
    );
}
