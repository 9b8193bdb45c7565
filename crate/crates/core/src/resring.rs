//! The cohomology ring of the resolution, assembled as a finite graded
//! algebra from the quotient cohomology H*(X), the fixed-locus component
//! rings H*(L_i), the restriction morphisms, and exact Poincaré duals.
//!
//! As a graded vector space the ring is H*(X) ⊕ ⊕_i H^{*−2}(L_i)⊗⟨x_i⟩ with
//! one degree-2 exceptional class x_i (written τ_i) per component. Products:
//!
//! 1. pulled-back classes multiply by the cup product of H*(X);
//! 2. α·(γ⊗x_i) = (r_i(α)∧γ)⊗x_i through the restriction r_i;
//! 3. (γ⊗x_i)(γ'⊗x_j) = 0 for i ≠ j;
//! 4. (γ⊗x_i)(γ'⊗x_i) = −2·PD_i(γ∧γ') − (2−2g_i)·(γγ'ω_i ⊗ x_i).
//!
//! Here PD_i is the duality transfer H^m(L_i) → H^{m+4}(X) determined by
//! ⟨PD_i(η), σ⟩_X = ∫_{L_i} η ∧ r_i(σ); on η = 1 it is the Poincaré dual of
//! the component. Everything is solved exactly from integration functionals
//! derived from lattice covolumes, so rule 4 is a computation, not a symbol.

use crate::builtin;
use crate::cdga::CdgaMorphism;
use crate::cohomology::{CochainComplex, CohomologyClass};
use crate::exterior::{Form, Monomial};
use crate::field::{rat, FieldElement};
use crate::linalg::Matrix;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RingError {
    #[error("class coordinates are not rational")]
    IrrationalData,
    #[error("the duality pairing in transfer degree {0} is degenerate")]
    DegeneratePairing(usize),
    #[error("cohomology failure: {0}")]
    Cohomology(#[from] crate::cohomology::CohomologyError),
}

/// One fixed-locus component: the cohomology of a compact quotient of the
/// Heisenberg group, as the Chevalley–Eilenberg complex on generators
/// f¹, f², f³ (the restrictions of e³, e⁴, e⁷) with df³ = −2f¹∧f².
pub struct ComponentModel {
    pub complex: CochainComplex,
    /// Genus of the fiber surface. The component fibers over the circle dual
    /// to f¹ with torus fiber (the 2-step Heisenberg structure), so g = 1
    /// and the ω-term of rule 4 vanishes.
    pub genus: i64,
    /// The fiber class ω ∈ H²(L): the f²∧f³ volume normalized to integrate
    /// to 1 over the torus fiber (covolume 1/12 in f-coordinates).
    pub fiber_class: CohomologyClass,
    /// ∫_L f¹²³ over the component.
    pub volume: BigRational,
}

/// The component ring: Betti numbers (1, 2, 2, 1).
pub fn heisenberg_component_ring() -> ComponentModel {
    let complex = CochainComplex::full(builtin::component_cdga());
    let covolume = builtin::component_covolume();
    // ∫_fiber f²³ equals the (u₄, u₇)-lattice covolume; normalize to 1
    let coeff = builtin::fiber_area()
        .recip();
    let omega_rep = Form::from_terms(
        3,
        &[(&[2, 3][..], FieldElement::from_rational(coeff))],
    )
    .unwrap();
    let fiber_class = complex
        .class_of(&omega_rep)
        .expect("f23 is closed in the component complex");
    ComponentModel {
        complex,
        genus: 1,
        fiber_class,
        volume: covolume,
    }
}

/// The restriction morphism from the ambient complex onto a component.
pub fn restriction_morphism() -> CdgaMorphism {
    builtin::component_restriction()
}

/// The projectivization ring H*(L)[x]/(x² + (2−2g)·ω·x) as a free
/// H*(L)-module on {1, x}; basis elements are (class index by degree, power).
pub struct ProjectivizationRing {
    component: ComponentModel,
}

impl ProjectivizationRing {
    pub fn new(component: ComponentModel) -> Self {
        ProjectivizationRing { component }
    }

    pub fn total_dimension(&self) -> usize {
        2 * self.component.complex.betti().iter().sum::<usize>()
    }

    /// Product of η·x^s and η'·x^t, returned as the pair of H*(L)-components
    /// (coefficient of 1, coefficient of x), each a class when non-zero.
    pub fn product(
        &self,
        eta: &CohomologyClass,
        s: bool,
        eta2: &CohomologyClass,
        t: bool,
    ) -> (Option<CohomologyClass>, Option<CohomologyClass>) {
        let c = &self.component.complex;
        let base = c
            .cup(eta, eta2)
            .expect("component classes share the complex");
        match (s, t) {
            (false, false) => (nonzero(base), None),
            (false, true) | (true, false) => (None, nonzero(base)),
            (true, true) => {
                // x² = −(2−2g)·ω·x
                let factor = FieldElement::from_int(-(2 - 2 * self.component.genus));
                let omega_part = c
                    .cup(&base, &self.component.fiber_class)
                    .expect("fiber class lives in the same complex");
                let scaled = CohomologyClass {
                    degree: omega_part.degree,
                    coords: omega_part
                        .coords
                        .iter()
                        .map(|v| v.mul_ref(&factor))
                        .collect(),
                    representative: omega_part.representative.scale(&factor),
                };
                (None, nonzero(scaled))
            }
        }
    }
}

fn nonzero(class: CohomologyClass) -> Option<CohomologyClass> {
    if class.is_zero() {
        None
    } else {
        Some(class)
    }
}

/// Identifies a basis element of the assembled ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisElement {
    /// The `index`-th basis class of H^degree(X).
    Base { degree: usize, index: usize },
    /// (component, H^{degree−2}(L) index): the class γ ⊗ x_component.
    Exceptional {
        degree: usize,
        component: usize,
        index: usize,
    },
}

/// The assembled cohomology ring of the resolution, with a dense product
/// table over its graded basis.
pub struct ResolutionRing {
    pub base: CochainComplex,
    pub component: ComponentModel,
    pub component_count: usize,
    base_betti: Vec<usize>,
    comp_betti: Vec<usize>,
    /// Per-degree dimensions of the assembled ring.
    dims: Vec<usize>,
    /// Global offset of each degree block.
    offsets: Vec<usize>,
    /// Rational cup tables of the base: cup[k1][k2][i][j] = coords in H^{k1+k2}(X).
    base_cup: Vec<Vec<Vec<Vec<Vec<BigRational>>>>>,
    comp_cup: Vec<Vec<Vec<Vec<Vec<BigRational>>>>>,
    /// r̄: H^k(X) → H^k(L) coordinates.
    restrict: Vec<Vec<Vec<BigRational>>>,
    /// Duality transfers: pd[m][i] = coords of PD(η_{m,i}) in H^{m+4}(X).
    pd: Vec<Vec<Vec<BigRational>>>,
    /// ω coordinates in H²(L).
    fiber: Vec<BigRational>,
    /// table[a][b] = sparse global coordinates of the product, for all global
    /// ids a, b whose degrees sum to at most the top degree.
    table: Vec<Vec<Vec<(usize, BigRational)>>>,
}

fn rational_coords(class: &CohomologyClass) -> Result<Vec<BigRational>, RingError> {
    class
        .coords
        .iter()
        .map(|c| c.as_rational().ok_or(RingError::IrrationalData))
        .collect()
}

impl ResolutionRing {
    /// Assembles the ring for the bundled configuration: the invariant
    /// complex of the quotient, 16 identical Heisenberg components, the
    /// restriction morphism, and exact integration functionals.
    pub fn build() -> Result<Self, RingError> {
        let base = builtin::invariant_complex();
        let component = heisenberg_component_ring();
        let restriction = restriction_morphism();
        let count = builtin::COMPONENT_COUNT;

        let base_betti = base.betti();
        let comp_betti = component.complex.betti();
        let top = base.top_degree();

        // cup tables
        let base_cup = cup_tables(&base)?;
        let comp_cup = cup_tables(&component.complex)?;

        // restriction on classes
        let mut restrict = Vec::with_capacity(4);
        for k in 0..=component.complex.top_degree() {
            let mut rows = Vec::new();
            for class in base.cohomology_basis(k) {
                let image = restriction.apply(&class.representative);
                let rclass = component.complex.class_of(&image)?;
                rows.push(rational_coords(&rclass)?);
            }
            restrict.push(rows);
        }

        // duality transfers PD_m: H^m(L) → H^{m+4}(X) from
        // ⟨PD(η), σ⟩_X = ∫_L η ∧ r(σ) for σ running over H^{3−m}(X)
        let qvol = builtin::quotient_volume();
        let lvol = &component.volume;
        let top_base = Monomial::normalize(&[1, 2, 3, 4, 5, 6, 7]).unwrap().0;
        let top_comp = Monomial::normalize(&[1, 2, 3]).unwrap().0;
        let mut pd = Vec::with_capacity(4);
        for m in 0..=3 {
            let h_target = base.cohomology_basis(m + 4);
            let h_pair = base.cohomology_basis(3 - m);
            let n = h_target.len();
            if n != h_pair.len() {
                return Err(RingError::DegeneratePairing(m));
            }
            // pairing[b][a] = ∫_X rep_a ∧ rep_b
            let mut pairing = Matrix::zero(n, n);
            for (b, sigma) in h_pair.iter().enumerate() {
                for (a, alpha) in h_target.iter().enumerate() {
                    let w = alpha
                        .representative
                        .wedge(&sigma.representative)
                        .expect("same ambient");
                    let c = w
                        .coeff(&top_base)
                        .as_rational()
                        .ok_or(RingError::IrrationalData)?;
                    pairing[(b, a)] = c * &qvol;
                }
            }
            if pairing.rank() < n {
                return Err(RingError::DegeneratePairing(m));
            }
            let mut transfers = Vec::new();
            for eta in component.complex.cohomology_basis(m) {
                let mut rhs = Vec::with_capacity(n);
                for sigma in &h_pair {
                    let restricted = restriction.apply(&sigma.representative);
                    let w = eta
                        .representative
                        .wedge(&restricted)
                        .expect("component ambient");
                    let c = w
                        .coeff(&top_comp)
                        .as_rational()
                        .ok_or(RingError::IrrationalData)?;
                    rhs.push(c * lvol);
                }
                let coords = pairing
                    .solve(&rhs)
                    .ok_or(RingError::DegeneratePairing(m))?;
                transfers.push(coords);
            }
            pd.push(transfers);
        }

        let fiber = rational_coords(&component.fiber_class)?;

        let mut dims = Vec::with_capacity(top + 1);
        let mut offsets = Vec::with_capacity(top + 2);
        let mut acc = 0usize;
        for k in 0..=top {
            offsets.push(acc);
            let extra = if (2..=5).contains(&k) {
                count * comp_betti[k - 2]
            } else {
                0
            };
            dims.push(base_betti[k] + extra);
            acc += base_betti[k] + extra;
        }
        offsets.push(acc);

        let mut ring = ResolutionRing {
            base,
            component,
            component_count: count,
            base_betti,
            comp_betti,
            dims,
            offsets,
            base_cup,
            comp_cup,
            restrict,
            pd,
            fiber,
            table: Vec::new(),
        };
        ring.table = ring.build_table();
        Ok(ring)
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dimension(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len() - 1
    }

    /// The degree of a global basis id.
    pub fn degree_of(&self, id: usize) -> usize {
        (0..self.dims.len())
            .find(|&k| id < self.offsets[k + 1])
            .expect("id in range")
    }

    pub fn describe(&self, id: usize) -> BasisElement {
        let degree = self.degree_of(id);
        let pos = id - self.offsets[degree];
        if pos < self.base_betti[degree] {
            BasisElement::Base { degree, index: pos }
        } else {
            let rel = pos - self.base_betti[degree];
            let per = self.comp_betti[degree - 2];
            BasisElement::Exceptional {
                degree,
                component: rel / per,
                index: rel % per,
            }
        }
    }

    /// Global id of a base-sector class.
    pub fn base_id(&self, degree: usize, index: usize) -> usize {
        self.offsets[degree] + index
    }

    /// Global id of γ_index ⊗ x_component in the given total degree.
    pub fn exceptional_id(&self, degree: usize, component: usize, index: usize) -> usize {
        self.offsets[degree]
            + self.base_betti[degree]
            + component * self.comp_betti[degree - 2]
            + index
    }

    /// The exceptional class τ_i = 1 ⊗ x_i in degree 2.
    pub fn tau(&self, component: usize) -> usize {
        self.exceptional_id(2, component, 0)
    }

    /// The Poincaré dual of a component, as coordinates over the H⁴(X) basis.
    pub fn poincare_dual(&self) -> &[BigRational] {
        &self.pd[0][0]
    }

    /// The duality transfer of the η-th degree-m component class.
    pub fn duality_transfer(&self, m: usize, index: usize) -> &[BigRational] {
        &self.pd[m][index]
    }

    fn build_table(&self) -> Vec<Vec<Vec<(usize, BigRational)>>> {
        let total = self.total_dimension();
        let mut table = vec![vec![Vec::new(); total]; total];
        for a in 0..total {
            for b in 0..total {
                table[a][b] = self.raw_product(a, b);
            }
        }
        table
    }

    /// Product from the four rules; sparse global coordinates.
    fn raw_product(&self, a: usize, b: usize) -> Vec<(usize, BigRational)> {
        let (ka, kb) = (self.degree_of(a), self.degree_of(b));
        let k = ka + kb;
        if k > self.top_degree() {
            return Vec::new();
        }
        match (self.describe(a), self.describe(b)) {
            (BasisElement::Base { index: i, .. }, BasisElement::Base { index: j, .. }) => {
                let coords = &self.base_cup[ka][kb][i][j];
                coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (self.base_id(k, t), c.clone()))
                    .collect()
            }
            (
                BasisElement::Base { index: i, .. },
                BasisElement::Exceptional {
                    component,
                    index: j,
                    ..
                },
            ) => {
                // α·(γ⊗x) = (r(α)∧γ)⊗x
                let m = kb - 2;
                if ka > 3 || ka + m > 3 {
                    return Vec::new();
                }
                let r = &self.restrict[ka][i];
                let mut out = vec![BigRational::zero(); self.comp_betti[ka + m]];
                for (s, rs) in r.iter().enumerate() {
                    if rs.is_zero() {
                        continue;
                    }
                    for (t, c) in self.comp_cup[ka][m][s][j].iter().enumerate() {
                        if !c.is_zero() {
                            out[t] += rs * c;
                        }
                    }
                }
                out.iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(t, c)| (self.exceptional_id(k, component, t), c.clone()))
                    .collect()
            }
            (BasisElement::Exceptional { .. }, BasisElement::Base { .. }) => {
                // graded commutativity: (γ⊗x)·α = (−1)^{ka·kb} α·(γ⊗x)
                let mut out = self.raw_product(b, a);
                if ka % 2 == 1 && kb % 2 == 1 {
                    for (_, c) in &mut out {
                        *c = -c.clone();
                    }
                }
                out
            }
            (
                BasisElement::Exceptional {
                    component: ci,
                    index: i,
                    ..
                },
                BasisElement::Exceptional {
                    component: cj,
                    index: j,
                    ..
                },
            ) => {
                if ci != cj {
                    return Vec::new();
                }
                let (ma, mb) = (ka - 2, kb - 2);
                let m = ma + mb;
                if m > 3 {
                    return Vec::new();
                }
                // γ∧γ' in H^m(L)
                let w = &self.comp_cup[ma][mb][i][j];
                let mut out: Vec<(usize, BigRational)> = Vec::new();
                // −2·PD(γγ') in the base sector of degree m+4 = k
                let mut basevec = vec![BigRational::zero(); self.base_betti[k]];
                for (s, ws) in w.iter().enumerate() {
                    if ws.is_zero() {
                        continue;
                    }
                    for (t, c) in self.pd[m][s].iter().enumerate() {
                        if !c.is_zero() {
                            basevec[t] += rat(-2, 1) * ws * c;
                        }
                    }
                }
                for (t, c) in basevec.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.push((self.base_id(k, t), c));
                    }
                }
                // −(2−2g)·(γγ'ω ⊗ x_i); vanishes at genus 1 but kept general
                let factor = rat(-(2 - 2 * self.component.genus), 1);
                if !factor.is_zero() && m + 2 <= 3 {
                    let mut excvec = vec![BigRational::zero(); self.comp_betti[m + 2]];
                    for (s, ws) in w.iter().enumerate() {
                        if ws.is_zero() {
                            continue;
                        }
                        for (u, fu) in self.fiber.iter().enumerate() {
                            if fu.is_zero() {
                                continue;
                            }
                            for (t, c) in self.comp_cup[m][2][s][u].iter().enumerate() {
                                if !c.is_zero() {
                                    excvec[t] += &factor * ws * fu * c;
                                }
                            }
                        }
                    }
                    for (t, c) in excvec.into_iter().enumerate() {
                        if !c.is_zero() {
                            out.push((self.exceptional_id(k + 2, ci, t), c));
                        }
                    }
                }
                out.sort_by_key(|(t, _)| *t);
                out
            }
        }
    }

    /// Table lookup.
    pub fn product(&self, a: usize, b: usize) -> &[(usize, BigRational)] {
        &self.table[a][b]
    }

    /// Dense product of arbitrary elements given as sparse global vectors.
    pub fn product_vectors(
        &self,
        x: &[(usize, BigRational)],
        y: &[(usize, BigRational)],
    ) -> Vec<(usize, BigRational)> {
        let mut dense = vec![BigRational::zero(); self.total_dimension()];
        for (a, ca) in x {
            for (b, cb) in y {
                for (t, c) in self.product(*a, *b) {
                    dense[*t] += ca * cb * c;
                }
            }
        }
        dense
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect()
    }

    /// Exhaustive associativity audit over basis triples with degree sum at
    /// most the top degree. Returns the first failing triple.
    pub fn audit_associativity(&self) -> Result<(), (usize, usize, usize)> {
        let total = self.total_dimension();
        for a in 0..total {
            let ka = self.degree_of(a);
            for b in 0..total {
                let kb = self.degree_of(b);
                if ka + kb > self.top_degree() {
                    continue;
                }
                for c in 0..total {
                    let kc = self.degree_of(c);
                    if ka + kb + kc > self.top_degree() {
                        continue;
                    }
                    let mut lhs = vec![BigRational::zero(); total];
                    for (r, q) in self.product(a, b) {
                        for (t, v) in self.product(*r, c) {
                            lhs[*t] += q * v;
                        }
                    }
                    let mut rhs = vec![BigRational::zero(); total];
                    for (s, p) in self.product(b, c) {
                        for (t, v) in self.product(a, *s) {
                            rhs[*t] += p * v;
                        }
                    }
                    if lhs != rhs {
                        return Err((a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// Graded commutativity audit: ab = (−1)^{|a||b|} ba for all basis pairs.
    pub fn audit_graded_commutativity(&self) -> Result<(), (usize, usize)> {
        let total = self.total_dimension();
        for a in 0..total {
            let ka = self.degree_of(a);
            for b in 0..total {
                let kb = self.degree_of(b);
                let mut expected: Vec<(usize, BigRational)> = self.product(b, a).to_vec();
                if ka % 2 == 1 && kb % 2 == 1 {
                    for (_, c) in &mut expected {
                        *c = -c.clone();
                    }
                }
                if self.product(a, b) != expected.as_slice() {
                    return Err((a, b));
                }
            }
        }
        Ok(())
    }

    /// τ_i² = −2·PD[L_i] in the base sector and τ_i·τ_j = 0 for i ≠ j.
    pub fn audit_tau_relations(&self) -> bool {
        let pd = self.poincare_dual().to_vec();
        for i in 0..self.component_count {
            let sq = self.product(self.tau(i), self.tau(i));
            let mut expected: Vec<(usize, BigRational)> = pd
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(t, c)| (self.base_id(4, t), rat(-2, 1) * c))
                .collect();
            expected.sort_by_key(|(t, _)| *t);
            if sq != expected.as_slice() {
                return false;
            }
            for j in 0..self.component_count {
                if i != j && !self.product(self.tau(i), self.tau(j)).is_empty() {
                    return false;
                }
            }
        }
        true
    }

    /// The pulled-back class of a base class, as a sparse global vector.
    pub fn rho_star(&self, class: &CohomologyClass) -> Result<Vec<(usize, BigRational)>, RingError> {
        let coords = rational_coords(class)?;
        Ok(coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.base_id(class.degree, i), c))
            .collect())
    }
}

/// Verdict of the lifted non-formality obstruction check.
#[derive(Clone, Debug, PartialEq)]
pub enum LiftVerdict {
    /// The affine set {ρ*[2e³⁵⁶ + e³∧β′]} + span{ρ*(e³)·τ_i} avoids zero in
    /// degree 3 of the ring, so the obstruction survives the resolution.
    ObstructionPersists,
    /// Coordinates expressing zero inside the affine set.
    Counterexample(Vec<BigRational>),
}

impl ResolutionRing {
    /// Verifies the lifted triple-product obstruction at the ring level:
    /// the class ρ*[2e³⁵⁶] stays outside the subspace spanned by the
    /// products ρ*[e³]·ρ*(H²(X)) and ρ*[e³]·τ_i. The first block realizes
    /// e³∧β′ over the degree-2 classes of the quotient; the second block is
    /// the enlargement of the indeterminacy by the exceptional classes,
    /// which are linearly independent from the pulled-back sector since
    /// r(e³) is non-zero on every component.
    pub fn massey_lift_check(&self) -> Result<LiftVerdict, RingError> {
        let target_form = builtin::massey_expected_representative();
        let target = self.base.class_of(&target_form)?;
        let v0 = dense(self.rho_star(&target)?, self.total_dimension());

        let e3 = self.base.class_of(&builtin::massey_xi1_representative())?;
        let e3_ring = self.rho_star(&e3)?;

        let mut columns: Vec<Vec<BigRational>> = Vec::new();
        for h in self.base.cohomology_basis(2) {
            let hv = self.rho_star(&h)?;
            let prod = self.product_vectors(&e3_ring, &hv);
            columns.push(dense(prod, self.total_dimension()));
        }
        for i in 0..self.component_count {
            let tau = vec![(self.tau(i), BigRational::one())];
            let prod = self.product_vectors(&e3_ring, &tau);
            // r(e³) must survive on the component for the enlargement to be
            // genuinely independent
            assert!(
                !prod.is_empty(),
                "restriction of the degree-1 generator vanished on component {i}"
            );
            columns.push(dense(prod, self.total_dimension()));
        }
        let matrix = Matrix::from_columns(&columns);
        match matrix.solve(&v0) {
            None => Ok(LiftVerdict::ObstructionPersists),
            Some(sol) => Ok(LiftVerdict::Counterexample(sol)),
        }
    }
}

fn dense(sparse: Vec<(usize, BigRational)>, len: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); len];
    for (i, c) in sparse {
        out[i] = c;
    }
    out
}

/// Cup-product coordinate tables of a complex, rational entries required.
#[allow(clippy::type_complexity)]
fn cup_tables(
    complex: &CochainComplex,
) -> Result<Vec<Vec<Vec<Vec<Vec<BigRational>>>>>, RingError> {
    let top = complex.top_degree();
    let bases: Vec<Vec<CohomologyClass>> =
        (0..=top).map(|k| complex.cohomology_basis(k)).collect();
    let mut out = Vec::with_capacity(top + 1);
    for k1 in 0..=top {
        let mut row = Vec::with_capacity(top + 1);
        for k2 in 0..=top {
            let mut mat = Vec::new();
            if k1 + k2 <= top {
                for x in &bases[k1] {
                    let mut line = Vec::new();
                    for y in &bases[k2] {
                        let class = complex.cup(x, y)?;
                        line.push(rational_coords(&class)?);
                    }
                    mat.push(line);
                }
            }
            row.push(mat);
        }
        out.push(row);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn component_ring_betti_and_products() {
        let comp = heisenberg_component_ring();
        assert_eq!(comp.complex.betti(), vec![1, 2, 2, 1]);
        // H¹ is spanned by [f¹], [f²]
        let h1 = comp.complex.cohomology_basis(1);
        assert_eq!(h1.len(), 2);
        // [f¹][f²] = 0 because f¹∧f² = −½·df³
        let cup = comp.complex.cup(&h1[0], &h1[1]).unwrap();
        assert!(cup.is_zero());
        // top class [f¹²³]
        let h3 = comp.complex.cohomology_basis(3);
        assert_eq!(h3.len(), 1);
    }

    #[test]
    fn projectivization_relation() {
        let proj = ProjectivizationRing::new(heisenberg_component_ring());
        assert_eq!(proj.total_dimension(), 12);
        let comp = heisenberg_component_ring();
        let one = comp.complex.cohomology_basis(0).remove(0);
        // x² = 0 at genus 1
        let (base_part, x_part) = proj.product(&one, true, &one, true);
        assert!(base_part.is_none());
        assert!(x_part.is_none());
        // x·ω = ω⊗x survives
        let omega = comp.fiber_class.clone();
        let (none_part, some_part) = proj.product(&one, true, &omega, false);
        assert!(none_part.is_none());
        assert!(some_part.is_some());
    }

    #[test]
    fn ring_dimensions() {
        let ring = ResolutionRing::build().unwrap();
        assert_eq!(ring.dims(), &[1, 1, 19, 40, 40, 19, 1, 1]);
        assert_eq!(ring.total_dimension(), 122);
    }

    #[test]
    fn poincare_dual_properties() {
        let ring = ResolutionRing::build().unwrap();
        // defining property: ⟨PD ∪ σ, [X]⟩ = ∫_L r(σ) over the H³(X) basis
        let pd = ring.poincare_dual().to_vec();
        let base = &ring.base;
        let h4 = base.cohomology_basis(4);
        let h3 = base.cohomology_basis(3);
        let top = Monomial::normalize(&[1, 2, 3, 4, 5, 6, 7]).unwrap().0;
        let topc = Monomial::normalize(&[1, 2, 3]).unwrap().0;
        let restriction = restriction_morphism();
        for sigma in &h3 {
            let mut lhs = BigRational::zero();
            for (a, alpha) in h4.iter().enumerate() {
                let w = alpha
                    .representative
                    .wedge(&sigma.representative)
                    .unwrap();
                lhs += &pd[a]
                    * w.coeff(&top).as_rational().unwrap()
                    * builtin::quotient_volume();
            }
            let r = restriction.apply(&sigma.representative);
            let rhs = r.coeff(&topc).as_rational().unwrap() * builtin::component_covolume();
            assert_eq!(lhs, rhs);
        }
        // the transfer of the unliftable degree-1 component class vanishes
        assert!(ring.duality_transfer(1, 1).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn tau_relations() {
        let ring = ResolutionRing::build().unwrap();
        assert!(ring.audit_tau_relations());
    }

    #[test]
    fn restriction_kills_h2() {
        // every degree-2 class of the quotient restricts to zero on the
        // components, which is what makes PD₁ vanish identically
        let ring = ResolutionRing::build().unwrap();
        for row in &ring.restrict[2] {
            assert!(row.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn massey_lift() {
        let ring = ResolutionRing::build().unwrap();
        assert_eq!(ring.massey_lift_check().unwrap(), LiftVerdict::ObstructionPersists);
    }

    #[test]
    fn ring_audits() {
        let ring = ResolutionRing::build().unwrap();
        assert_eq!(ring.audit_graded_commutativity(), Ok(()));
        assert_eq!(ring.audit_associativity(), Ok(()));
    }

    #[test]
    fn degenerate_control_for_the_lift() {
        // replacing 2e³⁵⁶ by e³∧e²⁵ must land inside the span
        let ring = ResolutionRing::build().unwrap();
        let base = &ring.base;
        let e3 = base
            .class_of(&crate::cdga::parse_form(7, "e3").unwrap())
            .unwrap();
        let e25 = base
            .class_of(&crate::cdga::parse_form(7, "e25").unwrap())
            .unwrap();
        let target = base.cup(&e3, &e25).unwrap();
        let v0 = dense(ring.rho_star(&target).unwrap(), ring.total_dimension());
        let e3v = ring.rho_star(&e3).unwrap();
        let mut columns = Vec::new();
        for h in base.cohomology_basis(2) {
            let hv = ring.rho_star(&h).unwrap();
            columns.push(dense(
                ring.product_vectors(&e3v, &hv),
                ring.total_dimension(),
            ));
        }
        assert!(Matrix::from_columns(&columns).solve(&v0).is_some());
    }
}
