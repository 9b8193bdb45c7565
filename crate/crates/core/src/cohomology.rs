//! Cochain complexes with chosen monomial bases, Betti numbers, cohomology
//! class representatives, cup products and triple Massey products.
//!
//! All linear algebra is exact over Q(√2, √3) with first-non-zero pivoting,
//! so representatives and coordinates are deterministic across runs.

use crate::cdga::{Cdga, Involution};
use crate::exterior::{Form, Monomial};
use crate::field::FieldElement;
use crate::linalg::{Matrix, SpanSolver};
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CohomologyError {
    #[error("form is not homogeneous")]
    MixedDegree,
    #[error("form is not closed")]
    NotClosed,
    #[error("form has support outside the chosen subcomplex basis")]
    OutsideComplex,
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("classes come from different degrees or complexes")]
    ClassMismatch,
}

/// A cohomology class: coordinates over the complex's chosen basis of
/// H^degree, together with a distinguished closed representative.
#[derive(Clone, Debug, PartialEq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coords: Vec<FieldElement>,
    pub representative: Form,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }
}

/// Outcome of an exactness query.
#[derive(Clone, Debug, PartialEq)]
pub enum Exactness {
    /// d(primitive) equals the queried form.
    Primitive(Form),
    NotExact,
    NotClosed,
}

/// A triple Massey product that is defined (both premise cups vanish).
#[derive(Clone, Debug)]
pub struct MasseyTriple {
    pub representative: CohomologyClass,
    /// Basis of the indeterminacy subspace ξ₁·H^{q+r−1} + H^{p+q−1}·ξ₃,
    /// as coordinate vectors in H^{p+q+r−1}.
    pub indeterminacy: Vec<Vec<FieldElement>>,
    /// The chosen defining system, (a_12, a_23).
    pub system: (Form, Form),
    pub trivial: bool,
}

impl MasseyTriple {
    pub fn indeterminacy_dim(&self) -> usize {
        self.indeterminacy.len()
    }
}

/// Result of a triple Massey product computation.
#[derive(Clone, Debug)]
pub enum MasseyOutcome {
    /// A premise cup product does not vanish; carries which pair and the
    /// non-zero obstruction class.
    Undefined {
        pair: (u8, u8),
        obstruction: CohomologyClass,
    },
    Defined(MasseyTriple),
}

impl MasseyOutcome {
    pub fn is_defined(&self) -> bool {
        matches!(self, MasseyOutcome::Defined(_))
    }

    pub fn defined(&self) -> Option<&MasseyTriple> {
        match self {
            MasseyOutcome::Defined(t) => Some(t),
            MasseyOutcome::Undefined { .. } => None,
        }
    }
}

struct DegreeData {
    basis: Vec<Monomial>,
    /// Matrix of d: C^k → C^{k+1} over the chosen bases.
    d_matrix: Matrix<FieldElement>,
    image_dim: usize,
    /// Chosen representatives of H^k as coordinate vectors in C^k.
    reps: Vec<Vec<FieldElement>>,
    /// Solver over the columns [image basis | representatives].
    class_solver: SpanSolver<FieldElement>,
}

/// A cochain complex: a degree-1-generated CDGA together with a chosen
/// monomial basis in every degree (the full complex, or the +1 eigenspace of
/// a diagonal involution).
pub struct CochainComplex {
    cdga: Cdga,
    degrees: Vec<DegreeData>,
}

impl CochainComplex {
    pub fn full(cdga: Cdga) -> Self {
        let n = cdga.generators();
        let bases = (0..=n as usize)
            .map(|k| Form::basis_of_degree(n, k).unwrap())
            .collect();
        CochainComplex::with_bases(cdga, bases)
    }

    /// The +1 eigenspace of a diagonal involution. Every monomial is a ±1
    /// eigenvector, so the invariant subcomplex has an explicit monomial
    /// basis; d restricts because the involution is a chain map.
    pub fn invariant(cdga: Cdga, involution: &Involution) -> Self {
        let n = cdga.generators();
        let bases = (0..=n as usize)
            .map(|k| involution.eigen_monomials(n, k, 1))
            .collect();
        CochainComplex::with_bases(cdga, bases)
    }

    fn with_bases(cdga: Cdga, bases: Vec<Vec<Monomial>>) -> Self {
        let top = bases.len() - 1;
        let mut degrees = Vec::with_capacity(bases.len());
        // d-matrices first
        let mut d_matrices = Vec::with_capacity(bases.len());
        for k in 0..=top {
            let rows = if k + 1 <= top { bases[k + 1].len() } else { 0 };
            let mut m = Matrix::zero(rows, bases[k].len());
            for (j, mono) in bases[k].iter().enumerate() {
                let image = cdga.differential(
                    &Form::from_term(cdga.generators(), mono.clone(), FieldElement::from_int(1))
                        .unwrap(),
                );
                let coords = coords_over(&image, &bases[(k + 1).min(top)])
                    .expect("differential leaves the chosen subcomplex");
                if k + 1 <= top {
                    for (i, c) in coords.into_iter().enumerate() {
                        m[(i, j)] = c;
                    }
                }
            }
            d_matrices.push(m);
        }
        for k in 0..=top {
            let dim = bases[k].len();
            // image of d_{k-1}: reduce its columns to an independent set
            let image_cols: Vec<Vec<FieldElement>> = if k == 0 {
                Vec::new()
            } else {
                let dm = &d_matrices[k - 1];
                let (_, pivots) = dm.rref();
                pivots.iter().map(|&j| dm.column(j)).collect()
            };
            // kernel of d_k
            let kernel: Vec<Vec<FieldElement>> = if dim == 0 {
                Vec::new()
            } else {
                d_matrices[k].kernel_basis()
            };
            // pick kernel vectors extending the image to a basis of Z^k
            let mut cols: Vec<Vec<FieldElement>> = image_cols.clone();
            let mut reps = Vec::new();
            for v in &kernel {
                let candidate = Matrix::from_columns(
                    &cols
                        .iter()
                        .cloned()
                        .chain(std::iter::once(v.clone()))
                        .collect::<Vec<_>>(),
                );
                if candidate.rank() > cols.len() {
                    cols.push(v.clone());
                    reps.push(v.clone());
                }
            }
            let mut solver_cols = image_cols.clone();
            solver_cols.extend(reps.iter().cloned());
            let class_solver = if solver_cols.is_empty() {
                SpanSolver::new(&Matrix::zero(dim, 0))
            } else {
                SpanSolver::new(&Matrix::from_columns(&solver_cols))
            };
            degrees.push(DegreeData {
                basis: bases[k].clone(),
                d_matrix: d_matrices[k].clone(),
                image_dim: image_cols.len(),
                reps,
                class_solver,
            });
        }
        CochainComplex { cdga, degrees }
    }

    pub fn cdga(&self) -> &Cdga {
        &self.cdga
    }

    pub fn top_degree(&self) -> usize {
        self.degrees.len() - 1
    }

    pub fn dimension(&self, k: usize) -> usize {
        self.degrees.get(k).map_or(0, |d| d.basis.len())
    }

    pub fn basis(&self, k: usize) -> &[Monomial] {
        &self.degrees[k].basis
    }

    pub fn d_matrix(&self, k: usize) -> &Matrix<FieldElement> {
        &self.degrees[k].d_matrix
    }

    /// b_k = dim ker(d_k) − rank(d_{k−1}) for every degree.
    pub fn betti(&self) -> Vec<usize> {
        (0..=self.top_degree())
            .map(|k| {
                let d = &self.degrees[k];
                let rank_k = d.d_matrix.rank();
                d.basis.len() - rank_k - d.image_dim
            })
            .collect()
    }

    /// Coordinates of a homogeneous form over the degree-k basis.
    pub fn coords(&self, form: &Form, k: usize) -> Result<Vec<FieldElement>, CohomologyError> {
        if k > self.top_degree() {
            return Err(CohomologyError::DegreeOutOfRange(k));
        }
        coords_over(form, &self.degrees[k].basis).ok_or(CohomologyError::OutsideComplex)
    }

    pub fn form_from_coords(&self, k: usize, coords: &[FieldElement]) -> Form {
        let mut out = Form::zero(self.cdga.generators());
        for (m, c) in self.degrees[k].basis.iter().zip(coords) {
            if !c.is_zero() {
                out = out.add(
                    &Form::from_term(self.cdga.generators(), m.clone(), c.clone()).unwrap(),
                );
            }
        }
        out
    }

    /// Deterministic (pivot-based) representatives spanning H^k.
    pub fn cohomology_basis(&self, k: usize) -> Vec<CohomologyClass> {
        let Some(data) = self.degrees.get(k) else {
            return Vec::new();
        };
        let b = data.reps.len();
        data.reps
            .iter()
            .enumerate()
            .map(|(idx, rep)| {
                let mut coords = vec![FieldElement::zero(); b];
                coords[idx] = FieldElement::from_int(1);
                CohomologyClass {
                    degree: k,
                    coords,
                    representative: self.form_from_coords(k, rep),
                }
            })
            .collect()
    }

    /// The class of a closed homogeneous form.
    pub fn class_of(&self, form: &Form) -> Result<CohomologyClass, CohomologyError> {
        let k = self.degree_of(form)?;
        let vec = self.coords(form, k)?;
        if !self.is_closed_coords(k, &vec) {
            return Err(CohomologyError::NotClosed);
        }
        let data = &self.degrees[k];
        let solution = data
            .class_solver
            .solve(&vec)
            .ok_or(CohomologyError::OutsideComplex)?;
        let coords = solution[data.image_dim..].to_vec();
        Ok(CohomologyClass {
            degree: k,
            coords,
            representative: form.clone(),
        })
    }

    fn degree_of(&self, form: &Form) -> Result<usize, CohomologyError> {
        form.degree().ok_or(CohomologyError::MixedDegree)
    }

    fn is_closed_coords(&self, k: usize, coords: &[FieldElement]) -> bool {
        self.degrees[k]
            .d_matrix
            .mul_vec(coords)
            .iter()
            .all(FieldElement::is_zero)
    }

    /// Distinguishes not-closed from closed-but-not-exact, and returns a
    /// pivot-deterministic primitive when one exists.
    pub fn is_exact(&self, form: &Form) -> Result<Exactness, CohomologyError> {
        let k = self.degree_of(form)?;
        let vec = self.coords(form, k)?;
        if !self.is_closed_coords(k, &vec) {
            return Ok(Exactness::NotClosed);
        }
        if form.is_zero() {
            return Ok(Exactness::Primitive(Form::zero(self.cdga.generators())));
        }
        if k == 0 {
            return Ok(Exactness::NotExact);
        }
        match self.degrees[k - 1].d_matrix.solve(&vec) {
            Some(x) => Ok(Exactness::Primitive(self.form_from_coords(k - 1, &x))),
            None => Ok(Exactness::NotExact),
        }
    }

    /// Cup product: the class of the wedge of representatives.
    pub fn cup(
        &self,
        x: &CohomologyClass,
        y: &CohomologyClass,
    ) -> Result<CohomologyClass, CohomologyError> {
        let w = x
            .representative
            .wedge(&y.representative)
            .map_err(|_| CohomologyError::ClassMismatch)?;
        self.class_of(&w)
    }

    /// The triple Massey product ⟨ξ₁, ξ₂, ξ₃⟩ with ā = (−1)^{|a|}a:
    /// solves da₁₂ = ā₁a₂ and da₂₃ = ā₂a₃, and returns the class of
    /// ā₁a₂₃ + ā₁₂a₃ together with the indeterminacy subspace
    /// ξ₁·H^{|ξ₂|+|ξ₃|−1} + H^{|ξ₁|+|ξ₂|−1}·ξ₃. Trivial means the
    /// representative lies in the indeterminacy, which is exactly when the
    /// full defining-system set (an affine coset of that subspace) contains
    /// zero.
    pub fn massey_triple(
        &self,
        xi1: &CohomologyClass,
        xi2: &CohomologyClass,
        xi3: &CohomologyClass,
    ) -> Result<MasseyOutcome, CohomologyError> {
        let cup12 = self.cup(xi1, xi2)?;
        if !cup12.is_zero() {
            return Ok(MasseyOutcome::Undefined {
                pair: (1, 2),
                obstruction: cup12,
            });
        }
        let cup23 = self.cup(xi2, xi3)?;
        if !cup23.is_zero() {
            return Ok(MasseyOutcome::Undefined {
                pair: (2, 3),
                obstruction: cup23,
            });
        }
        self.massey_with_representatives(
            &xi1.representative,
            &xi2.representative,
            &xi3.representative,
        )
        .map(MasseyOutcome::Defined)
    }

    /// The defined case with explicit representatives; used both by
    /// [`Self::massey_triple`] and by the representative-independence tests.
    pub fn massey_with_representatives(
        &self,
        a1: &Form,
        a2: &Form,
        a3: &Form,
    ) -> Result<MasseyTriple, CohomologyError> {
        let w12 = bar(a1).wedge(a2).map_err(|_| CohomologyError::ClassMismatch)?;
        let a12 = match self.is_exact(&w12)? {
            Exactness::Primitive(p) => p,
            _ => return Err(CohomologyError::NotClosed),
        };
        let w23 = bar(a2).wedge(a3).map_err(|_| CohomologyError::ClassMismatch)?;
        let a23 = match self.is_exact(&w23)? {
            Exactness::Primitive(p) => p,
            _ => return Err(CohomologyError::NotClosed),
        };
        let out = bar(a1)
            .wedge(&a23)
            .unwrap()
            .add(&bar(&a12).wedge(a3).unwrap());
        let representative = self.class_of(&out)?;
        let target_degree = representative.degree;

        // indeterminacy subspace: ξ1·H^{q+r-1} + H^{p+q-1}·ξ3
        let (p, q, r) = (
            a1.degree().ok_or(CohomologyError::MixedDegree)?,
            a2.degree().ok_or(CohomologyError::MixedDegree)?,
            a3.degree().ok_or(CohomologyError::MixedDegree)?,
        );
        let mut spanning: Vec<Vec<FieldElement>> = Vec::new();
        if q + r >= 1 {
            for h in self.cohomology_basis(q + r - 1) {
                let w = a1.wedge(&h.representative).unwrap();
                let class = self.class_of(&w)?;
                spanning.push(class.coords);
            }
        }
        if p + q >= 1 {
            for h in self.cohomology_basis(p + q - 1) {
                let w = h.representative.wedge(a3).unwrap();
                let class = self.class_of(&w)?;
                spanning.push(class.coords);
            }
        }
        let b = self.cohomology_basis(target_degree).len();
        let indeterminacy = reduce_to_basis(spanning, b);
        let trivial = if representative.is_zero() {
            true
        } else if indeterminacy.is_empty() {
            false
        } else {
            Matrix::from_columns(&indeterminacy).in_column_span(&representative.coords)
        };
        Ok(MasseyTriple {
            representative,
            indeterminacy,
            system: (a12, a23),
            trivial,
        })
    }
}

/// ā = (−1)^{|a|} a on homogeneous forms.
pub fn bar(a: &Form) -> Form {
    match a.degree() {
        Some(d) if d % 2 == 1 => a.neg(),
        _ => a.clone(),
    }
}

/// Coordinates of `form` over `basis` monomials; `None` when the support is
/// not contained in the basis.
fn coords_over(form: &Form, basis: &[Monomial]) -> Option<Vec<FieldElement>> {
    let mut coords = vec![FieldElement::zero(); basis.len()];
    'terms: for (m, c) in form.terms() {
        for (i, b) in basis.iter().enumerate() {
            if b == m {
                coords[i] = c.clone();
                continue 'terms;
            }
        }
        return None;
    }
    Some(coords)
}

/// Reduces a spanning set to an independent subset (first-come pivoting).
fn reduce_to_basis(vectors: Vec<Vec<FieldElement>>, dim: usize) -> Vec<Vec<FieldElement>> {
    let mut picked: Vec<Vec<FieldElement>> = Vec::new();
    for v in vectors {
        if v.iter().all(FieldElement::is_zero) {
            continue;
        }
        let mut cols = picked.clone();
        cols.push(v.clone());
        if Matrix::from_columns(&cols).rank() > picked.len() {
            picked.push(v);
        }
        if picked.len() == dim {
            break;
        }
    }
    picked
}
