//! Sparse exterior algebra over a finite set of degree-1 generators with
//! coefficients in Q(√2, √3).
//!
//! Monomials are strictly increasing index lists; the sign of any product is
//! normalized at construction from the parity of the sorting permutation.
//! The lexicographic ordering of [`basis_of_degree`] is the canonical basis
//! ordering for every matrix built downstream.

use crate::field::FieldElement;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// A basis monomial e^{i1} ∧ … ∧ e^{ik} with strictly increasing 1-based
/// indices. The empty list is the unit of degree 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(Vec<u8>);

impl Monomial {
    pub fn unit() -> Self {
        Monomial(Vec::new())
    }

    /// Builds a monomial from indices in arbitrary order, returning the sign
    /// of the sorting permutation, or `None` when an index repeats.
    pub fn normalize(indices: &[u8]) -> Option<(Monomial, i8)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting swaps
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Monomial(v), sign))
    }

    /// Indices, strictly increasing.
    pub fn indices(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, index: u8) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    /// Concatenation with sign, or `None` on a repeated index.
    pub fn merge(&self, other: &Monomial) -> Option<(Monomial, i8)> {
        let mut indices = Vec::with_capacity(self.0.len() + other.0.len());
        indices.extend_from_slice(&self.0);
        indices.extend_from_slice(&other.0);
        Monomial::normalize(&indices)
    }

    /// Removes the index at `position`, with the interior-product sign (−1)^position.
    fn remove_at(&self, position: usize) -> (Monomial, i8) {
        let mut v = self.0.clone();
        v.remove(position);
        (Monomial(v), if position % 2 == 0 { 1 } else { -1 })
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "e")?;
            for i in &self.0 {
                write!(f, "{i}")?;
            }
            Ok(())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExteriorError {
    #[error("ambient generator counts differ: {0} vs {1}")]
    AmbientMismatch(u8, u8),
    #[error("monomial index {index} exceeds ambient generator count {ambient}")]
    IndexOutOfRange { index: u8, ambient: u8 },
    #[error("degree {degree} out of range for {ambient} generators")]
    DegreeOutOfRange { degree: usize, ambient: u8 },
    #[error("repeated index in monomial")]
    RepeatedIndex,
    #[error("vector has {got} coordinates, ambient needs {want}")]
    VectorLength { got: usize, want: usize },
}

/// A sparse exterior-algebra element: a map from monomials to non-zero
/// coefficients, together with the ambient generator count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    ambient: u8,
    terms: BTreeMap<Monomial, FieldElement>,
}

/// Adds `coeff`·`m` into `terms`, dropping the entry when it cancels.
fn accumulate(terms: &mut BTreeMap<Monomial, FieldElement>, m: Monomial, coeff: FieldElement) {
    use std::collections::btree_map::Entry;
    if coeff.is_zero() {
        return;
    }
    match terms.entry(m) {
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(coeff);
        }
    }
}

impl Form {
    pub fn zero(ambient: u8) -> Self {
        Form {
            ambient,
            terms: BTreeMap::new(),
        }
    }

    pub fn unit(ambient: u8) -> Self {
        Form::from_term(ambient, Monomial::unit(), FieldElement::from_int(1)).unwrap()
    }

    /// The degree-1 generator e^index (1-based).
    pub fn generator(ambient: u8, index: u8) -> Result<Self, ExteriorError> {
        Form::from_term(ambient, Monomial(vec![index]), FieldElement::from_int(1))
    }

    pub fn from_term(
        ambient: u8,
        monomial: Monomial,
        coeff: FieldElement,
    ) -> Result<Self, ExteriorError> {
        if let Some(&index) = monomial.indices().iter().find(|&&i| i == 0 || i > ambient) {
            return Err(ExteriorError::IndexOutOfRange { index, ambient });
        }
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        Ok(Form { ambient, terms })
    }

    /// Builds a form from (indices, coefficient) pairs; indices may be
    /// unsorted and contribute their permutation sign.
    pub fn from_terms(
        ambient: u8,
        entries: &[(&[u8], FieldElement)],
    ) -> Result<Self, ExteriorError> {
        let mut out = Form::zero(ambient);
        for (indices, coeff) in entries {
            let (mono, sign) = Monomial::normalize(indices).ok_or(ExteriorError::RepeatedIndex)?;
            let signed = if sign < 0 {
                -coeff.clone()
            } else {
                coeff.clone()
            };
            let term = Form::from_term(ambient, mono, signed)?;
            out = out.add(&term);
        }
        Ok(out)
    }

    pub fn ambient(&self) -> u8 {
        self.ambient
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coeff(&self, monomial: &Monomial) -> FieldElement {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree when homogeneous; `None` for genuinely mixed forms. The zero
    /// form reports `Some(0)`.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        let first = match degrees.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            accumulate(&mut terms, m.clone(), c.clone());
        }
        Form {
            ambient: self.ambient,
            terms,
        }
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, s: &FieldElement) -> Form {
        if s.is_zero() {
            return Form::zero(self.ambient);
        }
        Form {
            ambient: self.ambient,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), s.mul_ref(c)))
                .collect(),
        }
    }

    /// Wedge product. Bilinear; the sign of each monomial pair comes from the
    /// merge permutation, and repeated indices kill the term.
    pub fn wedge(&self, other: &Form) -> Result<Form, ExteriorError> {
        if self.ambient != other.ambient {
            return Err(ExteriorError::AmbientMismatch(self.ambient, other.ambient));
        }
        let mut out = Form::zero(self.ambient);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, sign)) = ma.merge(mb) {
                    let mut coeff = ca.mul_ref(cb);
                    if sign < 0 {
                        coeff = -coeff;
                    }
                    accumulate(&mut out.terms, m, coeff);
                }
            }
        }
        Ok(out)
    }

    /// Interior product i(v) with a vector given by coordinates in the
    /// generator basis; an antiderivation of degree −1.
    pub fn contract(&self, vector: &[FieldElement]) -> Result<Form, ExteriorError> {
        if vector.len() != self.ambient as usize {
            return Err(ExteriorError::VectorLength {
                got: vector.len(),
                want: self.ambient as usize,
            });
        }
        let mut out = Form::zero(self.ambient);
        for (m, c) in &self.terms {
            for (pos, &index) in m.indices().iter().enumerate() {
                let v = &vector[(index - 1) as usize];
                if v.is_zero() {
                    continue;
                }
                let (rest, sign) = m.remove_at(pos);
                let mut coeff = v.mul_ref(c);
                if sign < 0 {
                    coeff = -coeff;
                }
                accumulate(&mut out.terms, rest, coeff);
            }
        }
        Ok(out)
    }

    /// All C(n, k) degree-k monomials on n generators, lexicographically.
    pub fn basis_of_degree(ambient: u8, degree: usize) -> Result<Vec<Monomial>, ExteriorError> {
        if degree > ambient as usize {
            return Err(ExteriorError::DegreeOutOfRange { degree, ambient });
        }
        let mut out = Vec::new();
        let mut current: Vec<u8> = (1..=degree as u8).collect();
        loop {
            out.push(Monomial(current.clone()));
            // advance to the next combination in lexicographic order
            let mut i = degree;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if current[i] < ambient - (degree - 1 - i) as u8 {
                    current[i] += 1;
                    for j in i + 1..degree {
                        current[j] = current[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in &self.terms {
            let (sign_str, mag) = if c.sign() < 0 {
                (if first { "-" } else { " - " }, -c.clone())
            } else {
                (if first { "" } else { " + " }, c.clone())
            };
            write!(f, "{sign_str}")?;
            let is_one = mag == FieldElement::from_int(1);
            let simple = mag.is_rational()
                || (mag.a.is_zero()
                    && [&mag.b, &mag.c, &mag.d]
                        .iter()
                        .filter(|v| !v.is_zero())
                        .count()
                        == 1);
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if is_one {
                write!(f, "{m}")?;
            } else if simple {
                write!(f, "{mag}*{m}")?;
            } else {
                write!(f, "({mag})*{m}")?;
            }
            first = false;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::rat;

    fn gen7(i: u8) -> Form {
        Form::generator(7, i).unwrap()
    }

    #[test]
    fn wedge_basics() {
        let e1 = gen7(1);
        let e2 = gen7(2);
        let e12 = e1.wedge(&e2).unwrap();
        assert_eq!(e12.to_string(), "e12");
        let e21 = e2.wedge(&e1).unwrap();
        assert_eq!(e21, e12.neg());
        // (e1+e2) ∧ e12 = 0
        assert!(e1.add(&e2).wedge(&e12).unwrap().is_zero());
    }

    #[test]
    fn contract_basics() {
        let e12 = gen7(1).wedge(&gen7(2)).unwrap();
        let mut v1 = vec![FieldElement::zero(); 7];
        v1[0] = FieldElement::from_int(1);
        assert_eq!(e12.contract(&v1).unwrap(), gen7(2));
        let mut v2 = vec![FieldElement::zero(); 7];
        v2[1] = FieldElement::from_int(1);
        assert_eq!(e12.contract(&v2).unwrap(), gen7(1).neg());
        // i(e1+e3) e135 = e35 - e15: e3 sits in slot two, so its term
        // carries the antiderivation sign
        let e135 = Form::from_terms(7, &[(&[1, 3, 5], FieldElement::from_int(1))]).unwrap();
        let mut v13 = vec![FieldElement::zero(); 7];
        v13[0] = FieldElement::from_int(1);
        v13[2] = FieldElement::from_int(1);
        let expected = Form::from_terms(
            7,
            &[
                (&[3, 5], FieldElement::from_int(1)),
                (&[1, 5], FieldElement::from_int(-1)),
            ],
        )
        .unwrap();
        assert_eq!(e135.contract(&v13).unwrap(), expected);
        // antiderivation law on a product: i(v)(α∧β) = i(v)α∧β + (−1)^|α| α∧i(v)β
        let e1 = gen7(1);
        let e35 = Form::from_terms(7, &[(&[3, 5], FieldElement::from_int(1))]).unwrap();
        let lhs = e1.wedge(&e35).unwrap().contract(&v13).unwrap();
        let rhs = e1
            .contract(&v13)
            .unwrap()
            .wedge(&e35)
            .unwrap()
            .add(&e1.wedge(&e35.contract(&v13).unwrap()).unwrap().neg());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn contract_twice_is_zero() {
        let phi = Form::from_terms(
            7,
            &[
                (&[1, 2, 7], FieldElement::from_int(1)),
                (&[3, 4, 7], FieldElement::from_int(2)),
                (&[1, 3, 5], FieldElement::from_rational(rat(1, 3))),
            ],
        )
        .unwrap();
        let v: Vec<FieldElement> = (0..7).map(|i| FieldElement::from_int(i - 3)).collect();
        let once = phi.contract(&v).unwrap();
        assert!(once.contract(&v).unwrap().is_zero());
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(Form::basis_of_degree(7, 0).unwrap(), vec![Monomial::unit()]);
        let b32: Vec<String> = Form::basis_of_degree(3, 2)
            .unwrap()
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(b32, vec!["e12", "e13", "e23"]);
        assert_eq!(Form::basis_of_degree(7, 3).unwrap().len(), 35);
        assert!(Form::basis_of_degree(3, 4).is_err());
    }

    #[test]
    fn top_degree_wedge_of_all_generators() {
        let mut acc = Form::unit(7);
        for i in 1..=7 {
            acc = acc.wedge(&gen7(i)).unwrap();
        }
        let top = Monomial::normalize(&[1, 2, 3, 4, 5, 6, 7]).unwrap().0;
        assert_eq!(acc.coeff(&top), FieldElement::from_int(1));
    }
}
