//! Finite-dimensional CDGAs generated in degree 1, Chevalley–Eilenberg
//! complexes of Lie algebras, diagonal involutions and algebra morphisms.
//!
//! Conventions: a structure-equation tuple like `(0,0,0,12,23,-13,…)` lists
//! the 2-forms de¹, …, deⁿ directly, and brackets are recovered through
//! dα(x,y) = −α[x,y]. With that convention the entry `12` in slot 4 and the
//! bracket [e₁,e₂] = −e₄ say the same thing.

use crate::exterior::{ExteriorError, Form, Monomial};
use crate::field::{parse_rational, FieldElement, ParseScalarError};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

/// Structure constants of a finite-dimensional Lie algebra:
/// [e_i, e_j] = Σ_k c_{ij}^k e_k for i < j.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebraData {
    dim: u8,
    brackets: BTreeMap<(u8, u8), Vec<FieldElement>>,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieAlgebraError {
    #[error("bracket pair ({0}, {1}) out of range")]
    PairOutOfRange(u8, u8),
    #[error("bracket value has wrong length")]
    ValueLength,
}

/// A Jacobi defect: [[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] ≠ 0.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiWitness {
    pub triple: (u8, u8, u8),
    pub defect: Vec<FieldElement>,
}

impl LieAlgebraData {
    /// `entries` maps pairs (i, j) with i < j to the coordinates of [e_i, e_j].
    pub fn new(
        dim: u8,
        entries: &[((u8, u8), Vec<(u8, FieldElement)>)],
    ) -> Result<Self, LieAlgebraError> {
        let mut brackets = BTreeMap::new();
        for ((i, j), value) in entries {
            if *i == 0 || *j == 0 || *i >= *j || *j > dim {
                return Err(LieAlgebraError::PairOutOfRange(*i, *j));
            }
            let mut coords = vec![FieldElement::zero(); dim as usize];
            for (k, c) in value {
                if *k == 0 || *k > dim {
                    return Err(LieAlgebraError::PairOutOfRange(*k, *k));
                }
                coords[(*k - 1) as usize] += c.clone();
            }
            if coords.iter().any(|c| !c.is_zero()) {
                brackets.insert((*i, *j), coords);
            }
        }
        Ok(LieAlgebraData { dim, brackets })
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    /// Coordinates of [e_i, e_j] for any i, j (antisymmetry built in).
    pub fn bracket_basis(&self, i: u8, j: u8) -> Vec<FieldElement> {
        let n = self.dim as usize;
        if i == j {
            return vec![FieldElement::zero(); n];
        }
        let (key, flip) = if i < j { ((i, j), false) } else { ((j, i), true) };
        match self.brackets.get(&key) {
            None => vec![FieldElement::zero(); n],
            Some(v) if flip => v.iter().map(|c| -c.clone()).collect(),
            Some(v) => v.clone(),
        }
    }

    /// Bilinear extension of the bracket to coordinate vectors.
    pub fn bracket(&self, x: &[FieldElement], y: &[FieldElement]) -> Vec<FieldElement> {
        let n = self.dim as usize;
        let mut out = vec![FieldElement::zero(); n];
        for ((i, j), value) in &self.brackets {
            let (xi, xj) = (&x[(*i - 1) as usize], &x[(*j - 1) as usize]);
            let (yi, yj) = (&y[(*i - 1) as usize], &y[(*j - 1) as usize]);
            let coeff = xi.mul_ref(yj) - xj.mul_ref(yi);
            if coeff.is_zero() {
                continue;
            }
            for (k, c) in value.iter().enumerate() {
                if !c.is_zero() {
                    out[k] += coeff.mul_ref(c);
                }
            }
        }
        out
    }

    /// Exhaustive Jacobi check over basis triples.
    pub fn check_jacobi(&self) -> Result<(), JacobiWitness> {
        let n = self.dim;
        let basis = |i: u8| {
            let mut v = vec![FieldElement::zero(); n as usize];
            v[(i - 1) as usize] = FieldElement::from_int(1);
            v
        };
        for i in 1..=n {
            for j in (i + 1)..=n {
                for k in (j + 1)..=n {
                    let (x, y, z) = (basis(i), basis(j), basis(k));
                    let mut defect = self.bracket(&self.bracket(&x, &y), &z);
                    for (slot, c) in self
                        .bracket(&self.bracket(&y, &z), &x)
                        .into_iter()
                        .enumerate()
                    {
                        defect[slot] += c;
                    }
                    for (slot, c) in self
                        .bracket(&self.bracket(&z, &x), &y)
                        .into_iter()
                        .enumerate()
                    {
                        defect[slot] += c;
                    }
                    if defect.iter().any(|c| !c.is_zero()) {
                        return Err(JacobiWitness {
                            triple: (i, j, k),
                            defect,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CdgaError {
    #[error("differential of generator {0} is not homogeneous of degree 2")]
    BadGeneratorDifferential(u8),
    #[error("exterior algebra error: {0}")]
    Exterior(#[from] ExteriorError),
    #[error("generator count {0} exceeds the supported maximum of 9")]
    TooManyGenerators(u8),
}

/// d∘d ≠ 0 evidence: the generator and the non-zero value of d(d e^g).
#[derive(Debug, Clone, PartialEq)]
pub struct DSquaredWitness {
    pub generator: u8,
    pub value: Form,
}

impl fmt::Display for DSquaredWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d(d e{}) = {}", self.generator, self.value)
    }
}

/// A CDGA generated in degree 1 with differential given on generators and
/// extended as a graded derivation.
#[derive(Clone, Debug, PartialEq)]
pub struct Cdga {
    n: u8,
    d_gen: Vec<Form>,
}

impl Cdga {
    pub fn new(n: u8, d_gen: Vec<Form>) -> Result<Self, CdgaError> {
        if n > 9 {
            return Err(CdgaError::TooManyGenerators(n));
        }
        assert_eq!(d_gen.len(), n as usize, "one differential per generator");
        for (i, form) in d_gen.iter().enumerate() {
            if form.ambient() != n {
                return Err(CdgaError::Exterior(ExteriorError::AmbientMismatch(
                    form.ambient(),
                    n,
                )));
            }
            if !form.is_zero() && form.degree() != Some(2) {
                return Err(CdgaError::BadGeneratorDifferential(i as u8 + 1));
            }
        }
        Ok(Cdga { n, d_gen })
    }

    pub fn abelian(n: u8) -> Self {
        Cdga::new(n, (0..n).map(|_| Form::zero(n)).collect()).unwrap()
    }

    pub fn generators(&self) -> u8 {
        self.n
    }

    pub fn d_generator(&self, i: u8) -> &Form {
        &self.d_gen[(i - 1) as usize]
    }

    /// The Chevalley–Eilenberg differential: de^k = −Σ_{i<j} c_{ij}^k e^i∧e^j.
    pub fn chevalley_eilenberg(lie: &LieAlgebraData) -> Result<Self, CdgaError> {
        let n = lie.dim();
        let mut d_gen = vec![Form::zero(n); n as usize];
        for i in 1..=n {
            for j in (i + 1)..=n {
                let coords = lie.bracket_basis(i, j);
                for (k, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = Form::from_terms(n, &[(&[i, j], -c.clone())])?;
                    d_gen[k] = d_gen[k].add(&term);
                }
            }
        }
        Cdga::new(n, d_gen)
    }

    /// Recovers structure constants through dα(x,y) = −α[x,y].
    pub fn to_lie_algebra(&self) -> LieAlgebraData {
        let n = self.n;
        let mut entries = Vec::new();
        for i in 1..=n {
            for j in (i + 1)..=n {
                let pair = Monomial::normalize(&[i, j]).unwrap().0;
                let mut coords = Vec::new();
                for k in 1..=n {
                    let c = self.d_gen[(k - 1) as usize].coeff(&pair);
                    if !c.is_zero() {
                        coords.push((k, -c));
                    }
                }
                if !coords.is_empty() {
                    entries.push(((i, j), coords));
                }
            }
        }
        LieAlgebraData::new(n, &entries).expect("indices from a valid cdga")
    }

    /// Graded-derivation extension of the generator differentials.
    pub fn differential(&self, form: &Form) -> Form {
        let mut out = Form::zero(self.n);
        for (m, c) in form.terms() {
            let indices = m.indices();
            for (pos, &idx) in indices.iter().enumerate() {
                let dg = &self.d_gen[(idx - 1) as usize];
                if dg.is_zero() {
                    continue;
                }
                let (prefix, _) = Monomial::normalize(&indices[..pos]).unwrap();
                let (suffix, _) = Monomial::normalize(&indices[pos + 1..]).unwrap();
                let prefix = Form::from_term(self.n, prefix, FieldElement::from_int(1)).unwrap();
                let suffix = Form::from_term(self.n, suffix, FieldElement::from_int(1)).unwrap();
                let mut piece = prefix.wedge(dg).unwrap().wedge(&suffix).unwrap();
                let mut coeff = c.clone();
                if pos % 2 == 1 {
                    coeff = -coeff;
                }
                piece = piece.scale(&coeff);
                out = out.add(&piece);
            }
        }
        out
    }

    /// Exhaustive d² = 0 check over generators (sufficient by the derivation
    /// property).
    pub fn check_d_squared(&self) -> Result<(), DSquaredWitness> {
        for i in 1..=self.n {
            let dd = self.differential(&self.d_gen[(i - 1) as usize]);
            if !dd.is_zero() {
                return Err(DSquaredWitness {
                    generator: i,
                    value: dd,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvolutionError {
    #[error("signs length {0} does not match generator count {1}")]
    SignsLength(usize, u8),
    #[error("sign entries must be +1 or -1")]
    BadSign,
    #[error("not a chain map: J(d e{generator}) != d(J e{generator})")]
    NotChainMap { generator: u8 },
}

/// A diagonal CDGA involution: generator e^k ↦ signs[k−1]·e^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Involution {
    signs: Vec<i8>,
}

impl Involution {
    /// Validates that the diagonal map commutes with the differential.
    pub fn from_signs(cdga: &Cdga, signs: &[i8]) -> Result<Self, InvolutionError> {
        if signs.len() != cdga.generators() as usize {
            return Err(InvolutionError::SignsLength(
                signs.len(),
                cdga.generators(),
            ));
        }
        if signs.iter().any(|s| *s != 1 && *s != -1) {
            return Err(InvolutionError::BadSign);
        }
        let j = Involution {
            signs: signs.to_vec(),
        };
        for g in 1..=cdga.generators() {
            let lhs = j.apply(cdga.d_generator(g));
            let mut rhs = cdga.d_generator(g).clone();
            if signs[(g - 1) as usize] < 0 {
                rhs = rhs.neg();
            }
            if lhs != rhs {
                return Err(InvolutionError::NotChainMap { generator: g });
            }
        }
        Ok(j)
    }

    pub fn identity(n: u8) -> Self {
        Involution {
            signs: vec![1; n as usize],
        }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Sign of the involution on a monomial: the product of generator signs.
    pub fn monomial_sign(&self, m: &Monomial) -> i8 {
        let mut sign = 1i8;
        for &i in m.indices() {
            sign *= self.signs[(i - 1) as usize];
        }
        sign
    }

    pub fn apply(&self, form: &Form) -> Form {
        let mut out = Form::zero(form.ambient());
        for (m, c) in form.terms() {
            let coeff = if self.monomial_sign(m) < 0 {
                -c.clone()
            } else {
                c.clone()
            };
            out = out.add(&Form::from_term(form.ambient(), m.clone(), coeff).unwrap());
        }
        out
    }

    /// Monomials of degree k in the ±1 eigenspace.
    pub fn eigen_monomials(&self, ambient: u8, degree: usize, eigenvalue: i8) -> Vec<Monomial> {
        Form::basis_of_degree(ambient, degree)
            .unwrap()
            .into_iter()
            .filter(|m| self.monomial_sign(m) == eigenvalue)
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.signs.iter().all(|&s| s == 1)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainMapWitness {
    pub generator: u8,
    pub mapped_d: Form,
    pub d_mapped: Form,
}

/// A degree-0 algebra morphism between degree-1-generated CDGAs, given by the
/// images of the source generators (degree-1 forms in the target) and
/// extended multiplicatively.
#[derive(Clone, Debug, PartialEq)]
pub struct CdgaMorphism {
    source_n: u8,
    target_n: u8,
    images: Vec<Form>,
}

impl CdgaMorphism {
    pub fn new(source_n: u8, target_n: u8, images: Vec<Form>) -> Result<Self, CdgaError> {
        assert_eq!(images.len(), source_n as usize);
        for (i, im) in images.iter().enumerate() {
            if im.ambient() != target_n {
                return Err(CdgaError::Exterior(ExteriorError::AmbientMismatch(
                    im.ambient(),
                    target_n,
                )));
            }
            if !im.is_zero() && im.degree() != Some(1) {
                return Err(CdgaError::BadGeneratorDifferential(i as u8 + 1));
            }
        }
        Ok(CdgaMorphism {
            source_n,
            target_n,
            images,
        })
    }

    pub fn apply(&self, form: &Form) -> Form {
        let mut out = Form::zero(self.target_n);
        for (m, c) in form.terms() {
            let mut piece = Form::unit(self.target_n);
            for &i in m.indices() {
                piece = piece.wedge(&self.images[(i - 1) as usize]).unwrap();
                if piece.is_zero() {
                    break;
                }
            }
            out = out.add(&piece.scale(c));
        }
        out
    }

    /// φ∘d = d∘φ on every generator.
    pub fn check_chain_map(&self, source: &Cdga, target: &Cdga) -> Result<(), ChainMapWitness> {
        for g in 1..=self.source_n {
            let mapped_d = self.apply(source.d_generator(g));
            let d_mapped = target.differential(&self.images[(g - 1) as usize]);
            if mapped_d != d_mapped {
                return Err(ChainMapWitness {
                    generator: g,
                    mapped_d,
                    d_mapped,
                });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NotationError {
    #[error("syntax error at byte {0}")]
    Syntax(usize),
    #[error("{0}")]
    Scalar(#[from] ParseScalarError),
    #[error("index {index} out of range 1..={ambient} at byte {at}")]
    IndexOutOfRange { index: u8, ambient: u8, at: usize },
    #[error("repeated index in pair at byte {0}")]
    RepeatedIndex(usize),
    #[error("expected {expected} at byte {at}")]
    Expected { expected: &'static str, at: usize },
    #[error("dimension {0} exceeds the supported maximum of 9")]
    TooLarge(usize),
}

/// Parses structure equations in compact tuple notation, e.g.
/// `"(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))"`.
///
/// Entry i is de^i: `0`, or a signed sum of terms `q(jk)` / `q*(jk)` / `jk`,
/// each meaning q·e^j∧e^k. Whitespace is ignored. The number of entries sets
/// the generator count (at most 9, so two-character pairs stay unambiguous).
pub fn parse_salamon(text: &str) -> Result<Vec<Form>, NotationError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    ws(bytes, &mut pos);
    expect(bytes, &mut pos, b'(', "opening parenthesis")?;
    // split on top-level commas first so the entry count (= dimension) is known
    let mut entries: Vec<(usize, String)> = Vec::new();
    let mut depth = 0usize;
    let mut start = pos;
    let mut end = None;
    for i in pos..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' if depth > 0 => depth -= 1,
            b')' => {
                entries.push((start, text[start..i].to_string()));
                end = Some(i);
                break;
            }
            b',' if depth == 0 => {
                entries.push((start, text[start..i].to_string()));
                start = i + 1;
            }
            _ => {}
        }
    }
    let end = end.ok_or(NotationError::Expected {
        expected: "closing parenthesis",
        at: bytes.len(),
    })?;
    pos = end + 1;
    ws(bytes, &mut pos);
    if pos != bytes.len() {
        return Err(NotationError::Syntax(pos));
    }
    if entries.len() > 9 {
        return Err(NotationError::TooLarge(entries.len()));
    }
    let n = entries.len() as u8;
    let mut out = Vec::with_capacity(entries.len());
    for (offset, entry) in entries {
        out.push(parse_salamon_entry(&entry, offset, n)?);
    }
    Ok(out)
}

fn parse_salamon_entry(entry: &str, offset: usize, n: u8) -> Result<Form, NotationError> {
    let bytes = entry.as_bytes();
    let mut pos = 0usize;
    let mut out = Form::zero(n);
    ws(bytes, &mut pos);
    if pos < bytes.len() && bytes[pos] == b'0' {
        let mut after = pos + 1;
        ws(bytes, &mut after);
        if after == bytes.len() {
            return Ok(out);
        }
    }
    let mut first = true;
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                negative = true;
                pos += 1;
            }
            _ if !first => return Err(NotationError::Syntax(offset + pos)),
            _ => {}
        }
        ws(bytes, &mut pos);
        // optional rational coefficient
        let coeff = if pos < bytes.len() && bytes[pos].is_ascii_digit() {
            // lookahead: a bare two-digit pair like "12" has no '(' or '*'
            // after it and exactly two digits; a coefficient is followed by
            // '(' or '*' or is part of "q(jk)".
            let dig_start = pos;
            let mut dig_end = pos;
            while dig_end < bytes.len() && (bytes[dig_end].is_ascii_digit() || bytes[dig_end] == b'/') {
                dig_end += 1;
            }
            let mut after = dig_end;
            ws(bytes, &mut after);
            let followed_by_pair =
                after < bytes.len() && (bytes[after] == b'(' || bytes[after] == b'*');
            if !followed_by_pair && dig_end - dig_start == 2 && !entry[dig_start..dig_end].contains('/') {
                None // it is the pair itself
            } else {
                let q = parse_rational(bytes, &mut pos).map_err(|e| shift_scalar_err(e, offset))?;
                ws(bytes, &mut pos);
                if pos < bytes.len() && bytes[pos] == b'*' {
                    pos += 1;
                    ws(bytes, &mut pos);
                }
                Some(q)
            }
        } else {
            None
        };
        // the pair, optionally parenthesized
        let parenthesized = pos < bytes.len() && bytes[pos] == b'(';
        if parenthesized {
            pos += 1;
            ws(bytes, &mut pos);
        }
        let pair_at = offset + pos;
        if pos + 1 >= bytes.len() || !bytes[pos].is_ascii_digit() || !bytes[pos + 1].is_ascii_digit()
        {
            return Err(NotationError::Expected {
                expected: "two-digit index pair",
                at: pair_at,
            });
        }
        let j = bytes[pos] - b'0';
        let k = bytes[pos + 1] - b'0';
        pos += 2;
        if parenthesized {
            ws(bytes, &mut pos);
            if pos >= bytes.len() || bytes[pos] != b')' {
                return Err(NotationError::Expected {
                    expected: "closing parenthesis",
                    at: offset + pos,
                });
            }
            pos += 1;
        }
        if j == 0 || j > n {
            return Err(NotationError::IndexOutOfRange {
                index: j,
                ambient: n,
                at: pair_at,
            });
        }
        if k == 0 || k > n {
            return Err(NotationError::IndexOutOfRange {
                index: k,
                ambient: n,
                at: pair_at,
            });
        }
        if j == k {
            return Err(NotationError::RepeatedIndex(pair_at));
        }
        let mut c = coeff
            .map(FieldElement::from_rational)
            .unwrap_or_else(|| FieldElement::from_int(1));
        if negative {
            c = -c;
        }
        out = out.add(&Form::from_terms(n, &[(&[j, k], c)]).unwrap());
        ws(bytes, &mut pos);
        first = false;
    }
    if first {
        return Err(NotationError::Expected {
            expected: "entry",
            at: offset,
        });
    }
    Ok(out)
}

fn shift_scalar_err(e: ParseScalarError, offset: usize) -> NotationError {
    match e {
        ParseScalarError::Empty => NotationError::Scalar(ParseScalarError::Empty),
        ParseScalarError::Unexpected(p) => NotationError::Scalar(ParseScalarError::Unexpected(p + offset)),
        ParseScalarError::BadRational(p) => {
            NotationError::Scalar(ParseScalarError::BadRational(p + offset))
        }
    }
}

/// Parses the textual form syntax: signed sums of terms like `2*e134`,
/// `r3*e25`, `(1/2 + r6)*e25`, `e3`, or scalar terms for degree 0.
pub fn parse_form(ambient: u8, text: &str) -> Result<Form, NotationError> {
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let mut out = Form::zero(ambient);
    let mut any = false;
    ws(bytes, &mut pos);
    if pos < bytes.len() && bytes[pos] == b'0' && pos + 1 == bytes.len() {
        return Ok(out);
    }
    while pos < bytes.len() {
        let mut negative = false;
        match bytes[pos] {
            b'+' => pos += 1,
            b'-' => {
                negative = true;
                pos += 1;
            }
            _ if any => return Err(NotationError::Syntax(pos)),
            _ => {}
        }
        ws(bytes, &mut pos);
        let mut coeff = FieldElement::from_int(1);
        let mut have_coeff = false;
        // coefficient: parenthesized scalar, radical(s), or rational
        loop {
            if pos < bytes.len() && bytes[pos] == b'(' {
                let close = find_close(bytes, pos).ok_or(NotationError::Expected {
                    expected: "closing parenthesis",
                    at: pos,
                })?;
                let inner: FieldElement = text[pos + 1..close]
                    .parse()
                    .map_err(|e| shift_scalar_err(e, pos + 1))?;
                coeff = coeff.mul_ref(&inner);
                pos = close + 1;
                have_coeff = true;
            } else if pos + 1 < bytes.len()
                && bytes[pos] == b'r'
                && bytes[pos + 1].is_ascii_digit()
            {
                let radical = match bytes[pos + 1] {
                    b'2' => FieldElement::sqrt2(),
                    b'3' => FieldElement::sqrt3(),
                    b'6' => FieldElement::sqrt6(),
                    _ => return Err(NotationError::Syntax(pos + 1)),
                };
                coeff = coeff.mul_ref(&radical);
                pos += 2;
                have_coeff = true;
            } else if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                let q = parse_rational(bytes, &mut pos)?;
                coeff = coeff.scale(&q);
                have_coeff = true;
            } else {
                break;
            }
            ws(bytes, &mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                let mut after = pos + 1;
                ws(bytes, &mut after);
                // '*' may precede either another scalar factor or the monomial
                if after < bytes.len() && bytes[after] == b'e' {
                    pos = after;
                    break;
                }
                pos = after;
                continue;
            }
            break;
        }
        // optional monomial
        if pos < bytes.len() && bytes[pos] == b'e' {
            let mono_at = pos;
            pos += 1;
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(NotationError::Expected {
                    expected: "generator indices",
                    at: mono_at,
                });
            }
            let indices: Vec<u8> = bytes[start..pos].iter().map(|b| b - b'0').collect();
            for &i in &indices {
                if i == 0 || i > ambient {
                    return Err(NotationError::IndexOutOfRange {
                        index: i,
                        ambient,
                        at: mono_at,
                    });
                }
            }
            let (mono, sign) =
                Monomial::normalize(&indices).ok_or(NotationError::RepeatedIndex(mono_at))?;
            if sign < 0 {
                coeff = -coeff;
            }
            if negative {
                coeff = -coeff;
            }
            out = out.add(&Form::from_term(ambient, mono, coeff).unwrap());
        } else {
            if !have_coeff {
                return Err(NotationError::Expected {
                    expected: "term",
                    at: pos,
                });
            }
            if negative {
                coeff = -coeff;
            }
            out = out.add(&Form::from_term(ambient, Monomial::unit(), coeff).unwrap());
        }
        any = true;
        ws(bytes, &mut pos);
    }
    if !any {
        return Err(NotationError::Expected {
            expected: "form",
            at: 0,
        });
    }
    Ok(out)
}

/// Canonical compact rendering of generator differentials; the inverse of
/// [`parse_salamon`] on its image. Entries are `0` or signed sums `q(jk)`,
/// with the coefficient omitted when it is ±1 (then the pair is written
/// bare). Returns `None` when a coefficient is irrational or a term is not
/// a 2-form monomial.
pub fn format_salamon(differentials: &[Form]) -> Option<String> {
    let mut entries = Vec::with_capacity(differentials.len());
    for d in differentials {
        if d.is_zero() {
            entries.push("0".to_string());
            continue;
        }
        let mut entry = String::new();
        for (m, c) in d.terms() {
            if m.degree() != 2 {
                return None;
            }
            let q = c.as_rational()?;
            let negative = q < num_rational::BigRational::from_integer(0.into());
            let mag = if negative { -q.clone() } else { q.clone() };
            if entry.is_empty() {
                if negative {
                    entry.push('-');
                }
            } else {
                entry.push(if negative { '-' } else { '+' });
            }
            let pair: String = m.indices().iter().map(|i| i.to_string()).collect();
            if mag == num_rational::BigRational::from_integer(1.into()) {
                entry.push_str(&pair);
            } else {
                entry.push_str(&format!("{mag}({pair})"));
            }
        }
        entries.push(entry);
    }
    Some(format!("({})", entries.join(",")))
}

fn find_close(bytes: &[u8], open: usize) -> Option<usize> {
    let mut depth = 0usize;
    for i in open..bytes.len() {
        match bytes[i] {
            b'(' => depth += 1,
            b')' => {
                depth -= 1;
                if depth == 0 {
                    return Some(i);
                }
            }
            _ => {}
        }
    }
    None
}

fn ws(bytes: &[u8], pos: &mut usize) {
    while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
        *pos += 1;
    }
}

fn expect(
    bytes: &[u8],
    pos: &mut usize,
    byte: u8,
    expected: &'static str,
) -> Result<(), NotationError> {
    if *pos < bytes.len() && bytes[*pos] == byte {
        *pos += 1;
        Ok(())
    } else {
        Err(NotationError::Expected { expected, at: *pos })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn salamon_structure_equations() {
        let d = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))").unwrap();
        assert_eq!(d.len(), 7);
        assert!(d[0].is_zero() && d[1].is_zero() && d[2].is_zero());
        assert_eq!(d[3], parse_form(7, "e12").unwrap());
        assert_eq!(d[4], parse_form(7, "e23").unwrap());
        assert_eq!(d[5], parse_form(7, "-e13").unwrap());
        assert_eq!(
            d[6],
            parse_form(7, "-2*e16 + 2*e25 + 2*e26 - 2*e34").unwrap()
        );
    }

    #[test]
    fn salamon_variants_and_errors() {
        assert_eq!(parse_salamon("(0, 0, 0)").unwrap().len(), 3);
        let d = parse_salamon("(0,0,12)").unwrap();
        assert_eq!(d[2], parse_form(3, "e12").unwrap());
        // "12" == "(12)" == "1*(12)"
        let variants = ["(0,0,12)", "(0,0,(12))", "(0,0,1*(12))", "(0,0,1(12))"];
        let forms: Vec<_> = variants.iter().map(|v| parse_salamon(v).unwrap()).collect();
        assert!(forms.iter().all(|f| f == &forms[0]));

        assert!(matches!(
            parse_salamon("(0,0,14)"),
            Err(NotationError::IndexOutOfRange { index: 4, .. })
        ));
        assert!(matches!(
            parse_salamon("(0,0,11)"),
            Err(NotationError::RepeatedIndex(_))
        ));
        assert!(parse_salamon("(0,0,12").is_err());
    }

    #[test]
    fn salamon_round_trip() {
        // the bundled string is already canonical
        let s = "(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))";
        let d = parse_salamon(s).unwrap();
        assert_eq!(format_salamon(&d).as_deref(), Some(s));
        // whitespace and redundant parentheses normalize away
        let d2 = parse_salamon("(0, 0, 0, (12), 1*(23), -13, -2 (16)+ 2 (25) + 2(26) - 2(34))")
            .unwrap();
        assert_eq!(d2, d);
        assert_eq!(format_salamon(&d2).as_deref(), Some(s));
        // fractional coefficients survive the round trip
        let d3 = parse_salamon("(0,0,1/2(12)-3(13))").unwrap();
        let printed = format_salamon(&d3).unwrap();
        assert_eq!(parse_salamon(&printed).unwrap(), d3);
    }

    #[test]
    fn chevalley_eilenberg_signs() {
        // [e1,e2] = -e4 gives de^4 = e12
        let lie = LieAlgebraData::new(
            7,
            &[((1, 2), vec![(4, FieldElement::from_int(-1))])],
        )
        .unwrap();
        let cdga = Cdga::chevalley_eilenberg(&lie).unwrap();
        assert_eq!(*cdga.d_generator(4), parse_form(7, "e12").unwrap());

        // Heisenberg [e1,e2] = e3 gives de^3 = -e12
        let h = LieAlgebraData::new(3, &[((1, 2), vec![(3, FieldElement::from_int(1))])]).unwrap();
        let hc = Cdga::chevalley_eilenberg(&h).unwrap();
        assert_eq!(*hc.d_generator(3), parse_form(3, "-e12").unwrap());
        assert!(hc.check_d_squared().is_ok());

        // abelian: d = 0
        let a = Cdga::abelian(5);
        assert!((1..=5).all(|i| a.d_generator(i).is_zero()));
    }

    #[test]
    fn d_squared_witness() {
        // de3 = e12, de2 = e23: d(de3) = -e1∧e23 = -e123 != 0
        let d = vec![
            Form::zero(3),
            parse_form(3, "e23").unwrap(),
            parse_form(3, "e12").unwrap(),
        ];
        let cdga = Cdga::new(3, d).unwrap();
        let err = cdga.check_d_squared().unwrap_err();
        assert_eq!(err.generator, 3);
        assert_eq!(err.value, parse_form(3, "-e123").unwrap());
    }

    #[test]
    fn jacobi_matches_d_squared() {
        let good = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))").unwrap();
        let cdga = Cdga::new(7, good).unwrap();
        assert!(cdga.check_d_squared().is_ok());
        assert!(cdga.to_lie_algebra().check_jacobi().is_ok());

        // corrupt one coefficient: both checks must fail
        let bad = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)+2(34))").unwrap();
        let bad_cdga = Cdga::new(7, bad).unwrap();
        assert!(bad_cdga.check_d_squared().is_err());
        assert!(bad_cdga.to_lie_algebra().check_jacobi().is_err());
    }

    #[test]
    fn involutions() {
        let d = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))").unwrap();
        let cdga = Cdga::new(7, d).unwrap();
        let j = Involution::from_signs(&cdga, &[-1, -1, 1, 1, -1, -1, 1]).unwrap();
        assert_eq!(j.monomial_sign(&Monomial::normalize(&[1, 2]).unwrap().0), 1);
        assert_eq!(j.monomial_sign(&Monomial::normalize(&[1, 3]).unwrap().0), -1);

        assert!(Involution::from_signs(&cdga, &[1; 7]).is_ok());
        let err = Involution::from_signs(&cdga, &[-1, 1, 1, 1, 1, 1, 1]).unwrap_err();
        assert_eq!(err, InvolutionError::NotChainMap { generator: 4 });
    }

    #[test]
    fn eigen_monomial_counts() {
        let d = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))").unwrap();
        let cdga = Cdga::new(7, d).unwrap();
        let j = Involution::from_signs(&cdga, &[-1, -1, 1, 1, -1, -1, 1]).unwrap();
        let fixed1: Vec<String> = j
            .eigen_monomials(7, 1, 1)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(fixed1, vec!["e3", "e4", "e7"]);
        assert_eq!(j.eigen_monomials(7, 2, 1).len(), 9);
        // eigenspace dimensions sum to the full binomial in every degree
        for k in 0..=7 {
            let plus = j.eigen_monomials(7, k, 1).len();
            let minus = j.eigen_monomials(7, k, -1).len();
            assert_eq!(plus + minus, Form::basis_of_degree(7, k).unwrap().len());
        }
    }

    #[test]
    fn form_parser() {
        let f = parse_form(7, "2*e134 + r3*e25 - e7").unwrap();
        assert_eq!(f.coeff(&Monomial::normalize(&[1, 3, 4]).unwrap().0), FieldElement::from_int(2));
        assert_eq!(f.coeff(&Monomial::normalize(&[2, 5]).unwrap().0), FieldElement::sqrt3());
        assert_eq!(f.coeff(&Monomial::normalize(&[7]).unwrap().0), FieldElement::from_int(-1));
        // permutation sign is normalized at parse time
        assert_eq!(parse_form(7, "e21").unwrap(), parse_form(7, "-e12").unwrap());
        // parenthesized field coefficients
        let g = parse_form(7, "(1/2 + r6)*e25").unwrap();
        let c: FieldElement = "1/2 + r6".parse().unwrap();
        assert_eq!(g.coeff(&Monomial::normalize(&[2, 5]).unwrap().0), c);
        // round-trip through Display
        for s in ["0", "e12 - e34", "2*e134 + r3*e25 - e7", "(1/2 + r6)*e25"] {
            let f = parse_form(7, s).unwrap();
            assert_eq!(parse_form(7, &f.to_string()).unwrap(), f);
        }
        assert!(parse_form(3, "e14").is_err());
        assert!(parse_form(7, "e11").is_err());
    }
}
