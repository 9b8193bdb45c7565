//! Exact arithmetic in a 3-step simply connected nilpotent Lie group in
//! exponential coordinates of the first kind: the group product is the
//! degree-3 truncation of the Baker–Campbell–Hausdorff series
//!
//! ```text
//! x*y = x + y + ½[x,y] + 1/12([x,[x,y]] − [y,[x,y]]),
//! ```
//!
//! computed from the Lie brackets. The brackets are recovered from
//! Chevalley–Eilenberg structure constants and rescaled onto an integral
//! basis, so the integer lattice Γ = Z-span of the basis is a subgroup.

use crate::cdga::LieAlgebraData;
use crate::field::rat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum NilGroupError {
    #[error("structure constants are not rational")]
    IrrationalStructureConstants,
    #[error("scales length {0} does not match dimension {1}")]
    ScalesLength(usize, u8),
    #[error("algebra is not 3-step nilpotent: a triple bracket survives at ({0}, {1}, {2}, {3})")]
    NotThreeStep(usize, usize, usize, usize),
    #[error("brackets do not raise the basis index; reduction is unsupported")]
    NotTriangular,
}

/// A group element in exponential coordinates over the scaled basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GroupElement(pub Vec<BigRational>);

impl GroupElement {
    pub fn zero(dim: usize) -> Self {
        GroupElement(vec![BigRational::zero(); dim])
    }

    pub fn basis(dim: usize, index: usize, coeff: BigRational) -> Self {
        let mut v = vec![BigRational::zero(); dim];
        v[index - 1] = coeff;
        GroupElement(v)
    }

    pub fn from_rationals(coords: Vec<BigRational>) -> Self {
        GroupElement(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        GroupElement(coords.iter().map(|&c| rat(c, 1)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(BigRational::is_zero)
    }

    /// Integer coordinates, when all coordinates are integers.
    pub fn to_lattice(&self) -> Option<Vec<BigInt>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Scalars the BCH kernel can run over: exact rationals for group elements,
/// polynomials for the symbolic closure certificate.
pub trait BchScalar: Clone {
    fn zero_value() -> Self;
    fn is_zero_value(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
}

impl BchScalar for BigRational {
    fn zero_value() -> Self {
        <BigRational as Zero>::zero()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
}

/// Multivariate polynomial with rational coefficients, used for the symbolic
/// lattice-closure certificate. Keys are exponent vectors.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u8>, BigRational>,
}

impl Poly {
    pub fn variable(nvars: usize, index: usize) -> Self {
        let mut exps = vec![0u8; nvars];
        exps[index] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(exps, BigRational::one());
        Poly { terms }
    }
}

impl BchScalar for Poly {
    fn zero_value() -> Self {
        Poly::default()
    }
    fn is_zero_value(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        out.terms.retain(|_, c| !Zero::is_zero(c));
        out
    }
    fn sub(&self, other: &Self) -> Self {
        let mut negated = other.clone();
        for c in negated.terms.values_mut() {
            *c = -c.clone();
        }
        self.add(&negated)
    }
    fn mul(&self, other: &Self) -> Self {
        let mut out = Poly::default();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<u8> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                let entry = out.terms.entry(exps).or_insert_with(BigRational::zero);
                *entry += ca * cb;
            }
        }
        out.terms.retain(|_, c| !Zero::is_zero(c));
        out
    }
    fn scale(&self, q: &BigRational) -> Self {
        if Zero::is_zero(q) {
            return Poly::default();
        }
        Poly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }
}

/// The group: brackets of the scaled basis, [u_i, u_j] = Σ_k b_{ij}^k u_k.
#[derive(Clone, Debug)]
pub struct NilGroup {
    dim: usize,
    brackets: BTreeMap<(usize, usize), Vec<BigRational>>,
}

impl NilGroup {
    /// Builds the group from Chevalley–Eilenberg structure constants and a
    /// diagonal rescaling u_i = scales[i]·e_i:
    /// [u_i, u_j] = Σ_k (s_i s_j / s_k) c_{ij}^k u_k.
    pub fn from_lie_algebra(
        lie: &LieAlgebraData,
        scales: &[BigRational],
    ) -> Result<Self, NilGroupError> {
        let dim = lie.dim() as usize;
        if scales.len() != dim {
            return Err(NilGroupError::ScalesLength(scales.len(), lie.dim()));
        }
        let mut brackets = BTreeMap::new();
        for i in 1..=dim {
            for j in (i + 1)..=dim {
                let coords = lie.bracket_basis(i as u8, j as u8);
                let mut scaled = vec![BigRational::zero(); dim];
                let mut any = false;
                for (k, c) in coords.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let q = c
                        .as_rational()
                        .ok_or(NilGroupError::IrrationalStructureConstants)?;
                    scaled[k] = q * &scales[i - 1] * &scales[j - 1] / &scales[k];
                    any = true;
                }
                if any {
                    brackets.insert((i, j), scaled);
                }
            }
        }
        let group = NilGroup { dim, brackets };
        group.check_three_step()?;
        Ok(group)
    }

    fn check_three_step(&self) -> Result<(), NilGroupError> {
        // [u_l, [u_k, [u_i, u_j]]] must vanish for all basis combinations
        for (&(i, j), inner) in &self.brackets {
            for k in 1..=self.dim {
                let kk = self.bracket_generic(&unit(self.dim, k), inner);
                for l in 1..=self.dim {
                    let lll = self.bracket_generic(&unit(self.dim, l), &kk);
                    if lll.iter().any(|c| !Zero::is_zero(c)) {
                        return Err(NilGroupError::NotThreeStep(l, k, i, j));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether every bracket value lives strictly above both input indices;
    /// this is what makes coordinate peeling work.
    pub fn is_triangular(&self) -> bool {
        self.brackets.iter().all(|(&(i, j), value)| {
            value
                .iter()
                .enumerate()
                .all(|(k, c)| Zero::is_zero(c) || k + 1 > i.max(j))
        })
    }

    /// Bilinear bracket over any scalar type.
    pub fn bracket_generic<T: BchScalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero_value(); self.dim];
        for (&(i, j), value) in &self.brackets {
            let coeff = x[i - 1].mul(&y[j - 1]).sub(&x[j - 1].mul(&y[i - 1]));
            if coeff.is_zero_value() {
                continue;
            }
            for (k, c) in value.iter().enumerate() {
                if !Zero::is_zero(c) {
                    out[k] = out[k].add(&coeff.scale(c));
                }
            }
        }
        out
    }

    /// The 3-step truncated BCH product over any scalar type.
    pub fn bch_generic<T: BchScalar>(&self, x: &[T], y: &[T]) -> Vec<T> {
        let half = rat(1, 2);
        let twelfth = rat(1, 12);
        let xy = self.bracket_generic(x, y);
        let xxy = self.bracket_generic(x, &xy);
        let yxy = self.bracket_generic(y, &xy);
        (0..self.dim)
            .map(|k| {
                x[k].add(&y[k])
                    .add(&xy[k].scale(&half))
                    .add(&xxy[k].sub(&yxy[k]).scale(&twelfth))
            })
            .collect()
    }

    /// The group product.
    pub fn bch_product(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement(self.bch_generic(&x.0, &y.0))
    }

    /// In exponential coordinates the inverse is the negation: every bracket
    /// of x with itself vanishes, so x * (−x) telescopes to 0.
    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        GroupElement(x.0.iter().map(|c| -c.clone()).collect())
    }

    /// The group commutator x y x⁻¹ y⁻¹.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.bch_product(x, y);
        let xyx = self.bch_product(&xy, &self.inverse(x));
        self.bch_product(&xyx, &self.inverse(y))
    }

    /// Group commutators of all basis pairs i < j, including zero ones.
    pub fn commutator_table(&self) -> Vec<(usize, usize, GroupElement)> {
        let mut out = Vec::new();
        for i in 1..=self.dim {
            for j in (i + 1)..=self.dim {
                let x = GroupElement::basis(self.dim, i, BigRational::one());
                let y = GroupElement::basis(self.dim, j, BigRational::one());
                out.push((i, j, self.commutator(&x, &y)));
            }
        }
        out
    }

    /// Writes x = γ * d with γ in the integer lattice and every coordinate of
    /// d in [0, 1), by peeling integer parts in basis order. Left-multiplying
    /// by −⌊λ_i⌋u_i only perturbs later coordinates because brackets raise
    /// the index.
    pub fn reduce_to_fundamental_domain(
        &self,
        x: &GroupElement,
    ) -> Result<(GroupElement, GroupElement), NilGroupError> {
        if !self.is_triangular() {
            return Err(NilGroupError::NotTriangular);
        }
        let mut d = x.clone();
        let mut gamma = GroupElement::zero(self.dim);
        for i in 1..=self.dim {
            let floor = d.0[i - 1].floor();
            if !Zero::is_zero(&floor) {
                let step = GroupElement::basis(self.dim, i, -floor.clone());
                d = self.bch_product(&step, &d);
                // the peeled factors multiply back in source order:
                // x = (n₁u₁)·(n₂u₂)·…·d
                gamma = self.bch_product(&gamma, &GroupElement::basis(self.dim, i, floor));
            }
            debug_assert!(
                !d.0[i - 1].is_negative() && d.0[i - 1] < BigRational::one(),
                "coordinate {i} not reduced"
            );
        }
        debug_assert_eq!(self.bch_product(&gamma, &d), *x);
        Ok((gamma, d))
    }

    /// Coordinate sign flips; an automorphism when the sign pattern preserves
    /// the brackets (verified by the homomorphism property tests).
    pub fn apply_signs(&self, x: &GroupElement, signs: &[i8]) -> GroupElement {
        GroupElement(
            x.0.iter()
                .zip(signs)
                .map(|(c, &s)| if s < 0 { -c.clone() } else { c.clone() })
                .collect(),
        )
    }

    /// Decides whether γ * x = j(x) has a lattice solution with coordinates
    /// bounded by `box_radius`. The equation has the single group solution
    /// γ = j(x) * x⁻¹, so the exhaustive box search reduces to an
    /// integrality-plus-bound check on that element.
    ///
    /// For x in the fundamental domain the coordinates of j(x)·x⁻¹ are
    /// bounded by 4 (the additive parts contribute at most 2 and the
    /// bilinear and cubic corrections at most 2 more on the unit box), so
    /// the default radius 8 never cuts off a genuine witness.
    pub fn isotropy_test(
        &self,
        x: &GroupElement,
        signs: &[i8],
        box_radius: i64,
    ) -> Option<Vec<BigInt>> {
        let jx = self.apply_signs(x, signs);
        let gamma = self.bch_product(&jx, &self.inverse(x));
        let lattice = gamma.to_lattice()?;
        let bound = BigInt::from(box_radius);
        if lattice.iter().all(|c| c.abs() <= bound) {
            Some(lattice)
        } else {
            None
        }
    }

    /// Literal exhaustive search over integer γ with ‖γ‖∞ ≤ box_radius;
    /// exponential in the dimension, kept as an independent cross-check of
    /// [`Self::isotropy_test`] on tiny boxes.
    pub fn isotropy_search(
        &self,
        x: &GroupElement,
        signs: &[i8],
        box_radius: i64,
    ) -> Option<Vec<BigInt>> {
        let jx = self.apply_signs(x, signs);
        let mut gamma = vec![-box_radius; self.dim];
        loop {
            let candidate = GroupElement::from_ints(&gamma);
            if self.bch_product(&candidate, x) == jx {
                return Some(gamma.iter().map(|&c| BigInt::from(c)).collect());
            }
            // odometer increment
            let mut i = 0;
            loop {
                if i == self.dim {
                    return None;
                }
                if gamma[i] < box_radius {
                    gamma[i] += 1;
                    break;
                }
                gamma[i] = -box_radius;
                i += 1;
            }
        }
    }

    /// Checks that random integer-coordinate pairs multiply to integer
    /// coordinates. Returns the first witness pair on failure.
    pub fn lattice_closure_check(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<(), Box<(GroupElement, GroupElement, usize)>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..trials {
            let x = GroupElement(
                (0..self.dim)
                    .map(|_| rat(rng.random_range(-9..=9), 1))
                    .collect(),
            );
            let y = GroupElement(
                (0..self.dim)
                    .map(|_| rat(rng.random_range(-9..=9), 1))
                    .collect(),
            );
            let z = self.bch_product(&x, &y);
            if let Some(k) = z.0.iter().position(|c| !c.is_integer()) {
                return Err(Box::new((x, y, k + 1)));
            }
        }
        Ok(())
    }

    /// Verifies γ * d = x and d ∈ [0,1)ⁿ for random rational points.
    pub fn reduction_identity_check(
        &self,
        trials: usize,
        seed: u64,
    ) -> Result<(), Box<GroupElement>> {
        for x in random_rational_elements(self.dim, trials, seed) {
            let Ok((gamma, d)) = self.reduce_to_fundamental_domain(&x) else {
                return Err(Box::new(x));
            };
            let in_domain = d
                .0
                .iter()
                .all(|c| !c.is_negative() && *c < BigRational::one());
            if !in_domain || self.bch_product(&gamma, &d) != x || gamma.to_lattice().is_none() {
                return Err(Box::new(x));
            }
        }
        Ok(())
    }

    /// Coordinate polynomials of x*y in the variables λ₁…λ_n, μ₁…μ_n.
    pub fn product_polynomials(&self) -> Vec<Poly> {
        let nvars = 2 * self.dim;
        let x: Vec<Poly> = (0..self.dim).map(|i| Poly::variable(nvars, i)).collect();
        let y: Vec<Poly> = (0..self.dim)
            .map(|i| Poly::variable(nvars, self.dim + i))
            .collect();
        self.bch_generic(&x, &y)
    }

    /// Symbolic certificate of lattice closure: every coefficient of every
    /// coordinate polynomial of x*y is an integer, so integer inputs give
    /// integer outputs. Returns the first non-integral coefficient otherwise.
    pub fn symbolic_integrality_check(&self) -> Result<(), (usize, Vec<u8>, BigRational)> {
        for (k, poly) in self.product_polynomials().iter().enumerate() {
            for (exps, coeff) in &poly.terms {
                if !coeff.is_integer() {
                    return Err((k + 1, exps.clone(), coeff.clone()));
                }
            }
        }
        Ok(())
    }
}

fn unit(dim: usize, index: usize) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dim];
    v[index - 1] = BigRational::one();
    v
}

/// Deterministic stream of random rational-coordinate elements with small
/// numerators and denominators, for seeded property checks.
pub fn random_rational_elements(dim: usize, count: usize, seed: u64) -> Vec<GroupElement> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            GroupElement(
                (0..dim)
                    .map(|_| rat(rng.random_range(-24..=24), rng.random_range(1..=6)))
                    .collect(),
            )
        })
        .collect()
}

/// Result of the fixed-locus enumeration for a sign involution.
#[derive(Clone, Debug)]
pub struct IsotropyEnumeration {
    /// The half-integer representatives on the flipped axes, each with its
    /// lattice witness.
    pub components: Vec<(GroupElement, Vec<BigInt>)>,
    /// Sampled points of the fixed subgroup composed into each
    /// representative all passed.
    pub fixed_subgroup_samples_ok: bool,
    /// Number of grid points tested off the half-integer set.
    pub grid_points_tested: usize,
    /// All off-set grid points failed the isotropy test.
    pub grid_all_fail: bool,
}

impl IsotropyEnumeration {
    pub fn all_ok(&self, expected_components: usize) -> bool {
        self.components.len() == expected_components
            && self.fixed_subgroup_samples_ok
            && self.grid_all_fail
    }
}

impl NilGroup {
    /// Enumerates the candidate isotropy representatives ε ∈ {0, ½} on the
    /// sign-flipped axes, verifies each is an isotropy point (also composed
    /// with sample elements of the fixed subgroup), and verifies that a
    /// `grid`-per-axis rational grid off the half-integer set uniformly
    /// fails. `h0_samples` hold rational coordinates for the fixed axes.
    pub fn enumerate_isotropy_components(
        &self,
        signs: &[i8],
        box_radius: i64,
        grid: u32,
        h0_samples: &[Vec<BigRational>],
    ) -> Result<IsotropyEnumeration, NilGroupError> {
        let flipped: Vec<usize> = (1..=self.dim).filter(|&i| signs[i - 1] == -1).collect();
        let fixed: Vec<usize> = (1..=self.dim).filter(|&i| signs[i - 1] == 1).collect();
        let half = rat(1, 2);

        let mut components = Vec::new();
        let mut samples_ok = true;
        for mask in 0..(1u32 << flipped.len()) {
            let mut eps = GroupElement::zero(self.dim);
            for (bit, &axis) in flipped.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    eps.0[axis - 1] = half.clone();
                }
            }
            let Some(witness) = self.isotropy_test(&eps, signs, box_radius) else {
                return Ok(IsotropyEnumeration {
                    components,
                    fixed_subgroup_samples_ok: false,
                    grid_points_tested: 0,
                    grid_all_fail: false,
                });
            };
            // compose with fixed-subgroup samples; isotropy must persist
            for sample in h0_samples {
                let mut h = GroupElement::zero(self.dim);
                for (slot, &axis) in fixed.iter().enumerate() {
                    if let Some(c) = sample.get(slot) {
                        h.0[axis - 1] = c.clone();
                    }
                }
                let point = self.bch_product(&eps, &h);
                let (_, reduced) = self.reduce_to_fundamental_domain(&point)?;
                if self.isotropy_test(&reduced, signs, box_radius).is_none() {
                    samples_ok = false;
                }
            }
            components.push((eps, witness));
        }

        // grid points on the flipped axes with coordinates k/grid, excluding
        // tuples where every coordinate lies in {0, ½}
        let mut tested = 0usize;
        let mut all_fail = true;
        let mut counters = vec![0u32; flipped.len()];
        loop {
            let coords: Vec<BigRational> = counters
                .iter()
                .map(|&k| rat(k as i64, grid as i64))
                .collect();
            let on_half_set = coords.iter().all(|c| c.is_zero() || *c == half);
            if !on_half_set {
                let mut x = GroupElement::zero(self.dim);
                for (slot, &axis) in flipped.iter().enumerate() {
                    x.0[axis - 1] = coords[slot].clone();
                }
                tested += 1;
                if self.isotropy_test(&x, signs, box_radius).is_some() {
                    all_fail = false;
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == counters.len() {
                    return Ok(IsotropyEnumeration {
                        components,
                        fixed_subgroup_samples_ok: samples_ok,
                        grid_points_tested: tested,
                        grid_all_fail: all_fail,
                    });
                }
                if counters[i] + 1 < grid {
                    counters[i] += 1;
                    break;
                }
                counters[i] = 0;
                i += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin;

    fn group() -> NilGroup {
        builtin::nilpotent_group()
    }

    #[test]
    fn unit_products() {
        let g = group();
        let zero = GroupElement::zero(7);
        let x = GroupElement::from_ints(&[1, -2, 3, 0, 1, 4, -1]);
        assert_eq!(g.bch_product(&zero, &x), x);
        assert_eq!(g.bch_product(&x, &zero), x);
        assert!(g.bch_product(&x, &g.inverse(&x)).is_zero());
    }

    #[test]
    fn u1_times_u2() {
        // u₁ * u₂ = u₁ + u₂ − u₄ from ½[u₁,u₂] = −u₄
        let g = group();
        let u1 = GroupElement::basis(7, 1, BigRational::one());
        let u2 = GroupElement::basis(7, 2, BigRational::one());
        let expected = GroupElement::from_ints(&[1, 1, 0, -1, 0, 0, 0]);
        assert_eq!(g.bch_product(&u1, &u2), expected);
    }

    #[test]
    fn inverse_is_antihomomorphism() {
        let g = group();
        let x = GroupElement::from_rationals(vec![
            rat(1, 2),
            rat(-3, 4),
            rat(2, 1),
            rat(0, 1),
            rat(5, 3),
            rat(-1, 6),
            rat(7, 2),
        ]);
        let y = GroupElement::from_rationals(vec![
            rat(-2, 3),
            rat(1, 5),
            rat(1, 1),
            rat(3, 2),
            rat(0, 1),
            rat(4, 7),
            rat(-1, 2),
        ]);
        let lhs = g.inverse(&g.bch_product(&x, &y));
        let rhs = g.bch_product(&g.inverse(&y), &g.inverse(&x));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn associativity_on_rational_triples() {
        let g = group();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let mut coords = || {
                GroupElement(
                    (0..7)
                        .map(|_| rat(rng.random_range(-12..=12), rng.random_range(1..=4)))
                        .collect(),
                )
            };
            let (x, y, z) = (coords(), coords(), coords());
            let lhs = g.bch_product(&g.bch_product(&x, &y), &z);
            let rhs = g.bch_product(&x, &g.bch_product(&y, &z));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn reduction_properties() {
        let g = group();
        // interior point is untouched
        let x = GroupElement::from_rationals(vec![
            rat(1, 2),
            rat(1, 4),
            rat(0, 1),
            rat(3, 4),
            rat(1, 8),
            rat(7, 9),
            rat(2, 3),
        ]);
        let (gamma, d) = g.reduce_to_fundamental_domain(&x).unwrap();
        assert!(gamma.is_zero());
        assert_eq!(d, x);
        // pure lattice point reduces to the origin
        let two_u1 = GroupElement::from_ints(&[2, 0, 0, 0, 0, 0, 0]);
        let (gamma, d) = g.reduce_to_fundamental_domain(&two_u1).unwrap();
        assert_eq!(gamma, two_u1);
        assert!(d.is_zero());
        // generic point: γ * d = x exactly, all d-coordinates in [0,1)
        let x = GroupElement::from_rationals(vec![
            rat(3, 2),
            rat(5, 4),
            rat(-7, 3),
            rat(9, 5),
            rat(-1, 2),
            rat(22, 7),
            rat(-13, 6),
        ]);
        let (gamma, d) = g.reduce_to_fundamental_domain(&x).unwrap();
        assert_eq!(g.bch_product(&gamma, &d), x);
        assert!(gamma.to_lattice().is_some());
        assert!(d
            .0
            .iter()
            .all(|c| !c.is_negative() && *c < BigRational::one()));
        // idempotence on the reduced part
        let (gamma2, d2) = g.reduce_to_fundamental_domain(&d).unwrap();
        assert!(gamma2.is_zero());
        assert_eq!(d2, d);
    }

    #[test]
    fn involution_is_group_automorphism() {
        let g = group();
        let signs = builtin::INVOLUTION_SIGNS;
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let mut coords = || {
                GroupElement(
                    (0..7)
                        .map(|_| rat(rng.random_range(-8..=8), rng.random_range(1..=5)))
                        .collect(),
                )
            };
            let (x, y) = (coords(), coords());
            let lhs = g.apply_signs(&g.bch_product(&x, &y), &signs);
            let rhs = g.bch_product(&g.apply_signs(&x, &signs), &g.apply_signs(&y, &signs));
            assert_eq!(lhs, rhs);
            // involutive
            assert_eq!(g.apply_signs(&g.apply_signs(&x, &signs), &signs), x);
        }
    }

    #[test]
    fn isotropy_examples() {
        let g = group();
        let signs = builtin::INVOLUTION_SIGNS;
        // the identity is fixed
        let zero = GroupElement::zero(7);
        assert_eq!(
            g.isotropy_test(&zero, &signs, 8),
            Some(vec![BigInt::from(0); 7])
        );
        // x = ½u₁: j(x) = −½u₁ = (−u₁)*(½u₁)
        let half_u1 = GroupElement::basis(7, 1, rat(1, 2));
        let witness = g.isotropy_test(&half_u1, &signs, 8).unwrap();
        assert_eq!(witness[0], BigInt::from(-1));
        // x = ¼u₁ is not an isotropy point
        let quarter_u1 = GroupElement::basis(7, 1, rat(1, 4));
        assert!(g.isotropy_test(&quarter_u1, &signs, 8).is_none());
    }

    #[test]
    fn direct_solve_matches_exhaustive_search() {
        let g = group();
        let signs = builtin::INVOLUTION_SIGNS;
        let points = [
            GroupElement::zero(7),
            GroupElement::basis(7, 1, rat(1, 2)),
            GroupElement::basis(7, 1, rat(1, 4)),
            GroupElement::from_rationals(vec![
                rat(1, 2),
                rat(1, 2),
                rat(0, 1),
                rat(0, 1),
                rat(1, 2),
                rat(1, 2),
                rat(0, 1),
            ]),
            GroupElement::from_rationals(vec![
                rat(1, 3),
                rat(0, 1),
                rat(1, 5),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
                rat(0, 1),
            ]),
        ];
        for x in &points {
            let direct = g.isotropy_test(x, &signs, 1);
            let search = g.isotropy_search(x, &signs, 1);
            assert_eq!(direct, search, "at {x}");
        }
    }

    #[test]
    fn symbolic_closure_certificate() {
        let g = group();
        assert!(g.symbolic_integrality_check().is_ok());
        assert!(g.lattice_closure_check(500, 17).is_ok());
    }

    #[test]
    fn unscaled_center_breaks_closure() {
        // replacing u₇ = e₇/6 by e₇ leaves a denominator 6 in the product
        let lie = builtin::lie_algebra();
        let mut scales = builtin::lattice_scales();
        scales[6] = rat(1, 1);
        let g = NilGroup::from_lie_algebra(&lie, &scales).unwrap();
        let err = g.symbolic_integrality_check().unwrap_err();
        assert_eq!(err.0, 7);
        // and a concrete witness pair exists: u₁ * u₆ has center coordinate ½
        let u1 = GroupElement::basis(7, 1, BigRational::one());
        let u6 = GroupElement::basis(7, 6, BigRational::one());
        let z = g.bch_product(&u1, &u6);
        assert!(!z.0[6].is_integer());
    }

    #[test]
    fn abelian_group_is_fine() {
        let lie = LieAlgebraData::new(3, &[]).unwrap();
        let scales = vec![BigRational::one(); 3];
        let g = NilGroup::from_lie_algebra(&lie, &scales).unwrap();
        assert!(g.symbolic_integrality_check().is_ok());
        let x = GroupElement::from_ints(&[1, 2, 3]);
        let y = GroupElement::from_ints(&[4, 5, 6]);
        assert_eq!(g.bch_product(&x, &y), GroupElement::from_ints(&[5, 7, 9]));
    }
}
