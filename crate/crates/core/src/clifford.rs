//! Deformation maps on the relation space of a quadratic algebra.
//!
//! For `E = T(V)/(R)`, a linear map `θ: R → k` is admissible when
//! `(θ⊗1 − 1⊗θ)` kills `V⊗R ∩ R⊗V`. Such maps are exactly the degree-2
//! central elements of the quadratic dual, and each one deforms `E` into a
//! finite-dimensional parity-graded algebra (see the `deform` module).

use crate::error::{Error, Result};
use crate::matrix::{self, CoordSpan};
use crate::quadalg::QuadraticPresentation;
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tensor::Tensor;
use crate::word::Word;

/// `V⊗R ∩ R⊗V` inside `V^⊗3`.
pub fn overlap_space(e: &QuadraticPresentation) -> Result<Subspace> {
    let n = e.n_gens();
    let field = e.field();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for g in 0..n {
        let gt = Tensor::monomial(field, Word::single(g));
        for r in e.relations().basis() {
            left.push(gt.tensor(r)?);
            right.push(r.tensor(&gt)?);
        }
    }
    let v_r = Subspace::span(field, n, 3, left)?;
    let r_v = Subspace::span(field, n, 3, right)?;
    v_r.intersect(&r_v)
}

/// Coordinates of `w` over the spanning family `xᵢ⊗eₜ` (or `eₜ⊗xᵢ`),
/// as a map `(generator, relation index) -> Scalar`.
fn decompose(
    e: &QuadraticPresentation,
    w: &Tensor,
    relation_on_right: bool,
) -> Result<Vec<Vec<Scalar>>> {
    let n = e.n_gens();
    let words = Word::all_of_length(n, 3);
    let dense = |t: &Tensor| -> Vec<Scalar> { words.iter().map(|u| t.coefficient(u)).collect() };
    let mut vectors = Vec::new();
    for g in 0..n {
        let gt = Tensor::monomial(e.field(), Word::single(g));
        for r in e.relations().basis() {
            let v = if relation_on_right {
                gt.tensor(r)?
            } else {
                r.tensor(&gt)?
            };
            vectors.push(dense(&v));
        }
    }
    let solution = matrix::solve_combination(&vectors, &dense(w))
        .expect("overlap vectors decompose in both blocks");
    let dim_r = e.relations().dim();
    Ok((0..n)
        .map(|g| solution[g * dim_r..(g + 1) * dim_r].to_vec())
        .collect())
}

/// Evaluation of `(θ⊗1 − 1⊗θ)` on one overlap vector, as coordinates in V.
fn condition_defect(
    e: &QuadraticPresentation,
    w: &Tensor,
    values: &[Scalar],
) -> Result<Vec<Scalar>> {
    let right = decompose(e, w, true)?; // w = Σ x_g ⊗ e_t
    let left = decompose(e, w, false)?; // w = Σ e_t ⊗ x_g
    let n = e.n_gens();
    let mut defect = vec![Scalar::zero(); n];
    for g in 0..n {
        for (t, theta) in values.iter().enumerate() {
            defect[g] += &(&left[g][t] * theta);
            defect[g] -= &(&right[g][t] * theta);
        }
    }
    Ok(defect)
}

/// Outcome of testing one candidate vector against the overlap space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    pub holds: bool,
    /// Indices of overlap basis vectors with a nonzero defect.
    pub violated: Vec<usize>,
}

/// Check `(θ⊗1 − 1⊗θ)(V⊗R ∩ R⊗V) = 0` for a candidate coordinate vector
/// against the echelon basis of `R`.
pub fn clifford_condition(e: &QuadraticPresentation, values: &[Scalar]) -> Result<ConditionReport> {
    if values.len() != e.relations().dim() {
        return Err(Error::DimensionMismatch {
            expected: e.relations().dim(),
            got: values.len(),
        });
    }
    let overlap = overlap_space(e)?;
    let mut violated = Vec::new();
    for (i, w) in overlap.basis().iter().enumerate() {
        let defect = condition_defect(e, w, values)?;
        if defect.iter().any(|c| !c.is_zero()) {
            violated.push(i);
        }
    }
    Ok(ConditionReport {
        holds: violated.is_empty(),
        violated,
    })
}

/// The space of all admissible maps, echelonized in `R*`-coordinates
/// (one coordinate per echelon basis vector of `R`).
pub fn clifford_map_space(e: &QuadraticPresentation) -> Result<CoordSpan> {
    let dim_r = e.relations().dim();
    let overlap = overlap_space(e)?;
    let n = e.n_gens();
    let mut rows = Vec::new();
    for w in overlap.basis() {
        let right = decompose(e, w, true)?;
        let left = decompose(e, w, false)?;
        for g in 0..n {
            let row: Vec<Scalar> = (0..dim_r).map(|t| &left[g][t] - &right[g][t]).collect();
            if row.iter().any(|c| !c.is_zero()) {
                rows.push(row);
            }
        }
    }
    let kernel = matrix::nullspace(rows, dim_r);
    Ok(CoordSpan::from_vectors(dim_r, kernel))
}

/// An admissible deformation map, stored as values on the echelon basis of
/// the relation space. The defining condition is checked at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliffordMap {
    presentation: QuadraticPresentation,
    values: Vec<Scalar>,
}

impl CliffordMap {
    pub fn new(presentation: QuadraticPresentation, values: Vec<Scalar>) -> Result<Self> {
        let report = clifford_condition(&presentation, &values)?;
        if !report.holds {
            return Err(Error::NotClifford {
                violations: report.violated.len(),
            });
        }
        Ok(CliffordMap {
            presentation,
            values,
        })
    }

    pub fn zero(presentation: QuadraticPresentation) -> Self {
        let values = vec![Scalar::zero(); presentation.relations().dim()];
        CliffordMap {
            presentation,
            values,
        }
    }

    /// Build from values given against a caller-supplied relation basis
    /// (typically the order relations were listed in an input file).
    pub fn from_relation_values(
        presentation: QuadraticPresentation,
        listed: &[Tensor],
        values: &[Scalar],
    ) -> Result<Self> {
        if listed.len() != values.len() || listed.len() != presentation.relations().dim() {
            return Err(Error::DimensionMismatch {
                expected: presentation.relations().dim(),
                got: values.len(),
            });
        }
        let n = presentation.n_gens();
        let words = Word::all_of_length(n, 2);
        let dense =
            |t: &Tensor| -> Vec<Scalar> { words.iter().map(|u| t.coefficient(u)).collect() };
        let listed_dense: Vec<Vec<Scalar>> = listed.iter().map(dense).collect();
        let mut echelon_values = Vec::new();
        for basis_vec in presentation.relations().basis() {
            let coords = matrix::solve_combination(&listed_dense, &dense(basis_vec)).ok_or(
                Error::DimensionMismatch {
                    expected: presentation.relations().dim(),
                    got: listed.len(),
                },
            )?;
            let mut v = Scalar::zero();
            for (c, t) in coords.iter().zip(values) {
                v += &(c * t);
            }
            echelon_values.push(v);
        }
        CliffordMap::new(presentation, echelon_values)
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        &self.presentation
    }

    /// Values on the echelon basis of the relation space.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(Scalar::is_zero)
    }

    /// Evaluate on an arbitrary element of the relation space. Coordinates
    /// against a reduced echelon basis are read off at the pivot words.
    pub fn apply(&self, r: &Tensor) -> Result<Scalar> {
        let pivots = self.presentation.relations().pivot_words();
        let mut acc = Scalar::zero();
        let mut residual = r.clone();
        for (basis_vec, (pivot, theta)) in self
            .presentation
            .relations()
            .basis()
            .iter()
            .zip(pivots.iter().zip(&self.values))
        {
            let c = r.coefficient(pivot);
            if !c.is_zero() {
                acc += &(&c * theta);
                residual = residual.sub(&basis_vec.scale(&c))?;
            }
        }
        if !residual.is_zero() {
            return Err(Error::NotInRelationSpan);
        }
        Ok(acc)
    }
}

/// Hypotheses the tool cannot decide and therefore only echoes in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Hypotheses {
    pub koszul: bool,
    pub as_regular: bool,
    pub gldim_ge2: bool,
}

/// An ambient presentation together with a verified central degree-2
/// element and the user-asserted regularity hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceInput {
    ambient: QuadraticPresentation,
    central: Tensor,
    hypotheses: Hypotheses,
}

impl HypersurfaceInput {
    pub fn new(
        ambient: QuadraticPresentation,
        central: Tensor,
        hypotheses: Hypotheses,
    ) -> Result<Self> {
        let coords = ambient.degree2_coords(&central)?;
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroElement);
        }
        if !ambient.central_degree2()?.contains(coords) {
            return Err(Error::NotCentral(2));
        }
        Ok(HypersurfaceInput {
            ambient,
            central,
            hypotheses,
        })
    }

    pub fn ambient(&self) -> &QuadraticPresentation {
        &self.ambient
    }

    pub fn central(&self) -> &Tensor {
        &self.central
    }

    pub fn hypotheses(&self) -> Hypotheses {
        self.hypotheses
    }

    /// The minimal-support lift of the central element: its normal form,
    /// re-read as an element of `V⊗V`.
    pub fn canonical_lift(&self) -> Result<Tensor> {
        self.ambient.reduce(&self.central)
    }
}

/// θ from an explicit lift `r₀ ∈ V⊗V`: evaluate the dual relation basis on
/// `r₀` under the componentwise pairing. The result does not depend on the
/// choice of lift of a fixed central element.
pub fn theta_from_lift(dual: &QuadraticPresentation, r0: &Tensor) -> Result<CliffordMap> {
    let values: Vec<Scalar> = dual
        .relations()
        .basis()
        .iter()
        .map(|alpha| alpha.pair(r0))
        .collect::<Result<_>>()?;
    CliffordMap::new(dual.clone(), values)
}

/// The deformation map on `E = S^!` induced by the central element of `S`.
pub fn theta_from_central(input: &HypersurfaceInput) -> Result<CliffordMap> {
    let r0 = input.canonical_lift()?;
    let dual = input.ambient().quadratic_dual();
    theta_from_lift(&dual, &r0)
}

/// Verify that the admissible-map space and the degree-2 center of the
/// quadratic dual correspond under the canonical identification
/// `R* ≅ (V*⊗V*)/R^⊥`: a functional extends by its values on pivot words,
/// then reduces into the dual's degree-2 slice.
pub fn center_correspondence_check(e: &QuadraticPresentation) -> Result<bool> {
    let maps = clifford_map_space(e)?;
    let dual = e.quadratic_dual();
    let center = dual.central_degree2()?;
    if maps.dim() != center.dim() {
        return Ok(false);
    }
    let dual_slice2 = dual.slice(2)?;
    let pivots = e.relations().pivot_words();
    let mut image = CoordSpan::new(dual_slice2.dim());
    for theta in maps.basis() {
        let extension = Tensor::from_terms(
            e.field(),
            2,
            pivots
                .iter()
                .cloned()
                .zip(theta.iter().cloned())
                .filter(|(_, c)| !c.is_zero()),
        )?;
        let coords = dual_slice2.coords(&extension);
        if !center.contains(coords.clone()) {
            return Ok(false);
        }
        image.insert(coords);
    }
    Ok(image == center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::scalar::FieldKind;

    const Q: FieldKind = FieldKind::Rationals;

    fn sc(n: i64) -> Scalar {
        Scalar::from_integer(n)
    }

    #[test]
    fn overlap_dimensions_match_known_cases() {
        assert_eq!(overlap_space(&presets::s2_dual(Q)).unwrap().dim(), 10);
        assert_eq!(
            overlap_space(&presets::jordan_plane_dual(Q)).unwrap().dim(),
            4
        );
        let ext2_overlap = overlap_space(&presets::exterior(Q, 2)).unwrap();
        assert_eq!(ext2_overlap.dim(), 4);
        // x³, y³ and the two full symmetrizations lie in the overlap.
        let cube = |g: usize| presets::word_tensor_free(Q, &[g, g, g]);
        assert!(ext2_overlap.contains(&cube(0)).unwrap());
        assert!(ext2_overlap.contains(&cube(1)).unwrap());
        let sym = |a: &[usize], b: &[usize], c: &[usize]| {
            presets::word_tensor_free(Q, a)
                .add(&presets::word_tensor_free(Q, b))
                .unwrap()
                .add(&presets::word_tensor_free(Q, c))
                .unwrap()
        };
        assert!(ext2_overlap
            .contains(&sym(&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]))
            .unwrap());
        assert!(ext2_overlap
            .contains(&sym(&[0, 1, 1], &[1, 0, 1], &[1, 1, 0]))
            .unwrap());
    }

    #[test]
    fn jordan_dual_overlap_contains_listed_vectors() {
        let overlap = overlap_space(&presets::jordan_plane_dual(Q)).unwrap();
        let y3 = presets::word_tensor_free(Q, &[1, 1, 1]);
        let xy2_sym = presets::word_tensor_free(Q, &[0, 1, 1])
            .add(&presets::word_tensor_free(Q, &[1, 0, 1]))
            .unwrap()
            .add(&presets::word_tensor_free(Q, &[1, 1, 0]))
            .unwrap();
        assert!(overlap.contains(&y3).unwrap());
        assert!(overlap.contains(&xy2_sym).unwrap());
    }

    #[test]
    fn condition_on_jordan_dual_forces_zero() {
        let e = presets::jordan_plane_dual(Q);
        let report = clifford_condition(&e, &[sc(1), sc(0), sc(0)]).unwrap();
        assert!(!report.holds);
        assert!(!report.violated.is_empty());
        let zero = clifford_condition(&e, &[sc(0), sc(0), sc(0)]).unwrap();
        assert!(zero.holds);
        assert_eq!(clifford_map_space(&e).unwrap().dim(), 0);
    }

    #[test]
    fn exterior_two_generators_admits_all_maps() {
        let e = presets::exterior(Q, 2);
        let report = clifford_condition(&e, &[sc(2), sc(-3), sc(5)]).unwrap();
        assert!(report.holds);
        assert_eq!(clifford_map_space(&e).unwrap().dim(), 3);
    }

    #[test]
    fn squares_and_commutator_space_is_the_ab_family() {
        let e = presets::squares_and_commutator(Q);
        let space = clifford_map_space(&e).unwrap();
        assert_eq!(space.dim(), 2);
        // Values are listed against relations x², y², xy−yx.
        let listed = vec![
            presets::square_tensor(Q, 2, 0),
            presets::square_tensor(Q, 2, 1),
            presets::commutator_tensor(Q, 2, 0, 1),
        ];
        let theta =
            CliffordMap::from_relation_values(e.clone(), &listed, &[sc(4), sc(-1), sc(0)]).unwrap();
        assert!(space.contains(theta.values().to_vec()));
        // θ(xy−yx) ≠ 0 is not admissible.
        assert!(CliffordMap::from_relation_values(e, &listed, &[sc(0), sc(0), sc(1)]).is_err());
    }

    #[test]
    fn map_space_matches_pointwise_condition() {
        for e in [
            presets::exterior(Q, 2),
            presets::s2_dual(Q),
            presets::squares_and_commutator(Q),
        ] {
            let space = clifford_map_space(&e).unwrap();
            for v in space.basis() {
                assert!(clifford_condition(&e, v).unwrap().holds);
            }
        }
    }

    #[test]
    fn theta_from_central_on_polynomial_ring() {
        let s = presets::polynomial(Q, 2);
        let input = HypersurfaceInput::new(
            s.clone(),
            presets::sum_of_squares(&s),
            Hypotheses::default(),
        )
        .unwrap();
        let theta = theta_from_central(&input).unwrap();
        // Echelon basis of the exterior relations: x², xy+yx, y².
        assert_eq!(theta.values(), &[sc(1), sc(0), sc(1)]);

        let input_x2 = HypersurfaceInput::new(
            s.clone(),
            presets::word_tensor(&s, &[0, 0]),
            Hypotheses::default(),
        )
        .unwrap();
        assert_eq!(
            theta_from_central(&input_x2).unwrap().values(),
            &[sc(1), sc(0), sc(0)]
        );
    }

    #[test]
    fn theta_is_independent_of_the_lift() {
        let s = presets::polynomial(Q, 2);
        let dual = s.quadratic_dual();
        let lift_a = presets::word_tensor(&s, &[0, 1]);
        let lift_b = presets::word_tensor(&s, &[1, 0]);
        let ta = theta_from_lift(&dual, &lift_a).unwrap();
        let tb = theta_from_lift(&dual, &lift_b).unwrap();
        assert_eq!(ta.values(), tb.values());
    }

    #[test]
    fn theta_is_linear_in_the_central_element() {
        let s = presets::polynomial(Q, 3);
        let hyp = Hypotheses::default();
        let z1 = presets::word_tensor(&s, &[0, 0]);
        let z2 = presets::word_tensor(&s, &[1, 1]);
        let sum = z1.add(&z2).unwrap();
        let t1 = theta_from_central(&HypersurfaceInput::new(s.clone(), z1, hyp).unwrap()).unwrap();
        let t2 = theta_from_central(&HypersurfaceInput::new(s.clone(), z2, hyp).unwrap()).unwrap();
        let ts = theta_from_central(&HypersurfaceInput::new(s.clone(), sum, hyp).unwrap()).unwrap();
        let pointwise: Vec<Scalar> = t1
            .values()
            .iter()
            .zip(t2.values())
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(ts.values(), pointwise.as_slice());
        let z_scaled = presets::word_tensor(&s, &[0, 0]).scale(&sc(7));
        let t_scaled =
            theta_from_central(&HypersurfaceInput::new(s.clone(), z_scaled, hyp).unwrap()).unwrap();
        let scaled: Vec<Scalar> = t1.values().iter().map(|a| a * &sc(7)).collect();
        assert_eq!(t_scaled.values(), scaled.as_slice());
    }

    #[test]
    fn hypersurface_input_validates_centrality() {
        let s = presets::quantum_plane(Q);
        // xy is not central in the skew plane.
        let err = HypersurfaceInput::new(
            s.clone(),
            presets::word_tensor(&s, &[0, 1]),
            Hypotheses::default(),
        );
        assert_eq!(err.unwrap_err(), Error::NotCentral(2));
        let err = HypersurfaceInput::new(s.clone(), Tensor::zero(Q, 2), Hypotheses::default());
        assert_eq!(err.unwrap_err(), Error::ZeroElement);
        // x² is central.
        assert!(HypersurfaceInput::new(
            s.clone(),
            presets::word_tensor(&s, &[0, 0]),
            Hypotheses::default()
        )
        .is_ok());
    }

    #[test]
    fn correspondence_holds_on_the_corpus() {
        for e in [
            presets::exterior(Q, 2),
            presets::jordan_plane_dual(Q),
            presets::s2_dual(Q),
            presets::squares_and_commutator(Q),
        ] {
            assert!(center_correspondence_check(&e).unwrap());
        }
    }
}
