//! Radicals, semisimplicity verdicts, and the corner realization of the
//! degree-zero part.
//!
//! The Jacobson radical of a finite-dimensional algebra in characteristic
//! zero is the radical of the trace form `(a,b) ↦ tr(L_a L_b)` of the left
//! regular representation. The computation below also certifies, on every
//! run, that the result is a nilpotent two-sided ideal and homogeneous for
//! the parity grading; either failure is fatal.

use crate::clifford::{theta_from_central, CliffordMap, HypersurfaceInput, Hypotheses};
use crate::deform::{build_deformation, FiniteGradedAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{self, CoordSpan};
use crate::quadalg::{KoszulCheck, QuadraticPresentation, RegularityReport, TOP_DEGREE_SCAN_LIMIT};
use crate::scalar::Scalar;
use crate::subspace::Subspace;
use crate::tensor::Tensor;
use crate::word::Word;

/// Radical basis and the derived semisimplicity flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadicalReport {
    pub basis: Vec<Vec<Scalar>>,
    pub dim: usize,
    pub homogeneous: bool,
    pub nilpotency_index: Option<usize>,
    pub semisimple: bool,
    pub graded_semisimple: bool,
}

/// Trace-form radical of the left regular representation.
pub fn jacobson_radical(a: &FiniteGradedAlgebra) -> RadicalReport {
    let dim = a.dim();
    // tr(L_{b_i} L_{b_j}) = tr(L_{b_i·b_j}) since L is multiplicative.
    let traces: Vec<Scalar> = (0..dim)
        .map(|k| {
            let mut t = Scalar::zero();
            for j in 0..dim {
                for (i, c) in a.basis_product(k, j) {
                    if *i == j {
                        t += c;
                    }
                }
            }
            t
        })
        .collect();
    let rows: Vec<Vec<Scalar>> = (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let mut entry = Scalar::zero();
                    for (k, c) in a.basis_product(i, j) {
                        entry += &(c * &traces[*k]);
                    }
                    entry
                })
                .collect()
        })
        .collect();
    let kernel = matrix::nullspace(rows, dim);
    let span = CoordSpan::from_vectors(dim, kernel);
    let basis: Vec<Vec<Scalar>> = span.basis().to_vec();

    // Two-sided ideal and parity homogeneity certificates.
    let mut homogeneous = true;
    for v in &basis {
        let mut even = vec![Scalar::zero(); dim];
        let mut odd = vec![Scalar::zero(); dim];
        for (i, c) in v.iter().enumerate() {
            if a.parity(i) == 0 {
                even[i] = c.clone();
            } else {
                odd[i] = c.clone();
            }
        }
        if !span.contains(even) || !span.contains(odd) {
            homogeneous = false;
        }
    }
    let is_ideal = basis.iter().all(|v| {
        (0..dim).all(|b| {
            let mut unit_b = vec![Scalar::zero(); dim];
            unit_b[b] = Scalar::one();
            span.contains(a.multiply(v, &unit_b)) && span.contains(a.multiply(&unit_b, v))
        })
    });
    assert!(is_ideal, "trace-form radical must be a two-sided ideal");

    // Nilpotency: powers of the ideal must vanish within dim steps.
    let nilpotency_index = if basis.is_empty() {
        Some(1)
    } else {
        let mut power: Vec<Vec<Scalar>> = basis.clone();
        let mut index = None;
        for step in 2..=dim + 1 {
            let mut next = CoordSpan::new(dim);
            for p in &power {
                for r in &basis {
                    next.insert(a.multiply(p, r));
                }
            }
            if next.dim() == 0 {
                index = Some(step);
                break;
            }
            power = next.basis().to_vec();
        }
        index
    };
    assert!(
        nilpotency_index.is_some(),
        "trace-form radical must be nilpotent"
    );

    let semisimple = basis.is_empty();
    RadicalReport {
        dim: basis.len(),
        basis,
        homogeneous,
        nilpotency_index,
        semisimple,
        graded_semisimple: semisimple && homogeneous,
    }
}

/// Semisimplicity as a parity-graded algebra. In characteristic zero with
/// a two-element grading group the graded radical equals the ungraded one;
/// homogeneity is asserted rather than assumed.
pub fn graded_semisimple(a: &FiniteGradedAlgebra) -> Result<bool> {
    let report = jacobson_radical(a);
    if !report.homogeneous {
        return Err(Error::InhomogeneousRadical);
    }
    Ok(report.semisimple)
}

/// Verdict on whether the quotient by the central element has smooth
/// noncommutative projective geometry, together with the full ledger of
/// verified and user-asserted hypotheses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularityVerdict {
    pub semisimple: bool,
    pub radical_dim: usize,
    pub koszul_check: KoszulCheck,
    pub regularity: RegularityReport,
    pub centrality_verified: bool,
    pub hypotheses: Hypotheses,
    pub conclusion: String,
}

impl SingularityVerdict {
    fn unverified(&self) -> Vec<&'static str> {
        let mut missing = Vec::new();
        if !self.koszul_check.pass {
            missing.push("numerical Koszul check failed");
        }
        if !self.regularity.regular_up_to_bound() {
            missing.push("regularity failed below the bound");
        }
        if !self.hypotheses.koszul {
            missing.push("Koszulity not asserted");
        }
        if !self.hypotheses.as_regular {
            missing.push("AS-regularity not asserted");
        }
        if !self.hypotheses.gldim_ge2 {
            missing.push("gldim >= 2 not asserted");
        }
        missing
    }
}

pub fn singularity_verdict(input: &HypersurfaceInput) -> Result<SingularityVerdict> {
    let theta = theta_from_central(input)?;
    let deformation = build_deformation(&theta)?;
    let radical = jacobson_radical(deformation.algebra());
    if !radical.homogeneous {
        return Err(Error::InhomogeneousRadical);
    }
    let bound = 2 * deformation.top_degree() + 2;
    let regularity = input.ambient().regular_upto(input.central(), bound)?;
    let koszul_check = input.ambient().koszul_numeric_check(bound)?;
    let mut verdict = SingularityVerdict {
        semisimple: radical.semisimple,
        radical_dim: radical.dim,
        koszul_check,
        regularity,
        centrality_verified: true,
        hypotheses: input.hypotheses(),
        conclusion: String::new(),
    };
    let missing = verdict.unverified();
    verdict.conclusion = match (verdict.semisimple, missing.is_empty()) {
        (true, true) => "isolated singularity".to_string(),
        (false, true) => "not an isolated singularity".to_string(),
        (true, false) => format!(
            "deformed algebra is graded semisimple; isolated-singularity conclusion is conditional on: {}",
            missing.join("; ")
        ),
        (false, false) => format!(
            "deformed algebra is not semisimple; non-isolated conclusion is conditional on: {}",
            missing.join("; ")
        ),
    };
    Ok(verdict)
}

/// The even-parity subalgebra, returned with the index of each even basis
/// element in the original algebra.
pub fn even_part_algebra(a: &FiniteGradedAlgebra) -> (FiniteGradedAlgebra, Vec<usize>) {
    let (even, _) = a.parity_split();
    let position: std::collections::BTreeMap<usize, usize> = even
        .iter()
        .enumerate()
        .map(|(new, &old)| (old, new))
        .collect();
    let labels = even.iter().map(|&i| a.labels()[i].clone()).collect();
    let degrees = even.iter().map(|&i| a.degree(i)).collect();
    let parities = vec![0u8; even.len()];
    let unit = position[&a.unit_index()];
    let table: Vec<Vec<Vec<(usize, Scalar)>>> = even
        .iter()
        .map(|&i| {
            even.iter()
                .map(|&j| {
                    a.basis_product(i, j)
                        .iter()
                        .map(|(k, c)| (position[k], c.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    let algebra = FiniteGradedAlgebra::new(a.field(), labels, degrees, parities, unit, table)
        .expect("even part inherits unit, associativity, and homogeneity");
    (algebra, even)
}

/// The quotient presentation `B/(z)`: relations of `B` plus the canonical
/// lift of `z`.
pub fn quotient_by_central(b: &QuadraticPresentation, z: &Tensor) -> Result<QuadraticPresentation> {
    let coords = b.degree2_coords(z)?;
    if coords.iter().all(Scalar::is_zero) {
        return Err(Error::ZeroElement);
    }
    if !b.central_degree2()?.contains(coords) {
        return Err(Error::NotCentral(2));
    }
    let r0 = b.reduce(z)?;
    let mut relations: Vec<Tensor> = b.relations().basis().to_vec();
    relations.push(r0);
    QuadraticPresentation::with_limits(b.field(), b.generators().to_vec(), relations, b.limits())
}

/// The induced deformation map on `E = B/(z)`: 1 on the lift of `z`,
/// 0 on the relations of `B`, re-expressed against the echelon basis.
pub fn section4_theta(
    b: &QuadraticPresentation,
    z: &Tensor,
) -> Result<(QuadraticPresentation, CliffordMap)> {
    let e = quotient_by_central(b, z)?;
    let r0 = b.reduce(z)?;
    let mut listed: Vec<Tensor> = b.relations().basis().to_vec();
    let mut values = vec![Scalar::zero(); listed.len()];
    listed.push(r0);
    values.push(Scalar::one());
    let theta = CliffordMap::from_relation_values(e.clone(), &listed, &values)?;
    Ok((e, theta))
}

/// Result of comparing the stabilized corner of `B` against the even part
/// of the deformed quotient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerReport {
    pub stabilization_exponent: usize,
    pub corner_dim: usize,
    pub even_dim: usize,
    pub linear_bijection: bool,
    pub multiplicative: bool,
    pub unital: bool,
}

impl CornerReport {
    pub fn pass(&self) -> bool {
        self.linear_bijection && self.multiplicative && self.unital
    }
}

/// Realize `B[z⁻¹]₀` on the stabilized slice `B_{2m}` with product
/// `(a,b) ↦ z^{-m}·ab` and compare it, through the generator-induced map,
/// with the even part of the deformed quotient algebra.
pub fn localization_corner_crosscheck(
    b: &QuadraticPresentation,
    z: &Tensor,
    theta: &CliffordMap,
) -> Result<CornerReport> {
    let e = quotient_by_central(b, z)?;
    if theta.presentation() != &e {
        return Err(Error::DimensionMismatch {
            expected: e.relations().dim(),
            got: theta.presentation().relations().dim(),
        });
    }
    let deformation = build_deformation(theta)?;
    let top = deformation.top_degree();
    let z_normal = b.reduce(z)?;

    let mut m = (top + 2) / 2; // smallest m with 2m ≥ top+1
    let mut chosen = None;
    for _ in 0..4 {
        match stabilized_at(b, &z_normal, m)? {
            true => {
                chosen = Some(m);
                break;
            }
            false => m *= 2,
        }
    }
    let Some(m) = chosen else {
        return Err(Error::NotStabilized { degree: 2 * m });
    };

    let slice = b.slice(2 * m)?;
    let d = slice.dim();
    // z^m and the multiplication map B_{2m} → B_{4m}.
    let mut z_power = Tensor::monomial(b.field(), Word::empty());
    for _ in 0..m {
        z_power = z_power.tensor(&z_normal)?;
    }
    let z_power = b.reduce(&z_power)?;
    let target_slice = b.slice(4 * m)?;
    let mu: Vec<Vec<Scalar>> = slice
        .normal_words()
        .iter()
        .map(|u| {
            let ut = Tensor::monomial(b.field(), u.clone());
            Ok(target_slice.coords(&b.reduce(&z_power.tensor(&ut)?)?))
        })
        .collect::<Result<_>>()?;
    if matrix::rank(mu.clone()) != d {
        return Err(Error::NotRegular { degree: 2 * m });
    }

    // Corner product table and unit.
    let corner_unit = slice.coords(&z_power);
    let mut corner_table: Vec<Vec<Vec<Scalar>>> = vec![vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let ui = Tensor::monomial(b.field(), slice.normal_words()[i].clone());
            let uj = Tensor::monomial(b.field(), slice.normal_words()[j].clone());
            let product = target_slice.coords(&b.reduce(&ui.tensor(&uj)?)?);
            let c = matrix::solve_combination(&mu, &product)
                .ok_or(Error::NotRegular { degree: 4 * m })?;
            corner_table[i][j] = c;
        }
    }

    // Generator-induced comparison map into the deformed algebra.
    let (even_algebra, even_indices) = even_part_algebra(deformation.algebra());
    let even_dim = even_algebra.dim();
    let to_even = |full: Vec<Scalar>| -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); even_indices.len()];
        for (i, c) in full.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let pos = even_indices.iter().position(|&e| e == i)?;
            v[pos] = c.clone();
        }
        Some(v)
    };
    let images: Vec<Vec<Scalar>> = slice
        .normal_words()
        .iter()
        .map(|u| to_even(deformation.word_coords(u)).expect("even-length words land evenly"))
        .collect();
    let linear_bijection = d == even_dim && matrix::rank(images.clone()) == even_dim;

    let combine = |coords: &[Scalar]| -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); even_dim];
        for (i, c) in coords.iter().enumerate() {
            for (k, x) in images[i].iter().enumerate() {
                acc[k] += &(x * c);
            }
        }
        acc
    };
    let mut multiplicative = true;
    for i in 0..d {
        for j in 0..d {
            let lhs = combine(&corner_table[i][j]);
            let rhs = even_algebra.multiply(&images[i], &images[j]);
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    let unital = combine(&corner_unit) == even_algebra.unit_coords();

    Ok(CornerReport {
        stabilization_exponent: m,
        corner_dim: d,
        even_dim,
        linear_bijection,
        multiplicative,
        unital,
    })
}

/// Bijectivity of `z·: B_{2k} → B_{2k+2}` for every `k` in `m..2m`.
fn stabilized_at(b: &QuadraticPresentation, z_normal: &Tensor, m: usize) -> Result<bool> {
    for k in m..2 * m {
        let source = b.slice(2 * k)?;
        let target = b.slice(2 * k + 2)?;
        if source.dim() != target.dim() {
            return Ok(false);
        }
        let rows: Vec<Vec<Scalar>> = source
            .normal_words()
            .iter()
            .map(|u| {
                let ut = Tensor::monomial(b.field(), u.clone());
                Ok(target.coords(&b.reduce(&z_normal.tensor(&ut)?)?))
            })
            .collect::<Result<_>>()?;
        if matrix::rank(rows) != source.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The hypersurface presentation, its quadratic dual, the distinguished
/// degree-2 class `w`, and the deformed-quotient data derived from one
/// ambient presentation and central element.
#[derive(Debug, Clone)]
pub struct DualData {
    pub hypersurface: QuadraticPresentation,
    pub dual: QuadraticPresentation,
    /// Normal form of the distinguished functional inside the dual.
    pub w_class: Tensor,
    /// The raw functional on `V⊗V` before reduction.
    pub w_functional: Tensor,
    /// `dual/(w)`, which must present the same algebra as the quadratic
    /// dual of the ambient presentation.
    pub dual_quotient: QuadraticPresentation,
    pub theta: CliffordMap,
}

/// Functional that is 1 on `r0` and 0 on both `relations` and the span of
/// the given complement words.
fn dual_functional(
    field: crate::scalar::FieldKind,
    n_gens: usize,
    relations: &Subspace,
    r0: &Tensor,
    complement_words: &[Word],
) -> Result<Tensor> {
    let words = Word::all_of_length(n_gens, 2);
    let mut columns: Vec<Vec<Scalar>> = Vec::new();
    let mut rhs: Vec<Scalar> = Vec::new();
    let mut constraints: Vec<&Tensor> = relations.basis().iter().collect();
    constraints.push(r0);
    let complement_tensors: Vec<Tensor> = complement_words
        .iter()
        .map(|w| Tensor::monomial(field, w.clone()))
        .collect();
    constraints.extend(complement_tensors.iter());
    for idx in 0..constraints.len() {
        rhs.push(if idx == relations.dim() {
            Scalar::one()
        } else {
            Scalar::zero()
        });
    }
    for w in &words {
        columns.push(constraints.iter().map(|c| c.coefficient(w)).collect());
    }
    let solution = matrix::solve_combination(&columns, &rhs).ok_or(Error::ZeroElement)?;
    Tensor::from_terms(
        field,
        2,
        words
            .into_iter()
            .zip(solution)
            .filter(|(_, c)| !c.is_zero()),
    )
}

pub fn hypersurface_dual_data(input: &HypersurfaceInput) -> Result<DualData> {
    let s = input.ambient();
    let r0 = input.canonical_lift()?;
    let mut relations: Vec<Tensor> = s.relations().basis().to_vec();
    relations.push(r0.clone());
    let hypersurface = QuadraticPresentation::with_limits(
        s.field(),
        s.generators().to_vec(),
        relations,
        s.limits(),
    )?;
    let dual = hypersurface.quadratic_dual();

    // Canonical complement: the non-pivot words of the extended relations.
    let pivots = hypersurface.relations().pivot_words();
    let complement: Vec<Word> = Word::all_of_length(s.n_gens(), 2)
        .into_iter()
        .filter(|w| !pivots.contains(w))
        .collect();
    let w_functional = dual_functional(s.field(), s.n_gens(), s.relations(), &r0, &complement)?;
    let w_class = dual.reduce(&w_functional)?;
    if w_class.is_zero() {
        return Err(Error::ZeroElement);
    }
    let w_coords = dual.degree2_coords(&w_class)?;
    if !dual.central_degree2()?.contains(w_coords) {
        return Err(Error::WNotCentral);
    }

    // dual/(w) must present S^! exactly.
    let e = s.quadratic_dual();
    let mut quotient_relations: Vec<Tensor> = dual.relations().basis().to_vec();
    quotient_relations.push(w_class.clone());
    let dual_quotient = QuadraticPresentation::with_limits(
        s.field(),
        s.generators().to_vec(),
        quotient_relations,
        s.limits(),
    )?;
    if dual_quotient.relations() != e.relations() {
        return Err(Error::WNotCentral);
    }
    let bound = e.top_degree(TOP_DEGREE_SCAN_LIMIT)? + 2;
    if dual_quotient.hilbert_series(bound)? != e.hilbert_series(bound)? {
        return Err(Error::WNotCentral);
    }

    let theta = theta_from_central(input)?;
    Ok(DualData {
        hypersurface,
        dual,
        w_class,
        w_functional,
        dual_quotient,
        theta,
    })
}

/// Pipeline variant of the corner crosscheck: derive the dual-side data
/// from a hypersurface input and run the comparison there.
pub fn corner_crosscheck_via_dual(input: &HypersurfaceInput) -> Result<CornerReport> {
    let data = hypersurface_dual_data(input)?;
    let (_, theta) = section4_theta(&data.dual, &data.w_class)?;
    localization_corner_crosscheck(&data.dual, &data.w_class, &theta)
}

/// Re-derive the distinguished functional with a perturbed complement;
/// the class in the dual must not change. Exposed for verification.
pub fn dual_functional_with_perturbed_complement(input: &HypersurfaceInput) -> Result<Tensor> {
    let s = input.ambient();
    let r0 = input.canonical_lift()?;
    let mut relations: Vec<Tensor> = s.relations().basis().to_vec();
    relations.push(r0.clone());
    let hypersurface = QuadraticPresentation::with_limits(
        s.field(),
        s.generators().to_vec(),
        relations,
        s.limits(),
    )?;
    let dual = hypersurface.quadratic_dual();
    let pivots = hypersurface.relations().pivot_words();
    let complement: Vec<Word> = Word::all_of_length(s.n_gens(), 2)
        .into_iter()
        .filter(|w| !pivots.contains(w))
        .collect();
    // Perturb: add the first extended-relation basis vector to each
    // complement word. The result still spans a complement.
    let shift = hypersurface.relations().basis()[0].clone();
    let perturbed: Vec<Tensor> = complement
        .iter()
        .map(|w| Tensor::monomial(s.field(), w.clone()).add(&shift))
        .collect::<Result<_>>()?;
    let words = Word::all_of_length(s.n_gens(), 2);
    let mut constraints: Vec<&Tensor> = s.relations().basis().iter().collect();
    constraints.push(&r0);
    constraints.extend(perturbed.iter());
    let mut rhs = vec![Scalar::zero(); constraints.len()];
    rhs[s.relations().dim()] = Scalar::one();
    let columns: Vec<Vec<Scalar>> = words
        .iter()
        .map(|w| constraints.iter().map(|c| c.coefficient(w)).collect())
        .collect();
    let solution = matrix::solve_combination(&columns, &rhs).ok_or(Error::ZeroElement)?;
    let functional = Tensor::from_terms(
        s.field(),
        2,
        words
            .into_iter()
            .zip(solution)
            .filter(|(_, c)| !c.is_zero()),
    )?;
    dual.reduce(&functional)
}
