//! Trivial extensions, sign-twisted tensor products, and the corner
//! certificates that transport semisimplicity across double covers.

use crate::clifford::{theta_from_central, CliffordMap, HypersurfaceInput};
use crate::deform::{build_deformation, FiniteGradedAlgebra};
use crate::error::{Error, Result};
use crate::matrix::{self, CoordSpan};
use crate::quadalg::QuadraticPresentation;
use crate::scalar::{FieldKind, Scalar};
use crate::structure::jacobson_radical;
use crate::tensor::Tensor;
use crate::word::Word;

fn fresh_generator_name(existing: &[String]) -> Result<String> {
    for k in 1..=32 {
        let name = format!("v{k}");
        if !existing.iter().any(|g| g == &name) {
            return Ok(name);
        }
    }
    Err(Error::NameClash)
}

/// Adjoin one generator `v` with relations `x⊗v + v⊗x` for every old
/// generator and `v⊗v`. The result doubles the total dimension and raises
/// the top degree by one.
pub fn trivial_extension(e: &QuadraticPresentation) -> Result<QuadraticPresentation> {
    let field = e.field();
    let n = e.n_gens();
    let mut generators = e.generators().to_vec();
    generators.push(fresh_generator_name(&generators)?);
    let mut relations: Vec<Tensor> = e.relations().basis().to_vec();
    for g in 0..n {
        relations.push(
            Tensor::monomial(field, Word::from_indices(&[g, n]))
                .add(&Tensor::monomial(field, Word::from_indices(&[n, g])))?,
        );
    }
    relations.push(Tensor::monomial(field, Word::from_indices(&[n, n])));
    QuadraticPresentation::with_limits(field, generators, relations, e.limits())
}

/// Extend a deformation map across a trivial extension: old values on the
/// old relations, 0 on the mixed relations, 1 on the square of the new
/// generator.
pub fn extend_clifford_map(theta: &CliffordMap) -> Result<CliffordMap> {
    let e = theta.presentation();
    let extended = trivial_extension(e)?;
    let field = e.field();
    let n = e.n_gens();
    // Spanning family of the extended relation space, with known values.
    let mut listed: Vec<Tensor> = e.relations().basis().to_vec();
    let mut values: Vec<Scalar> = theta.values().to_vec();
    for g in 0..n {
        listed.push(
            Tensor::monomial(field, Word::from_indices(&[g, n]))
                .add(&Tensor::monomial(field, Word::from_indices(&[n, g])))?,
        );
        values.push(Scalar::zero());
    }
    listed.push(Tensor::monomial(field, Word::from_indices(&[n, n])));
    values.push(Scalar::one());
    CliffordMap::from_relation_values(extended, &listed, &values)
}

/// The order-two group algebra with its sign grading: basis `{1, a}`,
/// `a² = 1`, `a` odd.
pub fn group_algebra_z2(field: FieldKind) -> FiniteGradedAlgebra {
    let one = Scalar::one;
    FiniteGradedAlgebra::new(
        field,
        vec!["1".into(), "a".into()],
        vec![0, 1],
        vec![0, 1],
        0,
        vec![
            vec![vec![(0, one())], vec![(1, one())]],
            vec![vec![(1, one())], vec![(0, one())]],
        ],
    )
    .expect("group algebra is associative")
}

/// 2×2 matrices with the checkerboard grading: diagonal even,
/// antidiagonal odd. Basis: identity, e12, e21, and h = e11 − e22, so the
/// unit is a basis element. Coordinates of a matrix unit:
/// e11 = (1 + h)/2, e22 = (1 − h)/2.
pub fn matrix_algebra_2x2(field: FieldKind) -> FiniteGradedAlgebra {
    let one = Scalar::one;
    let half = || Scalar::from_ratio(1, 2);
    let neg = |c: Scalar| -c;
    // Indices: 0 = id, 1 = e12, 2 = e21, 3 = h.
    let table: Vec<Vec<Vec<(usize, Scalar)>>> = vec![
        vec![
            vec![(0, one())],
            vec![(1, one())],
            vec![(2, one())],
            vec![(3, one())],
        ],
        vec![
            vec![(1, one())],
            vec![],
            vec![(0, half()), (3, half())],
            vec![(1, neg(one()))],
        ],
        vec![
            vec![(2, one())],
            vec![(0, half()), (3, neg(half()))],
            vec![],
            vec![(2, one())],
        ],
        vec![
            vec![(3, one())],
            vec![(1, one())],
            vec![(2, neg(one()))],
            vec![(0, one())],
        ],
    ];
    FiniteGradedAlgebra::new(
        field,
        vec!["id".into(), "e12".into(), "e21".into(), "e11-e22".into()],
        vec![0, 0, 0, 0],
        vec![0, 1, 1, 0],
        0,
        table,
    )
    .expect("graded 2x2 matrices are associative")
}

/// A linear map between two based algebras, with the three certificate
/// flags checked exhaustively on basis elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoCertificate {
    /// Column `j` holds the target coordinates of the `j`-th source basis
    /// element.
    pub columns: Vec<Vec<Scalar>>,
    pub unital: bool,
    pub multiplicative: bool,
    pub bijective: bool,
    pub parity_preserving: bool,
}

impl IsoCertificate {
    pub fn valid(&self) -> bool {
        self.unital && self.multiplicative && self.bijective
    }

    pub fn apply(&self, source_coords: &[Scalar]) -> Vec<Scalar> {
        let target_dim = self.columns[0].len();
        let mut out = vec![Scalar::zero(); target_dim];
        for (j, c) in source_coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, x) in self.columns[j].iter().enumerate() {
                out[i] += &(x * c);
            }
        }
        out
    }
}

fn certify_map(
    source: &FiniteGradedAlgebra,
    target: &FiniteGradedAlgebra,
    columns: Vec<Vec<Scalar>>,
    target_unit: &[Scalar],
) -> IsoCertificate {
    let dim = source.dim();
    let cert = IsoCertificate {
        columns,
        unital: false,
        multiplicative: false,
        bijective: false,
        parity_preserving: false,
    };
    let unital = cert.apply(&source.unit_coords()) == target_unit;
    let bijective =
        source.dim() == target.dim() && matrix::rank(cert.columns.clone()) == source.dim();
    let mut multiplicative = true;
    for i in 0..dim {
        for j in 0..dim {
            let mut lhs = vec![Scalar::zero(); target.dim()];
            for (k, c) in source.basis_product(i, j) {
                for (t, x) in cert.columns[*k].iter().enumerate() {
                    lhs[t] += &(x * c);
                }
            }
            let rhs = target.multiply(&cert.columns[i], &cert.columns[j]);
            if lhs != rhs {
                multiplicative = false;
            }
        }
    }
    let mut parity_preserving = true;
    for j in 0..dim {
        for (i, c) in cert.columns[j].iter().enumerate() {
            if !c.is_zero() && target.parity(i) != source.parity(j) {
                parity_preserving = false;
            }
        }
    }
    IsoCertificate {
        unital,
        multiplicative,
        bijective,
        parity_preserving,
        ..cert
    }
}

/// The sign-twisted tensor product of two parity-graded algebras:
/// `(a₁⊗b₁)(a₂⊗b₂) = (−1)^{|b₁||a₂|}(a₁a₂ ⊗ b₁b₂)`.
#[derive(Debug, Clone)]
pub struct TwistedTensorAlgebra {
    algebra: FiniteGradedAlgebra,
    left: FiniteGradedAlgebra,
    right: FiniteGradedAlgebra,
}

impl TwistedTensorAlgebra {
    pub fn algebra(&self) -> &FiniteGradedAlgebra {
        &self.algebra
    }

    pub fn left(&self) -> &FiniteGradedAlgebra {
        &self.left
    }

    pub fn right(&self) -> &FiniteGradedAlgebra {
        &self.right
    }

    pub fn left_dim(&self) -> usize {
        self.left.dim()
    }

    pub fn right_dim(&self) -> usize {
        self.right.dim()
    }

    pub fn pair_index(&self, left: usize, right: usize) -> usize {
        left * self.right.dim() + right
    }

    /// Coordinates of the pure tensor `a ⊗ b`.
    pub fn tensor_coords(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.algebra.dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if !cb.is_zero() {
                    out[self.pair_index(i, j)] = ca * cb;
                }
            }
        }
        out
    }
}

pub fn twisted_tensor(
    left: &FiniteGradedAlgebra,
    right: &FiniteGradedAlgebra,
) -> Result<TwistedTensorAlgebra> {
    if left.field() != right.field() {
        return Err(Error::MixedField);
    }
    let (ld, rd) = (left.dim(), right.dim());
    let dim = ld * rd;
    let index = |i: usize, j: usize| i * rd + j;
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    let mut parities = Vec::with_capacity(dim);
    for i in 0..ld {
        for j in 0..rd {
            labels.push(format!("{}⊗{}", left.labels()[i], right.labels()[j]));
            degrees.push(left.degree(i) + right.degree(j));
            parities.push((left.parity(i) + right.parity(j)) % 2);
        }
    }
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for i1 in 0..ld {
        for j1 in 0..rd {
            for i2 in 0..ld {
                for j2 in 0..rd {
                    let sign = if right.parity(j1) == 1 && left.parity(i2) == 1 {
                        -Scalar::one()
                    } else {
                        Scalar::one()
                    };
                    let mut entries = Vec::new();
                    for (k1, c1) in left.basis_product(i1, i2) {
                        for (k2, c2) in right.basis_product(j1, j2) {
                            let c = &(c1 * c2) * &sign;
                            if !c.is_zero() {
                                entries.push((index(*k1, *k2), c));
                            }
                        }
                    }
                    entries.sort_by_key(|(k, _)| *k);
                    table[index(i1, j1)][index(i2, j2)] = entries;
                }
            }
        }
    }
    let unit = index(left.unit_index(), right.unit_index());
    let algebra = FiniteGradedAlgebra::new(left.field(), labels, degrees, parities, unit, table)?;
    Ok(TwistedTensorAlgebra {
        algebra,
        left: left.clone(),
        right: right.clone(),
    })
}

/// Certificate for the classical isomorphism from the twisted square of
/// the order-two group algebra onto graded 2×2 matrices. Needs √−1.
pub fn upsilon_iso_check(field: FieldKind) -> Result<IsoCertificate> {
    if !field.contains_i() {
        return Err(Error::FieldLacksI);
    }
    let cg = group_algebra_z2(field);
    let source = twisted_tensor(&cg, &cg)?;
    let target = matrix_algebra_2x2(field);
    let i = Scalar::i();
    let zero = Scalar::zero;
    let one = Scalar::one;
    // Source basis order: (1,1), (1,a), (a,1), (a,a).
    // Target basis order: id, e12, e21, e11−e22.
    let columns = vec![
        vec![one(), zero(), zero(), zero()],
        vec![zero(), one(), one(), zero()],
        vec![zero(), i.clone(), -i.clone(), zero()],
        vec![zero(), zero(), zero(), i.clone()],
    ];
    let identity = vec![one(), zero(), zero(), zero()];
    Ok(certify_map(source.algebra(), &target, columns, &identity))
}

/// Everything built for one trivial-extension comparison.
#[derive(Debug, Clone)]
pub struct TildeIsoData {
    pub extended_presentation: QuadraticPresentation,
    pub extended_theta: CliffordMap,
    pub certificate: IsoCertificate,
    /// The twisted product the extension was compared against.
    pub product: TwistedTensorAlgebra,
}

/// Compare the deformation of the trivial extension against the twisted
/// product of the base deformation with the group algebra, through the
/// generator assignment `x ↦ x⊗1`, `v ↦ 1⊗a`.
pub fn tilde_iso_check(theta: &CliffordMap) -> Result<TildeIsoData> {
    let base = build_deformation(theta)?;
    let extended_theta = extend_clifford_map(theta)?;
    let extended = build_deformation(&extended_theta)?;
    let field = theta.presentation().field();
    let cg = group_algebra_z2(field);
    let product = twisted_tensor(base.algebra(), &cg)?;
    let n = theta.presentation().n_gens();

    // Generator images.
    let mut images: Vec<Vec<Scalar>> = Vec::with_capacity(n + 1);
    for g in 0..n {
        let class = base.word_coords(&Word::single(g));
        let mut cg_unit = vec![Scalar::zero(); 2];
        cg_unit[0] = Scalar::one();
        images.push(product.tensor_coords(&class, &cg_unit));
    }
    let mut alpha = vec![Scalar::zero(); 2];
    alpha[1] = Scalar::one();
    images.push(product.tensor_coords(&base.algebra().unit_coords(), &alpha));

    // Well-definedness: each deformed extended relation must map to zero.
    let e_ext = extended_theta.presentation();
    let apply_degree2 = |t: &Tensor| -> Vec<Scalar> {
        let mut acc = vec![Scalar::zero(); product.algebra().dim()];
        for (w, c) in t.terms() {
            let letters: Vec<usize> = w.letters().collect();
            let img = product
                .algebra()
                .multiply(&images[letters[0]], &images[letters[1]]);
            for (k, x) in img.iter().enumerate() {
                acc[k] += &(x * c);
            }
        }
        acc
    };
    for (t, (relation, value)) in e_ext
        .relations()
        .basis()
        .iter()
        .zip(extended_theta.values())
        .enumerate()
    {
        let mut image = apply_degree2(relation);
        for (k, u) in product.algebra().unit_coords().into_iter().enumerate() {
            image[k] = &image[k] - &(&u * value);
        }
        if image.iter().any(|c| !c.is_zero()) {
            return Err(Error::RelationNotKilled(t));
        }
    }

    // Induced linear map on the extended basis.
    let columns: Vec<Vec<Scalar>> = extended
        .normal_words()
        .iter()
        .map(|w| {
            let mut acc = product.algebra().unit_coords();
            for g in w.letters() {
                acc = product.algebra().multiply(&acc, &images[g]);
            }
            acc
        })
        .collect();
    let certificate = certify_map(
        extended.algebra(),
        product.algebra(),
        columns,
        &product.algebra().unit_coords(),
    );
    Ok(TildeIsoData {
        extended_presentation: e_ext.clone(),
        extended_theta,
        certificate,
        product,
    })
}

/// Ambient extension by one or two commuting square roots, together with
/// the agreement check between the two routes to the extended map.
#[derive(Debug, Clone)]
pub struct CoverData {
    pub cover: HypersurfaceInput,
    pub theta_direct: CliffordMap,
    pub theta_extended: CliffordMap,
    /// Presentations identical and value vectors equal.
    pub theta_agreement: bool,
}

fn extend_ambient(s: &QuadraticPresentation) -> Result<QuadraticPresentation> {
    let field = s.field();
    let n = s.n_gens();
    let mut generators = s.generators().to_vec();
    generators.push(fresh_generator_name(&generators)?);
    let mut relations: Vec<Tensor> = s.relations().basis().to_vec();
    for g in 0..n {
        relations.push(
            Tensor::monomial(field, Word::from_indices(&[g, n]))
                .sub(&Tensor::monomial(field, Word::from_indices(&[n, g])))?,
        );
    }
    QuadraticPresentation::with_limits(field, generators, relations, s.limits())
}

/// `S ↦ S[v]` with central element `z + v²`, iterated `times` (1 or 2).
/// The deformation map of the cover must equal the extension of the base
/// deformation map, exactly, after the canonical identification of the
/// dual presentations.
pub fn double_branched_cover_dual(input: &HypersurfaceInput, times: usize) -> Result<CoverData> {
    assert!(times == 1 || times == 2, "only first and second covers");
    let mut current = input.clone();
    let mut theta_ext = theta_from_central(input)?;
    for _ in 0..times {
        let s_ext = extend_ambient(current.ambient())?;
        let n_old = current.ambient().n_gens();
        let z_ext = current.central().add(&Tensor::monomial(
            s_ext.field(),
            Word::from_indices(&[n_old, n_old]),
        ))?;
        current = HypersurfaceInput::new(s_ext, z_ext, current.hypotheses())?;
        theta_ext = extend_clifford_map(&theta_ext)?;
    }
    let theta_direct = theta_from_central(&current)?;
    let theta_agreement = theta_direct.presentation() == theta_ext.presentation()
        && theta_direct.values() == theta_ext.values();
    Ok(CoverData {
        cover: current,
        theta_direct,
        theta_extended: theta_ext,
        theta_agreement,
    })
}

/// The three sub-certificates realizing the double-extension equivalence:
/// a proper even idempotent, a corner isomorphism from the base
/// deformation, and fullness of the idempotent's two-sided ideal.
#[derive(Debug, Clone)]
pub struct KnorrerBundle {
    pub base_dim: usize,
    pub double_dim: usize,
    pub idempotent: Vec<Scalar>,
    pub idempotent_ok: bool,
    pub idempotent_proper: bool,
    pub corner_iso_ok: bool,
    pub fullness_ok: bool,
    pub first_extension: IsoCertificate,
    pub second_extension: IsoCertificate,
}

impl KnorrerBundle {
    pub fn pass(&self) -> bool {
        self.idempotent_ok
            && self.idempotent_proper
            && self.corner_iso_ok
            && self.fullness_ok
            && self.first_extension.valid()
            && self.second_extension.valid()
    }
}

pub fn knorrer_corner_witness(theta: &CliffordMap) -> Result<KnorrerBundle> {
    let field = theta.presentation().field();
    if !field.contains_i() {
        return Err(Error::FieldLacksI);
    }
    let base = build_deformation(theta)?;
    let d = base.dim();

    // First extension and its certificate ψ₁: D̃ → D ⊗ CG.
    let first = tilde_iso_check(theta)?;
    // Second extension ψ₂: D̃̃ → D̃ ⊗ CG.
    let second = tilde_iso_check(&first.extended_theta)?;
    if !first.certificate.valid() || !second.certificate.valid() {
        return Err(Error::StructureViolation("extension certificate"));
    }
    let double = build_deformation(&second.extended_theta)?;
    let dim2 = double.dim();

    // χ = (ψ₁ ⊗ id) ∘ ψ₂ : D̃̃ → (D ⊗ CG) ⊗ CG, flattened.
    let cg = group_algebra_z2(field);
    let t1 = &first.product; // D ⊗ CG
    let t2 = twisted_tensor(t1.algebra(), &cg)?; // (D ⊗ CG) ⊗ CG
    let d_tilde_dim = first.certificate.columns.len();
    let chi_columns: Vec<Vec<Scalar>> = second
        .certificate
        .columns
        .iter()
        .map(|col| {
            // col lives in D̃ ⊗ CG; push D̃ through ψ₁ blockwise.
            let mut out = vec![Scalar::zero(); t2.algebra().dim()];
            for (idx, c) in col.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (i, g) = (idx / 2, idx % 2);
                debug_assert!(i < d_tilde_dim);
                for (k, x) in first.certificate.columns[i].iter().enumerate() {
                    out[t2.pair_index(k, g)] += &(x * c);
                }
            }
            out
        })
        .collect();

    // u = 1_D ⊗ Υ⁻¹(e11) = ½(1⊗1⊗1) − ½i(1⊗a⊗a).
    let half = Scalar::from_ratio(1, 2);
    let half_i = &half * &Scalar::i();
    let unit_d = base.algebra().unit_coords();
    let mut u = vec![Scalar::zero(); t2.algebra().dim()];
    for (i, c) in unit_d.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        // (i, 1, 1) with coefficient ½c and (i, a, a) with −½i·c.
        u[t2.pair_index(t1.pair_index(i, 0), 0)] += &(c * &half);
        u[t2.pair_index(t1.pair_index(i, 1), 1)] -= &(c * &half_i);
    }
    let e = matrix::solve_combination(&chi_columns, &u).expect("χ is bijective");

    // Idempotent checks.
    let a2 = double.algebra();
    let e_sq = a2.multiply(&e, &e);
    let even_support = e
        .iter()
        .enumerate()
        .all(|(i, c)| c.is_zero() || a2.parity(i) == 0);
    let idempotent_ok = e_sq == e && even_support;
    let is_zero = e.iter().all(Scalar::is_zero);
    let is_one = e == a2.unit_coords();
    let idempotent_proper = !is_zero && !is_one;

    // Corner map ι: D → e·D̃̃·e, a ↦ χ⁻¹(a ⊗ Υ⁻¹(e11)).
    let mut iota: Vec<Vec<Scalar>> = Vec::with_capacity(d);
    for i in 0..d {
        let mut target = vec![Scalar::zero(); t2.algebra().dim()];
        target[t2.pair_index(t1.pair_index(i, 0), 0)] = half.clone();
        target[t2.pair_index(t1.pair_index(i, 1), 1)] = -half_i.clone();
        iota.push(matrix::solve_combination(&chi_columns, &target).expect("χ is bijective"));
    }
    let injective = matrix::rank(iota.clone()) == d;
    let mut multiplicative = true;
    for i in 0..d {
        for j in 0..d {
            let mut lhs = vec![Scalar::zero(); dim2];
            for (k, c) in base.algebra().basis_product(i, j) {
                for (t, x) in iota[*k].iter().enumerate() {
                    lhs[t] += &(x * c);
                }
            }
            if lhs != a2.multiply(&iota[i], &iota[j]) {
                multiplicative = false;
            }
        }
    }
    let unit_maps_to_e = {
        let mut img = vec![Scalar::zero(); dim2];
        for (t, x) in iota[base.algebra().unit_index()].iter().enumerate() {
            img[t] = x.clone();
        }
        img == e
    };
    // Image must be exactly the corner e·D̃̃·e.
    let mut corner = CoordSpan::new(dim2);
    for k in 0..dim2 {
        let mut b = vec![Scalar::zero(); dim2];
        b[k] = Scalar::one();
        corner.insert(a2.multiply(&a2.multiply(&e, &b), &e));
    }
    let image_matches = corner.dim() == d && iota.iter().all(|v| corner.contains(v.clone()));
    let corner_iso_ok = injective && multiplicative && unit_maps_to_e && image_matches;

    // Fullness: the two-sided ideal generated by e is everything.
    let mut ideal = CoordSpan::new(dim2);
    for i in 0..dim2 {
        let mut bi = vec![Scalar::zero(); dim2];
        bi[i] = Scalar::one();
        let bie = a2.multiply(&bi, &e);
        for j in 0..dim2 {
            let mut bj = vec![Scalar::zero(); dim2];
            bj[j] = Scalar::one();
            ideal.insert(a2.multiply(&bie, &bj));
        }
    }
    let fullness_ok = ideal.dim() == dim2;

    Ok(KnorrerBundle {
        base_dim: d,
        double_dim: dim2,
        idempotent: e,
        idempotent_ok,
        idempotent_proper,
        corner_iso_ok,
        fullness_ok,
        first_extension: first.certificate,
        second_extension: second.certificate,
    })
}

/// Semisimplicity must transfer between a deformation and the deformation
/// of its trivial extension, provided the base map is nonzero; the zero
/// map corresponds to a vanishing central element and is gated out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TransferReport {
    OutsideHypothesis {
        reason: String,
    },
    Checked {
        base_semisimple: bool,
        extended_semisimple: bool,
        pass: bool,
    },
}

impl TransferReport {
    pub fn passed_or_gated(&self) -> bool {
        match self {
            TransferReport::OutsideHypothesis { .. } => true,
            TransferReport::Checked { pass, .. } => *pass,
        }
    }
}

pub fn knorrer_semisimple_transfer(theta: &CliffordMap) -> Result<TransferReport> {
    if theta.is_zero() {
        return Ok(TransferReport::OutsideHypothesis {
            reason: "zero deformation map corresponds to a zero central element, \
                     which is not regular"
                .to_string(),
        });
    }
    let base = build_deformation(theta)?;
    let extended_theta = extend_clifford_map(theta)?;
    let extended = build_deformation(&extended_theta)?;
    let base_semisimple = jacobson_radical(base.algebra()).semisimple;
    let extended_semisimple = jacobson_radical(extended.algebra()).semisimple;
    Ok(TransferReport::Checked {
        base_semisimple,
        extended_semisimple,
        pass: base_semisimple == extended_semisimple,
    })
}
