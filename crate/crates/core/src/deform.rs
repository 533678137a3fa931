//! Deformed algebras as explicit structure-constant tables.
//!
//! `build_deformation` quotients the truncated filtered tensor space
//! `T_{≤n+1}(V)` by the span of `u·(r − θ(r))·v` and checks that the
//! quotient dimension equals `dim E`. That dimension equality is the
//! whole content of the flatness theorem for admissible θ, so it runs as
//! an assertion on every build; a collapse is fatal.

use std::collections::BTreeMap;

use crate::clifford::{clifford_condition, CliffordMap};
use crate::error::{Error, Result};
use crate::matrix::CoordSpan;
use crate::quadalg::{QuadraticPresentation, TOP_DEGREE_SCAN_LIMIT};
use crate::rowspace::{PivotRule, RowSpace, SparseRow};
use crate::scalar::{FieldKind, Scalar};
use crate::tensor::Tensor;
use crate::word::Word;

pub type SparseVec = Vec<(usize, Scalar)>;

/// A finite-dimensional algebra with an explicit basis, structure
/// constants, a parity (ℤ₂) grading, and a filtration degree per basis
/// element. Unit law, associativity, and parity homogeneity are verified
/// exhaustively at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGradedAlgebra {
    field: FieldKind,
    labels: Vec<String>,
    degrees: Vec<usize>,
    parities: Vec<u8>,
    unit: usize,
    table: Vec<Vec<SparseVec>>,
}

impl FiniteGradedAlgebra {
    pub fn new(
        field: FieldKind,
        labels: Vec<String>,
        degrees: Vec<usize>,
        parities: Vec<u8>,
        unit: usize,
        table: Vec<Vec<SparseVec>>,
    ) -> Result<Self> {
        let a = FiniteGradedAlgebra {
            field,
            labels,
            degrees,
            parities,
            unit,
            table,
        };
        a.verify()?;
        Ok(a)
    }

    fn verify(&self) -> Result<()> {
        let dim = self.dim();
        assert_eq!(self.degrees.len(), dim);
        assert_eq!(self.parities.len(), dim);
        assert_eq!(self.table.len(), dim);
        assert!(self.table.iter().all(|row| row.len() == dim));
        // Unit law.
        for j in 0..dim {
            if !is_unit_vector(&self.table[self.unit][j], j)
                || !is_unit_vector(&self.table[j][self.unit], j)
            {
                return Err(Error::StructureViolation("unit law"));
            }
        }
        // Parity homogeneity of every product.
        for i in 0..dim {
            for j in 0..dim {
                let parity = (self.parities[i] + self.parities[j]) % 2;
                for (k, c) in &self.table[i][j] {
                    if !c.is_zero() && self.parities[*k] != parity {
                        return Err(Error::StructureViolation("parity homogeneity"));
                    }
                }
            }
        }
        // Associativity on all basis triples.
        for i in 0..dim {
            for j in 0..dim {
                let ij = self.table[i][j].clone();
                for k in 0..dim {
                    let left = self.multiply_sparse(&ij, &unit_sparse(k));
                    let right = self.multiply_sparse(&unit_sparse(i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::StructureViolation("associativity"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degree(&self, i: usize) -> usize {
        self.degrees[i]
    }

    pub fn parity(&self, i: usize) -> u8 {
        self.parities[i]
    }

    pub fn parities(&self) -> &[u8] {
        &self.parities
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn unit_coords(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[self.unit] = Scalar::one();
        v
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i][j]
    }

    fn multiply_sparse(&self, a: &SparseVec, b: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (i, ca) in a {
            for (j, cb) in b {
                let c = ca * cb;
                for (k, ck) in &self.table[*i][*j] {
                    let entry = acc.entry(*k).or_insert_with(Scalar::zero);
                    *entry += &(&c * ck);
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        acc.into_iter().collect()
    }

    /// Product of two coordinate vectors.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(a.len(), self.dim());
        assert_eq!(b.len(), self.dim());
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ca) in a.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (j, cb) in b.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let c = ca * cb;
                for (k, ck) in &self.table[i][j] {
                    out[*k] += &(&c * ck);
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a` in the basis (column `j` holds
    /// the coordinates of `a·bⱼ`).
    pub fn left_matrix(&self, a: &[Scalar]) -> Vec<Vec<Scalar>> {
        let dim = self.dim();
        let mut m = vec![vec![Scalar::zero(); dim]; dim];
        for (i, c) in a.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for j in 0..dim {
                for (k, ck) in &self.table[i][j] {
                    m[*k][j] += &(c * ck);
                }
            }
        }
        m
    }

    /// Indices of the even and odd parts.
    pub fn parity_split(&self) -> (Vec<usize>, Vec<usize>) {
        let even = (0..self.dim()).filter(|&i| self.parities[i] == 0).collect();
        let odd = (0..self.dim()).filter(|&i| self.parities[i] == 1).collect();
        (even, odd)
    }
}

fn is_unit_vector(v: &SparseVec, j: usize) -> bool {
    v.len() == 1 && v[0].0 == j && v[0].1.is_one()
}

fn unit_sparse(i: usize) -> SparseVec {
    vec![(i, Scalar::one())]
}

/// Even/odd dimension split.
pub fn z2_components(a: &FiniteGradedAlgebra) -> (usize, usize, (Vec<usize>, Vec<usize>)) {
    let (even, odd) = a.parity_split();
    (even.len(), odd.len(), (even, odd))
}

/// True iff odd·odd spans the even part and even·odd spans the odd part.
pub fn strong_grading_check(a: &FiniteGradedAlgebra) -> bool {
    let dim = a.dim();
    let (even, odd) = a.parity_split();
    let mut odd_odd = CoordSpan::new(dim);
    for &i in &odd {
        for &j in &odd {
            let mut v = vec![Scalar::zero(); dim];
            for (k, c) in a.basis_product(i, j) {
                v[*k] = c.clone();
            }
            odd_odd.insert(v);
        }
    }
    if odd_odd.dim() != even.len() {
        return false;
    }
    let mut even_odd = CoordSpan::new(dim);
    for &i in &even {
        for &j in &odd {
            let mut v = vec![Scalar::zero(); dim];
            for (k, c) in a.basis_product(i, j) {
                v[*k] = c.clone();
            }
            even_odd.insert(v);
        }
    }
    even_odd.dim() == odd.len()
}

/// Truncated quotient of the filtered tensor space by the deformed
/// relation ideal, with the word-indexed reduction map.
struct TruncatedQuotient {
    bound: usize,
    normal_words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    rows: RowSpace,
}

impl TruncatedQuotient {
    fn dim(&self) -> usize {
        self.normal_words.len()
    }

    fn reduce_row(&self, row: SparseRow) -> Vec<(usize, Scalar)> {
        self.rows
            .reduce(row)
            .into_iter()
            .map(|(w, c)| (self.index[&w], c))
            .collect()
    }
}

fn truncated_quotient(
    e: &QuadraticPresentation,
    theta_values: &[Scalar],
    bound: usize,
) -> Result<TruncatedQuotient> {
    if theta_values.len() != e.relations().dim() {
        return Err(Error::DimensionMismatch {
            expected: e.relations().dim(),
            got: theta_values.len(),
        });
    }
    e.check_cap(bound)?;
    let n_gens = e.n_gens();
    // Deformed relation rows: r − θ(r)·1.
    let deformed: Vec<SparseRow> = e
        .relations()
        .basis()
        .iter()
        .zip(theta_values)
        .map(|(r, v)| {
            let mut row: SparseRow = r.terms().map(|(w, c)| (w.clone(), c.clone())).collect();
            if !v.is_zero() {
                row.insert(Word::empty(), -v.clone());
            }
            row
        })
        .collect();
    let mut space = RowSpace::new(PivotRule::FilteredTop);
    for pad in 0..=bound.saturating_sub(2) {
        for left_len in 0..=pad {
            let right_len = pad - left_len;
            for u in Word::all_of_length(n_gens, left_len) {
                for v in Word::all_of_length(n_gens, right_len) {
                    for row in &deformed {
                        let shifted: SparseRow = row
                            .iter()
                            .map(|(w, c)| (u.concat(w).concat(&v), c.clone()))
                            .collect();
                        space.insert(shifted);
                    }
                }
            }
        }
    }
    space.finalize();
    let mut normal_words = Vec::new();
    let mut index = BTreeMap::new();
    for k in 0..=bound {
        for w in Word::all_of_length(n_gens, k) {
            if !space.is_pivot(&w) {
                index.insert(w.clone(), normal_words.len());
                normal_words.push(w);
            }
        }
    }
    Ok(TruncatedQuotient {
        bound,
        normal_words,
        index,
        rows: space,
    })
}

/// Dimension report of the truncated quotient at two stabilization bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbwReport {
    pub expected_dim: usize,
    pub dim_at_bound: usize,
    pub dim_at_next: usize,
    pub bounds: (usize, usize),
    pub pass: bool,
}

/// Recompute the truncated quotient at bounds `n+1` and `n+2`; the
/// deformation is flat exactly when both dimensions equal `dim E`.
pub fn pbw_check(e: &QuadraticPresentation, theta_values: &[Scalar]) -> Result<PbwReport> {
    let top = e.top_degree(TOP_DEGREE_SCAN_LIMIT)?;
    let expected: usize = e.hilbert_series(top)?.iter().sum();
    let q1 = truncated_quotient(e, theta_values, top + 1)?;
    let q2 = truncated_quotient(e, theta_values, top + 2)?;
    Ok(PbwReport {
        expected_dim: expected,
        dim_at_bound: q1.dim(),
        dim_at_next: q2.dim(),
        bounds: (top + 1, top + 2),
        pass: q1.dim() == expected && q2.dim() == expected,
    })
}

/// A deformed algebra together with its word-level reduction data.
#[derive(Debug, Clone)]
pub struct CliffordDeformation {
    theta: CliffordMap,
    algebra: FiniteGradedAlgebra,
    normal_words: Vec<Word>,
    top_degree: usize,
    generator_actions: Vec<Vec<Vec<Scalar>>>,
}

impl CliffordDeformation {
    pub fn theta(&self) -> &CliffordMap {
        &self.theta
    }

    pub fn presentation(&self) -> &QuadraticPresentation {
        self.theta.presentation()
    }

    pub fn algebra(&self) -> &FiniteGradedAlgebra {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn top_degree(&self) -> usize {
        self.top_degree
    }

    pub fn normal_words(&self) -> &[Word] {
        &self.normal_words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.normal_words.iter().position(|u| u == w)
    }

    /// Coordinates of the class of an arbitrary word, computed by folding
    /// generator actions; words of any length stay inside the truncation.
    pub fn word_coords(&self, w: &Word) -> Vec<Scalar> {
        let mut v = self.algebra.unit_coords();
        for g in w.letters().collect::<Vec<_>>().into_iter().rev() {
            v = apply_matrix(&self.generator_actions[g], &v);
        }
        v
    }

    /// Coordinates of the class of a homogeneous element.
    pub fn tensor_coords(&self, t: &Tensor) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (w, c) in t.terms() {
            for (i, x) in self.word_coords(w).into_iter().enumerate() {
                out[i] += &(&x * c);
            }
        }
        out
    }
}

fn apply_matrix(m: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); m.len()];
    for (j, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (i, row) in m.iter().enumerate() {
            if !row[j].is_zero() {
                out[i] += &(&row[j] * c);
            }
        }
    }
    out
}

/// Build the deformed algebra for a validated map.
///
/// ```
/// use qforge_core::clifford::CliffordMap;
/// use qforge_core::deform::build_deformation;
/// use qforge_core::presets;
/// use qforge_core::scalar::{FieldKind, Scalar};
///
/// let e = presets::exterior(FieldKind::Rationals, 2);
/// // x² ↦ 1, xy+yx ↦ 0, y² ↦ 1 against the echelon relation basis.
/// let one = Scalar::one();
/// let theta = CliffordMap::new(e, vec![one.clone(), Scalar::zero(), one]).unwrap();
/// let d = build_deformation(&theta).unwrap();
/// assert_eq!(d.dim(), 4);
/// ```
pub fn build_deformation(theta: &CliffordMap) -> Result<CliffordDeformation> {
    // Precondition recheck: the stored values must still satisfy the
    // overlap condition for this presentation.
    let report = clifford_condition(theta.presentation(), theta.values())?;
    if !report.holds {
        return Err(Error::NotClifford {
            violations: report.violated.len(),
        });
    }
    build_deformation_unchecked(theta.presentation().clone(), theta.values().to_vec())
}

/// Build without the admissibility recheck. A non-admissible map surfaces
/// as `PbwFailure` when the quotient dimension collapses.
pub fn build_deformation_unchecked(
    e: QuadraticPresentation,
    theta_values: Vec<Scalar>,
) -> Result<CliffordDeformation> {
    let top = e.top_degree(TOP_DEGREE_SCAN_LIMIT)?;
    let series = e.hilbert_series(top)?;
    let expected: usize = series.iter().sum();
    let quotient = truncated_quotient(&e, &theta_values, top + 1)?;
    if quotient.dim() != expected {
        return Err(Error::PbwFailure {
            expected,
            got: quotient.dim(),
            bound: quotient.bound,
        });
    }
    // The surviving words must be exactly the graded normal words.
    let mut graded_normals: Vec<Word> = Vec::new();
    for k in 0..=top {
        graded_normals.extend(e.slice(k)?.normal_words().iter().cloned());
    }
    graded_normals.sort();
    let mut quotient_normals = quotient.normal_words.clone();
    quotient_normals.sort();
    assert_eq!(
        graded_normals, quotient_normals,
        "flat quotient must preserve the graded normal words"
    );

    let normal_words = quotient.normal_words.clone();
    let dim = normal_words.len();
    let n_gens = e.n_gens();
    // Generator action matrices from single-step reductions.
    let mut generator_actions = Vec::with_capacity(n_gens);
    for g in 0..n_gens {
        let mut m = vec![vec![Scalar::zero(); dim]; dim];
        for (j, w) in normal_words.iter().enumerate() {
            let gw = Word::single(g).concat(w);
            let row: SparseRow = [(gw, Scalar::one())].into_iter().collect();
            for (i, c) in quotient.reduce_row(row) {
                m[i][j] = c;
            }
        }
        generator_actions.push(m);
    }
    // Structure constants by composing generator actions along each word.
    let mut table = vec![vec![Vec::new(); dim]; dim];
    for (j, _) in normal_words.iter().enumerate() {
        let mut col = vec![Scalar::zero(); dim];
        col[j] = Scalar::one();
        for (i, w) in normal_words.iter().enumerate() {
            let mut v = col.clone();
            for g in w.letters().collect::<Vec<_>>().into_iter().rev() {
                v = apply_matrix(&generator_actions[g], &v);
            }
            table[i][j] = v
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .collect();
        }
    }
    let unit = normal_words
        .iter()
        .position(Word::is_empty)
        .expect("degree-0 normal word survives");
    let labels = normal_words
        .iter()
        .map(|w| w.display(e.generators()).to_string())
        .collect();
    let degrees = normal_words.iter().map(Word::len).collect();
    let parities = normal_words.iter().map(|w| (w.len() % 2) as u8).collect();
    let algebra = FiniteGradedAlgebra::new(e.field(), labels, degrees, parities, unit, table)?;
    let theta = match CliffordMap::new(e.clone(), theta_values.clone()) {
        Ok(theta) => theta,
        Err(Error::NotClifford { .. }) => {
            // An inadmissible map can keep the dimension inside a short
            // truncation window; the next bound exposes the collapse.
            let got = truncated_quotient(&e, &theta_values, top + 2)?.dim();
            return Err(Error::PbwFailure {
                expected,
                got,
                bound: top + 2,
            });
        }
        Err(other) => return Err(other),
    };
    Ok(CliffordDeformation {
        theta,
        algebra,
        normal_words,
        top_degree: top,
        generator_actions,
    })
}

/// Gram matrix of the pairing `⟨a,b⟩ = φ(ab)`, where φ extracts the
/// coefficient of the unique top-degree basis word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilinearFormMatrix {
    gram: Vec<Vec<Scalar>>,
    parity: u8,
}

impl BilinearFormMatrix {
    pub fn gram(&self) -> &[Vec<Scalar>] {
        &self.gram
    }

    pub fn parity(&self) -> u8 {
        self.parity
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Scalar {
        &self.gram[i][j]
    }
}

pub fn frobenius_form(d: &CliffordDeformation) -> Result<BilinearFormMatrix> {
    let a = d.algebra();
    let n = d.top_degree();
    let top_indices: Vec<usize> = (0..a.dim()).filter(|&i| a.degree(i) == n).collect();
    if top_indices.len() != 1 {
        return Err(Error::NotFrobeniusTop(top_indices.len()));
    }
    let top = top_indices[0];
    let dim = a.dim();
    let mut gram = vec![vec![Scalar::zero(); dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            for (k, c) in a.basis_product(i, j) {
                if *k == top {
                    gram[i][j] = c.clone();
                }
            }
        }
    }
    let rank = crate::matrix::rank(gram.clone());
    if rank != dim {
        return Err(Error::NondegeneracyFailure { rank, dim });
    }
    let parity = (n % 2) as u8;
    // Homogeneity: ⟨a,b⟩ = 0 unless parity(a)+parity(b) ≡ parity.
    for i in 0..dim {
        for j in 0..dim {
            if !gram[i][j].is_zero() && (a.parity(i) + a.parity(j)) % 2 != parity {
                return Err(Error::StructureViolation("form parity homogeneity"));
            }
        }
    }
    // Associativity ⟨ab,c⟩ = ⟨a,bc⟩ on all basis triples.
    for i in 0..dim {
        for j in 0..dim {
            for k in 0..dim {
                let mut left = Scalar::zero();
                for (t, c) in a.basis_product(i, j) {
                    left += &(c * &gram[*t][k]);
                }
                let mut right = Scalar::zero();
                for (t, c) in a.basis_product(j, k) {
                    right += &(&gram[i][*t] * c);
                }
                if left != right {
                    return Err(Error::StructureViolation("form associativity"));
                }
            }
        }
    }
    Ok(BilinearFormMatrix { gram, parity })
}
