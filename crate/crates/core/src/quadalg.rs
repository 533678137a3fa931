//! Quadratic presentations `T(V)/(R)` and their degreewise linear algebra.
//!
//! Graded components are computed by echelonizing the ideal slices
//! `I_k = Σ V^⊗i ⊗ R ⊗ V^⊗j` degree by degree, never by rewriting-system
//! completion. The non-pivot words of `I_k` are the *normal words* of the
//! slice; every degree-`k` element has a unique normal form supported on
//! them, which makes all reported bases canonical for the declared
//! generator order.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::matrix::{self, CoordSpan};
use crate::rowspace::{PivotRule, RowSpace, SparseRow};
use crate::scalar::{FieldKind, Scalar};
use crate::subspace::Subspace;
use crate::tensor::Tensor;
use crate::word::Word;

/// Default cap on the number of words a single degree may enumerate.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Highest degree scanned when searching for a vanishing slice.
pub const TOP_DEGREE_SCAN_LIMIT: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub word_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            word_cap: DEFAULT_WORD_CAP,
        }
    }
}

/// One graded component of a quadratic algebra: the normal-word basis plus
/// the expansion of every non-normal word over it.
#[derive(Debug, Clone)]
pub struct GradedSlice {
    degree: usize,
    normal_words: Vec<Word>,
    index: BTreeMap<Word, usize>,
    lifts: BTreeMap<Word, Vec<(usize, Scalar)>>,
}

impl GradedSlice {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.normal_words.len()
    }

    pub fn normal_words(&self) -> &[Word] {
        &self.normal_words
    }

    pub fn word_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.index.contains_key(w)
    }

    /// Expansion of an arbitrary degree-matching word over the normal basis.
    pub fn reduce_word(&self, w: &Word) -> Vec<(usize, Scalar)> {
        debug_assert_eq!(w.len(), self.degree);
        if let Some(&i) = self.index.get(w) {
            return vec![(i, Scalar::one())];
        }
        self.lifts.get(w).cloned().unwrap_or_default()
    }

    /// Coordinates of a tensor after reduction to normal form.
    pub fn coords(&self, t: &Tensor) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (w, c) in t.terms() {
            for (i, e) in self.reduce_word(w) {
                out[i] += &(&e * c);
            }
        }
        out
    }

    pub fn tensor_from_coords(&self, field: FieldKind, coords: &[Scalar]) -> Tensor {
        assert_eq!(coords.len(), self.dim());
        Tensor::from_terms(
            field,
            self.degree,
            self.normal_words
                .iter()
                .zip(coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c.clone())),
        )
        .expect("normal words have the slice degree")
    }
}

/// Hilbert-series agreement check for a quadratic algebra and a candidate
/// dual: `H(t)·H_dual(−t) = 1` coefficientwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulCheck {
    pub max_degree: usize,
    pub primal_series: Vec<usize>,
    pub dual_series: Vec<usize>,
    pub pass: bool,
    /// Degree and value of the first nonvanishing convolution coefficient.
    pub first_failure: Option<(usize, i128)>,
}

/// Degreewise injectivity report for multiplication by a central element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityReport {
    pub bound: usize,
    pub per_degree: Vec<DegreeRegularity>,
    /// `None` when every degree up to the bound passed.
    pub first_failure: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRegularity {
    pub degree: usize,
    pub left_injective: bool,
    pub right_injective: bool,
}

impl RegularityReport {
    pub fn regular_up_to_bound(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// A quadratic presentation: ordered degree-1 generators and an echelonized
/// space of degree-2 relations. Slices are cached; the cache is shared by
/// clones and behaves as a write-once map.
///
/// ```
/// use qforge_core::presets;
/// use qforge_core::scalar::FieldKind;
///
/// let e = presets::exterior(FieldKind::Rationals, 2);
/// assert_eq!(e.hilbert_series(3).unwrap(), vec![1, 2, 1, 0]);
/// assert_eq!(e.quadratic_dual().hilbert_series(3).unwrap(), vec![1, 2, 3, 4]);
/// ```
#[derive(Debug, Clone)]
pub struct QuadraticPresentation {
    field: FieldKind,
    generators: Vec<String>,
    relations: Subspace,
    limits: Limits,
    slices: Arc<Mutex<BTreeMap<usize, Arc<GradedSlice>>>>,
    ideal_rows: Arc<Mutex<BTreeMap<usize, Arc<Vec<SparseRow>>>>>,
}

impl PartialEq for QuadraticPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field
            && self.generators == other.generators
            && self.relations == other.relations
    }
}

impl Eq for QuadraticPresentation {}

impl QuadraticPresentation {
    pub fn new(field: FieldKind, generators: Vec<String>, relations: Vec<Tensor>) -> Result<Self> {
        Self::with_limits(field, generators, relations, Limits::default())
    }

    pub fn with_limits(
        field: FieldKind,
        generators: Vec<String>,
        relations: Vec<Tensor>,
        limits: Limits,
    ) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.is_empty() || generators[..i].contains(g) {
                return Err(Error::DuplicateGenerator(g.clone()));
            }
        }
        for r in &relations {
            if r.degree() != 2 {
                return Err(Error::RelationDegree);
            }
        }
        let n = generators.len();
        let relations = Subspace::span(field, n, 2, relations)?;
        Ok(QuadraticPresentation {
            field,
            generators,
            relations,
            limits,
            slices: Arc::new(Mutex::new(BTreeMap::new())),
            ideal_rows: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn n_gens(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn limits(&self) -> Limits {
        self.limits
    }

    pub(crate) fn check_cap(&self, degree: usize) -> Result<usize> {
        let mut words: usize = 1;
        for _ in 0..degree {
            words = words.saturating_mul(self.n_gens());
        }
        if words > self.limits.word_cap {
            return Err(Error::ResourceBound {
                degree,
                words,
                cap: self.limits.word_cap,
            });
        }
        Ok(words)
    }

    /// Echelon basis of the degree-`k` component of the two-sided ideal (R).
    fn ideal_slice(&self, k: usize) -> Result<Arc<Vec<SparseRow>>> {
        if let Some(rows) = self.ideal_rows.lock().unwrap().get(&k) {
            return Ok(rows.clone());
        }
        self.check_cap(k)?;
        let rows = if k < 2 {
            Vec::new()
        } else {
            // I_k = V·I_{k-1} + R·V^{⊗(k-2)}
            let mut space = RowSpace::new(PivotRule::DeglexMin);
            let prev = self.ideal_slice(k - 1)?;
            for g in 0..self.n_gens() {
                for row in prev.iter() {
                    let shifted: SparseRow = row
                        .iter()
                        .map(|(w, c)| (Word::single(g).concat(w), c.clone()))
                        .collect();
                    space.insert(shifted);
                }
            }
            for v in Word::all_of_length(self.n_gens(), k - 2) {
                for r in self.relations.basis() {
                    let row: SparseRow =
                        r.terms().map(|(w, c)| (w.concat(&v), c.clone())).collect();
                    space.insert(row);
                }
            }
            space.into_sorted_rows()
        };
        let rows = Arc::new(rows);
        self.ideal_rows
            .lock()
            .unwrap()
            .entry(k)
            .or_insert_with(|| rows.clone());
        Ok(rows)
    }

    /// The degree-`k` graded component with its normal-word basis and
    /// reduction map.
    pub fn slice(&self, k: usize) -> Result<Arc<GradedSlice>> {
        if let Some(s) = self.slices.lock().unwrap().get(&k) {
            return Ok(s.clone());
        }
        self.check_cap(k)?;
        let ideal = self.ideal_slice(k)?;
        let mut pivot_of: BTreeMap<Word, &SparseRow> = BTreeMap::new();
        for row in ideal.iter() {
            let pivot = row.keys().next().expect("ideal rows are nonzero").clone();
            pivot_of.insert(pivot, row);
        }
        let mut normal_words = Vec::new();
        let mut index = BTreeMap::new();
        for w in Word::all_of_length(self.n_gens(), k) {
            if !pivot_of.contains_key(&w) {
                index.insert(w.clone(), normal_words.len());
                normal_words.push(w);
            }
        }
        let mut lifts = BTreeMap::new();
        for (pivot, row) in pivot_of {
            let expansion: Vec<(usize, Scalar)> = row
                .iter()
                .filter(|(w, _)| **w != pivot)
                .map(|(w, c)| (index[w], -c.clone()))
                .collect();
            lifts.insert(pivot, expansion);
        }
        let slice = Arc::new(GradedSlice {
            degree: k,
            normal_words,
            index,
            lifts,
        });
        self.slices
            .lock()
            .unwrap()
            .entry(k)
            .or_insert_with(|| slice.clone());
        Ok(slice)
    }

    pub fn hilbert_series(&self, max_degree: usize) -> Result<Vec<usize>> {
        (0..=max_degree).map(|k| Ok(self.slice(k)?.dim())).collect()
    }

    /// Normal form of a homogeneous element.
    pub fn reduce(&self, t: &Tensor) -> Result<Tensor> {
        if t.field() != self.field {
            return Err(Error::MixedField);
        }
        let slice = self.slice(t.degree())?;
        let coords = slice.coords(t);
        Ok(slice.tensor_from_coords(self.field, &coords))
    }

    /// Product in the algebra: concatenate representatives, reduce.
    pub fn multiply(&self, a: &Tensor, b: &Tensor) -> Result<Tensor> {
        let product = a.tensor(b)?;
        self.reduce(&product)
    }

    /// Quadratic dual: same generator names read as the dual basis,
    /// relations the annihilator of `R` under the componentwise pairing.
    pub fn quadratic_dual(&self) -> QuadraticPresentation {
        let dual_relations = self.relations.annihilator();
        QuadraticPresentation {
            field: self.field,
            generators: self.generators.clone(),
            relations: dual_relations,
            limits: self.limits,
            slices: Arc::new(Mutex::new(BTreeMap::new())),
            ideal_rows: Arc::new(Mutex::new(BTreeMap::new())),
        }
    }

    /// Elements of the degree-2 component commuting with every generator.
    /// Commutation is checked in degree 3, which suffices because the
    /// algebra is generated in degree 1. Coordinates are relative to the
    /// degree-2 normal-word basis.
    pub fn central_degree2(&self) -> Result<CoordSpan> {
        let slice2 = self.slice(2)?;
        let slice3 = self.slice(3)?;
        let dim2 = slice2.dim();
        let dim3 = slice3.dim();
        // commutator_cols[u] = coords of (u·g − g·u) stacked over all g.
        let mut rows: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); dim2]; dim3 * self.n_gens()];
        for (u_idx, u) in slice2.normal_words().iter().enumerate() {
            for g in 0..self.n_gens() {
                let ug = u.concat(&Word::single(g));
                let gu = Word::single(g).concat(u);
                let mut delta = vec![Scalar::zero(); dim3];
                for (i, c) in slice3.reduce_word(&ug) {
                    delta[i] += &c;
                }
                for (i, c) in slice3.reduce_word(&gu) {
                    delta[i] -= &c;
                }
                for (i, d) in delta.into_iter().enumerate() {
                    rows[g * dim3 + i][u_idx] = d;
                }
            }
        }
        let kernel = matrix::nullspace(rows, dim2);
        Ok(CoordSpan::from_vectors(dim2, kernel))
    }

    /// Reduce a degree-2 element and express it in slice-2 coordinates.
    pub fn degree2_coords(&self, z: &Tensor) -> Result<Vec<Scalar>> {
        if z.degree() != 2 {
            return Err(Error::MixedDegree(2, z.degree()));
        }
        if z.field() != self.field {
            return Err(Error::MixedField);
        }
        Ok(self.slice(2)?.coords(z))
    }

    /// Degreewise injectivity of left and right multiplication by `z`
    /// from each slice `k ≤ bound` into slice `k+2`.
    pub fn regular_upto(&self, z: &Tensor, bound: usize) -> Result<RegularityReport> {
        let coords = self.degree2_coords(z)?;
        if coords.iter().all(Scalar::is_zero) {
            return Err(Error::ZeroElement);
        }
        let slice2 = self.slice(2)?;
        let z_normal = slice2.tensor_from_coords(self.field, &coords);
        let mut per_degree = Vec::new();
        let mut first_failure = None;
        for k in 0..=bound {
            let source = self.slice(k)?;
            let target = self.slice(k + 2)?;
            let mut left_rows = Vec::with_capacity(source.dim());
            let mut right_rows = Vec::with_capacity(source.dim());
            for u in source.normal_words() {
                let u_t = Tensor::monomial(self.field, u.clone());
                left_rows.push(target.coords(&z_normal.tensor(&u_t)?));
                right_rows.push(target.coords(&u_t.tensor(&z_normal)?));
            }
            let left_injective = matrix::rank(left_rows) == source.dim();
            let right_injective = matrix::rank(right_rows) == source.dim();
            if !(left_injective && right_injective) && first_failure.is_none() {
                first_failure = Some(k);
            }
            per_degree.push(DegreeRegularity {
                degree: k,
                left_injective,
                right_injective,
            });
        }
        Ok(RegularityReport {
            bound,
            per_degree,
            first_failure,
        })
    }

    /// Necessary numerical condition for Koszulity:
    /// `H(t)·H_dual(−t) = 1` up to `max_degree`. A failure certifies that
    /// the algebra is not Koszul; a pass is evidence only.
    pub fn koszul_numeric_check(&self, max_degree: usize) -> Result<KoszulCheck> {
        let primal = self.hilbert_series(max_degree)?;
        let dual = self.quadratic_dual().hilbert_series(max_degree)?;
        let mut first_failure = None;
        for k in 0..=max_degree {
            let mut acc: i128 = 0;
            for j in 0..=k {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                acc += sign * (primal[k - j] as i128) * (dual[j] as i128);
            }
            let expected = if k == 0 { 1 } else { 0 };
            if acc != expected {
                first_failure = Some((k, acc));
                break;
            }
        }
        Ok(KoszulCheck {
            max_degree,
            primal_series: primal,
            dual_series: dual,
            pass: first_failure.is_none(),
            first_failure,
        })
    }

    /// Smallest `n` with `dim slice_{n+1} = 0` (so `dim slice_n ≠ 0`),
    /// scanning up to the given limit.
    pub fn top_degree(&self, scan_limit: usize) -> Result<usize> {
        let mut last_nonzero = 0;
        for k in 0..=scan_limit {
            if self.slice(k)?.dim() == 0 {
                return Ok(last_nonzero);
            }
            last_nonzero = k;
        }
        Err(Error::NoTopDegree(scan_limit))
    }
}
