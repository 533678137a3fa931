//! Canonically echelonized subspaces of tensor powers.

use crate::error::{Error, Result};
use crate::matrix;
use crate::rowspace::{PivotRule, RowSpace, SparseRow};
use crate::scalar::{FieldKind, Scalar};
use crate::tensor::Tensor;
use crate::word::Word;

/// A subspace of `V^⊗k`, stored as the unique reduced echelon basis with
/// respect to deglex word order. Two subspaces are equal iff their bases are
/// structurally equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    field: FieldKind,
    n_gens: usize,
    degree: usize,
    basis: Vec<Tensor>,
}

impl Subspace {
    pub fn zero(field: FieldKind, n_gens: usize, degree: usize) -> Self {
        Subspace {
            field,
            n_gens,
            degree,
            basis: Vec::new(),
        }
    }

    /// Echelonize the span of `vectors` inside `V^⊗degree`.
    pub fn span<I>(field: FieldKind, n_gens: usize, degree: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Tensor>,
    {
        let mut rows = RowSpace::new(PivotRule::DeglexMin);
        for t in vectors {
            if t.degree() != degree {
                return Err(Error::MixedDegree(degree, t.degree()));
            }
            if t.field() != field {
                return Err(Error::MixedField);
            }
            assert!(
                t.terms().all(|(w, _)| w.letters().all(|g| g < n_gens)),
                "word letter outside the declared generator range"
            );
            rows.insert(t.into_terms());
        }
        Ok(Subspace::from_rowspace(field, n_gens, degree, rows))
    }

    fn from_rowspace(field: FieldKind, n_gens: usize, degree: usize, rows: RowSpace) -> Self {
        let basis = rows
            .into_sorted_rows()
            .into_iter()
            .map(|r| Tensor::from_map(field, degree, r))
            .collect();
        Subspace {
            field,
            n_gens,
            degree,
            basis,
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Tensor] {
        &self.basis
    }

    /// Pivot word of each basis vector, in basis order.
    pub fn pivot_words(&self) -> Vec<Word> {
        self.basis
            .iter()
            .map(|t| t.terms().next().expect("basis vector is nonzero").0.clone())
            .collect()
    }

    fn to_rowspace(&self) -> RowSpace {
        let mut rows = RowSpace::new(PivotRule::DeglexMin);
        for t in &self.basis {
            rows.insert(t.clone().into_terms());
        }
        rows
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.degree != other.degree {
            return Err(Error::MixedDegree(self.degree, other.degree));
        }
        if self.field != other.field || self.n_gens != other.n_gens {
            return Err(Error::MixedField);
        }
        Ok(())
    }

    /// Exact membership: the residue of `t` modulo the span vanishes.
    pub fn contains(&self, t: &Tensor) -> Result<bool> {
        if t.degree() != self.degree {
            return Err(Error::MixedDegree(self.degree, t.degree()));
        }
        if t.field() != self.field {
            return Err(Error::MixedField);
        }
        Ok(self.to_rowspace().contains(t.clone().into_terms()))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let mut rows = self.to_rowspace();
        for t in &other.basis {
            rows.insert(t.clone().into_terms());
        }
        Ok(Subspace::from_rowspace(
            self.field,
            self.n_gens,
            self.degree,
            rows,
        ))
    }

    /// Intersection via the Zassenhaus double-block elimination: rows
    /// `[a|a]` for `a` in this span and `[b|0]` for `b` in the other; the
    /// echelon rows whose first block vanishes carry the intersection.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        // Encode block position as an extra leading letter so deglex order
        // visits the first block before the second.
        let tag = |block: u8, w: &Word| {
            let mut v = Vec::with_capacity(w.len() + 1);
            v.push(block);
            v.extend_from_slice(&w.0);
            Word(v)
        };
        let mut rows = RowSpace::new(PivotRule::DeglexMin);
        for a in &self.basis {
            let mut row = SparseRow::new();
            for (w, c) in a.terms() {
                row.insert(tag(0, w), c.clone());
                row.insert(tag(1, w), c.clone());
            }
            rows.insert(row);
        }
        for b in &other.basis {
            let row: SparseRow = b.terms().map(|(w, c)| (tag(0, w), c.clone())).collect();
            rows.insert(row);
        }
        let mut meet = RowSpace::new(PivotRule::DeglexMin);
        for row in rows.into_sorted_rows() {
            if row.keys().all(|w| w.0[0] == 1) {
                let untagged: SparseRow = row
                    .into_iter()
                    .map(|(w, c)| (Word(w.0[1..].to_vec()), c))
                    .collect();
                meet.insert(untagged);
            }
        }
        Ok(Subspace::from_rowspace(
            self.field,
            self.n_gens,
            self.degree,
            meet,
        ))
    }

    /// The annihilator `{f ∈ (V*)^⊗k : f(v) = 0 ∀v}` under the componentwise
    /// pairing; dual functionals are indexed by the same words.
    pub fn annihilator(&self) -> Subspace {
        let words = Word::all_of_length(self.n_gens, self.degree);
        let rows: Vec<Vec<Scalar>> = self
            .basis
            .iter()
            .map(|t| words.iter().map(|w| t.coefficient(w)).collect())
            .collect();
        let kernel = matrix::nullspace(rows, words.len());
        let mut out = RowSpace::new(PivotRule::DeglexMin);
        for v in kernel {
            let row: SparseRow = words
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(w, c)| (w.clone(), c))
                .collect();
            out.insert(row);
        }
        Subspace::from_rowspace(self.field, self.n_gens, self.degree, out)
    }
}
