//! Homogeneous elements of tensor powers of the generating space.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{FieldKind, Scalar};
use crate::word::Word;

/// A sparse element of `V^⊗k`: a scalar combination of words of one length,
/// with no zero coefficients stored and terms kept sorted by word order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tensor {
    field: FieldKind,
    degree: usize,
    terms: BTreeMap<Word, Scalar>,
}

impl Tensor {
    pub fn zero(field: FieldKind, degree: usize) -> Self {
        Tensor {
            field,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// Build from `(word, coefficient)` pairs; repeated words accumulate.
    pub fn from_terms<I>(field: FieldKind, degree: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Word, Scalar)>,
    {
        let mut map: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (w, c) in terms {
            if w.len() != degree {
                return Err(Error::MixedDegree(degree, w.len()));
            }
            if !c.fits(field) {
                return Err(Error::FieldLacksI);
            }
            let entry = map.entry(w).or_insert_with(Scalar::zero);
            *entry += &c;
        }
        map.retain(|_, c| !c.is_zero());
        Ok(Tensor {
            field,
            degree,
            terms: map,
        })
    }

    /// The monomial `1·w`.
    pub fn monomial(field: FieldKind, word: Word) -> Self {
        let degree = word.len();
        let mut terms = BTreeMap::new();
        terms.insert(word, Scalar::one());
        Tensor {
            field,
            degree,
            terms,
        }
    }

    pub fn field(&self) -> FieldKind {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub(crate) fn from_map(field: FieldKind, degree: usize, terms: BTreeMap<Word, Scalar>) -> Self {
        debug_assert!(terms.keys().all(|w| w.len() == degree));
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Tensor {
            field,
            degree,
            terms,
        }
    }

    pub fn add(&self, other: &Tensor) -> Result<Tensor> {
        if self.degree != other.degree {
            return Err(Error::MixedDegree(self.degree, other.degree));
        }
        if self.field != other.field {
            return Err(Error::MixedField);
        }
        let mut terms = self.terms.clone();
        for (w, c) in &other.terms {
            let entry = terms.entry(w.clone()).or_insert_with(Scalar::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Tensor {
            field: self.field,
            degree: self.degree,
            terms,
        })
    }

    pub fn scale(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero(self.field, self.degree);
        }
        Tensor {
            field: self.field,
            degree: self.degree,
            terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect(),
        }
    }

    pub fn sub(&self, other: &Tensor) -> Result<Tensor> {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Tensor product: degrees add, words concatenate.
    pub fn tensor(&self, other: &Tensor) -> Result<Tensor> {
        if self.field != other.field {
            return Err(Error::MixedField);
        }
        let mut terms: BTreeMap<Word, Scalar> = BTreeMap::new();
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                let w = u.concat(v);
                let entry = terms.entry(w).or_insert_with(Scalar::zero);
                *entry += &(a * b);
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Tensor {
            field: self.field,
            degree: self.degree + other.degree,
            terms,
        })
    }

    /// The componentwise dual pairing `⟨α, v⟩ = Σ α_w v_w` over matching words.
    /// `self` is read as an element of the dual tensor power.
    pub fn pair(&self, other: &Tensor) -> Result<Scalar> {
        if self.degree != other.degree {
            return Err(Error::MixedDegree(self.degree, other.degree));
        }
        let mut acc = Scalar::zero();
        for (w, a) in &self.terms {
            if let Some(b) = other.terms.get(w) {
                acc += &(a * b);
            }
        }
        Ok(acc)
    }

    /// Render as a polynomial in the given generator names.
    pub fn display<'a>(&'a self, names: &'a [String]) -> TensorDisplay<'a> {
        TensorDisplay {
            tensor: self,
            names,
        }
    }
}

pub struct TensorDisplay<'a> {
    tensor: &'a Tensor,
    names: &'a [String],
}

impl fmt::Display for TensorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.tensor.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (w, c) in self.tensor.terms() {
            let neg = c.is_negative_real();
            if first {
                if neg {
                    f.write_str("-")?;
                }
                first = false;
            } else if neg {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            let mag = if neg { -c.clone() } else { c.clone() };
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{}", w.display(self.names))?;
            } else {
                write!(f, "{}*{}", mag, w.display(self.names))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(ix: &[usize]) -> Word {
        Word::from_indices(ix)
    }

    #[test]
    fn terms_collapse_and_drop_zeros() {
        let t = Tensor::from_terms(
            FieldKind::Rationals,
            2,
            vec![
                (w(&[0, 1]), Scalar::one()),
                (w(&[0, 1]), -Scalar::one()),
                (w(&[1, 0]), Scalar::from_integer(2)),
            ],
        )
        .unwrap();
        assert_eq!(t.support_len(), 1);
        assert_eq!(t.coefficient(&w(&[1, 0])), Scalar::from_integer(2));
    }

    #[test]
    fn degree_and_field_are_enforced() {
        let bad = Tensor::from_terms(FieldKind::Rationals, 2, vec![(w(&[0]), Scalar::one())]);
        assert_eq!(bad.unwrap_err(), Error::MixedDegree(2, 1));
        let bad = Tensor::from_terms(FieldKind::Rationals, 1, vec![(w(&[0]), Scalar::i())]);
        assert_eq!(bad.unwrap_err(), Error::FieldLacksI);
        assert!(Tensor::from_terms(
            FieldKind::GaussianRationals,
            1,
            vec![(w(&[0]), Scalar::i())]
        )
        .is_ok());
    }

    #[test]
    fn pairing_is_componentwise() {
        // ⟨x*y* , x⊗y − y⊗x⟩ = 1
        let alpha = Tensor::monomial(FieldKind::Rationals, w(&[0, 1]));
        let v = Tensor::from_terms(
            FieldKind::Rationals,
            2,
            vec![(w(&[0, 1]), Scalar::one()), (w(&[1, 0]), -Scalar::one())],
        )
        .unwrap();
        assert_eq!(alpha.pair(&v).unwrap(), Scalar::one());
    }

    #[test]
    fn display_reads_as_polynomial() {
        let names: Vec<String> = vec!["x".into(), "y".into()];
        let t = Tensor::from_terms(
            FieldKind::Rationals,
            2,
            vec![(w(&[0, 1]), Scalar::one()), (w(&[1, 0]), -Scalar::one())],
        )
        .unwrap();
        assert_eq!(t.display(&names).to_string(), "x*y - y*x");
    }
}
