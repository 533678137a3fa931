//! Stock presentations used throughout the test suites and the CLI corpus.

use crate::quadalg::QuadraticPresentation;
use crate::scalar::{FieldKind, Scalar};
use crate::tensor::Tensor;
use crate::word::Word;

fn names(n: usize) -> Vec<String> {
    const POOL: [&str; 4] = ["x", "y", "z", "w"];
    (0..n)
        .map(|i| {
            if n <= POOL.len() {
                POOL[i].to_string()
            } else {
                format!("x{}", i + 1)
            }
        })
        .collect()
}

pub fn word_tensor_free(field: FieldKind, indices: &[usize]) -> Tensor {
    Tensor::monomial(field, Word::from_indices(indices))
}

pub fn word_tensor(p: &QuadraticPresentation, indices: &[usize]) -> Tensor {
    word_tensor_free(p.field(), indices)
}

pub fn gen_tensor(p: &QuadraticPresentation, g: usize) -> Tensor {
    word_tensor_free(p.field(), &[g])
}

pub fn square_tensor(field: FieldKind, _n_gens: usize, i: usize) -> Tensor {
    word_tensor_free(field, &[i, i])
}

pub fn commutator_tensor(field: FieldKind, _n_gens: usize, i: usize, j: usize) -> Tensor {
    word_tensor_free(field, &[i, j])
        .sub(&word_tensor_free(field, &[j, i]))
        .unwrap()
}

pub fn anticommutator_tensor(field: FieldKind, i: usize, j: usize) -> Tensor {
    word_tensor_free(field, &[i, j])
        .add(&word_tensor_free(field, &[j, i]))
        .unwrap()
}

/// Σ xᵢ⊗xᵢ over all generators.
pub fn sum_of_squares(p: &QuadraticPresentation) -> Tensor {
    let mut acc = Tensor::zero(p.field(), 2);
    for i in 0..p.n_gens() {
        acc = acc.add(&word_tensor(p, &[i, i])).unwrap();
    }
    acc
}

/// Exterior algebra on `n` generators: relations xᵢ² and xᵢxⱼ + xⱼxᵢ.
pub fn exterior(field: FieldKind, n: usize) -> QuadraticPresentation {
    let mut relations = Vec::new();
    for i in 0..n {
        relations.push(square_tensor(field, n, i));
    }
    for i in 0..n {
        for j in (i + 1)..n {
            relations.push(anticommutator_tensor(field, i, j));
        }
    }
    QuadraticPresentation::new(field, names(n), relations).unwrap()
}

/// Commutative polynomial ring on `n` generators.
pub fn polynomial(field: FieldKind, n: usize) -> QuadraticPresentation {
    let mut relations = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            relations.push(commutator_tensor(field, n, i, j));
        }
    }
    QuadraticPresentation::new(field, names(n), relations).unwrap()
}

/// The (−1)-skew plane k⟨x,y⟩/(xy + yx).
pub fn quantum_plane(field: FieldKind) -> QuadraticPresentation {
    QuadraticPresentation::new(field, names(2), vec![anticommutator_tensor(field, 0, 1)]).unwrap()
}

/// k⟨x,y⟩/(x², y², xy − yx): squares plus a commutator.
pub fn squares_and_commutator(field: FieldKind) -> QuadraticPresentation {
    QuadraticPresentation::new(
        field,
        names(2),
        vec![
            square_tensor(field, 2, 0),
            square_tensor(field, 2, 1),
            commutator_tensor(field, 2, 0, 1),
        ],
    )
    .unwrap()
}

/// Quadratic dual of the Jordan plane: relations y², xy + yx, yx + x².
pub fn jordan_plane_dual(field: FieldKind) -> QuadraticPresentation {
    let yx_plus_x2 = word_tensor_free(field, &[1, 0])
        .add(&word_tensor_free(field, &[0, 0]))
        .unwrap();
    QuadraticPresentation::new(
        field,
        names(2),
        vec![
            square_tensor(field, 2, 1),
            anticommutator_tensor(field, 0, 1),
            yx_plus_x2,
        ],
    )
    .unwrap()
}

/// The listed relation order of [`jordan_plane_dual`], for map coordinates.
pub fn jordan_plane_dual_relations(field: FieldKind) -> Vec<Tensor> {
    vec![
        square_tensor(field, 2, 1),
        anticommutator_tensor(field, 0, 1),
        word_tensor_free(field, &[1, 0])
            .add(&word_tensor_free(field, &[0, 0]))
            .unwrap(),
    ]
}

/// Dual of the type-S₂ regular algebra: a 3-generator Frobenius algebra
/// with relations xz − zx, yz − zy, x² − y², z², xy, yx.
pub fn s2_dual(field: FieldKind) -> QuadraticPresentation {
    QuadraticPresentation::new(field, names(3), s2_dual_relations(field)).unwrap()
}

/// The listed relation order of [`s2_dual`], for map coordinates.
pub fn s2_dual_relations(field: FieldKind) -> Vec<Tensor> {
    let field_minus = |a: &[usize], b: &[usize]| -> Tensor {
        word_tensor_free(field, a)
            .sub(&word_tensor_free(field, b))
            .unwrap()
    };
    vec![
        field_minus(&[0, 2], &[2, 0]),
        field_minus(&[1, 2], &[2, 1]),
        field_minus(&[0, 0], &[1, 1]),
        word_tensor_free(field, &[2, 2]),
        word_tensor_free(field, &[0, 1]),
        word_tensor_free(field, &[1, 0]),
    ]
}

/// One generator with x² = 0: the smallest Frobenius quadratic algebra.
pub fn nil_line(field: FieldKind) -> QuadraticPresentation {
    QuadraticPresentation::new(
        field,
        vec!["x".to_string()],
        vec![square_tensor(field, 1, 0)],
    )
    .unwrap()
}

/// The scalar `n` as a degree-1-free constant helper.
pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(n)
}
