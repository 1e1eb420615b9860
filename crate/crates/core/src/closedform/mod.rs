//! Closed-form evaluations as sums over subsets of `N`-th roots of unity.
//!
//! Each formula is `sum over size-r subsets {l_1..l_r}` of a summand built
//! from `R(l)`, the handle-gluing factor `J(l)` and elementary symmetric
//! functions of the `l_i`. All sums are carried out in `Q(z_N)` and only the
//! total is required to be rational.

mod formulas;
mod pontrjagin;
mod symbolic;

pub use formulas::{
    apply_dl, bees_evaluate, degree_shift_check, degree_shift_values, fl_evaluate, j_function,
    sigma_identity, vi_evaluate, vi_summand,
};
pub use pontrjagin::{pontrjagin_report, pontrjagin_sum, PontrjaginReport};
pub use symbolic::SymbolicPolynomialR;

use crate::exactnum::Field;

/// Elementary symmetric functions of a fixed tuple, with one or two entries omitted.
#[derive(Clone, Debug)]
pub struct SymmetricTable<F: Field> {
    r: usize,
    full: Vec<F::Elem>,
    omit1: Vec<Vec<F::Elem>>,
    omit2: Vec<Vec<Vec<F::Elem>>>,
    zero: F::Elem,
}

fn elementary<F: Field>(field: &F, values: &[&F::Elem]) -> Vec<F::Elem> {
    let mut e = vec![field.one()];
    for v in values {
        e.push(field.zero());
        for k in (1..e.len()).rev() {
            e[k] = field.add(&e[k], &field.mul(&e[k - 1], v));
        }
    }
    e
}

impl<F: Field> SymmetricTable<F> {
    /// `sigma_i(values)`; zero for `i` beyond the number of values.
    pub fn sigma(&self, i: usize) -> &F::Elem {
        self.full.get(i).unwrap_or(&self.zero)
    }

    /// `sigma_{i;k}`: omit the `k`-th value (1-based).
    pub fn sigma_omit1(&self, i: usize, k: usize) -> &F::Elem {
        self.omit1[k - 1].get(i).unwrap_or(&self.zero)
    }

    /// `sigma_{i;k,l}`: omit the `k`-th and `l`-th values (1-based, distinct).
    pub fn sigma_omit2(&self, i: usize, k: usize, l: usize) -> &F::Elem {
        assert_ne!(k, l, "omitted indices must differ");
        self.omit2[k - 1][l - 1].get(i).unwrap_or(&self.zero)
    }

    pub fn len(&self) -> usize {
        self.r
    }

    pub fn is_empty(&self) -> bool {
        self.r == 0
    }
}

/// `sigma_i`, `sigma_{i;k}` and `sigma_{i;k,l}` of `values`, for all indices.
pub fn symmetric_functions<F: Field>(field: &F, values: &[F::Elem]) -> SymmetricTable<F> {
    let r = values.len();
    let pick = |skip: &[usize]| -> Vec<&F::Elem> {
        (0..r).filter(|q| !skip.contains(q)).map(|q| &values[q]).collect()
    };
    let omit2 = (0..r)
        .map(|k| {
            (0..r)
                .map(|l| if k == l { Vec::new() } else { elementary(field, &pick(&[k, l])) })
                .collect()
        })
        .collect();
    SymmetricTable {
        r,
        full: elementary(field, &pick(&[])),
        omit1: (0..r).map(|k| elementary(field, &pick(&[k]))).collect(),
        omit2,
        zero: field.zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{int, RationalField};

    #[test]
    fn symmetric_function_examples() {
        let f = RationalField;
        let t = symmetric_functions(&f, &[int(1), int(-1)]);
        assert_eq!(t.sigma(1), &int(0));
        assert_eq!(t.sigma(2), &int(-1));
        let t = symmetric_functions(&f, &[int(2), int(3), int(5)]);
        assert_eq!(t.sigma_omit1(1, 1), &int(8));
        assert_eq!(t.sigma_omit1(2, 2), &int(10));
        assert_eq!(t.sigma_omit2(0, 1, 3), &int(1));
        assert_eq!(t.sigma_omit2(1, 1, 3), &int(3));
        assert_eq!(t.sigma_omit2(2, 1, 3), &int(0));
        assert_eq!(t.sigma(4), &int(0));
    }
}
