//! Filtrations of a module attached to a sequence of vertices.
//!
//! For letters `i_1, …, i_m` both flavours produce a chain `X = X_0 ⊇ X_1 ⊇ ⋯ ⊇ X_m`
//! of submodules that only changes at vertex `i_k` in step `k`.

use crate::arith::matrix::subspace;
use crate::arith::{Field, Matrix};
use crate::rep::module::{Rep, SubSpaces};
use crate::rep::quiver::Quiver;

/// The largest `V ⊇ U` with `V/U` concentrated at `j` and contained in `soc(X/U)`.
pub fn socle_step<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, u: &SubSpaces<F::E>, j: usize) -> SubSpaces<F::E> {
    let mut out = u.clone();
    let mut space = Matrix::identity(f, x.dims[j]);
    for a in q.arrows_from(j) {
        let pre = subspace::preimage(f, &x.maps[a], &u[q.target(a)]);
        space = subspace::intersect(f, &space, &pre);
    }
    out[j] = space.col_space(f);
    out
}

/// `U` with the component at `j` replaced by `Σ_{t(a)=j} X(a) U_{s(a)}`.
pub fn top_step<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, u: &SubSpaces<F::E>, j: usize) -> SubSpaces<F::E> {
    let mut out = u.clone();
    let imgs: Vec<Matrix<F::E>> = q.arrows_into(j).map(|a| x.maps[a].mul(f, &u[q.source(a)])).collect();
    let refs: Vec<&Matrix<F::E>> = imgs.iter().collect();
    out[j] = if refs.is_empty() { Matrix::zeros(f, x.dims[j], 0) } else { subspace::span(f, x.dims[j], &refs) };
    out
}

/// A chain `X_0 ⊇ ⋯ ⊇ X_m` with weights `a_k = dim X_{k−1} − dim X_k`.
#[derive(Clone, Debug)]
pub struct Filtration<E> {
    pub chain: Vec<SubSpaces<E>>,
}

impl<E: Clone + PartialEq + std::fmt::Debug> Filtration<E> {
    pub fn total_dim(&self, k: usize) -> usize {
        self.chain[k].iter().map(|s| s.cols()).sum()
    }

    /// Weights `a_1, …, a_m`.
    pub fn weights(&self) -> Vec<usize> {
        (1..self.chain.len()).map(|k| self.total_dim(k - 1) - self.total_dim(k)).collect()
    }
}

/// Socle flavour: built from `X_m = 0` by `X_{k−1} = socle_step(X_k, i_k)`.
/// `letters[k - 1] = i_k`.
pub fn socle_filtration<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, letters: &[usize]) -> Filtration<F::E> {
    let m = letters.len();
    let mut chain = vec![x.zero_subspaces(f); m + 1];
    for k in (1..=m).rev() {
        chain[k - 1] = socle_step(f, q, x, &chain[k], letters[k - 1]);
    }
    Filtration { chain }
}

/// Top flavour: built from `X_0 = X` by `X_k = top_step(X_{k−1}, i_k)`.
pub fn top_filtration<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, letters: &[usize]) -> Filtration<F::E> {
    let m = letters.len();
    let mut chain = vec![x.full_subspaces(f)];
    for k in 1..=m {
        let next = top_step(f, q, x, &chain[k - 1], letters[k - 1]);
        chain.push(next);
    }
    Filtration { chain }
}

/// Whether a family of subspaces is everything.
pub fn is_full<E: Clone>(x: &Rep<E>, s: &SubSpaces<E>) -> bool {
    s.iter().zip(&x.dims).all(|(m, &d)| m.cols() == d)
}

pub fn is_zero<E: Clone>(s: &SubSpaces<E>) -> bool {
    s.iter().all(|m| m.cols() == 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{QMatrix, QQ};

    fn a2() -> (Quiver, Rep<crate::arith::Q>) {
        let mut q = Quiver::new(2);
        q.add_arrow("a", 0, 1);
        (q, Rep { dims: vec![1, 1], maps: vec![QMatrix::from_i64_rows(&[vec![1]], 1)] })
    }

    #[test]
    fn socle_filtration_of_path_module() {
        let (q, m) = a2();
        // letters i_1 = 0, i_2 = 1: X_1 = soc at vertex 1.
        let fl = socle_filtration(&QQ, &q, &m, &[0, 1]);
        assert!(is_full(&m, &fl.chain[0]));
        assert_eq!(fl.weights(), vec![1, 1]);
        // Wrong order cannot reach the whole module.
        let bad = socle_filtration(&QQ, &q, &m, &[1, 0]);
        assert!(!is_full(&m, &bad.chain[0]));
    }

    #[test]
    fn top_filtration_of_path_module() {
        let (q, m) = a2();
        let fl = top_filtration(&QQ, &q, &m, &[0, 1]);
        assert!(is_zero(&fl.chain[2]));
        assert_eq!(fl.weights(), vec![1, 1]);
    }
}
