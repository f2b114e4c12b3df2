//! Symmetric Cartan data, Weyl group actions on weights and roots, and the index
//! combinatorics of a word `i = (i_r, …, i_1)`.
//!
//! Positions are 1-based (`1..=r`) as in the usual conventions; vertices are
//! 0-based internally and 1-based in every external format.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Symmetric generalized Cartan data given by edge multiplicities `q(i, j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    n: usize,
    q: Vec<Vec<u32>>,
}

/// JSON shape `{"vertices": n, "edges": [[i, j, mult], …]}` with 1-based vertices.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartanJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 3]>,
}

impl CartanData {
    pub fn new(n: usize, q: Vec<Vec<u32>>) -> Result<CartanData> {
        if q.len() != n || q.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidCartan("edge matrix has wrong shape".into()));
        }
        for i in 0..n {
            if q[i][i] != 0 {
                return Err(Error::InvalidCartan(format!("loop at vertex {}", i + 1)));
            }
            for j in 0..n {
                if q[i][j] != q[j][i] {
                    return Err(Error::InvalidCartan("edge multiplicities are not symmetric".into()));
                }
            }
        }
        Ok(CartanData { n, q })
    }

    /// Builds from 1-based edges `(i, j, mult)`; repeated edges accumulate.
    pub fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> Result<CartanData> {
        let mut q = vec![vec![0u32; n]; n];
        for &(i, j, m) in edges {
            if i == 0 || j == 0 || i > n || j > n {
                return Err(Error::InvalidCartan(format!("edge ({i},{j}) out of range")));
            }
            if i == j {
                return Err(Error::InvalidCartan(format!("loop at vertex {i}")));
            }
            q[i - 1][j - 1] += m;
            q[j - 1][i - 1] += m;
        }
        CartanData::new(n, q)
    }

    pub fn from_json(j: &CartanJson) -> Result<CartanData> {
        let edges: Vec<(usize, usize, u32)> = j.edges.iter().map(|e| (e[0], e[1], e[2] as u32)).collect();
        CartanData::from_edges(j.vertices, &edges)
    }

    pub fn to_json(&self) -> CartanJson {
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.q[i][j] > 0 {
                    edges.push([i + 1, j + 1, self.q[i][j] as usize]);
                }
            }
        }
        CartanJson { vertices: self.n, edges }
    }

    /// Type A_n with the linear diagram.
    pub fn type_a(n: usize) -> CartanData {
        let edges: Vec<(usize, usize, u32)> = (1..n).map(|i| (i, i + 1, 1)).collect();
        CartanData::from_edges(n, &edges).expect("type A data is valid")
    }

    /// Two vertices joined by `m` edges (the Kronecker case for `m = 2`).
    pub fn multi_edge(m: u32) -> CartanData {
        CartanData::from_edges(2, &[(1, 2, m)]).expect("valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges between vertices `i` and `j` (0-based).
    pub fn q(&self, i: usize, j: usize) -> u32 {
        self.q[i][j]
    }

    /// Symmetric bilinear form `(α_i, α_j) = 2δ_ij − q(i, j)`.
    pub fn form(&self, i: usize, j: usize) -> i64 {
        if i == j {
            2
        } else {
            -(self.q[i][j] as i64)
        }
    }

    /// Simple reflection on a weight in fundamental-weight coordinates.
    pub fn reflect_weight(&self, i: usize, w: &mut WeightVector) {
        let c = w.0[i];
        if c != 0 {
            for j in 0..self.n {
                w.0[j] -= c * self.form(j, i);
            }
        }
    }

    /// Simple reflection on a root in simple-root coordinates.
    pub fn reflect_root(&self, i: usize, beta: &mut [i64]) {
        let pairing: i64 = (0..self.n).map(|j| beta[j] * self.form(j, i)).sum();
        beta[i] -= pairing;
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVector {
        let mut v = vec![0; self.n];
        v[i] = 1;
        WeightVector(v)
    }
}

/// A weight in fundamental-weight coordinates; `(λ, α_i)` is the `i`-th coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightVector(pub Vec<i64>);

impl WeightVector {
    pub fn pair_with_simple_root(&self, i: usize) -> i64 {
        self.0[i]
    }
}

/// A word `i = (i_r, …, i_1)` with all derived indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedWord {
    n: usize,
    /// `letters[k - 1] = i_k` (0-based vertex).
    letters: Vec<usize>,
    minus: Vec<usize>,
    plus: Vec<usize>,
}

impl ReducedWord {
    /// Validates a word given in the written order `(i_r, …, i_1)` with 1-based letters.
    pub fn validate(cartan: &CartanData, written: &[usize]) -> Result<ReducedWord> {
        let w = ReducedWord::unchecked(cartan.n(), written)?;
        for k in 1..=w.r() {
            let mut beta = vec![0i64; cartan.n()];
            beta[w.letter(k)] = 1;
            for s in (1..k).rev() {
                cartan.reflect_root(w.letter(s), &mut beta);
            }
            if beta.iter().any(|&c| c < 0) {
                return Err(Error::NotReduced { position: k });
            }
        }
        Ok(w)
    }

    /// Builds the index data without a reducedness check (used for algebras that
    /// are not preprojective, e.g. loop quivers).
    pub fn unchecked(n: usize, written: &[usize]) -> Result<ReducedWord> {
        if written.is_empty() {
            return Err(Error::InvalidWord("empty word".into()));
        }
        if let Some(&bad) = written.iter().find(|&&x| x == 0 || x > n) {
            return Err(Error::InvalidWord(format!("letter {bad} out of range 1..={n}")));
        }
        let letters: Vec<usize> = written.iter().rev().map(|x| x - 1).collect();
        let r = letters.len();
        let mut minus = vec![0; r + 1];
        let mut plus = vec![r + 1; r + 1];
        for k in 1..=r {
            minus[k] = (1..k).rev().find(|&s| letters[s - 1] == letters[k - 1]).unwrap_or(0);
            plus[k] = (k + 1..=r).find(|&s| letters[s - 1] == letters[k - 1]).unwrap_or(r + 1);
        }
        Ok(ReducedWord { n, letters, minus, plus })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.letters.len()
    }

    /// The letter `i_k` (0-based vertex) for `1 ≤ k ≤ r`.
    pub fn letter(&self, k: usize) -> usize {
        self.letters[k - 1]
    }

    /// Letters in the written order `(i_r, …, i_1)`, 1-based.
    pub fn written(&self) -> Vec<usize> {
        self.letters.iter().rev().map(|x| x + 1).collect()
    }

    /// `k⁻ = max{0, s < k : i_s = i_k}`.
    pub fn minus(&self, k: usize) -> usize {
        self.minus[k]
    }

    /// `k⁺ = min{s > k : i_s = i_k}` or `r + 1`.
    pub fn plus(&self, k: usize) -> usize {
        self.plus[k]
    }

    /// `k⁻(j) = max{0, s ≤ k − 1 : i_s = j}`.
    pub fn minus_of_letter(&self, k: usize, j: usize) -> usize {
        (1..k).rev().find(|&s| self.letter(s) == j).unwrap_or(0)
    }

    /// `k_j = max{s : i_s = j}`, if `j` occurs.
    pub fn last_of(&self, j: usize) -> Option<usize> {
        (1..=self.r()).rev().find(|&s| self.letter(s) == j)
    }

    /// `min{s : i_s = j}`, if `j` occurs.
    pub fn first_of(&self, j: usize) -> Option<usize> {
        (1..=self.r()).find(|&s| self.letter(s) == j)
    }

    /// `k_max = max{s : i_s = i_k}`.
    pub fn k_max(&self, k: usize) -> usize {
        self.last_of(self.letter(k)).expect("letter occurs")
    }

    /// `k_min = min{s : i_s = i_k}`.
    pub fn k_min(&self, k: usize) -> usize {
        self.first_of(self.letter(k)).expect("letter occurs")
    }

    pub fn is_frozen(&self, k: usize) -> bool {
        self.plus(k) == self.r() + 1
    }

    pub fn r_max(&self) -> Vec<usize> {
        (1..=self.r()).filter(|&k| self.is_frozen(k)).collect()
    }

    pub fn r_minus(&self) -> Vec<usize> {
        (1..=self.r()).filter(|&k| !self.is_frozen(k)).collect()
    }

    /// Whether every vertex of the diagram occurs in the word.
    pub fn covers_all_vertices(&self) -> bool {
        (0..self.n).all(|j| self.last_of(j).is_some())
    }

    /// Vertices occurring in the word, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.last_of(j).is_some()).collect()
    }

    /// Drops `i_1` and reindexes (the word `(i_r, …, i_2)`).
    pub fn shifted(&self) -> Option<ReducedWord> {
        if self.r() < 2 {
            return None;
        }
        let written: Vec<usize> = self.written()[..self.r() - 1].to_vec();
        ReducedWord::unchecked(self.n, &written).ok()
    }
}

/// `b(l, k) = −(s_{i_l} s_{i_{l+1}} ⋯ s_{i_k}(ϖ_{i_k}), α_{i_l})`, and 0 for `l > k`.
pub fn b_coefficient(cartan: &CartanData, word: &ReducedWord, l: usize, k: usize) -> i64 {
    if l > k || l == 0 {
        return 0;
    }
    let mut lam = cartan.fundamental_weight(word.letter(k));
    for s in (l..=k).rev() {
        cartan.reflect_weight(word.letter(s), &mut lam);
    }
    -lam.pair_with_simple_root(word.letter(l))
}

/// The weight `a⁻(V_k)`: entry `l` equals `b(l, k)` for `l ≤ k` and 0 otherwise.
pub fn a_minus_of_vk(cartan: &CartanData, word: &ReducedWord, k: usize) -> Vec<i64> {
    (1..=word.r()).map(|l| b_coefficient(cartan, word, l, k)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_word_121_indices() {
        let c = CartanData::type_a(2);
        let w = ReducedWord::validate(&c, &[1, 2, 1]).unwrap();
        assert_eq!(w.r_max(), vec![2, 3]);
        assert_eq!(w.r_minus(), vec![1]);
        assert_eq!(w.minus(3), 1);
        assert_eq!(w.plus(1), 3);
    }

    #[test]
    fn repeated_letter_is_not_reduced() {
        let c = CartanData::type_a(2);
        assert_eq!(ReducedWord::validate(&c, &[1, 1]), Err(Error::NotReduced { position: 2 }));
    }

    #[test]
    fn longest_a3_word() {
        let c = CartanData::type_a(3);
        let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1]).unwrap();
        assert_eq!(w.r_max(), vec![3, 5, 6]);
        assert_eq!(w.r_minus(), vec![1, 2, 4]);
        assert_eq!(a_minus_of_vk(&c, &w, 5), vec![0, 1, 1, 1, 1, 0]);
        assert_eq!(a_minus_of_vk(&c, &w, 1), vec![1, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn diagonal_b_is_one() {
        let c = CartanData::multi_edge(2);
        let w = ReducedWord::validate(&c, &[2, 1, 2, 1]).unwrap();
        for k in 1..=4 {
            assert_eq!(b_coefficient(&c, &w, k, k), 1);
        }
    }

    #[test]
    fn letters_out_of_range() {
        let c = CartanData::type_a(2);
        assert!(matches!(ReducedWord::validate(&c, &[3]), Err(Error::InvalidWord(_))));
    }
}
