//! Seeds, quiver and Y-seed mutation, the quiver `Γ_i` and coefficient specialization.

use crate::arith::frac::Frac;
use crate::arith::laurent::{var_names, TermRecord};
use crate::arith::Laurent;
use crate::error::{Error, Result};
use crate::rep::quiver::Quiver;
use crate::weyl::ReducedWord;
use serde::{Deserialize, Serialize};

/// Exchange data: `gamma[i][j]` = (arrows `j → i`) − (arrows `i → j`), vertices `0..r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeQuiver {
    pub gamma: Vec<Vec<i64>>,
    pub frozen: Vec<bool>,
}

fn pos(x: i64) -> i64 {
    x.max(0)
}

/// Matrix mutation `γ'` at `k`; entries between two frozen vertices are dropped.
fn mutate_matrix(g: &[Vec<i64>], k: usize, frozen: &[bool]) -> Vec<Vec<i64>> {
    let r = g.len();
    let mut out = vec![vec![0; r]; r];
    for i in 0..r {
        for j in 0..r {
            out[i][j] = if i == k || j == k {
                -g[i][j]
            } else {
                g[i][j] + (g[i][k].abs() * g[k][j] + g[i][k] * g[k][j].abs()) / 2
            };
            if frozen[i] && frozen[j] {
                out[i][j] = 0;
            }
        }
    }
    out
}

impl ExchangeQuiver {
    pub fn new(gamma: Vec<Vec<i64>>, frozen: Vec<bool>) -> Result<ExchangeQuiver> {
        let r = gamma.len();
        if frozen.len() != r || gamma.iter().any(|row| row.len() != r) {
            return Err(Error::Invalid("exchange matrix must be square and match the frozen set".into()));
        }
        for i in 0..r {
            for j in 0..r {
                if gamma[i][j] != -gamma[j][i] {
                    return Err(Error::Invalid(format!("exchange matrix not skew-symmetric at ({}, {})", i + 1, j + 1)));
                }
            }
        }
        let mut q = ExchangeQuiver { gamma, frozen };
        q.drop_frozen_arrows();
        Ok(q)
    }

    /// The quiver with `[B_{i,k}]_+` arrows `k → i`.
    pub fn from_b_matrix(b: &[Vec<i64>], frozen: Vec<bool>) -> Result<ExchangeQuiver> {
        let r = b.len();
        let mut gamma = vec![vec![0; r]; r];
        for i in 0..r {
            for k in 0..r {
                if !(frozen[i] && frozen[k]) {
                    gamma[i][k] = b[i][k];
                }
            }
        }
        ExchangeQuiver::new(gamma, frozen)
    }

    fn drop_frozen_arrows(&mut self) {
        let r = self.r();
        for i in 0..r {
            for j in 0..r {
                if self.frozen[i] && self.frozen[j] {
                    self.gamma[i][j] = 0;
                }
            }
        }
    }

    pub fn r(&self) -> usize {
        self.gamma.len()
    }

    /// Number of arrows `i → j`.
    pub fn arrows(&self, i: usize, j: usize) -> i64 {
        pos(self.gamma[j][i])
    }

    pub fn mutate(&self, k: usize) -> Result<ExchangeQuiver> {
        if k >= self.r() {
            return Err(Error::OutOfRange(format!("vertex {} not in 1..={}", k + 1, self.r())));
        }
        if self.frozen[k] {
            return Err(Error::FrozenVertex(k + 1));
        }
        Ok(ExchangeQuiver { gamma: mutate_matrix(&self.gamma, k, &self.frozen), frozen: self.frozen.clone() })
    }

    pub fn mutable(&self) -> Vec<usize> {
        (0..self.r()).filter(|&k| !self.frozen[k]).collect()
    }
}

/// A seed: a cluster of Laurent polynomials and its exchange quiver.
#[derive(Clone, Debug, PartialEq)]
pub struct Seed {
    pub quiver: ExchangeQuiver,
    pub cluster: Vec<Laurent>,
}

impl Seed {
    /// The initial seed `(x_1, …, x_r)`.
    pub fn initial(quiver: ExchangeQuiver) -> Seed {
        let vars = var_names("x", quiver.r());
        let cluster = (0..quiver.r()).map(|i| Laurent::var(&vars, i)).collect();
        Seed { quiver, cluster }
    }

    /// Mutation at the 0-based vertex `k`.
    pub fn mutate(&self, k: usize) -> Result<Seed> {
        let quiver = self.quiver.mutate(k)?;
        let one = self.cluster[k].one_like();
        let mut out_prod = one.clone();
        let mut in_prod = one;
        for i in 0..self.quiver.r() {
            let (o, n) = (self.quiver.arrows(k, i), self.quiver.arrows(i, k));
            if o > 0 {
                out_prod = out_prod.mul(&self.cluster[i].pow(o as i32)?);
            }
            if n > 0 {
                in_prod = in_prod.mul(&self.cluster[i].pow(n as i32)?);
            }
        }
        let mut cluster = self.cluster.clone();
        cluster[k] = out_prod.add(&in_prod).exact_div(&self.cluster[k])?;
        Ok(Seed { quiver, cluster })
    }

    /// Applies mutations in order.
    pub fn mutate_sequence(&self, ks: &[usize]) -> Result<Seed> {
        ks.iter().try_fold(self.clone(), |s, &k| s.mutate(k))
    }

    pub fn to_json(&self) -> SeedJson {
        let r = self.quiver.r();
        let mut gamma = Vec::new();
        for i in 0..r {
            for j in 0..r {
                let c = self.quiver.arrows(i, j);
                if c > 0 {
                    gamma.push([i as i64 + 1, j as i64 + 1, c]);
                }
            }
        }
        SeedJson {
            gamma,
            frozen: (0..r).filter(|&k| self.quiver.frozen[k]).map(|k| k + 1).collect(),
            cluster: self.cluster.iter().map(|c| c.to_records()).collect(),
        }
    }

    pub fn from_json(j: &SeedJson) -> Result<Seed> {
        let r = j.cluster.len();
        let mut gamma = vec![vec![0i64; r]; r];
        for &[i, jj, c] in &j.gamma {
            if i < 1 || jj < 1 || i as usize > r || jj as usize > r || i == jj {
                return Err(Error::ParseError(format!("bad arrow [{i}, {jj}, {c}]")));
            }
            let (i, jj) = (i as usize - 1, jj as usize - 1);
            gamma[jj][i] += c;
            gamma[i][jj] -= c;
        }
        let mut frozen = vec![false; r];
        for &f in &j.frozen {
            if f < 1 || f > r {
                return Err(Error::ParseError(format!("frozen vertex {f} out of range")));
            }
            frozen[f - 1] = true;
        }
        let vars = var_names("x", r);
        let cluster = j.cluster.iter().map(|c| Laurent::from_records(&vars, c)).collect::<Result<Vec<_>>>()?;
        Ok(Seed { quiver: ExchangeQuiver::new(gamma, frozen)?, cluster })
    }
}

/// JSON form `{"gamma": [[i, j, count]], "frozen": [...], "cluster": [[terms]]}` (1-based).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeedJson {
    pub gamma: Vec<[i64; 3]>,
    pub frozen: Vec<usize>,
    pub cluster: Vec<Vec<TermRecord>>,
}

/// Matrix mutation of `B` at `k` together with Y-seed mutation
/// `y'_k = y_k⁻¹`, `y'_j = y_j y_k^{[b_kj]_+} (1 + y_k)^{−b_kj}`.
pub fn mutate_y_seed(b: &[Vec<i64>], y: &[Frac], k: usize) -> Result<(Vec<Vec<i64>>, Vec<Frac>)> {
    let n = b.len();
    let b2 = mutate_matrix(b, k, &vec![false; n]);
    let yk = &y[k];
    let onep = yk.one_plus();
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        if j == k {
            out.push(yk.inv()?);
        } else {
            let bkj = b[k][j];
            out.push(y[j].mul(&yk.pow(pos(bkj) as i32)?).mul(&onep.pow(-bkj as i32)?));
        }
    }
    Ok((b2, out))
}

/// Kind of an arrow of `Γ_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GammaArrowKind {
    /// `γ_a^{k,s} : s → k` for the algebra arrow with the given index.
    Ordinary(usize),
    /// `γ_k : k → k⁻`.
    Horizontal,
}

/// An arrow of `Γ_i` with 1-based endpoints.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GammaArrow {
    pub source: usize,
    pub target: usize,
    pub kind: GammaArrowKind,
}

/// The quiver `Γ_i` with arrow multiplicities (2-cycles allowed).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaQuiver {
    pub r: usize,
    pub arrows: Vec<GammaArrow>,
}

/// Builds `Γ_i` for the quiver of the algebra and a word.
pub fn build_gamma_i(algebra_quiver: &Quiver, word: &ReducedWord) -> GammaQuiver {
    let r = word.r();
    let mut arrows = Vec::new();
    for k in 1..=r {
        for s in 1..k {
            if !(word.plus(k) >= word.plus(s) && word.plus(s) >= k) {
                continue;
            }
            for (a, arr) in algebra_quiver.arrows.iter().enumerate() {
                if arr.source == word.letter(s) && arr.target == word.letter(k) {
                    arrows.push(GammaArrow { source: s, target: k, kind: GammaArrowKind::Ordinary(a) });
                }
            }
        }
        if word.minus(k) > 0 {
            arrows.push(GammaArrow { source: k, target: word.minus(k), kind: GammaArrowKind::Horizontal });
        }
    }
    GammaQuiver { r, arrows }
}

impl GammaQuiver {
    /// Count matrix `m[i][j]` = number of arrows `i → j` (0-based).
    pub fn arrow_counts(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0; self.r]; self.r];
        for a in &self.arrows {
            m[a.source - 1][a.target - 1] += 1;
        }
        m
    }

    /// Exchange quiver with 2-cycles cancelled and `R_max` frozen.
    pub fn exchange_quiver(&self, word: &ReducedWord) -> ExchangeQuiver {
        let c = self.arrow_counts();
        let r = self.r;
        let gamma = (0..r).map(|i| (0..r).map(|j| c[j][i] - c[i][j]).collect()).collect();
        let frozen = (1..=r).map(|k| word.is_frozen(k)).collect();
        ExchangeQuiver::new(gamma, frozen).expect("skew by construction")
    }

    /// As an abstract quiver with vertices `0..r`.
    pub fn to_quiver(&self) -> Quiver {
        let mut q = Quiver::new(self.r);
        for (n, a) in self.arrows.iter().enumerate() {
            let name = match a.kind {
                GammaArrowKind::Ordinary(_) => format!("g{}_{}_{}", a.source, a.target, n),
                GammaArrowKind::Horizontal => format!("h{}", a.source),
            };
            q.add_arrow(name, a.source - 1, a.target - 1);
        }
        q
    }
}

/// `Π_T`: sends the variable of `T_k` to 1 for frozen `k` and to `x_k` otherwise.
/// The result lives in the variables `x_k` for the mutable `k` (1-based names).
pub fn specialize_coefficients(expr: &Laurent, frozen: &[bool]) -> Result<Laurent> {
    let names: Vec<String> = (0..frozen.len()).filter(|&k| !frozen[k]).map(|k| format!("x{}", k + 1)).collect();
    let mut idx = 0;
    let assignment: Vec<Laurent> = frozen
        .iter()
        .map(|&f| {
            if f {
                Laurent::one(&names)
            } else {
                idx += 1;
                Laurent::var(&names, idx - 1)
            }
        })
        .collect();
    if assignment.is_empty() {
        return Ok(expr.clone());
    }
    expr.substitute(&assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::laurent::var_names;
    use crate::weyl::CartanData;

    #[test]
    fn kronecker_flip() {
        let qv = ExchangeQuiver::new(vec![vec![0, 2], vec![-2, 0]], vec![false, false]).unwrap();
        assert_eq!(qv.mutate(0).unwrap().gamma, vec![vec![0, -2], vec![2, 0]]);
    }

    #[test]
    fn a2_exchange_and_involution() {
        // 1 → 2 means gamma[1][0] = 1.
        let qv = ExchangeQuiver::new(vec![vec![0, -1], vec![1, 0]], vec![false, false]).unwrap();
        let s = Seed::initial(qv);
        let m = s.mutate(0).unwrap();
        let v = var_names("x", 2);
        assert_eq!(m.cluster[0], Laurent::parse(&v, "x2*x1^-1 + x1^-1").unwrap());
        assert_eq!(m.mutate(0).unwrap(), s);
    }

    #[test]
    fn frozen_vertex_rejected() {
        let qv = ExchangeQuiver::new(vec![vec![0, -1], vec![1, 0]], vec![false, true]).unwrap();
        assert_eq!(Seed::initial(qv).mutate(1).unwrap_err(), Error::FrozenVertex(2));
    }

    #[test]
    fn y_seed_involution() {
        let v = var_names("y", 2);
        let y: Vec<Frac> = (0..2).map(|i| Frac::from(Laurent::var(&v, i))).collect();
        let b = vec![vec![0, 1], vec![-1, 0]];
        let (b1, y1) = mutate_y_seed(&b, &y, 0).unwrap();
        assert_eq!(y1[0], y[0].inv().unwrap());
        let (b2, y2) = mutate_y_seed(&b1, &y1, 0).unwrap();
        assert_eq!(b2, b);
        assert_eq!(y2, y);
    }

    #[test]
    fn gamma_of_single_letter() {
        let c = CartanData::type_a(2);
        let w = ReducedWord::validate(&c, &[1]).unwrap();
        let bq = crate::rep::BoundQuiver::preprojective(&c);
        let g = build_gamma_i(&bq.quiver, &w);
        assert_eq!(g.r, 1);
        assert!(g.arrows.is_empty());
    }

    #[test]
    fn seed_json_round_trip() {
        let qv = ExchangeQuiver::new(vec![vec![0, 2], vec![-2, 0]], vec![false, true]).unwrap();
        let s = Seed::initial(qv);
        let j = s.to_json();
        assert_eq!(j.gamma, vec![[2, 1, 2]]);
        assert_eq!(Seed::from_json(&j).unwrap(), s);
    }

    #[test]
    fn specialization_sends_frozen_to_one() {
        let v = var_names("x", 3);
        let e = Laurent::parse(&v, "x1*x3 + x2").unwrap();
        let s = specialize_coefficients(&e, &[false, true, false]).unwrap();
        assert_eq!(s.to_string(), Laurent::parse(&["x1".to_string(), "x3".to_string()], "x3*x1 + 1").unwrap().to_string());
    }
}
