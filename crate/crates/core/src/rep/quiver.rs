//! Quivers, homogeneous relations and graded projective modules.

use crate::arith::{Matrix, QMatrix, Q, QQ};
use crate::error::{Error, Result};
use crate::rep::module::Rep;
use crate::weyl::CartanData;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with vertices `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(n: usize) -> Quiver {
        Quiver { n, arrows: Vec::new() }
    }

    pub fn add_arrow(&mut self, name: impl Into<String>, source: usize, target: usize) -> usize {
        assert!(source < self.n && target < self.n, "arrow endpoint out of range");
        self.arrows.push(Arrow { name: name.into(), source, target });
        self.arrows.len() - 1
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    pub fn source(&self, a: usize) -> usize {
        self.arrows[a].source
    }

    pub fn target(&self, a: usize) -> usize {
        self.arrows[a].target
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// The opposite quiver; arrow indices are preserved.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            n: self.n,
            arrows: self.arrows.iter().map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source }).collect(),
        }
    }

    /// Whether the quiver has no oriented cycles (including loops).
    pub fn is_acyclic(&self) -> bool {
        let mut indeg = vec![0usize; self.n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..self.n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows_from(v).collect::<Vec<_>>() {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    stack.push(t);
                }
            }
        }
        seen == self.n
    }

    /// Whether a word (arrows in traversal order) is a path.
    pub fn is_path(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }
}

/// A linear combination of paths, each path listed in traversal order.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub terms: Vec<(Q, Vec<usize>)>,
}

impl Relation {
    pub fn monomial(path: Vec<usize>) -> Relation {
        Relation { terms: vec![(Q::one(), path)] }
    }

    pub fn len(&self) -> usize {
        self.terms.first().map_or(0, |t| t.1.len())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A quiver with homogeneous relations of length at least 2.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundQuiver {
    pub quiver: Quiver,
    pub relations: Vec<Relation>,
}

/// Degree-graded basis data of a truncated projective module.
#[derive(Clone, Debug)]
pub struct GradedProjective {
    /// The module `A e_v` truncated below path length `bound`.
    pub module: Rep<Q>,
    /// For each vertex, the word and degree of each basis vector.
    pub words: Vec<Vec<Vec<usize>>>,
    /// Whether the truncation lost nothing (the projective vanishes in degree `bound`).
    pub saturated: bool,
}

impl BoundQuiver {
    pub fn new(quiver: Quiver, relations: Vec<Relation>) -> Result<BoundQuiver> {
        for r in &relations {
            let len = r.len();
            if len < 2 {
                return Err(Error::Invalid("relations must have length at least 2".into()));
            }
            let (s0, t0) = endpoints(&quiver, &r.terms[0].1);
            for (_, p) in &r.terms {
                if p.len() != len || !quiver.is_path(p) {
                    return Err(Error::Invalid("relations must be homogeneous combinations of paths".into()));
                }
                if endpoints(&quiver, p) != (s0, t0) {
                    return Err(Error::Invalid("relation terms must share endpoints".into()));
                }
            }
        }
        Ok(BoundQuiver { quiver, relations })
    }

    /// Preprojective algebra of the diagram with orientation `i → j` for `i < j`.
    ///
    /// Arrow names: `a{i}{j}` (or `a{i}{j}_{t}` for multiple edges) and a trailing
    /// `*` for the reversed arrow, with 1-based vertices.
    pub fn preprojective(cartan: &CartanData) -> BoundQuiver {
        let n = cartan.n();
        let mut q = Quiver::new(n);
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let m = cartan.q(i, j);
                for t in 1..=m {
                    let base = if m == 1 { format!("a{}{}", i + 1, j + 1) } else { format!("a{}{}_{}", i + 1, j + 1, t) };
                    let a = q.add_arrow(base.clone(), i, j);
                    let s = q.add_arrow(format!("{base}*"), j, i);
                    pairs.push((a, s));
                }
            }
        }
        let mut relations = Vec::new();
        for v in 0..n {
            let mut terms = Vec::new();
            for &(a, s) in &pairs {
                if q.source(a) == v {
                    terms.push((Q::one(), vec![a, s]));
                }
                if q.target(a) == v {
                    terms.push((Q::from_int(-1), vec![s, a]));
                }
            }
            if !terms.is_empty() {
                relations.push(Relation { terms });
            }
        }
        BoundQuiver { quiver: q, relations }
    }

    /// Reverses arrows and paths.
    pub fn opposite(&self) -> BoundQuiver {
        BoundQuiver {
            quiver: self.quiver.opposite(),
            relations: self
                .relations
                .iter()
                .map(|r| Relation { terms: r.terms.iter().map(|(c, p)| (c.clone(), p.iter().rev().cloned().collect())).collect() })
                .collect(),
        }
    }

    /// The left projective `A e_v` modulo paths of length ≥ `bound`.
    pub fn graded_projective(&self, v: usize, bound: usize) -> GradedProjective {
        let q = &self.quiver;
        // Per degree: basis list of (vertex, word); action matrices of arrows from degree d to d+1.
        let mut basis: Vec<Vec<(usize, Vec<usize>)>> = vec![vec![(v, vec![])]];
        let mut acts: Vec<Vec<QMatrix>> = Vec::new();
        let mut saturated = false;
        for d in 0..bound {
            if basis[d].is_empty() {
                saturated = true;
                break;
            }
            if d + 1 == bound {
                break;
            }
            // Candidates a ⊗ b.
            let mut cands: Vec<(usize, usize)> = Vec::new();
            for (bi, (vb, _)) in basis[d].iter().enumerate() {
                for a in q.arrows_from(*vb) {
                    cands.push((a, bi));
                }
            }
            let nc = cands.len();
            let cand_index = |a: usize, bi: usize| cands.iter().position(|&c| c == (a, bi));
            // Relation vectors in candidate coordinates.
            let mut rel_rows: Vec<Vec<Q>> = Vec::new();
            for rel in &self.relations {
                let m = rel.len();
                if m > d + 1 {
                    continue;
                }
                let src_deg = d + 1 - m;
                for ui in 0..basis[src_deg].len() {
                    let mut row = vec![Q::zero(); nc];
                    let mut nonzero = false;
                    for (c, path) in &rel.terms {
                        if q.source(path[0]) != basis[src_deg][ui].0 {
                            continue;
                        }
                        // Apply all but the last arrow through the already computed degrees.
                        let mut vec_d: Vec<Q> = (0..basis[src_deg].len()).map(|k| if k == ui { Q::one() } else { Q::zero() }).collect();
                        let mut deg = src_deg;
                        for &a in &path[..m - 1] {
                            vec_d = acts[deg][a].mul_vec(&QQ, &vec_d);
                            deg += 1;
                        }
                        let last = path[m - 1];
                        for (bi, coef) in vec_d.iter().enumerate() {
                            if coef.is_zero() {
                                continue;
                            }
                            if let Some(ci) = cand_index(last, bi) {
                                row[ci] = &row[ci] + &(c * coef);
                                nonzero = true;
                            }
                        }
                    }
                    if nonzero {
                        rel_rows.push(row);
                    }
                }
            }
            let rel_mat = QMatrix::from_rows(rel_rows, nc);
            let (rref, piv) = rel_mat.rref(&QQ);
            let free: Vec<usize> = (0..nc).filter(|c| !piv.contains(c)).collect();
            // Projection of candidate c onto the free basis.
            let project = |c: usize| -> Vec<Q> {
                let mut out = vec![Q::zero(); free.len()];
                if let Some(pos) = free.iter().position(|&x| x == c) {
                    out[pos] = Q::one();
                } else {
                    let row = piv.iter().position(|&x| x == c).expect("pivot");
                    for (k, &fc) in free.iter().enumerate() {
                        out[k] = -rref.get(row, fc);
                    }
                }
                out
            };
            let next_basis: Vec<(usize, Vec<usize>)> = free
                .iter()
                .map(|&c| {
                    let (a, bi) = cands[c];
                    let mut w = basis[d][bi].1.clone();
                    w.push(a);
                    (q.target(a), w)
                })
                .collect();
            let mut act_d = Vec::new();
            for a in 0..q.arrows.len() {
                let mut m = Matrix::zeros(&QQ, free.len(), basis[d].len());
                for bi in 0..basis[d].len() {
                    if let Some(ci) = cand_index(a, bi) {
                        let col = project(ci);
                        for (k, x) in col.into_iter().enumerate() {
                            m.set(k, bi, x);
                        }
                    }
                }
                act_d.push(m);
            }
            acts.push(act_d);
            basis.push(next_basis);
        }
        if !saturated && basis.last().map_or(true, |b| b.is_empty()) {
            saturated = true;
        }
        // Assemble the module: global index per (degree, position) split by vertex.
        let mut dims = vec![0usize; q.n];
        let mut loc: Vec<Vec<(usize, usize)>> = Vec::new();
        let mut words: Vec<Vec<Vec<usize>>> = vec![Vec::new(); q.n];
        for deg in &basis {
            let mut l = Vec::new();
            for (vx, w) in deg {
                l.push((*vx, dims[*vx]));
                dims[*vx] += 1;
                words[*vx].push(w.clone());
            }
            loc.push(l);
        }
        let mut maps: Vec<QMatrix> = q.arrows.iter().map(|a| Matrix::zeros(&QQ, dims[a.target], dims[a.source])).collect();
        for (d, act_d) in acts.iter().enumerate() {
            for (a, m) in act_d.iter().enumerate() {
                for i in 0..m.rows() {
                    for j in 0..m.cols() {
                        let x = m.get(i, j);
                        if x.is_zero() {
                            continue;
                        }
                        let (_, ti) = loc[d + 1][i];
                        let (_, sj) = loc[d][j];
                        maps[a].set(ti, sj, x.clone());
                    }
                }
            }
        }
        GradedProjective { module: Rep { dims, maps }, words, saturated }
    }
}

fn endpoints(q: &Quiver, p: &[usize]) -> (usize, usize) {
    (q.source(p[0]), q.target(*p.last().unwrap()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_preprojective_projectives() {
        let bq = BoundQuiver::preprojective(&CartanData::type_a(2));
        let p0 = bq.graded_projective(0, 10);
        assert!(p0.saturated);
        assert_eq!(p0.module.dims, vec![1, 1]);
        let p1 = bq.graded_projective(1, 10);
        assert_eq!(p1.module.dims, vec![1, 1]);
    }

    #[test]
    fn a3_preprojective_dimension() {
        let bq = BoundQuiver::preprojective(&CartanData::type_a(3));
        let total: usize = (0..3).map(|v| bq.graded_projective(v, 20).module.total_dim()).sum();
        assert_eq!(total, 10);
    }

    #[test]
    fn truncation_reports_unsaturated() {
        let mut q = Quiver::new(1);
        q.add_arrow("a", 0, 0);
        let bq = BoundQuiver::new(q, vec![]).unwrap();
        let p = bq.graded_projective(0, 4);
        assert!(!p.saturated);
        assert_eq!(p.module.dims, vec![4]);
    }
}
