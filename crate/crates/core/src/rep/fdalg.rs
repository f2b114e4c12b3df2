//! Finite-dimensional basic algebras given by their indecomposable projectives,
//! with projective presentations and the Auslander–Reiten translate.

use crate::arith::matrix::subspace;
use crate::arith::{Matrix, QMatrix, Q, QQ};
use crate::error::{Error, Result};
use crate::rep::hom::{self, Morphism};
use crate::rep::module::{Rep, SubSpaces};
use crate::rep::quiver::{BoundQuiver, Quiver};

/// Degree cutoff beyond which an algebra is reported as infinite dimensional.
pub const DEGREE_CUTOFF: usize = 30;

/// A basic algebra `A = kQ/I`, stored through its left projectives `P_i = A e_i`.
///
/// The basis of `P_i` at vertex `v` is a list of paths from `i` to `v`
/// (`words[i][v]`); the generator `e_i` is the first basis vector of `P_i(i)`.
#[derive(Clone, Debug)]
pub struct FdAlgebra {
    pub quiver: Quiver,
    pub projectives: Vec<Rep<Q>>,
    pub words: Vec<Vec<Vec<Vec<usize>>>>,
}

/// A projective presentation `P_1 → P_0 → M → 0`.
#[derive(Clone, Debug)]
pub struct Presentation {
    /// Vertex of each indecomposable summand of `P_0`.
    pub p0: Vec<usize>,
    /// Vertex of each indecomposable summand of `P_1`.
    pub p1: Vec<usize>,
    /// `components[s1][s0]` is the element of `e_{p1[s1]} A e_{p0[s0]}` (coordinates
    /// in the basis of `P_{p0[s0]}(p1[s1])`) describing `P_{p1[s1]} → P_{p0[s0]}`.
    pub components: Vec<Vec<Vec<Q>>>,
}

impl FdAlgebra {
    pub fn from_projectives(quiver: Quiver, projectives: Vec<Rep<Q>>, words: Vec<Vec<Vec<Vec<usize>>>>) -> FdAlgebra {
        FdAlgebra { quiver, projectives, words }
    }

    /// The algebra of a bound quiver; fails if paths survive up to the cutoff.
    pub fn from_bound_quiver(bq: &BoundQuiver) -> Result<FdAlgebra> {
        let mut projectives = Vec::new();
        let mut words = Vec::new();
        for v in 0..bq.quiver.n {
            let gp = bq.graded_projective(v, DEGREE_CUTOFF);
            if !gp.saturated {
                return Err(Error::NotFiniteDimensional(DEGREE_CUTOFF));
            }
            projectives.push(gp.module);
            words.push(gp.words);
        }
        Ok(FdAlgebra { quiver: bq.quiver.clone(), projectives, words })
    }

    pub fn n(&self) -> usize {
        self.quiver.n
    }

    pub fn dim(&self) -> usize {
        self.projectives.iter().map(|p| p.total_dim()).sum()
    }

    /// `dim e_j A e_i = dim P_i(j)`.
    pub fn cartan_entry(&self, i: usize, j: usize) -> usize {
        self.projectives[i].dims[j]
    }

    pub fn simple(&self, i: usize) -> Rep<Q> {
        Rep::simple(&QQ, &self.quiver, i)
    }

    /// The morphism `P_i → M` sending the generator to `m ∈ M(i)`.
    pub fn hom_from_projective(&self, i: usize, m: &Rep<Q>, vec: &[Q]) -> Morphism<Q> {
        let q = &self.quiver;
        (0..q.n)
            .map(|v| {
                let cols: Vec<Vec<Q>> = self.words[i][v].iter().map(|w| m.eval_word(&QQ, q, i, w).mul_vec(&QQ, vec)).collect();
                QMatrix::from_cols(&cols, m.dims[v], Q::zero())
            })
            .collect()
    }

    /// Action of the algebra element `u ∈ e_t A e_s` (coordinates in the basis of
    /// `P_s(t)`) on a module, as a matrix `M(s) → M(t)`.
    pub fn element_action(&self, s: usize, t: usize, u: &[Q], m: &Rep<Q>) -> QMatrix {
        let q = &self.quiver;
        let mut acc = QMatrix::zeros(&QQ, m.dims[t], m.dims[s]);
        for (c, w) in u.iter().zip(&self.words[s][t]) {
            if !c.is_zero() {
                acc = acc.add(&QQ, &m.eval_word(&QQ, q, s, w).scale(&QQ, c));
            }
        }
        acc
    }

    /// Whether `M` is an `A`-module, i.e. compatible with every projective.
    pub fn is_module(&self, m: &Rep<Q>) -> bool {
        let q = &self.quiver;
        if m.check_shapes(q).is_err() {
            return false;
        }
        for i in 0..q.n {
            for b in 0..m.dims[i] {
                let mut e = vec![Q::zero(); m.dims[i]];
                e[b] = Q::one();
                let h = self.hom_from_projective(i, m, &e);
                for (a, arr) in q.arrows.iter().enumerate() {
                    let lhs = m.maps[a].mul(&QQ, &h[arr.source]);
                    let rhs = h[arr.target].mul(&QQ, &self.projectives[i].maps[a]);
                    if lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The injective `I_i = D(e_i A)`.
    pub fn injective(&self, i: usize) -> Rep<Q> {
        let q = &self.quiver;
        let dims: Vec<usize> = (0..q.n).map(|v| self.projectives[v].dims[i]).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                // Right multiplication by `a` maps P_{t(a)} → P_{s(a)}; take its dual at vertex i.
                let (v, l) = (arr.source, arr.target);
                let pv = &self.projectives[v];
                let mut g = vec![Q::zero(); pv.dims[v]];
                g[0] = Q::one();
                let image = pv.maps[a].mul_vec(&QQ, &g);
                let r = self.hom_from_projective(l, pv, &image);
                r[i].transpose()
            })
            .collect();
        Rep { dims, maps }
    }

    /// Radical of `P_i` as subspaces.
    pub fn radical_of_projective(&self, i: usize) -> SubSpaces<Q> {
        let p = &self.projectives[i];
        (0..self.n())
            .map(|v| {
                let id = QMatrix::identity(&QQ, p.dims[v]);
                if v == i {
                    id.select_cols(&(1..p.dims[v]).collect::<Vec<_>>())
                } else {
                    id
                }
            })
            .collect()
    }

    /// Projective cover: summand vertices and the morphism `⊕ P_{v} → M`.
    pub fn projective_cover(&self, m: &Rep<Q>) -> (Vec<usize>, Rep<Q>, Morphism<Q>) {
        let q = &self.quiver;
        let rad = m.radical(&QQ, q);
        let mut summands = Vec::new();
        let mut gens: Vec<Vec<Q>> = Vec::new();
        for v in 0..q.n {
            let top = subspace::complement(&QQ, &rad[v], &QMatrix::identity(&QQ, m.dims[v]));
            for c in 0..top.cols() {
                summands.push(v);
                gens.push(top.col(c));
            }
        }
        let parts: Vec<&Rep<Q>> = summands.iter().map(|&v| &self.projectives[v]).collect();
        let p0 = Rep::direct_sum(&QQ, q, &parts);
        let mut map: Morphism<Q> = (0..q.n).map(|v| QMatrix::zeros(&QQ, m.dims[v], p0.dims[v])).collect();
        let mut off = vec![0usize; q.n];
        for (s, &v) in summands.iter().enumerate() {
            let h = self.hom_from_projective(v, m, &gens[s]);
            for w in 0..q.n {
                map[w].set_block(0, off[w], &h[w]);
                off[w] += self.projectives[v].dims[w];
            }
        }
        (summands, p0, map)
    }

    /// Minimal projective presentation.
    pub fn presentation(&self, m: &Rep<Q>) -> Presentation {
        let q = &self.quiver;
        let (p0v, p0, pi) = self.projective_cover(m);
        let ker = hom::kernel_subspaces(&QQ, &pi);
        let k = p0.sub_rep(&QQ, q, &ker).expect("kernel is a submodule");
        let (p1v, _, pk) = self.projective_cover(&k);
        let mut components = Vec::new();
        let mut off1 = vec![0usize; q.n];
        for &i in &p1v {
            // Image of the generator of this copy of P_i in P_0(i).
            let mut g = vec![Q::zero(); self.projectives[i].dims[i]];
            g[0] = Q::one();
            let mut gen_in_p1 = vec![Q::zero(); pk[i].cols()];
            for (t, x) in g.iter().enumerate() {
                gen_in_p1[off1[i] + t] = x.clone();
            }
            let in_k = pk[i].mul_vec(&QQ, &gen_in_p1);
            let in_p0 = ker[i].mul_vec(&QQ, &in_k);
            let mut comps = Vec::new();
            let mut off0 = 0;
            for &j in &p0v {
                let d = self.projectives[j].dims[i];
                comps.push(in_p0[off0..off0 + d].to_vec());
                off0 += d;
            }
            components.push(comps);
            for w in 0..q.n {
                off1[w] += self.projectives[i].dims[w];
            }
        }
        Presentation { p0: p0v, p1: p1v, components }
    }

    /// Applies the Nakayama functor to a presentation: `ν(P_1) → ν(P_0)`.
    fn nakayama(&self, pres: &Presentation) -> (Rep<Q>, Rep<Q>, Morphism<Q>) {
        let q = &self.quiver;
        let inj: Vec<Rep<Q>> = (0..q.n).map(|i| self.injective(i)).collect();
        let i1 = Rep::direct_sum(&QQ, q, &pres.p1.iter().map(|&v| &inj[v]).collect::<Vec<_>>());
        let i0 = Rep::direct_sum(&QQ, q, &pres.p0.iter().map(|&v| &inj[v]).collect::<Vec<_>>());
        let mut map: Morphism<Q> = (0..q.n).map(|l| QMatrix::zeros(&QQ, i0.dims[l], i1.dims[l])).collect();
        for l in 0..q.n {
            let mut r1 = 0;
            for (s1, &i) in pres.p1.iter().enumerate() {
                let mut r0 = 0;
                for (s0, &j) in pres.p0.iter().enumerate() {
                    // Left multiplication by u maps P_l(j) → P_l(i); its dual is the block.
                    let lu = self.element_action(j, i, &pres.components[s1][s0], &self.projectives[l]);
                    map[l].set_block(r0, r1, &lu.transpose());
                    r0 += inj[j].dims[l];
                }
                r1 += inj[i].dims[l];
            }
        }
        (i1, i0, map)
    }

    /// Auslander–Reiten translate `τM = Ker(ν(P_1) → ν(P_0))`.
    pub fn tau(&self, m: &Rep<Q>) -> Rep<Q> {
        if m.total_dim() == 0 {
            return m.clone();
        }
        let pres = self.presentation(m);
        let (i1, _, map) = self.nakayama(&pres);
        let ker = hom::kernel_subspaces(&QQ, &map);
        i1.sub_rep(&QQ, &self.quiver, &ker).expect("kernel is a submodule")
    }

    /// `τ⁻¹M = D τ_{A^op}(D M)`.
    pub fn tau_inverse(&self, m: &Rep<Q>) -> Rep<Q> {
        self.opposite().tau(&m.dual()).dual()
    }

    /// The opposite algebra; arrow indices are preserved.
    pub fn opposite(&self) -> FdAlgebra {
        let q = &self.quiver;
        let qop = q.opposite();
        let mut projectives = Vec::new();
        let mut words = Vec::new();
        for i in 0..q.n {
            let dims: Vec<usize> = (0..q.n).map(|j| self.projectives[j].dims[i]).collect();
            let maps = q
                .arrows
                .iter()
                .enumerate()
                .map(|(b, arr)| {
                    // b : j' → j acts on e_i A e_j → e_i A e_{j'} by right multiplication.
                    let (jp, j) = (arr.source, arr.target);
                    let pjp = &self.projectives[jp];
                    let mut g = vec![Q::zero(); pjp.dims[jp]];
                    g[0] = Q::one();
                    let image = pjp.maps[b].mul_vec(&QQ, &g);
                    self.hom_from_projective(j, pjp, &image)[i].clone()
                })
                .collect();
            projectives.push(Rep { dims, maps });
            words.push((0..q.n).map(|j| self.words[j][i].iter().map(|w| w.iter().rev().cloned().collect()).collect()).collect());
        }
        FdAlgebra { quiver: qop, projectives, words }
    }

    /// `dim Ext¹(S_k, M) = dim Hom(rad P_k, M) − dim Hom(P_k, M) + dim Hom(S_k, M)`.
    pub fn ext1_simple_dim(&self, k: usize, m: &Rep<Q>) -> usize {
        let q = &self.quiver;
        let rad = self.projectives[k].sub_rep(&QQ, q, &self.radical_of_projective(k)).expect("radical");
        let h_rad = hom::hom_dim(&QQ, q, &rad, m);
        let h_s = hom::hom_dim(&QQ, q, &self.simple(k), m);
        h_rad + h_s - m.dims[k]
    }

    /// All indecomposables reachable from simples, projectives and injectives
    /// by `τ^{±1}`, up to isomorphism and a size bound.
    pub fn tau_orbit_closure(&self, extra: &[Rep<Q>], max_dim: usize) -> Vec<Rep<Q>> {
        let q = &self.quiver;
        let mut found: Vec<Rep<Q>> = Vec::new();
        let mut queue: Vec<Rep<Q>> = Vec::new();
        for i in 0..q.n {
            queue.push(self.simple(i));
            queue.push(self.projectives[i].clone());
            queue.push(self.injective(i));
        }
        queue.extend(extra.iter().cloned());
        while let Some(m) = queue.pop() {
            if m.total_dim() == 0 || m.total_dim() > max_dim {
                continue;
            }
            if found.iter().any(|x| hom::isomorphic(q, x, &m)) {
                continue;
            }
            found.push(m.clone());
            queue.push(self.tau(&m));
            queue.push(self.tau_inverse(&m));
        }
        found
    }
}

/// Convenience: matrix whose columns span a single vector.
pub fn column(v: &[Q]) -> QMatrix {
    Matrix::from_cols(&[v.to_vec()], v.len(), Q::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::quiver::Relation;
    use crate::weyl::CartanData;

    fn a3_linear() -> FdAlgebra {
        let mut q = Quiver::new(3);
        q.add_arrow("a", 0, 1);
        q.add_arrow("b", 1, 2);
        FdAlgebra::from_bound_quiver(&BoundQuiver::new(q, vec![]).unwrap()).unwrap()
    }

    #[test]
    fn linear_a3_projectives_and_injectives() {
        let a = a3_linear();
        assert_eq!(a.projectives[0].dims, vec![1, 1, 1]);
        assert_eq!(a.projectives[2].dims, vec![0, 0, 1]);
        assert_eq!(a.injective(2).dims, vec![1, 1, 1]);
        assert_eq!(a.injective(0).dims, vec![1, 0, 0]);
        for i in 0..3 {
            assert!(a.is_module(&a.injective(i)));
        }
    }

    #[test]
    fn tau_on_linear_a3() {
        let a = a3_linear();
        // τ S_0 = S_1 for 0 → 1 → 2; τ of a projective vanishes.
        let t = a.tau(&a.simple(0));
        assert_eq!(t.dims, vec![0, 1, 0]);
        assert_eq!(a.tau(&a.projectives[1]).total_dim(), 0);
        let ti = a.tau_inverse(&a.simple(1));
        assert_eq!(ti.dims, vec![1, 0, 0]);
        assert_eq!(a.tau_orbit_closure(&[], 10).len(), 6);
    }

    #[test]
    fn ext_simple_counts_arrows() {
        let a = a3_linear();
        assert_eq!(a.ext1_simple_dim(0, &a.simple(1)), 1);
        assert_eq!(a.ext1_simple_dim(1, &a.simple(0)), 0);
    }

    #[test]
    fn preprojective_a2_is_self_injective() {
        let a = FdAlgebra::from_bound_quiver(&BoundQuiver::preprojective(&CartanData::type_a(2))).unwrap();
        assert_eq!(a.dim(), 4);
        assert!(hom::isomorphic(&a.quiver, &a.projectives[0], &a.injective(1)));
    }

    #[test]
    fn infinite_dimensional_detected() {
        let mut q = Quiver::new(1);
        q.add_arrow("a", 0, 0);
        let bq = BoundQuiver::new(q.clone(), vec![]).unwrap();
        assert_eq!(FdAlgebra::from_bound_quiver(&bq).unwrap_err(), Error::NotFiniteDimensional(DEGREE_CUTOFF));
        let bq = BoundQuiver::new(q, vec![Relation::monomial(vec![0, 0, 0])]).unwrap();
        assert_eq!(FdAlgebra::from_bound_quiver(&bq).unwrap().dim(), 3);
    }
}
