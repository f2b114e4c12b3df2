//! Morphism spaces, first extension groups and isomorphism tests.

use crate::arith::matrix::subspace;
use crate::arith::{Field, Matrix, QMatrix, Q, QQ};
use crate::rep::module::Rep;
use crate::rep::quiver::{BoundQuiver, Quiver};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt::Debug;

/// A morphism given by one matrix per vertex (`dims_target[v] × dims_source[v]`).
pub type Morphism<E> = Vec<Matrix<E>>;

/// Offsets of the vertex blocks `Hom_F(X_v, Y_v)` in flattened coordinates.
fn hom_layout<E>(x: &Rep<E>, y: &Rep<E>) -> Vec<usize> {
    let mut off = vec![0];
    for v in 0..x.dims.len() {
        off.push(off[v] + x.dims[v] * y.dims[v]);
    }
    off
}

/// The linear system whose kernel is `Hom(X, Y)`.
fn hom_system<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, y: &Rep<F::E>) -> (Matrix<F::E>, Vec<usize>) {
    let off = hom_layout(x, y);
    let nvars = *off.last().unwrap();
    let nrows: usize = q.arrows.iter().map(|a| y.dims[a.target] * x.dims[a.source]).sum();
    let mut m = Matrix::zeros(f, nrows, nvars);
    let mut row = 0;
    for (a, arr) in q.arrows.iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        let (ya, xa) = (&y.maps[a], &x.maps[a]);
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                // (Y(a) f_s)[i, j] = Σ_k Y(a)[i,k] f_s[k,j]
                for k in 0..y.dims[s] {
                    let c = ya.get(i, k);
                    if !f.is_zero(c) {
                        let col = off[s] + k * x.dims[s] + j;
                        let v = f.add(m.get(row, col), c);
                        m.set(row, col, v);
                    }
                }
                // −(f_t X(a))[i, j] = −Σ_l f_t[i,l] X(a)[l,j]
                for l in 0..x.dims[t] {
                    let c = xa.get(l, j);
                    if !f.is_zero(c) {
                        let col = off[t] + i * x.dims[t] + l;
                        let v = f.sub(m.get(row, col), c);
                        m.set(row, col, v);
                    }
                }
                row += 1;
            }
        }
    }
    (m, off)
}

/// Unflattens a coordinate vector into vertex matrices.
pub fn unflatten<E: Clone + PartialEq + Debug>(x: &Rep<E>, y: &Rep<E>, v: &[E]) -> Morphism<E> {
    let off = hom_layout(x, y);
    (0..x.dims.len())
        .map(|w| {
            let (r, c) = (y.dims[w], x.dims[w]);
            Matrix::from_fn(r, c, |i, j| v[off[w] + i * c + j].clone())
        })
        .collect()
}

pub fn flatten<E: Clone>(m: &Morphism<E>) -> Vec<E> {
    m.iter().flat_map(|b| b.entries().to_vec()).collect()
}

/// A basis of `Hom(X, Y)`.
pub fn hom_space<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, y: &Rep<F::E>) -> Vec<Morphism<F::E>> {
    let (m, _) = hom_system(f, q, x, y);
    let k = m.kernel(f);
    (0..k.cols()).map(|c| unflatten(x, y, &k.col(c))).collect()
}

pub fn hom_dim<F: Field>(f: &F, q: &Quiver, x: &Rep<F::E>, y: &Rep<F::E>) -> usize {
    let (m, off) = hom_system(f, q, x, y);
    *off.last().unwrap() - m.rank(f)
}

/// Composite `g ∘ h`.
pub fn compose<F: Field>(f: &F, g: &Morphism<F::E>, h: &Morphism<F::E>) -> Morphism<F::E> {
    g.iter().zip(h).map(|(a, b)| a.mul(f, b)).collect()
}

pub fn lin_comb<F: Field>(f: &F, basis: &[Morphism<F::E>], coeffs: &[F::E], shape_from: &Morphism<F::E>) -> Morphism<F::E> {
    let mut out: Morphism<F::E> = shape_from.iter().map(|b| Matrix::zeros(f, b.rows(), b.cols())).collect();
    for (m, c) in basis.iter().zip(coeffs) {
        if f.is_zero(c) {
            continue;
        }
        for (o, b) in out.iter_mut().zip(m) {
            *o = o.add(f, &b.scale(f, c));
        }
    }
    out
}

pub fn is_iso<F: Field>(f: &F, m: &Morphism<F::E>) -> bool {
    m.iter().all(|b| b.rows() == b.cols() && b.rank(f) == b.rows())
}

pub fn is_injective<F: Field>(f: &F, m: &Morphism<F::E>) -> bool {
    m.iter().all(|b| b.rank(f) == b.cols())
}

pub fn is_surjective<F: Field>(f: &F, m: &Morphism<F::E>) -> bool {
    m.iter().all(|b| b.rank(f) == b.rows())
}

/// Image of a morphism as a family of subspaces of the target.
pub fn image_subspaces<F: Field>(f: &F, m: &Morphism<F::E>) -> Vec<Matrix<F::E>> {
    m.iter().map(|b| b.col_space(f)).collect()
}

pub fn kernel_subspaces<F: Field>(f: &F, m: &Morphism<F::E>) -> Vec<Matrix<F::E>> {
    m.iter().map(|b| b.kernel(f)).collect()
}

/// Random element of a morphism space with small integer coefficients.
pub fn random_element(basis: &[Morphism<Q>], shape_from: &Morphism<Q>, rng: &mut ChaCha8Rng) -> Morphism<Q> {
    let coeffs: Vec<Q> = basis.iter().map(|_| Q::from_int(rng.gen_range(-97..=97))).collect();
    lin_comb(&QQ, basis, &coeffs, shape_from)
}

fn zero_morphism(x: &Rep<Q>, y: &Rep<Q>) -> Morphism<Q> {
    (0..x.dims.len()).map(|v| QMatrix::zeros(&QQ, y.dims[v], x.dims[v])).collect()
}

/// Isomorphism test over ℚ: a random element of `Hom(X, Y)` is invertible with
/// probability one when `X ≅ Y`; the seeded trials make the answer deterministic.
pub fn isomorphic(q: &Quiver, x: &Rep<Q>, y: &Rep<Q>) -> bool {
    if x.dims != y.dims {
        return false;
    }
    let basis = hom_space(&QQ, q, x, y);
    if basis.is_empty() {
        return x.total_dim() == 0;
    }
    let shape = zero_morphism(x, y);
    let mut rng = ChaCha8Rng::seed_from_u64(0x150);
    (0..5).any(|_| is_iso(&QQ, &random_element(&basis, &shape, &mut rng)))
}

/// Indecomposability test: a module with local endomorphism ring has every
/// endomorphism equal to a scalar plus a nilpotent.
pub fn is_indecomposable(q: &Quiver, x: &Rep<Q>) -> bool {
    let d = x.total_dim();
    if d == 0 {
        return false;
    }
    let basis = hom_space(&QQ, q, x, x);
    let shape = zero_morphism(x, x);
    let mut rng = ChaCha8Rng::seed_from_u64(0x1dec);
    (0..3).all(|_| {
        let phi = random_element(&basis, &shape, &mut rng);
        let tr = phi.iter().fold(Q::zero(), |acc, b| (0..b.rows()).fold(acc, |a, i| &a + b.get(i, i)));
        let lam = &tr / &Q::from_int(d as i64);
        phi.iter().all(|b| {
            let n = b.sub(&QQ, &QMatrix::identity(&QQ, b.rows()).scale(&QQ, &lam));
            let mut p = QMatrix::identity(&QQ, b.rows());
            for _ in 0..b.rows() {
                p = p.mul(&QQ, &n);
            }
            p.is_zero(&QQ)
        })
    })
}

/// First extension group `Ext¹(X, Y)` computed from the standard complex
/// `⊕_v Hom(X_v, Y_v) → ⊕_a Hom(X_{s(a)}, Y_{t(a)}) → ⊕_ρ Hom(X_{s(ρ)}, Y_{t(ρ)})`.
#[derive(Clone, Debug)]
pub struct Ext1 {
    /// Offsets of the arrow blocks in cochain coordinates.
    offsets: Vec<usize>,
    shapes: Vec<(usize, usize)>,
    /// Coboundaries (columns).
    coboundaries: QMatrix,
    /// Cocycles completing the coboundaries to a basis of all cocycles (columns).
    basis: QMatrix,
    /// Projection from cocycle space coordinates onto the basis.
    proj: QMatrix,
}

impl Ext1 {
    pub fn compute(bq: &BoundQuiver, x: &Rep<Q>, y: &Rep<Q>) -> Ext1 {
        let q = &bq.quiver;
        let shapes: Vec<(usize, usize)> = q.arrows.iter().map(|a| (y.dims[a.target], x.dims[a.source])).collect();
        let mut offsets = vec![0];
        for s in &shapes {
            offsets.push(offsets.last().unwrap() + s.0 * s.1);
        }
        let n1 = *offsets.last().unwrap();
        // d0
        let (d0, _) = hom_system(&QQ, q, x, y);
        // d1
        let mut d1_rows: Vec<Vec<Q>> = Vec::new();
        for rel in &bq.relations {
            let first = &rel.terms[0].1;
            let (s, t) = (q.source(first[0]), q.target(*first.last().unwrap()));
            let block_start = d1_rows.len();
            for _ in 0..y.dims[t] * x.dims[s] {
                d1_rows.push(vec![Q::zero(); n1]);
            }
            for (c, path) in &rel.terms {
                for i in 0..path.len() {
                    let a = path[i];
                    let left = y.eval_word(&QQ, q, q.target(a), &path[i + 1..]);
                    let right = x.eval_word(&QQ, q, s, &path[..i]);
                    let (ra, ca) = shapes[a];
                    for p in 0..y.dims[t] {
                        for qq in 0..x.dims[s] {
                            let row = &mut d1_rows[block_start + p * x.dims[s] + qq];
                            for u in 0..ra {
                                let l = left.get(p, u);
                                if l.is_zero() {
                                    continue;
                                }
                                for v in 0..ca {
                                    let r = right.get(v, qq);
                                    if r.is_zero() {
                                        continue;
                                    }
                                    let idx = offsets[a] + u * ca + v;
                                    row[idx] = &row[idx] + &(&(c * l) * r);
                                }
                            }
                        }
                    }
                }
            }
        }
        let d1 = QMatrix::from_rows(d1_rows, n1);
        let cocycles = d1.kernel(&QQ);
        let im = d0.col_space(&QQ);
        let basis = subspace::complement(&QQ, &im, &cocycles);
        let full = QMatrix::hstack(&[&im, &basis], n1);
        let ext = subspace::complement(&QQ, &full, &QMatrix::identity(&QQ, n1));
        let all = QMatrix::hstack(&[&full, &ext], n1);
        let inv = all.inverse(&QQ).expect("basis extension");
        let proj = inv.block(im.cols(), im.cols() + basis.cols(), 0, n1);
        Ext1 { offsets, shapes, coboundaries: im, basis, proj }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn coboundary_dim(&self) -> usize {
        self.coboundaries.cols()
    }

    /// Basis cocycle `i` as arrow matrices `η_a : X_{s(a)} → Y_{t(a)}`.
    pub fn cocycle(&self, i: usize) -> Vec<QMatrix> {
        self.vec_to_cochain(&self.basis.col(i))
    }

    pub fn vec_to_cochain(&self, v: &[Q]) -> Vec<QMatrix> {
        self.shapes
            .iter()
            .enumerate()
            .map(|(a, &(r, c))| QMatrix::from_fn(r, c, |i, j| v[self.offsets[a] + i * c + j].clone()))
            .collect()
    }

    pub fn cochain_to_vec(&self, eta: &[QMatrix]) -> Vec<Q> {
        eta.iter().flat_map(|m| m.entries().to_vec()).collect()
    }

    /// Coordinates of the class of a cocycle in the chosen basis.
    pub fn class_coords(&self, eta: &[QMatrix]) -> Vec<Q> {
        self.proj.mul_vec(&QQ, &self.cochain_to_vec(eta))
    }

    /// Middle term `E` of the extension `0 → Y → E → X → 0` given by a cocycle;
    /// `E_v = Y_v ⊕ X_v`.
    pub fn middle_term(q: &Quiver, x: &Rep<Q>, y: &Rep<Q>, eta: &[QMatrix]) -> Rep<Q> {
        let dims: Vec<usize> = (0..q.n).map(|v| y.dims[v] + x.dims[v]).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let mut m = QMatrix::zeros(&QQ, dims[arr.target], dims[arr.source]);
                m.set_block(0, 0, &y.maps[a]);
                m.set_block(0, y.dims[arr.source], &eta[a]);
                m.set_block(y.dims[arr.target], y.dims[arr.source], &x.maps[a]);
                m
            })
            .collect();
        Rep { dims, maps }
    }
}

/// Pullback `η ∘ f` of a cocycle along `f : X' → X`.
pub fn pullback(q: &Quiver, eta: &[QMatrix], f: &Morphism<Q>) -> Vec<QMatrix> {
    q.arrows.iter().enumerate().map(|(a, arr)| eta[a].mul(&QQ, &f[arr.source])).collect()
}

/// Pushforward `g ∘ η` of a cocycle along `g : Y → Y'`.
pub fn pushforward(q: &Quiver, eta: &[QMatrix], g: &Morphism<Q>) -> Vec<QMatrix> {
    q.arrows.iter().enumerate().map(|(a, arr)| g[arr.target].mul(&QQ, &eta[a])).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::CartanData;

    fn a2_path() -> (Quiver, Rep<Q>) {
        let mut q = Quiver::new(2);
        q.add_arrow("a", 0, 1);
        (q, Rep { dims: vec![1, 1], maps: vec![QMatrix::from_i64_rows(&[vec![1]], 1)] })
    }

    #[test]
    fn hom_dims_on_a2() {
        let (q, p) = a2_path();
        let s0 = Rep::simple(&QQ, &q, 0);
        let s1 = Rep::simple(&QQ, &q, 1);
        assert_eq!(hom_dim(&QQ, &q, &p, &s0), 1);
        assert_eq!(hom_dim(&QQ, &q, &s0, &p), 0);
        assert_eq!(hom_dim(&QQ, &q, &s1, &p), 1);
        assert_eq!(hom_dim(&QQ, &q, &p, &p), 1);
    }

    #[test]
    fn ext_between_simples() {
        let (q, p) = a2_path();
        let bq = BoundQuiver::new(q.clone(), vec![]).unwrap();
        let s0 = Rep::simple(&QQ, &q, 0);
        let s1 = Rep::simple(&QQ, &q, 1);
        let e = Ext1::compute(&bq, &s0, &s1);
        assert_eq!(e.dim(), 1);
        assert_eq!(Ext1::compute(&bq, &s1, &s0).dim(), 0);
        let mid = Ext1::middle_term(&q, &s0, &s1, &e.cocycle(0));
        assert!(isomorphic(&q, &mid, &p));
    }

    #[test]
    fn preprojective_a2_simples_ext() {
        let bq = BoundQuiver::preprojective(&CartanData::type_a(2));
        let s0 = Rep::simple(&QQ, &bq.quiver, 0);
        let s1 = Rep::simple(&QQ, &bq.quiver, 1);
        assert_eq!(Ext1::compute(&bq, &s0, &s1).dim(), 1);
        assert_eq!(Ext1::compute(&bq, &s1, &s0).dim(), 1);
        assert_eq!(Ext1::compute(&bq, &s0, &s0).dim(), 0);
    }

    #[test]
    fn decomposable_detected() {
        let (q, p) = a2_path();
        let s = Rep::direct_sum(&QQ, &q, &[&p, &Rep::simple(&QQ, &q, 0)]);
        assert!(is_indecomposable(&q, &p));
        assert!(!is_indecomposable(&q, &s));
        assert!(!is_indecomposable(&q, &Rep::direct_sum(&QQ, &q, &[&p, &p])));
    }
}
