//! The modules `V_k`, the `i`-injectives, covers and syzygies in `C_w`, membership
//! and balancedness.

use crate::arith::matrix::subspace;
use crate::arith::{Matrix, QMatrix, Q, QQ};
use crate::error::{Error, Result};
use crate::rep::filtration::{socle_filtration, top_filtration, Filtration};
use crate::rep::hom::{self, Morphism};
use crate::rep::module::{Rep, SubSpaces};
use crate::rep::quiver::{BoundQuiver, Quiver};
use crate::weyl::{CartanData, ReducedWord};
use serde_json::{json, Value};

/// `V_k = D(e_{i_k}(A/J_{k,1}))`, computed as the dual of a truncated projective of
/// the opposite algebra modulo its top series of type `(i_k, …, i_1)`.
pub fn build_vk(bq: &BoundQuiver, word: &ReducedWord, k: usize) -> Rep<Q> {
    let op = bq.opposite();
    let gp = op.graded_projective(word.letter(k), k);
    let letters: Vec<usize> = (1..=k).rev().map(|s| word.letter(s)).collect();
    let fl = top_filtration(&QQ, &op.quiver, &gp.module, &letters);
    let (quot, _) = gp.module.quotient_rep(&QQ, &op.quiver, &fl.chain[k]);
    quot.dual()
}

/// The socle-series submodule of type `(i_k, …, i_1)` of `V_{k_max}`.
pub fn vk_via_socle(q: &Quiver, word: &ReducedWord, vmax: &Rep<Q>, k: usize) -> Rep<Q> {
    let letters: Vec<usize> = (1..=k).map(|s| word.letter(s)).collect();
    let fl = socle_filtration(&QQ, q, vmax, &letters);
    vmax.sub_rep(&QQ, q, &fl.chain[0]).expect("socle series consists of submodules")
}

/// A minimal right approximation `⊕ T_j^{m_j} → X` by a list of pairwise
/// non-isomorphic indecomposables.
#[derive(Clone, Debug)]
pub struct Approximation {
    pub multiplicities: Vec<usize>,
    /// Summand index of each copy in `source`, in order.
    pub copies: Vec<usize>,
    pub source: Rep<Q>,
    pub map: Morphism<Q>,
    pub surjective: bool,
}

impl Approximation {
    /// Kernel of the approximation as a module.
    pub fn kernel(&self, q: &Quiver) -> Rep<Q> {
        let ker = hom::kernel_subspaces(&QQ, &self.map);
        self.source.sub_rep(&QQ, q, &ker).expect("kernel is a submodule")
    }
}

fn trace(m: &Morphism<Q>) -> Q {
    m.iter().fold(Q::zero(), |acc, b| (0..b.rows()).fold(acc, |a, i| &a + b.get(i, i)))
}

/// Radical morphisms `T_j → T_l`: everything for `j ≠ l`, traceless endomorphisms for `j = l`.
pub fn radical_basis(q: &Quiver, tj: &Rep<Q>, tl: &Rep<Q>, same: bool) -> Vec<Morphism<Q>> {
    let basis = hom::hom_space(&QQ, q, tj, tl);
    if !same {
        return basis;
    }
    // Kernel of the trace functional.
    let traces: Vec<Q> = basis.iter().map(trace).collect();
    let Some(p) = traces.iter().position(|t| !t.is_zero()) else {
        return basis;
    };
    basis
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != p)
        .map(|(i, b)| {
            let c = &traces[i] / &traces[p];
            b.iter().zip(&basis[p]).map(|(x, y)| x.sub(&QQ, &y.scale(&QQ, &c))).collect()
        })
        .collect()
}

pub(crate) fn flat_matrix(ms: &[Morphism<Q>], len: usize) -> QMatrix {
    let cols: Vec<Vec<Q>> = ms.iter().map(|m| hom::flatten(m)).collect();
    QMatrix::from_cols(&cols, len, Q::zero())
}

/// Minimal right `add(T)`-approximation: the multiplicity of `T_j` is the dimension of
/// `Hom(T_j, X)` modulo the maps factoring through radical maps into `T`.
pub fn minimal_right_approximation(q: &Quiver, summands: &[Rep<Q>], x: &Rep<Q>) -> Approximation {
    let n = summands.len();
    let homs: Vec<Vec<Morphism<Q>>> = summands.iter().map(|t| hom::hom_space(&QQ, q, t, x)).collect();
    let mut multiplicities = vec![0; n];
    let mut chosen: Vec<(usize, Morphism<Q>)> = Vec::new();
    for j in 0..n {
        if homs[j].is_empty() {
            continue;
        }
        let len = hom::flatten(&homs[j][0]).len();
        let mut factored: Vec<Morphism<Q>> = Vec::new();
        for l in 0..n {
            if homs[l].is_empty() {
                continue;
            }
            for h in radical_basis(q, &summands[j], &summands[l], j == l) {
                for g in &homs[l] {
                    factored.push(hom::compose(&QQ, g, &h));
                }
            }
        }
        let sub = flat_matrix(&factored, len).col_space(&QQ);
        let all = flat_matrix(&homs[j], len);
        let comp = subspace::complement(&QQ, &sub, &all);
        multiplicities[j] = comp.cols();
        for c in 0..comp.cols() {
            chosen.push((j, hom::unflatten(&summands[j], x, &comp.col(c))));
        }
    }
    let copies: Vec<usize> = chosen.iter().map(|(j, _)| *j).collect();
    let parts: Vec<&Rep<Q>> = copies.iter().map(|&j| &summands[j]).collect();
    let source = Rep::direct_sum(&QQ, q, &parts);
    let map: Morphism<Q> = (0..q.n)
        .map(|v| {
            let blocks: Vec<&QMatrix> = chosen.iter().map(|(_, m)| &m[v]).collect();
            if blocks.is_empty() {
                QMatrix::zeros(&QQ, x.dims[v], 0)
            } else {
                Matrix::hstack(&blocks, x.dims[v])
            }
        })
        .collect();
    let surjective = hom::is_surjective(&QQ, &map);
    Approximation { multiplicities, copies, source, map, surjective }
}

/// Whether `X` is a quotient of a direct sum of copies of the given modules.
pub fn generated_by(q: &Quiver, gens: &[Rep<Q>], x: &Rep<Q>) -> bool {
    let mut images: SubSpaces<Q> = x.zero_subspaces(&QQ);
    for g in gens {
        for h in hom::hom_space(&QQ, q, g, x) {
            for v in 0..q.n {
                images[v] = subspace::span(&QQ, x.dims[v], &[&images[v], &h[v]]);
            }
        }
    }
    images.iter().zip(&x.dims).all(|(s, &d)| s.cols() == d)
}

/// Per-step comparison of the two refined filtrations of type `letters`.
pub fn is_balanced(q: &Quiver, x: &Rep<Q>, letters: &[usize]) -> bool {
    let plus = socle_filtration(&QQ, q, x, letters);
    let minus = top_filtration(&QQ, q, x, letters);
    chains_equal(&plus, &minus)
}

fn chains_equal(a: &Filtration<Q>, b: &Filtration<Q>) -> bool {
    a.chain.iter().zip(&b.chain).all(|(s, t)| s.iter().zip(t).all(|(m, n)| subspace::equal(&QQ, m, n)))
}

/// The category `C_w` (or, for algebras that are not preprojective, the category of
/// modules over `A_i`) attached to a word.
#[derive(Clone, Debug)]
pub struct CwContext {
    pub cartan: Option<CartanData>,
    pub algebra: BoundQuiver,
    pub word: ReducedWord,
    /// `V_1, …, V_r`.
    pub v: Vec<Rep<Q>>,
    /// `W_1, …, W_r`; present for preprojective algebras.
    pub w: Option<Vec<Rep<Q>>>,
    /// For each `k`, the multiplicity of each `i`-injective in `P(V_k)`.
    pub cover: Option<Vec<Vec<usize>>>,
}

impl CwContext {
    /// Context for the preprojective algebra of a Cartan datum.
    pub fn preprojective(cartan: &CartanData, word: &ReducedWord) -> Result<CwContext> {
        let bq = BoundQuiver::preprojective(cartan);
        let mut ctx = CwContext::for_algebra(bq, word)?;
        ctx.cartan = Some(cartan.clone());
        ctx.build_w()?;
        Ok(ctx)
    }

    /// Context for an arbitrary bound quiver (no Frobenius structure is assumed).
    pub fn for_algebra(algebra: BoundQuiver, word: &ReducedWord) -> Result<CwContext> {
        if word.n() != algebra.quiver.n {
            return Err(Error::InvalidWord(format!("word is over {} vertices, algebra has {}", word.n(), algebra.quiver.n)));
        }
        let v = (1..=word.r()).map(|k| build_vk(&algebra, word, k)).collect();
        Ok(CwContext { cartan: None, algebra, word: word.clone(), v, w: None, cover: None })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.algebra.quiver
    }

    pub fn r(&self) -> usize {
        self.word.r()
    }

    /// Positions `k_j` of the `i`-injectives, one per vertex in the support of the word.
    pub fn injective_positions(&self) -> Vec<usize> {
        self.word.support().into_iter().map(|j| self.word.last_of(j).expect("in support")).collect()
    }

    /// The `i`-injectives `I_{i,j} = V_{k_j}`.
    pub fn injectives(&self) -> Vec<Rep<Q>> {
        self.injective_positions().into_iter().map(|k| self.v[k - 1].clone()).collect()
    }

    pub fn vk(&self, k: usize) -> &Rep<Q> {
        &self.v[k - 1]
    }

    pub fn wk(&self, k: usize) -> Result<&Rep<Q>> {
        self.w.as_ref().map(|w| &w[k - 1]).ok_or_else(|| Error::Invalid("W modules need a preprojective algebra".into()))
    }

    fn build_w(&mut self) -> Result<()> {
        let inj = self.injectives();
        let mut w = Vec::with_capacity(self.r());
        let mut cover = Vec::with_capacity(self.r());
        for k in 1..=self.r() {
            let (pc, omega) = self.projective_cover(self.vk(k))?;
            cover.push(pc.multiplicities.clone());
            w.push(if self.word.is_frozen(k) { self.vk(k).clone() } else { omega });
            debug_assert_eq!(inj.len(), pc.multiplicities.len());
        }
        self.w = Some(w);
        self.cover = Some(cover);
        Ok(())
    }

    /// `P(X) → X` and `Ω_w(X)`.
    pub fn projective_cover(&self, x: &Rep<Q>) -> Result<(Approximation, Rep<Q>)> {
        let inj = self.injectives();
        let ap = minimal_right_approximation(self.quiver(), &inj, x);
        if !ap.surjective {
            return Err(Error::NotInCw("the add(I)-approximation is not surjective".into()));
        }
        let omega = ap.kernel(self.quiver());
        Ok((ap, omega))
    }

    /// `P(X)` as a module.
    pub fn cover_module(&self, x: &Rep<Q>) -> Result<Rep<Q>> {
        Ok(self.projective_cover(x)?.0.source)
    }

    /// Membership in `C_w = Fac(I_w)`; requires `X` to satisfy the relations.
    pub fn contains(&self, x: &Rep<Q>) -> bool {
        x.satisfies(&self.algebra) && generated_by(self.quiver(), &self.injectives(), x)
    }

    /// Whether every refined socle chain of `X` of type `i` reaches `X`.
    pub fn in_socle_category(&self, x: &Rep<Q>) -> bool {
        let letters: Vec<usize> = (1..=self.r()).map(|k| self.word.letter(k)).collect();
        let fl = socle_filtration(&QQ, self.quiver(), x, &letters);
        crate::rep::filtration::is_full(x, &fl.chain[0])
    }

    /// `V_k` is `(i_k, …, i_1)`-balanced for every `k`.
    pub fn balanced_report(&self) -> Vec<bool> {
        (1..=self.r())
            .map(|k| {
                let letters: Vec<usize> = (1..=k).map(|s| self.word.letter(s)).collect();
                is_balanced(self.quiver(), self.vk(k), &letters)
            })
            .collect()
    }

    /// Checks `V_k ≅ soc_{(i_k, …, i_1)}(V_{k_max})` for every `k`.
    pub fn socle_route_agrees(&self) -> Vec<bool> {
        (1..=self.r())
            .map(|k| {
                let alt = vk_via_socle(self.quiver(), &self.word, self.vk(self.word.k_max(k)), k);
                hom::isomorphic(self.quiver(), &alt, self.vk(k))
            })
            .collect()
    }

    /// JSON dump with all module matrices.
    pub fn to_json(&self) -> Value {
        let q = self.quiver();
        let mods = |v: &[Rep<Q>]| v.iter().map(|m| m.to_json(q)).collect::<Vec<_>>();
        json!({
            "word": self.word.written(),
            "r_max": self.word.r_max(),
            "V": mods(&self.v),
            "W": self.w.as_ref().map(|w| mods(w)),
            "cover": self.cover,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3() -> CwContext {
        let c = CartanData::type_a(3);
        let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1]).unwrap();
        CwContext::preprojective(&c, &w).unwrap()
    }

    #[test]
    fn a3_modules() {
        let ctx = a3();
        assert_eq!(ctx.vk(1).dims, vec![1, 0, 0]);
        assert_eq!(ctx.vk(2).dims, vec![1, 1, 0]);
        assert_eq!(ctx.vk(5).dims, vec![1, 2, 1]);
        assert_eq!(ctx.wk(1).unwrap().dims, vec![0, 1, 1]);
        let cover = ctx.cover.as_ref().unwrap();
        // Injectives are ordered by vertex: V_6, V_5, V_3.
        assert_eq!(ctx.injective_positions(), vec![6, 5, 3]);
        assert_eq!(cover[0], vec![0, 0, 1]);
        assert_eq!(cover[3], vec![0, 1, 0]);
        assert!(ctx.balanced_report().into_iter().all(|b| b));
        assert!(ctx.socle_route_agrees().into_iter().all(|b| b));
    }

    #[test]
    fn membership_for_s1_word() {
        let c = CartanData::type_a(2);
        let w = ReducedWord::validate(&c, &[1]).unwrap();
        let ctx = CwContext::preprojective(&c, &w).unwrap();
        let s2 = Rep::simple(&QQ, ctx.quiver(), 1);
        assert!(!ctx.contains(&s2));
        assert!(ctx.contains(ctx.vk(1)));
    }

    #[test]
    fn loop_word_modules() {
        let mut q = Quiver::new(1);
        q.add_arrow("a", 0, 0);
        q.add_arrow("b", 0, 0);
        let rels = vec![crate::rep::Relation::monomial(vec![1, 0]), crate::rep::Relation::monomial(vec![0, 1])];
        let bq = BoundQuiver::new(q, rels).unwrap();
        let w = ReducedWord::unchecked(1, &[1, 1, 1, 1]).unwrap();
        let ctx = CwContext::for_algebra(bq, &w).unwrap();
        let dims: Vec<usize> = ctx.v.iter().map(|m| m.total_dim()).collect();
        assert_eq!(dims, vec![1, 3, 5, 7]);
        assert!(ctx.balanced_report().into_iter().all(|b| b));
    }
}
