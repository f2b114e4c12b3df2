//! Ringel matrices, endomorphism quivers, the stable endomorphism algebra of a
//! cluster-tilting module, `Ext¹(T, X)` as a module over it, g- and h-vectors,
//! F-polynomials, cluster characters, mutation of tilting modules and mutation of
//! representations.

use crate::arith::laurent::var_names;
use crate::arith::matrix::subspace::{self, Quotient};
use crate::arith::frac::Frac;
use crate::arith::{CountingProfile, Laurent, QMatrix, Q, QQ};
use crate::chamber::{phi_evaluate, t_vars};
use crate::counting::grassmannian_profiles;
use crate::cw::{flat_matrix, minimal_right_approximation, radical_basis, CwContext};
use crate::error::{Error, Result};
use crate::generic::multiplicity;
use crate::rep::fdalg::FdAlgebra;
use crate::rep::hom::{self, Ext1, Morphism};
use crate::rep::module::Rep;
use crate::rep::quiver::{BoundQuiver, Quiver};
use crate::seed::mutate_y_seed;
use std::collections::BTreeMap;

/// A basic rigid module `T = T_1 ⊕ ⋯ ⊕ T_r` with its frozen (projective-injective) summands.
#[derive(Clone, Debug)]
pub struct Tilting {
    pub names: Vec<String>,
    pub summands: Vec<Rep<Q>>,
    pub frozen: Vec<bool>,
}

impl Tilting {
    pub fn r(&self) -> usize {
        self.summands.len()
    }

    /// Indices (0-based) of the mutable summands.
    pub fn mutable(&self) -> Vec<usize> {
        (0..self.r()).filter(|&k| !self.frozen[k]).collect()
    }

    /// `V_i` of a context.
    pub fn v_of(ctx: &CwContext) -> Tilting {
        Tilting {
            names: (1..=ctx.r()).map(|k| format!("V{k}")).collect(),
            summands: ctx.v.clone(),
            frozen: (1..=ctx.r()).map(|k| ctx.word.is_frozen(k)).collect(),
        }
    }

    /// `W_i` of a context.
    pub fn w_of(ctx: &CwContext) -> Result<Tilting> {
        let w = ctx.w.clone().ok_or_else(|| Error::UnsupportedAlgebraClass("W modules need a preprojective algebra".into()))?;
        Ok(Tilting {
            names: (1..=ctx.r()).map(|k| format!("W{k}")).collect(),
            summands: w,
            frozen: (1..=ctx.r()).map(|k| ctx.word.is_frozen(k)).collect(),
        })
    }

    /// `dim Hom(T_k, X)` for every summand.
    pub fn hom_vector(&self, q: &Quiver, x: &Rep<Q>) -> Vec<i64> {
        self.summands.iter().map(|t| hom::hom_dim(&QQ, q, t, x) as i64).collect()
    }
}

/// `H = (dim Hom(T_k, T_l))` and `B = H^{-t}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingelMatrix {
    pub h: Vec<Vec<i64>>,
    pub b: Vec<Vec<i64>>,
}

impl RingelMatrix {
    /// `B^{-1} = H^t`, whose entry `(i, j)` is `dim Hom(T_j, T_i)`.
    pub fn b_inverse(&self) -> Vec<Vec<i64>> {
        let n = self.h.len();
        (0..n).map(|i| (0..n).map(|j| self.h[j][i]).collect()).collect()
    }

    /// `B` restricted to the given rows and columns.
    pub fn principal(&self, idx: &[usize]) -> Vec<Vec<i64>> {
        idx.iter().map(|&i| idx.iter().map(|&j| self.b[i][j]).collect()).collect()
    }
}

pub fn ringel_matrix(q: &Quiver, t: &Tilting) -> Result<RingelMatrix> {
    let n = t.r();
    let h: Vec<Vec<i64>> = (0..n).map(|k| (0..n).map(|l| hom::hom_dim(&QQ, q, &t.summands[k], &t.summands[l]) as i64).collect()).collect();
    let hq = QMatrix::from_i64_rows(&h, n);
    let inv = hq.inverse(&QQ).ok_or_else(|| Error::NonIntegralInverse)?;
    let b = inv.transpose().to_i64_rows().ok_or_else(|| Error::NonIntegralInverse)?;
    Ok(RingelMatrix { h, b })
}

/// `g^T_X = dim Hom(T, X) · B^{(T)}`.
pub fn g_vector(hom: &[i64], b: &[Vec<i64>]) -> Vec<i64> {
    (0..b.len()).map(|k| (0..b.len()).map(|l| hom[l] * b[l][k]).sum()).collect()
}

/// An arrow `k → l` of the Gabriel quiver of `End(T)^op`, represented by an irreducible map `T_l → T_k`.
#[derive(Clone, Debug)]
pub struct EndArrow {
    pub source: usize,
    pub target: usize,
    pub map: Morphism<Q>,
}

/// The Gabriel quiver of `End(T)^op` with one irreducible representative per arrow.
#[derive(Clone, Debug)]
pub struct EndQuiver {
    pub n: usize,
    pub arrows: Vec<EndArrow>,
}

impl EndQuiver {
    /// `counts[k][l]` = number of arrows `k → l`.
    pub fn arrow_counts(&self) -> Vec<Vec<i64>> {
        let mut c = vec![vec![0; self.n]; self.n];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }
}

fn flat_len(x: &Rep<Q>, y: &Rep<Q>) -> usize {
    x.dims.iter().zip(&y.dims).map(|(a, b)| a * b).sum()
}

/// Irreducible maps `T_l → T_k` for all pairs, giving the arrows `k → l`.
pub fn endo_quiver(q: &Quiver, t: &Tilting) -> EndQuiver {
    let n = t.r();
    let rad: Vec<Vec<Vec<Morphism<Q>>>> =
        (0..n).map(|a| (0..n).map(|b| radical_basis(q, &t.summands[a], &t.summands[b], a == b)).collect()).collect();
    let mut arrows = Vec::new();
    for k in 0..n {
        for l in 0..n {
            // rad(T_l, T_k) modulo rad².
            let (src, dst) = (&t.summands[l], &t.summands[k]);
            let len = flat_len(src, dst);
            if rad[l][k].is_empty() {
                continue;
            }
            let mut sq = Vec::new();
            for m in 0..n {
                for h in &rad[l][m] {
                    for g in &rad[m][k] {
                        sq.push(hom::compose(&QQ, g, h));
                    }
                }
            }
            let sq = flat_matrix(&sq, len).col_space(&QQ);
            let all = flat_matrix(&rad[l][k], len);
            let comp = subspace::complement(&QQ, &sq, &all);
            for c in 0..comp.cols() {
                arrows.push(EndArrow { source: k, target: l, map: hom::unflatten(src, dst, &comp.col(c)) });
            }
        }
    }
    EndQuiver { n, arrows }
}

/// The stable endomorphism algebra `End(T)^op` modulo maps factoring through the
/// frozen summands, on the mutable vertices.
#[derive(Clone, Debug)]
pub struct StableAlgebra {
    /// Summand index of each vertex.
    pub vertices: Vec<usize>,
    pub quiver: Quiver,
    /// Representative `T_{target} → T_{source}` of each arrow.
    pub reps: Vec<Morphism<Q>>,
    pub algebra: FdAlgebra,
}

/// Stable Hom coordinates `Hom(T_v, T_i) → Hom/P(T_v, T_i)`.
struct StableHom {
    quot: Quotient<Q>,
}

fn stable_hom(q: &Quiver, t: &Tilting, v: usize, i: usize) -> StableHom {
    let (src, dst) = (&t.summands[v], &t.summands[i]);
    let len = flat_len(src, dst);
    let all = flat_matrix(&hom::hom_space(&QQ, q, src, dst), len).col_space(&QQ);
    let mut through = Vec::new();
    for j in (0..t.r()).filter(|&j| t.frozen[j]) {
        let hs = hom::hom_space(&QQ, q, src, &t.summands[j]);
        let gs = hom::hom_space(&QQ, q, &t.summands[j], dst);
        for h in &hs {
            for g in &gs {
                through.push(hom::compose(&QQ, g, h));
            }
        }
    }
    let sub = flat_matrix(&through, len).col_space(&QQ);
    StableHom { quot: Quotient::new(&QQ, &sub, &all) }
}

pub fn stable_algebra(q: &Quiver, t: &Tilting) -> Result<StableAlgebra> {
    let eq = endo_quiver(q, t);
    let vertices = t.mutable();
    let pos = |k: usize| vertices.iter().position(|&v| v == k);
    let mut quiver = Quiver::new(vertices.len());
    let mut reps = Vec::new();
    for a in &eq.arrows {
        if let (Some(s), Some(tt)) = (pos(a.source), pos(a.target)) {
            quiver.add_arrow(format!("{}_{}", t.names[a.source], t.names[a.target]), s, tt);
            reps.push(a.map.clone());
        }
    }
    let n = vertices.len();
    let st: Vec<Vec<StableHom>> = (0..n).map(|v| (0..n).map(|i| stable_hom(q, t, vertices[v], vertices[i])).collect()).collect();
    let mut projectives = Vec::new();
    let mut words = Vec::new();
    for i in 0..n {
        // Breadth-first search over paths starting at i, keeping independent images.
        let mut basis: Vec<Vec<(Vec<usize>, Morphism<Q>, Vec<Q>)>> = vec![Vec::new(); n];
        let id: Morphism<Q> = t.summands[vertices[i]].dims.iter().map(|&d| QMatrix::identity(&QQ, d)).collect();
        let idc = st[i][i].quot.project(&QQ, &hom::flatten(&id));
        if idc.iter().all(|c| c.is_zero()) {
            return Err(Error::Invalid(format!("{} is stably zero", t.names[vertices[i]])));
        }
        basis[i].push((vec![], id, idc));
        let mut frontier = vec![(i, 0usize)];
        while let Some((v, idx)) = frontier.pop() {
            let (path, f, _) = basis[v][idx].clone();
            for (a, arr) in quiver.arrows.iter().enumerate() {
                if arr.source != v {
                    continue;
                }
                let w = arr.target;
                let g = hom::compose(&QQ, &f, &reps[a]);
                let c = st[w][i].quot.project(&QQ, &hom::flatten(&g));
                if c.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let cur: Vec<Vec<Q>> = basis[w].iter().map(|b| b.2.clone()).collect();
                let m = QMatrix::from_cols(&cur, c.len(), Q::zero());
                if cur.is_empty() || !m.spans(&QQ, &c) {
                    let mut p = path.clone();
                    p.push(a);
                    basis[w].push((p, g, c));
                    frontier.push((w, basis[w].len() - 1));
                }
            }
        }
        let dims: Vec<usize> = basis.iter().map(|b| b.len()).collect();
        let mats: Vec<QMatrix> = basis.iter().map(|b| QMatrix::from_cols(&b.iter().map(|e| e.2.clone()).collect::<Vec<_>>(), b.first().map_or(0, |e| e.2.len()), Q::zero())).collect();
        let maps = quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| {
                let (v, w) = (arr.source, arr.target);
                let cols: Vec<Vec<Q>> = basis[v]
                    .iter()
                    .map(|(_, f, _)| {
                        let g = hom::compose(&QQ, f, &reps[a]);
                        let c = st[w][i].quot.project(&QQ, &hom::flatten(&g));
                        if c.iter().all(|x| x.is_zero()) {
                            vec![Q::zero(); dims[w]]
                        } else {
                            mats[w].coords(&QQ, &c).expect("path images span the stable Hom space")
                        }
                    })
                    .collect();
                QMatrix::from_cols(&cols, dims[w], Q::zero())
            })
            .collect();
        projectives.push(Rep { dims, maps });
        words.push(basis.into_iter().map(|b| b.into_iter().map(|e| e.0).collect()).collect());
    }
    let algebra = FdAlgebra::from_projectives(quiver.clone(), projectives, words);
    Ok(StableAlgebra { vertices, quiver, reps, algebra })
}

/// `Ext¹(T, X)` as a representation of the stable Gabriel quiver: vertex `k` carries
/// `Ext¹(T_k, X)` and an arrow with representative `f : T_l → T_k` acts by `η ↦ η ∘ f`.
pub fn ext_module(bq: &BoundQuiver, t: &Tilting, st: &StableAlgebra, x: &Rep<Q>) -> Rep<Q> {
    let q = &bq.quiver;
    let exts: Vec<Ext1> = st.vertices.iter().map(|&k| Ext1::compute(bq, &t.summands[k], x)).collect();
    let dims: Vec<usize> = exts.iter().map(|e| e.dim()).collect();
    let maps = st
        .quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(a, arr)| {
            let (k, l) = (arr.source, arr.target);
            let cols: Vec<Vec<Q>> = (0..dims[k]).map(|i| exts[l].class_coords(&hom::pullback(q, &exts[k].cocycle(i), &st.reps[a]))).collect();
            QMatrix::from_cols(&cols, dims[l], Q::zero())
        })
        .collect();
    Rep { dims, maps }
}

/// Character data of `X` with respect to `T`.
#[derive(Clone, Debug)]
pub struct CharacterData {
    pub hom: Vec<i64>,
    pub g: Vec<i64>,
    /// `h_k` for the mutable `k`, in the order of [`Tilting::mutable`].
    pub h: Vec<i64>,
    /// `−dim Ext¹(S_k, M) − m_k` for the mutable `k`, where `m_k` is the multiplicity of `T_k`
    /// in `X`. The summands `T_k` of `X` are invisible in `M` and enter as the decoration of `M`.
    pub h_prime: Vec<i64>,
    pub ext: Rep<Q>,
    /// F-polynomial in `y_k`, `k` mutable (1-based summand index in the name).
    pub f_poly: Laurent,
    pub strata: BTreeMap<Vec<usize>, CountingProfile>,
}

/// Variables `y_k` for the mutable summands.
pub fn y_vars(t: &Tilting) -> Vec<String> {
    t.mutable().iter().map(|k| format!("y{}", k + 1)).collect()
}

/// `F(y) = Σ_d χ(Gr_d(M)) y^d`.
pub fn f_polynomial(quiver: &Quiver, m: &Rep<Q>, vars: &[String]) -> Result<(Laurent, BTreeMap<Vec<usize>, CountingProfile>)> {
    let strata = grassmannian_profiles(quiver, m)?;
    let mut f = Laurent::zero(vars);
    for (d, prof) in &strata {
        let chi = prof.euler_char.ok_or_else(|| Error::NotPolynomialCount(format!("Grassmannian {d:?}")))?;
        f = f.add(&Laurent::monomial(vars, d.iter().map(|&v| v as i32).collect(), Q::from_int(chi)));
    }
    Ok((f, strata))
}

/// A cluster-tilting module with its Ringel matrix and stable algebra.
#[derive(Clone, Debug)]
pub struct TiltingContext {
    pub t: Tilting,
    pub ringel: RingelMatrix,
    pub stable: StableAlgebra,
}

impl TiltingContext {
    pub fn new(q: &Quiver, t: Tilting) -> Result<TiltingContext> {
        let ringel = ringel_matrix(q, &t)?;
        let stable = stable_algebra(q, &t)?;
        Ok(TiltingContext { t, ringel, stable })
    }

    pub fn character_data(&self, bq: &BoundQuiver, x: &Rep<Q>) -> Result<CharacterData> {
        let q = &bq.quiver;
        let hom = self.t.hom_vector(q, x);
        let g = g_vector(&hom, &self.ringel.b);
        let ext = ext_module(bq, &self.t, &self.stable, x);
        let sq = &self.stable.quiver;
        let h: Vec<i64> = (0..sq.n).map(|k| -(hom::hom_dim(&QQ, sq, &Rep::simple(&QQ, sq, k), &ext) as i64)).collect();
        let h_prime: Vec<i64> = self
            .stable
            .vertices
            .iter()
            .enumerate()
            .map(|(k, &v)| -((self.stable.algebra.ext1_simple_dim(k, &ext) + multiplicity(q, &self.t.summands[v], x)) as i64))
            .collect();
        let (f_poly, strata) = f_polynomial(sq, &ext, &y_vars(&self.t))?;
        Ok(CharacterData { hom, g, h, h_prime, ext, f_poly, strata })
    }

    /// `ŷ_k = ∏_l x_l^{B_{l,k}}` as Laurent monomials in `x_1, …, x_r`, `k` mutable.
    pub fn y_hat(&self) -> Vec<Laurent> {
        let vars = var_names("x", self.t.r());
        self.t
            .mutable()
            .iter()
            .map(|&k| Laurent::monomial(&vars, (0..self.t.r()).map(|l| self.ringel.b[l][k] as i32).collect(), Q::one()))
            .collect()
    }

    /// `θ^T_X = x^g F(ŷ)` in the variables `x_k` standing for `φ_{T_k}`.
    pub fn theta(&self, data: &CharacterData) -> Result<Laurent> {
        let vars = var_names("x", self.t.r());
        let f = data.f_poly.substitute(&self.y_hat())?;
        let mono = Laurent::monomial(&vars, data.g.iter().map(|&v| v as i32).collect(), Q::one());
        Ok(mono.mul(&f))
    }
}

/// `φ_{T_k}(x_i(t))` for every summand.
pub fn summand_phis(ctx: &CwContext, t: &Tilting) -> Result<Vec<Frac>> {
    t.summands.iter().map(|s| Ok(Frac::from(phi_evaluate(ctx, s)?.polynomial))).collect()
}

/// Evaluates a Laurent polynomial in `x_k` at `x_k = φ_{T_k}(x_i(t))`.
pub fn evaluate_at_chart(expr: &Laurent, phis: &[Frac], r: usize) -> Result<Frac> {
    let unit = Frac::from(Laurent::one(&t_vars(r)));
    Frac::evaluate(expr, phis, &unit)
}

/// Mutation of a cluster-tilting module at a mutable summand: `T_k` is replaced by
/// the kernel of its minimal right `add(T/T_k)`-approximation.
pub fn mutate_tilting(q: &Quiver, t: &Tilting, k: usize) -> Result<Tilting> {
    if t.frozen[k] {
        return Err(Error::FrozenVertex(k + 1));
    }
    let others: Vec<Rep<Q>> = (0..t.r()).filter(|&l| l != k).map(|l| t.summands[l].clone()).collect();
    let ap = minimal_right_approximation(q, &others, &t.summands[k]);
    if !ap.surjective {
        return Err(Error::NotInCw("the approximation of the exchanged summand is not surjective".into()));
    }
    let new = ap.kernel(q);
    if !hom::is_indecomposable(q, &new) {
        return Err(Error::Invalid("the exchanged summand is decomposable".into()));
    }
    let mut out = t.clone();
    out.summands[k] = new;
    out.names[k] = format!("mu{}({})", k + 1, t.names[k]);
    Ok(out)
}

/// Results of the mutation identities for one step.
#[derive(Clone, Debug)]
pub struct TransformCheck {
    pub k: usize,
    pub hpk: bool,
    pub g_vect: bool,
    pub f_pol: bool,
}

impl TransformCheck {
    pub fn all(&self) -> bool {
        self.hpk && self.g_vect && self.f_pol
    }
}

/// Checks the transformation rules for g-vectors, h-vectors and F-polynomials when
/// passing from `T` to `μ_k(T)`, with `ŷ` evaluated on the chart.
pub fn check_transformation(
    before: (&TiltingContext, &CharacterData),
    after: &CharacterData,
    k: usize,
    phis: &[Frac],
) -> Result<TransformCheck> {
    let (tc, d) = before;
    let d2 = after;
    let mutable = tc.t.mutable();
    let pk = mutable.iter().position(|&m| m == k).ok_or(Error::FrozenVertex(k + 1))?;
    let b = &tc.ringel.b;
    let (g, h, hp) = (&d.g, d.h[pk], d2.h[pk]);
    let hpk = g[k] == h - hp && d.h_prime[pk] == hp;
    let r = tc.t.r();
    let expected: Vec<i64> = (0..r).map(|l| if l == k { -g[k] } else { g[l] - h * b[l][k] + g[k] * b[l][k].max(0) }).collect();
    let g_vect = expected == d2.g;
    // ŷ on the chart, mutated as a Y-seed in direction k.
    let yh: Vec<Frac> = tc.y_hat().iter().map(|m| evaluate_at_chart(m, phis, r)).collect::<Result<_>>()?;
    let (_, yh2) = mutate_y_seed(&tc.ringel.principal(&mutable), &yh, pk)?;
    let unit = yh[0].one_like();
    let lhs = yh[pk].one_plus().pow(h as i32)?.mul(&Frac::evaluate(&d.f_poly, &yh, &unit)?);
    let rhs = yh2[pk].one_plus().pow(hp as i32)?.mul(&Frac::evaluate(&d2.f_poly, &yh2, &unit)?);
    Ok(TransformCheck { k, hpk, g_vect, f_pol: lhs == rhs })
}

/// A quiver with potential: a linear combination of cycles (arrow lists in path order).
#[derive(Clone, Debug)]
pub struct QuiverWithPotential {
    pub quiver: Quiver,
    pub potential: Vec<(Q, Vec<usize>)>,
}

/// Result of mutating a representation: the premutated quiver and representation.
#[derive(Clone, Debug)]
pub struct MutatedRep {
    pub qp: QuiverWithPotential,
    pub rep: Rep<Q>,
    /// `(α, β, γ)` of the input at `k` and `(ᾱ, β̄)` of the output, for checking.
    pub alpha: QMatrix,
    pub beta: QMatrix,
    pub gamma: QMatrix,
    pub alpha_new: QMatrix,
    pub beta_new: QMatrix,
}

impl MutatedRep {
    /// `Ker ᾱ = Im β`, `Im β̄ = Ker α`, `Ker β̄ ⊆ Im ᾱ` and `β̄ ᾱ = γ`.
    pub fn satisfies_characterization(&self) -> bool {
        let ker_an = self.alpha_new.kernel(&QQ);
        let im_b = self.beta.col_space(&QQ);
        let im_bn = self.beta_new.col_space(&QQ);
        let ker_a = self.alpha.kernel(&QQ);
        let ker_bn = self.beta_new.kernel(&QQ);
        let im_an = self.alpha_new.col_space(&QQ);
        subspace::equal(&QQ, &ker_an, &im_b)
            && subspace::equal(&QQ, &im_bn, &ker_a)
            && subspace::contains(&QQ, &im_an, &ker_bn)
            && self.beta_new.mul(&QQ, &self.alpha_new) == self.gamma
    }
}

/// Evaluates a path (arrow list in path order) on a representation.
fn path_map(q: &Quiver, m: &Rep<Q>, path: &[usize]) -> QMatrix {
    m.eval_word(&QQ, q, q.source(path[0]), path)
}

/// Mutation of a representation at a vertex `k` without loops or 2-cycles through `k`.
pub fn dwz_mutate_rep(qp: &QuiverWithPotential, m: &Rep<Q>, k: usize) -> Result<MutatedRep> {
    let q = &qp.quiver;
    let ins: Vec<usize> = q.arrows_into(k).collect();
    let outs: Vec<usize> = q.arrows_from(k).collect();
    if ins.iter().any(|&a| q.source(a) == k) {
        return Err(Error::Invalid("loop at the mutation vertex".into()));
    }
    let din: Vec<usize> = ins.iter().map(|&a| m.dims[q.source(a)]).collect();
    let dout: Vec<usize> = outs.iter().map(|&b| m.dims[q.target(b)]).collect();
    let (nin, nout) = (din.iter().sum::<usize>(), dout.iter().sum::<usize>());
    let off = |d: &[usize], i: usize| d[..i].iter().sum::<usize>();
    let mut alpha = QMatrix::zeros(&QQ, m.dims[k], nin);
    for (i, &a) in ins.iter().enumerate() {
        alpha.set_block(0, off(&din, i), &m.maps[a]);
    }
    let mut beta = QMatrix::zeros(&QQ, nout, m.dims[k]);
    for (j, &b) in outs.iter().enumerate() {
        beta.set_block(off(&dout, j), 0, &m.maps[b]);
    }
    // γ: component (a, b) is the value of the cyclic derivative with respect to `ba`.
    let mut gamma = QMatrix::zeros(&QQ, nin, nout);
    for (c, cyc) in &qp.potential {
        let n = cyc.len();
        for s in 0..n {
            let (a, b) = (cyc[s], cyc[(s + 1) % n]);
            if q.target(a) != k {
                continue;
            }
            let (Some(i), Some(j)) = (ins.iter().position(|&x| x == a), outs.iter().position(|&x| x == b)) else { continue };
            let rest: Vec<usize> = (2..n).map(|t| cyc[(s + t) % n]).collect();
            let block = if rest.is_empty() { QMatrix::identity(&QQ, m.dims[q.target(b)]) } else { path_map(q, m, &rest) };
            let cur = gamma.block(off(&din, i), off(&din, i) + din[i], off(&dout, j), off(&dout, j) + dout[j]);
            gamma.set_block(off(&din, i), off(&dout, j), &cur.add(&QQ, &block.scale(&QQ, c)));
        }
    }
    if !alpha.mul(&QQ, &gamma).is_zero(&QQ) || !gamma.mul(&QQ, &beta).is_zero(&QQ) {
        return Err(Error::Invalid("the representation does not satisfy the Jacobian relations at k".into()));
    }
    // M̄(k) = Ker γ / Im β ⊕ Im γ ⊕ Ker α / Im γ.
    let ker_g = gamma.kernel(&QQ);
    let im_b = beta.col_space(&QQ);
    let q1 = Quotient::new(&QQ, &im_b, &ker_g);
    let im_g = gamma.col_space(&QQ);
    let ker_a = alpha.kernel(&QQ);
    let q3 = Quotient::new(&QQ, &im_g, &ker_a);
    let (d1, d2, d3) = (q1.dim(), im_g.cols(), q3.dim());
    let dk = d1 + d2 + d3;
    // ρ: M_out → Ker γ (a retraction), expressed in Ker γ coordinates.
    let ext = subspace::complement(&QQ, &ker_g, &QMatrix::identity(&QQ, nout));
    let full = QMatrix::hstack(&[&ker_g, &ext], nout);
    let inv = full.inverse(&QQ).expect("basis");
    let rho = inv.block(0, ker_g.cols(), 0, nout);
    let pi_rho = q1.proj_matrix().mul(&QQ, &ker_g).mul(&QQ, &rho);
    // γ in coordinates of Im γ.
    let gamma_img = {
        let cols: Vec<Vec<Q>> = (0..nout).map(|c| im_g.coords(&QQ, &gamma.col(c)).expect("in image")).collect();
        QMatrix::from_cols(&cols, d2, Q::zero())
    };
    let mut alpha_new = QMatrix::zeros(&QQ, dk, nout);
    alpha_new.set_block(0, 0, &pi_rho.scale(&QQ, &Q::from_int(-1)));
    alpha_new.set_block(d1, 0, &gamma_img);
    let mut beta_new = QMatrix::zeros(&QQ, nin, dk);
    beta_new.set_block(0, d1, &im_g);
    beta_new.set_block(0, d1 + d2, &q3.comp);
    // New quiver: untouched arrows, reversed arrows, composites.
    let mut nq = Quiver::new(q.n);
    let mut maps = Vec::new();
    let mut index = BTreeMap::new();
    for (a, arr) in q.arrows.iter().enumerate() {
        if arr.source != k && arr.target != k {
            index.insert(a, nq.add_arrow(arr.name.clone(), arr.source, arr.target));
            maps.push(m.maps[a].clone());
        }
    }
    for (i, &a) in ins.iter().enumerate() {
        nq.add_arrow(format!("{}*", q.arrows[a].name), k, q.source(a));
        maps.push(beta_new.block(off(&din, i), off(&din, i) + din[i], 0, dk));
    }
    for (j, &b) in outs.iter().enumerate() {
        nq.add_arrow(format!("{}*", q.arrows[b].name), q.target(b), k);
        maps.push(alpha_new.block(0, dk, off(&dout, j), off(&dout, j) + dout[j]));
    }
    let mut composite = BTreeMap::new();
    for &a in &ins {
        for &b in &outs {
            let id = nq.add_arrow(format!("[{}{}]", q.arrows[b].name, q.arrows[a].name), q.source(a), q.target(b));
            composite.insert((a, b), id);
            maps.push(m.maps[b].mul(&QQ, &m.maps[a]));
        }
    }
    // [W] + Δ, with Δ = Σ [ba] a* b*.
    let star_in: BTreeMap<usize, usize> = ins.iter().enumerate().map(|(i, &a)| (a, index.len() + i)).collect();
    let star_out: BTreeMap<usize, usize> = outs.iter().enumerate().map(|(j, &b)| (b, index.len() + ins.len() + j)).collect();
    let mut potential = Vec::new();
    for (c, cyc) in &qp.potential {
        let n = cyc.len();
        // Rotate so that the cycle does not start in the middle of a 2-path through k.
        let start = (0..n).find(|&s| q.source(cyc[s]) != k).unwrap_or(0);
        let rot: Vec<usize> = (0..n).map(|t| cyc[(start + t) % n]).collect();
        let mut out = Vec::new();
        let mut t = 0;
        while t < n {
            let a = rot[t];
            if q.target(a) == k && t + 1 < n {
                out.push(composite[&(a, rot[t + 1])]);
                t += 2;
            } else {
                out.push(index[&a]);
                t += 1;
            }
        }
        potential.push((c.clone(), out));
    }
    for &a in &ins {
        for &b in &outs {
            potential.push((Q::one(), vec![composite[&(a, b)], star_out[&b], star_in[&a]]));
        }
    }
    let mut dims = m.dims.clone();
    dims[k] = dk;
    Ok(MutatedRep { qp: QuiverWithPotential { quiver: nq, potential }, rep: Rep { dims, maps }, alpha, beta, gamma, alpha_new, beta_new })
}

/// Certificate for comparing two representations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// An invertible homomorphism was found.
    Isomorphic,
    /// Same dimension vector, Hom-dimension profile and Grassmannian counts.
    ProfileEqual,
    Different,
}

/// Compares representations of the same quiver.
pub fn compare_reps(q: &Quiver, x: &Rep<Q>, y: &Rep<Q>) -> Result<IsoVerdict> {
    if x.dims != y.dims {
        return Ok(IsoVerdict::Different);
    }
    if hom::isomorphic(q, x, y) {
        return Ok(IsoVerdict::Isomorphic);
    }
    let profile = |m: &Rep<Q>| -> Result<(Vec<usize>, Vec<usize>, BTreeMap<Vec<usize>, Option<Vec<i64>>>)> {
        let simples: Vec<usize> = (0..q.n).map(|v| hom::hom_dim(&QQ, q, &Rep::simple(&QQ, q, v), m)).collect();
        let tops: Vec<usize> = (0..q.n).map(|v| hom::hom_dim(&QQ, q, m, &Rep::simple(&QQ, q, v))).collect();
        let gr = grassmannian_profiles(q, m)?.into_iter().map(|(d, p)| (d, p.counting_polynomial)).collect();
        Ok((simples, tops, gr))
    };
    let same = profile(x)? == profile(y)? && hom::hom_dim(&QQ, q, x, x) == hom::hom_dim(&QQ, q, y, y);
    Ok(if same { IsoVerdict::ProfileEqual } else { IsoVerdict::Different })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::{CartanData, ReducedWord};

    pub(crate) fn kronecker() -> (CwContext, Rep<Q>) {
        let c = CartanData::multi_edge(2);
        let w = ReducedWord::validate(&c, &[2, 1, 2, 1]).unwrap();
        let ctx = CwContext::preprojective(&c, &w).unwrap();
        (ctx, crate::scenario::kronecker_x_lambda(&Q::one()))
    }

    #[test]
    fn kronecker_ringel_matrices() {
        let (ctx, x) = kronecker();
        let q = ctx.quiver();
        assert!(ctx.contains(&x));
        let v = Tilting::v_of(&ctx);
        let rv = ringel_matrix(q, &v).unwrap();
        assert_eq!(rv.b, vec![vec![0, -2, 1, 0], vec![2, 0, -2, 1], vec![-1, 2, 1, -2], vec![0, -1, 0, 1]]);
        assert_eq!(rv.b_inverse(), vec![vec![1, 2, 3, 4], vec![0, 1, 2, 3], vec![1, 2, 4, 6], vec![0, 1, 2, 4]]);
        let w = Tilting::w_of(&ctx).unwrap();
        let rw = ringel_matrix(q, &w).unwrap();
        assert_eq!(rw.b, vec![vec![0, -2, 3, 0], vec![2, 0, -4, -1], vec![-3, 4, 1, 0], vec![0, 1, -2, 1]]);
        assert_eq!(v.hom_vector(q, &x), vec![1, 2, 3, 5]);
        assert_eq!(g_vector(&v.hom_vector(q, &x), &rv.b), vec![1, -1, 0, 1]);
        assert_eq!(w.hom_vector(q, &x), vec![9, 5, 3, 5]);
        assert_eq!(g_vector(&w.hom_vector(q, &x), &rw.b), vec![1, -1, 0, 0]);
    }

    #[test]
    fn kronecker_character() {
        let (ctx, x) = kronecker();
        let tc = TiltingContext::new(ctx.quiver(), Tilting::w_of(&ctx).unwrap()).unwrap();
        assert_eq!(endo_quiver(ctx.quiver(), &tc.t).arrow_counts(), vec![vec![0, 2, 0, 0], vec![0, 0, 4, 1], vec![3, 0, 0, 0], vec![0, 0, 2, 0]]);
        let d = tc.character_data(&ctx.algebra, &x).unwrap();
        assert_eq!(d.ext.dims, vec![1, 1]);
        assert_eq!(d.f_poly, Laurent::parse(&y_vars(&tc.t), "1 + y2 + y1*y2").unwrap());
        let phis = summand_phis(&ctx, &tc.t).unwrap();
        let theta = evaluate_at_chart(&tc.theta(&d).unwrap(), &phis, 4).unwrap();
        let phi_x = phi_evaluate(&ctx, &x).unwrap().polynomial;
        assert_eq!(phi_x, Laurent::parse(&t_vars(4), "t3*t2^3*t1^4 + t4*t3*t2^2*t1^4 + t4*t3^2*t2^2*t1^3").unwrap());
        assert_eq!(theta, Frac::from(phi_x));
        let yh: Vec<Frac> = tc.y_hat().iter().map(|m| evaluate_at_chart(m, &phis, 4).unwrap()).collect();
        assert_eq!(yh[0], Frac::from(Laurent::parse(&t_vars(4), "t3*t1^-1").unwrap()));
        assert_eq!(yh[1], Frac::from(Laurent::parse(&t_vars(4), "t4*t2^-1").unwrap()));
    }

    #[test]
    fn kronecker_mutations() {
        let (ctx, x) = kronecker();
        let q = ctx.quiver();
        let v = Tilting::v_of(&ctx);
        let tv = TiltingContext::new(q, v.clone()).unwrap();
        let dv = tv.character_data(&ctx.algebra, &x).unwrap();
        assert_eq!(dv.ext.dims, vec![1, 1]);
        assert!(hom::is_indecomposable(&tv.stable.quiver, &dv.ext));
        assert_eq!(dv.g, vec![1, -1, 0, 1]);
        let phis = summand_phis(&ctx, &v).unwrap();
        let phi_x = Frac::from(phi_evaluate(&ctx, &x).unwrap().polynomial);
        assert_eq!(evaluate_at_chart(&tv.theta(&dv).unwrap(), &phis, 4).unwrap(), phi_x);
        let v2 = mutate_tilting(q, &v, 1).unwrap();
        let tv2 = TiltingContext::new(q, v2.clone()).unwrap();
        let dv2 = tv2.character_data(&ctx.algebra, &x).unwrap();
        assert!(check_transformation((&tv, &dv), &dv2, 1, &phis).unwrap().all());
        let phis2 = summand_phis(&ctx, &v2).unwrap();
        assert_eq!(evaluate_at_chart(&tv2.theta(&dv2).unwrap(), &phis2, 4).unwrap(), phi_x);
        // W = μ_1 μ_2 (V).
        let w = mutate_tilting(q, &mutate_tilting(q, &v, 1).unwrap(), 0).unwrap();
        let w_ref = Tilting::w_of(&ctx).unwrap();
        for k in 0..4 {
            assert!(hom::isomorphic(q, &w.summands[k], &w_ref.summands[k]));
        }
        let qp = QuiverWithPotential { quiver: tv.stable.quiver.clone(), potential: vec![] };
        let m2 = dwz_mutate_rep(&qp, &dv.ext, 1).unwrap();
        assert!(m2.satisfies_characterization());
        let m21 = dwz_mutate_rep(&m2.qp, &m2.rep, 0).unwrap();
        assert_eq!(m21.rep.dims, vec![1, 1]);
        assert!(hom::is_indecomposable(&m21.qp.quiver, &m21.rep));
        let back = dwz_mutate_rep(&m2.qp, &m2.rep, 1).unwrap();
        assert_eq!(compare_reps(&back.qp.quiver, &back.rep, &dv.ext).unwrap(), IsoVerdict::Isomorphic);
    }
}
