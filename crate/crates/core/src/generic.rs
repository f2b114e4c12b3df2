//! E-invariants, irreducible components of module varieties of the stable
//! endomorphism algebra, the functions `ψ_Y` and the generic basis.

use crate::arith::laurent::var_names;
use crate::arith::matrix::subspace::{self, Quotient};
use crate::arith::{Laurent, QMatrix, Q, QQ};
use crate::character::{f_polynomial, TiltingContext};
use crate::cw::{flat_matrix, radical_basis};
use crate::error::{Error, Result};
use crate::rep::fdalg::FdAlgebra;
use crate::rep::hom::{self, Morphism};
use crate::rep::module::Rep;
use crate::rep::quiver::Quiver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Number of random points used to determine generic invariants of an affine component.
pub const GENERIC_SAMPLES: usize = 5;

/// `dim Ext¹(M, N)` from `0 → ΩM → P_0 → M → 0`.
pub fn ext1_dim(alg: &FdAlgebra, m: &Rep<Q>, n: &Rep<Q>) -> usize {
    let q = &alg.quiver;
    let (_, p0, pi) = alg.projective_cover(m);
    let omega = p0.sub_rep(&QQ, q, &hom::kernel_subspaces(&QQ, &pi)).expect("kernel is a submodule");
    hom::hom_dim(&QQ, q, &omega, n) + hom::hom_dim(&QQ, q, m, n) - hom::hom_dim(&QQ, q, &p0, n)
}

/// The E-invariant `dim Hom(τ⁻¹M, M)`.
pub fn e_invariant(alg: &FdAlgebra, m: &Rep<Q>) -> usize {
    hom::hom_dim(&QQ, &alg.quiver, &alg.tau_inverse(m), m)
}

/// `dim GL_d · M`: the dimension of the orbit of `M`.
pub fn orbit_dim(q: &Quiver, m: &Rep<Q>) -> usize {
    m.dims.iter().map(|d| d * d).sum::<usize>() - hom::hom_dim(&QQ, q, m, m)
}

/// Whether the algebra is a path algebra: the quiver is acyclic and each projective
/// has the paths of the quiver as a basis.
pub fn is_hereditary(alg: &FdAlgebra) -> bool {
    let q = &alg.quiver;
    if !q.is_acyclic() {
        return false;
    }
    (0..q.n).all(|i| {
        let mut count = vec![0usize; q.n];
        let mut stack = vec![i];
        while let Some(v) = stack.pop() {
            count[v] += 1;
            stack.extend(q.arrows_from(v).map(|a| q.target(a)));
        }
        count == alg.projectives[i].dims
    })
}

/// Number of summands isomorphic to the indecomposable `x` in `e`, with `End(x)/rad` one-dimensional.
pub fn multiplicity(q: &Quiver, x: &Rep<Q>, e: &Rep<Q>) -> usize {
    top_maps(q, x, e).len()
}

/// Maps `x → e` whose classes form a basis of `Hom(x, e)` modulo the radical.
fn top_maps(q: &Quiver, x: &Rep<Q>, e: &Rep<Q>) -> Vec<Morphism<Q>> {
    let fs = hom::hom_space(&QQ, q, x, e);
    if fs.is_empty() {
        return vec![];
    }
    let gs = hom::hom_space(&QQ, q, e, x);
    let len_xx: usize = x.dims.iter().map(|d| d * d).sum();
    let end = flat_matrix(&hom::hom_space(&QQ, q, x, x), len_xx).col_space(&QQ);
    let rad = flat_matrix(&radical_basis(q, x, x, true), len_xx).col_space(&QQ);
    let top = Quotient::new(&QQ, &rad, &end);
    // Row blocks: f ↦ class of g ∘ f in End(x)/rad for each g.
    let mut rows: Vec<Vec<Q>> = Vec::new();
    for g in &gs {
        let cols: Vec<Vec<Q>> = fs.iter().map(|f| top.project(&QQ, &hom::flatten(&hom::compose(&QQ, g, f)))).collect();
        let m = QMatrix::from_cols(&cols, top.dim(), Q::zero());
        rows.extend(m.row_vecs());
    }
    if rows.is_empty() {
        return vec![];
    }
    let cond = QMatrix::from_rows(rows, fs.len());
    let rad_coords = cond.kernel(&QQ);
    let comp = subspace::complement(&QQ, &rad_coords, &QMatrix::identity(&QQ, fs.len()));
    let shape: Morphism<Q> = fs[0].clone();
    (0..comp.cols()).map(|c| hom::lin_comb(&QQ, &fs, &comp.col(c), &shape)).collect()
}

/// Splits off the summands isomorphic to members of `known`, returning their
/// multiplicities and a module isomorphic to the remaining complement.
pub fn split_known(q: &Quiver, known: &[Rep<Q>], e: &Rep<Q>) -> Result<(Vec<usize>, Rep<Q>)> {
    let mut mults = Vec::new();
    let mut images: Vec<QMatrix> = e.dims.iter().map(|&d| QMatrix::zeros(&QQ, d, 0)).collect();
    let mut expected = 0;
    for x in known {
        let maps = top_maps(q, x, e);
        expected += maps.len() * x.total_dim();
        mults.push(maps.len());
        for f in &maps {
            for v in 0..q.n {
                images[v] = QMatrix::hstack(&[&images[v], &f[v]], e.dims[v]);
            }
        }
    }
    let images: Vec<QMatrix> = images.iter().map(|m| m.col_space(&QQ)).collect();
    if images.iter().map(|m| m.cols()).sum::<usize>() != expected {
        return Err(Error::Invalid("known summands are not split off cleanly".into()));
    }
    let (rest, _) = e.quotient_rep(&QQ, q, &images);
    Ok((mults, rest))
}

/// Decomposes a module with pairwise non-isomorphic summands by the Fitting
/// decomposition of random endomorphisms.
fn fitting_split(q: &Quiver, m: &Rep<Q>, rng: &mut ChaCha8Rng) -> Option<(Rep<Q>, Rep<Q>)> {
    let basis = hom::hom_space(&QQ, q, m, m);
    let shape: Morphism<Q> = basis.first()?.clone();
    let n = m.total_dim();
    for _ in 0..GENERIC_SAMPLES {
        let f = hom::random_element(&basis, &shape, rng);
        // Eigenvalue candidates: integer shifts make f − λ singular on some summand.
        for lam in -97i64..=97 {
            let g: Morphism<Q> = f.iter().map(|b| b.sub(&QQ, &QMatrix::identity(&QQ, b.rows()).scale(&QQ, &Q::from_int(lam)))).collect();
            let mut p: Morphism<Q> = g.clone();
            for _ in 0..n {
                p = hom::compose(&QQ, &p, &g);
            }
            let ker = hom::kernel_subspaces(&QQ, &p);
            let img = hom::image_subspaces(&QQ, &p);
            let kd: usize = ker.iter().map(|k| k.cols()).sum();
            if kd > 0 && kd < n {
                return Some((m.sub_rep(&QQ, q, &ker).ok()?, m.sub_rep(&QQ, q, &img).ok()?));
            }
        }
    }
    None
}

/// Indecomposable summands of `m` not isomorphic to any member of `known`.
fn new_summands(q: &Quiver, known: &[Rep<Q>], m: &Rep<Q>, rng: &mut ChaCha8Rng) -> Result<Vec<Rep<Q>>> {
    let (_, rest) = split_known(q, known, m)?;
    if rest.total_dim() == 0 {
        return Ok(vec![]);
    }
    if hom::is_indecomposable(q, &rest) {
        return Ok(vec![rest]);
    }
    let (a, b) = fitting_split(q, &rest, rng).ok_or_else(|| Error::UnsupportedAlgebraClass("could not decompose a middle term".into()))?;
    let mut out = new_summands(q, known, &a, rng)?;
    let mut k2 = known.to_vec();
    k2.extend(out.iter().cloned());
    out.extend(new_summands(q, &k2, &b, rng)?);
    Ok(out)
}

/// Middle term of the almost split sequence ending in an indecomposable non-projective `m`,
/// computed as a pushout of `0 → Ωm → P_0 → m → 0`.
pub fn almost_split_middle(alg: &FdAlgebra, m: &Rep<Q>) -> Result<Rep<Q>> {
    let q = &alg.quiver;
    let tm = alg.tau(m);
    let (_, p0, pi) = alg.projective_cover(m);
    let ker = hom::kernel_subspaces(&QQ, &pi);
    let omega = p0.sub_rep(&QQ, q, &ker).expect("kernel is a submodule");
    let hs = hom::hom_space(&QQ, q, &omega, &tm);
    let len: usize = omega.dims.iter().zip(&tm.dims).map(|(a, b)| a * b).sum();
    let restricted: Vec<Morphism<Q>> = hom::hom_space(&QQ, q, &p0, &tm).iter().map(|g| g.iter().zip(&ker).map(|(gv, kv)| gv.mul(&QQ, kv)).collect()).collect();
    let sub = flat_matrix(&restricted, len).col_space(&QQ);
    let all = flat_matrix(&hs, len).col_space(&QQ);
    let ext = Quotient::new(&QQ, &sub, &all);
    if ext.dim() != 1 {
        return Err(Error::UnsupportedAlgebraClass(format!("Ext¹(M, τM) has dimension {}", ext.dim())));
    }
    let h = hom::unflatten(&omega, &tm, &ext.comp.col(0));
    let sum = Rep::direct_sum(&QQ, q, &[&p0, &tm]);
    let glue: Vec<QMatrix> = (0..q.n).map(|v| QMatrix::vstack(&[&ker[v], &h[v].scale(&QQ, &Q::from_int(-1))], omega.dims[v])).collect();
    Ok(sum.quotient_rep(&QQ, q, &glue).0)
}

/// All indecomposable modules of a representation-finite algebra, found by closing
/// simples, projectives and injectives under `τ^{±1}` and under summands of
/// almost split sequences. Fails if the closure exceeds `max_dim`.
pub fn indecomposables(alg: &FdAlgebra, max_dim: usize, seed: u64) -> Result<Vec<Rep<Q>>> {
    let q = &alg.quiver;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = alg.tau_orbit_closure(&[], max_dim);
    let mut done = 0;
    while done < found.len() {
        let m = found[done].clone();
        done += 1;
        let is_projective = (0..q.n).any(|i| hom::isomorphic(q, &alg.projectives[i], &m));
        if is_projective {
            continue;
        }
        let mid = almost_split_middle(alg, &m)?;
        for x in new_summands(q, &found, &mid, &mut rng)? {
            if x.total_dim() > max_dim {
                return Err(Error::UnsupportedAlgebraClass(format!("indecomposables exceed dimension {max_dim}")));
            }
            for y in alg.tau_orbit_closure(&[x], max_dim) {
                if !found.iter().any(|z| hom::isomorphic(q, z, &y)) {
                    found.push(y);
                }
            }
        }
    }
    let tops: Vec<Rep<Q>> = found.iter().filter(|m| m.total_dim() > max_dim).cloned().collect();
    if !tops.is_empty() {
        return Err(Error::UnsupportedAlgebraClass(format!("indecomposables exceed dimension {max_dim}")));
    }
    found.sort_by(|a, b| (a.total_dim(), a.dims.clone()).cmp(&(b.total_dim(), b.dims.clone())));
    Ok(found)
}

/// How an irreducible component is described.
#[derive(Clone, Debug, PartialEq)]
pub enum ComponentKind {
    /// Closure of the orbit of `⊕ U_i^{m_i}` (multiplicities over the indecomposables).
    OrbitClosure(Vec<usize>),
    /// The whole affine space of representations of a path algebra.
    Affine,
}

#[derive(Clone, Debug)]
pub struct ComponentDescriptor {
    pub d: Vec<usize>,
    pub kind: ComponentKind,
    pub representative: Rep<Q>,
    pub c: usize,
    pub e: usize,
    pub h: usize,
}

impl ComponentDescriptor {
    pub fn strongly_reduced(&self) -> bool {
        self.c == self.h
    }

    /// `c ≤ e ≤ h`.
    pub fn inequalities_hold(&self) -> bool {
        self.c <= self.e && self.e <= self.h
    }

    /// Number of indecomposable summands of the representative, or the total dimension for affine components.
    pub fn size(&self) -> usize {
        match &self.kind {
            ComponentKind::OrbitClosure(m) => m.iter().sum(),
            ComponentKind::Affine => self.d.iter().sum(),
        }
    }
}

/// Keeps the strongly reduced components.
pub fn strongly_reduced_filter(components: &[ComponentDescriptor]) -> Vec<ComponentDescriptor> {
    components.iter().filter(|c| c.strongly_reduced()).cloned().collect()
}

/// The module category of the stable endomorphism algebra, as far as component
/// enumeration is concerned.
#[derive(Clone, Debug)]
pub enum ModuleVarieties {
    /// Representation-finite: the indecomposables and their additive invariants.
    Finite(FiniteData),
    Hereditary,
}

#[derive(Clone, Debug)]
pub struct FiniteData {
    pub indecomposables: Vec<Rep<Q>>,
    pub names: Vec<String>,
    /// `hom[u][x] = dim Hom(U_u, U_x)`.
    pub hom: Vec<Vec<usize>>,
    /// `tau_inv_hom[u][x] = dim Hom(τ⁻¹U_u, U_x)`.
    pub tau_inv_hom: Vec<Vec<usize>>,
    pub ext: Vec<Vec<usize>>,
}

impl FiniteData {
    pub fn new(alg: &FdAlgebra, vertex_names: &[String], max_dim: usize, seed: u64) -> Result<FiniteData> {
        let q = &alg.quiver;
        let ind = indecomposables(alg, max_dim, seed)?;
        let names = ind.iter().enumerate().map(|(i, m)| name_module(alg, vertex_names, m).unwrap_or_else(|| format!("M{}", i + 1))).collect();
        let hom = ind.iter().map(|u| ind.iter().map(|x| hom::hom_dim(&QQ, q, u, x)).collect()).collect();
        let tau_inv_hom = ind.iter().map(|u| {
            let t = alg.tau_inverse(u);
            ind.iter().map(|x| hom::hom_dim(&QQ, q, &t, x)).collect()
        }).collect();
        let ext = ind.iter().map(|u| ind.iter().map(|x| ext1_dim(alg, u, x)).collect()).collect();
        Ok(FiniteData { indecomposables: ind, names, hom, tau_inv_hom, ext })
    }

    fn pair_sum(table: &[Vec<usize>], m: &[usize]) -> usize {
        (0..m.len()).map(|i| (0..m.len()).map(|j| m[i] * m[j] * table[i][j]).sum::<usize>()).sum()
    }

    pub fn module(&self, q: &Quiver, m: &[usize]) -> Rep<Q> {
        let parts: Vec<&Rep<Q>> = m.iter().enumerate().flat_map(|(i, &k)| std::iter::repeat(&self.indecomposables[i]).take(k)).collect();
        Rep::direct_sum(&QQ, q, &parts)
    }

    pub fn dim_vector(&self, m: &[usize]) -> Vec<usize> {
        let n = self.indecomposables.first().map_or(0, |u| u.dims.len());
        (0..n).map(|v| m.iter().enumerate().map(|(i, &k)| k * self.indecomposables[i].dims[v]).sum()).collect()
    }

    /// All multiplicity vectors with the given dimension vector.
    pub fn modules_of_dim(&self, d: &[usize]) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.indecomposables.len()];
        self.fill(0, d.to_vec(), &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, rest: Vec<usize>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        if i == self.indecomposables.len() {
            return;
        }
        self.fill(i + 1, rest.clone(), cur, out);
        let u = &self.indecomposables[i].dims;
        let mut r = rest;
        while r.iter().zip(u).all(|(a, b)| a >= b) {
            for (a, b) in r.iter_mut().zip(u) {
                *a -= b;
            }
            cur[i] += 1;
            self.fill(i + 1, r.clone(), cur, out);
        }
        cur[i] = 0;
    }

    /// `dim Hom(U, M)` for every indecomposable `U`.
    pub fn hom_profile(&self, m: &[usize]) -> Vec<usize> {
        (0..m.len()).map(|u| m.iter().enumerate().map(|(x, &k)| k * self.hom[u][x]).sum()).collect()
    }

    /// Whether the orbit of `⊕U^m` is dense in an irreducible component: no other
    /// module of the same dimension vector lies below it in the Hom-order.
    pub fn is_component(&self, m: &[usize]) -> bool {
        let p = self.hom_profile(m);
        self.modules_of_dim(&self.dim_vector(m)).iter().all(|o| {
            let po = self.hom_profile(o);
            o.as_slice() == m || !po.iter().zip(&p).all(|(a, b)| a <= b)
        })
    }

    pub fn descriptor(&self, q: &Quiver, m: &[usize]) -> ComponentDescriptor {
        ComponentDescriptor {
            d: self.dim_vector(m),
            kind: ComponentKind::OrbitClosure(m.to_vec()),
            representative: self.module(q, m),
            c: 0,
            e: Self::pair_sum(&self.ext, m),
            h: Self::pair_sum(&self.tau_inv_hom, m),
        }
    }

    /// The irreducible components of `mod(E, d)`.
    pub fn components(&self, q: &Quiver, d: &[usize]) -> Vec<ComponentDescriptor> {
        self.modules_of_dim(d).iter().filter(|m| self.is_component(m)).map(|m| self.descriptor(q, m)).collect()
    }
}

/// Names `S_k`, `I_k` or `P_k` when the module is a simple, injective or projective.
fn name_module(alg: &FdAlgebra, vertex_names: &[String], m: &Rep<Q>) -> Option<String> {
    let q = &alg.quiver;
    for (prefix, build) in [("S", 0), ("I", 1), ("P", 2)] {
        for k in 0..q.n {
            let cand = match build {
                0 => alg.simple(k),
                1 => alg.injective(k),
                _ => alg.projectives[k].clone(),
            };
            if hom::isomorphic(q, &cand, m) {
                return Some(format!("{prefix}{}", vertex_names[k]));
            }
        }
    }
    None
}

/// A random representation of a path algebra with the given dimension vector.
pub fn random_rep(q: &Quiver, d: &[usize], rng: &mut ChaCha8Rng) -> Rep<Q> {
    let maps = q.arrows.iter().map(|a| QMatrix::from_fn(d[a.target], d[a.source], |_, _| Q::from_int(rng.gen_range(-9..=9)))).collect();
    Rep { dims: d.to_vec(), maps }
}

/// The affine component of a path algebra with generic invariants determined by
/// majority vote over random points; a split vote is an error.
pub fn affine_component(q: &Quiver, alg: &FdAlgebra, d: &[usize], rng: &mut ChaCha8Rng) -> Result<ComponentDescriptor> {
    let space: usize = q.arrows.iter().map(|a| d[a.source] * d[a.target]).sum();
    let mut votes: BTreeMap<(usize, usize, usize), (usize, Rep<Q>)> = BTreeMap::new();
    for _ in 0..GENERIC_SAMPLES {
        let u = random_rep(q, d, rng);
        let c = space - orbit_dim(q, &u);
        let key = (c, ext1_dim(alg, &u, &u), e_invariant(alg, &u));
        votes.entry(key).or_insert((0, u)).0 += 1;
    }
    let (key, (count, rep)) = votes.into_iter().max_by_key(|(_, (n, _))| *n).expect("samples");
    if 2 * count <= GENERIC_SAMPLES {
        return Err(Error::VerificationFailed(format!("generic invariants of dimension vector {d:?} are not decided by the vote")));
    }
    Ok(ComponentDescriptor { d: d.to_vec(), kind: ComponentKind::Affine, representative: rep, c: key.0, e: key.1, h: key.2 })
}

/// The functions `ψ_Y` for a cluster-tilting module.
#[derive(Clone, Debug)]
pub struct PsiContext<'a> {
    pub tc: &'a TiltingContext,
    /// Variables `x_k`, `k` mutable, named by the 1-based summand index.
    pub vars: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct PsiFunction {
    pub g: Vec<i64>,
    pub value: Laurent,
}

impl<'a> PsiContext<'a> {
    pub fn new(tc: &'a TiltingContext) -> PsiContext<'a> {
        let vars = tc.t.mutable().iter().map(|k| format!("x{}", k + 1)).collect();
        PsiContext { tc, vars }
    }

    /// `x̂_k = ∏_{l mutable} x_l^{B_{l,k}}`.
    pub fn x_hat(&self) -> Vec<Laurent> {
        let mu = self.tc.t.mutable();
        mu.iter().map(|&k| Laurent::monomial(&self.vars, mu.iter().map(|&l| self.tc.ringel.b[l][k] as i32).collect(), Q::one())).collect()
    }

    /// `ψ_Y = x^{g_Y} Σ_d χ(Gr_d(Y)) x̂^d`.
    pub fn psi(&self, y: &Rep<Q>) -> Result<PsiFunction> {
        let st = &self.tc.stable;
        let sq = &st.quiver;
        let g: Vec<i64> = (0..sq.n).map(|k| st.algebra.ext1_simple_dim(k, y) as i64 - hom::hom_dim(&QQ, sq, &Rep::simple(&QQ, sq, k), y) as i64).collect();
        let yv = var_names("y", sq.n);
        let (f, _) = f_polynomial(sq, y, &yv)?;
        let value = Laurent::monomial(&self.vars, g.iter().map(|&v| v as i32).collect(), Q::one()).mul(&f.substitute(&self.x_hat())?);
        Ok(PsiFunction { g, value })
    }

    /// `x^m` over the mutable variables.
    pub fn x_power(&self, m: &[usize]) -> Laurent {
        Laurent::monomial(&self.vars, m.iter().map(|&v| v as i32).collect(), Q::one())
    }

    /// `Π_T`: `x_k ↦ x_k` for mutable `k`, `x_k ↦ 1` for frozen `k`.
    pub fn project(&self, expr: &Laurent) -> Result<Laurent> {
        let t = &self.tc.t;
        let mu = t.mutable();
        let assign: Vec<Laurent> = (0..t.r())
            .map(|k| match mu.iter().position(|&m| m == k) {
                Some(p) => Laurent::var(&self.vars, p),
                None => Laurent::one(&self.vars),
            })
            .collect();
        expr.substitute(&assign)
    }
}

/// One element `x^m ψ_Z` of the generic basis.
#[derive(Clone, Debug)]
pub struct BasisElement {
    pub m: Vec<usize>,
    pub component: ComponentDescriptor,
    /// Summand names of the representative for orbit closures.
    pub summands: Vec<(String, usize)>,
    pub value: Laurent,
}

/// Which algebra class backs the enumeration.
pub fn module_varieties(tc: &TiltingContext, max_dim: usize, seed: u64) -> Result<ModuleVarieties> {
    let alg = &tc.stable.algebra;
    if is_hereditary(alg) {
        return Ok(ModuleVarieties::Hereditary);
    }
    let names: Vec<String> = tc.stable.vertices.iter().map(|k| (k + 1).to_string()).collect();
    Ok(ModuleVarieties::Finite(FiniteData::new(alg, &names, max_dim, seed)?))
}

/// All vectors in `ℕ^n` with entry sum at most `bound`.
fn vectors_up_to(n: usize, bound: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v: Vec<usize>| {
            let used: usize = v.iter().sum();
            (0..=bound - used).map(move |k| {
                let mut w = v.clone();
                w.push(k);
                w
            })
        }).collect();
    }
    out
}

/// The generic basis elements `x^m ψ_Z` with `Z` strongly reduced, `m ∈ Null(Z)`
/// and size of `Z` plus `|m|` at most `bound`. Elements are checked to be pairwise distinct.
pub fn generic_basis(tc: &TiltingContext, varieties: &ModuleVarieties, bound: usize, seed: u64) -> Result<Vec<BasisElement>> {
    let pc = PsiContext::new(tc);
    let sq = &tc.stable.quiver;
    let n = sq.n;
    let mut components = Vec::new();
    match varieties {
        ModuleVarieties::Finite(fd) => {
            for m in vectors_up_to(fd.indecomposables.len(), bound) {
                if fd.is_component(&m) {
                    let names = m.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, &k)| (fd.names[i].clone(), k)).collect();
                    components.push((fd.descriptor(sq, &m), names));
                }
            }
        }
        ModuleVarieties::Hereditary => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for d in vectors_up_to(n, bound) {
                components.push((affine_component(sq, &tc.stable.algebra, &d, &mut rng)?, vec![]));
            }
        }
    }
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for (comp, names) in components {
        if !comp.strongly_reduced() {
            continue;
        }
        let psi = pc.psi(&comp.representative)?.value;
        for m in vectors_up_to(n, bound - comp.size()) {
            if (0..n).any(|k| m[k] > 0 && comp.d[k] > 0) {
                continue;
            }
            let value = pc.x_power(&m).mul(&psi);
            if !seen.insert(value.to_string()) {
                return Err(Error::VerificationFailed(format!("basis element {value} occurs twice")));
            }
            out.push(BasisElement { m, component: comp.clone(), summands: names.clone(), value });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character::Tilting;
    use crate::cw::CwContext;
    use crate::weyl::{CartanData, ReducedWord};

    fn a3_w() -> (CwContext, TiltingContext) {
        let c = CartanData::type_a(3);
        let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1]).unwrap();
        let ctx = CwContext::preprojective(&c, &w).unwrap();
        let tc = TiltingContext::new(ctx.quiver(), Tilting::w_of(&ctx).unwrap()).unwrap();
        (ctx, tc)
    }

    #[test]
    fn stable_algebra_of_a3_is_a_cyclic_nakayama_algebra() {
        let (_, tc) = a3_w();
        let alg = &tc.stable.algebra;
        assert_eq!(tc.stable.vertices, vec![0, 1, 3]);
        assert!(!is_hereditary(alg));
        let fd = match module_varieties(&tc, 8, 1).unwrap() {
            ModuleVarieties::Finite(fd) => fd,
            ModuleVarieties::Hereditary => panic!("not hereditary"),
        };
        let names: BTreeSet<String> = fd.names.iter().cloned().collect();
        let expected: BTreeSet<String> = ["S1", "S2", "S4", "I1", "I2", "I4"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names, expected);
        for (i, u) in fd.indecomposables.iter().enumerate() {
            assert_eq!(e_invariant(alg, u), fd.tau_inv_hom[i][i]);
        }
    }

    #[test]
    fn psi_multiplicative() {
        let (_, tc) = a3_w();
        let pc = PsiContext::new(&tc);
        let alg = &tc.stable.algebra;
        let q = &tc.stable.quiver;
        let a = alg.simple(0);
        let b = alg.injective(2);
        let ab = Rep::direct_sum(&QQ, q, &[&a, &b]);
        assert_eq!(pc.psi(&ab).unwrap().value, pc.psi(&a).unwrap().value.mul(&pc.psi(&b).unwrap().value));
        assert!(pc.psi(&Rep::zero(&QQ, q)).unwrap().value.is_one());
    }

    #[test]
    fn split_known_recovers_multiplicities() {
        let (_, tc) = a3_w();
        let alg = &tc.stable.algebra;
        let q = &tc.stable.quiver;
        let (s, i) = (alg.simple(1), alg.injective(0));
        let m = Rep::direct_sum(&QQ, q, &[&s, &i, &s]);
        let (mults, rest) = split_known(q, &[s.clone(), i.clone()], &m).unwrap();
        assert_eq!(mults, vec![2, 1]);
        assert_eq!(rest.total_dim(), 0);
        let (mults, rest) = split_known(q, &[i], &m).unwrap();
        assert_eq!(mults, vec![1]);
        assert!(hom::isomorphic(q, &rest, &Rep::direct_sum(&QQ, q, &[&s, &s])));
    }
}
