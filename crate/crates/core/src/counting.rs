//! Point counts over prime fields of partial composition series and quiver
//! Grassmannians, the module `Y`, the dictionary `d_{i,X}` and Euler
//! characteristics by interpolation.

use crate::arith::field::primes;
use crate::arith::interp::interpolate_adaptive;
use crate::arith::matrix::subspace;
use crate::arith::{CountingProfile, Matrix, PrimeField, QMatrix, Q, QQ};
use crate::cw::CwContext;
use crate::error::{Error, Result};
use crate::rep::filtration::{is_full, socle_filtration, socle_step, top_filtration, top_step, Filtration};
use crate::rep::hom;
use crate::rep::module::{Rep, SubSpaces};
use crate::rep::quiver::Quiver;
use crate::seed::{build_gamma_i, GammaArrowKind, GammaQuiver};
use crate::weyl::ReducedWord;
use std::collections::{BTreeMap, HashMap};

/// Number of validating samples beyond the interpolation nodes.
pub const HOLDOUT: usize = 2;
/// Largest number of primes tried before giving up on a counting polynomial.
pub const MAX_PRIMES: usize = 14;

/// Calls `visit` with a basis (columns) of every `d`-dimensional subspace of `F_p^m`,
/// each in reduced echelon form.
pub fn for_each_subspace(f: &PrimeField, m: usize, d: usize, visit: &mut dyn FnMut(&Matrix<u64>)) {
    if d > m {
        return;
    }
    let mut pivots = Vec::with_capacity(d);
    pivot_sets(m, d, 0, &mut pivots, &mut |piv| {
        // Free positions: (column i, row j) with j > piv[i] and j not a pivot.
        let mut free = Vec::new();
        for (i, &pi) in piv.iter().enumerate() {
            for j in pi + 1..m {
                if !piv.contains(&j) {
                    free.push((i, j));
                }
            }
        }
        let mut basis = Matrix::zeros(f, m, d);
        for (i, &pi) in piv.iter().enumerate() {
            basis.set(pi, i, 1);
        }
        let mut vals = vec![0u64; free.len()];
        loop {
            for (t, &(i, j)) in free.iter().enumerate() {
                basis.set(j, i, vals[t]);
            }
            visit(&basis);
            // Odometer increment.
            let mut t = 0;
            loop {
                if t == vals.len() {
                    return;
                }
                vals[t] += 1;
                if vals[t] < f.p {
                    break;
                }
                vals[t] = 0;
                t += 1;
            }
        }
    });
}

fn pivot_sets(m: usize, d: usize, start: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if cur.len() == d {
        visit(cur);
        return;
    }
    let need = d - cur.len();
    for c in start..=m.saturating_sub(need) {
        if c >= m {
            break;
        }
        cur.push(c);
        pivot_sets(m, d, c + 1, cur, visit);
        cur.pop();
    }
}

/// Calls `visit` with every subspace `U` of `F_p^n` with `lower ⊆ U ⊆ upper` and
/// `dim U = dim lower + e`.
fn for_each_between(f: &PrimeField, lower: &Matrix<u64>, upper: &Matrix<u64>, e: usize, visit: &mut dyn FnMut(&Matrix<u64>)) {
    let n = upper.rows();
    let comp = subspace::complement(f, lower, upper);
    for_each_subspace(f, comp.cols(), e, &mut |s| {
        let extra = comp.mul(f, s);
        visit(&Matrix::hstack(&[lower, &extra], n));
    });
}

/// Number of `e`-dimensional subspaces between `lower ⊆ upper`.
#[cfg(test)]
fn gaussian_binomial(p: u64, m: usize, e: usize) -> u64 {
    if e > m {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..e {
        num *= (p as u128).pow((m - i) as u32) - 1;
        den *= (p as u128).pow((i + 1) as u32) - 1;
    }
    (num / den) as u64
}

/// Counts over `F_p` the partial composition series of type `letters` (`letters[k-1] = i_k`)
/// of `X`, bucketed by weight `(a_1, …, a_r)`; `only` restricts to a single weight.
///
/// A chain `X = X_0 ⊇ ⋯ ⊇ X_r = 0` is built from the bottom. Every `X_s` contains the term
/// `T_s` of the refined top filtration, and a submodule `X_s ⊇ T_s` always extends upwards,
/// so each candidate is taken between `X_{s+1} + T_s` and the socle step of `X_{s+1}`.
pub fn count_flag_strata(f: &PrimeField, q: &Quiver, x: &Rep<u64>, letters: &[usize], only: Option<&[usize]>) -> BTreeMap<Vec<usize>, u64> {
    let r = letters.len();
    let mut tops = vec![x.full_subspaces(f)];
    for s in 1..=r {
        tops.push(top_step(f, q, x, &tops[s - 1], letters[s - 1]));
    }
    let mut out = BTreeMap::new();
    if !tops[r].iter().all(|m| m.cols() == 0) {
        return out;
    }
    let ctx = FlagSearch { f, q, x, letters, only, tops: &tops };
    if let Some(powers) = loop_powers(f, q, x) {
        let mut memo = HashMap::new();
        return ctx.rec_memo(r, x.zero_subspaces(f), &powers, &mut memo);
    }
    let mut a = vec![0usize; r];
    ctx.rec(r, x.zero_subspaces(f), &mut a, &mut out);
    out
}

/// For an algebra with one vertex and one loop `a`: column spaces of `a^m`, `m ≥ 1`, until zero.
/// Modules over such an algebra are classified by the Jordan type of `a`.
fn loop_powers(f: &PrimeField, q: &Quiver, x: &Rep<u64>) -> Option<Vec<Matrix<u64>>> {
    if q.n != 1 || q.arrows.len() != 1 {
        return None;
    }
    let a = &x.maps[0];
    let mut out = Vec::new();
    let mut power = a.clone();
    while power.rank(f) > 0 {
        out.push(power.col_space(f));
        power = a.mul(f, &power);
    }
    Some(out)
}

/// Memo table: (level, Jordan type of `X/X_k`) to counts keyed by the weight prefix `(a_1, …, a_k)`.
type FlagMemo = HashMap<(usize, Vec<usize>), BTreeMap<Vec<usize>, u64>>;

struct FlagSearch<'a> {
    f: &'a PrimeField,
    q: &'a Quiver,
    x: &'a Rep<u64>,
    letters: &'a [usize],
    only: Option<&'a [usize]>,
    tops: &'a [SubSpaces<u64>],
}

impl FlagSearch<'_> {
    fn rec(&self, k: usize, xk: SubSpaces<u64>, a: &mut Vec<usize>, out: &mut BTreeMap<Vec<usize>, u64>) {
        if k == 0 {
            *out.entry(a.clone()).or_insert(0) += 1;
            return;
        }
        let f = self.f;
        let j = self.letters[k - 1];
        let upper = socle_step(f, self.q, self.x, &xk, j)[j].clone();
        let lower = subspace::span(f, self.x.dims[j], &[&xk[j], &self.tops[k - 1][j]]);
        if !subspace::contains(f, &upper, &lower) {
            return;
        }
        let base = lower.cols() - xk[j].cols();
        let room = upper.cols() - lower.cols();
        let range: Vec<usize> = match self.only {
            Some(w) if w[k - 1] >= base && w[k - 1] - base <= room => vec![w[k - 1] - base],
            Some(_) => vec![],
            None => (0..=room).collect(),
        };
        for e in range {
            a[k - 1] = base + e;
            // At the last step only the dimension matters.
            if k == 1 {
                if e == room {
                    *out.entry(a.clone()).or_insert(0) += 1;
                }
                continue;
            }
            for_each_between(f, &lower, &upper, e, &mut |u| {
                let mut next = xk.clone();
                next[j] = u.clone();
                self.rec(k - 1, next, a, out);
            });
        }
        a[k - 1] = 0;
    }

    /// Same count, memoized on the Jordan type of `X/X_k`: `dim(a^m X + X_k)` for every `m`.
    fn rec_memo(&self, k: usize, xk: SubSpaces<u64>, powers: &[Matrix<u64>], memo: &mut FlagMemo) -> BTreeMap<Vec<usize>, u64> {
        if k == 0 {
            return BTreeMap::from([(vec![], 1)]);
        }
        let f = self.f;
        let n = self.x.dims[0];
        let key = (k, powers.iter().map(|p| subspace::span(f, n, &[p, &xk[0]]).cols()).chain([xk[0].cols()]).collect());
        if let Some(hit) = memo.get(&key) {
            return hit.clone();
        }
        let upper = socle_step(f, self.q, self.x, &xk, 0)[0].clone();
        let lower = subspace::span(f, n, &[&xk[0], &self.tops[k - 1][0]]);
        let mut out = BTreeMap::new();
        if subspace::contains(f, &upper, &lower) {
            let base = lower.cols() - xk[0].cols();
            let room = upper.cols() - lower.cols();
            for e in 0..=room {
                let w = base + e;
                if self.only.is_some_and(|o| o[k - 1] != w) {
                    continue;
                }
                for_each_between(f, &lower, &upper, e, &mut |u| {
                    for (prefix, c) in self.rec_memo(k - 1, vec![u.clone()], powers, memo) {
                        let mut full = prefix;
                        full.push(w);
                        *out.entry(full).or_insert(0) += c;
                    }
                });
            }
        }
        memo.insert(key, out.clone());
        out
    }
}

/// Counts over `F_p` the subrepresentations of `Y`, bucketed by dimension vector;
/// `only` restricts to a single dimension vector.
pub fn count_subrep_strata(f: &PrimeField, q: &Quiver, y: &Rep<u64>, only: Option<&[usize]>) -> BTreeMap<Vec<usize>, u64> {
    let mut out = BTreeMap::new();
    let mut chosen: Vec<Matrix<u64>> = Vec::new();
    subrep_rec(f, q, y, only, &mut chosen, &mut out);
    out
}

fn subrep_rec(f: &PrimeField, q: &Quiver, y: &Rep<u64>, only: Option<&[usize]>, chosen: &mut Vec<Matrix<u64>>, out: &mut BTreeMap<Vec<usize>, u64>) {
    let v = chosen.len();
    if v == q.n {
        let d: Vec<usize> = chosen.iter().map(|m| m.cols()).collect();
        *out.entry(d).or_insert(0) += 1;
        return;
    }
    let n = y.dims[v];
    let mut lower = Matrix::zeros(f, n, 0);
    let mut upper = Matrix::identity(f, n);
    for (a, arr) in q.arrows.iter().enumerate() {
        if arr.target == v && arr.source < v {
            let img = y.maps[a].mul(f, &chosen[arr.source]);
            lower = subspace::span(f, n, &[&lower, &img]);
        }
        if arr.source == v && arr.target < v {
            upper = subspace::intersect(f, &upper, &subspace::preimage(f, &y.maps[a], &chosen[arr.target]));
        }
    }
    if !subspace::contains(f, &upper, &lower) {
        return;
    }
    let room = upper.cols() - lower.cols();
    let loops: Vec<usize> = q.arrows.iter().enumerate().filter(|(_, arr)| arr.source == v && arr.target == v).map(|(a, _)| a).collect();
    let dims: Vec<usize> = match only {
        Some(d) if d[v] >= lower.cols() && d[v] - lower.cols() <= room => vec![d[v] - lower.cols()],
        Some(_) => vec![],
        None => (0..=room).collect(),
    };
    for e in dims {
        for_each_between(f, &lower, &upper, e, &mut |u| {
            if loops.iter().all(|&a| subspace::contains(f, u, &y.maps[a].mul(f, u))) {
                chosen.push(u.clone());
                subrep_rec(f, q, y, only, chosen, out);
                chosen.pop();
            }
        });
    }
}

/// Whether `p` is a good prime for a module: entries reduce, arrow ranks and the
/// dimension of the endomorphism space agree with the rational values.
pub fn good_prime_for(q: &Quiver, x: &Rep<Q>, p: u64) -> bool {
    if !x.good_prime(q, p) {
        return false;
    }
    let red = x.mod_p(p).expect("reduces");
    let fp = PrimeField::new(p);
    hom::hom_dim(&fp, q, &red, &red) == hom::hom_dim(&QQ, q, x, x)
}

/// The refined socle and top filtrations of `X` for a word.
pub struct FiltrationPair {
    pub plus: Filtration<Q>,
    pub minus: Filtration<Q>,
}

pub fn word_letters(word: &ReducedWord) -> Vec<usize> {
    (1..=word.r()).map(|k| word.letter(k)).collect()
}

pub fn filtrations(q: &Quiver, word: &ReducedWord, x: &Rep<Q>) -> FiltrationPair {
    let letters = word_letters(word);
    FiltrationPair { plus: socle_filtration(&QQ, q, x, &letters), minus: top_filtration(&QQ, q, x, &letters) }
}

/// `a⁺(X)` and `a⁻(X)` in index order `(a_1, …, a_r)`.
pub fn weights(q: &Quiver, word: &ReducedWord, x: &Rep<Q>) -> Result<(Vec<usize>, Vec<usize>)> {
    let fl = filtrations(q, word, x);
    if !is_full(x, &fl.plus.chain[0]) {
        return Err(Error::NotInCategory("the refined socle series does not exhaust the module".into()));
    }
    Ok((fl.plus.weights(), fl.minus.weights()))
}

/// `f_k = Σ_{s ≤ k, i_s = i_k} (a⁻_s − a_s)`.
pub fn dmap(word: &ReducedWord, a_minus: &[usize], a: &[usize]) -> Vec<i64> {
    (1..=word.r())
        .map(|k| {
            let mut s = k;
            let mut acc = 0i64;
            while s > 0 {
                acc += a_minus[s - 1] as i64 - a[s - 1] as i64;
                s = word.minus(s);
            }
            acc
        })
        .collect()
}

/// Inverse of [`dmap`]: `a_k = a⁻_k − f_k + f_{k⁻}`.
pub fn dmap_inverse(word: &ReducedWord, a_minus: &[usize], f: &[i64]) -> Result<Vec<usize>> {
    (1..=word.r())
        .map(|k| {
            let prev = if word.minus(k) > 0 { f[word.minus(k) - 1] } else { 0 };
            let v = a_minus[k - 1] as i64 - f[k - 1] + prev;
            usize::try_from(v).map_err(|_| Error::OutOfRange(format!("a_{k} = {v} is negative")))
        })
        .collect()
}

/// The module `Y = D Hom-bar(X, V_i)` over `Γ_i`, realized as `Y(k) = e_{i_k}(X_k⁺/X_k⁻)`.
#[derive(Clone, Debug)]
pub struct YModule {
    pub gamma: GammaQuiver,
    pub quiver: Quiver,
    pub rep: Rep<Q>,
}

pub fn build_y_module(q: &Quiver, word: &ReducedWord, x: &Rep<Q>) -> Result<YModule> {
    let fl = filtrations(q, word, x);
    if !is_full(x, &fl.plus.chain[0]) {
        return Err(Error::NotInCategory("the refined socle series does not exhaust the module".into()));
    }
    let r = word.r();
    let quots: Vec<subspace::Quotient<Q>> = (1..=r)
        .map(|k| {
            let j = word.letter(k);
            subspace::Quotient::new(&QQ, &fl.minus.chain[k][j], &fl.plus.chain[k][j])
        })
        .collect();
    let gamma = build_gamma_i(q, word);
    let quiver = gamma.to_quiver();
    let dims: Vec<usize> = quots.iter().map(|qt| qt.dim()).collect();
    let mut maps = Vec::with_capacity(gamma.arrows.len());
    for arr in &gamma.arrows {
        let (s, t) = (arr.source, arr.target);
        let lin = match arr.kind {
            GammaArrowKind::Horizontal => QMatrix::identity(&QQ, x.dims[word.letter(s)]),
            GammaArrowKind::Ordinary(a) => x.maps[a].clone(),
        };
        let img = lin.mul(&QQ, &quots[s - 1].comp);
        let jt = word.letter(t);
        if !subspace::contains(&QQ, &fl.plus.chain[t][jt], &img) {
            return Err(Error::VerificationFailed(format!("arrow {s} → {t} does not preserve the filtration")));
        }
        maps.push(quots[t - 1].proj_matrix().mul(&QQ, &img));
    }
    Ok(YModule { gamma, quiver, rep: Rep { dims, maps } })
}

/// Per-stratum counting profiles, sampling primes until every stratum is decided.
///
/// `count(p)` returns counts for all strata at `p`; `max_degree(key)` bounds the degree.
pub fn interpolate_strata<K: Ord + Clone>(
    good: &dyn Fn(u64) -> bool,
    count: &mut dyn FnMut(u64) -> BTreeMap<K, u64>,
    max_degree: &dyn Fn(&K) -> usize,
) -> Result<BTreeMap<K, CountingProfile>> {
    let mut samples: Vec<(u64, BTreeMap<K, u64>)> = Vec::new();
    for p in primes().filter(|&p| good(p)).take(MAX_PRIMES) {
        samples.push((p, count(p)));
        let keys: std::collections::BTreeSet<K> = samples.iter().flat_map(|(_, m)| m.keys().cloned()).collect();
        let mut done = BTreeMap::new();
        let mut pending = false;
        for key in &keys {
            let s: BTreeMap<u64, u64> = samples.iter().map(|(p, m)| (*p, *m.get(key).unwrap_or(&0))).collect();
            match interpolate_adaptive(&s, max_degree(key), HOLDOUT)? {
                Some(prof) => {
                    done.insert(key.clone(), prof);
                }
                None => pending = true,
            }
        }
        if !pending {
            return Ok(done);
        }
    }
    Err(Error::NotPolynomialCount(format!("no decision after {MAX_PRIMES} good primes")))
}

/// Ambient dimension `Σ d_k (h_k − d_k)` of the product of Grassmannians.
pub fn ambient_bound(h: &[usize], d: &[usize]) -> usize {
    h.iter().zip(d).map(|(&h, &d)| d * (h - d.min(h))).sum()
}

/// Flag strata of `X` with their profiles.
pub fn flag_profiles(ctx: &CwContext, x: &Rep<Q>) -> Result<BTreeMap<Vec<usize>, CountingProfile>> {
    let q = ctx.quiver();
    let letters = word_letters(&ctx.word);
    let (a_plus, a_minus) = weights(q, &ctx.word, x)?;
    let h: Vec<usize> = dmap(&ctx.word, &a_minus, &a_plus).into_iter().map(|v| v as usize).collect();
    let word = ctx.word.clone();
    interpolate_strata(
        &|p| good_prime_for(q, x, p),
        &mut |p| {
            let fp = PrimeField::new(p);
            count_flag_strata(&fp, q, &x.mod_p(p).expect("good prime"), &letters, None)
        },
        &|a: &Vec<usize>| {
            let d: Vec<usize> = dmap(&word, &a_minus, a).into_iter().map(|v| v.max(0) as usize).collect();
            ambient_bound(&h, &d)
        },
    )
}

/// Subrepresentation strata of a representation with their profiles.
pub fn grassmannian_profiles(q: &Quiver, y: &Rep<Q>) -> Result<BTreeMap<Vec<usize>, CountingProfile>> {
    interpolate_strata(
        &|p| y.mod_p(p).is_some() && y.good_prime(q, p),
        &mut |p| count_subrep_strata(&PrimeField::new(p), q, &y.mod_p(p).expect("good prime"), None),
        &|d: &Vec<usize>| ambient_bound(&y.dims, d),
    )
}

/// A single flag stratum over a list of primes.
pub fn count_flags(q: &Quiver, x: &Rep<Q>, letters: &[usize], a: &[usize], p: u64) -> Result<u64> {
    if !good_prime_for(q, x, p) {
        return Err(Error::BadPrime(p));
    }
    let fp = PrimeField::new(p);
    Ok(count_flag_strata(&fp, q, &x.mod_p(p).expect("good"), letters, Some(a)).get(a).copied().unwrap_or(0))
}

/// A single quiver Grassmannian over `F_p`.
pub fn count_grassmannian(q: &Quiver, y: &Rep<Q>, d: &[usize], p: u64) -> Result<u64> {
    let Some(red) = y.mod_p(p) else { return Err(Error::BadPrime(p)) };
    if !y.good_prime(q, p) {
        return Err(Error::BadPrime(p));
    }
    Ok(count_subrep_strata(&PrimeField::new(p), q, &red, Some(d)).get(d).copied().unwrap_or(0))
}

/// Euler characteristic of a counting profile; absent values are reported as errors.
pub fn euler_characteristic(samples: &BTreeMap<u64, u64>, degree_bound: usize) -> Result<CountingProfile> {
    interpolate_adaptive(samples, degree_bound, HOLDOUT)?
        .ok_or(Error::InsufficientSamples { needed: HOLDOUT + 1, got: samples.len() })
}

/// Point counts over `F_p` of every flag stratum of `X` and of the quiver Grassmannian
/// of `Y` matched to it by `d_{i,X}`, keyed by weight. A side with no points counts 0.
pub fn stratum_counts(ctx: &CwContext, x: &Rep<Q>, p: u64) -> Result<BTreeMap<Vec<usize>, (u64, u64)>> {
    let q = ctx.quiver();
    let (_, a_minus) = weights(q, &ctx.word, x)?;
    let y = build_y_module(q, &ctx.word, x)?;
    if !good_prime_for(q, x, p) || y.rep.mod_p(p).is_none() || !y.rep.good_prime(&y.quiver, p) {
        return Err(Error::BadPrime(p));
    }
    let fp = PrimeField::new(p);
    let flags = count_flag_strata(&fp, q, &x.mod_p(p).expect("good prime"), &word_letters(&ctx.word), None);
    let subs = count_subrep_strata(&fp, &y.quiver, &y.rep.mod_p(p).expect("good prime"), None);
    let mut out: BTreeMap<Vec<usize>, (u64, u64)> = flags.into_iter().map(|(a, n)| (a, (n, 0))).collect();
    for (f, n) in subs {
        let fi: Vec<i64> = f.iter().map(|&v| v as i64).collect();
        out.entry(dmap_inverse(&ctx.word, &a_minus, &fi)?).or_insert((0, 0)).1 = n;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::quiver::{BoundQuiver, Relation};

    #[test]
    fn subspace_counts_are_gaussian() {
        let f = PrimeField::new(3);
        for (m, d) in [(3, 1), (4, 2), (3, 0), (2, 2)] {
            let mut c = 0;
            for_each_subspace(&f, m, d, &mut |_| c += 1);
            assert_eq!(c, gaussian_binomial(3, m, d));
        }
    }

    pub(crate) fn loop_setup() -> (CwContext, Rep<Q>) {
        let mut q = Quiver::new(1);
        q.add_arrow("a", 0, 0);
        q.add_arrow("b", 0, 0);
        let rels = vec![Relation::monomial(vec![1, 0]), Relation::monomial(vec![0, 1])];
        let bq = BoundQuiver::new(q, rels).unwrap();
        let w = ReducedWord::unchecked(1, &[1, 1, 1, 1]).unwrap();
        let ctx = CwContext::for_algebra(bq, &w).unwrap();
        let a = QMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![0; 4], vec![0; 4], vec![0; 4]], 4);
        let b = QMatrix::from_i64_rows(&[vec![0; 4], vec![0; 4], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], 4);
        (ctx, Rep { dims: vec![4], maps: vec![a, b] })
    }

    #[test]
    fn loop_example() {
        let (ctx, x) = loop_setup();
        let q = ctx.quiver();
        let (ap, am) = weights(q, &ctx.word, &x).unwrap();
        assert_eq!(ap, vec![0, 1, 1, 2]);
        assert_eq!(am, vec![1, 2, 1, 0]);
        assert_eq!(dmap(&ctx.word, &am, &[1, 1, 1, 1]), vec![0, 1, 1, 0]);
        let y = build_y_module(q, &ctx.word, &x).unwrap();
        assert_eq!(y.rep.dims, vec![1, 2, 2, 0]);
        let letters = word_letters(&ctx.word);
        for (p, n) in [(2, 5), (3, 7), (5, 11)] {
            assert_eq!(count_flags(q, &x, &letters, &[1, 1, 1, 1], p).unwrap(), n);
            assert_eq!(count_grassmannian(&y.quiver, &y.rep, &[0, 1, 1, 0], p).unwrap(), n);
        }
        let prof = flag_profiles(&ctx, &x).unwrap();
        assert_eq!(prof[&vec![1, 1, 1, 1]].euler_char, Some(3));
        assert_eq!(prof[&am].euler_char, Some(1));
    }

    #[test]
    fn springer_example() {
        let mut q = Quiver::new(1);
        q.add_arrow("a", 0, 0);
        let bq = BoundQuiver::new(q, vec![Relation::monomial(vec![0; 7])]).unwrap();
        let w = ReducedWord::unchecked(1, &[1; 7]).unwrap();
        let ctx = CwContext::for_algebra(bq, &w).unwrap();
        let x = Rep::direct_sum(&QQ, ctx.quiver(), &[ctx.vk(3), ctx.vk(2), ctx.vk(2)]);
        let (_, am) = weights(ctx.quiver(), &ctx.word, &x).unwrap();
        assert_eq!(dmap(&ctx.word, &am, &[1; 7]), vec![2, 4, 4, 3, 2, 1, 0]);
        let y = build_y_module(ctx.quiver(), &ctx.word, &x).unwrap();
        assert_eq!(y.rep.dims, vec![3, 6, 7, 7, 6, 3, 0]);
        let f = dmap(&ctx.word, &am, &[1; 7]);
        assert_eq!(dmap_inverse(&ctx.word, &am, &f).unwrap(), vec![1; 7]);
    }
}
