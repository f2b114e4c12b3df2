//! Finite-dimensional quiver representations and their basic operations.

use crate::arith::matrix::subspace::{self, Quotient};
use crate::arith::{Field, Matrix, PrimeField, QMatrix, Q, QQ};
use crate::error::{Error, Result};
use crate::rep::quiver::{BoundQuiver, Quiver};
use serde_json::{Map, Value};
use std::collections::BTreeMap;
use std::fmt::Debug;

/// A representation: a vector space `F^{dims[v]}` per vertex and a matrix per arrow
/// of shape `dims[target] × dims[source]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Rep<E> {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<E>>,
}

/// A subrepresentation given by a column basis of a subspace at each vertex.
pub type SubSpaces<E> = Vec<Matrix<E>>;

impl<E: Clone + PartialEq + Debug> Rep<E> {
    pub fn zero<F: Field<E = E>>(f: &F, q: &Quiver) -> Rep<E> {
        Rep { dims: vec![0; q.n], maps: q.arrows.iter().map(|_| Matrix::zeros(f, 0, 0)).collect() }
    }

    pub fn simple<F: Field<E = E>>(f: &F, q: &Quiver, v: usize) -> Rep<E> {
        let mut dims = vec![0; q.n];
        dims[v] = 1;
        Rep::with_zero_maps(f, q, dims)
    }

    pub fn with_zero_maps<F: Field<E = E>>(f: &F, q: &Quiver, dims: Vec<usize>) -> Rep<E> {
        let maps = q.arrows.iter().map(|a| Matrix::zeros(f, dims[a.target], dims[a.source])).collect();
        Rep { dims, maps }
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero_rep(&self) -> bool {
        self.total_dim() == 0
    }

    /// Checks that matrix shapes match the quiver.
    pub fn check_shapes(&self, q: &Quiver) -> Result<()> {
        if self.dims.len() != q.n || self.maps.len() != q.arrows.len() {
            return Err(Error::Invalid("representation does not match the quiver".into()));
        }
        for (a, m) in q.arrows.iter().zip(&self.maps) {
            if m.shape() != (self.dims[a.target], self.dims[a.source]) {
                return Err(Error::Invalid(format!("arrow {} has shape {:?}", a.name, m.shape())));
            }
        }
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum<F: Field<E = E>>(f: &F, q: &Quiver, parts: &[&Rep<E>]) -> Rep<E> {
        let dims: Vec<usize> = (0..q.n).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
        let mut out = Rep::with_zero_maps(f, q, dims);
        let mut off = vec![0usize; q.n];
        for p in parts {
            for (a, arr) in q.arrows.iter().enumerate() {
                out.maps[a].set_block(off[arr.target], off[arr.source], &p.maps[a]);
            }
            for v in 0..q.n {
                off[v] += p.dims[v];
            }
        }
        out
    }

    /// Matrix of a word (arrows in traversal order) starting at vertex `v`.
    pub fn eval_word<F: Field<E = E>>(&self, f: &F, q: &Quiver, v: usize, word: &[usize]) -> Matrix<E> {
        let mut m = Matrix::identity(f, self.dims[v]);
        let mut cur = v;
        for &a in word {
            assert_eq!(q.source(a), cur, "word is not a path");
            m = self.maps[a].mul(f, &m);
            cur = q.target(a);
        }
        m
    }

    pub fn full_subspaces<F: Field<E = E>>(&self, f: &F) -> SubSpaces<E> {
        self.dims.iter().map(|&d| Matrix::identity(f, d)).collect()
    }

    pub fn zero_subspaces<F: Field<E = E>>(&self, f: &F) -> SubSpaces<E> {
        self.dims.iter().map(|&d| Matrix::zeros(f, d, 0)).collect()
    }

    /// Whether a family of vertex subspaces is stable under all arrows.
    pub fn is_subrep<F: Field<E = E>>(&self, f: &F, q: &Quiver, sub: &SubSpaces<E>) -> bool {
        q.arrows.iter().enumerate().all(|(a, arr)| {
            let img = self.maps[a].mul(f, &sub[arr.source]);
            subspace::contains(f, &sub[arr.target], &img)
        })
    }

    /// The subrepresentation on the given bases (which must be stable).
    pub fn sub_rep<F: Field<E = E>>(&self, f: &F, q: &Quiver, sub: &SubSpaces<E>) -> Result<Rep<E>> {
        let dims: Vec<usize> = sub.iter().map(|s| s.cols()).collect();
        let mut maps = Vec::with_capacity(q.arrows.len());
        for (a, arr) in q.arrows.iter().enumerate() {
            let img = self.maps[a].mul(f, &sub[arr.source]);
            let (c, _) = sub[arr.target].solve(f, &img).map_err(|_| Error::Invalid("subspaces are not stable under the arrows".into()))?;
            maps.push(c);
        }
        Ok(Rep { dims, maps })
    }

    /// The quotient by a stable family of subspaces, with projection data per vertex.
    pub fn quotient_rep<F: Field<E = E>>(&self, f: &F, q: &Quiver, sub: &SubSpaces<E>) -> (Rep<E>, Vec<Quotient<E>>) {
        let quots: Vec<Quotient<E>> = (0..q.n).map(|v| Quotient::new(f, &sub[v], &Matrix::identity(f, self.dims[v]))).collect();
        let dims = quots.iter().map(|qt| qt.dim()).collect();
        let maps = q
            .arrows
            .iter()
            .enumerate()
            .map(|(a, arr)| quots[arr.target].proj_matrix().mul(f, &self.maps[a].mul(f, &quots[arr.source].comp)))
            .collect();
        (Rep { dims, maps }, quots)
    }

    /// Subquotient `U/L` for stable families `L ⊆ U`.
    pub fn subquotient<F: Field<E = E>>(&self, f: &F, q: &Quiver, upper: &SubSpaces<E>, lower: &SubSpaces<E>) -> Result<Rep<E>> {
        let u = self.sub_rep(f, q, upper)?;
        let lower_in_u: SubSpaces<E> = (0..q.n)
            .map(|v| upper[v].solve(f, &lower[v]).map(|(c, _)| c).map_err(|_| Error::Invalid("lower subspace not contained in upper".into())))
            .collect::<Result<_>>()?;
        Ok(u.quotient_rep(f, q, &lower_in_u).0)
    }

    /// The dual representation, a representation of the opposite quiver.
    pub fn dual(&self) -> Rep<E> {
        Rep { dims: self.dims.clone(), maps: self.maps.iter().map(|m| m.transpose()).collect() }
    }

    /// Smallest subrepresentation containing the given vectors at each vertex.
    pub fn generated_sub<F: Field<E = E>>(&self, f: &F, q: &Quiver, gens: &SubSpaces<E>) -> SubSpaces<E> {
        let mut cur: SubSpaces<E> = gens.iter().map(|g| g.col_space(f)).collect();
        loop {
            let mut changed = false;
            for (a, arr) in q.arrows.iter().enumerate() {
                let img = self.maps[a].mul(f, &cur[arr.source]);
                if !subspace::contains(f, &cur[arr.target], &img) {
                    let t = arr.target;
                    cur[t] = subspace::span(f, self.dims[t], &[&cur[t], &img]);
                    changed = true;
                }
            }
            if !changed {
                return cur;
            }
        }
    }

    /// Radical `Σ_a Im X(a)` at every vertex.
    pub fn radical<F: Field<E = E>>(&self, f: &F, q: &Quiver) -> SubSpaces<E> {
        (0..q.n)
            .map(|v| {
                let imgs: Vec<&Matrix<E>> = q.arrows_into(v).map(|a| &self.maps[a]).collect();
                if imgs.is_empty() {
                    Matrix::zeros(f, self.dims[v], 0)
                } else {
                    subspace::span(f, self.dims[v], &imgs)
                }
            })
            .collect()
    }

    /// Socle `∩_a Ker X(a)` at every vertex.
    pub fn socle<F: Field<E = E>>(&self, f: &F, q: &Quiver) -> SubSpaces<E> {
        (0..q.n)
            .map(|v| {
                let outs: Vec<&Matrix<E>> = q.arrows_from(v).map(|a| &self.maps[a]).collect();
                if outs.is_empty() {
                    Matrix::identity(f, self.dims[v])
                } else {
                    Matrix::vstack(&outs, self.dims[v]).kernel(f)
                }
            })
            .collect()
    }

    /// Dimension vector of the top `X/rad X`.
    pub fn top_dims<F: Field<E = E>>(&self, f: &F, q: &Quiver) -> Vec<usize> {
        self.radical(f, q).iter().zip(&self.dims).map(|(r, d)| d - r.cols()).collect()
    }

    pub fn socle_dims<F: Field<E = E>>(&self, f: &F, q: &Quiver) -> Vec<usize> {
        self.socle(f, q).iter().map(|s| s.cols()).collect()
    }
}

impl Rep<Q> {
    /// Whether the relations hold.
    pub fn satisfies(&self, bq: &BoundQuiver) -> bool {
        let q = &bq.quiver;
        bq.relations.iter().all(|rel| {
            let (s, t) = (q.source(rel.terms[0].1[0]), q.target(*rel.terms[0].1.last().unwrap()));
            let mut acc = Matrix::zeros(&QQ, self.dims[t], self.dims[s]);
            for (c, p) in &rel.terms {
                acc = acc.add(&QQ, &self.eval_word(&QQ, q, s, p).scale(&QQ, c));
            }
            acc.is_zero(&QQ)
        })
    }

    /// Reduction modulo `p`; `None` when a denominator is divisible by `p`.
    pub fn mod_p(&self, p: u64) -> Option<Rep<u64>> {
        let maps = self.maps.iter().map(|m| m.mod_p(p)).collect::<Option<Vec<_>>>()?;
        Some(Rep { dims: self.dims.clone(), maps })
    }

    /// Whether `p` is a good prime: entries reduce and the ranks of all arrow maps
    /// and of the vertex-wise stacked outgoing and incoming maps are preserved.
    pub fn good_prime(&self, q: &Quiver, p: u64) -> bool {
        let Some(red) = self.mod_p(p) else { return false };
        let fp = PrimeField::new(p);
        for (m, mp) in self.maps.iter().zip(&red.maps) {
            if m.rank(&QQ) != mp.rank(&fp) {
                return false;
            }
        }
        for v in 0..q.n {
            let outs: Vec<usize> = q.arrows_from(v).collect();
            if !outs.is_empty() {
                let a: Vec<&QMatrix> = outs.iter().map(|&i| &self.maps[i]).collect();
                let b: Vec<&Matrix<u64>> = outs.iter().map(|&i| &red.maps[i]).collect();
                if QMatrix::vstack(&a, self.dims[v]).rank(&QQ) != Matrix::vstack(&b, self.dims[v]).rank(&fp) {
                    return false;
                }
            }
        }
        true
    }

    /// JSON form `{"dims": [...], "arrows": {"name": [[row...]]}}`.
    pub fn to_json(&self, q: &Quiver) -> Value {
        let mut arrows = Map::new();
        let mut sorted: BTreeMap<&str, usize> = BTreeMap::new();
        for (i, a) in q.arrows.iter().enumerate() {
            sorted.insert(&a.name, i);
        }
        for (name, i) in sorted {
            let m = &self.maps[i];
            let rows: Vec<Value> = (0..m.rows()).map(|r| Value::Array(m.row(r).iter().map(q_to_json).collect())).collect();
            arrows.insert(name.to_string(), Value::Array(rows));
        }
        let mut obj = Map::new();
        obj.insert("dims".into(), Value::Array(self.dims.iter().map(|&d| Value::from(d)).collect()));
        obj.insert("arrows".into(), Value::Object(arrows));
        Value::Object(obj)
    }

    /// Parses the JSON form; arrows not listed are zero.
    pub fn from_json(q: &Quiver, v: &Value) -> Result<Rep<Q>> {
        let dims: Vec<usize> = v
            .get("dims")
            .and_then(|d| d.as_array())
            .ok_or_else(|| Error::ParseError("missing \"dims\"".into()))?
            .iter()
            .map(|x| x.as_u64().map(|u| u as usize).ok_or_else(|| Error::ParseError("dims must be nonnegative integers".into())))
            .collect::<Result<_>>()?;
        if dims.len() != q.n {
            return Err(Error::ParseError(format!("expected {} dims, got {}", q.n, dims.len())));
        }
        let mut rep = Rep::with_zero_maps(&QQ, q, dims);
        if let Some(arrows) = v.get("arrows") {
            let obj = arrows.as_object().ok_or_else(|| Error::ParseError("\"arrows\" must be an object".into()))?;
            for (name, rows) in obj {
                let a = q.arrow_index(name).ok_or_else(|| Error::ParseError(format!("unknown arrow {name}")))?;
                let rows = rows.as_array().ok_or_else(|| Error::ParseError(format!("arrow {name} must be a matrix")))?;
                let (tr, sc) = (rep.dims[q.target(a)], rep.dims[q.source(a)]);
                if rows.len() != tr {
                    return Err(Error::ParseError(format!("arrow {name} needs {tr} rows")));
                }
                for (i, row) in rows.iter().enumerate() {
                    let row = row.as_array().ok_or_else(|| Error::ParseError(format!("arrow {name} row {i} must be an array")))?;
                    if row.len() != sc {
                        return Err(Error::ParseError(format!("arrow {name} needs {sc} columns")));
                    }
                    for (j, x) in row.iter().enumerate() {
                        rep.maps[a].set(i, j, q_from_json(x)?);
                    }
                }
            }
        }
        Ok(rep)
    }
}

pub fn q_to_json(x: &Q) -> Value {
    match x.to_i64() {
        Some(i) => Value::from(i),
        None => Value::String(x.to_string()),
    }
}

pub fn q_from_json(x: &Value) -> Result<Q> {
    match x {
        Value::Number(n) => n.as_i64().map(Q::from_int).ok_or_else(|| Error::ParseError(format!("non-integer number {n}; use a string like \"1/2\""))),
        Value::String(s) => crate::arith::laurent::parse_rational(s),
        _ => Err(Error::ParseError(format!("bad matrix entry {x}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Quiver {
        let mut q = Quiver::new(2);
        q.add_arrow("a", 0, 1);
        q
    }

    fn path_rep() -> Rep<Q> {
        Rep { dims: vec![1, 1], maps: vec![QMatrix::from_i64_rows(&[vec![1]], 1)] }
    }

    #[test]
    fn radical_and_socle_of_path_module() {
        let q = a2();
        let m = path_rep();
        assert_eq!(m.top_dims(&QQ, &q), vec![1, 0]);
        assert_eq!(m.socle_dims(&QQ, &q), vec![0, 1]);
    }

    #[test]
    fn quotient_by_socle_is_simple() {
        let q = a2();
        let m = path_rep();
        let soc = m.socle(&QQ, &q);
        let (quot, _) = m.quotient_rep(&QQ, &q, &soc);
        assert_eq!(quot.dims, vec![1, 0]);
    }

    #[test]
    fn json_round_trip() {
        let q = a2();
        let m = Rep { dims: vec![1, 1], maps: vec![QMatrix::from_rows(vec![vec![Q::new(1, 2)]], 1)] };
        let j = m.to_json(&q);
        assert_eq!(j.to_string(), r#"{"dims":[1,1],"arrows":{"a":[["1/2"]]}}"#);
        assert_eq!(Rep::from_json(&q, &j).unwrap(), m);
    }

    #[test]
    fn mod_p_good_prime() {
        let q = a2();
        let m = Rep { dims: vec![1, 1], maps: vec![QMatrix::from_i64_rows(&[vec![3]], 1)] };
        assert!(m.good_prime(&q, 2));
        assert!(!m.good_prime(&q, 3));
    }
}
