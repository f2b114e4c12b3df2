//! Built-in scenarios: algebras, words and named modules, plus loading from JSON.

use crate::arith::{QMatrix, Q, QQ};
use crate::cw::CwContext;
use crate::error::{Error, Result};
use crate::rep::module::Rep;
use crate::rep::quiver::{BoundQuiver, Quiver, Relation};
use crate::weyl::{CartanData, CartanJson, ReducedWord};
use serde_json::Value;
use std::collections::BTreeMap;

/// Names of the bundled scenarios.
pub const BUNDLED: [&str; 5] = ["loop-1111", "springer-A", "A3-w0", "A4-w0", "kronecker"];

/// A category `C_w` (or module category over `A_i`) with named modules.
#[derive(Clone, Debug)]
pub struct Scenario {
    pub name: String,
    pub ctx: CwContext,
    /// Named modules, including `V1, …, Vr` and, for preprojective algebras, `W1, …, Wr`.
    pub modules: BTreeMap<String, Rep<Q>>,
}

impl Scenario {
    fn new(name: &str, ctx: CwContext, extra: Vec<(String, Rep<Q>)>) -> Scenario {
        let mut modules = BTreeMap::new();
        for k in 1..=ctx.r() {
            modules.insert(format!("V{k}"), ctx.vk(k).clone());
            if let Ok(w) = ctx.wk(k) {
                modules.insert(format!("W{k}"), w.clone());
            }
        }
        modules.extend(extra);
        Scenario { name: name.to_string(), ctx, modules }
    }

    pub fn module(&self, name: &str) -> Result<&Rep<Q>> {
        self.modules.get(name).ok_or_else(|| Error::Invalid(format!("scenario {} has no module {name}; known: {}", self.name, self.module_names().join(", "))))
    }

    /// Module names sorted by prefix and numeric suffix.
    pub fn module_names(&self) -> Vec<String> {
        let mut names: Vec<String> = self.modules.keys().cloned().collect();
        names.sort_by_key(|n| {
            let split = n.find(|c: char| c.is_ascii_digit()).unwrap_or(n.len());
            (n[..split].to_string(), n[split..].parse::<usize>().unwrap_or(0), n.clone())
        });
        names
    }

    pub fn is_preprojective(&self) -> bool {
        self.ctx.cartan.is_some()
    }
}

/// Loads a bundled scenario by name, or a JSON scenario file by path.
pub fn load_scenario(name: &str) -> Result<Scenario> {
    match name {
        "loop-1111" => loop_scenario(),
        "springer-A" => springer_scenario(),
        "A3-w0" => a3_scenario(),
        "A4-w0" => a4_scenario(),
        "kronecker" => kronecker_scenario(),
        path if path.ends_with(".json") => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::ParseError(format!("{path}: {e}")))?;
            scenario_from_json(path, &text)
        }
        other => Err(Error::UnknownScenario(other.to_string())),
    }
}

/// A module given by its nonzero arrow actions on basis vectors `(arrow, from, to, coefficient)`,
/// with basis vectors numbered per vertex.
fn module_from_actions(q: &Quiver, dims: Vec<usize>, actions: &[(&str, usize, usize, i64)]) -> Rep<Q> {
    let mut x = Rep::with_zero_maps(&QQ, q, dims);
    for &(name, from, to, c) in actions {
        let a = q.arrow_index(name).expect("arrow of the bundled quiver");
        x.maps[a].set(to, from, Q::from_int(c));
    }
    x
}

/// The algebra with one vertex, two loops `a, b` and relations `ab = ba = 0`.
pub fn loop_algebra() -> BoundQuiver {
    let mut q = Quiver::new(1);
    q.add_arrow("a", 0, 0);
    q.add_arrow("b", 0, 0);
    BoundQuiver::new(q, vec![Relation::monomial(vec![1, 0]), Relation::monomial(vec![0, 1])]).expect("valid relations")
}

/// The module `X` with basis `b_1, …, b_4`, `a b_2 = b_1`, `b b_2 = b_3`, `b b_3 = b_4`.
pub fn loop_module() -> Rep<Q> {
    let a = QMatrix::from_i64_rows(&[vec![0, 1, 0, 0], vec![0; 4], vec![0; 4], vec![0; 4]], 4);
    let b = QMatrix::from_i64_rows(&[vec![0; 4], vec![0; 4], vec![0, 1, 0, 0], vec![0, 0, 1, 0]], 4);
    Rep { dims: vec![4], maps: vec![a, b] }
}

fn loop_scenario() -> Result<Scenario> {
    let w = ReducedWord::unchecked(1, &[1, 1, 1, 1])?;
    let ctx = CwContext::for_algebra(loop_algebra(), &w)?;
    Ok(Scenario::new("loop-1111", ctx, vec![("X".into(), loop_module())]))
}

fn springer_scenario() -> Result<Scenario> {
    let mut q = Quiver::new(1);
    q.add_arrow("a", 0, 0);
    let bq = BoundQuiver::new(q, vec![Relation::monomial(vec![0; 7])])?;
    let w = ReducedWord::unchecked(1, &[1; 7])?;
    let ctx = CwContext::for_algebra(bq, &w)?;
    let x = Rep::direct_sum(&QQ, ctx.quiver(), &[ctx.vk(3), ctx.vk(2), ctx.vk(2)]);
    Ok(Scenario::new("springer-A", ctx, vec![("Vlambda".into(), x)]))
}

/// The three indecomposables of the `A_3` preprojective algebra that are not among `V_i`, `W_i`.
pub fn a3_extra_modules(q: &Quiver) -> Vec<(String, Rep<Q>)> {
    vec![
        ("L1".into(), module_from_actions(q, vec![1, 1, 1], &[("a12", 0, 0, 1), ("a23*", 0, 0, 1)])),
        ("L2".into(), Rep::simple(&QQ, q, 1)),
        ("L4".into(), module_from_actions(q, vec![1, 1, 1], &[("a12*", 0, 0, 1), ("a23", 0, 0, 1)])),
    ]
}

fn a3_scenario() -> Result<Scenario> {
    let c = CartanData::type_a(3);
    let w = ReducedWord::validate(&c, &[1, 2, 1, 3, 2, 1])?;
    let ctx = CwContext::preprojective(&c, &w)?;
    let extra = a3_extra_modules(ctx.quiver());
    Ok(Scenario::new("A3-w0", ctx, extra))
}

fn a4_scenario() -> Result<Scenario> {
    let c = CartanData::type_a(4);
    let w = ReducedWord::validate(&c, &[1, 3, 2, 4, 1, 3, 2, 4, 1, 3])?;
    let ctx = CwContext::preprojective(&c, &w)?;
    let q = ctx.quiver();
    let x = module_from_actions(q, vec![1, 1, 1, 1], &[("a12", 0, 0, 1), ("a23*", 0, 0, 1), ("a34*", 0, 0, 1)]);
    let y = module_from_actions(q, vec![0, 1, 1, 1], &[("a23*", 0, 0, 1), ("a34*", 0, 0, 1)]);
    Ok(Scenario::new("A4-w0", ctx, vec![("X".into(), x), ("Y".into(), y)]))
}

/// The module `X_λ` over the preprojective algebra of the Kronecker diagram, with
/// `dim X_λ = (5, 3)`.
pub fn kronecker_x_lambda(lambda: &Q) -> Rep<Q> {
    let bq = BoundQuiver::preprojective(&CartanData::multi_edge(2));
    let q = &bq.quiver;
    let mut x = Rep::with_zero_maps(&QQ, q, vec![5, 3]);
    let idx = |n: &str| q.arrow_index(n).expect("Kronecker arrow");
    let mut a = QMatrix::zeros(&QQ, 3, 5);
    let mut b = QMatrix::zeros(&QQ, 3, 5);
    for i in 0..3 {
        a.set(i, i, Q::one());
        b.set(i, i + 1, Q::one());
    }
    let mut a_star = QMatrix::zeros(&QQ, 5, 3);
    a_star.set(4, 1, Q::from_int(-1));
    a_star.set(4, 2, -lambda.clone());
    let mut b_star = QMatrix::zeros(&QQ, 5, 3);
    b_star.set(4, 0, Q::one());
    b_star.set(4, 1, lambda.clone());
    x.maps[idx("a12_1")] = a;
    x.maps[idx("a12_2")] = b;
    x.maps[idx("a12_1*")] = a_star;
    x.maps[idx("a12_2*")] = b_star;
    x
}

fn kronecker_scenario() -> Result<Scenario> {
    let c = CartanData::multi_edge(2);
    let w = ReducedWord::validate(&c, &[2, 1, 2, 1])?;
    let ctx = CwContext::preprojective(&c, &w)?;
    Ok(Scenario::new("kronecker", ctx, vec![("Xlambda".into(), kronecker_x_lambda(&Q::one()))]))
}

/// A scenario file: `{"cartan": {...}, "word": [...], "modules": {"name": {"dims": [...], "arrows": {...}}}}`.
pub fn scenario_from_json(name: &str, text: &str) -> Result<Scenario> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::ParseError(format!("{name}: line {} column {}: {e}", e.line(), e.column())))?;
    let cartan: CartanJson = serde_json::from_value(v.get("cartan").cloned().ok_or_else(|| Error::ParseError(format!("{name}: missing \"cartan\"")))?)
        .map_err(|e| Error::ParseError(format!("{name}: \"cartan\": {e}")))?;
    let cartan = CartanData::from_json(&cartan)?;
    let word: Vec<usize> = serde_json::from_value(v.get("word").cloned().ok_or_else(|| Error::ParseError(format!("{name}: missing \"word\"")))?)
        .map_err(|e| Error::ParseError(format!("{name}: \"word\": {e}")))?;
    let w = ReducedWord::validate(&cartan, &word)?;
    let ctx = CwContext::preprojective(&cartan, &w)?;
    let mut extra = Vec::new();
    if let Some(mods) = v.get("modules") {
        let obj = mods.as_object().ok_or_else(|| Error::ParseError(format!("{name}: \"modules\" must be an object")))?;
        for (k, m) in obj {
            let rep = Rep::from_json(ctx.quiver(), m).map_err(|e| Error::ParseError(format!("{name}: module {k}: {e}")))?;
            if !rep.satisfies(&ctx.algebra) {
                return Err(Error::NotInCategory(format!("module {k} violates the relations")));
            }
            extra.push((k.clone(), rep));
        }
    }
    Ok(Scenario::new(name, ctx, extra))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::hom;

    #[test]
    fn bundled_scenarios_load() {
        for name in BUNDLED {
            let s = load_scenario(name).unwrap();
            for (n, m) in &s.modules {
                assert!(m.satisfies(&s.ctx.algebra), "{name}: {n}");
            }
        }
        assert!(matches!(load_scenario("nope"), Err(Error::UnknownScenario(_))));
    }

    #[test]
    fn a3_has_twelve_pairwise_distinct_indecomposables() {
        let s = load_scenario("A3-w0").unwrap();
        let q = s.ctx.quiver();
        let names = ["V1", "V2", "V3", "V4", "V5", "V6", "W1", "W2", "W4", "L1", "L2", "L4"];
        for (i, a) in names.iter().enumerate() {
            let x = s.module(a).unwrap();
            assert!(hom::is_indecomposable(q, x), "{a}");
            assert!(s.ctx.contains(x));
            for b in &names[i + 1..] {
                assert!(!hom::isomorphic(q, x, s.module(b).unwrap()), "{a} vs {b}");
            }
        }
    }

    #[test]
    fn json_scenario_errors_are_located() {
        let err = scenario_from_json("f.json", "{\"cartan\": {\"vertices\": 2,").unwrap_err();
        assert!(matches!(err, Error::ParseError(ref m) if m.contains("line 1")));
        let ok = r#"{"cartan": {"vertices": 2, "edges": [[1, 2, 1]]}, "word": [1, 2, 1], "modules": {"S": {"dims": [1, 0]}}}"#;
        let s = scenario_from_json("f.json", ok).unwrap();
        assert_eq!(s.module("S").unwrap().dims, vec![1, 0]);
    }
}
