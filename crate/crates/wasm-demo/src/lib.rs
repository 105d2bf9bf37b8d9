//! Browser bindings. Every export takes plain strings and returns a JSON string, so the
//! page needs no glue beyond `JSON.parse`.

use serde_json::{json, Value};
use torsorlab::engine::Engine;
use torsorlab::subset::grassmannian;
use torsorlab::suites::CORPUS;
use torsorlab::symmetry::verify_sign_table;
use torsorlab::torsor::{carrier_u_ab, group_from_basepoint};
use torsorlab::{FiniteGroup, Subset};
use wasm_bindgen::prelude::*;

type Out = Result<Value, String>;

fn group(name: &str) -> Result<FiniteGroup, String> {
    FiniteGroup::builtin(name).map_err(|e| e.to_string())
}

fn subset(g: &FiniteGroup, literal: &str) -> Result<Subset, String> {
    g.parse_subset(literal.trim()).map_err(|e| format!("{literal:?}: {e}"))
}

fn strings(v: &[Subset]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn group_info_json(name: &str) -> Out {
    let g = group(name)?;
    let gras = grassmannian(&g).map_err(|e| e.to_string())?;
    Ok(json!({
        "name": g.name(),
        "order": g.order(),
        "abelian": g.is_abelian(),
        "subgroups": strings(&gras),
    }))
}

pub fn gamma_json(name: &str, x: &str, a: &str, y: &str, b: &str, z: &str, opposite: bool) -> Out {
    let g = group(name)?;
    let [x, a, y, b, z] = [x, a, y, b, z].map(|s| subset(&g, s));
    let (x, a, y, b, z) = (x?, a?, y?, b?, z?);
    let e = Engine::new(&g);
    let r = if opposite { e.gamma_check(&x, &a, &y, &b, &z) } else { e.gamma(&x, &a, &y, &b, &z) };
    Ok(json!({ "result": r.to_string(), "size": r.len() }))
}

pub fn sign_table_json(name: &str) -> Out {
    let g = group(name)?;
    let rows = verify_sign_table(&g).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "permutation": r.s4,
                "letters": r.letters,
                "printed": r.printed.to_string(),
                "checked": r.expected.to_string(),
                "printed_holds": r.printed_holds(),
                "pass": r.passed(),
                "derived": r.derived.iter().map(|s| s.to_string()).collect::<Vec<_>>(),
            })
        })
        .collect();
    Ok(json!({ "group": g.name(), "rows": rows }))
}

pub fn carrier_json(name: &str, a: &str, b: &str) -> Out {
    let g = group(name)?;
    let (a, b) = (subset(&g, a)?, subset(&g, b)?);
    let u = carrier_u_ab(Engine::new(&g), &a, &b).map_err(|e| e.to_string())?;
    let mut out = json!({ "elements": strings(&u.elements), "size": u.len() });
    if let Some(y) = u.elements.first() {
        let based = group_from_basepoint(&u, y).map_err(|e| e.to_string())?;
        let sym = FiniteGroup::symmetric(a.len()).map_err(|e| e.to_string())?;
        out["basepoint"] = json!(y.to_string());
        out["based_order"] = json!(based.order());
        out["based_abelian"] = json!(based.is_abelian());
        out["symmetric"] = json!(based.is_isomorphic(&sym));
    }
    Ok(out)
}

fn export(r: Out) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn groups() -> String {
    json!(CORPUS).to_string()
}

#[wasm_bindgen]
pub fn group_info(name: &str) -> Result<String, JsError> {
    export(group_info_json(name))
}

#[wasm_bindgen]
pub fn gamma(name: &str, x: &str, a: &str, y: &str, b: &str, z: &str, opposite: bool) -> Result<String, JsError> {
    export(gamma_json(name, x, a, y, b, z, opposite))
}

#[wasm_bindgen]
pub fn sign_table(name: &str) -> Result<String, JsError> {
    export(sign_table_json(name))
}

#[wasm_bindgen]
pub fn carrier(name: &str, a: &str, b: &str) -> Result<String, JsError> {
    export(carrier_json(name, a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_on_z6() {
        let v = gamma_json("z6", "0,3", "0,2,4", "0,3", "0,2,4", "0,3", false).unwrap();
        assert_eq!(v["result"], "0,3");
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(gamma_json("z6", "0,9", "0", "0", "0", "0", false).is_err());
        assert!(group_info_json("a4").is_err());
    }

    #[test]
    fn klein_carrier() {
        let v = carrier_json("k4", "0,1", "0,2").unwrap();
        assert_eq!(v["size"], 2);
        assert_eq!(v["symmetric"], true);
    }

    #[test]
    fn empty_carrier_has_no_basepoint() {
        let v = carrier_json("z4", "0", "0,2").unwrap();
        assert_eq!(v["size"], 0);
        assert!(v.get("basepoint").is_none());
    }

    #[test]
    fn sign_table_rows() {
        let v = sign_table_json("s3").unwrap();
        let rows = v["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 24);
        assert!(rows.iter().all(|r| r["pass"] == true));
        assert_eq!(rows.iter().filter(|r| r["printed_holds"] == false).count(), 1);
        assert_eq!(group_info_json("s3").unwrap()["subgroups"].as_array().unwrap().len(), 6);
    }
}
