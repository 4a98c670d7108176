//! JSON input files.
//!
//! Exact scalars are strings (`"3/4"`, `"2"`); bare JSON integers are accepted too.

use std::path::Path;

use serde_json::{json, Value};
use snt_core::orbits::{OrbitSetting, OrthSpace};
use snt_core::{Field, Matrix, SntModule};

use crate::report::Failure;

pub fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: malformed JSON: {e}", path.display())))
}

fn field_of(v: &Value) -> Result<Field, Failure> {
    let s = v.get("field").and_then(Value::as_str).ok_or_else(|| Failure::input("missing \"field\""))?;
    Ok(s.parse()?)
}

/// A module file: `{field, dim?, t_action, gram, planted_partition?}`.
pub struct ModuleFile {
    pub module: SntModule,
    pub planted: Option<Vec<usize>>,
}

pub fn parse_partition(v: &Value) -> Result<Vec<usize>, Failure> {
    v.as_array()
        .ok_or_else(|| Failure::input("partition must be an array"))?
        .iter()
        .map(|x| x.as_u64().filter(|&k| k > 0).map(|k| k as usize).ok_or_else(|| Failure::input("partition parts must be positive integers")))
        .collect()
}

pub fn module_file(v: &Value) -> Result<ModuleFile, Failure> {
    let module = SntModule::from_json(v)?;
    let planted = v.get("planted_partition").map(parse_partition).transpose()?;
    Ok(ModuleFile { module, planted })
}

/// An orbit file: `{field, partition | module, v_gram, x}` with the standard flag of the module.
pub struct OrbitFile {
    pub setting: OrbitSetting,
    pub x: Matrix,
    /// Canonical description of the ambient data, for comparing two files.
    pub ambient: Value,
}

pub fn orbit_file(v: &Value) -> Result<OrbitFile, Failure> {
    let field = field_of(v)?;
    let module = match (v.get("module"), v.get("partition")) {
        (Some(m), _) => SntModule::from_json(m)?,
        (None, Some(p)) => SntModule::standard(field, &parse_partition(p)?)?,
        (None, None) => return Err(Failure::input("orbit file needs \"module\" or \"partition\"")),
    };
    if module.field() != field {
        return Err(Failure::input(format!("module is over {}, file says {field}", module.field())));
    }
    let v_gram = Matrix::from_json(field, v.get("v_gram").ok_or_else(|| Failure::input("missing \"v_gram\""))?)?;
    let x = Matrix::from_json(field, v.get("x").ok_or_else(|| Failure::input("missing \"x\""))?)?;
    let ambient = json!({ "module": module.to_json(), "v_gram": &v_gram });
    let setting = OrbitSetting::standard(module, OrthSpace::new(v_gram)?)?;
    setting.check_shape(&x)?;
    Ok(OrbitFile { setting, x, ambient })
}

pub fn orbit_json(field: Field, partition: &[usize], v_gram: &Matrix, x: &Matrix) -> Value {
    json!({ "field": field, "partition": partition, "v_gram": v_gram, "x": x })
}

/// An integral lattice file: `{name, gram: [[int]], aut_order?}`.
pub fn lattice_file(path: &Path) -> Result<snt_core::analytic::IntegralLattice, Failure> {
    let v = read_json(path)?;
    let name = v.get("name").and_then(Value::as_str).map(str::to_string).unwrap_or_else(|| path.display().to_string());
    let gram: Vec<Vec<i64>> = serde_json::from_value(v.get("gram").cloned().ok_or_else(|| Failure::input("missing \"gram\""))?)
        .map_err(|e| Failure::input(format!("gram must be an integer matrix: {e}")))?;
    let aut = match v.get("aut_order") {
        None | Some(Value::Null) => None,
        Some(Value::String(s)) => Some(s.parse::<u128>().map_err(|e| Failure::input(format!("aut_order: {e}")))?),
        Some(x) => Some(x.as_u64().ok_or_else(|| Failure::input("aut_order must be a positive integer"))? as u128),
    };
    Ok(snt_core::analytic::IntegralLattice::new(name, gram, aut)?)
}

pub fn parse_list(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(',').map(|p| p.trim().parse::<i64>().map_err(|e| Failure::input(format!("{p:?}: {e}")))).collect()
}

pub fn parse_complex(s: &str) -> Result<num_complex::Complex64, Failure> {
    s.trim().replace(' ', "").parse().map_err(|_| Failure::input(format!("{s:?} is not a complex number")))
}
