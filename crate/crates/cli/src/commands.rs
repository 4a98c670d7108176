use std::path::{Path, PathBuf};

use serde_json::{json, Value};
use snt_core::analytic::{verify_identity, IntegralLattice, SiegelPoint};
use snt_core::orbits::{census, orbit_invariant, same_orbit, transport, OrbitSetting, OrthSpace};
use snt_core::snt::decompose;
use snt_core::{Field, Matrix, SntModule};

use crate::input::{lattice_file, module_file, orbit_file, parse_complex, parse_list, read_json};
use crate::report::{Failure, RunReport};

pub fn run_decompose(report: &mut RunReport, path: &Path) -> Result<(), Failure> {
    let file = module_file(&read_json(path)?)?;
    let m = &file.module;
    let dec = decompose(m)?;
    let q = &dec.from_standard;
    let std = dec.standard_module();
    report.check("iso_transports_gram", q.mul(m.gram()).mul(&q.transpose()) == *std.gram(), Value::Null);
    report.check("iso_transports_t", std.t_action().mul(q) == q.mul(m.t_action()), Value::Null);
    report.check("iso_inverse", q.mul(&dec.to_standard).is_identity(), Value::Null);
    if let Some(planted) = &file.planted {
        report.check("partition_matches_metadata", planted == &dec.partition, json!({ "planted": planted, "found": dec.partition }));
    }
    report.output = json!({
        "field": m.field(),
        "dim": m.dim(),
        "partition": dec.partition,
        "from_standard": dec.from_standard,
        "to_standard": dec.to_standard,
    });
    Ok(())
}

fn invariant_json(setting: &OrbitSetting, x: &Matrix) -> Result<Value, Failure> {
    let inv = orbit_invariant(setting, x)?;
    Ok(json!({
        "w_basis": inv.w.basis_vectors(),
        "w_type": inv.types,
        "quasi_basis": inv.quasi_basis,
        "i_coordinates": inv.coordinate_strings(),
    }))
}

pub fn run_orbit(report: &mut RunReport, x_path: &Path, y_path: Option<&Path>) -> Result<(), Failure> {
    let xf = orbit_file(&read_json(x_path)?)?;
    let s = &xf.setting;
    let mut out = json!({ "x_invariant": invariant_json(s, &xf.x)? });
    if let Some(yp) = y_path {
        let yf = orbit_file(&read_json(yp)?)?;
        if yf.ambient != xf.ambient {
            return Err(Failure::input("x and y live in different ambient spaces (module or V differ)"));
        }
        let same = same_orbit(s, &xf.x, &yf.x)?;
        out["y_invariant"] = invariant_json(s, &yf.x)?;
        out["same_orbit"] = json!(same);
        let g = transport(s, &xf.x, &yf.x)?;
        report.check("transport_exists_iff_same_orbit", g.is_some() == same, Value::Null);
        if let Some(g) = g {
            let coeffs: Vec<Matrix> = (0..g.precision()).map(|k| g.coefficient(k)).collect();
            report.check("transport_reproduces_y", s.act(&xf.x, &g) == yf.x, Value::Null);
            report.check("transport_is_orthogonal", s.v().is_orthogonal(&g), Value::Null);
            out["transport_coefficients"] = json!(coeffs);
        }
    }
    report.output = out;
    Ok(())
}

pub struct CensusArgs {
    pub q: u64,
    pub m_type: String,
    pub v_diag: Option<String>,
    pub v_hyperbolic: bool,
    pub v_gram: Option<String>,
    pub transport: bool,
}

pub fn run_census(report: &mut RunReport, a: &CensusArgs) -> Result<(), Failure> {
    let f = Field::prime(a.q)?;
    let part: Vec<usize> = parse_list(&a.m_type)?
        .into_iter()
        .map(|k| usize::try_from(k).ok().filter(|&k| k > 0).ok_or_else(|| Failure::input("M-type parts must be positive")))
        .collect::<Result<_, _>>()?;
    let v = match (&a.v_diag, a.v_hyperbolic, &a.v_gram) {
        (Some(d), false, None) => OrthSpace::diagonal(f, &parse_list(d)?)?,
        (None, true, None) => OrthSpace::hyperbolic(f),
        (None, false, Some(g)) => OrthSpace::new(Matrix::from_json(f, &serde_json::from_str(g)?)?)?,
        _ => return Err(Failure::input("give exactly one of --v-diag, --v-hyperbolic, --v-gram")),
    };
    let s = OrbitSetting::standard(SntModule::standard(f, &part)?, v)?;
    let c = census(&s, a.transport)?;
    report.check(
        "partitions_equal",
        c.partitions_equal,
        json!({ "brute_orbits": c.brute_orbits, "invariant_classes": c.invariant_classes }),
    );
    report.check("invariant_constant_on_orbits", c.invariant_constant, Value::Null);
    if a.transport {
        report.check(
            "transport_round_trips",
            c.transports_checked + c.brute_orbits == c.element_count,
            json!({ "checked": c.transports_checked }),
        );
    }
    report.output = json!({
        "precision": s.precision(),
        "group_order": c.group_order,
        "element_count": c.element_count,
        "rows": c.rows,
    });
    Ok(())
}

pub struct VerifyArgs {
    pub lattice: Option<String>,
    pub gram_files: Vec<PathBuf>,
    pub tau11: String,
    pub tau12: String,
    pub tau22: String,
    pub rank: Option<usize>,
    pub tol: f64,
    pub direct: bool,
    pub constant: Option<f64>,
}

pub fn run_verify_sw(report: &mut RunReport, a: &VerifyArgs) -> Result<(), Failure> {
    let mut lattices: Vec<IntegralLattice> = a.gram_files.iter().map(|p| lattice_file(p)).collect::<Result<_, _>>()?;
    match a.lattice.as_deref() {
        Some("e8") | Some("E8") => lattices.push(IntegralLattice::e8()),
        Some(other) => return Err(Failure::input(format!("unknown built-in lattice {other:?} (available: e8)"))),
        None if lattices.is_empty() => lattices.push(IntegralLattice::e8()),
        None => {}
    }
    let rank = a.rank.unwrap_or_else(|| lattices[0].rank());
    let point = SiegelPoint::new(parse_complex(&a.tau11)?, parse_complex(&a.tau12)?, parse_complex(&a.tau22)?)?;
    let r = verify_identity(&lattices, &point, rank, a.tol, a.direct, a.constant)?;
    report.check(
        "identity_within_tolerance",
        r.pass,
        json!({ "rel_diff": r.rel_diff, "tolerance": r.tolerance, "precision_floor": r.precision_floor }),
    );
    if let Some(d) = &r.lhs_direct {
        let gap = (d.value() - r.lhs.value()).norm() / r.lhs.value().norm();
        report.check("lhs_evaluators_agree", gap < 1e-3, json!({ "rel_gap": gap, "tolerance": 1e-3 }));
    }
    report.output = serde_json::to_value(&r)?;
    if r.diagonal_specialization {
        report.output["note"] = json!("tau12 = 0: diagonal specialization");
    }
    Ok(())
}
