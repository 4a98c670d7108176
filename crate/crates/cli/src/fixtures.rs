//! Sample input files for every subcommand.

use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use snt_core::analytic::{IntegralLattice, E8_AUT_ORDER};
use snt_core::orbits::{random_orthogonal, OrbitSetting, OrthSpace};
use snt_core::spgroup::random_symplectic;
use snt_core::{Field, Matrix, SntModule};

use crate::input::orbit_json;
use crate::report::{Failure, RunReport};

fn write(report: &mut RunReport, out: &Path, rel: &str, value: &Value) -> Result<(), Failure> {
    let path = out.join(rel);
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)?;
    }
    std::fs::write(&path, serde_json::to_string_pretty(value)? + "\n")?;
    if let Value::Array(files) = &mut report.output["files"] {
        files.push(json!(rel));
    }
    Ok(())
}

fn random_matrix(f: Field, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let p = match f {
        Field::Prime(p) => p as i64,
        Field::Rational => 5,
    };
    Matrix::from_fn(f, rows, cols, |_, _| f.from_i64(rng.gen_range(0..p)))
}

pub fn generate(report: &mut RunReport, out: &Path, seed: u64) -> Result<(), Failure> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    report.output = json!({ "out": out, "files": [] });

    let h21 = SntModule::standard(Field::Rational, &[2, 1])?;
    write(report, out, "modules/h2_h1.json", &h21.to_json())?;

    let f5 = Field::prime(5)?;
    let planted = [3, 1];
    let std = SntModule::standard(f5, &planted)?;
    let p = loop {
        let p = random_symplectic(std.gram(), 2 * std.dim(), &mut rng);
        if snt_core::ring::linalg::rank(&p) == std.dim() {
            break p;
        }
    };
    let mut bc = std.base_change(&p)?.to_json();
    bc["planted_partition"] = json!(planted);
    write(report, out, "modules/base_changed.json", &bc)?;

    let mut bad = h21.to_json();
    bad["gram"][0][0] = json!("1");
    write(report, out, "modules/corrupted_gram.json", &bad)?;

    let f3 = Field::prime(3)?;
    let setting = OrbitSetting::standard(SntModule::standard(f3, &[2])?, OrthSpace::hyperbolic(f3))?;
    let v_gram = setting.v().gram().clone();
    write(report, out, "orbits/zero_x.json", &orbit_json(f3, &[2], &v_gram, &setting.zero()))?;
    let x = random_matrix(f3, setting.dim_minus(), setting.dim_v(), &mut rng);
    let g = random_orthogonal(setting.v(), setting.precision(), &mut rng);
    let y = setting.act(&x, &g);
    write(report, out, "orbits/pair_x.json", &orbit_json(f3, &[2], &v_gram, &x))?;
    write(report, out, "orbits/pair_y.json", &orbit_json(f3, &[2], &v_gram, &y))?;
    let other = OrthSpace::diagonal(f3, &[1, 1, 1])?;
    let z = random_matrix(f3, setting.dim_minus(), other.dim(), &mut rng);
    write(report, out, "orbits/mismatched_y.json", &orbit_json(f3, &[2], other.gram(), &z))?;

    let e8 = IntegralLattice::e8();
    write(report, out, "lattices/e8.json", &json!({ "name": "E8", "gram": e8.gram(), "aut_order": E8_AUT_ORDER.to_string() }))?;
    Ok(())
}
