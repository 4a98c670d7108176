//! Side-by-side orbit tables from the invariant classification and from brute force.

use std::collections::BTreeMap;

use serde::Serialize;

use super::brute::brute_force_orbits;
use super::invariant::{orbit_invariant, OrbitInvariant};
use super::isometry::transport;
use super::setting::OrbitSetting;
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusRow {
    pub w_type: Vec<usize>,
    pub w_basis: Vec<Vec<String>>,
    pub i_coords: Vec<String>,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Census {
    pub group_order: usize,
    pub element_count: usize,
    pub brute_orbits: usize,
    pub invariant_classes: usize,
    /// Every brute-force orbit carries a single invariant.
    pub invariant_constant: bool,
    /// Invariant classes and brute-force orbits coincide.
    pub partitions_equal: bool,
    /// Elements for which `transport` from the orbit representative was verified.
    pub transports_checked: usize,
    pub rows: Vec<CensusRow>,
}

fn row_of(inv: &OrbitInvariant, size: usize) -> CensusRow {
    CensusRow {
        w_type: inv.types.clone(),
        w_basis: inv.w.basis_vectors().iter().map(|v| v.iter().map(|x| x.to_string()).collect()).collect(),
        i_coords: inv.coordinate_strings(),
        orbit_size: size,
    }
}

/// Classifies every element both ways; with `check_transport`, also runs `transport` from each
/// orbit's first element to every other member.
pub fn census(setting: &OrbitSetting, check_transport: bool) -> Result<Census> {
    let brute = brute_force_orbits(setting)?;
    let mut classes: BTreeMap<String, (OrbitInvariant, usize)> = BTreeMap::new();
    let mut invariant_constant = true;
    let mut transports_checked = 0;
    let mut rows = Vec::with_capacity(brute.orbits.len());
    for orbit in &brute.orbits {
        let rep = &orbit[0];
        let inv = orbit_invariant(setting, rep)?;
        for y in orbit {
            let iy = orbit_invariant(setting, y)?;
            if iy != inv {
                invariant_constant = false;
            }
            let key = serde_json::to_string(&iy).expect("serializable");
            classes.entry(key).or_insert((iy, 0)).1 += 1;
            if check_transport && y != rep {
                let g = transport(setting, rep, y)?.is_some_and(|g| setting.act(rep, &g) == *y);
                if g {
                    transports_checked += 1;
                }
            }
        }
        rows.push(row_of(&inv, orbit.len()));
    }
    let partitions_equal = invariant_constant && classes.len() == brute.orbits.len();
    Ok(Census {
        group_order: brute.group_order,
        element_count: brute.element_count(),
        brute_orbits: brute.orbits.len(),
        invariant_classes: classes.len(),
        invariant_constant,
        partitions_equal,
        transports_checked,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbits::setting::OrthSpace;
    use crate::ring::Field;
    use crate::snt::SntModule;

    #[test]
    fn ternary_f3() {
        let f = Field::prime(3).unwrap();
        let s = OrbitSetting::standard(SntModule::standard_plane(f, 1).unwrap(), OrthSpace::diagonal(f, &[1, 1, 1]).unwrap()).unwrap();
        let c = census(&s, true).unwrap();
        assert_eq!(c.group_order, 48);
        assert!(c.partitions_equal);
        assert_eq!(c.brute_orbits, 4);
        assert_eq!(c.transports_checked, c.element_count - c.brute_orbits);
    }
}
