//! Consistency checks over the whole catalog.
//!
//! Every group is closed and its order compared with the table, every seed
//! orbit is measured, every surface is tested against its symmetry group and
//! every curve is checked for component count, degree and stability under
//! its ambient group.

use serde::Serialize;

use super::curves::{find_component, push_component};
use super::{close_group, curve, expected_order, group, groups, maps, points, surfaces, systems};
use super::{CatalogError, CatalogKey, CatalogKind};
use crate::exactmath::{hilbert_function, FormSpan};
use crate::projgroup::ProjMap;

#[derive(Clone, Debug, Serialize)]
pub struct SelfcheckItem {
    pub key: String,
    pub check: String,
    pub ok: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SelfcheckReport {
    pub items: Vec<SelfcheckItem>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.ok)
    }

    pub fn failures(&self) -> Vec<&SelfcheckItem> {
        self.items.iter().filter(|i| !i.ok).collect()
    }

    fn push(&mut self, key: &CatalogKey, check: &str, result: Result<(bool, String), CatalogError>) {
        let (ok, detail) = result.unwrap_or_else(|e| (false, e.to_string()));
        self.items.push(SelfcheckItem { key: key.to_string(), check: check.to_string(), ok, detail });
    }
}

/// Closes `gens` and compares the order with `expected`.
///
/// Exposed separately so that a deliberately corrupted generator list can be
/// run through the same check.
pub fn check_group(name: &str, gens: &[ProjMap], expected: usize) -> SelfcheckItem {
    let (ok, detail) = match close_group(name, gens, expected) {
        Ok(g) => (true, format!("order {}", g.order())),
        Err(e) => (false, e.to_string()),
    };
    SelfcheckItem { key: format!("group:{name}"), check: "order".into(), ok, detail }
}

/// Expected number of irreducible components of each catalog curve.
fn expected_components(name: &str) -> usize {
    match name {
        n if n.starts_with("L4") => 4,
        n if n.starts_with("L6") => 6,
        n if n.starts_with("C8_") => 4,
        "C12_infinity" | "Gamma_pencil_lines" => 4,
        "SC8" => 2,
        "SC12" | "SC12prime" => 3,
        "Z12" => 12,
        _ => 1,
    }
}

/// Expected total degree of each catalog curve.
fn expected_degree(name: &str) -> u32 {
    match name {
        n if n.starts_with("L4") => 4,
        n if n.starts_with("L6") => 6,
        n if n.starts_with("C8") || n == "SC8" => 8,
        "C9" | "C9prime" => 9,
        "Gamma_pencil_lines" => 4,
        _ => 12,
    }
}

fn check_surface(name: &str) -> Result<(bool, String), CatalogError> {
    let entry = surfaces::entry(name).ok_or_else(|| CatalogError::UnknownKey(name.into()))?;
    let g = group(entry.invariant_under)?;
    for h in g.generators() {
        let image = h.pull_back(&entry.form)?;
        if image.ratio_to(&entry.form).is_none() {
            return Ok((false, format!("not preserved by a generator of {}", entry.invariant_under)));
        }
    }
    Ok((true, format!("preserved by {}", entry.invariant_under)))
}

fn check_curve(name: &str, report: &mut SelfcheckReport) {
    let key = CatalogKey::new(CatalogKind::Curve, name);
    let entry = match curve(name) {
        Ok(e) => e,
        Err(e) => {
            report.push(&key, "load", Err(e));
            return;
        }
    };
    let want = expected_components(name);
    report.push(
        &key,
        "components",
        Ok((entry.component_count == want, format!("{} components, expected {want}", entry.component_count))),
    );
    if name != "Z12" {
        let want = expected_degree(name);
        report.push(&key, "degree", Ok((entry.degree == want, format!("degree {}, expected {want}", entry.degree))));
    }
    if let Some(comps) = entry.ideals() {
        // The Hilbert function of a curve of degree d grows by d per step
        // once it agrees with the Hilbert polynomial.
        let res = comps.iter().try_fold((true, String::from("Hilbert slopes match")), |acc, c| {
            if !acc.0 {
                return Ok(acc);
            }
            let maxdeg = c.generators.iter().map(|f| f.degree()).max().unwrap_or(1);
            let t = 2 * maxdeg + 1;
            let slope = hilbert_function(&c.generators, t + 1)? as i64 - hilbert_function(&c.generators, t)? as i64;
            Ok::<_, CatalogError>(if slope == c.degree as i64 {
                acc
            } else {
                (false, format!("component of degree {} has Hilbert slope {slope}", c.degree))
            })
        });
        report.push(&key, "hilbert", res);
    }
    if entry.ambient_group.is_empty() || name == "Z12" {
        return;
    }
    let stable = (|| -> Result<(bool, String), CatalogError> {
        let g = group(&entry.ambient_group)?;
        for h in g.generators() {
            if let Some(lines) = entry.lines() {
                for l in lines {
                    if !lines.contains(&h.apply_line(l)?) {
                        return Ok((false, "a line leaves the set".into()));
                    }
                }
            }
            if let Some(comps) = entry.ideals() {
                for c in comps {
                    if find_component(comps, &push_component(h, c)?)?.is_none() {
                        return Ok((false, "a component leaves the set".into()));
                    }
                }
            }
        }
        Ok((true, format!("stable under {}", entry.ambient_group)))
    })();
    report.push(&key, "stable", stable);
}

/// Runs the checks for every catalog entry, or only those of `kind`.
pub fn catalog_selfcheck(kind: Option<CatalogKind>) -> SelfcheckReport {
    let mut report = SelfcheckReport::default();
    let wants = |k: CatalogKind| kind.is_none_or(|x| x == k);

    if wants(CatalogKind::Group) {
        for (name, order) in groups::GROUP_ORDERS {
            let gens = groups::generators(name).unwrap_or_default();
            report.items.push(check_group(name, &gens, *order));
        }
    }
    if wants(CatalogKind::Point) {
        for name in points::POINT_NAMES {
            let key = CatalogKey::new(CatalogKind::Point, name);
            let res = (|| -> Result<(bool, String), CatalogError> {
                let e = points::entry(name).ok_or_else(|| CatalogError::UnknownKey(name.into()))?;
                let orbit = group(e.group)?.orbit(&e.seed)?;
                let order = expected_order(e.group).unwrap_or(0);
                let ok = orbit.length == e.orbit_length && orbit.length * orbit.stabilizer_order == order;
                Ok((ok, format!("orbit {} (expected {}), stabilizer {}", orbit.length, e.orbit_length, orbit.stabilizer_order)))
            })();
            report.push(&key, "orbit", res);
        }
    }
    if wants(CatalogKind::Surface) {
        for name in surfaces::SURFACE_NAMES {
            report.push(&CatalogKey::new(CatalogKind::Surface, name), "invariance", check_surface(name));
        }
    }
    if wants(CatalogKind::Curve) {
        for name in super::curves::CURVE_NAMES {
            check_curve(name, &mut report);
        }
    }
    if wants(CatalogKind::System) {
        for name in systems::SYSTEM_NAMES {
            let key = CatalogKey::new(CatalogKind::System, name);
            let res = (|| -> Result<(bool, String), CatalogError> {
                let e = systems::entry(name).ok_or_else(|| CatalogError::UnknownKey(name.into()))?;
                let span = FormSpan::from_forms(&e.basis)?;
                let ok = span.dim() == e.basis.len() && e.basis.iter().all(|f| f.degree() == e.degree);
                Ok((ok, format!("{} independent forms of degree {}", span.dim(), e.degree)))
            })();
            report.push(&key, "basis", res);
        }
    }
    if wants(CatalogKind::Map) {
        for name in maps::MAP_NAMES {
            let key = CatalogKey::new(CatalogKind::Map, name);
            let res = maps::entry(name).ok_or_else(|| CatalogError::UnknownKey(name.into())).map(|e| {
                let d = e.components[0].degree();
                let ok = e.components.iter().all(|c| c.degree() == d && !c.is_zero());
                (ok, format!("{} components of degree {d}", e.components.len()))
            });
            report.push(&key, "components", res);
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corrupted_generator_is_caught() {
        let mut gens = groups::generators("G_48_50").unwrap();
        gens.push(groups::mat_r());
        let item = check_group("G_48_50", &gens, 48);
        assert!(!item.ok, "{}", item.detail);
        let clean = check_group("G_48_50", &groups::generators("G_48_50").unwrap(), 48);
        assert!(clean.ok, "{}", clean.detail);
    }

    #[test]
    fn surfaces_pass() {
        let r = catalog_selfcheck(Some(CatalogKind::Surface));
        assert!(r.passed(), "{:#?}", r.failures());
    }

    #[test]
    fn points_pass() {
        let r = catalog_selfcheck(Some(CatalogKind::Point));
        assert!(r.passed(), "{:#?}", r.failures());
    }
}

#[cfg(test)]
mod full {
    use super::*;

    #[test]
    fn whole_catalog_passes() {
        let r = catalog_selfcheck(None);
        for i in &r.items {
            eprintln!("{} {} {} {}", i.ok, i.key, i.check, i.detail);
        }
        assert!(r.passed(), "{:#?}", r.failures());
    }
}
