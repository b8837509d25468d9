//! Immutable tables of every named object: groups, orbit seeds, surfaces,
//! curves, linear systems and maps.
//!
//! Objects are addressed by a [`CatalogKey`], written `kind:name` in text
//! (for example `group:G_48_50` or `curve:L6primeprime`).

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::exactmath::MathError;
use crate::projgroup::{group_closure, GroupError, MatrixGroup, ProjMap, DEFAULT_CAP};

pub mod curves;
pub mod groups;
pub mod maps;
pub mod points;
mod selfcheck;
pub mod surfaces;
pub mod systems;

pub use curves::{CurveCatalogEntry, CurveComponents, IdealComponent};
pub use maps::{MapEntry, Space};
pub use points::PointEntry;
pub use selfcheck::{catalog_selfcheck, check_group, SelfcheckItem, SelfcheckReport};
pub use surfaces::SurfaceEntry;
pub use systems::SystemEntry;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    #[error("group {name} closed to order {got}, expected {expected}")]
    WrongOrder { name: String, expected: usize, got: usize },
    #[error(transparent)]
    Math(#[from] MathError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalogKind {
    Group,
    Point,
    Surface,
    Curve,
    System,
    Map,
}

impl CatalogKind {
    pub const ALL: [CatalogKind; 6] = [
        CatalogKind::Group,
        CatalogKind::Point,
        CatalogKind::Surface,
        CatalogKind::Curve,
        CatalogKind::System,
        CatalogKind::Map,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CatalogKind::Group => "group",
            CatalogKind::Point => "point",
            CatalogKind::Surface => "surface",
            CatalogKind::Curve => "curve",
            CatalogKind::System => "system",
            CatalogKind::Map => "map",
        }
    }

    fn names(&self) -> Vec<&'static str> {
        match self {
            CatalogKind::Group => groups::GROUP_ORDERS.iter().map(|(n, _)| *n).collect(),
            CatalogKind::Point => points::POINT_NAMES.to_vec(),
            CatalogKind::Surface => surfaces::SURFACE_NAMES.to_vec(),
            CatalogKind::Curve => curves::CURVE_NAMES.to_vec(),
            CatalogKind::System => systems::SYSTEM_NAMES.to_vec(),
            CatalogKind::Map => maps::MAP_NAMES.to_vec(),
        }
    }
}

impl FromStr for CatalogKind {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CatalogKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| CatalogError::UnknownKey(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CatalogKey {
    pub kind: CatalogKind,
    pub name: String,
}

impl CatalogKey {
    pub fn new(kind: CatalogKind, name: &str) -> CatalogKey {
        CatalogKey { kind, name: name.to_string() }
    }

    /// Every key of the catalog, grouped by kind.
    pub fn all() -> Vec<CatalogKey> {
        CatalogKind::ALL
            .iter()
            .flat_map(|k| k.names().into_iter().map(move |n| CatalogKey::new(*k, n)))
            .collect()
    }

    pub fn of_kind(kind: CatalogKind) -> Vec<CatalogKey> {
        kind.names().into_iter().map(|n| CatalogKey::new(kind, n)).collect()
    }
}

impl fmt::Display for CatalogKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.kind.as_str(), self.name)
    }
}

impl FromStr for CatalogKey {
    type Err = CatalogError;

    /// Accepts `kind:name`, or a bare name when it is unambiguous.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some((k, n)) = s.split_once(':') {
            let key = CatalogKey::new(k.parse()?, n);
            return if key.kind.names().contains(&n) { Ok(key) } else { Err(CatalogError::UnknownKey(s.into())) };
        }
        let hits: Vec<CatalogKey> = CatalogKey::all().into_iter().filter(|k| k.name == s).collect();
        match hits.len() {
            1 => Ok(hits.into_iter().next().unwrap()),
            _ => Err(CatalogError::UnknownKey(s.to_string())),
        }
    }
}

/// A closed catalog group.
#[derive(Clone, Debug)]
pub struct GroupEntry {
    pub name: String,
    pub expected_order: usize,
    pub group: Arc<MatrixGroup>,
}

impl Serialize for GroupEntry {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GroupEntry", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("order", &self.group.order())?;
        st.serialize_field("generators", self.group.generators())?;
        st.end()
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", content = "object", rename_all = "lowercase")]
pub enum CatalogObject {
    Group(GroupEntry),
    Point(PointEntry),
    Surface(SurfaceEntry),
    Curve(CurveCatalogEntry),
    System(SystemEntry),
    Map(MapEntry),
}

pub fn expected_order(name: &str) -> Option<usize> {
    groups::GROUP_ORDERS.iter().find(|(n, _)| *n == name).map(|(_, o)| *o)
}

fn group_cache() -> &'static Mutex<HashMap<String, Arc<MatrixGroup>>> {
    static CACHE: OnceLock<Mutex<HashMap<String, Arc<MatrixGroup>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Closes a list of generators and checks the order.
pub fn close_group(name: &str, gens: &[ProjMap], expected: usize) -> Result<MatrixGroup, CatalogError> {
    let g = group_closure(gens, DEFAULT_CAP.max(expected))?.with_name(name);
    if g.order() != expected {
        return Err(CatalogError::WrongOrder { name: name.to_string(), expected, got: g.order() });
    }
    Ok(g)
}

/// A catalog group, closed and order-checked once per process.
pub fn group(name: &str) -> Result<Arc<MatrixGroup>, CatalogError> {
    if let Some(g) = group_cache().lock().expect("cache lock").get(name) {
        return Ok(g.clone());
    }
    let unknown = || CatalogError::UnknownKey(format!("group:{name}"));
    let gens = groups::generators(name).ok_or_else(unknown)?;
    let g = Arc::new(close_group(name, &gens, expected_order(name).ok_or_else(unknown)?)?);
    group_cache().lock().expect("cache lock").insert(name.to_string(), g.clone());
    Ok(g)
}

pub fn load(key: &CatalogKey) -> Result<CatalogObject, CatalogError> {
    let unknown = || CatalogError::UnknownKey(key.to_string());
    Ok(match key.kind {
        CatalogKind::Group => CatalogObject::Group(GroupEntry {
            name: key.name.clone(),
            expected_order: expected_order(&key.name).ok_or_else(unknown)?,
            group: group(&key.name)?,
        }),
        CatalogKind::Point => CatalogObject::Point(points::entry(&key.name).ok_or_else(unknown)?),
        CatalogKind::Surface => CatalogObject::Surface(surfaces::entry(&key.name).ok_or_else(unknown)?),
        CatalogKind::Curve => CatalogObject::Curve(curves::entry(&key.name)?),
        CatalogKind::System => CatalogObject::System(systems::entry(&key.name).ok_or_else(unknown)?),
        CatalogKind::Map => CatalogObject::Map(maps::entry(&key.name).ok_or_else(unknown)?),
    })
}

/// Shorthand for loading a surface form by name.
pub fn surface(name: &str) -> Result<crate::exactmath::Form, CatalogError> {
    surfaces::surface(name).ok_or_else(|| CatalogError::UnknownKey(format!("surface:{name}")))
}

/// Shorthand for loading a point seed by name.
pub fn point(name: &str) -> Result<crate::exactmath::ProjPoint, CatalogError> {
    points::seed(name).ok_or_else(|| CatalogError::UnknownKey(format!("point:{name}")))
}

/// Shorthand for loading a curve by name.
pub fn curve(name: &str) -> Result<CurveCatalogEntry, CatalogError> {
    curves::entry(name)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_round_trip() {
        for key in CatalogKey::all() {
            let parsed: CatalogKey = key.to_string().parse().unwrap();
            assert_eq!(parsed, key);
        }
        assert!("group:G_1_1".parse::<CatalogKey>().is_err());
        assert_eq!("Q1".parse::<CatalogKey>().unwrap().kind, CatalogKind::Surface);
    }

    #[test]
    fn keys_are_unique() {
        let all = CatalogKey::all();
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
    }

    #[test]
    fn load_examples() {
        let CatalogObject::Surface(q1) = load(&"surface:Q1".parse().unwrap()).unwrap() else { panic!() };
        assert_eq!(q1.form.to_string(), "x0^2 + x1^2 + x2^2 + x3^2");
        let CatalogObject::Map(psi) = load(&"map:psi".parse().unwrap()).unwrap() else { panic!() };
        assert_eq!(psi.components.len(), 14);
        assert!(load(&CatalogKey::new(CatalogKind::Map, "nope")).is_err());
    }
}
