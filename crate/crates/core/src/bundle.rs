//! Bundle files: named groups, homomorphisms, actions, pre-crossed modules
//! and quadratic module candidates in a versioned JSON document.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::action::GroupAction;
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupRef};
use crate::hom::GroupHom;
use crate::nil2::PreCrossedModule;
use crate::quadratic::QuadraticCandidate;

pub const BUNDLE_VERSION: &str = "quadmod-bundle/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawObject {
    Group {
        order: usize,
        table: Vec<Vec<usize>>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        labels: Option<Vec<String>>,
    },
    Hom {
        source: String,
        target: String,
        map: Vec<usize>,
    },
    /// `table[m][q] = m^q`
    Action {
        actor: String,
        carrier: String,
        table: Vec<Vec<usize>>,
    },
    Precrossed {
        boundary: String,
        action: String,
    },
    /// `omega[x][y] = ω({x} ⊗ {y})`
    Quadmod {
        d1: String,
        d2: String,
        act1: String,
        act2: String,
        omega: Vec<Vec<usize>>,
    },
}

impl RawObject {
    fn kind(&self) -> &'static str {
        match self {
            RawObject::Group { .. } => "group",
            RawObject::Hom { .. } => "hom",
            RawObject::Action { .. } => "action",
            RawObject::Precrossed { .. } => "precrossed",
            RawObject::Quadmod { .. } => "quadmod",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBundle {
    version: String,
    #[serde(default)]
    metadata: BTreeMap<String, String>,
    #[serde(default)]
    objects: BTreeMap<String, RawObject>,
}

/// A resolved object.
#[derive(Clone, Debug)]
pub enum Object {
    Group(GroupRef),
    Hom(GroupHom),
    Action(GroupAction),
    PreCrossed(PreCrossedModule),
    Quadratic(QuadraticCandidate),
}

/// A fully resolved and type-checked bundle.
#[derive(Clone, Debug, Default)]
pub struct Bundle {
    metadata: BTreeMap<String, String>,
    raw: BTreeMap<String, RawObject>,
    objects: BTreeMap<String, Object>,
}

impl Bundle {
    pub fn new() -> Bundle {
        Bundle::default()
    }

    pub fn parse(text: &str) -> Result<Bundle> {
        let raw: RawBundle = serde_json::from_str(text).map_err(|e| Error::SyntaxError {
            line: e.line(),
            column: e.column(),
            message: strip_position(&e.to_string()),
        })?;
        if raw.version != BUNDLE_VERSION {
            return Err(Error::UnsupportedVersion(raw.version));
        }
        let mut bundle = Bundle {
            metadata: raw.metadata,
            raw: raw.objects,
            objects: BTreeMap::new(),
        };
        bundle.resolve()?;
        Ok(bundle)
    }

    fn resolve(&mut self) -> Result<()> {
        let raw = self.raw.clone();
        for stage in ["group", "hom", "action", "precrossed", "quadmod"] {
            for (name, obj) in raw.iter().filter(|(_, o)| o.kind() == stage) {
                let resolved = self.resolve_one(name, obj)?;
                self.objects.insert(name.clone(), resolved);
            }
        }
        Ok(())
    }

    fn resolve_one(&self, name: &str, obj: &RawObject) -> Result<Object> {
        let ctx = |e: Error| match e {
            Error::UnresolvedReference(_) | Error::TypeMismatch(_) => e,
            other => Error::TypeMismatch(format!("object {name:?}: {other}")),
        };
        Ok(match obj {
            RawObject::Group { order, table, labels } => {
                if table.len() != *order {
                    return Err(Error::TypeMismatch(format!(
                        "object {name:?}: order {order} but {} table rows",
                        table.len()
                    )));
                }
                let mut g = FiniteGroup::from_table(table).map_err(ctx)?;
                if let Some(l) = labels {
                    g = g.with_labels(l.clone()).map_err(ctx)?;
                }
                Object::Group(Arc::new(g))
            }
            RawObject::Hom { source, target, map } => {
                let h = GroupHom::new(self.group(source)?, self.group(target)?, map.clone()).map_err(ctx)?;
                Object::Hom(h)
            }
            RawObject::Action { actor, carrier, table } => {
                let a = GroupAction::new(self.group(actor)?, self.group(carrier)?, table).map_err(ctx)?;
                Object::Action(a)
            }
            RawObject::Precrossed { boundary, action } => {
                let p = PreCrossedModule::new(self.hom(boundary)?, self.action(action)?).map_err(ctx)?;
                Object::PreCrossed(p)
            }
            RawObject::Quadmod {
                d1,
                d2,
                act1,
                act2,
                omega,
            } => {
                let cand = QuadraticCandidate {
                    d1: self.hom(d1)?,
                    d2: self.hom(d2)?,
                    act1: self.action(act1)?,
                    act2: self.action(act2)?,
                    omega_pairs: omega.iter().flatten().copied().collect(),
                };
                let n = cand.c1().order();
                if omega.len() != n || omega.iter().any(|r| r.len() != n) {
                    return Err(Error::TypeMismatch(format!("object {name:?}: omega must be {n}x{n}")));
                }
                cand.check_types().map_err(ctx)?;
                Object::Quadratic(cand)
            }
        })
    }

    pub fn metadata(&self) -> &BTreeMap<String, String> {
        &self.metadata
    }

    pub fn set_metadata(&mut self, key: &str, value: &str) {
        self.metadata.insert(key.to_string(), value.to_string());
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.raw.keys().map(String::as_str)
    }

    pub fn get(&self, name: &str) -> Option<&Object> {
        self.objects.get(name)
    }

    pub fn kind_of(&self, name: &str) -> Option<&'static str> {
        self.raw.get(name).map(RawObject::kind)
    }

    fn lookup(&self, name: &str, kind: &str) -> Result<&Object> {
        match (self.objects.get(name), self.raw.get(name)) {
            (Some(o), _) => Ok(o),
            (None, Some(r)) => Err(Error::TypeMismatch(format!(
                "{name:?} is a {}, expected a {kind}",
                r.kind()
            ))),
            (None, None) => Err(Error::UnresolvedReference(name.to_string())),
        }
    }

    fn mismatch(&self, name: &str, kind: &str) -> Error {
        Error::TypeMismatch(format!(
            "{name:?} is a {}, expected a {kind}",
            self.kind_of(name).unwrap_or("missing object")
        ))
    }

    pub fn group(&self, name: &str) -> Result<GroupRef> {
        match self.lookup(name, "group")? {
            Object::Group(g) => Ok(g.clone()),
            _ => Err(self.mismatch(name, "group")),
        }
    }

    pub fn hom(&self, name: &str) -> Result<GroupHom> {
        match self.lookup(name, "hom")? {
            Object::Hom(h) => Ok(h.clone()),
            _ => Err(self.mismatch(name, "hom")),
        }
    }

    pub fn action(&self, name: &str) -> Result<GroupAction> {
        match self.lookup(name, "action")? {
            Object::Action(a) => Ok(a.clone()),
            _ => Err(self.mismatch(name, "action")),
        }
    }

    pub fn precrossed(&self, name: &str) -> Result<PreCrossedModule> {
        match self.lookup(name, "precrossed")? {
            Object::PreCrossed(p) => Ok(p.clone()),
            _ => Err(self.mismatch(name, "precrossed")),
        }
    }

    pub fn quadratic(&self, name: &str) -> Result<QuadraticCandidate> {
        match self.lookup(name, "quadmod")? {
            Object::Quadratic(q) => Ok(q.clone()),
            _ => Err(self.mismatch(name, "quadmod")),
        }
    }

    /// Inserts a group, reusing the name of an equal group already present.
    pub fn insert_group(&mut self, name: &str, g: &GroupRef) -> String {
        if let Some((existing, _)) = self
            .objects
            .iter()
            .find(|(_, o)| matches!(o, Object::Group(h) if h == g))
        {
            return existing.clone();
        }
        let raw = RawObject::Group {
            order: g.order(),
            table: g.table_rows(),
            labels: g.labels().map(<[String]>::to_vec),
        };
        self.put(name, raw, Object::Group(g.clone()))
    }

    pub fn insert_hom(&mut self, name: &str, h: &GroupHom) -> String {
        let source = self.insert_group(&format!("{name}.source"), h.source());
        let target = self.insert_group(&format!("{name}.target"), h.target());
        let raw = RawObject::Hom {
            source,
            target,
            map: h.map().to_vec(),
        };
        self.put(name, raw, Object::Hom(h.clone()))
    }

    pub fn insert_action(&mut self, name: &str, a: &GroupAction) -> String {
        let actor = self.insert_group(&format!("{name}.actor"), a.actor());
        let carrier = self.insert_group(&format!("{name}.carrier"), a.carrier());
        let raw = RawObject::Action {
            actor,
            carrier,
            table: a.rows(),
        };
        self.put(name, raw, Object::Action(a.clone()))
    }

    pub fn insert_precrossed(&mut self, name: &str, p: &PreCrossedModule) -> String {
        self.insert_group(&format!("{name}.Q"), p.target());
        self.insert_group(&format!("{name}.M"), p.source());
        let boundary = self.insert_hom(&format!("{name}.boundary"), p.boundary());
        let action = self.insert_action(&format!("{name}.action"), p.action());
        let raw = RawObject::Precrossed { boundary, action };
        self.put(name, raw, Object::PreCrossed(p.clone()))
    }

    pub fn insert_quadratic(&mut self, name: &str, c: &QuadraticCandidate) -> String {
        self.insert_group(&format!("{name}.C0"), c.c0());
        self.insert_group(&format!("{name}.C1"), c.c1());
        self.insert_group(&format!("{name}.C2"), c.c2());
        let d1 = self.insert_hom(&format!("{name}.d1"), &c.d1);
        let d2 = self.insert_hom(&format!("{name}.d2"), &c.d2);
        let act1 = self.insert_action(&format!("{name}.act1"), &c.act1);
        let act2 = self.insert_action(&format!("{name}.act2"), &c.act2);
        let n = c.c1().order().max(1);
        let omega = c.omega_pairs.chunks(n).map(<[usize]>::to_vec).collect();
        let raw = RawObject::Quadmod {
            d1,
            d2,
            act1,
            act2,
            omega,
        };
        self.put(name, raw, Object::Quadratic(c.clone()))
    }

    fn put(&mut self, name: &str, raw: RawObject, obj: Object) -> String {
        self.raw.insert(name.to_string(), raw);
        self.objects.insert(name.to_string(), obj);
        name.to_string()
    }

    /// Canonical text: keys sorted, integer arrays on one line, two-space
    /// indentation, trailing newline.
    pub fn to_canonical_string(&self) -> String {
        let raw = RawBundle {
            version: BUNDLE_VERSION.to_string(),
            metadata: self.metadata.clone(),
            objects: self.raw.clone(),
        };
        let value = serde_json::to_value(&raw).expect("bundle serializes");
        let mut out = String::new();
        write_canonical(&value, 0, &mut out);
        out.push('\n');
        out
    }
}

fn strip_position(msg: &str) -> String {
    match msg.rfind(" at line ") {
        Some(i) => msg[..i].to_string(),
        None => msg.to_string(),
    }
}

/// Pretty printer keeping arrays of scalars on a single line.
pub fn write_canonical(v: &Value, indent: usize, out: &mut String) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (i, (k, val)) in map.iter().enumerate() {
                let _ = write!(out, "{}{}: ", pad(indent + 1), Value::String(k.clone()));
                write_canonical(val, indent + 1, out);
                out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}}}", pad(indent));
        }
        Value::Array(items) if items.iter().any(|x| x.is_array() || x.is_object()) => {
            out.push_str("[\n");
            for (i, val) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_canonical(val, indent + 1, out);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            let _ = write!(out, "{}]", pad(indent));
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            let _ = write!(out, "[{}]", parts.join(", "));
        }
        other => out.push_str(&other.to_string()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn empty_bundle_parses() {
        let b = Bundle::parse(r#"{"version": "quadmod-bundle/1"}"#).unwrap();
        assert_eq!(b.names().count(), 0);
        assert_eq!(
            b.to_canonical_string(),
            "{\n  \"metadata\": {},\n  \"objects\": {},\n  \"version\": \"quadmod-bundle/1\"\n}\n"
        );
    }

    #[test]
    fn unresolved_reference() {
        let text = r#"{"version": "quadmod-bundle/1", "objects": {
            "h": {"kind": "hom", "source": "G9", "target": "G9", "map": [0]}}}"#;
        match Bundle::parse(text) {
            Err(Error::UnresolvedReference(n)) => assert_eq!(n, "G9"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_position() {
        let text = "{\n  \"version\": \"quadmod-bundle/1\",\n  \"objects\": {,}\n}";
        match Bundle::parse(text) {
            Err(Error::SyntaxError { line, column, .. }) => assert_eq!((line, column), (3, 15)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn wrong_kind_is_type_mismatch() {
        let text = r#"{"version": "quadmod-bundle/1", "objects": {
            "G": {"kind": "group", "order": 1, "table": [[0]]},
            "a": {"kind": "action", "actor": "G", "carrier": "G", "table": [[0]]},
            "h": {"kind": "hom", "source": "a", "target": "G", "map": [0]}}}"#;
        assert!(matches!(Bundle::parse(text), Err(Error::TypeMismatch(_))));
    }

    #[test]
    fn round_trip_is_canonical() {
        let mut b = Bundle::new();
        let s3 = catalog::symmetric(3);
        b.insert_hom("id", &GroupHom::identity(&s3));
        let text = b.to_canonical_string();
        let again = Bundle::parse(&text).unwrap();
        assert_eq!(again.to_canonical_string(), text);
        assert_eq!(again.hom("id").unwrap(), GroupHom::identity(&s3));
    }
}
