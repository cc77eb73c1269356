//! The interchange format: a JSON object `{format_version, kind, payload}`.
//!
//! Canonical form sorts object keys, and lists whose order carries no
//! meaning are sorted by id, so printing a parsed canonical document gives
//! back the same bytes.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Serialize, Serializer};
use serde_json::{json, Map, Value};

use crate::delta::MonotoneMap;
use crate::diagram::{SSetDiagram, SetDiagram};
use crate::error::{Error, Result};
use crate::fincat::{CategoryBuilder, FinCategory, Functor};
use crate::sset::{Generator, SSet, Simplex};

pub const FORMAT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Category(Arc<FinCategory>),
    Functor(Functor),
    SSet(SSet),
    SetDiagram(SetDiagram),
    SSetDiagram(SSetDiagram),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Category(_) => "category",
            Document::Functor(_) => "functor",
            Document::SSet(_) => "sset",
            Document::SetDiagram(_) => "set_diagram",
            Document::SSetDiagram(_) => "sset_diagram",
        }
    }

    pub fn payload(&self) -> Value {
        match self {
            Document::Category(c) => category_payload(c),
            Document::Functor(f) => functor_payload(f),
            Document::SSet(s) => sset_payload(s),
            Document::SetDiagram(d) => set_diagram_payload(d),
            Document::SSetDiagram(d) => sset_diagram_payload(d),
        }
    }

    pub fn to_value(&self) -> Value {
        json!({
            "format_version": FORMAT_VERSION,
            "kind": self.kind(),
            "payload": self.payload(),
        })
    }

    /// Canonical text: sorted keys, two-space indentation, final newline.
    pub fn print(&self) -> String {
        to_text(&self.to_value())
    }

    pub fn parse(text: &str) -> Result<Document> {
        let v: Value = serde_json::from_str(text).map_err(|e| {
            Error::parse(
                format!("line {} column {}", e.line(), e.column()),
                e.to_string(),
            )
        })?;
        Document::from_value(&v)
    }

    pub fn from_value(v: &Value) -> Result<Document> {
        let top = as_object(v, "$")?;
        let version = as_str(field(top, "format_version", "$")?, "$.format_version")?;
        if version != FORMAT_VERSION {
            return Err(Error::parse(
                "$.format_version",
                format!("unsupported version `{version}`"),
            ));
        }
        let kind = as_str(field(top, "kind", "$")?, "$.kind")?;
        let payload = field(top, "payload", "$")?;
        let at = "$.payload";
        Ok(match kind {
            "category" => Document::Category(Arc::new(parse_category(payload, at)?)),
            "functor" => Document::Functor(parse_functor(payload, at)?),
            "sset" => Document::SSet(parse_sset(payload, at)?),
            "set_diagram" => Document::SetDiagram(parse_set_diagram(payload, at)?),
            "sset_diagram" => Document::SSetDiagram(parse_sset_diagram(payload, at)?),
            other => return Err(Error::parse("$.kind", format!("unknown kind `{other}`"))),
        })
    }

    /// Structural validation, independent of how the value was built.
    pub fn validate(&self) -> Vec<String> {
        match self {
            Document::Category(c) => c.validate().iter().map(|v| v.to_string()).collect(),
            Document::Functor(f) => {
                let mut v: Vec<String> = f
                    .domain()
                    .validate()
                    .iter()
                    .map(|x| format!("domain: {x}"))
                    .collect();
                v.extend(
                    f.codomain()
                        .validate()
                        .iter()
                        .map(|x| format!("codomain: {x}")),
                );
                if v.is_empty() {
                    v = f.validate();
                }
                v
            }
            Document::SSet(s) => s.validate(),
            Document::SetDiagram(d) => d.validate(),
            Document::SSetDiagram(d) => d.validate(),
        }
    }
}

/// Pretty JSON with sorted keys and a final newline.
pub fn to_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

/// A report wrapped as a document of kind `report`.
pub fn report_document<T: Serialize>(report_type: &str, report: &T) -> String {
    let payload = serde_json::to_value(report).expect("reports serialize");
    to_text(&json!({
        "format_version": FORMAT_VERSION,
        "kind": "report",
        "report_type": report_type,
        "payload": payload,
    }))
}

// ---------------------------------------------------------------------------
// Printing

pub fn category_payload(c: &FinCategory) -> Value {
    let mut objects: Vec<&str> = c.objects().iter().map(String::as_str).collect();
    objects.sort_unstable();
    let mut morphisms: Vec<Value> = c
        .morphisms()
        .iter()
        .map(|m| {
            json!({
                "id": m.id,
                "source": c.object_id(m.source),
                "target": c.object_id(m.target),
            })
        })
        .collect();
    morphisms.sort_by(|a, b| a["id"].as_str().cmp(&b["id"].as_str()));
    let identities: BTreeMap<&str, &str> = (0..c.object_count())
        .map(|o| (c.object_id(o), c.morphism_id(c.identity(o))))
        .collect();
    let mut composition: Vec<[&str; 3]> = Vec::new();
    for f in 0..c.morphism_count() {
        if c.is_identity(f) {
            continue;
        }
        for &g in c.outgoing(c.target(f)) {
            if !c.is_identity(g) {
                composition.push([
                    c.morphism_id(g),
                    c.morphism_id(f),
                    c.morphism_id(c.comp(g, f)),
                ]);
            }
        }
    }
    composition.sort_unstable();
    json!({
        "objects": objects,
        "morphisms": morphisms,
        "identities": identities,
        "composition": composition,
    })
}

pub fn functor_payload(f: &Functor) -> Value {
    let (objs, mors) = f.id_maps();
    let objs: BTreeMap<String, String> = objs.into_iter().collect();
    let mors: BTreeMap<String, String> = mors.into_iter().collect();
    json!({
        "domain": category_payload(f.domain()),
        "codomain": category_payload(f.codomain()),
        "objects": objs,
        "morphisms": mors,
    })
}

fn simplex_ref(s: &SSet, x: &Simplex) -> Value {
    json!({
        "op": x.op.values(),
        "gen": s.generator_id(x.level(), x.gen),
    })
}

pub fn sset_payload(s: &SSet) -> Value {
    let levels: Vec<Value> = (0..=s.truncation())
        .map(|k| {
            let mut gens: Vec<&Generator> = s.generators(k).iter().collect();
            gens.sort_by(|a, b| a.id.cmp(&b.id));
            Value::Array(
                gens.into_iter()
                    .map(|g| {
                        let faces: Vec<Value> = g.faces.iter().map(|x| simplex_ref(s, x)).collect();
                        json!({ "id": g.id, "faces": faces })
                    })
                    .collect(),
            )
        })
        .collect();
    json!({
        "truncation": s.truncation(),
        "levels": levels,
    })
}

pub fn set_diagram_payload(d: &SetDiagram) -> Value {
    let c = d.shape();
    let sets: BTreeMap<&str, usize> = (0..c.object_count())
        .map(|o| (c.object_id(o), d.size(o)))
        .collect();
    let actions: BTreeMap<&str, &[usize]> = (0..c.morphism_count())
        .map(|m| (c.morphism_id(m), d.action(m)))
        .collect();
    json!({
        "shape": category_payload(c),
        "sets": sets,
        "actions": actions,
    })
}

pub fn sset_diagram_payload(d: &SSetDiagram) -> Value {
    let s = d.base();
    let sets: BTreeMap<&str, usize> = (0..s.vertex_count())
        .map(|v| (s.generator_id(0, v), d.size(v)))
        .collect();
    let edges: BTreeMap<&str, &Vec<usize>> = d
        .edge_actions()
        .iter()
        .enumerate()
        .map(|(e, a)| (s.generator_id(1, e), a))
        .collect();
    json!({
        "base": sset_payload(s),
        "sets": sets,
        "edges": edges,
    })
}

pub fn serialize_category<S: Serializer>(
    c: &Arc<FinCategory>,
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    category_payload(c).serialize(ser)
}

pub fn serialize_diagrams<S: Serializer>(
    ds: &[SetDiagram],
    ser: S,
) -> std::result::Result<S::Ok, S::Error> {
    let v: Vec<Value> = ds.iter().map(set_diagram_payload).collect();
    v.serialize(ser)
}

// ---------------------------------------------------------------------------
// Parsing

fn as_object<'a>(v: &'a Value, at: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(at, "expected an object"))
}

fn as_array<'a>(v: &'a Value, at: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(at, "expected an array"))
}

fn as_str<'a>(v: &'a Value, at: &str) -> Result<&'a str> {
    v.as_str()
        .ok_or_else(|| Error::parse(at, "expected a string"))
}

fn as_usize(v: &Value, at: &str) -> Result<usize> {
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::parse(at, "expected a non-negative integer"))
}

fn field<'a>(m: &'a Map<String, Value>, key: &str, at: &str) -> Result<&'a Value> {
    m.get(key)
        .ok_or_else(|| Error::parse(at, format!("missing field `{key}`")))
}

fn usize_list(v: &Value, at: &str) -> Result<Vec<usize>> {
    as_array(v, at)?
        .iter()
        .enumerate()
        .map(|(i, x)| as_usize(x, &format!("{at}[{i}]")))
        .collect()
}

fn lookup(index: &HashMap<&str, usize>, id: &str, at: &str, what: &str) -> Result<usize> {
    index
        .get(id)
        .copied()
        .ok_or_else(|| Error::parse(at, format!("unknown {what} `{id}`")))
}

pub fn parse_category(v: &Value, at: &str) -> Result<FinCategory> {
    let m = as_object(v, at)?;
    let mut b = CategoryBuilder::new();
    let objects = as_array(field(m, "objects", at)?, &format!("{at}.objects"))?;
    let mut obj_ids = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        let id = as_str(o, &format!("{at}.objects[{i}]"))?;
        b.add_object(id);
        obj_ids.push(id);
    }
    let obj_index: HashMap<&str, usize> =
        obj_ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let morphisms = as_array(field(m, "morphisms", at)?, &format!("{at}.morphisms"))?;
    let mut mor_ids = Vec::new();
    for (i, x) in morphisms.iter().enumerate() {
        let here = format!("{at}.morphisms[{i}]");
        let mm = as_object(x, &here)?;
        let id = as_str(field(mm, "id", &here)?, &format!("{here}.id"))?;
        let s = lookup(
            &obj_index,
            as_str(field(mm, "source", &here)?, &here)?,
            &format!("{here}.source"),
            "object",
        )?;
        let t = lookup(
            &obj_index,
            as_str(field(mm, "target", &here)?, &here)?,
            &format!("{here}.target"),
            "object",
        )?;
        b.add_morphism(id, s, t);
        mor_ids.push(id);
    }
    let mor_index: HashMap<&str, usize> =
        mor_ids.iter().enumerate().map(|(i, &s)| (s, i)).collect();
    let ids_at = format!("{at}.identities");
    let identities = as_object(field(m, "identities", at)?, &ids_at)?;
    let mut is_identity = vec![false; mor_ids.len()];
    for (o, id) in identities {
        let here = format!("{ids_at}.{o}");
        let oi = lookup(&obj_index, o, &here, "object")?;
        let mi = lookup(&mor_index, as_str(id, &here)?, &here, "morphism")?;
        b.set_identity(oi, mi);
        is_identity[mi] = true;
    }
    let comp_at = format!("{at}.composition");
    let mut table: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, t) in as_array(field(m, "composition", at)?, &comp_at)?
        .iter()
        .enumerate()
    {
        let here = format!("{comp_at}[{i}]");
        let triple = as_array(t, &here)?;
        if triple.len() != 3 {
            return Err(Error::parse(here, "expected [g, f, g∘f]"));
        }
        let ids: Vec<usize> = triple
            .iter()
            .map(|x| lookup(&mor_index, as_str(x, &here)?, &here, "morphism"))
            .collect::<Result<_>>()?;
        if table.insert((ids[0], ids[1]), ids[2]).is_some() {
            return Err(Error::parse(here, "composite given twice"));
        }
    }
    b.build(|g, f| {
        if is_identity[g] {
            Some(f)
        } else if is_identity[f] {
            Some(g)
        } else {
            table.get(&(g, f)).copied()
        }
    })
    .map_err(|e| Error::parse(at, e.to_string()))
}

pub fn parse_functor(v: &Value, at: &str) -> Result<Functor> {
    let m = as_object(v, at)?;
    let dom = Arc::new(parse_category(
        field(m, "domain", at)?,
        &format!("{at}.domain"),
    )?);
    let cod = Arc::new(parse_category(
        field(m, "codomain", at)?,
        &format!("{at}.codomain"),
    )?);
    let map_of = |key: &str| -> Result<Vec<(String, String)>> {
        let here = format!("{at}.{key}");
        as_object(field(m, key, at)?, &here)?
            .iter()
            .map(|(k, x)| Ok((k.clone(), as_str(x, &format!("{here}.{k}"))?.to_string())))
            .collect()
    };
    let objs = map_of("objects")?;
    let mors = map_of("morphisms")?;
    Functor::from_ids(
        dom,
        cod,
        objs.iter().map(|(a, b)| (a.as_str(), b.as_str())),
        mors.iter().map(|(a, b)| (a.as_str(), b.as_str())),
    )
    .map_err(|e| Error::parse(at, e.to_string()))
}

pub fn parse_sset(v: &Value, at: &str) -> Result<SSet> {
    let m = as_object(v, at)?;
    let truncation = as_usize(field(m, "truncation", at)?, &format!("{at}.truncation"))?;
    let levels_at = format!("{at}.levels");
    let levels = as_array(field(m, "levels", at)?, &levels_at)?;
    if levels.len() != truncation + 1 {
        return Err(Error::parse(
            levels_at,
            format!("expected {} levels", truncation + 1),
        ));
    }
    let mut out: Vec<Vec<Generator>> = Vec::new();
    let mut index: Vec<HashMap<String, usize>> = Vec::new();
    for (k, level) in levels.iter().enumerate() {
        let lat = format!("{levels_at}[{k}]");
        let mut gens = Vec::new();
        let mut idx = HashMap::new();
        for (i, g) in as_array(level, &lat)?.iter().enumerate() {
            let here = format!("{lat}[{i}]");
            let gm = as_object(g, &here)?;
            let id = as_str(field(gm, "id", &here)?, &format!("{here}.id"))?.to_string();
            let faces_at = format!("{here}.faces");
            let faces_v = as_array(field(gm, "faces", &here)?, &faces_at)?;
            let expected = if k == 0 { 0 } else { k + 1 };
            if faces_v.len() != expected {
                return Err(Error::parse(faces_at, format!("expected {expected} faces")));
            }
            let mut faces = Vec::new();
            for (j, f) in faces_v.iter().enumerate() {
                let fat = format!("{faces_at}[{j}]");
                let fm = as_object(f, &fat)?;
                let values = usize_list(field(fm, "op", &fat)?, &format!("{fat}.op"))?;
                let level = values.iter().copied().max().unwrap_or(0);
                if values.len() != k || level >= k {
                    return Err(Error::parse(
                        format!("{fat}.op"),
                        "face operator has the wrong shape",
                    ));
                }
                let op = MonotoneMap::new(level, values)
                    .map_err(|e| Error::parse(format!("{fat}.op"), e.to_string()))?;
                if !op.is_surjective() {
                    return Err(Error::parse(
                        format!("{fat}.op"),
                        "face operator is not a surjection",
                    ));
                }
                let gid = as_str(field(fm, "gen", &fat)?, &format!("{fat}.gen"))?;
                let gen = *index[level].get(gid).ok_or_else(|| {
                    Error::parse(format!("{fat}.gen"), format!("unknown simplex `{gid}`"))
                })?;
                faces.push(Simplex { op, gen });
            }
            if idx.insert(id.clone(), gens.len()).is_some() {
                return Err(Error::parse(
                    format!("{here}.id"),
                    format!("duplicate simplex id `{id}`"),
                ));
            }
            gens.push(Generator { id, faces });
        }
        out.push(gens);
        index.push(idx);
    }
    SSet::new(truncation, out).map_err(|e| Error::parse(at, e.to_string()))
}

pub fn parse_set_diagram(v: &Value, at: &str) -> Result<SetDiagram> {
    let m = as_object(v, at)?;
    let shape = Arc::new(parse_category(
        field(m, "shape", at)?,
        &format!("{at}.shape"),
    )?);
    let sets_at = format!("{at}.sets");
    let sets = as_object(field(m, "sets", at)?, &sets_at)?;
    let mut sizes = vec![None; shape.object_count()];
    for (o, k) in sets {
        let here = format!("{sets_at}.{o}");
        let oi = shape
            .object(o)
            .map_err(|e| Error::parse(&here, e.to_string()))?;
        sizes[oi] = Some(as_usize(k, &here)?);
    }
    let sizes: Vec<usize> = sizes
        .into_iter()
        .enumerate()
        .map(|(o, s)| {
            s.ok_or_else(|| Error::parse(&sets_at, format!("no set for `{}`", shape.object_id(o))))
        })
        .collect::<Result<_>>()?;
    let act_at = format!("{at}.actions");
    let acts = as_object(field(m, "actions", at)?, &act_at)?;
    let mut actions = vec![None; shape.morphism_count()];
    for (f, a) in acts {
        let here = format!("{act_at}.{f}");
        let fi = shape
            .morphism(f)
            .map_err(|e| Error::parse(&here, e.to_string()))?;
        actions[fi] = Some(usize_list(a, &here)?);
    }
    let actions: Vec<Vec<usize>> = actions
        .into_iter()
        .enumerate()
        .map(|(f, a)| {
            a.ok_or_else(|| {
                Error::parse(&act_at, format!("no action for `{}`", shape.morphism_id(f)))
            })
        })
        .collect::<Result<_>>()?;
    SetDiagram::new(shape, sizes, actions).map_err(|e| Error::parse(at, e.to_string()))
}

pub fn parse_sset_diagram(v: &Value, at: &str) -> Result<SSetDiagram> {
    let m = as_object(v, at)?;
    let base = parse_sset(field(m, "base", at)?, &format!("{at}.base"))?;
    let sets_at = format!("{at}.sets");
    let sets = as_object(field(m, "sets", at)?, &sets_at)?;
    let mut sizes = vec![None; base.vertex_count()];
    for (id, k) in sets {
        let here = format!("{sets_at}.{id}");
        let vi = base
            .generator(0, id)
            .map_err(|e| Error::parse(&here, e.to_string()))?;
        sizes[vi] = Some(as_usize(k, &here)?);
    }
    let sizes: Vec<usize> = sizes
        .into_iter()
        .enumerate()
        .map(|(v, s)| {
            s.ok_or_else(|| {
                Error::parse(
                    &sets_at,
                    format!("no set for `{}`", base.generator_id(0, v)),
                )
            })
        })
        .collect::<Result<_>>()?;
    let edges_at = format!("{at}.edges");
    let edges = as_object(field(m, "edges", at)?, &edges_at)?;
    let ne = if base.truncation() >= 1 {
        base.generator_count(1)
    } else {
        0
    };
    let mut actions = vec![None; ne];
    for (id, a) in edges {
        let here = format!("{edges_at}.{id}");
        if base.truncation() < 1 {
            return Err(Error::parse(here, "base has no edges"));
        }
        let ei = base
            .generator(1, id)
            .map_err(|e| Error::parse(&here, e.to_string()))?;
        actions[ei] = Some(usize_list(a, &here)?);
    }
    let actions: Vec<Vec<usize>> = actions
        .into_iter()
        .enumerate()
        .map(|(e, a)| {
            a.ok_or_else(|| {
                Error::parse(
                    &edges_at,
                    format!("no action for `{}`", base.generator_id(1, e)),
                )
            })
        })
        .collect::<Result<_>>()?;
    SSetDiagram::new(base, sizes, actions).map_err(|e| Error::parse(at, e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delta::{delta_leq, delta_s_into_delta};
    use crate::fincat::nerve;

    fn round_trip(d: &Document) {
        let text = d.print();
        let back = Document::parse(&text).unwrap();
        assert_eq!(back.print(), text);
        assert!(back.validate().is_empty(), "{:?}", back.validate());
    }

    #[test]
    fn documents_round_trip() {
        let c = Arc::new(delta_leq(2));
        round_trip(&Document::Category(c.clone()));
        round_trip(&Document::Functor(delta_s_into_delta(1)));
        round_trip(&Document::SSet(nerve(&c, 2).sset));
        round_trip(&Document::SSet(SSet::boundary(2).unwrap()));
        round_trip(&Document::SetDiagram(SetDiagram::constant(&c, 2)));
        round_trip(&Document::SSetDiagram(SSetDiagram::constant(
            &SSet::standard(2),
            3,
        )));
    }

    #[test]
    fn parsed_category_is_equal_up_to_order() {
        let c = delta_leq(1);
        let d = Document::Category(Arc::new(c.clone()));
        let Document::Category(back) = Document::parse(&d.print()).unwrap() else {
            panic!("kind changed");
        };
        assert_eq!(back.canonical(), c.canonical());
    }

    #[test]
    fn errors_carry_locations() {
        let bad = r#"{"format_version": "1", "kind": "category", "payload": {"objects": ["a"], "morphisms": [{"id": "f", "source": "a", "target": "b"}], "identities": {}, "composition": []}}"#;
        match Document::parse(bad) {
            Err(Error::Parse { location, .. }) => {
                assert_eq!(location, "$.payload.morphisms[0].target")
            }
            other => panic!("{other:?}"),
        }
        match Document::parse("{ nope") {
            Err(Error::Parse { location, .. }) => assert!(location.starts_with("line 1")),
            other => panic!("{other:?}"),
        }
    }
}
