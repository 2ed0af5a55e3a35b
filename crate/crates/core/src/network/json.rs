//! Canonical JSON interchange for networks, embeddings and connections.
//!
//! ```text
//! {
//!   "surface": "disk|annulus|torus|pants",
//!   "vertices": N,
//!   "nodes": [ids...],
//!   "edges": [{"id": k, "u": i, "v": j, "c": "p/q",
//!              "h": [a] or [a, b],              // optional homology weights
//!              "t": [["a","b"],["c","d"]]}],     // optional SL2 transport
//!   "rotation": {"<vertex>": ["e0+", "e1-", ...], ...},  // optional
//!   "outer": "e0+",                              // optional (disk)
//!   "holes": ["e0+", "e3-"]                      // optional (annulus/pants)
//! }
//! ```
//!
//! Rationals are lowest-terms `"p/q"` strings, never floats. Saving sorts all
//! keys, so load → save round-trips are byte-canonical.

use super::connection::{Connection, Mat2};
use super::embedding::{Embedding, Surface};
use super::{dart_from_name, dart_name, Network, NetworkError};
use crate::exact::{rat_from_str, rat_to_string, Rat};
use serde_json::{json, Map, Value};

#[derive(Debug)]
pub enum JsonError {
    Schema(String),
    Network(NetworkError),
    Embedding(super::embedding::EmbeddingError),
    Connection(String),
}

impl std::fmt::Display for JsonError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            JsonError::Schema(s) => write!(f, "schema violation: {s}"),
            JsonError::Network(e) => write!(f, "invalid network: {e}"),
            JsonError::Embedding(e) => write!(f, "invalid embedding: {e}"),
            JsonError::Connection(s) => write!(f, "invalid connection: {s}"),
        }
    }
}

impl std::error::Error for JsonError {}

#[derive(Clone, Debug)]
pub struct Document {
    pub net: Network,
    pub embedding: Option<Embedding>,
    pub connection: Connection,
}

pub fn load(text: &str) -> Result<Document, JsonError> {
    let v: Value =
        serde_json::from_str(text).map_err(|e| JsonError::Schema(format!("not JSON: {e}")))?;
    let obj = v
        .as_object()
        .ok_or_else(|| JsonError::Schema("top level must be an object".into()))?;

    let surface = match obj.get("surface") {
        None => Surface::Disk,
        Some(Value::String(s)) => Surface::from_str(s)
            .ok_or_else(|| JsonError::Schema(format!("unknown surface {s:?}")))?,
        Some(_) => return Err(JsonError::Schema("surface must be a string".into())),
    };
    let vertices = obj
        .get("vertices")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError::Schema("vertices must be a count".into()))?
        as usize;
    let nodes: Vec<usize> = match obj.get("nodes") {
        None => vec![],
        Some(Value::Array(a)) => a
            .iter()
            .map(|x| {
                x.as_u64()
                    .map(|u| u as usize)
                    .ok_or_else(|| JsonError::Schema("nodes must be vertex ids".into()))
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(JsonError::Schema("nodes must be an array".into())),
    };

    let edges_v = obj
        .get("edges")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Schema("edges must be an array".into()))?;
    let mut edges: Vec<(usize, usize, Rat)> = Vec::with_capacity(edges_v.len());
    let mut weights: Vec<(i64, i64)> = Vec::with_capacity(edges_v.len());
    let mut sl2: Vec<Option<Mat2>> = Vec::with_capacity(edges_v.len());
    for (i, ev) in edges_v.iter().enumerate() {
        let eo = ev
            .as_object()
            .ok_or_else(|| JsonError::Schema("edge must be an object".into()))?;
        let id = eo
            .get("id")
            .and_then(Value::as_u64)
            .ok_or_else(|| JsonError::Schema("edge id missing".into()))? as usize;
        if id != i {
            return Err(JsonError::Schema(format!(
                "edge ids must be 0..n in order, got {id} at position {i}"
            )));
        }
        let u = eo
            .get("u")
            .and_then(Value::as_u64)
            .ok_or_else(|| JsonError::Schema("edge endpoint u missing".into()))?
            as usize;
        let v = eo
            .get("v")
            .and_then(Value::as_u64)
            .ok_or_else(|| JsonError::Schema("edge endpoint v missing".into()))?
            as usize;
        let c = match eo.get("c") {
            Some(Value::String(s)) => rat_from_str(s).map_err(JsonError::Schema)?,
            _ => return Err(JsonError::Schema("conductance must be a rational string".into())),
        };
        edges.push((u, v, c));
        let w = match eo.get("h") {
            None => (0, 0),
            Some(Value::Array(a)) => {
                let ints: Vec<i64> = a
                    .iter()
                    .map(|x| {
                        x.as_i64()
                            .ok_or_else(|| JsonError::Schema("h entries must be integers".into()))
                    })
                    .collect::<Result<_, _>>()?;
                match ints.as_slice() {
                    [a] => (*a, 0),
                    [a, b] => (*a, *b),
                    _ => return Err(JsonError::Schema("h must have 1 or 2 entries".into())),
                }
            }
            Some(_) => return Err(JsonError::Schema("h must be an array".into())),
        };
        weights.push(w);
        let t = match eo.get("t") {
            None => None,
            Some(Value::Array(rows)) if rows.len() == 2 => {
                let mut m = Vec::new();
                for row in rows {
                    let r = row
                        .as_array()
                        .filter(|r| r.len() == 2)
                        .ok_or_else(|| JsonError::Schema("t must be 2x2".into()))?;
                    for x in r {
                        let s = x
                            .as_str()
                            .ok_or_else(|| JsonError::Schema("t entries must be rationals".into()))?;
                        m.push(rat_from_str(s).map_err(JsonError::Schema)?);
                    }
                }
                Some(Mat2::new(
                    m[0].clone(),
                    m[1].clone(),
                    m[2].clone(),
                    m[3].clone(),
                ))
            }
            Some(_) => return Err(JsonError::Schema("t must be a 2x2 array".into())),
        };
        sl2.push(t);
    }

    let net = Network::new(vertices, edges, nodes).map_err(JsonError::Network)?;

    let connection = if sl2.iter().any(Option::is_some) {
        let mats: Vec<Mat2> = sl2
            .into_iter()
            .map(|t| t.unwrap_or_else(Mat2::identity))
            .collect();
        let conn = Connection::Sl2(mats);
        conn.validate(net.num_edges()).map_err(JsonError::Connection)?;
        conn
    } else if weights.iter().any(|&w| w != (0, 0)) {
        Connection::Line
    } else {
        Connection::Trivial
    };

    let embedding = match obj.get("rotation") {
        None => None,
        Some(Value::Object(rot)) => {
            let mut rotation = vec![Vec::new(); net.num_vertices];
            for (key, darts) in rot {
                let v: usize = key
                    .parse()
                    .map_err(|_| JsonError::Schema(format!("bad rotation vertex key {key:?}")))?;
                if v >= net.num_vertices {
                    return Err(JsonError::Schema(format!("rotation vertex {v} out of range")));
                }
                let list = darts
                    .as_array()
                    .ok_or_else(|| JsonError::Schema("rotation entry must be an array".into()))?;
                rotation[v] = list
                    .iter()
                    .map(|d| {
                        d.as_str()
                            .and_then(dart_from_name)
                            .ok_or_else(|| JsonError::Schema(format!("bad dart name {d}")))
                    })
                    .collect::<Result<_, _>>()?;
            }
            let outer = parse_dart_field(obj, "outer")?;
            let holes = match obj.get("holes") {
                None => vec![],
                Some(Value::Array(a)) => a
                    .iter()
                    .map(|d| {
                        d.as_str()
                            .and_then(dart_from_name)
                            .ok_or_else(|| JsonError::Schema(format!("bad dart name {d}")))
                    })
                    .collect::<Result<_, _>>()?,
                Some(_) => return Err(JsonError::Schema("holes must be an array".into())),
            };
            Some(
                Embedding::new(&net, surface, rotation, weights, outer, holes)
                    .map_err(JsonError::Embedding)?,
            )
        }
        Some(_) => return Err(JsonError::Schema("rotation must be an object".into())),
    };

    Ok(Document {
        net,
        embedding,
        connection,
    })
}

fn parse_dart_field(obj: &Map<String, Value>, key: &str) -> Result<Option<usize>, JsonError> {
    match obj.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => dart_from_name(s)
            .map(Some)
            .ok_or_else(|| JsonError::Schema(format!("bad dart name {s:?}"))),
        Some(_) => Err(JsonError::Schema(format!("{key} must be a dart name"))),
    }
}

pub fn save(doc: &Document) -> String {
    let net = &doc.net;
    let mut root = Map::new();
    let surface = doc
        .embedding
        .as_ref()
        .map_or(Surface::Disk, |e| e.surface);
    root.insert("surface".into(), json!(surface.as_str()));
    root.insert("vertices".into(), json!(net.num_vertices));
    root.insert("nodes".into(), json!(net.nodes));
    let mut edges = Vec::new();
    for e in &net.edges {
        let mut eo = Map::new();
        eo.insert("id".into(), json!(e.id));
        eo.insert("u".into(), json!(e.u));
        eo.insert("v".into(), json!(e.v));
        eo.insert("c".into(), json!(rat_to_string(&e.c)));
        if let Some(emb) = &doc.embedding {
            let (a, b) = emb.weights[2 * e.id];
            if (a, b) != (0, 0) {
                let h = match surface {
                    Surface::Annulus => json!([a]),
                    _ => json!([a, b]),
                };
                eo.insert("h".into(), h);
            }
        }
        if let Connection::Sl2(mats) = &doc.connection {
            let m = &mats[e.id];
            if m != &Mat2::identity() {
                eo.insert(
                    "t".into(),
                    json!([
                        [rat_to_string(&m.0[0][0]), rat_to_string(&m.0[0][1])],
                        [rat_to_string(&m.0[1][0]), rat_to_string(&m.0[1][1])],
                    ]),
                );
            }
        }
        edges.push(Value::Object(eo));
    }
    root.insert("edges".into(), Value::Array(edges));
    if let Some(emb) = &doc.embedding {
        let mut rot = Map::new();
        for (v, darts) in emb.rotation.iter().enumerate() {
            rot.insert(
                v.to_string(),
                json!(darts.iter().map(|&d| dart_name(d)).collect::<Vec<_>>()),
            );
        }
        root.insert("rotation".into(), Value::Object(rot));
        if let Some(outer) = emb.outer_face {
            // store a dart on the outer face
            let faces = emb.faces(net);
            let d = faces.cycles[outer][0];
            root.insert("outer".into(), json!(dart_name(d)));
        }
        if !emb.holes.is_empty() {
            let faces = emb.faces(net);
            let hs: Vec<String> = emb
                .holes
                .iter()
                .map(|&f| dart_name(faces.cycles[f][0]))
                .collect();
            root.insert("holes".into(), json!(hs));
        }
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("serialization cannot fail")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::network::families;

    #[test]
    fn y_network_round_trip() {
        let (net, emb) = families::y_network(rat(1, 1), rat(2, 1), rat(3, 7));
        let doc = Document {
            net,
            embedding: Some(emb),
            connection: Connection::Trivial,
        };
        let s1 = save(&doc);
        let doc2 = load(&s1).unwrap();
        let s2 = save(&doc2);
        assert_eq!(s1, s2, "canonical save must be a fixed point of load∘save");
        assert_eq!(doc2.net.nodes, vec![0, 1, 2]);
        assert_eq!(doc2.net.edges[2].c, rat(3, 7));
    }

    #[test]
    fn rejects_disconnected() {
        let text = r#"{"surface":"disk","vertices":2,"nodes":[0],"edges":[]}"#;
        match load(text) {
            Err(JsonError::Network(NetworkError::Disconnected)) => {}
            other => panic!("expected Disconnected, got {other:?}"),
        }
    }

    #[test]
    fn rejects_non_cocycle() {
        // Torus two-loop map but with a weight pattern whose face sum is nonzero.
        let text = r#"{
            "surface": "torus", "vertices": 1, "nodes": [],
            "edges": [
                {"id":0,"u":0,"v":0,"c":"1","h":[1,0]},
                {"id":1,"u":0,"v":0,"c":"1","h":[0,1]},
                {"id":2,"u":0,"v":0,"c":"1","h":[1,1]}
            ],
            "rotation": {"0": ["e0+","e1+","e2+","e0-","e1-","e2-"]}
        }"#;
        match load(text) {
            Err(JsonError::Embedding(_)) => {}
            other => panic!("expected embedding error, got {other:?}"),
        }
    }

    #[test]
    fn annulus_string_round_trip() {
        let (net, emb) = families::string_of_loops(&[rat(1, 1)], &[rat(1, 1), rat(2, 1)]).unwrap();
        let doc = Document {
            net,
            embedding: Some(emb),
            connection: Connection::Line,
        };
        let s1 = save(&doc);
        let doc2 = load(&s1).unwrap();
        assert_eq!(doc2.connection, Connection::Line);
        assert_eq!(save(&doc2), s1);
    }
}
