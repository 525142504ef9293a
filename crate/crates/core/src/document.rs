//! JSON interchange documents for instances and families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bridges::{BridgeError, BridgeTree, Instance};
use crate::family::CycleFamily;
use crate::graph::{Arc, Dicycle, Edge, GraphError, HostCycle, VertexId};

/// Current schema version of both documents.
pub const VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported document version {0}")]
    Version(u32),
    #[error("listed attachments {listed:?} of bridge {bridge} differ from its leaves {actual:?}")]
    Attachments { bridge: usize, listed: Vec<u32>, actual: Vec<u32> },
    #[error("arc key {0} is out of range")]
    ArcKey(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Bridge(#[from] BridgeError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BridgeDocument {
    pub edges: Vec<[u32; 2]>,
    pub attachments: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub version: u32,
    pub host: Vec<u32>,
    pub bridges: Vec<BridgeDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub version: u32,
    pub dicycles: Vec<Vec<[u32; 3]>>,
}

impl InstanceDocument {
    pub fn from_instance(inst: &Instance) -> Self {
        InstanceDocument {
            version: VERSION,
            host: inst.host().order().iter().map(|v| v.0).collect(),
            bridges: inst
                .bridges()
                .iter()
                .map(|t| BridgeDocument {
                    edges: t
                        .edges()
                        .iter()
                        .map(|e| {
                            let (a, b) = e.ends();
                            [a.0, b.0]
                        })
                        .collect(),
                    attachments: t.attachments().iter().map(|v| v.0).collect(),
                })
                .collect(),
        }
    }

    /// Validates the document; listed attachments must be the tree's leaves
    /// in clockwise order.
    pub fn to_instance(&self) -> Result<Instance, DocumentError> {
        if self.version != VERSION {
            return Err(DocumentError::Version(self.version));
        }
        let host = HostCycle::from_ids(self.host.iter().copied())?;
        let mut trees = Vec::with_capacity(self.bridges.len());
        for (i, b) in self.bridges.iter().enumerate() {
            let t = BridgeTree::new(b.edges.iter().map(|&[x, y]| Edge::new(VertexId(x), VertexId(y))), &host)?;
            let actual: Vec<u32> = t.attachments().iter().map(|v| v.0).collect();
            if actual != b.attachments {
                return Err(DocumentError::Attachments { bridge: i, listed: b.attachments.clone(), actual });
            }
            trees.push(t);
        }
        Ok(Instance::new(host, trees)?)
    }

    pub fn parse(json: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}

impl FamilyDocument {
    pub fn from_family(fam: &CycleFamily) -> Self {
        FamilyDocument {
            version: VERSION,
            dicycles: fam
                .iter()
                .map(|c| c.arcs().iter().map(|a| [a.tail.0, a.head.0, u32::from(a.key)]).collect())
                .collect(),
        }
    }

    /// Validates every dicycle on load.
    pub fn to_family(&self) -> Result<CycleFamily, DocumentError> {
        if self.version != VERSION {
            return Err(DocumentError::Version(self.version));
        }
        let mut out = Vec::with_capacity(self.dicycles.len());
        for arcs in &self.dicycles {
            let arcs = arcs
                .iter()
                .map(|&[t, h, k]| {
                    let key = u8::try_from(k).map_err(|_| DocumentError::ArcKey(k))?;
                    Ok(Arc::keyed(VertexId(t), VertexId(h), key))
                })
                .collect::<Result<Vec<_>, DocumentError>>()?;
            out.push(Dicycle::new(arcs)?);
        }
        Ok(CycleFamily::new(out))
    }

    pub fn parse(json: &str) -> Result<Self, DocumentError> {
        Ok(serde_json::from_str(json)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }
}
