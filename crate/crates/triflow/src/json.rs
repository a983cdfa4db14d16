//! JSON interchange formats and their conversions to core types.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use triflow_core::certify::{CertBase, Certificate, Rule, Step, Trace, WheelWitness, Z3Proof};
use triflow_core::graph::{FlowAssignment, Orientation, Z3Boundary};
use triflow_core::oracle::Coloring;
use triflow_core::tritree::{Attachment, TriTreeSeq};
use triflow_core::twotrees::{LeafSplit, S3Certificate, SpanningPartition};
use triflow_core::{EdgeId, Error, Multigraph, Result, VertexId};

fn ids<'a, T: AsRef<str> + 'a>(xs: impl IntoIterator<Item = &'a T>) -> Vec<String> {
    xs.into_iter().map(|x| x.as_ref().to_owned()).collect()
}

fn edge_set(xs: &[String]) -> BTreeSet<EdgeId> {
    xs.iter().map(|x| EdgeId::from(x.as_str())).collect()
}

fn pair(a: &VertexId, b: &VertexId) -> (String, String) {
    (a.as_str().to_owned(), b.as_str().to_owned())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
}

impl From<&Multigraph> for GraphJson {
    fn from(g: &Multigraph) -> Self {
        GraphJson {
            vertices: ids(g.vertices()),
            edges: g
                .edges()
                .map(|(e, u, v)| {
                    (
                        e.as_str().to_owned(),
                        u.as_str().to_owned(),
                        v.as_str().to_owned(),
                    )
                })
                .collect(),
        }
    }
}

impl GraphJson {
    pub fn to_graph(&self) -> Result<Multigraph> {
        let mut g = Multigraph::new();
        for v in &self.vertices {
            g.add_vertex(v.as_str().into())?;
        }
        for (e, u, v) in &self.edges {
            g.add_edge(e.as_str().into(), u.as_str().into(), v.as_str().into())?;
        }
        Ok(g)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriTreeJson {
    pub base: [String; 3],
    pub attach: Vec<(String, String, String)>,
    pub edge_ids: Vec<String>,
}

impl From<&TriTreeSeq> for TriTreeJson {
    fn from(t: &TriTreeSeq) -> Self {
        TriTreeJson {
            base: t.base().clone().map(|v| v.as_str().to_owned()),
            attach: t
                .attachments()
                .iter()
                .map(|a| {
                    (
                        a.vertex.as_str().to_owned(),
                        a.on.0.as_str().to_owned(),
                        a.on.1.as_str().to_owned(),
                    )
                })
                .collect(),
            edge_ids: ids(t.edge_ids()),
        }
    }
}

impl TriTreeJson {
    pub fn to_seq(&self) -> TriTreeSeq {
        TriTreeSeq::new(
            self.base.clone().map(VertexId::from),
            self.attach
                .iter()
                .map(|(x, y, z)| Attachment {
                    vertex: x.as_str().into(),
                    on: (y.as_str().into(), z.as_str().into()),
                })
                .collect(),
            self.edge_ids
                .iter()
                .map(|e| EdgeId::from(e.as_str()))
                .collect(),
        )
    }
}

/// `{"edge_id": ["tail", "head"]}`.
pub type OrientationJson = BTreeMap<String, (String, String)>;

pub fn orientation_json(d: &Orientation) -> OrientationJson {
    d.arcs()
        .map(|(e, t, h)| (e.as_str().to_owned(), pair(t, h)))
        .collect()
}

pub fn orientation_from_json(o: &OrientationJson) -> Orientation {
    let mut d = Orientation::new();
    for (e, (t, h)) in o {
        d.set(e.as_str().into(), t.as_str().into(), h.as_str().into());
    }
    d
}

/// A nowhere-zero flow: the orientation plus a positive value per edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlowJson {
    pub k: u32,
    pub orientation: OrientationJson,
    pub value: BTreeMap<String, u32>,
}

impl From<&FlowAssignment> for FlowJson {
    fn from(f: &FlowAssignment) -> Self {
        FlowJson {
            k: f.k,
            orientation: orientation_json(&f.orientation),
            value: f
                .values
                .iter()
                .map(|(e, &x)| (e.as_str().to_owned(), x))
                .collect(),
        }
    }
}

impl FlowJson {
    pub fn to_flow(&self) -> FlowAssignment {
        FlowAssignment {
            k: self.k,
            orientation: orientation_from_json(&self.orientation),
            values: self
                .value
                .iter()
                .map(|(e, &x)| (EdgeId::from(e.as_str()), x))
                .collect(),
        }
    }
}

pub type BoundaryJson = BTreeMap<String, u8>;

pub fn boundary_json(b: &Z3Boundary) -> BoundaryJson {
    b.iter().map(|(v, x)| (v.as_str().to_owned(), x)).collect()
}

pub fn boundary_from_json(g: &Multigraph, b: &BoundaryJson) -> Result<Z3Boundary> {
    Z3Boundary::for_graph(
        g,
        b.iter()
            .map(|(v, &x)| (VertexId::from(v.as_str()), x))
            .collect(),
    )
}

pub fn coloring_json(c: &Coloring) -> BTreeMap<String, u8> {
    c.iter().map(|(v, &x)| (v.as_str().to_owned(), x)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum StepJson {
    BullGrow {
        a: String,
        b: String,
        w: String,
        u: String,
        v: String,
        consume_ab: bool,
    },
    TwoSumK3 {
        edge: (String, String),
        apex: String,
    },
}

impl From<&Step> for StepJson {
    fn from(s: &Step) -> Self {
        match s {
            Step::BullGrow {
                a,
                b,
                w,
                u,
                v,
                consume_ab,
            } => StepJson::BullGrow {
                a: a.as_str().to_owned(),
                b: b.as_str().to_owned(),
                w: w.as_str().to_owned(),
                u: u.as_str().to_owned(),
                v: v.as_str().to_owned(),
                consume_ab: *consume_ab,
            },
            Step::TwoSumK3 { edge: (y, z), apex } => StepJson::TwoSumK3 {
                edge: pair(y, z),
                apex: apex.as_str().to_owned(),
            },
        }
    }
}

impl StepJson {
    pub fn to_step(&self) -> Step {
        match self {
            StepJson::BullGrow {
                a,
                b,
                w,
                u,
                v,
                consume_ab,
            } => Step::BullGrow {
                a: a.as_str().into(),
                b: b.as_str().into(),
                w: w.as_str().into(),
                u: u.as_str().into(),
                v: v.as_str().into(),
                consume_ab: *consume_ab,
            },
            StepJson::TwoSumK3 { edge: (y, z), apex } => Step::TwoSumK3 {
                edge: (y.as_str().into(), z.as_str().into()),
                apex: apex.as_str().into(),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseJson {
    K3,
    K4,
}

/// A negative certificate. `target` is the input graph's fingerprint in
/// hexadecimal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub base: BaseJson,
    pub base_vertices: Vec<String>,
    pub steps: Vec<StepJson>,
    pub target: String,
}

impl From<&Certificate> for CertificateJson {
    fn from(c: &Certificate) -> Self {
        CertificateJson {
            base: match c.base {
                CertBase::K3 => BaseJson::K3,
                CertBase::K4 => BaseJson::K4,
            },
            base_vertices: ids(&c.base_vertices),
            steps: c.steps.iter().map(StepJson::from).collect(),
            target: format!("{:016x}", c.target),
        }
    }
}

impl CertificateJson {
    pub fn to_certificate(&self) -> Result<Certificate> {
        Ok(Certificate {
            base: match self.base {
                BaseJson::K3 => CertBase::K3,
                BaseJson::K4 => CertBase::K4,
            },
            base_vertices: self
                .base_vertices
                .iter()
                .map(|v| VertexId::from(v.as_str()))
                .collect(),
            steps: self.steps.iter().map(StepJson::to_step).collect(),
            target: u64::from_str_radix(&self.target, 16)
                .map_err(|_| Error::InvalidParameter("target is not a hex fingerprint"))?,
        })
    }
}

/// A decider run that stopped at an irreducible graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub residual: GraphJson,
    pub steps: Vec<StepJson>,
}

impl From<&Trace> for TraceJson {
    fn from(t: &Trace) -> Self {
        TraceJson {
            residual: GraphJson::from(&t.residual),
            steps: t.steps.iter().map(StepJson::from).collect(),
        }
    }
}

impl TraceJson {
    pub fn to_trace(&self) -> Result<Trace> {
        Ok(Trace {
            residual: self.residual.to_graph()?,
            steps: self.steps.iter().map(StepJson::to_step).collect(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule")]
pub enum RuleJson {
    #[serde(rename = "CONTRACT_2CYCLE")]
    Contract2Cycle { edges: [String; 2] },
    #[serde(rename = "CONTRACT_Z3_SUBGRAPH")]
    ContractZ3Subgraph {
        edges: Vec<String>,
        proof: ProofJson,
    },
    #[serde(rename = "LIFT_PAIR")]
    LiftPair {
        vertex: String,
        a_edge: String,
        b_edge: String,
        new_edge: String,
    },
    #[serde(rename = "LIFT_PATH")]
    LiftPath { path: Vec<String>, new_edge: String },
    #[serde(rename = "BASE_2K2")]
    Base2K2,
    #[serde(rename = "BASE_K1")]
    BaseK1,
    #[serde(rename = "TREE_PLUS")]
    TreePlus {
        tree: TriTreeJson,
        leaf: String,
        extra: [String; 2],
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofJson {
    pub steps: Vec<RuleJson>,
}

impl From<&Z3Proof> for ProofJson {
    fn from(p: &Z3Proof) -> Self {
        let rule = |r: &Rule| match r {
            Rule::Contract2Cycle { edges } => RuleJson::Contract2Cycle {
                edges: edges.clone().map(|e| e.as_str().to_owned()),
            },
            Rule::ContractZ3Subgraph { edges, proof } => RuleJson::ContractZ3Subgraph {
                edges: ids(edges),
                proof: ProofJson::from(&**proof),
            },
            Rule::LiftPair {
                vertex,
                a_edge,
                b_edge,
                new_edge,
            } => RuleJson::LiftPair {
                vertex: vertex.as_str().to_owned(),
                a_edge: a_edge.as_str().to_owned(),
                b_edge: b_edge.as_str().to_owned(),
                new_edge: new_edge.as_str().to_owned(),
            },
            Rule::LiftPath { path, new_edge } => RuleJson::LiftPath {
                path: ids(path),
                new_edge: new_edge.as_str().to_owned(),
            },
            Rule::Base2K2 => RuleJson::Base2K2,
            Rule::BaseK1 => RuleJson::BaseK1,
            Rule::TreePlus { tree, leaf, extra } => RuleJson::TreePlus {
                tree: TriTreeJson::from(tree),
                leaf: leaf.as_str().to_owned(),
                extra: extra.clone().map(|e| e.as_str().to_owned()),
            },
        };
        ProofJson {
            steps: p.steps.iter().map(rule).collect(),
        }
    }
}

impl ProofJson {
    pub fn to_proof(&self) -> Z3Proof {
        let e = |s: &String| EdgeId::from(s.as_str());
        let rule = |r: &RuleJson| match r {
            RuleJson::Contract2Cycle { edges } => Rule::Contract2Cycle {
                edges: [e(&edges[0]), e(&edges[1])],
            },
            RuleJson::ContractZ3Subgraph { edges, proof } => Rule::ContractZ3Subgraph {
                edges: edge_set(edges),
                proof: Box::new(proof.to_proof()),
            },
            RuleJson::LiftPair {
                vertex,
                a_edge,
                b_edge,
                new_edge,
            } => Rule::LiftPair {
                vertex: vertex.as_str().into(),
                a_edge: e(a_edge),
                b_edge: e(b_edge),
                new_edge: e(new_edge),
            },
            RuleJson::LiftPath { path, new_edge } => Rule::LiftPath {
                path: path.iter().map(e).collect(),
                new_edge: e(new_edge),
            },
            RuleJson::Base2K2 => Rule::Base2K2,
            RuleJson::BaseK1 => Rule::BaseK1,
            RuleJson::TreePlus { tree, leaf, extra } => Rule::TreePlus {
                tree: tree.to_seq(),
                leaf: leaf.as_str().into(),
                extra: [e(&extra[0]), e(&extra[1])],
            },
        };
        Z3Proof::new(self.steps.iter().map(rule).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionJson {
    pub e1: Vec<String>,
    pub e2: Vec<String>,
    pub z3_proof: ProofJson,
}

impl From<&SpanningPartition> for PartitionJson {
    fn from(p: &SpanningPartition) -> Self {
        PartitionJson {
            e1: ids(&p.e1),
            e2: ids(&p.e2),
            z3_proof: ProofJson::from(&p.z3_proof),
        }
    }
}

impl PartitionJson {
    pub fn to_partition(&self) -> SpanningPartition {
        SpanningPartition {
            e1: edge_set(&self.e1),
            e2: edge_set(&self.e2),
            z3_proof: self.z3_proof.to_proof(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeafSplitJson {
    pub vertex: String,
    pub via: [String; 2],
    pub new_edge: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S3CertificateJson {
    pub splits: Vec<LeafSplitJson>,
    pub partition: PartitionJson,
}

impl From<&S3Certificate> for S3CertificateJson {
    fn from(c: &S3Certificate) -> Self {
        S3CertificateJson {
            splits: c
                .splits
                .iter()
                .map(|s| LeafSplitJson {
                    vertex: s.vertex.as_str().to_owned(),
                    via: s.via.clone().map(|e| e.as_str().to_owned()),
                    new_edge: s.new_edge.as_str().to_owned(),
                })
                .collect(),
            partition: PartitionJson::from(&c.partition),
        }
    }
}

impl S3CertificateJson {
    pub fn to_certificate(&self) -> S3Certificate {
        S3Certificate {
            splits: self
                .splits
                .iter()
                .map(|s| LeafSplit {
                    vertex: s.vertex.as_str().into(),
                    via: s.via.clone().map(|e| EdgeId::from(e.as_str())),
                    new_edge: s.new_edge.as_str().into(),
                })
                .collect(),
            partition: self.partition.to_partition(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct S3SummaryJson {
    pub boundaries_checked: u64,
    pub all_ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WheelJson {
    pub center: String,
    pub rim: Vec<String>,
    pub spokes: Vec<String>,
    pub rim_edges: Vec<String>,
}

impl From<&WheelWitness> for WheelJson {
    fn from(w: &WheelWitness) -> Self {
        WheelJson {
            center: w.center.as_str().to_owned(),
            rim: ids(&w.rim),
            spokes: ids(&w.spokes),
            rim_edges: ids(&w.rim_edges),
        }
    }
}

/// Any document the command line reads, told apart by its keys.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Graph(GraphJson),
    Certificate(CertificateJson),
    Flow(FlowJson),
    Orientation(OrientationJson),
    Proof(ProofJson),
    Partition(PartitionJson),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Graph(_) => "graph",
            Document::Certificate(_) => "certificate",
            Document::Flow(_) => "flow",
            Document::Orientation(_) => "orientation",
            Document::Proof(_) => "proof",
            Document::Partition(_) => "partition",
        }
    }
}

pub fn parse_document(text: &str) -> std::result::Result<Document, String> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| format!("invalid JSON: {e}"))?;
    let obj = value.as_object().ok_or("expected a JSON object")?;
    // Schemas are told apart by their exact key sets; anything else is an
    // orientation keyed by edge id.
    let keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    let parsed = match keys.as_slice() {
        ["edges", "vertices"] => serde_json::from_value(value).map(Document::Graph),
        ["e1", "e2", "z3_proof"] => serde_json::from_value(value).map(Document::Partition),
        ["base", "base_vertices", "steps", "target"] => {
            serde_json::from_value(value).map(Document::Certificate)
        }
        ["steps"] => serde_json::from_value(value).map(Document::Proof),
        ["k", "orientation", "value"] => serde_json::from_value(value).map(Document::Flow),
        _ => serde_json::from_value(value).map(Document::Orientation),
    };
    parsed.map_err(|e| format!("unrecognised document: {e}"))
}

pub fn parse_graph(text: &str) -> std::result::Result<Multigraph, String> {
    let g: GraphJson =
        serde_json::from_str(text).map_err(|e| format!("invalid graph JSON: {e}"))?;
    g.to_graph().map_err(|e| format!("invalid graph: {e}"))
}
