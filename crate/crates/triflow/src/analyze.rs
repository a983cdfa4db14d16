//! The `analyze` report: every selected verdict with the evidence behind
//! it, optionally cross-checked against the exhaustive oracles.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use triflow_core::canon::fingerprint;
use triflow_core::canon::is_isomorphic;
use triflow_core::certify::{
    fully_2summed_odd_wheel, trace_3nzf, trace_z3, triangularly_connected, verify_certificate,
    verify_z3proof, z3_prove, CertBase, Certificate, Trace,
};
use triflow_core::graph::{boundary_of, is_strongly_connected, Z3Boundary};
use triflow_core::oracle::{Oracle, OracleReport, Witness};
use triflow_core::tritree::{find_spanning_tritree, gen_wheel, TriTreeSeq};
use triflow_core::twotrees::certify_s3_with;
use triflow_core::{Error, Multigraph};

use crate::json::{
    boundary_json, coloring_json, orientation_json, BoundaryJson, CertificateJson, FlowJson,
    OrientationJson, ProofJson, S3CertificateJson, S3SummaryJson, TraceJson, TriTreeJson,
    WheelJson,
};
use crate::Failure;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Analyses {
    pub nzf: bool,
    pub z3: bool,
    pub s3: bool,
    pub flow_index: bool,
    pub tri: bool,
}

impl Analyses {
    pub fn all() -> Self {
        Analyses {
            nzf: true,
            z3: true,
            s3: true,
            flow_index: true,
            tri: true,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub analyses: Analyses,
    pub cross_check: bool,
    pub timings: bool,
    pub oracle: Oracle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// A structural decider, its certificate or trace attached.
    Decider,
    /// A direct exhaustive computation with no further evidence required.
    OracleOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    Certificate {
        certificate: CertificateJson,
    },
    Trace {
        trace: TraceJson,
    },
    Z3Proof {
        proof: ProofJson,
    },
    Flow {
        flow: FlowJson,
    },
    Orientation {
        orientation: OrientationJson,
    },
    Coloring {
        coloring: BTreeMap<String, u8>,
    },
    CounterexampleBoundary {
        boundary: BoundaryJson,
    },
    S3 {
        certificate: S3CertificateJson,
        summary: S3SummaryJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub value: bool,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<Evidence>,
}

impl Verdict {
    /// Decider verdicts must carry evidence; oracle verdicts may.
    pub fn is_supported(&self) -> bool {
        self.evidence.is_some() || self.method == Method::OracleOnly
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    #[serde(rename = "3nzf", skip_serializing_if = "Option::is_none")]
    pub nzf: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z3: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s3: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flow_index_lt3: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub triangularly_connected: Option<Verdict>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeReport {
    pub found: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sequence: Option<TriTreeJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrossCheck {
    pub agree: bool,
    pub disagreements: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AnalysisReport {
    pub fingerprint: String,
    pub vertices: usize,
    pub edges: usize,
    pub spanning_tritree: TreeReport,
    pub verdicts: Verdicts,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fully_2summed_odd_wheel: Option<WheelJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cross_check: Option<CrossCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<BTreeMap<String, f64>>,
}

fn oracle_err(e: Error) -> Failure {
    match e {
        Error::TooLarge { .. } => Failure::Guardrail(e.to_string()),
        other => Failure::Check(format!("internal error: {other}")),
    }
}

fn witness_evidence(w: &Witness) -> Evidence {
    match w {
        Witness::Orientation(d) => Evidence::Orientation {
            orientation: orientation_json(d),
        },
        Witness::Flow(f) => Evidence::Flow {
            flow: FlowJson::from(f),
        },
        Witness::Coloring(c) => Evidence::Coloring {
            coloring: coloring_json(c),
        },
    }
}

fn oracle_verdict(r: &OracleReport) -> Verdict {
    let evidence = match (&r.witness, &r.counterexample_boundary) {
        (Some(w), _) => Some(witness_evidence(w)),
        (None, Some(b)) => Some(Evidence::CounterexampleBoundary {
            boundary: boundary_json(b),
        }),
        (None, None) => None,
    };
    Verdict {
        value: r.verdict,
        method: Method::OracleOnly,
        evidence,
    }
}

/// Oracles that need a connected graph answer "no" for a disconnected one.
fn connected_oracle(r: triflow_core::Result<OracleReport>) -> Result<Verdict, Failure> {
    match r {
        Ok(r) => Ok(oracle_verdict(&r)),
        Err(Error::Disconnected) => Ok(Verdict {
            value: false,
            method: Method::OracleOnly,
            evidence: None,
        }),
        Err(e) => Err(oracle_err(e)),
    }
}

fn negative_certificate(g: &Multigraph, tr: &Trace, bases: &[CertBase]) -> Option<Certificate> {
    let base = *bases.iter().find(|b| {
        let k = match b {
            CertBase::K3 => {
                Multigraph::from_pairs(&[("0", "1"), ("0", "2"), ("1", "2")]).expect("K3")
            }
            CertBase::K4 => gen_wheel(3).expect("K4"),
        };
        is_isomorphic(&tr.residual, &k)
    })?;
    Some(Certificate {
        base,
        base_vertices: tr.residual.vertices().cloned().collect(),
        steps: tr.steps.clone(),
        target: fingerprint(g),
    })
}

struct Clock {
    on: bool,
    laps: BTreeMap<String, f64>,
}

impl Clock {
    fn time<T>(&mut self, stage: &str, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        if self.on {
            *self.laps.entry(stage.to_owned()).or_default() += t.elapsed().as_secs_f64() * 1e3;
        }
        out
    }
}

pub fn analyze(g: &Multigraph, opts: &Options) -> Result<AnalysisReport, Failure> {
    if g.vertex_count() == 0 {
        return Err(Failure::Input("the graph has no vertices".into()));
    }
    let oracle = &opts.oracle;
    let a = opts.analyses;
    let mut clock = Clock {
        on: opts.timings,
        laps: BTreeMap::new(),
    };
    let mut issues: Vec<String> = Vec::new();
    let tree: Option<TriTreeSeq> = clock.time("spanning_tritree", || find_spanning_tritree(g));
    let mut v = Verdicts::default();

    if a.nzf {
        let verdict = match &tree {
            Some(t) => {
                let tr = clock
                    .time("3nzf", || trace_3nzf(g, t))
                    .map_err(oracle_err)?;
                match negative_certificate(g, &tr, &[CertBase::K4]) {
                    Some(c) => {
                        if opts.cross_check && !verify_certificate(g, &c) {
                            issues.push("3nzf: certificate does not replay".into());
                        }
                        Verdict {
                            value: false,
                            method: Method::Decider,
                            evidence: Some(Evidence::Certificate {
                                certificate: CertificateJson::from(&c),
                            }),
                        }
                    }
                    None => Verdict {
                        value: true,
                        method: Method::Decider,
                        evidence: Some(Evidence::Trace {
                            trace: TraceJson::from(&tr),
                        }),
                    },
                }
            }
            None => {
                let f = clock
                    .time("3nzf", || oracle.has_nzf(g, 3))
                    .map_err(oracle_err)?;
                Verdict {
                    value: f.is_some(),
                    method: Method::OracleOnly,
                    evidence: f.as_ref().map(|f| Evidence::Flow {
                        flow: FlowJson::from(f),
                    }),
                }
            }
        };
        if opts.cross_check && verdict.method == Method::Decider {
            let o = clock
                .time("oracle", || oracle.has_nzf(g, 3))
                .map_err(oracle_err)?
                .is_some();
            if o != verdict.value {
                issues.push(format!(
                    "3nzf: decider says {}, oracle says {o}",
                    verdict.value
                ));
            }
        }
        v.nzf = Some(verdict);
    }

    if a.z3 {
        let verdict = match &tree {
            Some(t) => {
                let tr = clock.time("z3", || trace_z3(g, t)).map_err(oracle_err)?;
                match negative_certificate(g, &tr, &[CertBase::K3, CertBase::K4]) {
                    Some(c) => {
                        if opts.cross_check && !verify_certificate(g, &c) {
                            issues.push("z3: certificate does not replay".into());
                        }
                        Verdict {
                            value: false,
                            method: Method::Decider,
                            evidence: Some(Evidence::Certificate {
                                certificate: CertificateJson::from(&c),
                            }),
                        }
                    }
                    None => {
                        let evidence = match clock.time("z3_prove", || z3_prove(g)) {
                            Some(p) => {
                                if opts.cross_check && !verify_z3proof(g, &p) {
                                    issues.push("z3: proof does not verify".into());
                                }
                                Evidence::Z3Proof {
                                    proof: ProofJson::from(&p),
                                }
                            }
                            None => Evidence::Trace {
                                trace: TraceJson::from(&tr),
                            },
                        };
                        Verdict {
                            value: true,
                            method: Method::Decider,
                            evidence: Some(evidence),
                        }
                    }
                }
            }
            None => oracle_verdict(
                &clock
                    .time("z3", || oracle.z3_connected(g))
                    .map_err(oracle_err)?,
            ),
        };
        if opts.cross_check && verdict.method == Method::Decider {
            let o = clock
                .time("oracle", || oracle.z3_connected(g))
                .map_err(oracle_err)?
                .verdict;
            if o != verdict.value {
                issues.push(format!(
                    "z3: decider says {}, oracle says {o}",
                    verdict.value
                ));
            }
        }
        v.z3 = Some(verdict);
    }

    let s3 = if a.s3 || a.flow_index {
        clock.time("s3", || certify_s3_with(g, oracle))
    } else {
        None
    };
    if let Some(r) = &s3 {
        if !r.all_ok {
            return Err(Failure::Check(
                "s3: certificate failed on some boundary".into(),
            ));
        }
    }
    if a.s3 {
        let verdict = match &s3 {
            Some(r) => Verdict {
                value: true,
                method: Method::Decider,
                evidence: Some(Evidence::S3 {
                    certificate: S3CertificateJson::from(&r.certificate),
                    summary: S3SummaryJson {
                        boundaries_checked: r.boundaries_checked,
                        all_ok: r.all_ok,
                    },
                }),
            },
            None => clock.time("s3", || connected_oracle(oracle.s3_member(g)))?,
        };
        if opts.cross_check && verdict.method == Method::Decider {
            let o = clock
                .time("oracle", || connected_oracle(oracle.s3_member(g)))?
                .value;
            if !o {
                issues.push("s3: certified but the oracle disagrees".into());
            }
        }
        v.s3 = Some(verdict);
    }

    if a.flow_index {
        let verdict = match &s3 {
            Some(r) => {
                let zero = Z3Boundary::zero(g);
                let d = r.certificate.orient(g, &zero, oracle).map_err(oracle_err)?;
                if opts.cross_check
                    && !(is_strongly_connected(g, &d)
                        && boundary_of(g, &d).is_ok_and(|b| b.is_zero()))
                {
                    issues.push(
                        "flow_index_lt3: certified orientation is not a strong mod 3-orientation"
                            .into(),
                    );
                }
                Verdict {
                    value: true,
                    method: Method::Decider,
                    evidence: Some(Evidence::Orientation {
                        orientation: orientation_json(&d),
                    }),
                }
            }
            None => clock.time("flow_index_lt3", || {
                connected_oracle(oracle.flow_index_lt3(g))
            })?,
        };
        if opts.cross_check && verdict.method == Method::Decider {
            let o = clock
                .time("oracle", || connected_oracle(oracle.flow_index_lt3(g)))?
                .value;
            if !o {
                issues.push("flow_index_lt3: certified but the oracle disagrees".into());
            }
        }
        v.flow_index_lt3 = Some(verdict);
    }

    let mut wheel = None;
    if a.tri {
        let tri = clock.time("triangularly_connected", || triangularly_connected(g));
        wheel = clock.time("triangularly_connected", || fully_2summed_odd_wheel(g));
        if opts.cross_check && tri {
            let z3 = match &v.z3 {
                Some(x) => x.value,
                None => oracle.z3_connected(g).map_err(oracle_err)?.verdict,
            };
            if !z3 && tree.is_none() != wheel.is_some() {
                issues.push("triangularly_connected: spanning triangle-tree and fully 2-summed odd wheel disagree".into());
            }
        }
        v.triangularly_connected = Some(Verdict {
            value: tri,
            method: Method::OracleOnly,
            evidence: None,
        });
    }

    Ok(AnalysisReport {
        fingerprint: format!("{:016x}", fingerprint(g)),
        vertices: g.vertex_count(),
        edges: g.edge_count(),
        spanning_tritree: TreeReport {
            found: tree.is_some(),
            sequence: tree.as_ref().map(TriTreeJson::from),
        },
        verdicts: v,
        fully_2summed_odd_wheel: wheel.as_ref().map(WheelJson::from),
        cross_check: opts.cross_check.then_some(CrossCheck {
            agree: issues.is_empty(),
            disagreements: issues,
        }),
        timings_ms: opts.timings.then_some(clock.laps),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> Options {
        Options {
            analyses: Analyses::all(),
            cross_check: true,
            timings: false,
            oracle: Oracle::default(),
        }
    }

    fn all_supported(r: &AnalysisReport) -> bool {
        let v = &r.verdicts;
        [
            &v.nzf,
            &v.z3,
            &v.s3,
            &v.flow_index_lt3,
            &v.triangularly_connected,
        ]
        .iter()
        .all(|x| x.as_ref().is_some_and(Verdict::is_supported))
    }

    #[test]
    fn k4_has_neither() {
        let r = analyze(&gen_wheel(3).unwrap(), &opts()).unwrap();
        assert!(!r.verdicts.nzf.as_ref().unwrap().value);
        assert!(!r.verdicts.z3.as_ref().unwrap().value);
        assert!(r.cross_check.as_ref().unwrap().agree);
        assert!(all_supported(&r));
    }

    #[test]
    fn w4_has_both() {
        let r = analyze(&gen_wheel(4).unwrap(), &opts()).unwrap();
        assert!(r.verdicts.nzf.as_ref().unwrap().value);
        assert!(r.verdicts.z3.as_ref().unwrap().value);
        assert!(r.cross_check.as_ref().unwrap().agree);
        assert!(all_supported(&r));
    }

    #[test]
    fn doubled_k4_minus_edge_is_s3() {
        let pairs = [("0", "1"), ("0", "2"), ("1", "2"), ("1", "3"), ("2", "3")];
        let twice: Vec<_> = pairs.iter().chain(pairs.iter()).copied().collect();
        let r = analyze(&Multigraph::from_pairs(&twice).unwrap(), &opts()).unwrap();
        assert!(r.verdicts.s3.as_ref().unwrap().value);
        assert!(r.verdicts.flow_index_lt3.as_ref().unwrap().value);
        assert!(r.cross_check.as_ref().unwrap().agree);
    }

    #[test]
    fn guardrail_is_reported() {
        let o = Options {
            oracle: Oracle::new(3),
            ..opts()
        };
        let c4 = Multigraph::from_pairs(&[("0", "1"), ("1", "2"), ("2", "3"), ("0", "3")]).unwrap();
        assert!(matches!(analyze(&c4, &o), Err(Failure::Guardrail(_))));
    }
}
