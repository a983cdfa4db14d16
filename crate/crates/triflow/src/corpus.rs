//! Decider-versus-oracle runs over every small graph with a spanning
//! triangle-tree, one graph per isomorphism class.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use triflow_core::canon::{canonical_form, fingerprint, CanonicalForm};
use triflow_core::certify::{
    bull_pairs, bull_reduce, decide_3nzf, decide_z3, few_3vertices_shortcut, verify_certificate,
};
use triflow_core::oracle::Oracle;
use triflow_core::tritree::{
    enumerate_double_tritrees, enumerate_spanning_tritree_graphs, find_spanning_tritree,
};
use triflow_core::twotrees::certify_s3_with;
use triflow_core::{Error, Multigraph};

use crate::Failure;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Check {
    #[serde(rename = "3nzf")]
    Nzf,
    #[serde(rename = "z3")]
    Z3,
    #[serde(rename = "s3")]
    S3,
    #[serde(rename = "shortcut")]
    Shortcut,
    #[serde(rename = "bull")]
    Bull,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Nzf,
        Check::Z3,
        Check::S3,
        Check::Shortcut,
        Check::Bull,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Nzf => "3nzf",
            Check::Z3 => "z3",
            Check::S3 => "s3",
            Check::Shortcut => "shortcut",
            Check::Bull => "bull",
        }
    }
}

impl FromStr for Check {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                format!("unknown check {s:?}; expected one of 3nzf, z3, s3, shortcut, bull")
            })
    }
}

#[derive(Clone, Debug)]
pub struct Config {
    /// Largest vertex count; every size from 3 up is included.
    pub n: usize,
    /// Most edges beyond the spanning triangle-tree.
    pub extra: usize,
    /// Skip graphs with more edges than this.
    pub max_edges: Option<usize>,
    pub checks: Vec<Check>,
    pub oracle: Oracle,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub fingerprint: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckRow {
    pub check: Check,
    pub instances: usize,
    pub agreed: usize,
    pub skipped: usize,
    pub disagreements: Vec<Disagreement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusReport {
    pub n: usize,
    pub extra: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_edges: Option<usize>,
    pub graphs: usize,
    /// Some instances were skipped by the oracle guardrail.
    pub partial: bool,
    pub checks: Vec<CheckRow>,
}

impl CorpusReport {
    pub fn disagreements(&self) -> usize {
        self.checks.iter().map(|r| r.disagreements.len()).sum()
    }

    pub fn exit_code(&self) -> u8 {
        if self.disagreements() > 0 {
            2
        } else if self.partial {
            3
        } else {
            0
        }
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let cap = self
            .max_edges
            .map(|m| format!(", at most {m} edges"))
            .unwrap_or_default();
        let _ = writeln!(
            s,
            "corpus: n <= {}, at most {} extra edges{cap}, {} graphs",
            self.n, self.extra, self.graphs
        );
        let _ = writeln!(
            s,
            "{:<10}{:>10}{:>10}{:>10}{:>10}",
            "check", "instances", "agreed", "disagree", "skipped"
        );
        for r in &self.checks {
            let _ = writeln!(
                s,
                "{:<10}{:>10}{:>10}{:>10}{:>10}",
                r.check.name(),
                r.instances,
                r.agreed,
                r.disagreements.len(),
                r.skipped
            );
        }
        for r in &self.checks {
            for d in &r.disagreements {
                let _ = writeln!(
                    s,
                    "disagreement [{}] {}: {}",
                    r.check.name(),
                    d.fingerprint,
                    d.detail
                );
            }
        }
        if self.partial {
            let _ = writeln!(s, "partial: the oracle guardrail skipped some instances");
        }
        s
    }
}

enum Outcome {
    Agree,
    Disagree(String),
    Skip,
}

fn skip_or_fail(e: Error) -> Result<Outcome, Failure> {
    match e {
        Error::TooLarge { .. } => Ok(Outcome::Skip),
        other => Err(Failure::Check(format!("internal error: {other}"))),
    }
}

macro_rules! tryo {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(e) => return skip_or_fail(e),
        }
    };
}

/// Memoised oracle verdicts keyed by isomorphism class.
struct Memo<'a> {
    oracle: &'a Oracle,
    nzf: BTreeMap<CanonicalForm, bool>,
    z3: BTreeMap<CanonicalForm, bool>,
}

impl Memo<'_> {
    fn nzf(&mut self, g: &Multigraph) -> triflow_core::Result<bool> {
        let key = canonical_form(g);
        if let Some(&b) = self.nzf.get(&key) {
            return Ok(b);
        }
        let b = self.oracle.has_nzf(g, 3)?.is_some();
        self.nzf.insert(key, b);
        Ok(b)
    }

    fn z3(&mut self, g: &Multigraph) -> triflow_core::Result<bool> {
        let key = canonical_form(g);
        if let Some(&b) = self.z3.get(&key) {
            return Ok(b);
        }
        let b = self.oracle.z3_connected(g)?.verdict;
        self.z3.insert(key, b);
        Ok(b)
    }
}

fn run_one(check: Check, g: &Multigraph, memo: &mut Memo<'_>) -> Result<Vec<Outcome>, Failure> {
    let single = |o: Result<Outcome, Failure>| o.map(|o| vec![o]);
    let tree = || {
        find_spanning_tritree(g)
            .ok_or_else(|| Failure::Check("corpus graph without a spanning triangle-tree".into()))
    };
    match check {
        Check::Nzf => {
            let t = tree()?;
            single((|| {
                let (yes, cert) = tryo!(decide_3nzf(g, &t));
                if cert.as_ref().is_some_and(|c| !verify_certificate(g, c)) {
                    return Ok(Outcome::Disagree("certificate does not replay".into()));
                }
                let o = tryo!(memo.nzf(g));
                Ok(if o == yes {
                    Outcome::Agree
                } else {
                    Outcome::Disagree(format!("decider {yes}, oracle {o}"))
                })
            })())
        }
        Check::Z3 => {
            let t = tree()?;
            single((|| {
                let (yes, cert) = tryo!(decide_z3(g, &t));
                if cert.as_ref().is_some_and(|c| !verify_certificate(g, c)) {
                    return Ok(Outcome::Disagree("certificate does not replay".into()));
                }
                let o = tryo!(memo.z3(g));
                Ok(if o == yes {
                    Outcome::Agree
                } else {
                    Outcome::Disagree(format!("decider {yes}, oracle {o}"))
                })
            })())
        }
        Check::Shortcut => {
            let t = tree()?;
            match few_3vertices_shortcut(g, &t) {
                Ok(Some(_)) => single((|| {
                    let o = tryo!(memo.nzf(g));
                    Ok(if o {
                        Outcome::Agree
                    } else {
                        Outcome::Disagree("few 3-vertices but no 3-flow".into())
                    })
                })()),
                Ok(None) => Ok(Vec::new()),
                Err(e) => single(skip_or_fail(e)),
            }
        }
        Check::Bull => {
            let mut out = Vec::new();
            for p in bull_pairs(g) {
                let h = bull_reduce(g, &p)
                    .map_err(|e| Failure::Check(format!("bull reduction failed: {e}")))?;
                out.push((|| {
                    let (a, b) = (tryo!(memo.nzf(g)), tryo!(memo.nzf(&h)));
                    if a != b {
                        return Ok(Outcome::Disagree(format!(
                            "3-flow {a} before reducing at {},{}, {b} after",
                            p.u, p.v
                        )));
                    }
                    if find_spanning_tritree(&h).is_some() {
                        let (a, b) = (tryo!(memo.z3(g)), tryo!(memo.z3(&h)));
                        if a != b {
                            return Ok(Outcome::Disagree(format!(
                                "Z3 {a} before reducing at {},{}, {b} after",
                                p.u, p.v
                            )));
                        }
                    }
                    Ok(Outcome::Agree)
                })()?);
            }
            Ok(out)
        }
        Check::S3 => single((|| {
            let Some(r) = certify_s3_with(g, memo.oracle) else {
                return Ok(Outcome::Disagree(
                    "no S3 certificate for two disjoint spanning triangle-trees".into(),
                ));
            };
            if !r.all_ok {
                return Ok(Outcome::Disagree(
                    "certified orientation failed on some boundary".into(),
                ));
            }
            let o = tryo!(memo.oracle.s3_member(g)).verdict;
            Ok(if o {
                Outcome::Agree
            } else {
                Outcome::Disagree("certified but the oracle disagrees".into())
            })
        })()),
    }
}

/// The graphs a check runs over: two-tree unions on at least 4 vertices
/// for `s3`, the spanning triangle-tree corpus otherwise.
fn instances(cfg: &Config, two_trees: bool) -> Vec<Multigraph> {
    let mut out = Vec::new();
    for k in (if two_trees { 4 } else { 3 })..=cfg.n {
        let gs = if two_trees {
            enumerate_double_tritrees(k)
        } else {
            enumerate_spanning_tritree_graphs(k, cfg.extra)
        };
        out.extend(
            gs.into_iter()
                .filter(|g| cfg.max_edges.is_none_or(|m| g.edge_count() <= m)),
        );
    }
    out
}

pub fn run(cfg: &Config) -> Result<CorpusReport, Failure> {
    if cfg.n < 3 {
        return Err(Failure::Input("--n must be at least 3".into()));
    }
    let mut checks: Vec<Check> = cfg.checks.clone();
    checks.sort();
    checks.dedup();
    let needs_corpus = checks.iter().any(|&c| c != Check::S3);
    let corpus = if needs_corpus {
        instances(cfg, false)
    } else {
        Vec::new()
    };
    let doubles = if checks.contains(&Check::S3) {
        instances(cfg, true)
    } else {
        Vec::new()
    };
    let mut memo = Memo {
        oracle: &cfg.oracle,
        nzf: BTreeMap::new(),
        z3: BTreeMap::new(),
    };
    let mut rows = Vec::new();
    let mut partial = false;
    for &check in &checks {
        let graphs = if check == Check::S3 {
            &doubles
        } else {
            &corpus
        };
        let mut row = CheckRow {
            check,
            instances: 0,
            agreed: 0,
            skipped: 0,
            disagreements: Vec::new(),
        };
        for g in graphs {
            for o in run_one(check, g, &mut memo)? {
                row.instances += 1;
                match o {
                    Outcome::Agree => row.agreed += 1,
                    Outcome::Skip => row.skipped += 1,
                    Outcome::Disagree(detail) => row.disagreements.push(Disagreement {
                        fingerprint: format!("{:016x}", fingerprint(g)),
                        detail,
                    }),
                }
            }
        }
        partial |= row.skipped > 0;
        rows.push(row);
    }
    Ok(CorpusReport {
        n: cfg.n,
        extra: cfg.extra,
        max_edges: cfg.max_edges,
        graphs: corpus.len() + doubles.len(),
        partial,
        checks: rows,
    })
}
