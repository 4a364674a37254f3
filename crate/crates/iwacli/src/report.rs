//! Serializable report shapes for stdout.

use serde::Serialize;

use iwacore::harness::SuiteReport;
use iwacore::module::{GrowthTrace, InvariantReport, Method, Reported};

#[derive(Debug, Serialize)]
pub struct ReportedOut {
    pub value: u64,
    pub certified: bool,
}

impl From<Reported> for ReportedOut {
    fn from(r: Reported) -> Self {
        ReportedOut {
            value: r.value(),
            certified: r.is_certified(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantOut {
    pub route: &'static str,
    pub rank: usize,
    pub mu: ReportedOut,
    pub lambda: ReportedOut,
    pub precision_ok: bool,
}

impl From<&InvariantReport> for InvariantOut {
    fn from(r: &InvariantReport) -> Self {
        InvariantOut {
            route: match r.method {
                Method::CharGenerator => "char",
                Method::Growth => "growth",
            },
            rank: r.rank,
            mu: r.mu.into(),
            lambda: r.lambda.into(),
            precision_ok: r.precision_ok,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct InvariantsOut {
    pub reports: Vec<InvariantOut>,
    pub notes: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct GrowthRowOut {
    pub n: u32,
    pub pn: u64,
    pub e: usize,
    pub delta: i64,
}

#[derive(Debug, Serialize)]
pub struct GrowthOut {
    pub p: u64,
    pub entries: Vec<GrowthRowOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<u64>,
}

impl From<&GrowthTrace> for GrowthOut {
    fn from(t: &GrowthTrace) -> Self {
        let mut prev = 0i64;
        let entries = t
            .entries
            .iter()
            .map(|&(n, e)| {
                let delta = e as i64 - prev;
                prev = e as i64;
                GrowthRowOut {
                    n,
                    pn: t.p.pow(n),
                    e,
                    delta,
                }
            })
            .collect();
        GrowthOut {
            p: t.p,
            entries,
            slope: t.slope,
        }
    }
}

impl GrowthOut {
    /// CSV with the mandatory header row `n,pn,e,delta`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,pn,e,delta\n");
        for row in &self.entries {
            out.push_str(&format!("{},{},{},{}\n", row.n, row.pn, row.e, row.delta));
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct FailureOut {
    pub seed: u64,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct DefectOut {
    pub instance: String,
    pub twist: i64,
    pub level: u32,
    pub defect: i64,
    pub fixed_dim: usize,
}

#[derive(Debug, Serialize)]
pub struct SuiteOut {
    pub suite: String,
    pub trials: u64,
    pub passes: u64,
    pub failures: Vec<FailureOut>,
    pub defects: Vec<DefectOut>,
    pub notes: Vec<String>,
}

impl From<&SuiteReport> for SuiteOut {
    fn from(r: &SuiteReport) -> Self {
        SuiteOut {
            suite: r.suite.clone(),
            trials: r.trials,
            passes: r.passes,
            failures: r
                .failures
                .iter()
                .map(|f| FailureOut {
                    seed: f.seed,
                    message: f.message.clone(),
                })
                .collect(),
            defects: r
                .defects
                .iter()
                .map(|d| DefectOut {
                    instance: d.instance.clone(),
                    twist: d.twist,
                    level: d.level,
                    defect: d.defect,
                    fixed_dim: d.fixed_dim,
                })
                .collect(),
            notes: r.notes.clone(),
        }
    }
}
