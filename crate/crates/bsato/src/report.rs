//! Serializable report types emitted by the command line: versioned with
//! `schema: 1`, rationals as `"p/q"` strings, big integers as decimal
//! strings, hyperplane and variable indices 1-based.  Every report also
//! renders as human-readable text.

use serde::{Deserialize, Serialize};

use crate::arrangement::{one_based, Analysis, Arrangement, DenseEdge};
use crate::error::Error;
use crate::fs::{BsCheck, EulerWitness, FsElement};
use crate::homog::ScreenReport;
use crate::lattice::{AomotoData, ChiData, NbcData};
use crate::poly::TermRecord;
use crate::rat::{to_q, to_z, Q, Z};
use crate::weyl::{IdealMembership, WeylOperator};

pub const SCHEMA: u32 = 1;

/// Arrangement input file: `{n, forms, mults?}`, multiplicities defaulting
/// to 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrangementFile {
    pub n: usize,
    pub forms: Vec<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mults: Option<Vec<u32>>,
}

impl ArrangementFile {
    pub fn to_arrangement(&self) -> Result<Arrangement, Error> {
        let forms: Vec<Vec<crate::rat::Rat>> = self
            .forms
            .iter()
            .map(|row| row.iter().map(|q| q.0.clone()).collect())
            .collect();
        let mults = self.mults.clone().unwrap_or_else(|| vec![1; forms.len()]);
        Arrangement::new(self.n, forms, mults)
    }

    pub fn from_arrangement(a: &Arrangement) -> Self {
        ArrangementFile {
            n: a.n(),
            forms: a.forms().iter().map(|row| to_q(row)).collect(),
            mults: Some(a.mults().to_vec()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenseEdgeReport {
    pub support: Vec<usize>,
    pub dim: usize,
    pub sum_mult: u64,
    pub r_value: Q,
}

impl From<&DenseEdge> for DenseEdgeReport {
    fn from(e: &DenseEdge) -> Self {
        DenseEdgeReport {
            support: one_based(&e.support),
            dim: e.dim,
            sum_mult: e.sum_mult,
            r_value: Q(e.r_value.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionRReport {
    pub pass: bool,
    pub violators: Vec<DenseEdgeReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictReport {
    pub applies: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<Q>,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: u32,
    pub n: usize,
    pub r: usize,
    pub d: u64,
    pub indecomposable: bool,
    pub dense_edges: Vec<DenseEdgeReport>,
    #[serde(rename = "condition_R")]
    pub condition_r: ConditionRReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon_perturbed: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<Vec<i64>>,
    #[serde(rename = "N", default, skip_serializing_if = "Option::is_none")]
    pub capital_n: Option<Z>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residues: Option<Vec<Q>>,
    pub verdict: VerdictReport,
}

impl From<&Analysis> for AnalysisReport {
    fn from(a: &Analysis) -> Self {
        AnalysisReport {
            schema: SCHEMA,
            n: a.n,
            r: a.r,
            d: a.d,
            indecomposable: a.indecomposable,
            dense_edges: a.dense_edges.iter().map(DenseEdgeReport::from).collect(),
            condition_r: ConditionRReport {
                pass: a.condition_r.pass,
                violators: a
                    .condition_r
                    .violators
                    .iter()
                    .map(DenseEdgeReport::from)
                    .collect(),
            },
            epsilon: a.epsilon.as_ref().map(|e| to_q(&e.values)),
            epsilon_perturbed: a.epsilon_perturbed.as_ref().map(|e| to_q(&e.values)),
            mu: a.mu.as_ref().map(|m| m.mu.clone()),
            capital_n: a.mu.as_ref().map(|m| Z(m.capital_n.clone())),
            residues: a.mu.as_ref().map(|m| to_q(&m.residues)),
            verdict: VerdictReport {
                applies: a.verdict.applies,
                root: a.verdict.root.clone().map(Q),
                reason: a.verdict.reason.clone(),
            },
        }
    }
}

fn fmt_q_list(values: &[Q]) -> String {
    let parts: Vec<String> = values.iter().map(|q| q.0.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn fmt_support(support: &[usize]) -> String {
    let parts: Vec<String> = support.iter().map(|j| j.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl AnalysisReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "arrangement: n = {}, r = {}, d = {}\n",
            self.n, self.r, self.d
        ));
        out.push_str(&format!(
            "indecomposable: {}\n",
            if self.indecomposable { "yes" } else { "no" }
        ));
        out.push_str("dense edges:\n");
        for e in &self.dense_edges {
            out.push_str(&format!(
                "  {} dim {} mult {} value {}\n",
                fmt_support(&e.support),
                e.dim,
                e.sum_mult,
                e.r_value.0
            ));
        }
        out.push_str(&format!(
            "nonresonance condition: {}\n",
            if self.condition_r.pass {
                "PASS"
            } else {
                "FAIL"
            }
        ));
        for v in &self.condition_r.violators {
            out.push_str(&format!(
                "  violator {} with positive integer value {}\n",
                fmt_support(&v.support),
                v.r_value.0
            ));
        }
        if let Some(eps) = &self.epsilon {
            out.push_str(&format!("epsilon: {}\n", fmt_q_list(eps)));
        }
        if let Some(eps) = &self.epsilon_perturbed {
            out.push_str(&format!("epsilon (perturbed): {}\n", fmt_q_list(eps)));
        }
        if let (Some(mu), Some(n)) = (&self.mu, &self.capital_n) {
            let mus: Vec<String> = mu.iter().map(|m| m.to_string()).collect();
            out.push_str(&format!("mu: ({})\nN: {}\n", mus.join(", "), n.0));
        }
        if let Some(res) = &self.residues {
            out.push_str(&format!("residues: {}\n", fmt_q_list(res)));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict.reason));
        out
    }
}

/// One operator term; in normal-form lists `x` factors stand left of `d`
/// factors, in anti-normal lists `d` factors stand left of `x` factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OperatorTermRecord {
    pub coeff: Q,
    pub x_exps: Vec<u32>,
    pub d_exps: Vec<u32>,
    pub s_pow: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizeReport {
    pub schema: u32,
    pub n: usize,
    pub normal_form: String,
    pub terms: Vec<OperatorTermRecord>,
    pub antinormal: Vec<OperatorTermRecord>,
}

impl NormalizeReport {
    pub fn new(op: &WeylOperator) -> Self {
        let terms = op
            .terms()
            .map(|((beta, alpha, k), c)| OperatorTermRecord {
                coeff: Q(c.clone()),
                x_exps: beta.0.clone(),
                d_exps: alpha.0.clone(),
                s_pow: *k,
            })
            .collect();
        let antinormal = op
            .anti_normal_form()
            .into_iter()
            .map(|((delta, gamma, k), c)| OperatorTermRecord {
                coeff: Q(c),
                x_exps: gamma.0,
                d_exps: delta.0,
                s_pow: k,
            })
            .collect();
        NormalizeReport {
            schema: SCHEMA,
            n: op.n(),
            normal_form: op.to_string(),
            terms,
            antinormal,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "normal form: {}\nterms: {} (x left of d), anti-normal terms: {} (d left of x)\n",
            self.normal_form,
            self.terms.len(),
            self.antinormal.len()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub gamma: Vec<u32>,
    pub sum: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartReport {
    pub k: i64,
    pub vacuous: bool,
    pub failures: Vec<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealCheckReport {
    pub schema: u32,
    pub in_ideal: bool,
    pub sigma: Q,
    pub parts: Vec<PartReport>,
}

impl IdealCheckReport {
    pub fn new(membership: &IdealMembership, sigma: crate::rat::Rat) -> Self {
        IdealCheckReport {
            schema: SCHEMA,
            in_ideal: membership.in_ideal,
            sigma: Q(sigma),
            parts: membership
                .parts
                .iter()
                .map(|p| PartReport {
                    k: p.k,
                    vacuous: p.vacuous,
                    failures: p
                        .failures
                        .iter()
                        .map(|(gamma, sum)| FailureRecord {
                            gamma: gamma.0.clone(),
                            sum: Q(sum.clone()),
                        })
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "membership in the coordinate ideal: {}\nsigma invariant: {}\n",
            if self.in_ideal { "yes" } else { "no" },
            self.sigma.0
        );
        for p in &self.parts {
            if p.vacuous {
                out.push_str(&format!("  graded part {}: vacuous\n", p.k));
            } else if p.failures.is_empty() {
                out.push_str(&format!("  graded part {}: all sums vanish\n", p.k));
            } else {
                for f in &p.failures {
                    out.push_str(&format!(
                        "  graded part {}: gamma {:?} sums to {}\n",
                        p.k, f.gamma, f.sum.0
                    ));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnihilatorReport {
    pub schema: u32,
    pub annihilates: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub residual: Option<String>,
}

impl AnnihilatorReport {
    pub fn new(annihilates: bool, residual: Option<&FsElement>) -> Self {
        AnnihilatorReport {
            schema: SCHEMA,
            annihilates,
            residual: residual.map(|r| r.to_string()),
        }
    }

    pub fn to_text(&self) -> String {
        match &self.residual {
            None => "annihilates f^s: yes\n".into(),
            Some(r) => format!("annihilates f^s: no\nresidual: {r}\n"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BsCheckReport {
    pub schema: u32,
    pub holds: bool,
    pub residual: String,
}

impl BsCheckReport {
    pub fn new(check: &BsCheck) -> Self {
        BsCheckReport {
            schema: SCHEMA,
            holds: check.holds,
            residual: check.residual.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        if self.holds {
            "the pair identity P f^{s+1} = b(s) f^s holds\n".into()
        } else {
            format!(
                "the pair identity P f^{{s+1}} = b(s) f^s FAILS\nresidual: {}\n",
                self.residual
            )
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FsApplyReport {
    pub schema: u32,
    pub base: Vec<TermRecord>,
    pub fpow: u32,
    /// Numerator coefficients by ascending power of `s`.
    pub numerator: Vec<Vec<TermRecord>>,
    pub display: String,
}

impl FsApplyReport {
    pub fn new(e: &FsElement) -> Self {
        FsApplyReport {
            schema: SCHEMA,
            base: e.base().to_records(),
            fpow: e.fpow(),
            numerator: e
                .numerator()
                .coeffs()
                .iter()
                .map(|p| p.to_records())
                .collect(),
            display: e.to_string(),
        }
    }

    pub fn to_text(&self) -> String {
        format!("{}\n", self.display)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EulerWitnessReport {
    pub schema: u32,
    pub n: usize,
    pub d: u32,
    pub root: Q,
    pub verified: bool,
}

impl EulerWitnessReport {
    pub fn new(w: &EulerWitness) -> Self {
        EulerWitnessReport {
            schema: SCHEMA,
            n: w.n,
            d: w.d,
            root: Q(w.root.clone()),
            verified: w.verified,
        }
    }

    pub fn to_text(&self) -> String {
        format!(
            "homogeneous of degree {} in {} variables\nwitness identity for the root {}: {}\n",
            self.d,
            self.n,
            self.root.0,
            if self.verified { "verified" } else { "FAILED" }
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitRecord {
    pub s_vars: Vec<usize>,
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<(Q, Q)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<Q>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenJson {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_relation: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub euler_certificate: Option<Vec<Q>>,
    pub splits: Vec<SplitRecord>,
    pub separable: Vec<Vec<usize>>,
    pub screen_verdict: String,
    pub note: String,
}

impl ScreenJson {
    pub fn new(report: &ScreenReport) -> Self {
        let splits: Vec<SplitRecord> = report
            .witnesses
            .iter()
            .map(|w| SplitRecord {
                s_vars: one_based(&w.s_vars),
                k: w.k,
                coefficients: w
                    .coefficients
                    .as_ref()
                    .map(|(a, b)| (Q(a.clone()), Q(b.clone()))),
                relation: w.relation.as_ref().map(|r| to_q(r)),
            })
            .collect();
        let screen_verdict = if splits.is_empty() {
            "no bidegree-pure coordinate split: the screened hypothesis survives this frame"
                .to_string()
        } else {
            "bidegree-pure coordinate split found: the screened hypothesis fails in this frame"
                .to_string()
        };
        ScreenJson {
            schema: SCHEMA,
            euler_relation: report.euler.as_ref().map(|r| to_q(&r.coefficients)),
            euler_certificate: report.euler_certificate.as_ref().map(|c| to_q(c)),
            splits,
            separable: report
                .separable_splits
                .iter()
                .map(|s| one_based(s))
                .collect(),
            screen_verdict,
            note: report.note.clone(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.euler_relation {
            Some(c) => out.push_str(&format!("relation coefficients: {}\n", fmt_q_list(c))),
            None => out
                .push_str("relation: infeasible (all-ones vector lies in the exponent row span)\n"),
        }
        for sp in &self.splits {
            out.push_str(&format!(
                "bidegree-pure split S = {} with k = {}\n",
                fmt_support(&sp.s_vars),
                sp.k
            ));
        }
        for s in &self.separable {
            out.push_str(&format!("separable along S = {}\n", fmt_support(s)));
        }
        out.push_str(&format!("{}\n({})\n", self.screen_verdict, self.note));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AomotoReport {
    pub lambda: Vec<Q>,
    pub betti: Vec<u64>,
    pub ranks: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeReport {
    pub schema: u32,
    /// Ascending coefficients of the characteristic polynomial.
    pub char_poly: Vec<Z>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_projective: Option<Z>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub predicted_top_betti: Option<Z>,
    pub nbc_counts: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub aomoto: Option<AomotoReport>,
}

impl LatticeReport {
    pub fn new(
        char_poly: &[num_bigint::BigInt],
        chi: Option<&ChiData>,
        nbc: &NbcData,
        aomoto: Option<(&[crate::rat::Rat], &AomotoData)>,
    ) -> Self {
        LatticeReport {
            schema: SCHEMA,
            char_poly: to_z(char_poly),
            chi_projective: chi.map(|c| Z(c.chi.clone())),
            predicted_top_betti: chi.map(|c| Z(num_traits::sign::abs(c.chi.clone()))),
            nbc_counts: nbc.counts.clone(),
            aomoto: aomoto.map(|(lambda, data)| AomotoReport {
                lambda: to_q(lambda),
                betti: data.betti.clone(),
                ranks: data.ranks.clone(),
            }),
        }
    }

    pub fn to_text(&self) -> String {
        let coeffs: Vec<String> = self.char_poly.iter().map(|z| z.0.to_string()).collect();
        let mut out = format!(
            "characteristic polynomial coefficients (ascending): [{}]\n",
            coeffs.join(", ")
        );
        if let Some(chi) = &self.chi_projective {
            out.push_str(&format!("projective Euler characteristic: {}\n", chi.0));
        }
        if let Some(b) = &self.predicted_top_betti {
            out.push_str(&format!("predicted top Betti number: {}\n", b.0));
        }
        let counts: Vec<String> = self.nbc_counts.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("nbc counts by degree: ({})\n", counts.join(", ")));
        if let Some(a) = &self.aomoto {
            let betti: Vec<String> = a.betti.iter().map(|b| b.to_string()).collect();
            out.push_str(&format!(
                "weighted complex cohomology dimensions: ({})\n",
                betti.join(", ")
            ));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelftestReport {
    pub schema: u32,
    pub suites: Vec<SuiteReport>,
    pub ok: bool,
}

impl SelftestReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            out.push_str(&format!(
                "{}: {}/{} cases pass\n",
                s.name,
                s.cases - s.failures,
                s.cases
            ));
        }
        out.push_str(if self.ok {
            "selftest: ok\n"
        } else {
            "selftest: FAILED\n"
        });
        out
    }
}
