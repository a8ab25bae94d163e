//! Directed weighted influence networks.
//!
//! `w[i][j]` is the influence of individual `j` on individual `i`, so row `i`
//! lists the people `i` listens to. Networks are dense: the instances this
//! crate targets have tens of nodes, not thousands.

use serde::{Deserialize, Serialize};

use crate::dynamics::BiasParams;
use crate::error::{Error, Result};
use crate::spectral;

#[derive(Debug, Clone, PartialEq)]
pub struct SocialNetwork {
    w: Vec<Vec<f64>>,
    labels: Option<Vec<String>>,
    weighted: bool,
}

/// Outcome of checking the bias parameters and the network against the
/// standing assumptions of the model. A failing check is data, not an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssumptionReport {
    pub beta_ge_gamma: bool,
    pub norm_inf: f64,
    pub norm_1: f64,
    /// `1 - max(‖W‖∞, ‖W‖₁)`
    pub norm_gap: f64,
    /// `max(2β, 4γ)`
    pub required_gap: f64,
    pub norm_condition_ok: bool,
    pub positive_eigvec_ok: bool,
    pub lambda: Option<f64>,
    pub overall_ok: bool,
}

impl AssumptionReport {
    /// Human-readable reasons for every failed flag.
    pub fn violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.beta_ge_gamma {
            out.push("bias ordering violated: need beta >= gamma >= 0".to_string());
        }
        if !self.norm_condition_ok {
            out.push(format!(
                "norm condition violated: 1 - max(|W|inf, |W|1) = {:.6} < max(2 beta, 4 gamma) = {:.6}",
                self.norm_gap, self.required_gap
            ));
        }
        if !self.positive_eigvec_ok {
            out.push("positivity violated: W has no strictly positive dominant eigenvector".to_string());
        }
        out
    }
}

#[derive(Deserialize)]
struct JsonNetwork {
    n: usize,
    #[serde(default)]
    edges: Vec<Vec<f64>>,
    #[serde(default)]
    labels: Option<Vec<String>>,
}

impl SocialNetwork {
    /// Build from a dense row-major matrix, validating the invariants.
    pub fn from_dense(w: Vec<Vec<f64>>) -> Result<Self> {
        let n = w.len();
        if n == 0 {
            return Err(Error::InvalidNetwork("empty network".into()));
        }
        for (i, row) in w.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidNetwork(format!(
                    "row {i} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::InvalidNetwork(format!(
                        "w[{i}][{j}] = {v} is not a nonnegative number"
                    )));
                }
                if i == j && v != 0.0 {
                    return Err(Error::InvalidNetwork(format!("self-loop at node {i}")));
                }
            }
        }
        Ok(Self {
            w,
            labels: None,
            weighted: true,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: labels.len(),
            });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Parse the edge-list text format.
    ///
    /// Each nonblank line not starting with `#` is either `i j w` (weight `w > 0`
    /// on `W[i][j]`, i.e. `j` influences `i`) or `i j` (presence only; weights
    /// come later from [`krackhardt_weights`](Self::krackhardt_weights)). Indices
    /// are 0-based and `n` is one more than the largest index seen. A document
    /// must not mix the two line shapes.
    pub fn load_edge_list(text: &str) -> Result<Self> {
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let mut weighted: Option<bool> = None;
        let mut seen = std::collections::HashSet::new();

        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            if fields.len() != 2 && fields.len() != 3 {
                return Err(parse_err(format!("expected `i j` or `i j w`, got {:?}", line)));
            }
            let i: usize = fields[0]
                .parse()
                .map_err(|_| parse_err(format!("bad node index {:?}", fields[0])))?;
            let j: usize = fields[1]
                .parse()
                .map_err(|_| parse_err(format!("bad node index {:?}", fields[1])))?;
            let has_weight = fields.len() == 3;
            match weighted {
                None => weighted = Some(has_weight),
                Some(prev) if prev != has_weight => {
                    return Err(parse_err("mixes weighted and unweighted edges".into()));
                }
                _ => {}
            }
            let w = if has_weight {
                let w: f64 = fields[2]
                    .parse()
                    .map_err(|_| parse_err(format!("bad weight {:?}", fields[2])))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(parse_err(format!("weight must be positive, got {w}")));
                }
                w
            } else {
                1.0
            };
            if i == j {
                return Err(Error::InvalidNetwork(format!("line {line_no}: self-loop at node {i}")));
            }
            if !seen.insert((i, j)) {
                return Err(Error::InvalidNetwork(format!("line {line_no}: duplicate edge {i} {j}")));
            }
            edges.push((i, j, w));
        }

        let n = edges.iter().map(|&(i, j, _)| i.max(j) + 1).max().unwrap_or(0);
        if n == 0 {
            return Err(Error::InvalidNetwork("empty network".into()));
        }
        let mut w = vec![vec![0.0; n]; n];
        for (i, j, v) in edges {
            w[i][j] = v;
        }
        let mut net = Self::from_dense(w)?;
        net.weighted = weighted.unwrap_or(true);
        Ok(net)
    }

    /// Parse `{"n": int, "edges": [[i, j, w], ...], "labels": [...]}`.
    /// Edges given as `[i, j]` are presence-only, as in the text format.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: JsonNetwork = serde_json::from_str(text)?;
        Self::from_json_parts(doc.n, &doc.edges, doc.labels)
    }

    pub(crate) fn from_json_value(v: &serde_json::Value) -> Result<Self> {
        let doc: JsonNetwork = serde_json::from_value(v.clone())?;
        Self::from_json_parts(doc.n, &doc.edges, doc.labels)
    }

    fn from_json_parts(n: usize, edges: &[Vec<f64>], labels: Option<Vec<String>>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidNetwork("empty network".into()));
        }
        let mut w = vec![vec![0.0; n]; n];
        let mut weighted = None;
        for (k, e) in edges.iter().enumerate() {
            let bad = |msg: String| Error::InvalidNetwork(format!("edge #{k}: {msg}"));
            if e.len() != 2 && e.len() != 3 {
                return Err(bad(format!("expected [i, j] or [i, j, w], got {e:?}")));
            }
            let as_index = |x: f64| -> Result<usize> {
                if x >= 0.0 && x.fract() == 0.0 && (x as usize) < n {
                    Ok(x as usize)
                } else {
                    Err(bad(format!("node index {x} out of range for n = {n}")))
                }
            };
            let (i, j) = (as_index(e[0])?, as_index(e[1])?);
            let has_weight = e.len() == 3;
            if *weighted.get_or_insert(has_weight) != has_weight {
                return Err(bad("mixes weighted and unweighted edges".into()));
            }
            let v = if has_weight { e[2] } else { 1.0 };
            if !(v.is_finite() && v > 0.0) {
                return Err(bad(format!("weight must be positive, got {v}")));
            }
            if i == j {
                return Err(bad(format!("self-loop at node {i}")));
            }
            if w[i][j] != 0.0 {
                return Err(bad(format!("duplicate edge {i} {j}")));
            }
            w[i][j] = v;
        }
        let mut net = Self::from_dense(w)?;
        net.weighted = weighted.unwrap_or(true);
        match labels {
            Some(l) => net.with_labels(l),
            None => Ok(net),
        }
    }

    /// Replace every present edge `j -> i` with `1 / (25 + d_i)`, where `d_i`
    /// is the number of nonzero entries in row `i` (the in-degree of `i`).
    /// Absent edges stay zero.
    pub fn krackhardt_weights(&self) -> Self {
        let w = self
            .w
            .iter()
            .map(|row| {
                let deg = row.iter().filter(|&&v| v > 0.0).count() as f64;
                let weight = 1.0 / (25.0 + deg);
                row.iter().map(|&v| if v > 0.0 { weight } else { 0.0 }).collect()
            })
            .collect();
        Self {
            w,
            labels: self.labels.clone(),
            weighted: true,
        }
    }

    pub fn n(&self) -> usize {
        self.w.len()
    }

    pub fn weights(&self) -> &[Vec<f64>] {
        &self.w
    }

    pub fn weight(&self, i: usize, j: usize) -> f64 {
        self.w[i][j]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// False when the network was loaded from presence-only edges and has not
    /// been through [`krackhardt_weights`](Self::krackhardt_weights).
    pub fn is_weighted(&self) -> bool {
        self.weighted
    }

    /// Number of nonzero entries in row `i`.
    pub fn in_degree(&self, i: usize) -> usize {
        self.w[i].iter().filter(|&&v| v > 0.0).count()
    }

    pub fn row_sums(&self) -> Vec<f64> {
        self.w.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<f64> {
        let n = self.n();
        (0..n).map(|j| self.w.iter().map(|row| row[j]).sum()).collect()
    }

    /// ‖W‖∞, the largest row sum.
    pub fn norm_inf(&self) -> f64 {
        self.row_sums().into_iter().fold(0.0, f64::max)
    }

    /// ‖W‖₁, the largest column sum.
    pub fn norm_1(&self) -> f64 {
        self.col_sums().into_iter().fold(0.0, f64::max)
    }

    /// `W x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.w.iter().map(|row| crate::linalg::dot(row, x)).collect()
    }

    /// `Wᵀ x`
    pub fn apply_transpose(&self, x: &[f64]) -> Vec<f64> {
        let n = self.n();
        let mut out = vec![0.0; n];
        for (row, xi) in self.w.iter().zip(x) {
            for (o, v) in out.iter_mut().zip(row) {
                *o += v * xi;
            }
        }
        out
    }

    /// Multiply every weight by `t`.
    pub fn scaled(&self, t: f64) -> Result<Self> {
        let w = self.w.iter().map(|r| r.iter().map(|v| v * t).collect()).collect();
        let mut net = Self::from_dense(w)?;
        net.labels = self.labels.clone();
        Ok(net)
    }
}

/// Positive-eigenvector tolerance after 1-norm normalization.
pub const POSITIVE_EIGVEC_TOL: f64 = 1e-10;

pub fn check_assumption1(net: &SocialNetwork, bias: &BiasParams) -> AssumptionReport {
    let beta_ge_gamma = bias.beta >= bias.gamma && bias.gamma >= 0.0;
    let norm_inf = net.norm_inf();
    let norm_1 = net.norm_1();
    let norm_gap = 1.0 - norm_inf.max(norm_1);
    let required_gap = (2.0 * bias.beta).max(4.0 * bias.gamma);
    let norm_condition_ok = norm_gap >= required_gap;

    let eig = spectral::dominant_eigenpair(net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER);
    let (positive_eigvec_ok, lambda) = match eig {
        Ok(sd) => (true, Some(sd.lambda)),
        Err(_) => (false, None),
    };

    AssumptionReport {
        beta_ge_gamma,
        norm_inf,
        norm_1,
        norm_gap,
        required_gap,
        norm_condition_ok,
        positive_eigvec_ok,
        lambda,
        overall_ok: beta_ge_gamma && norm_condition_ok && positive_eigvec_ok,
    }
}
