//! Trade-network representation: edge-list ingestion, Katz-Bonacich
//! centralities, validity bounds on the risk weight, and the network
//! integration partial order.

use std::collections::{HashMap, HashSet};

use nalgebra::{DMatrix, DVector};

use crate::allocation::LiquidityFn;
use crate::error::{Error, Result};
use crate::numerics::{self, Tolerances};

/// Margin around `r(w)` below which `beta` (or `1/lambda`) is rejected to
/// avoid near-singular solves.
pub(crate) const SPECTRAL_MARGIN: f64 = 1e-9;

/// Weighted directed trade network. Entry `w[(i, j)]` is the weight importer
/// `i` places on exporter `j`'s currency choice.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeNetwork {
    labels: Vec<String>,
    w: DMatrix<f64>,
}

impl TradeNetwork {
    /// Build a network from labels and a weight matrix, enforcing the zero
    /// diagonal, non-negative weights, and unique labels.
    pub fn new(labels: Vec<String>, w: DMatrix<f64>) -> Result<Self> {
        let n = labels.len();
        if w.nrows() != n || w.ncols() != n {
            return Err(Error::invalid("network", format!("weight matrix is {}x{}, expected {n}x{n}", w.nrows(), w.ncols())));
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.clone()) {
                return Err(Error::invalid("network", format!("duplicate label {l:?}")));
            }
        }
        for i in 0..n {
            if w[(i, i)] != 0.0 {
                return Err(Error::invalid("network", format!("non-zero diagonal at node {:?}", labels[i])));
            }
            for j in 0..n {
                let v = w[(i, j)];
                if !(v.is_finite() && v >= 0.0) {
                    return Err(Error::invalid("network", format!("weight ({i},{j}) = {v} must be finite and non-negative")));
                }
            }
        }
        Ok(TradeNetwork { labels, w })
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &DMatrix<f64> {
        &self.w
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Spectral radius of the weight matrix.
    pub fn spectral_radius(&self, tol: &Tolerances) -> Result<f64> {
        numerics::spectral_radius(&self.w, tol)
    }
}

/// Per-user transaction volumes with the cached total `M`.
#[derive(Debug, Clone, PartialEq)]
pub struct UserVolumes {
    m: Vec<f64>,
    total: f64,
}

impl UserVolumes {
    pub fn new(m: Vec<f64>) -> Result<Self> {
        if m.is_empty() {
            return Err(Error::invalid("volumes", "at least one user required"));
        }
        for (i, v) in m.iter().enumerate() {
            if !(v.is_finite() && *v > 0.0) {
                return Err(Error::invalid("volumes", format!("m[{i}] = {v} must be positive")));
            }
        }
        let total = m.iter().sum();
        Ok(UserVolumes { m, total })
    }

    pub fn uniform(n: usize, m: f64) -> Result<Self> {
        Self::new(vec![m; n])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.m
    }

    pub fn get(&self, i: usize) -> f64 {
        self.m[i]
    }

    pub fn n(&self) -> usize {
        self.m.len()
    }

    /// Total demand for international currencies, `M`.
    pub fn total(&self) -> f64 {
        self.total
    }

    pub fn scaled(&self, factor: f64) -> Result<Self> {
        Self::new(self.m.iter().map(|v| v * factor).collect())
    }
}

/// Parse an edge-list CSV with header `src,dst,weight` into a network.
///
/// Nodes appear in first-appearance order; absent edges have weight zero.
/// Duplicate `(src, dst)` rows and self-loops are errors.
pub fn load_edge_list(text: &str) -> Result<TradeNetwork> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    {
        let headers = reader
            .headers()
            .map_err(|e| Error::ParseError { line: 1, reason: e.to_string() })?;
        let expect = ["src", "dst", "weight"];
        if headers.len() != 3 || headers.iter().zip(expect).any(|(h, e)| h != e) {
            return Err(Error::ParseError {
                line: 1,
                reason: format!("header must be exactly `src,dst,weight`, got {:?}", headers.iter().collect::<Vec<_>>()),
            });
        }
    }

    let mut labels: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(usize, usize, f64, u64)> = Vec::new();
    let mut seen: HashSet<(usize, usize)> = HashSet::new();

    for record in reader.records() {
        let record = record.map_err(|e| Error::ParseError {
            line: e.position().map(|p| p.line()).unwrap_or(0),
            reason: e.to_string(),
        })?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        if record.len() != 3 {
            return Err(Error::ParseError { line, reason: format!("expected 3 fields, got {}", record.len()) });
        }
        let src = record[0].trim().to_string();
        let dst = record[1].trim().to_string();
        if src.is_empty() || dst.is_empty() {
            return Err(Error::ParseError { line, reason: "empty node label".into() });
        }
        let weight: f64 = record[2]
            .trim()
            .parse()
            .map_err(|_| Error::ParseError { line, reason: format!("weight {:?} is not a decimal number", &record[2]) })?;
        if !weight.is_finite() {
            return Err(Error::ParseError { line, reason: format!("weight {weight} is not finite") });
        }
        if weight < 0.0 {
            return Err(Error::NegativeWeight { line, weight });
        }
        if src == dst {
            return Err(Error::SelfLoop { line, label: src });
        }
        let si = *index.entry(src.clone()).or_insert_with(|| {
            labels.push(src.clone());
            labels.len() - 1
        });
        let di = *index.entry(dst.clone()).or_insert_with(|| {
            labels.push(dst.clone());
            labels.len() - 1
        });
        if !seen.insert((si, di)) {
            return Err(Error::DuplicateEdge { line, src, dst });
        }
        edges.push((si, di, weight, line));
    }

    let n = labels.len();
    if n == 0 {
        return Err(Error::ParseError { line: 1, reason: "edge list contains no rows".into() });
    }
    let mut w = DMatrix::zeros(n, n);
    for (i, j, weight, _) in edges {
        w[(i, j)] = weight;
    }
    TradeNetwork::new(labels, w)
}

/// Katz-Bonacich centrality `kappa = (I - lambda w)^{-1} 1`.
pub fn katz_bonacich(net: &TradeNetwork, lambda: f64, tol: &Tolerances) -> Result<DVector<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::invalid("lambda", format!("decay {lambda} must be positive")));
    }
    let r = net.spectral_radius(tol)?;
    if r > 0.0 {
        let limit = 1.0 / r;
        if lambda >= limit - 1e-12 {
            return Err(Error::DecayTooLarge { lambda, limit });
        }
    }
    let n = net.n();
    let m = DMatrix::identity(n, n) - net.weights() * lambda;
    numerics::solve_linear_vec(&m, &DVector::repeat(n, 1.0), tol)
}

/// Adjusted Katz-Bonacich centrality `(I - w/beta)^{-1} gamma`.
pub fn adjusted_katz(net: &TradeNetwork, beta: f64, gamma: &DVector<f64>, tol: &Tolerances) -> Result<DVector<f64>> {
    let r = net.spectral_radius(tol)?;
    if !(beta > 0.0) || beta <= r * (1.0 + SPECTRAL_MARGIN) {
        return Err(Error::BetaTooSmall { beta, bound: r });
    }
    if gamma.len() != net.n() {
        return Err(Error::invalid("gamma", format!("length {} does not match n = {}", gamma.len(), net.n())));
    }
    let n = net.n();
    let m = DMatrix::identity(n, n) - net.weights() / beta;
    numerics::solve_linear_vec(&m, gamma, tol)
}

/// Lower bound on `beta` guaranteeing a unique, finite, non-negative
/// two-currency allocation for every commitment pair in `[0,1]^2`.
pub fn beta_lower_bound_two(
    net: &TradeNetwork,
    vols: &UserVolumes,
    f_a: &LiquidityFn,
    f_b: &LiquidityFn,
    tol: &Tolerances,
) -> Result<f64> {
    beta_lower_bound_t(net, vols, &[f_a.clone(), f_b.clone()], tol)
}

/// T-currency analogue of the bound: liquidity gaps are taken at the
/// commitment extremes (`e = 1` against `e = 0`) so the bound covers every
/// profile.
pub fn beta_lower_bound_t(
    net: &TradeNetwork,
    vols: &UserVolumes,
    fs: &[LiquidityFn],
    tol: &Tolerances,
) -> Result<f64> {
    let n = net.n();
    if vols.n() != n {
        return Err(Error::invalid("volumes", "user count does not match the network"));
    }
    for f in fs {
        f.check_users(n)?;
    }
    let w = net.weights();
    let mut bound = 0.0f64;
    for i in 0..n {
        let spill: f64 = (0..n).map(|j| w[(i, j)] * vols.get(j)).sum();
        for ft in fs {
            for ftau in fs {
                let gap = ft.value(i, 1.0) - ftau.value(i, 0.0);
                bound = bound.max((spill + gap) / vols.get(i));
            }
        }
    }
    let r = net.spectral_radius(tol)?;
    Ok(bound.max(r + SPECTRAL_MARGIN))
}

/// Verdict of the elementwise integration partial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegrationOrder {
    StrictlyMore,
    Equal,
    Incomparable,
}

/// Compare `w_prime` against `w` under the integration partial order,
/// matching nodes by label.
pub fn is_more_integrated(w_prime: &TradeNetwork, w: &TradeNetwork) -> Result<IntegrationOrder> {
    if w_prime.n() != w.n() {
        return Err(Error::NodeSetMismatch {
            reason: format!("{} vs {} nodes", w_prime.n(), w.n()),
        });
    }
    // map base node order into w_prime's order by label
    let mut perm = Vec::with_capacity(w.n());
    for l in w.labels() {
        match w_prime.index_of(l) {
            Some(ix) => perm.push(ix),
            None => {
                return Err(Error::NodeSetMismatch { reason: format!("label {l:?} missing from the comparison network") })
            }
        }
    }
    let mut any_strict = false;
    let mut any_less = false;
    for i in 0..w.n() {
        for j in 0..w.n() {
            let base = w.weights()[(i, j)];
            let prime = w_prime.weights()[(perm[i], perm[j])];
            if prime > base {
                any_strict = true;
            } else if prime < base {
                any_less = true;
            }
        }
    }
    Ok(match (any_strict, any_less) {
        (_, true) if any_strict => IntegrationOrder::Incomparable,
        (_, true) => IntegrationOrder::Incomparable,
        (true, false) => IntegrationOrder::StrictlyMore,
        (false, false) => IntegrationOrder::Equal,
    })
}
