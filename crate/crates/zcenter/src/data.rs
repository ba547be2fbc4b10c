use serde::{Deserialize, Serialize};

pub type FEntry = (usize, usize, usize, usize, usize, usize, usize, usize, usize, usize, f64, f64);
pub type REntry = (usize, usize, usize, usize, usize, f64, f64);

fn default_tol() -> f64 {
    1e-9
}

/// Raw category file contents. Indices refer to positions in `simples`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct CategoryData {
    #[serde(default)]
    pub name: Option<String>,
    pub simples: Vec<String>,
    pub unit: usize,
    pub dual: Vec<usize>,
    /// `[a, b, c, N]` with N = N_{ab}^c > 0.
    pub fusion: Vec<(usize, usize, usize, usize)>,
    /// `[a, b, c, d, e, f, μ, ν, ρ, σ, re, im]`: the entry of F^{abc}_d in row (e, μ, ν), column (f, ρ, σ).
    #[serde(rename = "F")]
    pub f: Vec<FEntry>,
    /// `[a, b, c, μ, ν, re, im]`: the entry R^{ab}_c[μ, ν].
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<Vec<REntry>>,
    /// Pivotal scalar per simple; all ones when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pivotal: Option<Vec<(f64, f64)>>,
    #[serde(default = "default_tol")]
    pub tolerance: f64,
}

/// Raw algebra file contents.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraData {
    #[serde(default)]
    pub name: Option<String>,
    /// Category file path, relative to the algebra file.
    pub category: String,
    pub carrier: Vec<usize>,
    /// `[k, re, im]`: coefficient of the k-th copy of the unit inside the carrier.
    pub unit: Vec<(usize, f64, f64)>,
    /// `[a, i, b, j, c, k, μ, re, im]`: the product of copy i of a and copy j of b has
    /// coefficient (re, im) on copy k of c through fusion channel μ.
    pub mult: Vec<(usize, usize, usize, usize, usize, usize, usize, f64, f64)>,
}
