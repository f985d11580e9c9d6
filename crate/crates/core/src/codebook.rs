//! Layered angle-dense codebooks.
//!
//! Every construction is a tree: the root sits at the origin, the children of
//! a layer-ℓ node form a d-angle-dense arrangement of radius `r_{ℓ+1}` in the
//! orthogonal complement of all path vectors leading to it, and the leaves are
//! the codewords. A leaf is the sum of the path vectors on its root-to-leaf
//! path, and since those are mutually orthogonal its squared norm is `Σ r_ℓ²`.
//!
//! Full codebooks have exponentially many words, so builders sample at most
//! `K_ℓ` siblings per group. All error guarantees are per word and per pair,
//! which is what the sampled tree lets us verify.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{ChannelParams, RngSeed};
use crate::decoder::{DecoderSpec, LayerTest};
use crate::error::{Error, Result};
use crate::geometry::{greedy_angle_dense, Arrangement, PackingConfig, RealVector};

mod audit;

pub use audit::{CodebookAudit, PairSeparation, PowerAudit};

/// Consecutive rejections before a sibling group is declared saturated.
pub const DEFAULT_SATURATION_REJECTIONS: usize = 2000;

/// Threshold used by the asymptotic construction: `t = log2 n`.
pub fn paper_threshold(n: usize) -> f64 {
    (n as f64).log2()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum CodeKind {
    SingleLayer,
    MultiLayer { layers: usize, c: f64 },
    Universal { layers: usize, b: f64 },
    RateReliability { layers: usize, exponent: f64 },
}

impl CodeKind {
    pub fn name(&self) -> &'static str {
        match self {
            CodeKind::SingleLayer => "single",
            CodeKind::MultiLayer { .. } => "multi",
            CodeKind::Universal { .. } => "universal",
            CodeKind::RateReliability { .. } => "rr",
        }
    }
}

/// Geometry and decoding threshold of one layer.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LayerSpec {
    /// 1-based layer index.
    pub index: usize,
    pub radius: f64,
    pub subspace_dim: usize,
    pub min_projected_distance: f64,
    /// Half-width of the decoder acceptance interval.
    pub threshold: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CodeNode {
    /// `o_{s^ℓ}`: the sum of the path vectors from the root to this node.
    pub center: RealVector,
    /// Displacement from the parent center.
    pub path: RealVector,
    pub children: Vec<CodeNode>,
}

impl CodeNode {
    pub fn direction(&self) -> RealVector {
        self.path.scale(1.0 / self.path.norm())
    }
}

/// Root at the origin of `R^dim`; `children` are the layer-1 nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeTree {
    pub dim: usize,
    pub children: Vec<CodeNode>,
}

impl CodeTree {
    pub fn origin(&self) -> RealVector {
        RealVector::zeros(self.dim)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(into = "repr::CodebookRepr", try_from = "repr::CodebookRepr")]
pub struct Codebook {
    pub kind: CodeKind,
    pub n: usize,
    /// Channel the code was designed for; `None` for universal codes, whose
    /// construction uses neither σ nor P.
    pub channel: Option<ChannelParams>,
    pub layers: Vec<LayerSpec>,
    pub tree: CodeTree,
    /// Sibling-index path of every sampled word, in depth-first order. The
    /// word id is the position in this list.
    pub words: Vec<Vec<usize>>,
    pub sampled: bool,
    /// Sibling groups that stopped on saturation before their budget.
    pub saturated_groups: usize,
    /// Set when the outermost arrangement could hold only one point.
    pub degenerate: bool,
    pub seed: Option<RngSeed>,
}

impl Codebook {
    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn radii(&self) -> Vec<f64> {
        self.layers.iter().map(|l| l.radius).collect()
    }

    /// `Σ r_ℓ²`, the squared norm of every leaf.
    pub fn energy(&self) -> f64 {
        self.layers.iter().map(|l| l.radius * l.radius).sum()
    }

    pub fn word_path(&self, word: usize) -> Result<&[usize]> {
        self.words.get(word).map(Vec::as_slice).ok_or(Error::WordNotFound(word))
    }

    /// Nodes visited from layer 1 down to the end of `path`.
    pub fn path_nodes(&self, path: &[usize]) -> Result<Vec<&CodeNode>> {
        let mut out = Vec::with_capacity(path.len());
        let mut level = &self.tree.children;
        for &i in path {
            let node = level.get(i).ok_or_else(|| Error::UnknownPath(path.to_vec()))?;
            out.push(node);
            level = &node.children;
        }
        Ok(out)
    }

    pub fn codeword(&self, word: usize) -> Result<RealVector> {
        codeword_vector(self, self.word_path(word)?)
    }

    /// Per-layer projective tests identifying `word`.
    pub fn decoder_spec(&self, word: usize) -> Result<DecoderSpec> {
        let path = self.word_path(word)?;
        let nodes = self.path_nodes(path)?;
        let layers = nodes
            .iter()
            .zip(&self.layers)
            .map(|(node, spec)| LayerTest {
                direction: node.direction(),
                expected: spec.radius,
                threshold: spec.threshold,
            })
            .collect();
        DecoderSpec::new(word, layers)
    }

    /// First layer (1-based) at which two words take different branches.
    pub fn first_difference(&self, a: usize, b: usize) -> Result<Option<usize>> {
        let pa = self.word_path(a)?;
        let pb = self.word_path(b)?;
        Ok(pa.iter().zip(pb).position(|(x, y)| x != y).map(|i| i + 1))
    }

    /// Smallest sibling count at each layer over all sampled groups.
    pub fn layer_counts(&self) -> Vec<usize> {
        let mut counts = vec![usize::MAX; self.layers.len()];
        fn walk(children: &[CodeNode], depth: usize, counts: &mut [usize]) {
            if depth >= counts.len() {
                return;
            }
            counts[depth] = counts[depth].min(children.len());
            for c in children {
                walk(&c.children, depth + 1, counts);
            }
        }
        walk(&self.tree.children, 0, &mut counts);
        counts
    }

    /// Every sibling group as an [`Arrangement`], tagged with its layer.
    pub fn sibling_groups(&self) -> Vec<(usize, Arrangement)> {
        let mut out = Vec::new();
        fn walk(
            code: &Codebook,
            center: &RealVector,
            basis: &mut Vec<RealVector>,
            children: &[CodeNode],
            depth: usize,
            out: &mut Vec<(usize, Arrangement)>,
        ) {
            if children.is_empty() || depth >= code.layers.len() {
                return;
            }
            let spec = &code.layers[depth];
            out.push((
                spec.index,
                Arrangement {
                    center: center.clone(),
                    radius: spec.radius,
                    forbidden_basis: basis.clone(),
                    points: children.iter().map(|c| c.center.clone()).collect(),
                    min_projected_distance: spec.min_projected_distance,
                    saturated: false,
                    degenerate: false,
                },
            ));
            for c in children {
                basis.push(c.direction());
                walk(code, &c.center, basis, &c.children, depth + 1, out);
                basis.pop();
            }
        }
        walk(self, &self.tree.origin(), &mut Vec::new(), &self.tree.children, 0, &mut out);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("codebook serialization cannot fail")
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(s)
    }
}

/// The leaf vector `o_{s^L}` reached by `path`.
pub fn codeword_vector(code: &Codebook, path: &[usize]) -> Result<RealVector> {
    if path.len() != code.num_layers() {
        return Err(Error::UnknownPath(path.to_vec()));
    }
    let nodes = code.path_nodes(path)?;
    Ok(nodes.last().expect("at least one layer").center.clone())
}

fn check_counts(k_per_layer: &[usize], layers: usize) -> Result<()> {
    if k_per_layer.len() != layers {
        return Err(Error::InvalidParameter(format!(
            "need one sibling count per layer: got {} for {} layers",
            k_per_layer.len(),
            layers
        )));
    }
    if k_per_layer.contains(&0) {
        return Err(Error::InvalidParameter("sibling counts must be at least 1".into()));
    }
    Ok(())
}

fn check_layers(layers: usize, n: usize) -> Result<()> {
    if layers == 0 || layers > n {
        return Err(Error::InvalidParameter(format!(
            "number of layers must lie in [1, n] = [1, {n}], got {layers}"
        )));
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::InvalidParameter(format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

fn layer_specs(n: usize, radii: &[f64], d: f64, tau: f64) -> Vec<LayerSpec> {
    radii
        .iter()
        .enumerate()
        .map(|(i, &r)| LayerSpec {
            index: i + 1,
            radius: r,
            subspace_dim: n - i,
            min_projected_distance: d,
            threshold: tau,
        })
        .collect()
}

fn check_innermost(layers: &[LayerSpec]) -> Result<()> {
    let last = layers.last().expect("at least one layer");
    if last.radius < last.min_projected_distance {
        return Err(Error::DegenerateGeometry(format!(
            "innermost radius r_{} = {} is below d = {}",
            last.index, last.radius, last.min_projected_distance
        )));
    }
    Ok(())
}

/// Smallest block length `n ≥ 1` with `energy(n) ≤ n·P`, assuming
/// `energy(n)/n` is non-increasing in `n`. `None` if no `n < 2^62` works.
pub(crate) fn min_block_length(power: f64, energy: impl Fn(f64) -> f64) -> Option<u64> {
    let ok = |n: u64| energy(n as f64) <= n as f64 * power;
    if ok(1) {
        return Some(1);
    }
    let mut hi = 2u64;
    while !ok(hi) {
        if hi >= 1 << 62 {
            return None;
        }
        hi *= 2;
    }
    let mut lo = hi / 2;
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(hi)
}

fn build_tree<R: Rng + ?Sized>(
    n: usize,
    layers: &[LayerSpec],
    k_per_layer: &[usize],
    saturation_rejections: usize,
    rng: &mut R,
) -> Result<(CodeTree, Vec<Vec<usize>>, usize, bool)> {
    struct State<'a, R: ?Sized> {
        n: usize,
        layers: &'a [LayerSpec],
        k: &'a [usize],
        saturation: usize,
        rng: &'a mut R,
        saturated: usize,
        degenerate: bool,
        words: Vec<Vec<usize>>,
    }

    fn grow<R: Rng + ?Sized>(
        st: &mut State<'_, R>,
        center: &RealVector,
        basis: &mut Vec<RealVector>,
        prefix: &mut Vec<usize>,
    ) -> Result<Vec<CodeNode>> {
        let depth = basis.len();
        let spec = &st.layers[depth];
        let cfg = PackingConfig {
            radius: spec.radius,
            ambient_dim: st.n,
            subspace_dim: spec.subspace_dim,
            min_projected_distance: spec.min_projected_distance,
            max_points: st.k[depth],
            saturation_rejections: st.saturation,
            seed: 0,
        };
        let arrangement = greedy_angle_dense(&cfg, center, basis, st.rng)?;
        if arrangement.saturated {
            st.saturated += 1;
        }
        if arrangement.degenerate && depth == 0 {
            st.degenerate = true;
        }
        let mut nodes = Vec::with_capacity(arrangement.points.len());
        for (i, point) in arrangement.points.iter().enumerate() {
            let path = point - center;
            let child_center = center + &path;
            prefix.push(i);
            let children = if depth + 1 < st.layers.len() {
                basis.push(path.scale(1.0 / path.norm()));
                let c = grow(st, &child_center, basis, prefix)?;
                basis.pop();
                c
            } else {
                st.words.push(prefix.clone());
                Vec::new()
            };
            prefix.pop();
            nodes.push(CodeNode {
                center: child_center,
                path,
                children,
            });
        }
        Ok(nodes)
    }

    let mut st = State {
        n,
        layers,
        k: k_per_layer,
        saturation: saturation_rejections,
        rng,
        saturated: 0,
        degenerate: false,
        words: Vec::new(),
    };
    let children = grow(&mut st, &RealVector::zeros(n), &mut Vec::new(), &mut Vec::new())?;
    let tree = CodeTree { dim: n, children };
    Ok((tree, st.words, st.saturated, st.degenerate))
}

/// Single-layer code on the sphere of radius `√(nP)` with `d = 2σt` and
/// decoder threshold `σt`.
///
/// When `d` exceeds the sphere diameter the code has one word and the
/// `degenerate` flag set.
pub fn build_single_layer<R: Rng + ?Sized>(
    params: ChannelParams,
    t: f64,
    k: usize,
    rng: &mut R,
) -> Result<Codebook> {
    params.validate()?;
    check_positive("threshold t", t)?;
    check_counts(&[k], 1)?;
    let radius = params.budget().sqrt();
    let layers = layer_specs(params.n, &[radius], 2.0 * params.sigma * t, params.sigma * t);
    let (tree, words, saturated_groups, degenerate) =
        build_tree(params.n, &layers, &[k], DEFAULT_SATURATION_REJECTIONS, rng)?;
    Ok(Codebook {
        kind: CodeKind::SingleLayer,
        n: params.n,
        channel: Some(params),
        layers,
        tree,
        words,
        sampled: true,
        saturated_groups,
        degenerate,
        seed: None,
    })
}

/// Radii `(cn)^{1/2^ℓ}` of the multi-layer construction.
pub fn multi_layer_radii(n: usize, layers: usize, c: f64) -> Vec<f64> {
    let cn = c * n as f64;
    (1..=layers).map(|l| cn.powf(0.5f64.powi(l as i32))).collect()
}

/// Smallest block length for which the multi-layer radii meet `Σ r_ℓ² ≤ nP`.
pub fn multi_layer_min_block_length(layers: usize, c: f64, power: f64) -> Option<u64> {
    min_block_length(power, |n| {
        (1..=layers).map(|l| (c * n).powf(0.5f64.powi(l as i32 - 1))).sum()
    })
}

/// `L`-layer code with radii `(cn)^{1/2^ℓ}`, `d = 3σt` and thresholds `σt`.
/// With `L = 2` this is the double-layer construction.
pub fn build_multi_layer<R: Rng + ?Sized>(
    params: ChannelParams,
    layers: usize,
    c: f64,
    t: f64,
    k_per_layer: &[usize],
    rng: &mut R,
) -> Result<Codebook> {
    params.validate()?;
    check_layers(layers, params.n)?;
    check_positive("threshold t", t)?;
    check_counts(k_per_layer, layers)?;
    if !(c > 0.0 && c < params.power) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < c < P, got c = {c}, P = {}",
            params.power
        )));
    }
    let radii = multi_layer_radii(params.n, layers, c);
    let specs = layer_specs(params.n, &radii, 3.0 * params.sigma * t, params.sigma * t);
    let energy: f64 = radii.iter().map(|r| r * r).sum();
    if energy > params.budget() {
        return Err(Error::PowerViolation {
            energy,
            budget: params.budget(),
            min_n: multi_layer_min_block_length(layers, c, params.power).unwrap_or(u64::MAX),
        });
    }
    check_innermost(&specs)?;
    let (tree, words, saturated_groups, degenerate) =
        build_tree(params.n, &specs, k_per_layer, DEFAULT_SATURATION_REJECTIONS, rng)?;
    Ok(Codebook {
        kind: CodeKind::MultiLayer { layers, c },
        n: params.n,
        channel: Some(params),
        layers: specs,
        tree,
        words,
        sampled: true,
        saturated_groups,
        degenerate,
        seed: None,
    })
}

/// Radii `n^{(1-b)/2^ℓ}` of the universal construction.
pub fn universal_radii(n: usize, layers: usize, b: f64) -> Vec<f64> {
    (1..=layers)
        .map(|l| (n as f64).powf((1.0 - b) * 0.5f64.powi(l as i32)))
        .collect()
}

/// Smallest block length for which the universal radii satisfy `Σ r_ℓ² ≤ nP`.
pub fn universal_min_block_length(layers: usize, b: f64, power: f64) -> Option<u64> {
    min_block_length(power, |n| {
        (1..=layers).map(|l| n.powf((1.0 - b) * 0.5f64.powi(l as i32 - 1))).sum()
    })
}

/// Universal code: radii `n^{(1-b)/2^ℓ}`, `d = 3·t_abs`, thresholds `t_abs`.
/// No noise level or power constraint enters the construction; power
/// validity is audited later against whatever `P` the caller has.
pub fn build_universal<R: Rng + ?Sized>(
    n: usize,
    layers: usize,
    b: f64,
    t_abs: f64,
    k_per_layer: &[usize],
    rng: &mut R,
) -> Result<Codebook> {
    if n == 0 {
        return Err(Error::InvalidParameter("block length n must be at least 1".into()));
    }
    check_layers(layers, n)?;
    check_positive("threshold t_abs", t_abs)?;
    check_counts(k_per_layer, layers)?;
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidParameter(format!("need 0 < b < 1, got {b}")));
    }
    let radii = universal_radii(n, layers, b);
    let specs = layer_specs(n, &radii, 3.0 * t_abs, t_abs);
    check_innermost(&specs)?;
    let (tree, words, saturated_groups, degenerate) =
        build_tree(n, &specs, k_per_layer, DEFAULT_SATURATION_REJECTIONS, rng)?;
    Ok(Codebook {
        kind: CodeKind::Universal { layers, b },
        n,
        channel: None,
        layers: specs,
        tree,
        words,
        sampled: true,
        saturated_groups,
        degenerate,
        seed: None,
    })
}

/// Largest admissible error exponent `E0 = 9P/σ²`.
pub fn max_exponent(power: f64, sigma: f64) -> f64 {
    9.0 * power / (sigma * sigma)
}

fn check_exponent(params: &ChannelParams, exponent: f64) -> Result<()> {
    check_positive("error exponent E", exponent)?;
    let e0 = max_exponent(params.power, params.sigma);
    if exponent > e0 {
        return Err(Error::ExponentTooLarge { exponent, e0 });
    }
    Ok(())
}

/// Rate–reliability radii from the recursion `r_1 = √(Pn/2)`,
/// `r_{ℓ+1} = √(r_ℓ σ x / 6L)` with `x = √(2nE)`.
pub fn rr_radii_recursive(params: ChannelParams, layers: usize, exponent: f64) -> Vec<f64> {
    let x = (2.0 * params.n as f64 * exponent).sqrt();
    let mut radii = Vec::with_capacity(layers);
    let mut r = (params.budget() / 2.0).sqrt();
    for _ in 0..layers {
        radii.push(r);
        r = (r * params.sigma * x / (6.0 * layers as f64)).sqrt();
    }
    radii
}

/// The same radii in closed form: `r_ℓ = √(ρnE)·(P/2ρE)^{1/2^ℓ}` with
/// `ρ = (σ/(3√2·L))²`.
pub fn rr_radii_closed_form(params: ChannelParams, layers: usize, exponent: f64) -> Vec<f64> {
    let rho = (params.sigma / (3.0 * 2f64.sqrt() * layers as f64)).powi(2);
    let scale = (rho * params.n as f64 * exponent).sqrt();
    let base = params.power / (2.0 * rho * exponent);
    (1..=layers).map(|l| scale * base.powf(0.5f64.powi(l as i32))).collect()
}

/// Rate–reliability code: threshold `x = √(2nE)` (so `τ = σx`), `d = 3σx`
/// and the radius recursion above. Rejects `E > 9P/σ²`.
pub fn build_rate_reliability<R: Rng + ?Sized>(
    params: ChannelParams,
    layers: usize,
    exponent: f64,
    k_per_layer: &[usize],
    rng: &mut R,
) -> Result<Codebook> {
    params.validate()?;
    check_layers(layers, params.n)?;
    check_counts(k_per_layer, layers)?;
    check_exponent(&params, exponent)?;
    let x = (2.0 * params.n as f64 * exponent).sqrt();
    let radii = rr_radii_recursive(params, layers, exponent);
    let specs = layer_specs(params.n, &radii, 3.0 * params.sigma * x, params.sigma * x);
    let energy: f64 = radii.iter().map(|r| r * r).sum();
    if energy > params.budget() * (1.0 + 1e-12) {
        return Err(Error::PowerViolation {
            energy,
            budget: params.budget(),
            min_n: params.n as u64,
        });
    }
    check_innermost(&specs)?;
    let (tree, words, saturated_groups, degenerate) =
        build_tree(params.n, &specs, k_per_layer, DEFAULT_SATURATION_REJECTIONS, rng)?;
    Ok(Codebook {
        kind: CodeKind::RateReliability { layers, exponent },
        n: params.n,
        channel: Some(params),
        layers: specs,
        tree,
        words,
        sampled: true,
        saturated_groups,
        degenerate,
        seed: None,
    })
}

mod repr {
    //! Wire form: path vectors only; centers are rebuilt on load by the same
    //! summation the builders use, so a round trip is bit-exact.

    use super::*;

    #[derive(Serialize, Deserialize)]
    pub struct NodeRepr {
        pub path: RealVector,
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        pub children: Vec<NodeRepr>,
    }

    #[derive(Serialize, Deserialize)]
    pub struct CodebookRepr {
        pub kind: CodeKind,
        pub n: usize,
        pub channel: Option<ChannelParams>,
        pub layers: Vec<LayerSpec>,
        pub sampled: bool,
        pub saturated_groups: usize,
        pub degenerate: bool,
        pub seed: Option<RngSeed>,
        pub tree: Vec<NodeRepr>,
    }

    fn to_repr(nodes: &[CodeNode]) -> Vec<NodeRepr> {
        nodes
            .iter()
            .map(|n| NodeRepr {
                path: n.path.clone(),
                children: to_repr(&n.children),
            })
            .collect()
    }

    impl From<Codebook> for CodebookRepr {
        fn from(c: Codebook) -> Self {
            CodebookRepr {
                tree: to_repr(&c.tree.children),
                kind: c.kind,
                n: c.n,
                channel: c.channel,
                layers: c.layers,
                sampled: c.sampled,
                saturated_groups: c.saturated_groups,
                degenerate: c.degenerate,
                seed: c.seed,
            }
        }
    }

    fn from_repr(
        nodes: Vec<NodeRepr>,
        center: &RealVector,
        depth: usize,
        layers: usize,
        prefix: &mut Vec<usize>,
        words: &mut Vec<Vec<usize>>,
    ) -> Result<Vec<CodeNode>> {
        let mut out = Vec::with_capacity(nodes.len());
        for (i, node) in nodes.into_iter().enumerate() {
            center.check_dim(&node.path)?;
            let c = center + &node.path;
            prefix.push(i);
            if depth + 1 == layers {
                if !node.children.is_empty() {
                    return Err(Error::InvalidParameter("tree is deeper than its layer list".into()));
                }
                words.push(prefix.clone());
            } else if node.children.is_empty() {
                return Err(Error::InvalidParameter("tree is shallower than its layer list".into()));
            }
            let children = from_repr(node.children, &c, depth + 1, layers, prefix, words)?;
            prefix.pop();
            out.push(CodeNode {
                center: c,
                path: node.path,
                children,
            });
        }
        Ok(out)
    }

    impl TryFrom<CodebookRepr> for Codebook {
        type Error = Error;

        fn try_from(r: CodebookRepr) -> Result<Self> {
            if r.layers.is_empty() || r.n == 0 {
                return Err(Error::InvalidParameter("codebook needs n >= 1 and at least one layer".into()));
            }
            let mut words = Vec::new();
            let children = from_repr(r.tree, &RealVector::zeros(r.n), 0, r.layers.len(), &mut Vec::new(), &mut words)?;
            Ok(Codebook {
                kind: r.kind,
                n: r.n,
                channel: r.channel,
                layers: r.layers,
                tree: CodeTree { dim: r.n, children },
                words,
                sampled: r.sampled,
                saturated_groups: r.saturated_groups,
                degenerate: r.degenerate,
                seed: r.seed,
            })
        }
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    fn rng(seed: u64) -> rand_chacha::ChaCha8Rng {
        RngSeed::new(seed, 0).rng()
    }

    #[test]
    fn single_layer_example() {
        let p = ChannelParams::new(4, 1.0, 100.0).unwrap();
        let code = build_single_layer(p, 1.0, 3, &mut rng(1)).unwrap();
        assert_eq!(code.len(), 3);
        for w in 0..3 {
            assert!((code.codeword(w).unwrap().norm() - 20.0).abs() < 1e-12);
        }
        let audit = code.audit(None);
        assert!(audit.is_valid(), "{:?}", audit.violations);
        assert!(audit.groups.iter().all(|g| g.min_projected_distance >= 2.0));
    }

    #[test]
    fn single_layer_degenerate() {
        let p = ChannelParams::new(4, 1.0, 1.0).unwrap();
        // d = 2σt = 10 > 2√(nP) = 4
        let code = build_single_layer(p, 5.0, 8, &mut rng(1)).unwrap();
        assert_eq!(code.len(), 1);
        assert!(code.degenerate);
    }

    #[test]
    fn single_layer_2d_saturates_below_circle_capacity() {
        let p = ChannelParams::new(2, 1.0, 8.0).unwrap();
        for seed in 0..10 {
            let code = build_single_layer(p, 1.0, 50, &mut rng(seed)).unwrap();
            assert!(code.len() <= 6);
            assert_eq!(code.saturated_groups, 1);
        }
    }

    #[test]
    fn multi_layer_radii_and_counts() {
        let r = multi_layer_radii(256, 3, 1.0);
        for (got, want) in r.iter().zip([16.0, 4.0, 2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
        // σ = 0.1 keeps d = 0.6 below the innermost radius 2
        let p = ChannelParams::new(256, 0.1, 2.0).unwrap();
        let code = build_multi_layer(p, 3, 1.0, 2.0, &[4, 4, 4], &mut rng(2)).unwrap();
        assert_eq!(code.len(), 64);
        for w in 0..code.len() {
            let leaf = code.codeword(w).unwrap();
            assert!((leaf.norm_sq() - 276.0).abs() <= 1e-9 * 276.0);
        }
        let audit = code.audit(None);
        assert!(audit.is_valid(), "{:?}", audit.violations);
        assert!(audit.max_path_cosine <= 1e-9);
    }

    #[test]
    fn multi_layer_errors() {
        let p = ChannelParams::new(256, 1.0, 2.0).unwrap();
        assert!(matches!(
            build_multi_layer(p, 3, 1.0, 2.0, &[4, 4, 4], &mut rng(2)),
            Err(Error::DegenerateGeometry(_))
        ));
        assert!(build_multi_layer(p, 2, 2.5, 1.0, &[2, 2], &mut rng(2)).is_err());
        assert!(build_multi_layer(p, 2, 1.0, 1.0, &[2], &mut rng(2)).is_err());
        // c close to P: n + √n + ... exceeds nP at small n
        let p = ChannelParams::new(16, 0.01, 1.0).unwrap();
        match build_multi_layer(p, 2, 0.99, 1.0, &[2, 2], &mut rng(2)) {
            Err(Error::PowerViolation { min_n, .. }) => {
                assert_eq!(Some(min_n), multi_layer_min_block_length(2, 0.99, 1.0));
                let n = min_n as f64;
                assert!(0.99 * n + (0.99 * n).sqrt() <= n);
                let m = n - 1.0;
                assert!(0.99 * m + (0.99 * m).sqrt() > m);
            }
            other => panic!("expected PowerViolation, got {other:?}"),
        }
    }

    #[test]
    fn double_layer_power_arithmetic() {
        let r = multi_layer_radii(10_000, 2, 1.0);
        let energy: f64 = r.iter().map(|x| x * x).sum();
        assert!((energy - 10_100.0).abs() < 1e-9);
        assert!(energy <= 10_000.0 * 1.5);
    }

    #[test]
    fn universal_radii_example() {
        let r = universal_radii(256, 2, 0.2);
        assert!((r[0] - 9.189586839976281).abs() < 1e-9);
        assert!((r[1] - 3.0314331330207955).abs() < 1e-9);
    }

    #[test]
    fn universal_power_threshold() {
        let min_n = universal_min_block_length(2, 0.2, 1.0).unwrap();
        let e = |n: f64| n.powf(0.8) + n.powf(0.4);
        assert!(e(min_n as f64) <= min_n as f64);
        assert!(e(min_n as f64 - 1.0) > min_n as f64 - 1.0);

        let code = build_universal(256, 2, 0.2, 1.0, &[3, 3], &mut rng(4)).unwrap();
        assert!(code.channel.is_none());
        let audit = code.power_audit(1.0);
        assert_eq!(audit.min_n, Some(min_n));
        assert_eq!(audit.valid, 256 >= min_n);
    }

    #[test]
    fn rr_radii_example() {
        let p = ChannelParams::new(10_000, 1.0, 2.0).unwrap();
        let rec = rr_radii_recursive(p, 2, 0.01);
        let closed = rr_radii_closed_form(p, 2, 0.01);
        assert!((rec[0] - 100.0).abs() < 1e-12);
        let x = (2.0f64 * 10_000.0 * 0.01).sqrt();
        assert!((rec[1] - (100.0 * x / 12.0).sqrt()).abs() < 1e-12);
        assert!((rec[1] - 10.856).abs() < 1e-3);
        for (a, b) in rec.iter().zip(&closed) {
            assert!(((a - b) / a).abs() <= 1e-9);
        }
    }

    #[test]
    fn rr_admissibility_boundary() {
        let p = ChannelParams::new(64, 1.0, 1.0).unwrap();
        let e0 = max_exponent(1.0, 1.0);
        // at E0 the builder accepts the exponent; with L = 1 the geometry is fine
        let ok = build_rate_reliability(p, 1, e0, &[2], &mut rng(5));
        assert!(!matches!(ok, Err(Error::ExponentTooLarge { .. })), "{ok:?}");
        assert!(matches!(
            build_rate_reliability(p, 1, e0 * (1.0 + 1e-12), &[2], &mut rng(5)),
            Err(Error::ExponentTooLarge { .. })
        ));
    }

    #[test]
    fn codeword_paths() {
        let p = ChannelParams::new(16, 0.01, 4.0).unwrap();
        let code = build_multi_layer(p, 2, 2.0, 1.0, &[3, 2], &mut rng(6)).unwrap();
        assert_eq!(code.words.len(), 6);
        assert!(codeword_vector(&code, &[0]).is_err());
        assert_eq!(codeword_vector(&code, &[5, 0]), Err(Error::UnknownPath(vec![5, 0])));
        let path = code.words[3].clone();
        let nodes = code.path_nodes(&path).unwrap();
        let mut sum = RealVector::zeros(16);
        for node in &nodes {
            sum.axpy(1.0, &node.path);
        }
        assert_eq!(codeword_vector(&code, &path).unwrap(), sum);

        let single = build_single_layer(p, 1.0, 2, &mut rng(6)).unwrap();
        assert_eq!(single.codeword(1).unwrap(), single.tree.children[1].path);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let p = ChannelParams::new(12, 0.01, 4.0).unwrap();
        let mut code = build_multi_layer(p, 2, 2.0, 1.0, &[3, 2], &mut rng(7)).unwrap();
        code.seed = Some(RngSeed::new(7, 0));
        let back = Codebook::from_json(&code.to_json()).unwrap();
        assert_eq!(back, code);
    }
}
