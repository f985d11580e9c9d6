use super::*;
use crate::geometry::GEOMETRY_TOL;

/// Power-constraint check of every leaf against `nP`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PowerAudit {
    pub power: f64,
    pub budget: f64,
    /// Design energy `Σ r_ℓ²`.
    pub energy: f64,
    /// Largest measured `‖leaf‖²`.
    pub max_leaf_energy: f64,
    pub valid: bool,
    /// Smallest block length at which the design energy fits, when the
    /// construction has a closed-form radius schedule.
    pub min_n: Option<u64>,
}

/// Scalar separation between a tested word and a sent word along the tested
/// word's path direction at the first layer where they differ.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PairSeparation {
    pub tested: usize,
    pub sent: usize,
    /// 1-based first differing layer.
    pub layer: usize,
    /// `|⟨o_sent, v̂_ℓ(tested)⟩ - r_ℓ|`.
    pub separation: f64,
    /// `d - √(2Ld)`.
    pub lemma_bound: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct GroupAudit {
    pub layer: usize,
    pub points: usize,
    pub min_projected_distance: f64,
    pub violations: Vec<String>,
}

/// Structural audit of a codebook. `violations` covers the tree and
/// arrangement invariants plus the power constraint; the two lemma checks
/// are reported separately.
#[derive(Clone, Debug, PartialEq)]
pub struct CodebookAudit {
    pub groups: Vec<GroupAudit>,
    /// Largest `|‖v‖ - r_ℓ| / r_ℓ` over path vectors.
    pub max_path_norm_error: f64,
    /// Largest `|⟨v_i, v_j⟩| / (r_i r_j)` along any root-to-leaf path.
    pub max_path_cosine: f64,
    /// Largest `|‖leaf‖² - Σ r_ℓ²| / Σ r_ℓ²`.
    pub max_pythagoras_error: f64,
    /// Largest `‖leaf - Σ paths‖ / ‖leaf‖` with the sum recomputed.
    pub max_leaf_sum_error: f64,
    pub power: Option<PowerAudit>,
    /// Largest deviation of a layer-2 point's projection from its layer-1
    /// center's projection, onto a different layer-1 path direction.
    pub max_delta: Option<f64>,
    /// `√(2d)` with the layer-1 `d`.
    pub delta_bound: Option<f64>,
    /// Pair with the smallest `separation - lemma_bound`.
    pub worst_separation: Option<PairSeparation>,
    pub violations: Vec<String>,
}

impl CodebookAudit {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty() && self.groups.iter().all(|g| g.violations.is_empty())
    }

    pub fn delta_lemma_holds(&self) -> bool {
        match (self.max_delta, self.delta_bound) {
            (Some(m), Some(b)) => m < b + GEOMETRY_TOL * b,
            _ => true,
        }
    }

    pub fn separation_lemma_holds(&self, tol: f64) -> bool {
        self.worst_separation
            .is_none_or(|s| s.separation >= s.lemma_bound - tol)
    }
}

impl Codebook {
    /// Minimal block length for this code's radius schedule under `power`.
    pub fn min_block_length(&self, power: f64) -> Option<u64> {
        match self.kind {
            CodeKind::SingleLayer => Some(1),
            CodeKind::MultiLayer { layers, c } => multi_layer_min_block_length(layers, c, power),
            CodeKind::Universal { layers, b } => universal_min_block_length(layers, b, power),
            CodeKind::RateReliability { .. } => None,
        }
    }

    pub fn power_audit(&self, power: f64) -> PowerAudit {
        let budget = self.n as f64 * power;
        let mut max_leaf_energy = 0.0f64;
        for w in 0..self.words.len() {
            if let Ok(leaf) = self.codeword(w) {
                max_leaf_energy = max_leaf_energy.max(leaf.norm_sq());
            }
        }
        PowerAudit {
            power,
            budget,
            energy: self.energy(),
            max_leaf_energy,
            valid: max_leaf_energy <= budget * (1.0 + GEOMETRY_TOL),
            min_n: self.min_block_length(power),
        }
    }

    pub fn pair_separation(&self, tested: usize, sent: usize) -> Result<PairSeparation> {
        let layer = self
            .first_difference(tested, sent)?
            .ok_or(Error::SameWord(tested))?;
        let nodes = self.path_nodes(self.word_path(tested)?)?;
        let dir = nodes[layer - 1].direction();
        let leaf = self.codeword(sent)?;
        let spec = &self.layers[layer - 1];
        let d = spec.min_projected_distance;
        Ok(PairSeparation {
            tested,
            sent,
            layer,
            separation: (leaf.dot(&dir) - spec.radius).abs(),
            lemma_bound: d - (2.0 * self.num_layers() as f64 * d).sqrt(),
        })
    }

    /// Full audit. `power` overrides the design channel's `P`; universal
    /// codes are only power-audited when one is supplied.
    pub fn audit(&self, power: Option<f64>) -> CodebookAudit {
        let mut violations = Vec::new();

        let groups: Vec<GroupAudit> = self
            .sibling_groups()
            .into_iter()
            .map(|(layer, arr)| {
                let a = arr.audit();
                GroupAudit {
                    layer,
                    points: a.points,
                    min_projected_distance: a.min_projected_distance,
                    violations: a.violations,
                }
            })
            .collect();

        let energy = self.energy();
        let mut max_path_norm_error = 0.0f64;
        let mut max_path_cosine = 0.0f64;
        let mut max_pythagoras_error = 0.0f64;
        let mut max_leaf_sum_error = 0.0f64;
        for (w, path) in self.words.iter().enumerate() {
            let nodes = match self.path_nodes(path) {
                Ok(n) => n,
                Err(e) => {
                    violations.push(format!("word {w}: {e}"));
                    continue;
                }
            };
            let mut sum = RealVector::zeros(self.n);
            for (i, node) in nodes.iter().enumerate() {
                let r = self.layers[i].radius;
                max_path_norm_error = max_path_norm_error.max((node.path.norm() - r).abs() / r);
                for (j, other) in nodes.iter().enumerate().skip(i + 1) {
                    let rj = self.layers[j].radius;
                    max_path_cosine = max_path_cosine.max(node.path.dot(&other.path).abs() / (r * rj));
                }
                sum.axpy(1.0, &node.path);
            }
            let leaf = &nodes.last().expect("non-empty path").center;
            max_pythagoras_error = max_pythagoras_error.max((leaf.norm_sq() - energy).abs() / energy);
            max_leaf_sum_error = max_leaf_sum_error.max((leaf - &sum).norm() / leaf.norm());
        }
        if max_path_norm_error > GEOMETRY_TOL {
            violations.push(format!("path vector norm error {max_path_norm_error:e}"));
        }
        if max_path_cosine > GEOMETRY_TOL {
            violations.push(format!("path vectors not orthogonal: cosine {max_path_cosine:e}"));
        }
        if max_pythagoras_error > GEOMETRY_TOL {
            violations.push(format!("leaf norm deviates from sum of squared radii: {max_pythagoras_error:e}"));
        }
        if max_leaf_sum_error > GEOMETRY_TOL {
            violations.push(format!("leaf differs from sum of path vectors: {max_leaf_sum_error:e}"));
        }

        let power = power
            .or_else(|| self.channel.map(|c| c.power))
            .map(|p| self.power_audit(p));
        if let Some(p) = &power {
            if !p.valid {
                violations.push(format!(
                    "power constraint: max leaf energy {} > nP = {}",
                    p.max_leaf_energy, p.budget
                ));
            }
        }

        let (max_delta, delta_bound) = if self.num_layers() >= 2 {
            let bound = (2.0 * self.layers[0].min_projected_distance).sqrt();
            let mut worst: f64 = 0.0;
            let top = &self.tree.children;
            for (i, o1) in top.iter().enumerate() {
                let dir = o1.direction();
                for (j, other) in top.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    for child in &other.children {
                        worst = worst.max(child.path.dot(&dir).abs());
                    }
                }
            }
            (Some(worst), Some(bound))
        } else {
            (None, None)
        };

        let mut worst_separation: Option<PairSeparation> = None;
        for tested in 0..self.words.len() {
            for sent in 0..self.words.len() {
                if tested == sent {
                    continue;
                }
                if let Ok(s) = self.pair_separation(tested, sent) {
                    let margin = s.separation - s.lemma_bound;
                    if worst_separation.is_none_or(|w| margin < w.separation - w.lemma_bound) {
                        worst_separation = Some(s);
                    }
                }
            }
        }

        CodebookAudit {
            groups,
            max_path_norm_error,
            max_path_cosine,
            max_pythagoras_error,
            max_leaf_sum_error,
            power,
            max_delta,
            delta_bound,
            worst_separation,
            violations,
        }
    }
}
