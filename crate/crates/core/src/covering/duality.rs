//! Packing/covering tables for one instance, and the Gallai dichotomy.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::{min_ball_hitting, CoverInstance, HitFamily};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{io::GraphDocument, Graph, Vertex, VertexSet};
use crate::packing::{gallai_packing, max_far_packing, PackingInstance, SolveMode};
use crate::paths::PathFamily;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellStatus {
    Exact,
    /// Greedy by request.
    Greedy,
    /// The exact solver hit a cap; the value is a greedy bound.
    CapacityFallback,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PackingCell {
    pub r: f64,
    pub size: usize,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverCell {
    pub beta: f64,
    pub balls: usize,
    pub status: CellStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DualityReport {
    /// SHA-256 of the canonical JSON of graph and family.
    pub fingerprint: String,
    pub family: PathFamily,
    pub packing_by_r: Vec<PackingCell>,
    pub cover_by_radius: Vec<CoverCell>,
}

impl DualityReport {
    pub fn has_capacity_fallback(&self) -> bool {
        self.packing_by_r.iter().any(|c| c.status == CellStatus::CapacityFallback)
            || self.cover_by_radius.iter().any(|c| c.status == CellStatus::CapacityFallback)
    }

    /// One row per threshold: `table,threshold,value,status`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("fingerprint,table,threshold,value,status\n");
        let status = |s: CellStatus| match s {
            CellStatus::Exact => "exact",
            CellStatus::Greedy => "greedy",
            CellStatus::CapacityFallback => "capacity_fallback",
        };
        for c in &self.packing_by_r {
            let _ = writeln!(out, "{},packing,{},{},{}", self.fingerprint, c.r, c.size, status(c.status));
        }
        for c in &self.cover_by_radius {
            let _ = writeln!(out, "{},cover,{},{},{}", self.fingerprint, c.beta, c.balls, status(c.status));
        }
        out
    }
}

pub fn instance_fingerprint(g: &Graph, family: &PathFamily) -> String {
    let doc = serde_json::json!({
        "graph": GraphDocument::from_graph(g),
        "family": family,
    });
    hex::encode(Sha256::digest(doc.to_string().as_bytes()))
}

/// Fills the packing table over `r_values` and the cover table over
/// `beta_values`. A cell whose exact solver hits a cap falls back to the
/// greedy value and is flagged; only input errors abort the sweep.
pub fn duality_sweep(
    g: &Graph,
    family: &PathFamily,
    r_values: &[f64],
    beta_values: &[f64],
    mode: SolveMode,
    caps: &Caps,
) -> Result<DualityReport> {
    family.validate(g)?;
    let fallback = |e: Error| if e.is_capacity() { Ok(()) } else { Err(e) };
    let mut packing_by_r = Vec::with_capacity(r_values.len());
    for &r in r_values {
        let inst = PackingInstance {
            host: g,
            family: family.clone(),
            r,
            mode,
        };
        let cell = match max_far_packing(&inst, caps) {
            Ok(sol) => PackingCell {
                r,
                size: sol.size,
                status: if sol.optimal { CellStatus::Exact } else { CellStatus::Greedy },
            },
            Err(e) => {
                fallback(e)?;
                let sol = max_far_packing(&PackingInstance { mode: SolveMode::Greedy, ..inst }, caps)?;
                PackingCell {
                    r,
                    size: sol.size,
                    status: CellStatus::CapacityFallback,
                }
            }
        };
        packing_by_r.push(cell);
    }
    let mut cover_by_radius = Vec::with_capacity(beta_values.len());
    for &beta in beta_values {
        let inst = CoverInstance {
            host: g,
            family: HitFamily::Paths(family.clone()),
            radius: beta,
            mode,
        };
        let cell = match min_ball_hitting(&inst, caps) {
            Ok(sol) => CoverCell {
                beta,
                balls: sol.count,
                status: if sol.optimal { CellStatus::Exact } else { CellStatus::Greedy },
            },
            Err(e) => {
                fallback(e)?;
                let sol = min_ball_hitting(&CoverInstance { mode: SolveMode::Greedy, ..inst }, caps)?;
                CoverCell {
                    beta,
                    balls: sol.count,
                    status: CellStatus::CapacityFallback,
                }
            }
        };
        cover_by_radius.push(cell);
    }
    Ok(DualityReport {
        fingerprint: instance_fingerprint(g, family),
        family: family.clone(),
        packing_by_r,
        cover_by_radius,
    })
}

/// Exact cell pairs with `r > 2β` where fewer balls than far paths were
/// reported. A ball of radius β meets at most one member of a family that is
/// pairwise farther than 2β apart, so any such pair is a bug.
pub fn weak_duality_violations(report: &DualityReport) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for p in report.packing_by_r.iter().filter(|c| c.status == CellStatus::Exact) {
        for c in report.cover_by_radius.iter().filter(|c| c.status == CellStatus::Exact) {
            if p.r > 2.0 * c.beta && c.balls < p.size {
                out.push((p.r, c.beta));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "snake_case")]
pub enum GallaiVerdict {
    /// `k` vertex-disjoint A-paths.
    Packing { paths: Vec<Vec<Vertex>> },
    /// At most `2k − 2` vertices meeting every A-path.
    Hitting { set: VertexSet },
}

/// Either `k` disjoint A-paths or a hitting set of at most `2k − 2`
/// vertices. Neither would contradict Gallai's theorem and is reported as
/// an internal inconsistency.
pub fn gallai_check(g: &Graph, a: &VertexSet, k: usize, caps: &Caps) -> Result<GallaiVerdict> {
    let packing = gallai_packing(g, a, caps)?;
    if packing.count >= k {
        return Ok(GallaiVerdict::Packing {
            paths: packing.paths.into_iter().take(k).collect(),
        });
    }
    let cover = min_ball_hitting(
        &CoverInstance {
            host: g,
            family: HitFamily::Paths(PathFamily::a_paths(a.clone())),
            radius: 0.0,
            mode: SolveMode::Exact,
        },
        caps,
    )?;
    let budget = 2 * k - 2;
    if cover.count <= budget {
        Ok(GallaiVerdict::Hitting {
            set: cover.centered.centers,
        })
    } else {
        Err(Error::InternalInconsistency(format!(
            "{} disjoint A-paths but the smallest hitting set has {} > {budget} vertices",
            packing.count, cover.count
        )))
    }
}
