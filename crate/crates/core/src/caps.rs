//! Size limits for the exponential routines.
//!
//! Every exact solver in this crate is exponential in the worst case. The
//! limits below keep them at desk scale; exceeding one yields
//! [`Error::Capacity`](crate::Error::Capacity) instead of a silent truncation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Environment variable read by [`Caps::from_env`].
pub const CAP_ENV_VAR: &str = "COARSE_MENGER_CAP";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Caps {
    /// Exhaustive centered-set search.
    pub centered_vertices: usize,
    /// Exact path enumeration and exact packing.
    pub path_vertices: usize,
    /// Candidate paths fed to the exact packing solver.
    pub candidate_paths: usize,
    /// Exhaustive A-path packing.
    pub gallai_vertices: usize,
    /// Brute-force fat-minor model enumeration.
    pub model_vertices: usize,
    /// Separation enumeration.
    pub separation_vertices: usize,
    /// Largest tangle order for separation enumeration.
    pub max_theta: usize,
    /// Search-tree nodes before an exact cover gives up.
    pub search_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            centered_vertices: 20,
            path_vertices: 16,
            candidate_paths: 6000,
            gallai_vertices: 14,
            model_vertices: 12,
            separation_vertices: 10,
            max_theta: 4,
            search_nodes: 2_000_000,
        }
    }
}

impl Caps {
    /// Upper bounds that no override may exceed.
    pub const HARD: Caps = Caps {
        centered_vertices: 28,
        path_vertices: 24,
        candidate_paths: 20000,
        gallai_vertices: 20,
        model_vertices: 16,
        separation_vertices: 14,
        max_theta: 5,
        search_nodes: 50_000_000,
    };

    /// Parses an override string.
    ///
    /// A bare integer sets `path_vertices`; otherwise a comma list of
    /// `key=value` pairs using the field names of this struct.
    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec.is_empty() {
            return Ok(self);
        }
        if let Ok(n) = spec.parse::<usize>() {
            self.path_vertices = n;
            return self.clamped();
        }
        for item in spec.split(',') {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::invalid(format!("cap override `{item}` is not key=value")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::invalid(format!("cap override `{item}` has a non-integer value")))?;
            let slot = match key.trim() {
                "centered_vertices" => &mut self.centered_vertices,
                "path_vertices" => &mut self.path_vertices,
                "candidate_paths" => &mut self.candidate_paths,
                "gallai_vertices" => &mut self.gallai_vertices,
                "model_vertices" => &mut self.model_vertices,
                "separation_vertices" => &mut self.separation_vertices,
                "max_theta" => &mut self.max_theta,
                "search_nodes" => &mut self.search_nodes,
                other => return Err(Error::invalid(format!("unknown cap `{other}`"))),
            };
            *slot = value;
        }
        self.clamped()
    }

    /// Defaults with the environment override applied, if any.
    pub fn from_env() -> Result<Self> {
        match std::env::var(CAP_ENV_VAR) {
            Ok(spec) => Caps::default().with_overrides(&spec),
            Err(_) => Ok(Caps::default()),
        }
    }

    fn clamped(self) -> Result<Self> {
        let h = Caps::HARD;
        let pairs = [
            ("centered_vertices", self.centered_vertices, h.centered_vertices),
            ("path_vertices", self.path_vertices, h.path_vertices),
            ("candidate_paths", self.candidate_paths, h.candidate_paths),
            ("gallai_vertices", self.gallai_vertices, h.gallai_vertices),
            ("model_vertices", self.model_vertices, h.model_vertices),
            ("separation_vertices", self.separation_vertices, h.separation_vertices),
            ("max_theta", self.max_theta, h.max_theta),
            ("search_nodes", self.search_nodes, h.search_nodes),
        ];
        for (name, value, hard) in pairs {
            if value > hard {
                return Err(Error::invalid(format!(
                    "cap {name}={value} exceeds the hard limit {hard}"
                )));
            }
        }
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bare_integer_sets_path_cap() {
        let caps = Caps::default().with_overrides("12").unwrap();
        assert_eq!(caps.path_vertices, 12);
        assert_eq!(caps.centered_vertices, 20);
    }

    #[test]
    fn key_value_overrides() {
        let caps = Caps::default()
            .with_overrides("centered_vertices=10, max_theta=3")
            .unwrap();
        assert_eq!(caps.centered_vertices, 10);
        assert_eq!(caps.max_theta, 3);
    }

    #[test]
    fn hard_limit_is_enforced() {
        assert!(Caps::default().with_overrides("path_vertices=1000").is_err());
        assert!(Caps::default().with_overrides("bogus=1").is_err());
    }
}
