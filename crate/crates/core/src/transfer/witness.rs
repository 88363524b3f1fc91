//! Witness functions and how they move along quasi-isometries and scalings.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

type Bound = Arc<dyn Fn(usize, f64, f64) -> f64 + Send + Sync>;

/// A pair `(f, g)` of bounds evaluated at `(k, r, ℓ)`: at most `f` balls of
/// radius at most `g`. Variants without `ℓ` ignore the last argument.
#[derive(Clone)]
pub struct WitnessFunctions {
    count: Bound,
    radius: Bound,
    /// Human-readable form of the composed bounds.
    pub formula: String,
}

impl fmt::Debug for WitnessFunctions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WitnessFunctions").field("formula", &self.formula).finish()
    }
}

impl WitnessFunctions {
    pub fn new(
        count: impl Fn(usize, f64, f64) -> f64 + Send + Sync + 'static,
        radius: impl Fn(usize, f64, f64) -> f64 + Send + Sync + 'static,
        formula: impl Into<String>,
    ) -> Self {
        WitnessFunctions {
            count: Arc::new(count),
            radius: Arc::new(radius),
            formula: formula.into(),
        }
    }

    pub fn constant(count: f64, radius: f64) -> Self {
        WitnessFunctions::new(
            move |_, _, _| count,
            move |_, _, _| radius,
            format!("f = {count}; g = {radius}"),
        )
    }

    pub fn count(&self, k: usize, r: f64, ell: f64) -> f64 {
        (self.count)(k, r, ell)
    }

    pub fn radius(&self, k: usize, r: f64, ell: f64) -> f64 {
        (self.radius)(k, r, ell)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessVariant {
    /// X-Y paths.
    Menger,
    /// (ℓ,X,Y)-paths.
    Remote,
    /// A-paths.
    Gallai,
}

/// `c1 = 2m²(3a+1) + 2m + 3a` and `c2 = (m+8a+1)m + 2`.
pub fn transfer_constants(m: f64, a: f64) -> (f64, f64) {
    let c1 = 2.0 * m * m * (3.0 * a + 1.0) + 2.0 * m + 3.0 * a;
    let c2 = (m + 8.0 * a + 1.0) * m + 2.0;
    (c1, c2)
}

/// Every quantity of the pullback argument at one `(k, r, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TransferIntermediates {
    /// Separation asked of the target: `2m²(3a+1) + (2+r)m + 3a`.
    pub r_prime: f64,
    /// Endpoint distance asked of the target: `mℓ + 3a`.
    pub ell_prime: f64,
    pub xi1: f64,
    pub eta1: f64,
    /// Radius after pulling centers back: `m(2η1 + 3a)`.
    pub eta2: f64,
    /// Radius after fattening by `m(m+2a+1)`.
    pub eta3: f64,
    /// Endpoint distance below which paths are collected: `(ℓ′+a)m`.
    pub ell_second: f64,
    /// Radius of the balls around collected paths: `2ℓ″ + 2 + r`.
    pub eta4: f64,
    pub count: f64,
    pub radius: f64,
}

/// Evaluates the remote transfer at `(k, r, ℓ)` for an `(m, a)`-quasi-isometry
/// into a space with witness `w`.
pub fn transfer_intermediates(m: f64, a: f64, w: &WitnessFunctions, k: usize, r: f64, ell: f64) -> TransferIntermediates {
    let r_prime = 2.0 * m * m * (3.0 * a + 1.0) + (2.0 + r) * m + 3.0 * a;
    let ell_prime = m * ell + 3.0 * a;
    let xi1 = w.count(k, r_prime, ell_prime);
    let eta1 = w.radius(k, r_prime, ell_prime);
    let eta2 = m * (2.0 * eta1 + 3.0 * a);
    let eta3 = eta2 + m * (m + 2.0 * a + 1.0);
    let ell_second = (ell_prime + a) * m;
    let eta4 = 2.0 * ell_second + 2.0 + r;
    TransferIntermediates {
        r_prime,
        ell_prime,
        xi1,
        eta1,
        eta2,
        eta3,
        ell_second,
        eta4,
        count: xi1 + k as f64 - 1.0,
        radius: eta3.max(eta4),
    }
}

/// The witness a source space inherits from `w` on the target of an
/// `(m, a)`-quasi-isometry. Assumes `m ≥ 1` and `a ≥ 0`.
///
/// Menger is the remote chain evaluated at `ℓ = 0`; Gallai uses the
/// closed form `(f(k, mr+c1), 2m·g(k, mr+c1) + c2)`.
pub fn transfer_witness(m: f64, a: f64, w: &WitnessFunctions, variant: WitnessVariant) -> WitnessFunctions {
    let (c1, c2) = transfer_constants(m, a);
    let inner = w.clone();
    match variant {
        WitnessVariant::Remote | WitnessVariant::Menger => {
            let fixed = variant == WitnessVariant::Menger;
            let (wc, wr) = (inner.clone(), inner);
            let formula = format!(
                "r1 = {m}r+{c1}; l1 = {m}{}+{}; f' = f(k,r1,l1) + k - 1; g' = max({m}(2g(k,r1,l1)+{}) + {}, 2(l1+{a}){m} + 2 + r)   [{}]",
                if fixed { "0" } else { "l" },
                3.0 * a,
                3.0 * a,
                m * (m + 2.0 * a + 1.0),
                w.formula,
            );
            let ell_of = move |ell: f64| if fixed { 0.0 } else { ell };
            WitnessFunctions::new(
                move |k, r, ell| transfer_intermediates(m, a, &wc, k, r, ell_of(ell)).count,
                move |k, r, ell| transfer_intermediates(m, a, &wr, k, r, ell_of(ell)).radius,
                formula,
            )
        }
        WitnessVariant::Gallai => {
            let (wc, wr) = (inner.clone(), inner);
            let formula = format!(
                "f'(k,r) = f(k, {m}r+{c1}); g'(k,r) = {}g(k, {m}r+{c1}) + {c2}   [{}]",
                2.0 * m,
                w.formula
            );
            WitnessFunctions::new(
                move |k, r, _| wc.count(k, m * r + c1, 0.0),
                move |k, r, _| 2.0 * m * wr.radius(k, m * r + c1, 0.0) + c2,
                formula,
            )
        }
    }
}

/// The witness for all separations `r` obtained from the one at `r = 1` on
/// a family closed under scaling: `(f(k,1,ℓ/r), g(k,1,ℓ/r)·r)`, with `ℓ`
/// fixed at 0 for the variants without it.
pub fn scale_witness(w: &WitnessFunctions, variant: WitnessVariant) -> WitnessFunctions {
    let remote = variant == WitnessVariant::Remote;
    let (wc, wr) = (w.clone(), w.clone());
    let rel = move |r: f64, ell: f64| if remote { ell / r } else { 0.0 };
    let formula = if remote {
        format!("f'(k,r,l) = f(k,1,l/r); g'(k,r,l) = g(k,1,l/r)*r   [{}]", w.formula)
    } else {
        format!("f'(k,r) = f(k,1); g'(k,r) = g(k,1)*r   [{}]", w.formula)
    };
    WitnessFunctions::new(
        move |k, r, ell| wc.count(k, 1.0, rel(r, ell)),
        move |k, r, ell| wr.radius(k, 1.0, rel(r, ell)) * r,
        formula,
    )
}
