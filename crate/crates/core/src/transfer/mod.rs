//! Moving coarse Menger witnesses along quasi-isometries and rescalings.

mod ledger;
mod metric;
mod pullback;
mod quasi;
mod witness;

pub use ledger::{c_h_ledger, ConstantLedgerEntry, GenusBound, MinorClassDescriptor, RadiusBound};
pub use metric::{scale_metric, subdivide_to_unit};
pub use pullback::{pullback_hitting_set, Pullback, PullbackParams};
pub use quasi::{subdivide_each_edge, verify_quasi_isometry, QuasiIsometry, QuasiIsometryVerdict};
pub use witness::{
    scale_witness, transfer_constants, transfer_intermediates, transfer_witness, TransferIntermediates,
    WitnessFunctions, WitnessVariant,
};
