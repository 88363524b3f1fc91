//! Tree-decompositions and the hitting lemmas built on them.

mod decomposition;
mod easy_tree;
mod helly;
mod rooted_ep;

pub use decomposition::{DecompositionDocument, TreeDecomposition};
pub use easy_tree::{
    easy_tree_hitting, easy_tree_hitting_with_oracle, EasyTreeOutcome, EasyTreeParams, ExchangeableFamily,
    MemberOracle, PackedMember,
};
pub use helly::{max_disjoint_subtrees, multi_family_select, tree_helly, HellyOutcome, SubtreeGreedy};
pub use rooted_ep::{
    connected_model_within, disjoint_model_pair, enumerate_rooted_models, min_model_hitting_set, rooted_fat_minor_ep,
    ConnectedModelOracle, ModelRoute, RootedEpOutcome, RootedEpReport, RootedPattern,
};
