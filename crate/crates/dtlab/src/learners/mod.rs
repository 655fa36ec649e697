//! Learning algorithms for decision trees: exact dynamic programs over full
//! truth tables, sample-based consistency search, PAC learners (direct and
//! through the zero-projection reduction), exact learners driven by
//! membership queries or universal sets, and a consistency search that may
//! output a larger-than-minimum tree in exchange for polynomial time.

mod consis;
mod exact;
mod exhaustive;
mod nonproper;
mod occam;
mod pac;
mod table_dp;

pub use consis::{consis, consis_min_depth, consis_over};
pub use exact::{
    exact_from_pac, exact_learn_dtds, exact_learn_universal, gen_universal_set,
    universal_sample_size, verify_universal, UniformExamples,
};
pub use exhaustive::{count_trees, enumerate_trees, exhaustive_learn};
pub use nonproper::{
    eh89_size_bound, learn_nonproper_eh89, learn_nonproper_pac, learn_nonproper_reduced,
};
pub use occam::{occam_sample_size, tree_class_log2, OCCAM_C};
pub use pac::{
    learn_dtds_distfree, learn_dtds_reduced, learn_dts_reduced, learn_dts_uniform,
    learn_dts_uniform_reduced, DtdsParams,
};
pub use table_dp::{
    min_depth_from_truth_table, min_dt_from_truth_table, min_size_from_truth_table, Objective,
    TABLE_DP_CAP,
};

use crate::boolfn::Assignment;

/// A labeled example.
pub type Example = (Assignment, bool);

/// Draw `m` labeled examples from the oracle.
pub fn draw_examples<O: crate::boolfn::Oracle + ?Sized>(
    o: &mut O,
    m: u64,
) -> crate::Result<Vec<Example>> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(o.example()?);
    }
    Ok(out)
}
