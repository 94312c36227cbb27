//! Global optimization of mixed monotonic programs by branch, reduce and bound.
//!
//! A mixed monotonic (MM) function `F(x, y)` is nondecreasing in `x` and
//! nonincreasing in `y`; the function it represents is `f(x) = F(x, x)`, and
//! `F(s, r)` bounds `f` from above on the box `[r, s]`. [`solve`] maximizes
//! such an objective over a box subject to MM constraints `G_i(x, x) ≤ 0`.
//!
//! ```
//! use mmp_core::{solve, BoxNd, MmFunction, ProblemInstance, SolverConfig};
//!
//! // maximize x(1 - x) on [0, 1]
//! let f = MmFunction::new(1, |x, y| x[0] * (1.0 - y[0]));
//! let problem = ProblemInstance::box_constrained(f, BoxNd::uniform(1, 0.0, 1.0)?)?;
//! let result = solve(&problem, &SolverConfig::default().with_eta(1e-4))?;
//! assert!((result.value - 0.25).abs() <= 1e-4);
//! # Ok::<(), mmp_core::MmpError>(())
//! ```

pub mod boxes;
pub mod calculus;
pub mod error;
pub mod feasibility;
pub mod function;
pub mod problem;
pub mod problems;
pub mod solver;

pub use boxes::{make_box, BoxNd};
pub use calculus::{
    mm_compose_nondecreasing, mm_compose_nonincreasing, mm_max, mm_min, mm_product, mm_ratio,
    mm_scale, mm_sum, mm_weighted_sum,
};
pub use error::{MmpError, Result};
pub use feasibility::{
    conormal_set_test, mm_conclusive_test, mm_sufficient_test, normal_set_test, CornerValues,
    FeasibilityVerdict, VerdictKind,
};
pub use function::{check_mm_property, MmCheckReport, MmFunction, Monotonicity, ScalarMap};
pub use problem::{
    FeasibilityMode, FeasibilityOracle, IncumbentHook, MmConstraint, ProblemInstance,
};
pub use solver::{
    bisect, bound, find_incumbent, reduce, solve, write_trace_csv, SelectionRule, SolveStatus,
    SolverConfig, SolverResult, SolverStats, ToleranceMode, TraceRow,
};
