//! Discriminant geometry of holomorphic pairs `(f, g)` and the isolated
//! critical value question for `f·ḡ`.

pub mod branch;
pub mod discriminant;
pub mod jacobian;
pub mod lines;
pub mod roots;
pub mod shear;
pub mod sing;
pub mod verdict;

pub use branch::{branch_accumulates_critical_points, branch_restriction_singular, PuiseuxBranch};
pub use discriminant::{discriminant_curve, PlaneCurve};
pub use jacobian::{jacobian_det, jacobian_minors};
pub use lines::{line_components, tangent_lines, LineComponent, LineKind};
pub use shear::{axis_shear, shear_search, ShearResult};
pub use sing::{sing_decomposition, SingDecomposition};
pub use verdict::{isolated_value_verdict, isolated_value_verdict_with, Criterion, Isolation, IsolatedVerdict, VerdictOptions};
