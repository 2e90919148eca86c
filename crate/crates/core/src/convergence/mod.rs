//! ℕ-indexed nets and convergence verdicts.

mod lebesgue;
mod moving;
mod net;
mod order;
mod topological;
mod verdict;

pub use lebesgue::{lebesgue_probe, LebesgueReport, LebesgueRow};
pub use net::{Deficit, Monotonicity, NetSpec, Rate, TableTail};
pub use order::{order_converges, order_converges_monotone, uo_converges, walk_dominator, Ambient};
pub use topological::{converges_to, exact_row};
pub use verdict::{MemberVerdict, Mode, Policy, Value, Verdict, VerdictStatus};
