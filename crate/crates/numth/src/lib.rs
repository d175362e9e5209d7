//! Number theory for the derangement workbench: exact factorization,
//! primitive prime divisors, the Diophantine scans, orders of the finite
//! groups of Lie type, and subgroup-depth arithmetic.

pub mod classcount;
pub mod depth;
pub mod dioph;
pub mod factor;
pub mod lie;
pub mod ppd;
pub mod table2;
pub mod u1;

pub use depth::{depth_formula, divisor_chain_oracle, DepthCase, DepthReport};
pub use dioph::{
    catalan_like_scan, is_fermat_prime, is_mersenne_prime, l3_solutions, nagell_scan,
    CatalanBranch,
};
pub use factor::{
    alpha, alpha_set, factorize, is_prime, is_prime_power, linear_congruence_count, omega_count,
    pi_count, Factorization, NumthError,
};
pub use lie::{lie_order, lie_order_factored, LieFamily};
pub use ppd::{ppd2a3_classify, ppd_divisibility, ppd_set, Ppd2a3Case, PpdReport, PpdStatus};
pub use table2::{pi_difference_check, OrderExpr, OrderFactor, PiDifferenceReport};
