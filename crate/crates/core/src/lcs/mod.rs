//! Lower central series machinery: Hall bases, Smith normal form, the free
//! nilpotent pc presentation, the nilpotent quotient and parafree checks.

pub mod hall;
pub mod nq;
pub mod parafree;
pub mod pc;
pub mod snf;

pub use hall::{hall_basis, witt_number, BasicCommutator, Shape};
pub use nq::{abelianization, nilpotent_quotient, NilpotentQuotient, NqOptions};
pub use parafree::{build_gw, gw_alphabet, parafree_compare, LayerVerdict};
pub use pc::{PcElement, PcPresentation};
pub use snf::{smith_normal_form, AbelianInvariants, IntMatrix, SmithForm};
