//! The Heisenberg bimodule over `Q_p × R`: elementary tensors, the left
//! action of `C_c(D_θ, η)` and right action of `C_c(D_θ^⊥, η̄)`, both inner
//! products, the submodules `V_j`, and the finite stage over `R × Z/p^{2j}`.

mod element;
mod finite;
mod inner;
mod pmrs;
mod rho;

pub use element::{act_left, act_left_algebra, act_right, act_right_algebra, HeisPoint, ModuleElement};
pub use finite::{
    finite_stage_fourier_coefficient, finite_stage_inner_fourier, finite_stage_inner_lattice,
    finite_stage_vanishes, lattice_window, phi_map, psi_map, FiniteStageElement, LatticeWindow,
};
pub use inner::{
    apply_table_at, heis_pairing, inner_left, inner_left_table, inner_right, inner_right_table,
    lattice_index, residue, tail_envelope, InnerProductTable,
};
pub use pmrs::{check_inclusion, verify_pmrs_stage, PmrsFault, StageCheck, StageReport};
pub use rho::{coord_inner_left, gamma_at_level, rho_j, RhoCoords};

pub(crate) use rho::corrupted_refinement_coefficient;

#[cfg(test)]
mod tests;
