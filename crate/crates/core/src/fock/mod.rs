//! The small Fock space `𝓕_a` of entire functions with
//! `‖F‖² = Σ |b_n|² e^{2a(n+1)²}`, reached from `V²_c` through `w = e^{2cz}`.
//!
//! Magnitudes are kept as logarithms throughout: the weights and the moduli
//! `e^{2aλ}` leave double precision long before the asymptotics show.

mod cis;
mod identity;
mod kernel;
mod logpolar;
mod product;
mod quadrature;
mod series;

pub use cis::{
    fock_cis_verdict, fock_points_from_enumeration, fock_to_lattice_delta, lattice_to_fock_delta,
    FockCisOptions, FockCisVerdict,
};
pub use identity::{consistency_identity, IdentityCheck};
pub use kernel::{kernel_norm, KernelNorm, KERNEL_TAIL};
pub use logpolar::{node_transform, phi, LogPolarPoint};
pub use product::{
    g0_ratio, generating_product_g0, generating_product_perturbed, EstimateGrid, GeneratingProduct,
    PerturbedValue, ProductValue, ON_ZERO, PRODUCT_TAIL,
};
pub use quadrature::{fock_inner_quadrature, fock_norm_quadrature, QuadratureEstimate, RadialGrid};
pub use series::{fock_norm, to_fock, FockDecomposition, FockSeries, LogCoefficient};
