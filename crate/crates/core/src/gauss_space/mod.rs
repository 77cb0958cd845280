//! The space `V²_c`: evaluation, the collocation operator, least-squares
//! interpolation, empirical frame and Riesz bounds, the splitting
//! `f = f₋ + c₀ e^{-c z²} + f₊` and the Hilbert–Schmidt off-diagonal blocks.

mod coeffs;
mod collocation;
mod eval;
mod frames;
mod hs;

pub use coeffs::{split_parts, CoefficientVector, SplitParts};
pub use collocation::{buffer_width, collocation_matrix, read_binary, CollocationMatrix, DenseExport};
pub use eval::{evaluate, Evaluation};
pub use frames::{
    frame_bounds, interpolate, FrameBoundReport, FrameOptions, FrameRecord, Interpolation, Orientation,
    SINGULAR_THRESHOLD,
};
pub use hs::{compact_block_hsnorm, HsBlock};
