//! Enumerative and intersection-theoretic checks on the curve `C` and the
//! quartics `S1 = {det M = 0}`, `S2 = {det N = 0}`.

pub mod chow;
pub mod hilbert;
pub mod points;

pub use chow::{intersection_matrix, ChowClassP3xP3};
pub use hilbert::{fit_degree_genus, GradedIdealView};
pub use points::{
    base_locus_consistency, enumerate_curve_points, enumerate_surface_points, projective_points,
    smooth_scan_curve, smooth_scan_quartic, transfer_points, weil_interval, ProjPoint,
    TransferSummary,
};
