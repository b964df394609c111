//! Deformations `G -> G + H`: Maurer-Cartan data, the deformed basis, the
//! series `T^rho(t)`, the `D` ladder and period-matrix transport.

mod data;
mod series;
mod theorems;
mod transport;
mod ubasis;

pub use data::{build_deformation, k_gamma, mc_check, DeformationData};
pub use series::{t_series, DeformationSeries, SeriesRecord, SeriesTerm, MAX_SERIES_TERMS};
pub use theorems::{thm1_coefficients, thm2_direct, thm2_eval, ReductionFunctional};
pub use transport::{period_transport, BaseChange, Entry, PeriodMatrix};
pub use ubasis::{charge_factor, u_basis, UBasis};
