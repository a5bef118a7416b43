//! Spectral sequences of filtered complexes over a prime field.

mod ce;
mod double;
mod natural;

#[cfg(test)]
mod tests;

pub use ce::{
    apply_grid, cartan_eilenberg, check_acyclic_hypothesis, grid_to_double, grothendieck_ss, independent_dims,
    AcyclicReport, GrothendieckSS, Grid,
};
pub use double::{
    induced_cell_map, page_cells, ss_pages, ss_pages_trusted, total_map, Cell, DoubleComplex, DoubleMap, FilteredTotal,
    Page, SSResult,
};
pub use natural::{ss_componentwise, ComponentwiseSS, NaturalityReport};
