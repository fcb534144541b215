//! Reference acceptance-rate table for algorithm B (row `c = 0` is algorithms A and C).

use crate::error::Result;
use crate::math::rate_cell;
use crate::parallel::map_collect;
use crate::quadrature::QuadratureSettings;

pub const SPLITS: [f64; 4] = [0.0, 0.5, 0.7, 1.0];

pub const DELTAS: [f64; 12] = [
    0.0, 0.1, 0.2, 0.5, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0, 20.0, 100.0,
];

/// Published three-decimal values, one row per entry of [`SPLITS`].
pub const PRINTED: [[f64; 12]; 4] = [
    [1.00, 0.916, 0.852, 0.723, 0.596, 0.517, 0.461, 0.386, 0.299, 0.201, 0.130, 0.041],
    [0.904, 0.859, 0.829, 0.776, 0.736, 0.719, 0.710, 0.704, 0.705, 0.719, 0.741, 0.796],
    [0.836, 0.803, 0.781, 0.747, 0.725, 0.718, 0.716, 0.718, 0.726, 0.746, 0.770, 0.822],
    [0.731, 0.711, 0.700, 0.684, 0.680, 0.682, 0.687, 0.696, 0.712, 0.737, 0.764, 0.819],
];

/// Half-width of three-decimal rounding.
pub const TOLERANCE: f64 = 0.0005;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub c: f64,
    pub delta: f64,
    pub computed: f64,
    pub printed: f64,
}

impl Cell {
    pub fn matches(&self) -> bool {
        (self.computed - self.printed).abs() <= TOLERANCE
    }
}

/// All 48 cells, row-major over [`SPLITS`] then [`DELTAS`].
pub fn compute(settings: &QuadratureSettings) -> Result<Vec<Cell>> {
    let coords: Vec<(usize, usize)> = (0..SPLITS.len())
        .flat_map(|r| (0..DELTAS.len()).map(move |k| (r, k)))
        .collect();
    map_collect(&coords, |&(r, k)| {
        let (c, delta) = (SPLITS[r], DELTAS[k]);
        rate_cell(delta, c, settings).map(|computed| Cell {
            c,
            delta,
            computed,
            printed: PRINTED[r][k],
        })
    })
    .into_iter()
    .collect()
}
