//! Vertex and tile weights.

pub mod general;
pub mod label;
pub mod puzzle;
pub mod six_vertex;
pub mod spin;

pub use general::{general_weight, phi};
pub use label::{EdgeLabel, Spin, SpinParams, TileState};
pub use puzzle::{
    puzzle_tile_6v, puzzle_tile_weight_6v, puzzle_tile_weight_6v_at, puzzle_tile_weight_hs,
    puzzle_tile_weight_hs_at, puzzle_tiles_6v, Color,
};
pub use six_vertex::six_vertex_weight;
pub use spin::{borodin_weight, spin_hl_weight};
