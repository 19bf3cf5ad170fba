//! Shared fixtures for the benchmarks.

use frenet_core::{preset, CurveSpec, InvoluteSpec, Preset};

pub const GRID_SIZES: [usize; 3] = [201, 1001, 4001];

pub fn fixture(name: &str) -> (Preset, CurveSpec, InvoluteSpec) {
    let p = preset(name).expect("shipped preset");
    let curve = p.curve().expect("preset builds");
    let spec = InvoluteSpec::with_anchor(&curve, p.c_inv, p.s_anchor).expect("preset involute");
    (p, curve, spec)
}
