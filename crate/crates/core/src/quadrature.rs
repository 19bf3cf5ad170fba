//! Adaptive Gauss–Kronrod quadrature and finite-difference weights.

/// Kronrod abscissae of the 15-point rule on [-1, 1] (non-negative half).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// Gauss 7-point weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// One G7/K15 panel: (Kronrod estimate, |Kronrod - Gauss|).
pub fn gk15<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

/// Recursive bisection until the local G7/K15 error drops below
/// `abs_tol + rel_tol * |panel|` or `max_depth` is reached.
pub fn integrate<F: Fn(f64) -> f64 + ?Sized>(f: &F, a: f64, b: f64, rel_tol: f64, abs_tol: f64) -> Integral {
    if a == b {
        return Integral { value: 0.0, error: 0.0 };
    }
    fn recurse<F: Fn(f64) -> f64 + ?Sized>(
        f: &F,
        a: f64,
        b: f64,
        whole: (f64, f64),
        rel_tol: f64,
        abs_tol: f64,
        depth: u32,
    ) -> Integral {
        let (value, err) = whole;
        if err <= abs_tol.max(rel_tol * value.abs()) || depth == 0 {
            return Integral { value, error: err };
        }
        let m = 0.5 * (a + b);
        let left = gk15(f, a, m);
        let right = gk15(f, m, b);
        let l = recurse(f, a, m, left, rel_tol, 0.5 * abs_tol, depth - 1);
        let r = recurse(f, m, b, right, rel_tol, 0.5 * abs_tol, depth - 1);
        Integral {
            value: l.value + r.value,
            error: l.error + r.error,
        }
    }
    let whole = gk15(f, a, b);
    recurse(f, a, b, whole, rel_tol, abs_tol, 30)
}

/// Fornberg's recursion: weights `w[m][j]` such that
/// `f^(m)(x0) ~ sum_j w[m][j] * f(nodes[j])` for `m = 0..=max_deriv`.
pub fn fornberg_weights(x0: f64, nodes: &[f64], max_deriv: usize) -> Vec<Vec<f64>> {
    let n = nodes.len();
    let mut c = vec![vec![0.0; n]; max_deriv + 1];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    for i in 1..n {
        let mn = i.min(max_deriv);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[k][i] = c1 * (k as f64 * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
                }
                c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
            }
            for k in (1..=mn).rev() {
                c[k][j] = (c4 * c[k][j] - k as f64 * c[k - 1][j]) / c3;
            }
            c[0][j] = c4 * c[0][j] / c3;
        }
        c1 = c2;
    }
    c
}

/// Start index of a `width`-point window around `i`, clamped to `[0, n)`.
pub(crate) fn window_start(i: usize, n: usize, width: usize) -> usize {
    let half = width / 2;
    i.saturating_sub(half).min(n - width)
}

/// Differentiates sampled values on an arbitrary strictly increasing grid
/// using `width`-point windows (clamped near the ends).
pub fn differentiate(grid: &[f64], values: &[f64], deriv: usize, width: usize) -> Vec<f64> {
    let n = grid.len();
    assert_eq!(n, values.len());
    assert!(width <= n && width > deriv);
    (0..n)
        .map(|i| {
            let start = window_start(i, n, width);
            let nodes = &grid[start..start + width];
            let w = fornberg_weights(grid[i], nodes, deriv);
            w[deriv]
                .iter()
                .zip(&values[start..start + width])
                .map(|(a, b)| a * b)
                .sum()
        })
        .collect()
}
