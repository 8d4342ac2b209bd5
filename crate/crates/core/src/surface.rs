//! The limit density
//!
//! ```text
//! phi(a, b) = 1/(8 pi) int_0^a int_0^(a-y) dx dy / [(x+y)(b-x)(1-b-y)]^(3/2)
//! ```
//!
//! on `0 < a < b < 1 - a`, its reflection `Phi` to the unit square, grids of
//! `Phi`, and slices comparing `m P(m, i, j)` against `phi`.
//!
//! [`phi_reduced`] integrates the inner variable in closed form and is the
//! evaluator used everywhere; [`phi`] is an independent two-dimensional
//! quadrature kept as a check. Swapping `x` and `y` in the integral shows
//! `phi(a, b) = phi(a, 1 - b)`, so the reduced form always works with
//! `b <= 1/2`, where `1 - b - y` stays away from zero.

use std::f64::consts::PI;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::enumerate::{probability_float, FLOAT_MAX_M};
use crate::error::{Error, Result};
use crate::matrix::format_float;
use crate::quad::integrate;

pub const DEFAULT_TOL: f64 = 1e-8;
pub const GRID_TOL: f64 = 1e-6;

/// Distance below which a point counts as lying on a diagonal.
pub const DIAGONAL_EPS: f64 = 1e-9;

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol.is_finite() {
        Ok(())
    } else {
        Err(Error::out_of_range("tol", tol, "tol > 0"))
    }
}

fn check_region(alpha: f64, beta: f64, tol: f64) -> Result<()> {
    check_tol(tol)?;
    if alpha > 0.0 && alpha < beta && beta < 1.0 - alpha {
        Ok(())
    } else {
        Err(Error::out_of_range(
            "(alpha, beta)",
            format!("({alpha}, {beta})"),
            "0 < alpha < beta < 1 - alpha",
        ))
    }
}

/// `phi` by two-dimensional adaptive quadrature.
///
/// With `x + y = v^2` and `x = v^2 w` the area element is `2 v^3 dv dw`,
/// which cancels `(x+y)^(-3/2)` and leaves the smooth integrand
/// `2 [(b - v^2 w)(1 - b - v^2 (1-w))]^(-3/2)` on `[0, sqrt a] x [0, 1]`.
pub fn phi(alpha: f64, beta: f64, tol: f64) -> Result<f64> {
    check_region(alpha, beta, tol)?;
    let (a, b) = (alpha, beta);
    let top = a.sqrt();
    let scaled = tol * 8.0 * PI;
    let inner_tol = 0.25 * scaled / top;
    let outer = integrate(
        |v| {
            let v2 = v * v;
            integrate(
                |w| 2.0 * ((b - v2 * w) * (1.0 - b - v2 * (1.0 - w))).powf(-1.5),
                0.0,
                1.0,
                inner_tol,
            )
            .value
        },
        0.0,
        top,
        0.5 * scaled,
    );
    Ok(outer.value / (8.0 * PI))
}

/// `(2x + y - b) / sqrt((x+y)(b-x))`, an antiderivative in `x` of
/// `((y+b)^2 / 2) [(x+y)(b-x)]^(-3/2)`.
pub fn inner_antiderivative(x: f64, y: f64, beta: f64) -> f64 {
    (2.0 * x + y - beta) / ((x + y) * (beta - x)).sqrt()
}

/// `[(x+y)(b-x)]^(-3/2)`.
pub fn inner_integrand(x: f64, y: f64, beta: f64) -> f64 {
    ((x + y) * (beta - x)).powf(-1.5)
}

/// The reduced integrand in `t = sqrt(y)`, including the `2t` Jacobian.
/// Requires `b <= 1/2`; `gap = max(b - a, 0)` lets `b = a` through.
fn reduced_integrand(a: f64, b: f64, t: f64) -> f64 {
    let y = t * t;
    let gap = (b - a).max(0.0);
    let upper = if gap == 0.0 {
        2.0 * (a - y) / a.sqrt()
    } else {
        2.0 * t * (2.0 * a - y - b) / (a * (gap + y)).sqrt()
    };
    let lower = 2.0 * (b - y) / b.sqrt();
    (1.0 - b - y).powf(-1.5) * 2.0 / (y + b).powi(2) * (upper + lower)
}

fn reduced_core(alpha: f64, beta: f64, tol: f64) -> f64 {
    let b = if beta > 0.5 { 1.0 - beta } else { beta };
    let est = integrate(
        |t| reduced_integrand(alpha, b, t),
        0.0,
        alpha.sqrt(),
        tol * 8.0 * PI,
    );
    est.value / (8.0 * PI)
}

/// `phi` through the closed-form inner integral, one adaptive quadrature in
/// `t = sqrt(y)`.
pub fn phi_reduced(alpha: f64, beta: f64, tol: f64) -> Result<f64> {
    check_region(alpha, beta, tol)?;
    Ok(reduced_core(alpha, beta, tol))
}

/// `phi` on the closure of its region minus the point `(1/2, 1/2)`: on
/// `b = a` and on `b = 1 - a` the integral is still finite and equals the
/// limit from inside. Values of `b` within rounding of the boundary are
/// clamped onto it.
pub fn phi_closure(alpha: f64, beta: f64, tol: f64) -> Result<f64> {
    check_tol(tol)?;
    let slack = 4.0 * f64::EPSILON;
    if !(alpha > 0.0 && alpha < 0.5 && beta >= alpha - slack && beta <= 1.0 - alpha + slack) {
        return Err(Error::out_of_range(
            "(alpha, beta)",
            format!("({alpha}, {beta})"),
            "0 < alpha < 1/2 and alpha <= beta <= 1 - alpha",
        ));
    }
    Ok(reduced_core(alpha, beta.clamp(alpha, 1.0 - alpha), tol))
}

/// Maps `(x, y)` by `(x, y) -> (y, x)` and `(x, y) -> (1-y, 1-x)` into
/// `{x <= y, x + y <= 1}`.
pub fn fold_to_fundamental(x: f64, y: f64) -> (f64, f64) {
    let (x, y) = if x > y { (y, x) } else { (x, y) };
    if x + y > 1.0 {
        (1.0 - y, 1.0 - x)
    } else {
        (x, y)
    }
}

fn check_unit_point(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && x < 1.0 && y > 0.0 && y < 1.0 {
        Ok(())
    } else {
        Err(Error::out_of_range(
            "(x, y)",
            format!("({x}, {y})"),
            "0 < x, y < 1",
        ))
    }
}

/// `Phi(x, y)` off both diagonals.
pub fn surface_value(x: f64, y: f64, tol: f64) -> Result<f64> {
    check_unit_point(x, y)?;
    if (x - y).abs() <= DIAGONAL_EPS || (x + y - 1.0).abs() <= DIAGONAL_EPS {
        return Err(Error::InvalidArgument(format!(
            "({x}, {y}) lies on a diagonal, where Phi is not defined"
        )));
    }
    let (a, b) = fold_to_fundamental(x, y);
    phi_reduced(a, b, tol)
}

/// `Phi(x, y)` with diagonal points taken by continuity; only the centre is
/// refused.
pub fn surface_value_extended(x: f64, y: f64, tol: f64) -> Result<f64> {
    check_unit_point(x, y)?;
    let (a, b) = fold_to_fundamental(x, y);
    phi_closure(a, b, tol)
}

/// `Phi` at the cell centres `((u + 1/2)/G, (v + 1/2)/G)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGrid {
    pub resolution: usize,
    pub tol: f64,
    /// Row-major, row `u`.
    pub values: Vec<f64>,
}

impl SurfaceGrid {
    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.values[u * self.resolution + v]
    }

    pub fn to_csv(&self) -> String {
        let g = self.resolution;
        let mut s = format!("# dab-surface G={g} tol={}\n", format_float(self.tol));
        for row in self.values.chunks(g) {
            let line: Vec<String> = row.iter().map(|&x| format_float(x)).collect();
            s.push_str(&line.join(","));
            s.push('\n');
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let fields = header
            .strip_prefix("# dab-surface ")
            .ok_or_else(|| Error::parse(1, "missing `# dab-surface` header"))?;
        let resolution: usize = header_field(fields, "G")?;
        let tol: f64 = header_field(fields, "tol")?;
        let mut values = Vec::with_capacity(resolution * resolution);
        let mut rows = 0;
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 2;
            if line.trim().is_empty() {
                continue;
            }
            let row = parse_floats(line, lineno)?;
            if row.len() != resolution {
                return Err(Error::parse(
                    lineno,
                    format!("expected {resolution} values, found {}", row.len()),
                ));
            }
            values.extend(row);
            rows += 1;
        }
        if rows != resolution {
            return Err(Error::parse(
                text.lines().count(),
                format!("expected {resolution} rows, found {rows}"),
            ));
        }
        Ok(SurfaceGrid {
            resolution,
            tol,
            values,
        })
    }
}

fn header_field<T: std::str::FromStr>(fields: &str, key: &str) -> Result<T> {
    let raw = fields
        .split_whitespace()
        .find_map(|f| f.strip_prefix(key).and_then(|r| r.strip_prefix('=')))
        .ok_or_else(|| Error::parse(1, format!("header lacks `{key}=`")))?;
    raw.parse()
        .map_err(|_| Error::parse(1, format!("bad value `{raw}` for `{key}`")))
}

fn parse_floats(line: &str, lineno: usize) -> Result<Vec<f64>> {
    line.split(',')
        .map(|cell| {
            cell.trim()
                .parse::<f64>()
                .map_err(|_| Error::parse(lineno, format!("bad number `{cell}`")))
        })
        .collect()
}

/// Samples `Phi` on a `G x G` grid of cell centres. With even `G` the
/// centre cells of the two diagonals sit on the diagonals themselves and
/// take the boundary values of `phi`.
pub fn surface_grid(resolution: usize, tol: f64) -> Result<SurfaceGrid> {
    check_tol(tol)?;
    if resolution < 4 || resolution % 2 == 1 {
        return Err(Error::out_of_range(
            "G",
            resolution,
            "an even resolution G >= 4",
        ));
    }
    let g = resolution;
    let centre = |k: usize| (k as f64 + 0.5) / g as f64;
    let values = (0..g * g)
        .into_par_iter()
        .map(|idx| surface_value_extended(centre(idx / g), centre(idx % g), tol))
        .collect::<Result<Vec<f64>>>()?;
    Ok(SurfaceGrid {
        resolution,
        tol,
        values,
    })
}

/// Nearest even integer to `x`, ties upward.
pub fn round_even(x: f64) -> i64 {
    2 * (0.5 * x + 0.5).floor() as i64
}

#[derive(Clone, Debug, PartialEq)]
pub struct SliceRow {
    pub beta: f64,
    pub m_p: f64,
    pub phi: f64,
    pub diff: f64,
}

/// `m P(m, i, j)` against `phi(alpha, beta)` along one horizontal slice.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceTable {
    pub m: usize,
    pub alpha: f64,
    pub rows: Vec<SliceRow>,
}

impl SliceTable {
    pub fn to_csv(&self) -> String {
        let mut s = format!(
            "# dab-slice m={} alpha={}\nbeta,mP,phi,diff\n",
            self.m,
            format_float(self.alpha)
        );
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{},{},{}",
                format_float(r.beta),
                format_float(r.m_p),
                format_float(r.phi),
                format_float(r.diff)
            );
        }
        s
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
        let fields = header
            .strip_prefix("# dab-slice ")
            .ok_or_else(|| Error::parse(1, "missing `# dab-slice` header"))?;
        let m: usize = header_field(fields, "m")?;
        let alpha: f64 = header_field(fields, "alpha")?;
        match lines.next() {
            Some("beta,mP,phi,diff") => {}
            _ => return Err(Error::parse(2, "expected column line `beta,mP,phi,diff`")),
        }
        let mut rows = Vec::new();
        for (idx, line) in lines.enumerate() {
            let lineno = idx + 3;
            if line.trim().is_empty() {
                continue;
            }
            match parse_floats(line, lineno)?[..] {
                [beta, m_p, phi, diff] => rows.push(SliceRow {
                    beta,
                    m_p,
                    phi,
                    diff,
                }),
                _ => return Err(Error::parse(lineno, "expected 4 columns")),
            }
        }
        Ok(SliceTable { m, alpha, rows })
    }
}

/// `(i, j)` used for `(m, alpha, beta)`: `2 alpha m` and `2 beta m` rounded
/// to even integers.
pub fn slice_indices(m: usize, alpha: f64, beta: f64) -> (i64, i64) {
    let two_m = 2.0 * m as f64;
    (round_even(alpha * two_m), round_even(beta * two_m))
}

pub fn slice_compare(m: usize, alpha: f64, betas: &[f64]) -> Result<SliceTable> {
    if m == 0 || m > FLOAT_MAX_M {
        return Err(Error::out_of_range(
            "m",
            m,
            format!("1 <= m <= {FLOAT_MAX_M}"),
        ));
    }
    for &beta in betas {
        check_region(alpha, beta, DEFAULT_TOL)?;
        let (i, j) = slice_indices(m, alpha, beta);
        let n = 2 * m as i64;
        if i < 1 || j < 1 || i > n || j > n {
            return Err(Error::out_of_range(
                "(i, j)",
                format!("({i}, {j})"),
                format!("indices within 1..={n}; increase m or move (alpha, beta) inward"),
            ));
        }
    }
    let rows = betas
        .par_iter()
        .map(|&beta| {
            let (i, j) = slice_indices(m, alpha, beta);
            let m_p = m as f64 * probability_float(m as i64, i, j)?;
            let phi = phi_reduced(alpha, beta, DEFAULT_TOL)?;
            Ok(SliceRow {
                beta,
                m_p,
                phi,
                diff: m_p - phi,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SliceTable { m, alpha, rows })
}

/// Radical inverse of `index` in `base`.
pub fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

/// `n` Halton points (bases 2 and 3) spread over the region
/// `0 < a < b < 1 - a`, kept `margin` away from its edges.
pub fn halton_region_points(n: usize, margin: f64) -> Vec<(f64, f64)> {
    (1..=n as u64)
        .map(|k| {
            let a = margin + halton(k, 2) * (0.5 - 2.0 * margin);
            let lo = a + margin;
            let hi = 1.0 - a - margin;
            (a, lo + halton(k, 3) * (hi - lo))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_region_point(rng: &mut ChaCha8Rng, margin: f64) -> (f64, f64) {
        let a = rng.random_range(margin..0.5 - margin);
        let b = rng.random_range(a + margin..1.0 - a - margin);
        (a, b)
    }

    #[test]
    fn reference_values() {
        // Independent high-precision evaluations.
        let cases = [
            (0.075, 0.5, 0.188_843_429_543_735_48),
            (0.2, 0.45, 0.369_019_054_774_312_9),
            (0.3, 0.6, 0.579_315_881_872_035_6),
            (0.1, 0.12, 1.073_151_013_023_248_2),
        ];
        for (a, b, want) in cases {
            let got = phi_reduced(a, b, DEFAULT_TOL).unwrap();
            assert!((got - want).abs() < 1e-8, "({a},{b}): {got}");
        }
    }

    #[test]
    fn reduced_matches_two_dimensional() {
        let tol = 1e-9;
        for (a, b) in halton_region_points(20, 0.01) {
            let r = phi_reduced(a, b, tol).unwrap();
            let d = phi(a, b, tol).unwrap();
            assert!((r - d).abs() <= 10.0 * tol, "({a},{b}): {r} vs {d}");
        }
        for (a, b) in [(0.075, 0.5), (0.2, 0.45)] {
            let r = phi_reduced(a, b, tol).unwrap();
            let d = phi(a, b, tol).unwrap();
            assert!((r - d).abs() <= 10.0 * tol);
        }
    }

    #[test]
    fn vertical_mirror_identity_holds_in_two_dimensions() {
        for (a, b) in [(0.1, 0.3), (0.2, 0.25), (0.05, 0.4)] {
            let left = phi(a, b, 1e-10).unwrap();
            let right = phi(a, 1.0 - b, 1e-10).unwrap();
            assert!((left - right).abs() < 1e-9, "({a},{b})");
        }
    }

    #[test]
    fn antiderivative_differentiates_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let (a, b) = random_region_point(&mut rng, 0.01);
            let y = rng.random_range(0.001..a);
            let x = rng.random_range(0.0..a - y);
            let h = 1e-3 * (x + y).min(b - x);
            let f = |x| inner_antiderivative(x, y, b);
            // Fourth-order central difference.
            let fd =
                (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
            let want = 0.5 * (y + b).powi(2) * inner_integrand(x, y, b);
            assert!(((fd - want) / want).abs() < 1e-9, "({x},{y},{b})");
        }
    }

    #[test]
    fn symmetries_of_the_surface() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let tol = DEFAULT_TOL;
        let mut done = 0;
        while done < 50 {
            let x: f64 = rng.random_range(0.01..0.99);
            let y: f64 = rng.random_range(0.01..0.99);
            if (x - y).abs() < 1e-3 || (x + y - 1.0).abs() < 1e-3 {
                continue;
            }
            let v = surface_value(x, y, tol).unwrap();
            for (p, q) in [(y, x), (1.0 - y, 1.0 - x), (1.0 - x, 1.0 - y)] {
                let w = surface_value(p, q, tol).unwrap();
                assert!((v - w).abs() <= 10.0 * tol, "({x},{y}) vs ({p},{q})");
            }
            done += 1;
        }
    }

    #[test]
    fn surface_examples() {
        let tol = DEFAULT_TOL;
        let a = surface_value(0.3, 0.6, tol).unwrap();
        assert_eq!(a, surface_value(0.6, 0.3, tol).unwrap());
        assert!((a - surface_value(0.4, 0.7, tol).unwrap()).abs() <= 10.0 * tol);
        assert_eq!(
            surface_value(0.075, 0.5, tol).unwrap(),
            phi_reduced(0.075, 0.5, tol).unwrap()
        );
        assert!(surface_value(0.3, 0.3, tol).is_err());
        assert!(surface_value(0.3, 0.7, tol).is_err());
        assert!(surface_value(0.0, 0.5, tol).is_err());
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(phi(0.3, 0.2, 1e-8).is_err());
        assert!(phi_reduced(0.3, 0.7, 1e-8).is_err());
        assert!(phi_reduced(0.0, 0.5, 1e-8).is_err());
        assert!(phi_reduced(0.1, 0.5, 0.0).is_err());
        assert!(phi_reduced(0.1, 0.5, -1.0).is_err());
        assert!(phi_closure(0.5, 0.5, 1e-8).is_err());
    }

    #[test]
    fn positive_everywhere_tested() {
        for (a, b) in halton_region_points(200, 0.001) {
            assert!(phi_reduced(a, b, DEFAULT_TOL).unwrap() > 0.0);
        }
    }

    #[test]
    fn halving_tol_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let (a, b) = random_region_point(&mut rng, 0.005);
            let tol = 1e-6;
            let coarse = phi_reduced(a, b, tol).unwrap();
            let fine = phi_reduced(a, b, tol / 2.0).unwrap();
            assert!((coarse - fine).abs() < tol, "({a},{b})");
        }
    }

    #[test]
    fn boundary_values_are_limits() {
        for a in [0.05, 0.2, 0.45] {
            let on = phi_closure(a, a, 1e-10).unwrap();
            // The gap closes like sqrt(b - a).
            let mut last = f64::INFINITY;
            for gap in [1e-5, 1e-7, 1e-9] {
                let near = phi_reduced(a, a + gap, 1e-10).unwrap();
                let d = (on - near).abs();
                assert!(
                    d < 0.2 * last && d < 20.0 * gap.sqrt(),
                    "a={a}, gap={gap}: {d}"
                );
                last = d;
            }
            let anti = phi_closure(a, 1.0 - a, 1e-10).unwrap();
            assert!((on - anti).abs() < 1e-9);
        }
    }

    #[test]
    fn centre_approach() {
        let v = phi_reduced(0.499, 0.5, DEFAULT_TOL).unwrap();
        assert!((v - 1.419_553_634_641_183_7).abs() < 1e-7, "{v}");
        let closer = phi_closure(0.49995, 0.49995, DEFAULT_TOL).unwrap();
        assert!(closer > v && (closer - 1.5).abs() < 0.02, "{closer}");
    }

    #[test]
    fn grid_shape_and_symmetry() {
        let g = 20;
        let grid = surface_grid(g, GRID_TOL).unwrap();
        for u in 0..g {
            for v in 0..g {
                let x = grid.get(u, v);
                assert!(x > 0.0);
                for y in [
                    grid.get(v, u),
                    grid.get(g - 1 - v, g - 1 - u),
                    grid.get(g - 1 - u, v),
                    grid.get(u, g - 1 - v),
                ] {
                    assert!((x - y).abs() <= 10.0 * GRID_TOL);
                }
            }
        }
        assert!(surface_grid(21, GRID_TOL).is_err());
        assert!(surface_grid(2, GRID_TOL).is_err());
    }

    #[test]
    fn grid_height_profile() {
        let g = 100;
        let grid = surface_grid(g, GRID_TOL).unwrap();
        let c = |k: usize| (k as f64 + 0.5) / g as f64;
        for u in 0..g {
            for v in 0..g {
                let (x, y) = (c(u), c(v));
                let corner = x.min(1.0 - x).hypot(y.min(1.0 - y));
                let centre = (x - 0.5).hypot(y - 0.5);
                if corner >= 0.25 && centre >= 0.05 {
                    assert!(grid.get(u, v) <= 1.5, "({x},{y})");
                }
            }
        }
        // Centre-adjacent cells rise toward 3/2; the corner keeps growing.
        let mid = grid.get(g / 2 - 1, g / 2 - 1);
        let fine = surface_grid(200, GRID_TOL).unwrap();
        let fine_mid = fine.get(99, 99);
        assert!(
            mid > 1.35 && mid < fine_mid && fine_mid < 1.5,
            "{mid} {fine_mid}"
        );
        assert!(fine.get(0, 0) > grid.get(0, 0) * 1.3);
    }

    #[test]
    fn grid_csv_round_trip() {
        let grid = surface_grid(6, GRID_TOL).unwrap();
        let text = grid.to_csv();
        assert!(text.starts_with("# dab-surface G=6 tol=0.000001\n"));
        let back = SurfaceGrid::from_csv(&text).unwrap();
        assert_eq!(back, grid);
        assert_eq!(back.to_csv(), text);
        assert!(SurfaceGrid::from_csv("# dab-surface G=2 tol=1\n1,2\n").is_err());
    }

    #[test]
    fn even_rounding() {
        assert_eq!(round_even(75.0), 76);
        assert_eq!(round_even(74.9), 74);
        assert_eq!(round_even(75.1), 76);
        assert_eq!(round_even(37.5), 38);
        assert_eq!(slice_indices(250, 0.075, 0.5), (38, 250));
        assert_eq!(slice_indices(500, 0.075, 0.5), (76, 500));
        assert_eq!(slice_indices(1000, 0.075, 0.5), (150, 1000));
        assert_eq!(slice_indices(2000, 0.075, 0.5), (300, 2000));
    }

    #[test]
    fn slice_table() {
        let t = slice_compare(100, 0.075, &[0.3, 0.5, 0.7]).unwrap();
        assert_eq!(t.rows.len(), 3);
        for r in &t.rows {
            assert!((r.diff - (r.m_p - r.phi)).abs() < 1e-15);
            assert!(r.m_p > 0.0);
        }
        let text = t.to_csv();
        assert!(text.starts_with("# dab-slice m=100 alpha=0.075\nbeta,mP,phi,diff\n"));
        let back = SliceTable::from_csv(&text).unwrap();
        assert_eq!(back, t);
        assert_eq!(back.to_csv(), text);
        assert!(slice_compare(100, 0.075, &[0.95]).is_err());
        assert!(slice_compare(100, 0.001, &[0.5]).is_err());
    }

    #[test]
    fn halton_sequence() {
        assert_eq!(halton(1, 2), 0.5);
        assert_eq!(halton(3, 2), 0.75);
        assert!((halton(5, 3) - 7.0 / 9.0).abs() < 1e-15);
        for (a, b) in halton_region_points(50, 0.01) {
            assert!(a > 0.0 && a < b && b < 1.0 - a);
        }
    }
}
