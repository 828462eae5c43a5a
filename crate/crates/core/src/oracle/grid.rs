//! Grid-based check of strong transitivity: does the union of the first `M`
//! images of a box cover the torus?
//!
//! Each image `T^i(V)` is an exact parallelogram (interval when `n = 1`);
//! a grid cell counts as covered only when an integer translate of the whole
//! cell lies inside some image. The result is an inner approximation, so a
//! `CoveredWithin` answer is never caused by rasterization slack.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

pub const MAX_RESOLUTION: usize = 2048;
pub const MAX_STEPS: usize = 200;
const ROW_BUDGET: usize = 1 << 22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum GridOutcome {
    CoveredWithin { steps: usize },
    NotCoveredWithin { max_steps: usize },
}

impl GridOutcome {
    pub fn is_covered(&self) -> bool {
        matches!(self, GridOutcome::CoveredWithin { .. })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridParams {
    pub center: Vec<f64>,
    pub radius: f64,
    pub resolution: usize,
    pub max_steps: usize,
}

impl GridParams {
    pub fn new(center: Vec<f64>, radius: f64, resolution: usize, max_steps: usize) -> Self {
        GridParams { center, radius, resolution, max_steps }
    }
}

struct Bitmap {
    n: usize,
    size: usize,
    cells: Vec<bool>,
    marked: usize,
}

impl Bitmap {
    fn new(dim: usize, size: usize) -> Self {
        let total = size.pow(dim as u32);
        Bitmap { n: dim, size, cells: vec![false; total], marked: 0 }
    }

    fn full(&self) -> bool {
        self.marked == self.cells.len()
    }

    fn mark(&mut self, idx: usize) {
        if !self.cells[idx] {
            self.cells[idx] = true;
            self.marked += 1;
        }
    }

    fn mark_all(&mut self) {
        self.cells.iter_mut().for_each(|c| *c = true);
        self.marked = self.cells.len();
    }

    /// Marks columns `lo..hi` (in grid units, any integers) of `row`.
    fn mark_span(&mut self, row: usize, lo: i64, hi: i64) {
        if hi <= lo {
            return;
        }
        let s = self.size as i64;
        let base = if self.n == 1 { 0 } else { row * self.size };
        if hi - lo >= s {
            for c in 0..self.size {
                self.mark(base + c);
            }
            return;
        }
        for c in lo..hi {
            self.mark(base + c.rem_euclid(s) as usize);
        }
    }
}

/// `x`-range of the parallelogram with vertices `v` on the line at height `y`.
fn slice(v: &[[f64; 2]; 4], y: f64) -> Option<(f64, f64)> {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for k in 0..4 {
        let (p, q) = (v[k], v[(k + 1) % 4]);
        let (ylo, yhi) = if p[1] <= q[1] { (p[1], q[1]) } else { (q[1], p[1]) };
        if y < ylo || y > yhi {
            continue;
        }
        if p[1] == q[1] {
            lo = lo.min(p[0].min(q[0]));
            hi = hi.max(p[0].max(q[0]));
        } else {
            let x = p[0] + (y - p[1]) * (q[0] - p[0]) / (q[1] - p[1]);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

fn mark_interval(map: &mut Bitmap, lo: f64, hi: f64) {
    let nf = map.size as f64;
    if hi - lo >= 1.0 + 1.0 / nf {
        map.mark_all();
        return;
    }
    map.mark_span(0, (lo * nf).ceil() as i64, (hi * nf).floor() as i64);
}

/// `area` is passed in exactly (`|det A|^i·w²`); the cross product of long
/// edges loses all precision.
fn mark_parallelogram(map: &mut Bitmap, corner: [f64; 2], u: [f64; 2], v: [f64; 2], area: f64, step: usize) -> Result<()> {
    let nf = map.size as f64;
    let longest = u[0].hypot(u[1]).max(v[0].hypot(v[1]));
    let width = if longest > 0.0 { area / longest } else { 0.0 };
    if width >= std::f64::consts::SQRT_2 + 2.0 / nf {
        map.mark_all();
        return Ok(());
    }
    if width < 1.0 / nf {
        return Ok(());
    }
    let verts = [
        corner,
        [corner[0] + u[0], corner[1] + u[1]],
        [corner[0] + u[0] + v[0], corner[1] + u[1] + v[1]],
        [corner[0] + v[0], corner[1] + v[1]],
    ];
    let ymin = verts.iter().map(|p| p[1]).fold(f64::INFINITY, f64::min);
    let ymax = verts.iter().map(|p| p[1]).fold(f64::NEG_INFINITY, f64::max);
    let first = (ymin * nf).ceil() as i64;
    let last = (ymax * nf).floor() as i64;
    if last - first > ROW_BUDGET as i64 {
        return Err(Error::RasterBudget { step });
    }
    let s = map.size as i64;
    for j in first..last {
        let (Some(a), Some(b)) = (slice(&verts, j as f64 / nf), slice(&verts, (j + 1) as f64 / nf)) else {
            continue;
        };
        let lo = a.0.max(b.0);
        let hi = a.1.min(b.1);
        map.mark_span(j.rem_euclid(s) as usize, (lo * nf).ceil() as i64, (hi * nf).floor() as i64);
        if map.full() {
            break;
        }
    }
    Ok(())
}

/// Iterates `T(x) = A x + α mod 1` on the box `center ± radius` and reports
/// the first step at which the images cover every grid cell.
pub fn grid_transitivity_oracle(a: &IntMatrix, alpha: &[f64], params: &GridParams) -> Result<GridOutcome> {
    let n = a.rows();
    if !a.is_square() || !(1..=2).contains(&n) {
        return Err(Error::Precondition(format!("grid oracle supports n = 1 or 2, got {n}")));
    }
    if alpha.len() != n || params.center.len() != n {
        return Err(Error::Dimension("translation and box center must match the matrix".into()));
    }
    if params.resolution == 0 || params.resolution > MAX_RESOLUTION {
        return Err(Error::Precondition(format!("resolution must be in 1..={MAX_RESOLUTION}")));
    }
    if params.max_steps > MAX_STEPS {
        return Err(Error::Precondition(format!("at most {MAX_STEPS} steps are supported")));
    }
    if params.radius.is_nan() || params.radius <= 0.0 || !params.radius.is_finite() {
        return Err(Error::Argument("box radius must be positive".into()));
    }
    let am: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| f64_of(&a[(i, j)])).collect())
        .collect();
    let apply = |x: &[f64]| -> Vec<f64> { (0..n).map(|i| (0..n).map(|j| am[i][j] * x[j]).sum()).collect() };

    let w = 2.0 * params.radius;
    let mut corner: Vec<f64> = params.center.iter().map(|c| (c - params.radius).rem_euclid(1.0)).collect();
    // columns of A^i·(w I)
    let mut edges: Vec<Vec<f64>> = (0..n).map(|k| (0..n).map(|i| if i == k { w } else { 0.0 }).collect()).collect();
    let mut map = Bitmap::new(n, params.resolution);
    let det = f64_of(&crate::linalg::determinant(a)?).abs();
    let mut area = w.powi(n as i32);

    for step in 0..=params.max_steps {
        if n == 1 {
            let (x, e) = (corner[0], edges[0][0]);
            mark_interval(&mut map, x.min(x + e), x.max(x + e));
        } else {
            mark_parallelogram(
                &mut map,
                [corner[0], corner[1]],
                [edges[0][0], edges[0][1]],
                [edges[1][0], edges[1][1]],
                area,
                step,
            )?;
        }
        if map.full() {
            return Ok(GridOutcome::CoveredWithin { steps: step });
        }
        corner = apply(&corner).iter().zip(alpha).map(|(x, t)| (x + t).rem_euclid(1.0)).collect();
        edges = edges.iter().map(|e| apply(e)).collect();
        area *= det;
    }
    Ok(GridOutcome::NotCoveredWithin { max_steps: params.max_steps })
}

fn f64_of(x: &num_bigint::BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}
