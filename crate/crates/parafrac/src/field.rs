//! Grids on `ℝⁿ`, sampled complex fields, and the fractional-order type.
//!
//! A grid is uniform and rectangular with an even number of points per axis.
//! Spatial nodes run `x_i = -L_i + j·h_i`, `j = 0..N_i-1`, with `h_i = 2L_i/N_i`.
//! Frequency nodes are integer multiples of `Δξ_i = π/L_i` in `[-π/h_i, π/h_i)`,
//! so both sides have `N_i` nodes and the node `ξ_i = 0` is present (index `N_i/2`).

use crate::error::Error;
use crate::{Result, C64};
use serde::{Deserialize, Serialize};

/// Which side of the Fourier transform a field lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    Space,
    Frequency,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Space => "space",
            Domain::Frequency => "frequency",
        }
    }
}

/// Complex fractional order `α = α₀ + iγ`.
///
/// No intrinsic restriction; the strip `(1-n)/2 ≤ α₀ ≤ 1` is checked only
/// where the exponent line requires it (see [`crate::normlab`]).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FracOrder {
    pub alpha0: f64,
    pub gamma: f64,
}

impl FracOrder {
    pub const fn new(alpha0: f64, gamma: f64) -> Self {
        Self { alpha0, gamma }
    }

    pub const fn real(alpha0: f64) -> Self {
        Self { alpha0, gamma: 0.0 }
    }

    pub fn as_c64(self) -> C64 {
        C64::new(self.alpha0, self.gamma)
    }

    pub fn from_c64(z: C64) -> Self {
        Self { alpha0: z.re, gamma: z.im }
    }

    /// `α + k` for integer ladder shifts.
    pub fn shift(self, k: i32) -> Self {
        Self { alpha0: self.alpha0 + k as f64, gamma: self.gamma }
    }

    /// True when `(1-n)/2 ≤ α₀ ≤ 1`.
    pub fn in_strip(self, dim: usize) -> bool {
        let lo = (1.0 - dim as f64) / 2.0;
        self.alpha0 >= lo - 1e-14 && self.alpha0 <= 1.0 + 1e-14
    }

    /// Parses `"re,im"` (or a bare real part).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (re, im) = match s.split_once(',') {
            Some((a, b)) => (a.trim(), Some(b.trim())),
            None => (s, None),
        };
        let alpha0: f64 = re
            .parse()
            .map_err(|_| Error::InvalidOrder(format!("bad real part in {s:?}")))?;
        let gamma: f64 = match im {
            Some(b) => b
                .parse()
                .map_err(|_| Error::InvalidOrder(format!("bad imaginary part in {s:?}")))?,
            None => 0.0,
        };
        if !alpha0.is_finite() || !gamma.is_finite() {
            return Err(Error::InvalidOrder(format!("non-finite order {s:?}")));
        }
        Ok(Self { alpha0, gamma })
    }
}

impl std::fmt::Display for FracOrder {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.gamma == 0.0 {
            write!(f, "{}", self.alpha0)
        } else {
            write!(f, "{}{:+}i", self.alpha0, self.gamma)
        }
    }
}

/// Sign of the one-sided kernel `(y_n - |y'|²)_±^{α-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelSign {
    Plus,
    Minus,
}

impl KernelSign {
    /// `+1` or `-1` as used in the continuation ladder `(±1)^k`.
    pub fn unit(self) -> f64 {
        match self {
            KernelSign::Plus => 1.0,
            KernelSign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            KernelSign::Plus => KernelSign::Minus,
            KernelSign::Minus => KernelSign::Plus,
        }
    }
}

/// Declarative grid description: dimension, half-extents, point counts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dim: usize,
    pub half_extent: Vec<f64>,
    pub points: Vec<usize>,
}

impl GridSpec {
    pub fn new(half_extent: &[f64], points: &[usize]) -> Self {
        Self {
            dim: half_extent.len(),
            half_extent: half_extent.to_vec(),
            points: points.to_vec(),
        }
    }

    /// Same half-extent `l` and point count `n` on every axis.
    pub fn cubic(dim: usize, l: f64, n: usize) -> Self {
        Self {
            dim,
            half_extent: vec![l; dim],
            points: vec![n; dim],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(1..=3).contains(&self.dim) {
            return Err(Error::Grid(format!("dim must be 1..=3, got {}", self.dim)));
        }
        if self.half_extent.len() != self.dim || self.points.len() != self.dim {
            return Err(Error::Grid("half_extent/points length must equal dim".into()));
        }
        for (i, &l) in self.half_extent.iter().enumerate() {
            if !(l > 0.0) || !l.is_finite() {
                return Err(Error::Grid(format!("half_extent[{i}] must be positive, got {l}")));
            }
        }
        for (i, &n) in self.points.iter().enumerate() {
            if n % 2 != 0 || n < 8 {
                return Err(Error::Grid(format!(
                    "points[{i}] must be even and >= 8, got {n}"
                )));
            }
        }
        Ok(())
    }
}

/// A validated grid with precomputed node coordinates on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    spec: GridSpec,
    spacing: Vec<f64>,
    freq_step: Vec<f64>,
    axes: Vec<Vec<f64>>,
    freq_axes: Vec<Vec<f64>>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    pub fn build(spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        let dim = spec.dim;
        let mut spacing = Vec::with_capacity(dim);
        let mut freq_step = Vec::with_capacity(dim);
        let mut axes = Vec::with_capacity(dim);
        let mut freq_axes = Vec::with_capacity(dim);
        for i in 0..dim {
            let l = spec.half_extent[i];
            let n = spec.points[i];
            let h = 2.0 * l / n as f64;
            let dxi = std::f64::consts::PI / l;
            spacing.push(h);
            freq_step.push(dxi);
            axes.push((0..n).map(|j| -l + j as f64 * h).collect());
            freq_axes.push((0..n).map(|k| (k as f64 - n as f64 / 2.0) * dxi).collect());
        }
        // row-major: the last axis is contiguous
        let mut strides = vec![0usize; dim];
        let mut acc = 1usize;
        for i in (0..dim).rev() {
            strides[i] = acc;
            acc *= spec.points[i];
        }
        Ok(Self {
            spec,
            spacing,
            freq_step,
            axes,
            freq_axes,
            strides,
            len: acc,
        })
    }

    pub fn cubic(dim: usize, l: f64, n: usize) -> Result<Self> {
        Self::build(GridSpec::cubic(dim, l, n))
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn dim(&self) -> usize {
        self.spec.dim
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn points(&self, axis: usize) -> usize {
        self.spec.points[axis]
    }

    pub fn half_extent(&self, axis: usize) -> f64 {
        self.spec.half_extent[axis]
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        self.spacing[axis]
    }

    pub fn freq_step(&self, axis: usize) -> f64 {
        self.freq_step[axis]
    }

    /// Spatial node coordinates along `axis`.
    pub fn axis(&self, axis: usize) -> &[f64] {
        &self.axes[axis]
    }

    /// Frequency node coordinates along `axis`.
    pub fn freq_axis(&self, axis: usize) -> &[f64] {
        &self.freq_axes[axis]
    }

    /// Cell volume `Π h_i` (Riemann weight on the spatial side).
    pub fn cell_volume(&self) -> f64 {
        self.spacing.iter().product()
    }

    /// Cell volume `Π Δξ_i` on the frequency side.
    pub fn freq_cell_volume(&self) -> f64 {
        self.freq_step.iter().product()
    }

    pub fn strides(&self) -> &[usize] {
        &self.strides
    }

    pub fn flat(&self, idx: &[usize]) -> usize {
        idx.iter().zip(&self.strides).map(|(i, s)| i * s).sum()
    }

    pub fn multi_index(&self, mut flat: usize, out: &mut [usize]) {
        for i in 0..self.dim() {
            out[i] = flat / self.strides[i];
            flat %= self.strides[i];
        }
    }

    /// Spatial coordinates of the node with flat index `flat`.
    pub fn node(&self, flat: usize, out: &mut [f64]) {
        let mut rest = flat;
        for i in 0..self.dim() {
            let j = rest / self.strides[i];
            rest %= self.strides[i];
            out[i] = self.axes[i][j];
        }
    }

    /// Frequency coordinates of the node with flat index `flat`.
    pub fn freq_node(&self, flat: usize, out: &mut [f64]) {
        let mut rest = flat;
        for i in 0..self.dim() {
            let k = rest / self.strides[i];
            rest %= self.strides[i];
            out[i] = self.freq_axes[i][k];
        }
    }

    /// Flat indices of the first node of every line along `axis`.
    pub fn line_starts(&self, axis: usize) -> Vec<usize> {
        let mut starts = Vec::with_capacity(self.len / self.points(axis));
        let mut idx = vec![0usize; self.dim()];
        loop {
            starts.push(self.flat(&idx));
            // odometer over all axes except `axis`
            let mut carry = true;
            for i in (0..self.dim()).rev() {
                if i == axis {
                    continue;
                }
                if carry {
                    idx[i] += 1;
                    if idx[i] == self.points(i) {
                        idx[i] = 0;
                    } else {
                        carry = false;
                    }
                }
            }
            if carry {
                break;
            }
        }
        starts
    }

    /// The interior half-box: same spacing, half the extent, aligned nodes.
    /// Requires every `N_i` divisible by 4 so the window is itself a valid grid.
    pub fn interior_half(&self) -> Result<Grid> {
        for i in 0..self.dim() {
            if self.points(i) % 4 != 0 {
                return Err(Error::Grid(format!(
                    "interior half-box needs points divisible by 4, axis {i} has {}",
                    self.points(i)
                )));
            }
        }
        let spec = GridSpec::new(
            &self
                .spec
                .half_extent
                .iter()
                .map(|l| l / 2.0)
                .collect::<Vec<_>>(),
            &self.spec.points.iter().map(|n| n / 2).collect::<Vec<_>>(),
        );
        Grid::build(spec)
    }

    /// Index offset of `sub`'s origin inside `self` per axis, if `sub` is an
    /// aligned subgrid (same spacing, nodes a subset of ours).
    fn subgrid_offsets(&self, sub: &Grid) -> Result<Vec<usize>> {
        if sub.dim() != self.dim() {
            return Err(Error::Grid("subgrid dimension mismatch".into()));
        }
        let mut offs = Vec::with_capacity(self.dim());
        for i in 0..self.dim() {
            let h = self.spacing(i);
            if (sub.spacing(i) - h).abs() > 1e-12 * h {
                return Err(Error::Grid(format!("subgrid spacing mismatch on axis {i}")));
            }
            let shift = (sub.axis(i)[0] - self.axis(i)[0]) / h;
            let off = shift.round();
            if (shift - off).abs() > 1e-9 || off < 0.0 {
                return Err(Error::Grid(format!("subgrid not node-aligned on axis {i}")));
            }
            let off = off as usize;
            if off + sub.points(i) > self.points(i) {
                return Err(Error::Grid(format!("subgrid exceeds parent on axis {i}")));
            }
            offs.push(off);
        }
        Ok(offs)
    }
}

/// Complex samples on a grid, tagged with the side they live on.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledField {
    grid: Grid,
    domain: Domain,
    values: Vec<C64>,
}

impl SampledField {
    pub fn new(grid: Grid, domain: Domain, values: Vec<C64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::Grid(format!(
                "value count {} does not match grid size {}",
                values.len(),
                grid.len()
            )));
        }
        if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Grid("non-finite field value".into()));
        }
        Ok(Self { grid, domain, values })
    }

    pub fn zeros(grid: Grid, domain: Domain) -> Self {
        let n = grid.len();
        Self {
            grid,
            domain,
            values: vec![C64::new(0.0, 0.0); n],
        }
    }

    /// Evaluates `f` at every spatial (or frequency) node.
    pub fn from_fn(grid: Grid, domain: Domain, f: impl Fn(&[f64]) -> C64) -> Self {
        let dim = grid.dim();
        let mut values = Vec::with_capacity(grid.len());
        let mut x = [0.0f64; 3];
        for flat in 0..grid.len() {
            match domain {
                Domain::Space => grid.node(flat, &mut x[..dim]),
                Domain::Frequency => grid.freq_node(flat, &mut x[..dim]),
            }
            values.push(f(&x[..dim]));
        }
        Self { grid, domain, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn values(&self) -> &[C64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [C64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<C64> {
        self.values
    }

    pub fn expect_domain(&self, d: Domain) -> Result<()> {
        if self.domain != d {
            return Err(Error::DomainMismatch {
                expected: d.name(),
                got: self.domain.name(),
            });
        }
        Ok(())
    }

    /// Riemann-sum `L^p` norm; `p = ∞` is the max of `|values|`.
    pub fn lp_norm(&self, p: f64) -> Result<f64> {
        if p.is_infinite() && p > 0.0 {
            return Ok(self
                .values
                .iter()
                .map(|v| v.norm())
                .fold(0.0f64, f64::max));
        }
        if !(p >= 1.0) {
            return Err(Error::InvalidParameter(format!("lp_norm needs p >= 1, got {p}")));
        }
        let w = match self.domain {
            Domain::Space => self.grid.cell_volume(),
            Domain::Frequency => self.grid.freq_cell_volume(),
        };
        let sum: f64 = self.values.iter().map(|v| v.norm().powf(p)).sum();
        Ok((sum * w).powf(1.0 / p))
    }

    pub fn l2_norm(&self) -> f64 {
        self.lp_norm(2.0).expect("p=2 is valid")
    }

    /// `‖self - other‖₂ / ‖other‖₂` (absolute norm of the difference when
    /// `other` vanishes).
    pub fn rel_l2_distance(&self, other: &SampledField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Grid("rel_l2_distance: grids differ".into()));
        }
        let w = self.grid.cell_volume();
        let mut num = 0.0;
        let mut den = 0.0;
        for (a, b) in self.values.iter().zip(&other.values) {
            num += (a - b).norm_sqr();
            den += b.norm_sqr();
        }
        let num = (num * w).sqrt();
        let den = (den * w).sqrt();
        Ok(if den > 0.0 { num / den } else { num })
    }

    pub fn max_abs_distance(&self, other: &SampledField) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::Grid("max_abs_distance: grids differ".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    /// Extracts the values on an aligned subgrid (e.g. the interior half-box).
    pub fn restrict(&self, sub: &Grid) -> Result<SampledField> {
        let offs = self.grid.subgrid_offsets(sub)?;
        let dim = self.grid.dim();
        let mut out = Vec::with_capacity(sub.len());
        let mut idx = vec![0usize; dim];
        for flat in 0..sub.len() {
            sub.multi_index(flat, &mut idx);
            let parent: usize = (0..dim)
                .map(|i| (idx[i] + offs[i]) * self.grid.strides()[i])
                .sum();
            out.push(self.values[parent]);
        }
        SampledField::new(sub.clone(), self.domain, out)
    }

    /// Separable cubic (Catmull-Rom) interpolation at an arbitrary spatial
    /// point. Points outside the grid box evaluate to zero, which matches the
    /// decay assumption on every field this is used with.
    pub fn interp(&self, x: &[f64]) -> C64 {
        debug_assert_eq!(x.len(), self.grid.dim());
        let dim = self.grid.dim();
        let mut base = [0isize; 3];
        let mut frac = [0.0f64; 3];
        for i in 0..dim {
            let ax = self.grid.axis(i);
            let h = self.grid.spacing(i);
            let t = (x[i] - ax[0]) / h;
            if !(0.0..=(ax.len() - 1) as f64).contains(&t) {
                return C64::new(0.0, 0.0);
            }
            let j = t.floor() as isize;
            base[i] = j;
            frac[i] = t - j as f64;
        }
        self.interp_rec(0, &mut [0isize; 3], &base, &frac)
    }

    fn interp_rec(&self, axis: usize, off: &mut [isize; 3], base: &[isize; 3], frac: &[f64; 3]) -> C64 {
        let dim = self.grid.dim();
        let mut vals = [C64::new(0.0, 0.0); 4];
        for (m, slot) in vals.iter_mut().enumerate() {
            off[axis] = m as isize - 1;
            *slot = if axis + 1 == dim {
                self.sample_clamped(off, base)
            } else {
                self.interp_rec(axis + 1, off, base, frac)
            };
        }
        catmull_rom(vals, frac[axis])
    }

    fn sample_clamped(&self, off: &[isize; 3], base: &[isize; 3]) -> C64 {
        let dim = self.grid.dim();
        let mut flat = 0usize;
        for i in 0..dim {
            let n = self.grid.points(i) as isize;
            let j = base[i] + off[i];
            if j < 0 || j >= n {
                return C64::new(0.0, 0.0);
            }
            flat += j as usize * self.grid.strides()[i];
        }
        self.values[flat]
    }
}

fn catmull_rom(v: [C64; 4], t: f64) -> C64 {
    let t2 = t * t;
    let t3 = t2 * t;
    0.5 * ((2.0 * v[1])
        + (v[2] - v[0]) * t
        + (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) * t2
        + (3.0 * v[1] - v[0] - 3.0 * v[2] + v[3]) * t3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_arithmetic_1d() {
        let g = Grid::cubic(1, 8.0, 16).unwrap();
        assert_eq!(g.spacing(0), 1.0);
        assert!((g.freq_step(0) - std::f64::consts::PI / 8.0).abs() < 1e-15);
        assert_eq!(g.axis(0)[0], -8.0);
        assert_eq!(g.axis(0)[15], 7.0);
        assert_eq!(g.freq_axis(0)[8], 0.0);
    }

    #[test]
    fn grid_node_count_2d() {
        let g = Grid::build(GridSpec::new(&[8.0, 8.0], &[64, 64])).unwrap();
        assert_eq!(g.len(), 4096);
    }

    #[test]
    fn odd_point_count_rejected() {
        assert!(Grid::build(GridSpec::new(&[8.0], &[15])).is_err());
        assert!(Grid::build(GridSpec::new(&[-1.0], &[16])).is_err());
        assert!(Grid::build(GridSpec::new(&[8.0], &[4])).is_err());
    }

    #[test]
    fn row_major_strides() {
        let g = Grid::build(GridSpec::new(&[4.0, 4.0, 4.0], &[8, 10, 12])).unwrap();
        assert_eq!(g.strides(), &[120, 12, 1]);
        assert_eq!(g.flat(&[1, 2, 3]), 147);
        let mut idx = [0usize; 3];
        g.multi_index(147, &mut idx);
        assert_eq!(idx, [1, 2, 3]);
    }

    #[test]
    fn interior_half_alignment() {
        let g = Grid::cubic(2, 8.0, 64).unwrap();
        let sub = g.interior_half().unwrap();
        assert_eq!(sub.points(0), 32);
        assert_eq!(sub.half_extent(0), 4.0);
        assert_eq!(sub.axis(0)[0], -4.0);
        // every subgrid node must exist in the parent
        let f = SampledField::from_fn(g, Domain::Space, |x| C64::new(x[0] + 2.0 * x[1], 0.0));
        let r = f.restrict(&sub).unwrap();
        let mut x = [0.0; 2];
        for flat in 0..sub.len() {
            sub.node(flat, &mut x);
            assert_eq!(r.values()[flat], C64::new(x[0] + 2.0 * x[1], 0.0));
        }
    }

    #[test]
    fn lp_norm_rejects_small_p() {
        let g = Grid::cubic(1, 8.0, 16).unwrap();
        let f = SampledField::zeros(g, Domain::Space);
        assert!(f.lp_norm(0.5).is_err());
        assert_eq!(f.lp_norm(1.0).unwrap(), 0.0);
    }

    #[test]
    fn cubic_interp_reproduces_cubics() {
        // Catmull-Rom is exact on cubic polynomials away from the boundary.
        let g = Grid::cubic(1, 8.0, 64).unwrap();
        let poly = |t: f64| 0.3 * t * t * t - t * t + 2.0 * t - 5.0;
        let f = SampledField::from_fn(g, Domain::Space, |x| C64::new(poly(x[0]), 0.0));
        for &t in &[-3.7, -0.2, 0.55, 2.9] {
            assert!((f.interp(&[t]).re - poly(t)).abs() < 1e-10);
        }
    }

    #[test]
    fn frac_order_parse() {
        assert_eq!(FracOrder::parse("0.5").unwrap(), FracOrder::real(0.5));
        assert_eq!(
            FracOrder::parse("-0.5, 1.25").unwrap(),
            FracOrder::new(-0.5, 1.25)
        );
        assert!(FracOrder::parse("x").is_err());
    }
}
