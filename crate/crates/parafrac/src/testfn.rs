//! Closed-form Schwartz-class test functions.
//!
//! Every test function is a tensor product of per-axis factors of the form
//! `(Σ_k c_k H_k(√a (t-c))) e^{-a(t-c)²} e^{iωt}` with physicists' Hermite
//! polynomials `H_k`. The family is closed under differentiation, reflection,
//! translation and anisotropic dilation, and its Fourier transform (in the
//! `e^{+itξ}` convention) is available in closed form:
//!
//! `FT[H_k(√a(t-c)) e^{-a(t-c)²} e^{iωt}](ξ)
//!     = √(π/a) e^{ic(ξ+ω)} iᵏ ((ξ+ω)/√a)ᵏ e^{-(ξ+ω)²/(4a)}`.
//!
//! A factor with `c_0 = 0` and no modulation on the last axis makes the
//! spectrum vanish on the plane `ξ_n = 0` (to the order of the lowest
//! non-zero coefficient). This is the concrete stand-in for the Semyanistyi
//! class Φ: "vanishing to all orders" is realized as vanishing to the finite
//! order the factor encodes, which is what the discrete grid can see anyway.

use crate::C64;

/// Anything the quadrature operators can consume: pointwise-evaluable with a
/// known per-axis truncation radius.
pub trait Evaluate: Sync {
    fn dim(&self) -> usize;

    fn eval_point(&self, x: &[f64]) -> C64;

    /// Half-width `r` such that the function is negligible (relative size
    /// below `tol`) outside `|x_axis| ≤ r`.
    fn support_radius(&self, axis: usize, tol: f64) -> f64;
}

impl Evaluate for crate::field::SampledField {
    fn dim(&self) -> usize {
        self.grid().dim()
    }

    fn eval_point(&self, x: &[f64]) -> C64 {
        self.interp(x)
    }

    fn support_radius(&self, axis: usize, _tol: f64) -> f64 {
        // samples are zero-extended outside the box
        self.grid().half_extent(axis)
    }
}

/// One axis of a separable test function.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisFactor {
    width: f64,
    center: f64,
    modulation: f64,
    coeffs: Vec<C64>,
}

impl AxisFactor {
    pub fn gaussian(width: f64, center: f64) -> Self {
        assert!(width > 0.0, "gaussian width must be positive");
        Self {
            width,
            center,
            modulation: 0.0,
            coeffs: vec![C64::new(1.0, 0.0)],
        }
    }

    pub fn hermite(degree: usize, width: f64, center: f64) -> Self {
        assert!(width > 0.0, "gaussian width must be positive");
        let mut coeffs = vec![C64::new(0.0, 0.0); degree + 1];
        coeffs[degree] = C64::new(1.0, 0.0);
        Self {
            width,
            center,
            modulation: 0.0,
            coeffs,
        }
    }

    pub fn with_modulation(mut self, omega: f64) -> Self {
        self.modulation = omega;
        self
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn eval(&self, t: f64) -> C64 {
        let u = self.width.sqrt() * (t - self.center);
        let poly = hermite_sum(&self.coeffs, u);
        let mut v = poly * (-u * u).exp();
        if self.modulation != 0.0 {
            v *= C64::from_polar(1.0, self.modulation * t);
        }
        v
    }

    fn fourier_eval(&self, xi: f64) -> C64 {
        let a = self.width;
        let s = xi + self.modulation;
        let w = s / a.sqrt();
        // Σ c_k i^k w^k
        let iw = C64::new(0.0, w);
        let mut poly = C64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            poly = poly * iw + c;
        }
        let amp = (std::f64::consts::PI / a).sqrt() * (-s * s / (4.0 * a)).exp();
        poly * amp * C64::from_polar(1.0, self.center * s)
    }

    fn derivative(&self) -> Self {
        // d/du (H_k e^{-u²}) = -H_{k+1} e^{-u²}, u = √a (t-c), plus the
        // product-rule term from the modulation phase.
        let sqrt_a = self.width.sqrt();
        let mut coeffs = vec![C64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] -= sqrt_a * c;
            if self.modulation != 0.0 {
                coeffs[k] += C64::new(0.0, self.modulation) * c;
            }
        }
        Self {
            width: self.width,
            center: self.center,
            modulation: self.modulation,
            coeffs,
        }
    }

    fn reflect(&self) -> Self {
        // H_k(-u) = (-1)^k H_k(u)
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 0 { *c } else { -*c })
            .collect();
        Self {
            width: self.width,
            center: -self.center,
            modulation: -self.modulation,
            coeffs,
        }
    }

    fn translate(&self, d: f64) -> Self {
        let phase = C64::from_polar(1.0, -self.modulation * d);
        Self {
            width: self.width,
            center: self.center + d,
            modulation: self.modulation,
            coeffs: self.coeffs.iter().map(|c| c * phase).collect(),
        }
    }

    fn dilate(&self, lambda: f64) -> Self {
        assert!(lambda > 0.0, "dilation factor must be positive");
        Self {
            width: self.width * lambda * lambda,
            center: self.center / lambda,
            modulation: self.modulation * lambda,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Radius `r` (measured from the center) with
    /// `|factor(c ± u)| ≤ tol · max|factor|` for `u ≥ r`.
    fn tail_radius(&self, tol: f64) -> f64 {
        let env: Vec<f64> = self.coeffs.iter().map(|c| c.norm()).collect();
        let deg = self.degree() as f64;
        let u_hi = 8.0 + (2.0 * deg).sqrt() * 3.0 + (-tol.max(1e-300).ln()).sqrt();
        let steps = 4000;
        let du = u_hi / steps as f64;
        let mut peak = 0.0f64;
        let mut vals = Vec::with_capacity(steps + 1);
        for i in 0..=steps {
            let u = i as f64 * du;
            let v = hermite_abs_sum(&env, u) * (-u * u).exp();
            peak = peak.max(v);
            vals.push(v);
        }
        let cut = tol * peak;
        let mut idx = steps;
        while idx > 0 && vals[idx] <= cut {
            idx -= 1;
        }
        ((idx + 2) as f64 * du) / self.width.sqrt()
    }

    /// Upper bound for `sup_t (1+|t|)^k |factor(t)|`.
    fn weighted_sup(&self, k: usize) -> f64 {
        let env: Vec<f64> = self.coeffs.iter().map(|c| c.norm()).collect();
        let a = self.width;
        let reach = self.center.abs() + ((k as f64 + 1.0) / a).sqrt() * 4.0 + 12.0;
        let steps = 4000;
        let mut sup = 0.0f64;
        for i in 0..=steps {
            let t = -reach + 2.0 * reach * i as f64 / steps as f64;
            let u = a.sqrt() * (t - self.center);
            let v = hermite_abs_sum(&env, u.abs()) * (-u * u).exp();
            sup = sup.max((1.0 + t.abs()).powi(k as i32) * v);
        }
        sup * 1.01
    }
}

fn hermite_sum(coeffs: &[C64], u: f64) -> C64 {
    let mut acc = C64::new(0.0, 0.0);
    let mut h_prev = 0.0f64;
    let mut h = 1.0f64;
    for (k, &c) in coeffs.iter().enumerate() {
        acc += c * h;
        let h_next = 2.0 * u * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = h_next;
    }
    acc
}

fn hermite_abs_sum(env: &[f64], u: f64) -> f64 {
    let mut acc = 0.0;
    let mut h_prev = 0.0f64;
    let mut h = 1.0f64;
    for (k, &c) in env.iter().enumerate() {
        acc += c * h.abs();
        let h_next = 2.0 * u * h - 2.0 * k as f64 * h_prev;
        h_prev = h;
        h = h_next;
    }
    acc
}

/// Which closed-form family a [`TestFunction`] belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestFunctionKind {
    Gaussian,
    HermiteGaussian,
    PhiClass,
}

/// Separable Schwartz-class function with an analytic Fourier transform.
#[derive(Debug, Clone, PartialEq)]
pub struct TestFunction {
    factors: Vec<AxisFactor>,
}

impl TestFunction {
    pub fn new(factors: Vec<AxisFactor>) -> Self {
        assert!(
            (1..=3).contains(&factors.len()),
            "test functions live on ℝⁿ, n = 1..=3"
        );
        Self { factors }
    }

    /// Isotropic-width Gaussian `exp(-Σ a (x_i - c_i)²)`.
    pub fn gaussian(widths: &[f64], centers: &[f64]) -> Self {
        assert_eq!(widths.len(), centers.len());
        Self::new(
            widths
                .iter()
                .zip(centers)
                .map(|(&a, &c)| AxisFactor::gaussian(a, c))
                .collect(),
        )
    }

    /// Standard Gaussian `exp(-|x|²)` on `ℝⁿ`.
    pub fn unit_gaussian(dim: usize) -> Self {
        Self::gaussian(&vec![1.0; dim], &vec![0.0; dim])
    }

    /// Hermite-Gaussian with per-axis degrees.
    pub fn hermite_gaussian(degrees: &[usize], widths: &[f64], centers: &[f64]) -> Self {
        assert_eq!(degrees.len(), widths.len());
        assert_eq!(widths.len(), centers.len());
        Self::new(
            degrees
                .iter()
                .zip(widths.iter().zip(centers))
                .map(|(&d, (&a, &c))| AxisFactor::hermite(d, a, c))
                .collect(),
        )
    }

    /// Φ-class function: spectrum vanishes on `ξ_n = 0` to order `2m`.
    /// Transverse axes are plain Gaussians.
    pub fn phi_class(dim: usize, m: usize, width: f64) -> Self {
        assert!(m >= 1, "phi_class needs a vanishing order of at least 2");
        let mut factors: Vec<AxisFactor> =
            (0..dim - 1).map(|_| AxisFactor::gaussian(width, 0.0)).collect();
        factors.push(AxisFactor::hermite(2 * m, width, 0.0));
        Self::new(factors)
    }

    pub fn with_modulation(mut self, wavevector: &[f64]) -> Self {
        assert_eq!(wavevector.len(), self.factors.len());
        for (f, &w) in self.factors.iter_mut().zip(wavevector) {
            f.modulation = w;
        }
        self
    }

    pub fn kind(&self) -> TestFunctionKind {
        if self.is_phi_class() {
            TestFunctionKind::PhiClass
        } else if self.factors.iter().all(|f| f.degree() == 0) {
            TestFunctionKind::Gaussian
        } else {
            TestFunctionKind::HermiteGaussian
        }
    }

    /// True when the analytic spectrum vanishes on the plane `ξ_n = 0`.
    pub fn is_phi_class(&self) -> bool {
        let last = self.factors.last().unwrap();
        last.modulation == 0.0 && last.coeffs[0].norm() == 0.0
    }

    /// Order of vanishing of the spectrum at `ξ_n = 0` (0 when none).
    pub fn phi_vanishing_order(&self) -> usize {
        let last = self.factors.last().unwrap();
        if last.modulation != 0.0 {
            return 0;
        }
        last.coeffs
            .iter()
            .position(|c| c.norm() > 0.0)
            .unwrap_or(0)
    }

    /// Analytic Fourier transform at a frequency point, `e^{+ix·ξ}` forward
    /// convention.
    pub fn fourier_eval(&self, xi: &[f64]) -> C64 {
        debug_assert_eq!(xi.len(), self.dim());
        self.factors
            .iter()
            .zip(xi)
            .map(|(f, &s)| f.fourier_eval(s))
            .product()
    }

    /// Exact partial derivative along `axis`.
    pub fn derivative(&self, axis: usize) -> Self {
        let mut factors = self.factors.clone();
        factors[axis] = factors[axis].derivative();
        Self { factors }
    }

    /// `k`-th exact derivative along the last axis.
    pub fn derivative_n(&self, k: usize) -> Self {
        let mut g = self.clone();
        let axis = self.dim() - 1;
        for _ in 0..k {
            g = g.derivative(axis);
        }
        g
    }

    /// Reflection `x ↦ f(-x)`.
    pub fn reflect(&self) -> Self {
        Self {
            factors: self.factors.iter().map(AxisFactor::reflect).collect(),
        }
    }

    /// Translation `x ↦ f(x - shift)`.
    pub fn translate(&self, shift: &[f64]) -> Self {
        assert_eq!(shift.len(), self.dim());
        Self {
            factors: self
                .factors
                .iter()
                .zip(shift)
                .map(|(f, &d)| f.translate(d))
                .collect(),
        }
    }

    /// Anisotropic dilation `x ↦ f(λ₁ x₁, …, λₙ xₙ)`, all `λ_i > 0`.
    pub fn dilate(&self, lambdas: &[f64]) -> Self {
        assert_eq!(lambdas.len(), self.dim());
        Self {
            factors: self
                .factors
                .iter()
                .zip(lambdas)
                .map(|(f, &l)| f.dilate(l))
                .collect(),
        }
    }

    pub fn center(&self, axis: usize) -> f64 {
        self.factors[axis].center
    }

    /// Tail radius measured from the axis center.
    pub fn tail_radius(&self, axis: usize, tol: f64) -> f64 {
        self.factors[axis].tail_radius(tol)
    }

    /// Schwartz-seminorm-style bound: an upper bound for
    /// `sup_x (1+|x|)^k |φ(x)|`, using `(1+|x|)^k ≤ Π_i (1+|x_i|)^k`.
    pub fn seminorm_bound(&self, k: usize) -> f64 {
        self.factors.iter().map(|f| f.weighted_sup(k)).product()
    }
}

impl Evaluate for TestFunction {
    fn dim(&self) -> usize {
        self.factors.len()
    }

    fn eval_point(&self, x: &[f64]) -> C64 {
        debug_assert_eq!(x.len(), self.factors.len());
        let mut v = self.factors[0].eval(x[0]);
        for i in 1..self.factors.len() {
            v *= self.factors[i].eval(x[i]);
        }
        v
    }

    fn support_radius(&self, axis: usize, tol: f64) -> f64 {
        let f = &self.factors[axis];
        f.center.abs() + f.tail_radius(tol)
    }
}

/// Samples a test function exactly on the spatial nodes of a grid.
pub fn sample(f: &TestFunction, grid: &crate::field::Grid) -> crate::field::SampledField {
    crate::field::SampledField::from_fn(grid.clone(), crate::field::Domain::Space, |x| {
        f.eval_point(x)
    })
}

/// Samples the analytic spectrum of a test function on the frequency nodes.
pub fn sample_spectrum(f: &TestFunction, grid: &crate::field::Grid) -> crate::field::SampledField {
    crate::field::SampledField::from_fn(grid.clone(), crate::field::Domain::Frequency, |xi| {
        f.fourier_eval(xi)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn gaussian_point_values() {
        let f = TestFunction::unit_gaussian(1);
        assert_eq!(f.eval_point(&[0.0]), C64::new(1.0, 0.0));
        assert_relative_eq!(f.eval_point(&[1.0]).re, (-1.0f64).exp(), max_relative = 1e-15);
    }

    #[test]
    fn fourier_of_half_width_gaussian() {
        // e^{-x²/2} → √(2π) e^{-ξ²/2}
        let f = TestFunction::gaussian(&[0.5], &[0.0]);
        for &xi in &[0.0f64, 0.7, -1.3, 2.5] {
            let expect = (2.0 * std::f64::consts::PI).sqrt() * (-xi * xi / 2.0).exp();
            assert_relative_eq!(f.fourier_eval(&[xi]).re, expect, max_relative = 1e-14);
            assert!(f.fourier_eval(&[xi]).im.abs() < 1e-16);
        }
    }

    #[test]
    fn derivative_matches_closed_form() {
        // d/dt e^{-t²} = -2t e^{-t²}
        let f = TestFunction::unit_gaussian(1);
        let df = f.derivative(0);
        for &t in &[0.0f64, 0.3, -1.1, 2.2] {
            let expect = -2.0 * t * (-t * t).exp();
            assert_relative_eq!(df.eval_point(&[t]).re, expect, epsilon = 1e-14);
        }
    }

    #[test]
    fn derivative_of_modulated_factor() {
        // d/dt [e^{-t²} e^{iωt}] = (-2t + iω) e^{-t²} e^{iωt}
        let f = TestFunction::unit_gaussian(1).with_modulation(&[1.5]);
        let df = f.derivative(0);
        for &t in &[0.4, -0.9] {
            let base = f.eval_point(&[t]);
            let expect = C64::new(-2.0 * t, 1.5) * base;
            let got = df.eval_point(&[t]);
            assert_relative_eq!(got.re, expect.re, epsilon = 1e-13);
            assert_relative_eq!(got.im, expect.im, epsilon = 1e-13);
        }
    }

    #[test]
    fn phi_class_spectrum_vanishes_on_plane() {
        let f = TestFunction::phi_class(2, 1, 1.0);
        assert!(f.is_phi_class());
        assert_eq!(f.phi_vanishing_order(), 2);
        for &xi1 in &[0.0, 1.0, -2.5] {
            assert_eq!(f.fourier_eval(&[xi1, 0.0]), C64::new(0.0, 0.0));
        }
        // and the Fourier transform of the derivative ladder is consistent:
        // FT[∂ₙ f](ξ) = -iξₙ FT[f](ξ)
        let df = f.derivative(1);
        let xi = [0.4, 1.1];
        let lhs = df.fourier_eval(&xi);
        let rhs = C64::new(0.0, -xi[1]) * f.fourier_eval(&xi);
        assert_relative_eq!(lhs.re, rhs.re, epsilon = 1e-13);
        assert_relative_eq!(lhs.im, rhs.im, epsilon = 1e-13);
    }

    #[test]
    fn reflect_translate_dilate() {
        let f = TestFunction::hermite_gaussian(&[3], &[0.7], &[0.4]).with_modulation(&[0.9]);
        let g = f.reflect();
        for &t in &[0.2, -1.7] {
            let a = g.eval_point(&[t]);
            let b = f.eval_point(&[-t]);
            assert_relative_eq!(a.re, b.re, epsilon = 1e-14);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-14);
        }
        let h = f.translate(&[1.3]);
        for &t in &[0.2, -0.7] {
            let a = h.eval_point(&[t]);
            let b = f.eval_point(&[t - 1.3]);
            assert_relative_eq!(a.re, b.re, epsilon = 1e-14);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-14);
        }
        let s = f.dilate(&[2.0]);
        for &t in &[0.2, -0.4] {
            let a = s.eval_point(&[t]);
            let b = f.eval_point(&[2.0 * t]);
            assert_relative_eq!(a.re, b.re, epsilon = 1e-14);
            assert_relative_eq!(a.im, b.im, epsilon = 1e-14);
        }
    }

    #[test]
    fn support_radius_contains_mass() {
        let f = TestFunction::gaussian(&[1.0], &[2.0]);
        let r = f.support_radius(0, 1e-12);
        assert!(r > 2.0);
        assert!(f.eval_point(&[r]).norm() < 1e-11);
        assert!(f.eval_point(&[-r]).norm() < 1e-11);
    }
}
