//! Quadrature rules shared by the spatial-side operators.
//!
//! The half-line integrals `∫₀^∞ s^{α-1} A(s) ds` are split at `s₀ = 1`:
//! Gauss-Jacobi with weight exponent `α₀-1` absorbs the endpoint singularity
//! on `[0,1]` (the oscillatory factor `s^{iγ}` is folded into the integrand),
//! and fixed-width Gauss-Legendre panels cover `[1, s_max]`. Panels stay at
//! uniform width because the integrands are sliding bumps of fixed width:
//! geometric panels would under-resolve the far ones.

use crate::field::FracOrder;
use crate::{Error, Result, C64};
use gauss_quad::{GaussJacobi, GaussLegendre};

/// Node-count and truncation policy for the layered quadratures.
#[derive(Debug, Clone)]
pub struct QuadConfig {
    /// Gauss-Jacobi nodes on `[0, 1]`.
    pub jacobi_nodes: usize,
    /// Width of each Gauss-Legendre tail panel.
    pub tail_panel_width: f64,
    /// Gauss-Legendre nodes per tail panel.
    pub tail_nodes_per_panel: usize,
    /// Trapezoid nodes per axis of the inner box integral.
    pub inner_nodes: usize,
    /// Relative tail cut used when deriving truncation radii.
    pub tail_tol: f64,
    /// Additive slack on every derived truncation radius.
    pub margin: f64,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            jacobi_nodes: 40,
            tail_panel_width: 2.0,
            tail_nodes_per_panel: 14,
            inner_nodes: 96,
            tail_tol: 1e-12,
            margin: 1.0,
        }
    }
}

impl QuadConfig {
    /// Same policy with every node count scaled by `factor` (used by the
    /// convergence-under-refinement checks).
    pub fn refined(&self, factor: usize) -> Self {
        Self {
            jacobi_nodes: self.jacobi_nodes * factor,
            tail_panel_width: self.tail_panel_width,
            tail_nodes_per_panel: self.tail_nodes_per_panel * factor,
            inner_nodes: self.inner_nodes * factor,
            tail_tol: self.tail_tol,
            margin: self.margin,
        }
    }

    /// A deliberately coarse policy, used where a resolution-limited error is
    /// wanted (refinement-shrink checks).
    pub fn coarse() -> Self {
        Self {
            jacobi_nodes: 8,
            tail_panel_width: 2.0,
            tail_nodes_per_panel: 4,
            inner_nodes: 14,
            tail_tol: 1e-12,
            margin: 1.0,
        }
    }
}

/// `∫₀^∞ s^{α-1} f(s) ds` with the endpoint split described in the module
/// docs. The `1/Γ(α)` normalizer is *not* included.
#[derive(Debug, Clone)]
pub struct HalfLineRule {
    alpha: FracOrder,
    /// nodes in `(0,1)`; weights already contain `s^{α₀-1}`
    jacobi: Vec<(f64, f64)>,
    /// nodes in `[1, s_max]`; plain Gauss-Legendre weights
    tail: Vec<(f64, f64)>,
    s_max: f64,
    /// recorded bound on the neglected `[s_max, ∞)` part, relative to the
    /// integrand scale it was derived from
    pub truncation_bound: f64,
}

impl HalfLineRule {
    /// `alpha` must have `Re α > 0` so the Jacobi weight exponent `α₀-1`
    /// stays integrable.
    pub fn new(alpha: FracOrder, s_max: f64, cfg: &QuadConfig) -> Result<Self> {
        if alpha.alpha0 <= 0.0 {
            return Err(Error::InvalidOrder(format!(
                "half-line rule needs Re α > 0, got {}",
                alpha.alpha0
            )));
        }
        let deg = cfg.jacobi_nodes.max(2);
        let rule = GaussJacobi::new(deg, 0.0, alpha.alpha0 - 1.0)
            .map_err(|e| Error::InvalidParameter(format!("gauss-jacobi: {e}")))?;
        // map [-1,1] with weight (1+x)^{α₀-1} onto [0,1] with weight s^{α₀-1}
        let scale = 0.5f64.powf(alpha.alpha0);
        let jacobi: Vec<(f64, f64)> = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(x, w)| ((1.0 + x) / 2.0, w * scale))
            .collect();
        if jacobi.iter().any(|&(_, w)| !(w > 0.0)) {
            return Err(Error::InvalidParameter(
                "gauss-jacobi produced non-positive weights".into(),
            ));
        }

        let s_max = s_max.max(1.0);
        let legendre = GaussLegendre::new(cfg.tail_nodes_per_panel.max(2))
            .map_err(|e| Error::InvalidParameter(format!("gauss-legendre: {e}")))?;
        let mut tail = Vec::new();
        let mut a = 1.0f64;
        while a < s_max {
            let b = (a + cfg.tail_panel_width).min(s_max);
            for &(x, w) in legendre.as_node_weight_pairs() {
                tail.push(((a + b) / 2.0 + (b - a) / 2.0 * x, (b - a) / 2.0 * w));
            }
            a = b;
        }

        Ok(Self {
            alpha,
            jacobi,
            tail,
            s_max,
            truncation_bound: 0.0,
        })
    }

    pub fn alpha(&self) -> FracOrder {
        self.alpha
    }

    pub fn s_max(&self) -> f64 {
        self.s_max
    }

    pub fn jacobi_exponent(&self) -> f64 {
        self.alpha.alpha0 - 1.0
    }

    /// Evaluates `∫₀^∞ s^{α-1} f(s) ds`.
    pub fn integrate(&self, mut f: impl FnMut(f64) -> C64) -> C64 {
        let gamma = self.alpha.gamma;
        let mut acc = C64::new(0.0, 0.0);
        for &(s, w) in &self.jacobi {
            let mut v = f(s);
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            if gamma != 0.0 {
                v *= C64::from_polar(1.0, gamma * s.ln());
            }
            acc += w * v;
        }
        let a0m1 = self.alpha.alpha0 - 1.0;
        for &(s, w) in &self.tail {
            let v = f(s);
            if v.re == 0.0 && v.im == 0.0 {
                continue;
            }
            let ln_s = s.ln();
            let kernel = C64::from_polar(s.powf(a0m1), gamma * ln_s);
            acc += w * kernel * v;
        }
        acc
    }
}

/// Trapezoid nodes and weights on `[-r, r]` with `m ≥ 2` nodes.
pub fn trapezoid(r: f64, m: usize) -> Vec<(f64, f64)> {
    let m = m.max(2);
    let h = 2.0 * r / (m - 1) as f64;
    (0..m)
        .map(|i| {
            let w = if i == 0 || i == m - 1 { h / 2.0 } else { h };
            (-r + i as f64 * h, w)
        })
        .collect()
}

/// Tensor-product trapezoid rule over a `d`-dimensional box, `d ∈ {0, 1, 2}`.
/// `d = 0` is the empty product: a single node with weight one.
#[derive(Debug, Clone)]
pub struct BoxRule {
    axes: Vec<Vec<(f64, f64)>>,
}

impl BoxRule {
    pub fn new(radii: &[f64], nodes_per_axis: usize) -> Self {
        Self {
            axes: radii
                .iter()
                .map(|&r| trapezoid(r, nodes_per_axis))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    /// Applies `f(point, weight_product)` over the tensor grid.
    pub fn integrate(&self, mut f: impl FnMut(&[f64]) -> C64) -> C64 {
        match self.axes.len() {
            0 => f(&[]),
            1 => {
                let mut acc = C64::new(0.0, 0.0);
                for &(y, w) in &self.axes[0] {
                    acc += w * f(&[y]);
                }
                acc
            }
            2 => {
                let mut acc = C64::new(0.0, 0.0);
                for &(y0, w0) in &self.axes[0] {
                    for &(y1, w1) in &self.axes[1] {
                        acc += w0 * w1 * f(&[y0, y1]);
                    }
                }
                acc
            }
            _ => unreachable!("inner boxes are at most 2-dimensional"),
        }
    }
}

/// Adaptive Simpson quadrature for smooth real integrands.
pub fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson(f: &dyn Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
        let m = (a + b) / 2.0;
        let fm = f(m);
        ((b - a) / 6.0 * (fa + 4.0 * fm + fb), m, fm)
    }
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        fa: f64,
        b: f64,
        fb: f64,
        whole: f64,
        m: f64,
        fm: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let (left, lm, flm) = simpson(f, a, fa, m, fm);
        let (right, rm, frm) = simpson(f, m, fm, b, fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        rec(f, a, fa, m, fm, left, lm, flm, tol / 2.0, depth - 1)
            + rec(f, m, fm, b, fb, right, rm, frm, tol / 2.0, depth - 1)
    }
    let fa = f(a);
    let fb = f(b);
    let (whole, m, fm) = simpson(f, a, fa, b, fb);
    rec(f, a, fa, b, fb, whole, m, fm, tol, 40)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn half_line_rule_reproduces_power_integral() {
        // ∫₀^∞ s^{α-1} e^{-s} ds = Γ(α)
        let cfg = QuadConfig::default();
        for &a0 in &[0.05, 0.5, 1.0, 1.7] {
            let rule = HalfLineRule::new(FracOrder::real(a0), 60.0, &cfg).unwrap();
            let got = rule.integrate(|s| C64::new((-s).exp(), 0.0));
            let expect = crate::special::gamma(C64::new(a0, 0.0)).re;
            assert_relative_eq!(got.re, expect, max_relative = 1e-10);
        }
    }

    #[test]
    fn half_line_rule_complex_order() {
        // ∫₀^1 s^{α-1} ds = 1/α reveals how the rule copes with s^{iγ}
        let cfg = QuadConfig::default();
        for &gamma in &[0.5, 1.0, 2.0] {
            let alpha = FracOrder::new(0.75, gamma);
            let rule = HalfLineRule::new(alpha, 1.0, &cfg).unwrap();
            let got = rule.integrate(|s| if s <= 1.0 { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) });
            let expect = 1.0 / alpha.as_c64();
            assert!((got - expect).norm() < 2e-6, "γ={gamma}: {got} vs {expect}");
        }
    }

    #[test]
    fn half_line_rejects_nonpositive_order() {
        assert!(HalfLineRule::new(FracOrder::real(0.0), 10.0, &QuadConfig::default()).is_err());
        assert!(HalfLineRule::new(FracOrder::real(-0.5), 10.0, &QuadConfig::default()).is_err());
    }

    #[test]
    fn trapezoid_integrates_gaussian() {
        let rule = BoxRule::new(&[8.0], 96);
        let got = rule.integrate(|y| C64::new((-y[0] * y[0]).exp(), 0.0));
        assert_relative_eq!(got.re, std::f64::consts::PI.sqrt(), max_relative = 1e-12);
    }

    #[test]
    fn empty_box_is_point_evaluation() {
        let rule = BoxRule::new(&[], 16);
        let got = rule.integrate(|_| C64::new(2.5, 1.0));
        assert_eq!(got, C64::new(2.5, 1.0));
    }

    #[test]
    fn adaptive_simpson_gaussian() {
        let v = adaptive_simpson(&|t: f64| (-t * t).exp(), -10.0, 10.0, 1e-12);
        assert_relative_eq!(v, std::f64::consts::PI.sqrt(), max_relative = 1e-10);
    }
}
