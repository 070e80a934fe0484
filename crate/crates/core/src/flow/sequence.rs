use num_complex::Complex64;

use super::config::{Refinement, SolverConfig, MAX_STEPS};
use crate::complex::{slit_forward_rel, slit_inverse_rel, slit_tip};
use crate::driving::DrivingFunction;
use crate::error::{Error, Result};

/// One elementary step: driver value `u` frozen for a duration `dt`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub u: f64,
    pub dt: f64,
}

impl Step {
    #[inline]
    fn band(&self) -> f64 {
        2.0 * self.dt.sqrt()
    }
}

/// Ordered elementary slit maps discretizing the flow on `[0, T]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MapSequence {
    steps: Vec<Step>,
    /// Step boundaries, `times[0] = 0`, `times.len() = steps.len() + 1`.
    times: Vec<f64>,
    /// `U(0)`, the base point of the hull.
    start: f64,
}

impl MapSequence {
    /// Build a sequence from explicit steps starting at time 0.
    pub fn from_steps(steps: Vec<Step>, start: f64) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::Parameter("a map sequence needs at least one step".into()));
        }
        if let Some(s) = steps.iter().find(|s| !(s.dt > 0.0 && s.dt.is_finite() && s.u.is_finite())) {
            return Err(Error::Parameter(format!("invalid step {s:?}")));
        }
        let mut times = Vec::with_capacity(steps.len() + 1);
        let mut t = 0.0;
        times.push(t);
        for s in &steps {
            t += s.dt;
            times.push(t);
        }
        Ok(Self { steps, times, start })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn total_time(&self) -> f64 {
        self.times[self.times.len() - 1]
    }

    pub fn start_value(&self) -> f64 {
        self.start
    }

    /// The first `k` steps.
    pub fn prefix(&self, k: usize) -> Self {
        let k = k.clamp(1, self.steps.len());
        Self {
            steps: self.steps[..k].to_vec(),
            times: self.times[..=k].to_vec(),
            start: self.start,
        }
    }

    /// Steps up to the boundary closest to `t`.
    pub fn prefix_until(&self, t: f64) -> Self {
        let k = self.times.partition_point(|&s| s < t);
        let k = if k < self.times.len() && k > 0 && (self.times[k - 1] - t).abs() < (self.times[k] - t).abs() {
            k - 1
        } else {
            k
        };
        self.prefix(k)
    }

    /// `self` followed by `next` (the flow of `next` runs after `self`).
    pub fn concat(&self, next: &MapSequence) -> Self {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&next.steps);
        let offset = self.total_time();
        let mut times = self.times.clone();
        times.extend(next.times[1..].iter().map(|t| t + offset));
        Self { steps, times, start: self.start }
    }

    /// `g_T(z)`, applying the steps in time order.
    pub fn forward_map(&self, z: Complex64) -> Result<Complex64> {
        let mut z = z;
        for (k, s) in self.steps.iter().enumerate() {
            let zeta = z - s.u;
            if zeta.im <= 0.0 && zeta.re.abs() < s.band() {
                return Err(Error::Swallowed { step: k });
            }
            z = slit_forward_rel(zeta, s.dt) + s.u;
        }
        Ok(z)
    }

    /// `g_T(z) - z`, accumulated step by step without cancellation.
    /// Used for far-field capacity estimates.
    pub fn forward_displacement(&self, z: Complex64) -> Complex64 {
        let mut z = z;
        let mut disp = Complex64::new(0.0, 0.0);
        for s in &self.steps {
            let zeta = z - s.u;
            let r = slit_forward_rel(zeta, s.dt);
            disp += 4.0 * s.dt / (r + zeta);
            z = r + s.u;
        }
        disp
    }

    /// `f_T(w) = g_T⁻¹(w)`, applying the inverse steps in reverse order.
    /// Real points that fall into the band `|w - u| < 2√dt` of a step lie on
    /// the hull and are rejected; [`MapSequence::pull_back`] accepts them.
    pub fn inverse_map(&self, w: Complex64) -> Result<Complex64> {
        let mut w = w;
        for (k, s) in self.steps.iter().enumerate().rev() {
            let omega = w - s.u;
            if omega.im <= 0.0 && omega.re.abs() < s.band() {
                return Err(Error::OnHull { step: k });
            }
            w = slit_inverse_rel(omega, s.dt) + s.u;
        }
        Ok(w)
    }

    /// Inverse of the first `k` steps, extended continuously to the real
    /// axis: band points map onto the hull boundary.
    pub fn pull_back(&self, k: usize, w: Complex64) -> Complex64 {
        let mut w = w;
        for s in self.steps[..k.min(self.steps.len())].iter().rev() {
            w = slit_inverse_rel(w - s.u, s.dt) + s.u;
        }
        w
    }

    /// [`MapSequence::pull_back`] for several `(k, w)` at once, `ks`
    /// nondecreasing. Independent chains run in lockstep, which lets the
    /// square roots of different points overlap.
    pub fn pull_back_many(&self, ks: &[usize], ws: &mut [Complex64]) {
        debug_assert_eq!(ks.len(), ws.len());
        debug_assert!(ks.windows(2).all(|p| p[0] <= p[1]));
        let Some(&top) = ks.last() else { return };
        let top = top.min(self.steps.len());
        let mut first = ks.partition_point(|&k| k < top);
        for j in (0..top).rev() {
            while first > 0 && ks[first - 1] > j {
                first -= 1;
            }
            let s = self.steps[j];
            for w in &mut ws[first..] {
                *w = slit_inverse_rel(*w - s.u, s.dt) + s.u;
            }
        }
    }

    /// The hull tip `γ(t_k)` at step boundary `k ≥ 1`, optionally seeded at
    /// height `y0` above the driver instead of at the exact slit tip.
    pub fn tip_at_boundary(&self, k: usize, y0: f64) -> Complex64 {
        if k == 0 {
            return Complex64::new(self.start, 0.0);
        }
        let s = self.steps[k - 1];
        if y0 > 0.0 {
            self.pull_back(k, Complex64::new(s.u, y0))
        } else {
            self.pull_back(k - 1, slit_tip(s.u, s.dt))
        }
    }

    /// `γ(t)` for any `t ∈ [0, T]`: the step containing `t` is applied
    /// partially, which gives its exact tip at that time.
    pub fn curve_at(&self, t: f64) -> Complex64 {
        if t <= 0.0 {
            return Complex64::new(self.start, 0.0);
        }
        let t = t.min(self.total_time());
        // first k with times[k+1] >= t
        let k = self.times[1..].partition_point(|&s| s < t).min(self.steps.len() - 1);
        let s = self.steps[k];
        let partial = (t - self.times[k]).clamp(0.0, s.dt);
        if partial == 0.0 {
            return self.tip_at_boundary(k, 0.0);
        }
        self.pull_back(k, slit_tip(s.u, partial))
    }
}

/// Discretize `f` on `[0, T]` under `cfg`.
pub fn discretize(f: &DrivingFunction, horizon: f64, cfg: &SolverConfig) -> Result<MapSequence> {
    discretize_with_nodes(f, horizon, cfg, &[])
}

fn calm(f: &DrivingFunction, a: f64, m: f64, b: f64, kappa: f64) -> bool {
    let (ua, um, ub) = (f.shape(a), f.shape(m), f.shape(b));
    let h = b - a;
    (ub - ua).abs() <= kappa * h.sqrt()
        && (um - ua).abs() <= kappa * (m - a).sqrt()
        && (ub - um).abs() <= kappa * (b - m).sqrt()
}

/// Like [`discretize`], with extra mandatory grid nodes (e.g. the start
/// times of a weld check).
pub fn discretize_with_nodes(
    f: &DrivingFunction,
    horizon: f64,
    cfg: &SolverConfig,
    extra: &[f64],
) -> Result<MapSequence> {
    cfg.validate()?;
    if !(horizon > 0.0 && horizon <= f.horizon() * (1.0 + 1e-12)) {
        return Err(Error::Parameter(format!(
            "horizon {horizon} must lie in (0, {}]",
            f.horizon()
        )));
    }
    let horizon = horizon.min(f.horizon());
    let base = ((horizon / cfg.base_step) - 1e-9).ceil().max(1.0);
    if base > MAX_STEPS as f64 {
        return Err(Error::Resolution(format!("{base} base steps exceed the step cap")));
    }
    let base = base as usize;
    let mut nodes: Vec<f64> = (0..=base)
        .map(|i| if i == base { horizon } else { horizon * i as f64 / base as f64 })
        .collect();
    nodes.extend(f.breakpoints(0.0, horizon));
    nodes.extend(extra.iter().copied().filter(|&t| t > 0.0 && t < horizon));
    nodes.sort_by(f64::total_cmp);
    let min_gap = 4.0 * f64::EPSILON * horizon;
    let mut grid: Vec<f64> = Vec::with_capacity(nodes.len());
    for t in nodes {
        match grid.last() {
            Some(&last) if t - last <= min_gap => {}
            _ => grid.push(t),
        }
    }
    // keep the exact horizon as the last node
    if let Some(last) = grid.last_mut() {
        *last = horizon;
    }

    let adaptive = cfg.refinement == Refinement::DyadicAdaptive;
    let mut steps = Vec::with_capacity(grid.len());
    let mut times = Vec::with_capacity(grid.len());
    times.push(0.0);
    let mut stack: Vec<(f64, f64, u32)> = Vec::new();
    for w in grid.windows(2) {
        stack.push((w[0], w[1], 0));
        while let Some((a, b, depth)) = stack.pop() {
            let m = 0.5 * (a + b);
            let accept = !adaptive
                || depth >= cfg.max_refine_depth
                || m <= a
                || m >= b
                || calm(f, a, m, b, cfg.kappa);
            if accept {
                if steps.len() >= MAX_STEPS {
                    return Err(Error::Resolution(format!(
                        "adaptive subdivision exceeds {MAX_STEPS} steps"
                    )));
                }
                steps.push(Step { u: f.at(m), dt: b - a });
                times.push(b);
            } else {
                stack.push((m, b, depth + 1));
                stack.push((a, m, depth + 1));
            }
        }
    }
    Ok(MapSequence { steps, times, start: f.at(0.0) })
}
