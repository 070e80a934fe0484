//! Driving functions `U : [0, T] → ℝ` and their Hölder-1/2 analysis.
//!
//! All drivers are immutable after construction; evaluation is pure.

mod holder;
mod io;

pub use holder::{
    classify_regularity, classify_regularity_with, holder_global, holder_left_at,
    holder_report, holder_right_at, HolderReport, Ladder, OneSided, Regularity,
    RegularityVerdict, Side, DEFAULT_LADDER_LEN, DEFAULT_MARGIN,
};
pub use io::DriverDescriptor;

use crate::error::{Error, Result};

/// Depth of the dyadic zigzag grid handed to the solver by default.
pub const DEFAULT_DEPTH: u32 = 24;

/// Below this distance from `t = 1` a d-similar driver is clamped to its limit 0.
const D_SIMILAR_T_MIN: f64 = 1e-14;

/// Tolerance on the d-similar endpoint relation `V(d²) = d·V(1)`.
const D_SIMILAR_ENDPOINT_TOL: f64 = 1e-9;

/// A sampled function on a strictly increasing grid, linearly interpolated.
#[derive(Debug, Clone, PartialEq)]
pub struct Sampled {
    t: Vec<f64>,
    u: Vec<f64>,
}

impl Sampled {
    pub fn new(t: Vec<f64>, u: Vec<f64>) -> Result<Self> {
        if t.len() != u.len() {
            return Err(Error::Parameter(format!(
                "sample grid has {} times but {} values",
                t.len(),
                u.len()
            )));
        }
        if t.len() < 2 {
            return Err(Error::Parameter("a sampled driver needs at least two samples".into()));
        }
        if let Some(bad) = t.iter().chain(u.iter()).find(|v| !v.is_finite()) {
            return Err(Error::Parameter(format!("non-finite sample {bad}")));
        }
        if let Some(i) = t.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Parameter(format!(
                "sample times must be strictly increasing (t[{}] = {} >= t[{}] = {})",
                i,
                t[i],
                i + 1,
                t[i + 1]
            )));
        }
        Ok(Self { t, u })
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let (t, u) = pairs.into_iter().unzip();
        Self::new(t, u)
    }

    /// Sample `f` on `n` equally spaced points of `[a, b]`.
    pub fn tabulate(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        if n < 2 || !(b > a) {
            return Err(Error::Parameter("tabulation needs n >= 2 and b > a".into()));
        }
        let last = (n - 1) as f64;
        let t: Vec<f64> = (0..n)
            .map(|i| if i + 1 == n { b } else { a + (b - a) * i as f64 / last })
            .collect();
        let u = t.iter().map(|&s| f(s)).collect();
        Self::new(t, u)
    }

    pub fn times(&self) -> &[f64] {
        &self.t
    }

    pub fn values(&self) -> &[f64] {
        &self.u
    }

    pub fn start(&self) -> f64 {
        self.t[0]
    }

    pub fn end(&self) -> f64 {
        self.t[self.t.len() - 1]
    }

    pub fn min_spacing(&self) -> f64 {
        self.t.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
    }

    /// Linear interpolation; arguments outside the grid are clamped to it.
    pub fn interpolate(&self, s: f64) -> f64 {
        let n = self.t.len();
        if s <= self.t[0] {
            return self.u[0];
        }
        if s >= self.t[n - 1] {
            return self.u[n - 1];
        }
        let j = self.t.partition_point(|&x| x <= s);
        let (t0, t1) = (self.t[j - 1], self.t[j]);
        let (u0, u1) = (self.u[j - 1], self.u[j]);
        if s == t0 {
            return u0;
        }
        let w = (s - t0) / (t1 - t0);
        u0 + w * (u1 - u0)
    }
}

/// The driver families understood by the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum DriverKind {
    /// `U ≡ u`.
    Constant { u: f64 },
    /// `U(t) = c√t`; generates a ray.
    SqrtForward { c: f64 },
    /// `U(t) = c√(T - t)`; for `c ≥ 4` the curve returns to ℝ at `t = T`.
    SqrtBackward { c: f64 },
    /// Dyadic zigzag on `[0, 1]`: zero at `r_n = 1 - 2^-n`, peak
    /// `C·√(3/2^(n+2))` at `w_n = 1 - 3·2^-(n+2)`, linear in between.
    Theorem14 { c: f64, depth: u32 },
    /// `U(1 - t) = V(t)` with `d·V(t/d²) = V(t)` for `t ≤ d²` and `V` given
    /// on `[d², 1]` by the boundary piece.
    DSimilar { d: f64, piece: Sampled, depth: u32 },
    /// Zigzag pieces glued at every `1 - 2^-n`, each rescaled to its slot.
    CompositeExample { c: f64, depth: u32 },
    /// Linear interpolation of a table.
    Sampled(Sampled),
}

/// A continuous driving function on `[0, T]`, plus a real level offset `a`
/// added to every value.
#[derive(Debug, Clone, PartialEq)]
pub struct DrivingFunction {
    kind: DriverKind,
    horizon: f64,
    offset: f64,
}

fn check_positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be positive and finite, got {v}")))
    }
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{name} must be finite, got {v}")))
    }
}

impl DrivingFunction {
    pub fn constant(u: f64, horizon: f64) -> Result<Self> {
        check_finite("u", u)?;
        check_positive("T", horizon)?;
        Ok(Self { kind: DriverKind::Constant { u }, horizon, offset: 0.0 })
    }

    pub fn sqrt_forward(c: f64, horizon: f64) -> Result<Self> {
        check_finite("c", c)?;
        check_positive("T", horizon)?;
        Ok(Self { kind: DriverKind::SqrtForward { c }, horizon, offset: 0.0 })
    }

    pub fn sqrt_backward(c: f64, horizon: f64) -> Result<Self> {
        check_finite("c", c)?;
        check_positive("T", horizon)?;
        Ok(Self { kind: DriverKind::SqrtBackward { c }, horizon, offset: 0.0 })
    }

    /// The dyadic zigzag driver on `[0, 1]` whose left Hölder quotient at
    /// `t = 1` has limsup `c`. `depth` only limits the breakpoints offered to
    /// the solver; evaluation is closed-form at every level.
    pub fn theorem14(c: f64, depth: u32) -> Result<Self> {
        check_positive("C", c)?;
        if depth < 1 {
            return Err(Error::Parameter("depth must be at least 1".into()));
        }
        Ok(Self { kind: DriverKind::Theorem14 { c, depth }, horizon: 1.0, offset: 0.0 })
    }

    /// Build a d-similar driver from its boundary piece `V` on `[d², 1]`.
    pub fn d_similar(d: f64, piece: Sampled) -> Result<Self> {
        if !(d > 0.0 && d < 1.0) {
            return Err(Error::Parameter(format!("d must lie in (0, 1), got {d}")));
        }
        let d2 = d * d;
        let tol = 1e-12;
        if piece.start() > d2 + tol || piece.end() < 1.0 - tol {
            return Err(Error::Parameter(format!(
                "boundary piece covers [{}, {}] but must cover [d^2, 1] = [{d2}, 1]",
                piece.start(),
                piece.end()
            )));
        }
        let residual = piece.interpolate(d2) - d * piece.interpolate(1.0);
        if residual.abs() > D_SIMILAR_ENDPOINT_TOL {
            return Err(Error::Construction { residual });
        }
        Ok(Self {
            kind: DriverKind::DSimilar { d, piece, depth: DEFAULT_DEPTH },
            horizon: 1.0,
            offset: 0.0,
        })
    }

    /// Glue rescaled copies of a zigzag driver onto every dyadic slot
    /// `[1 - 2^-n, 1 - 2^-(n+1)]`.
    pub fn example32(base: &DrivingFunction) -> Result<Self> {
        match base.kind {
            DriverKind::Theorem14 { c, depth } if base.offset == 0.0 => Ok(Self {
                kind: DriverKind::CompositeExample { c, depth },
                horizon: 1.0,
                offset: 0.0,
            }),
            _ => Err(Error::Parameter("the composite example needs an unshifted zigzag base".into())),
        }
    }

    pub fn sampled(samples: Sampled) -> Result<Self> {
        if samples.start() != 0.0 {
            return Err(Error::Parameter(format!(
                "sampled drivers start at t = 0, got {}",
                samples.start()
            )));
        }
        let horizon = samples.end();
        Ok(Self { kind: DriverKind::Sampled(samples), horizon, offset: 0.0 })
    }

    /// Same driver shifted by the level offset `a` (`U + a`).
    pub fn with_offset(mut self, a: f64) -> Result<Self> {
        check_finite("a", a)?;
        self.offset = a;
        Ok(self)
    }

    /// Change the discretization depth of the dyadic kinds.
    pub fn with_depth(mut self, n: u32) -> Result<Self> {
        if n < 1 {
            return Err(Error::Parameter("depth must be at least 1".into()));
        }
        match &mut self.kind {
            DriverKind::Theorem14 { depth, .. }
            | DriverKind::CompositeExample { depth, .. }
            | DriverKind::DSimilar { depth, .. } => *depth = n,
            _ => {}
        }
        Ok(self)
    }

    pub fn kind(&self) -> &DriverKind {
        &self.kind
    }

    pub fn horizon(&self) -> f64 {
        self.horizon
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    /// Short human-readable id, e.g. `theorem14:C=5`.
    pub fn id(&self) -> String {
        let base = match &self.kind {
            DriverKind::Constant { u } => format!("const:u={u}"),
            DriverKind::SqrtForward { c } => format!("sqrt:c={c}"),
            DriverKind::SqrtBackward { c } => format!("backsqrt:c={c}"),
            DriverKind::Theorem14 { c, .. } => format!("theorem14:C={c}"),
            DriverKind::DSimilar { d, piece, .. } => {
                format!("dsimilar:d={d},nodes={}", piece.times().len())
            }
            DriverKind::CompositeExample { c, .. } => format!("example32:C={c}"),
            DriverKind::Sampled(s) => format!("sampled:nodes={}", s.times().len()),
        };
        if self.offset != 0.0 {
            format!("{base},a={}", self.offset)
        } else {
            base
        }
    }

    /// `U(t)`, checked against the domain `[0, T]`.
    pub fn eval(&self, t: f64) -> Result<f64> {
        if !(0.0..=self.horizon).contains(&t) {
            return Err(Error::Domain { t, horizon: self.horizon });
        }
        Ok(self.at(t))
    }

    /// `U(t)` without the domain check; arguments are clamped to `[0, T]`.
    #[inline]
    pub fn at(&self, t: f64) -> f64 {
        self.shape(t) + self.offset
    }

    /// `U(t) - a`: the driver without its level offset. Differences of the
    /// shape are exact under translation, which keeps discretization grids
    /// independent of the offset.
    pub fn shape(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, self.horizon);
        match &self.kind {
            DriverKind::Constant { u } => *u,
            DriverKind::SqrtForward { c } => c * t.sqrt(),
            DriverKind::SqrtBackward { c } => c * (self.horizon - t).sqrt(),
            DriverKind::Theorem14 { c, .. } => zigzag(*c, t),
            DriverKind::DSimilar { d, piece, .. } => d_similar_value(*d, piece, 1.0 - t),
            DriverKind::CompositeExample { c, .. } => composite_value(*c, t),
            DriverKind::Sampled(s) => s.interpolate(t),
        }
    }

    /// Kinks of the driver inside `(a, b)`, sorted. Handed to the solver as
    /// mandatory grid nodes.
    pub fn breakpoints(&self, a: f64, b: f64) -> Vec<f64> {
        let mut out: Vec<f64> = match &self.kind {
            DriverKind::Constant { .. }
            | DriverKind::SqrtForward { .. }
            | DriverKind::SqrtBackward { .. } => Vec::new(),
            DriverKind::Theorem14 { depth, .. } => zigzag_nodes(*depth),
            DriverKind::CompositeExample { depth, .. } => {
                let mut v = Vec::new();
                for n in 0..=*depth {
                    let start = 1.0 - (-(n as f64)).exp2();
                    let width = (-(n as f64) - 1.0).exp2();
                    v.push(start);
                    for node in zigzag_nodes(depth - n) {
                        v.push(start + node * width);
                    }
                }
                v
            }
            DriverKind::DSimilar { d, piece, depth } => {
                let d2 = d * d;
                let floor = (-(*depth as f64)).exp2();
                let with_nodes = piece.times().len() <= 256;
                let mut v = Vec::new();
                let mut scale = 1.0;
                while scale >= floor {
                    v.push(1.0 - scale * d2);
                    if with_nodes {
                        v.extend(piece.times().iter().map(|s| 1.0 - scale * s));
                    }
                    scale *= d2;
                }
                v
            }
            DriverKind::Sampled(s) => s.times().to_vec(),
        };
        out.retain(|&t| t > a && t < b);
        out.sort_by(f64::total_cmp);
        out.dedup();
        out
    }

    /// Oscillation scale used to size real offsets: `max(osc U, √T)`.
    pub fn amplitude(&self) -> f64 {
        let n = 1024;
        let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
        let grid = (0..=n).map(|i| self.horizon * i as f64 / n as f64);
        for t in grid.chain(self.breakpoints(0.0, self.horizon)) {
            let v = self.shape(t);
            lo = lo.min(v);
            hi = hi.max(v);
        }
        (hi - lo).max(self.horizon.sqrt())
    }

    /// The ratio `d` such that `U(1 - d² + d² t) - a = d·(U(t) - a)` on
    /// `[0, 1]`, when the driver is built to have one.
    pub fn self_similarity(&self) -> Option<f64> {
        if self.horizon != 1.0 {
            return None;
        }
        match &self.kind {
            DriverKind::Theorem14 { .. } | DriverKind::CompositeExample { .. } => {
                Some(std::f64::consts::FRAC_1_SQRT_2)
            }
            DriverKind::DSimilar { d, .. } => Some(*d),
            DriverKind::Constant { u } if *u == 0.0 => Some(std::f64::consts::FRAC_1_SQRT_2),
            _ => None,
        }
    }
}

/// Zigzag level `n` with `r_n ≤ t < r_{n+1}`, given `rest = 1 - t ∈ (0, 1]`.
fn dyadic_level(rest: f64) -> i32 {
    let mut n = (-rest.log2()).floor().max(0.0) as i32;
    while n > 0 && rest > (-n as f64).exp2() {
        n -= 1;
    }
    while rest <= (-(n as f64) - 1.0).exp2() {
        n += 1;
    }
    n
}

fn zigzag(c: f64, t: f64) -> f64 {
    if t >= 1.0 {
        return 0.0;
    }
    let rest = 1.0 - t;
    let n = dyadic_level(rest) as f64;
    // t - r_n = 2^-n - rest and r_{n+1} - t = rest - 2^-(n+1), both exact
    let rise = (-n).exp2() - rest;
    let fall = rest - (-n - 1.0).exp2();
    let slope = c * (3.0 * (n + 2.0).exp2()).sqrt();
    slope * rise.min(fall)
}

/// `r_n` and `w_n` for `n ≤ depth`, plus `r_{depth+1}`.
fn zigzag_nodes(depth: u32) -> Vec<f64> {
    let mut v = Vec::with_capacity(2 * depth as usize + 3);
    for n in 0..=depth {
        let n = n as f64;
        v.push(1.0 - (-n).exp2());
        v.push(1.0 - 3.0 * (-n - 2.0).exp2());
    }
    v.push(1.0 - (-(depth as f64) - 1.0).exp2());
    v
}

fn composite_value(c: f64, t: f64) -> f64 {
    if t >= 1.0 {
        return 0.0;
    }
    let rest = 1.0 - t;
    let n = dyadic_level(rest) as f64;
    // (t - r_n)·2^(n+1), exact
    let local = ((-n).exp2() - rest) * (n + 1.0).exp2();
    zigzag(c, local) / (n / 2.0).exp2()
}

fn d_similar_value(d: f64, piece: &Sampled, s: f64) -> f64 {
    let d2 = d * d;
    let mut s = s;
    let mut factor = 1.0;
    let max_rescales = (D_SIMILAR_T_MIN.ln() / d2.ln()).ceil() as usize + 1;
    for _ in 0..max_rescales {
        if s < D_SIMILAR_T_MIN {
            return 0.0;
        }
        if s >= d2 {
            return factor * piece.interpolate(s.min(1.0));
        }
        s /= d2;
        factor *= d;
    }
    0.0
}
