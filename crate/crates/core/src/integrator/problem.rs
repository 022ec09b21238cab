use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// `(x, y, out)`: writes `y''` into `out`.
pub type RhsFn = Arc<dyn Fn(f64, &[f64], &mut [f64]) + Send + Sync>;
/// `(x, out)`: writes a vector-valued function of `x` into `out`.
pub type VectorFn = Arc<dyn Fn(f64, &mut [f64]) + Send + Sync>;
pub type FrequencyFn = Arc<dyn Fn(f64, &[f64]) -> f64 + Send + Sync>;
pub type ScalarFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// `rhs(x, y) = λ(x) y + g(x)`, componentwise.
#[derive(Clone)]
pub struct LinearForm {
    pub lambda: ScalarFn,
    /// `None` for homogeneous problems.
    pub forcing: Option<VectorFn>,
}

/// Second-order initial value problem `y'' = f(x, y)`, `y(x0) = y0`,
/// `y'(x0) = dy0` on `[x_start, x_end]`.
#[derive(Clone)]
pub struct IvpProblem {
    name: String,
    dim: usize,
    rhs: RhsFn,
    x_start: f64,
    x_end: f64,
    y0: Vec<f64>,
    dy0: Vec<f64>,
    exact: Option<VectorFn>,
    frequency: FrequencyFn,
    linear: Option<LinearForm>,
    unit_slope_start: bool,
}

impl IvpProblem {
    pub fn new(
        name: impl Into<String>,
        (x_start, x_end): (f64, f64),
        y0: Vec<f64>,
        dy0: Vec<f64>,
        rhs: RhsFn,
    ) -> Result<Self> {
        let name = name.into();
        let dim = y0.len();
        if dim == 0 {
            return Err(Error::InvalidProblem(format!("{name}: dimension must be >= 1")));
        }
        if dy0.len() != dim {
            return Err(Error::InvalidProblem(format!(
                "{name}: y0 has {dim} components but y'0 has {}",
                dy0.len()
            )));
        }
        if !(x_end > x_start) || !x_start.is_finite() || !x_end.is_finite() {
            return Err(Error::InvalidProblem(format!(
                "{name}: interval [{x_start}, {x_end}] is empty"
            )));
        }
        Ok(Self {
            name,
            dim,
            rhs,
            x_start,
            x_end,
            y0,
            dy0,
            exact: None,
            frequency: Arc::new(|_, _| 0.0),
            linear: None,
            unit_slope_start: false,
        })
    }

    pub fn with_exact(mut self, exact: VectorFn) -> Self {
        self.exact = Some(exact);
        self
    }

    pub fn with_frequency(mut self, frequency: FrequencyFn) -> Self {
        self.frequency = frequency;
        self
    }

    /// Declares `rhs = λ(x) y + g(x)` so the implicit stage can be solved
    /// in closed form. The caller guarantees consistency with `rhs`.
    pub fn with_linear_form(mut self, linear: LinearForm) -> Self {
        self.linear = Some(linear);
        self
    }

    /// Rescale computed starting values so that the first component at the
    /// second grid point equals the step length. Only meaningful for linear
    /// homogeneous problems, whose solutions are defined up to a scale.
    pub fn with_unit_slope_start(mut self) -> Self {
        self.unit_slope_start = true;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn x_start(&self) -> f64 {
        self.x_start
    }

    pub fn x_end(&self) -> f64 {
        self.x_end
    }

    pub fn y0(&self) -> &[f64] {
        &self.y0
    }

    pub fn dy0(&self) -> &[f64] {
        &self.dy0
    }

    pub fn rhs(&self, x: f64, y: &[f64], out: &mut [f64]) {
        (self.rhs)(x, y, out)
    }

    pub fn rhs_vec(&self, x: f64, y: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.dim];
        self.rhs(x, y, &mut out);
        out
    }

    pub fn has_exact(&self) -> bool {
        self.exact.is_some()
    }

    pub fn exact(&self, x: f64) -> Option<Vec<f64>> {
        self.exact.as_ref().map(|e| {
            let mut out = vec![0.0; self.dim];
            e(x, &mut out);
            out
        })
    }

    pub fn frequency(&self, x: f64, y: &[f64]) -> f64 {
        (self.frequency)(x, y)
    }

    pub fn linear(&self) -> Option<&LinearForm> {
        self.linear.as_ref()
    }

    pub fn unit_slope_start(&self) -> bool {
        self.unit_slope_start
    }
}

impl fmt::Debug for IvpProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IvpProblem")
            .field("name", &self.name)
            .field("dim", &self.dim)
            .field("interval", &(self.x_start, self.x_end))
            .field("y0", &self.y0)
            .field("dy0", &self.dy0)
            .field("exact", &self.exact.is_some())
            .field("linear", &self.linear.is_some())
            .finish()
    }
}
