use std::collections::VecDeque;

use crate::error::{Error, Result};

/// One grid node: abscissa, solution and its second derivative.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub index: usize,
    pub x: f64,
    pub y: Vec<f64>,
    pub f: Vec<f64>,
}

/// Sliding window of the most recent `2k` records, oldest first.
///
/// Abscissas are always `origin + index * h`, never accumulated.
#[derive(Debug, Clone)]
pub struct StepState {
    records: VecDeque<Record>,
    origin: f64,
    h: f64,
}

impl StepState {
    /// Builds a window from `(y, f)` pairs at `origin + i h`, `i = 0, 1, ..`.
    /// `h` may be negative to run the recurrence backwards.
    pub fn from_values(origin: f64, h: f64, values: Vec<(Vec<f64>, Vec<f64>)>) -> Result<Self> {
        if h == 0.0 || !h.is_finite() {
            return Err(Error::InvalidProblem(format!("step length {h} is not usable")));
        }
        let records = values
            .into_iter()
            .enumerate()
            .map(|(index, (y, f))| Record {
                index,
                x: origin + index as f64 * h,
                y,
                f,
            })
            .collect();
        Ok(Self { records, origin, h })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn records(&self) -> &VecDeque<Record> {
        &self.records
    }

    pub fn newest(&self) -> &Record {
        self.records.back().expect("nonempty window")
    }

    pub(crate) fn next_x(&self) -> (usize, f64) {
        let index = self.newest().index + 1;
        (index, self.origin + index as f64 * self.h)
    }

    pub(crate) fn push(&mut self, record: Record) {
        self.records.pop_front();
        self.records.push_back(record);
    }

    /// Multiplies every stored `y` and `f` by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        for r in &mut out.records {
            r.y.iter_mut().for_each(|v| *v *= alpha);
            r.f.iter_mut().for_each(|v| *v *= alpha);
        }
        out
    }

    /// The same nodes in reverse order, stepping with `-h`.
    pub fn reversed(&self) -> Self {
        let last = self.newest().x;
        let values = self
            .records
            .iter()
            .rev()
            .map(|r| (r.y.clone(), r.f.clone()))
            .collect();
        Self::from_values(last, -self.h, values).expect("h is nonzero")
    }

    /// Checks equal spacing of the stored abscissas.
    pub fn is_equally_spaced(&self) -> bool {
        self.records
            .iter()
            .zip(self.records.iter().skip(1))
            .all(|(a, b)| (b.x - a.x - self.h).abs() < 1e-12 * a.x.abs().max(1.0))
    }
}

/// Grid samples of an integration.
#[derive(Debug, Clone)]
pub struct Trajectory {
    pub method: String,
    pub h: f64,
    dim: usize,
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl Trajectory {
    pub fn new(method: impl Into<String>, h: f64, dim: usize) -> Self {
        Self {
            method: method.into(),
            h,
            dim,
            xs: Vec::new(),
            ys: Vec::new(),
        }
    }

    pub fn push(&mut self, x: f64, y: &[f64]) {
        debug_assert_eq!(y.len(), self.dim);
        self.xs.push(x);
        self.ys.extend_from_slice(y);
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn x(&self, i: usize) -> f64 {
        self.xs[i]
    }

    pub fn y(&self, i: usize) -> &[f64] {
        &self.ys[i * self.dim..(i + 1) * self.dim]
    }

    pub fn last(&self) -> Option<(f64, &[f64])> {
        let n = self.len();
        (n > 0).then(|| (self.xs[n - 1], self.y(n - 1)))
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &[f64])> {
        self.xs.iter().copied().zip(self.ys.chunks_exact(self.dim))
    }

    /// Multiplies every sample by `alpha`.
    pub fn scaled(&self, alpha: f64) -> Self {
        let mut out = self.clone();
        out.ys.iter_mut().for_each(|v| *v *= alpha);
        out
    }

    /// Index of the grid point nearest to `x`.
    pub fn nearest_index(&self, x: f64) -> Option<usize> {
        self.xs
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - x).abs().total_cmp(&(b.1 - x).abs()))
            .map(|(i, _)| i)
    }
}
