use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::problems::{problem_by_id, Metric};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub problem: String,
    pub methods: Vec<String>,
    /// Strictly increasing, at least two values.
    pub n_steps: Vec<usize>,
    pub metric: Metric,
    pub out: Option<PathBuf>,
}

impl SweepConfig {
    pub fn new(
        problem: impl Into<String>,
        methods: Vec<String>,
        n_steps: Vec<usize>,
        metric: Metric,
    ) -> Result<Self> {
        let cfg = Self {
            problem: problem.into(),
            methods,
            n_steps,
            metric,
            out: None,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn with_out(mut self, out: impl Into<PathBuf>) -> Self {
        self.out = Some(out.into());
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.methods.is_empty() {
            return Err(Error::Config("no methods given".into()));
        }
        if self.n_steps.len() < 2 {
            return Err(Error::Config("need at least two step counts".into()));
        }
        if !self.n_steps.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::Config(format!(
                "step counts must be strictly increasing: {:?}",
                self.n_steps
            )));
        }
        if self.n_steps[0] == 0 {
            return Err(Error::Config("step counts must be positive".into()));
        }
        Ok(())
    }

    /// Parses `key=value` lines. Keys: `problem`, `methods`, `steps`, `metric`
    /// and `out`. `steps` and `metric` default to the problem's registered
    /// grid and metric; blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut problem, mut methods, mut steps, mut metric, mut out) =
            (None, None, None, None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key=value", lineno + 1))
            })?;
            let value = value.trim();
            match key.trim() {
                "problem" => problem = Some(value.to_string()),
                "methods" => methods = Some(parse_list(value)),
                "steps" => steps = Some(parse_steps(value)?),
                "metric" => {
                    metric = Some(Metric::parse(value).ok_or_else(|| {
                        Error::Config(format!("unknown metric '{value}'"))
                    })?)
                }
                "out" => out = Some(PathBuf::from(value)),
                other => {
                    return Err(Error::Config(format!(
                        "line {}: unknown key '{other}'",
                        lineno + 1
                    )))
                }
            }
        }
        let problem = problem.ok_or_else(|| Error::Config("missing 'problem'".into()))?;
        let methods = methods.ok_or_else(|| Error::Config("missing 'methods'".into()))?;
        Self::resolve(problem, methods, steps, metric, out)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::parse(&text)
    }

    /// Fills missing steps and metric from the problem registry.
    pub fn resolve(
        problem: String,
        methods: Vec<String>,
        steps: Option<Vec<usize>>,
        metric: Option<Metric>,
        out: Option<PathBuf>,
    ) -> Result<Self> {
        let entry = problem_by_id(&problem);
        let missing = || Error::Config(format!("unknown problem '{problem}'"));
        let n_steps = match steps {
            Some(s) => s,
            None => entry.as_ref().ok_or_else(missing)?.default_steps.clone(),
        };
        let metric = match metric {
            Some(m) => m,
            None => entry.as_ref().ok_or_else(missing)?.default_metric,
        };
        let mut cfg = Self::new(problem.clone(), methods, n_steps, metric)?;
        cfg.out = out;
        Ok(cfg)
    }
}

pub fn parse_list(value: &str) -> Vec<String> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(String::from)
        .collect()
}

pub fn parse_steps(value: &str) -> Result<Vec<usize>> {
    parse_list(value)
        .iter()
        .map(|s| {
            s.parse()
                .map_err(|_| Error::Config(format!("bad step count '{s}'")))
        })
        .collect()
}
