//! Numeric defaults shared by the evaluators.

use std::str::FromStr;

use crate::Error;

/// How Humbert functions inside the closed-form kernels are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HumbertMethod {
    Series,
    Quadrature,
    /// Quadrature up to a simplex of dimension 3, series above.
    Auto,
}

impl FromStr for HumbertMethod {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "series" => Ok(HumbertMethod::Series),
            "quadrature" => Ok(HumbertMethod::Quadrature),
            "auto" => Ok(HumbertMethod::Auto),
            _ => Err(Error::Config(format!("unknown humbert method '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    /// Order of the 1-D Jacobi rules in the beta variables `u, v`.
    pub uv_order: usize,
    /// Per-axis order of the simplex rules.
    pub simplex_order: usize,
    /// Truncation degree of the oracle kernel series.
    pub series_degree: usize,
    /// Number of Gauss-Laguerre nodes for numeric Laplace transforms.
    pub laguerre_nodes: usize,
    /// Radial and per-sector angular orders for plane integrals.
    pub radial_order: usize,
    pub angular_order: usize,
    /// Truncation radius for the Dunkl transform.
    pub transform_radius: f64,
    pub humbert_method: HumbertMethod,
    /// Largest simplex dimension handled by quadrature in `Auto` mode.
    pub auto_quadrature_max_dim: usize,
    /// Condition-number ceiling for the dense solves.
    pub max_condition: f64,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            uv_order: 20,
            simplex_order: 12,
            series_degree: 40,
            laguerre_nodes: 80,
            radial_order: 40,
            angular_order: 24,
            transform_radius: 12.0,
            humbert_method: HumbertMethod::Auto,
            auto_quadrature_max_dim: 3,
            max_condition: 1e12,
        }
    }
}

impl Config {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        fn num<T: FromStr>(key: &str, value: &str) -> Result<T, Error> {
            value
                .parse()
                .map_err(|_| Error::Config(format!("bad value '{value}' for '{key}'")))
        }
        match key {
            "uv_order" => self.uv_order = num(key, value)?,
            "simplex_order" => self.simplex_order = num(key, value)?,
            "series_degree" => self.series_degree = num(key, value)?,
            "laguerre_nodes" => self.laguerre_nodes = num(key, value)?,
            "radial_order" => self.radial_order = num(key, value)?,
            "angular_order" => self.angular_order = num(key, value)?,
            "transform_radius" => self.transform_radius = num(key, value)?,
            "humbert_method" => self.humbert_method = value.parse()?,
            "auto_quadrature_max_dim" => self.auto_quadrature_max_dim = num(key, value)?,
            "max_condition" => self.max_condition = num(key, value)?,
            _ => return Err(Error::Config(format!("unknown key '{key}'"))),
        }
        self.validate()
    }

    /// Parses a `key = value` file; `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self, Error> {
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            cfg.set(key.trim(), value.trim())?;
        }
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), Error> {
        let orders = [
            self.uv_order,
            self.simplex_order,
            self.laguerre_nodes,
            self.radial_order,
            self.angular_order,
        ];
        if orders.contains(&0) {
            return Err(Error::Config("quadrature orders must be >= 1".into()));
        }
        if !(self.transform_radius > 0.0) {
            return Err(Error::Config("transform_radius must be positive".into()));
        }
        Ok(())
    }

    /// Whether a Humbert function on a simplex of dimension `dim` should be
    /// integrated rather than summed.
    pub fn use_quadrature(&self, dim: usize) -> bool {
        match self.humbert_method {
            HumbertMethod::Series => false,
            HumbertMethod::Quadrature => true,
            HumbertMethod::Auto => dim <= self.auto_quadrature_max_dim,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file() {
        let cfg = Config::from_text("# orders\nuv_order = 30\nhumbert_method=series # note\n\n")
            .unwrap();
        assert_eq!(cfg.uv_order, 30);
        assert_eq!(cfg.humbert_method, HumbertMethod::Series);
        assert_eq!(cfg.simplex_order, Config::default().simplex_order);
    }

    #[test]
    fn rejects_bad_entries() {
        assert!(Config::from_text("nope = 1").is_err());
        assert!(Config::from_text("uv_order = x").is_err());
        assert!(Config::from_text("uv_order = 0").is_err());
        assert!(Config::from_text("uv_order").is_err());
    }
}
