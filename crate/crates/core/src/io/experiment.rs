//! JSON experiment descriptors for the evolution examples, evaluated into CSV/JSON tables.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::dynamics::{overlap, EvolutionExample};
use crate::error::{Error, Result};
use crate::states::Occupation;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Observable {
    /// `<v| N_t v>` with `v = a^*_{modes} e_1`.
    ParticleNumber,
    /// `ω(a_n(t) a_n^*(0))` for each `n` in `modes`, one column per mode.
    TwoPoint,
    /// `<τ_t(a^*_{one}) e_1 | a^*_{many} e_1>` for the example's transition pair.
    Transition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Experiment {
    pub example: u8,
    #[serde(default = "one")]
    pub mu: f64,
    pub t_grid: Vec<f64>,
    #[serde(default)]
    pub modes: Vec<usize>,
    pub observable: Observable,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub t: f64,
    pub column: String,
    pub re: f64,
    pub im: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct Table {
    pub experiment: Experiment,
    pub rows: Vec<Row>,
}

impl Experiment {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse { pos: e.column(), msg: e.to_string() })
    }

    pub fn run(&self) -> Result<Table> {
        let ex = EvolutionExample::new(self.example, self.mu)?;
        if self.t_grid.is_empty() {
            return Err(Error::Precondition("empty t_grid".into()));
        }
        if self.observable != Observable::Transition && self.modes.is_empty() {
            return Err(Error::Precondition("this observable needs at least one mode".into()));
        }
        let mut rows = Vec::new();
        let mut push = |t: f64, column: String, z: Complex64| rows.push(Row { t, column, re: z.re, im: z.im });
        for &t in &self.t_grid {
            match self.observable {
                Observable::ParticleNumber => {
                    let occ = Occupation::from_modes(&self.modes)?;
                    let v = ex.particle_number_expectation(t, occ)?;
                    push(t, format!("N_t{:?}", self.modes), Complex64::new(v, 0.0));
                }
                Observable::TwoPoint => {
                    for &n in &self.modes {
                        let z = ex.npoint(&[(n, false, t), (n, true, 0.0)], false)?;
                        push(t, format!("a{n}(t) a{n}*(0)"), z);
                    }
                }
                Observable::Transition => {
                    let (a, b) = ex.transition_pair();
                    push(t, format!("{:?}->{:?}", a.modes(), b.modes()), overlap(&ex, t, a, 0.0, b)?);
                }
            }
        }
        Ok(Table { experiment: self.clone(), rows })
    }
}

impl Table {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("table serializes")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,column,re,im\n");
        for r in &self.rows {
            out.push_str(&format!("{},{},{},{}\n", r.t, super::suite::csv_field(&r.column), r.re, r.im));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn particle_number_table() {
        let e = Experiment::from_json(
            r#"{"example": 3, "t_grid": [0.0, 0.5], "modes": [1], "observable": "particle_number"}"#,
        )
        .unwrap();
        let t = e.run().unwrap();
        assert_eq!(t.rows.len(), 2);
        assert!((t.rows[0].re - 1.0).abs() < 1e-12);
        assert!((t.rows[1].re - (1.0 + 2.0 * 0.5f64.sin().powi(2))).abs() < 1e-12);
        assert!(t.to_csv().starts_with("t,column,re,im\n0,N_t[1],1,0\n"));
    }

    #[test]
    fn rejects_bad_descriptors() {
        assert!(Experiment::from_json(r#"{"example": 1, "t_grid": [0], "observable": "energy"}"#).is_err());
        assert!(Experiment::from_json(r#"{"example": 1, "t_grid": [0], "observable": "transition", "x": 1}"#).is_err());
        let e = Experiment::from_json(r#"{"example": 1, "t_grid": [0], "observable": "two_point"}"#).unwrap();
        assert!(e.run().is_err());
    }
}
