//! Benchmark report rows and their CSV form.
//!
//! ```text
//! instance,solver,seed,best_fitness,feasible,wall_time_s
//! 1.txt,ga,0,812.345678,true,35.655
//! ```

use std::fmt;
use std::str::FromStr;

use crate::BenchError;

pub const CSV_HEADER: [&str; 6] = [
    "instance",
    "solver",
    "seed",
    "best_fitness",
    "feasible",
    "wall_time_s",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Solver {
    Ga,
    Nn,
    Tabu,
    Aco,
    Exact,
}

impl Solver {
    pub const ALL: [Solver; 5] = [
        Solver::Ga,
        Solver::Nn,
        Solver::Tabu,
        Solver::Aco,
        Solver::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Solver::Ga => "ga",
            Solver::Nn => "nn",
            Solver::Tabu => "tabu",
            Solver::Aco => "aco",
            Solver::Exact => "exact",
        }
    }
}

impl fmt::Display for Solver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Solver {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Solver::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| BenchError::UnknownSolver(s.to_string()))
    }
}

fn round_to(value: f64, decimals: i32) -> f64 {
    let scale = 10f64.powi(decimals);
    (value * scale).round() / scale
}

/// One (instance, solver, seed) cell. Fitness is stored at 6 decimals and
/// wall time at 3, the precision the CSV carries.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub instance: String,
    pub solver: Solver,
    pub seed: u64,
    pub best_fitness: f64,
    pub feasible: bool,
    pub wall_time_s: f64,
}

impl BenchRow {
    pub fn new(
        instance: impl Into<String>,
        solver: Solver,
        seed: u64,
        best_fitness: f64,
        feasible: bool,
        wall_time_s: f64,
    ) -> Self {
        Self {
            instance: instance.into(),
            solver,
            seed,
            best_fitness: round_to(best_fitness, 6),
            feasible,
            wall_time_s: round_to(wall_time_s, 3),
        }
    }

    fn fields(&self) -> [String; 6] {
        [
            self.instance.clone(),
            self.solver.to_string(),
            self.seed.to_string(),
            format!("{:.6}", self.best_fitness),
            self.feasible.to_string(),
            format!("{:.3}", self.wall_time_s),
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
}

impl BenchReport {
    pub fn to_csv(&self) -> Result<String, BenchError> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(CSV_HEADER)?;
        for row in &self.rows {
            writer.write_record(row.fields())?;
        }
        let bytes = writer
            .into_inner()
            .map_err(|e| BenchError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn from_csv(text: &str) -> Result<Self, BenchError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let header = reader.headers()?.clone();
        if header.iter().ne(CSV_HEADER) {
            return Err(BenchError::BadReport("unexpected CSV header".into()));
        }
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record?;
            let line = record.position().map_or(0, |p| p.line());
            let field = |i: usize| record.get(i).unwrap_or("");
            let bad = |what: &str| BenchError::BadReport(format!("line {line}: bad {what}"));
            rows.push(BenchRow {
                instance: field(0).to_string(),
                solver: field(1).parse()?,
                seed: field(2).parse().map_err(|_| bad("seed"))?,
                best_fitness: field(3).parse().map_err(|_| bad("best_fitness"))?,
                feasible: field(4).parse().map_err(|_| bad("feasible"))?,
                wall_time_s: field(5).parse().map_err(|_| bad("wall_time_s"))?,
            });
        }
        Ok(Self { rows })
    }
}

/// The CSV with every `wall_time_s` value blanked, for determinism checks.
pub fn mask_wall_time(csv_text: &str) -> String {
    csv_text
        .lines()
        .map(|line| match line.rsplit_once(',') {
            Some((head, _)) => format!("{head},*"),
            None => line.to_string(),
        })
        .collect::<Vec<_>>()
        .join("\n")
}
