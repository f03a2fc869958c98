//! Synthetic per-solver cohorts.
//!
//! Each solver draws an ability `p` from the skill profile; at step `i` the number of
//! problems solved is `Binomial(total, p * 0.85^i)`, so later steps tend to be harder.
//! Output is fully determined by the seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Beta, Binomial, Distribution, Uniform};

use crate::error::{Error, Result};
use crate::fixture::CLASSROOM_STEPS;
use crate::ingest::{CohortDataset, DatasetRows, SolverRecord};
use crate::label::LabelScale;

const STEP_DECAY: f64 = 0.85;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Skill {
    #[default]
    Uniform,
    Strong,
    Weak,
}

impl std::str::FromStr for Skill {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(Skill::Uniform),
            "strong" => Ok(Skill::Strong),
            "weak" => Ok(Skill::Weak),
            other => Err(Error::domain(format!("unknown skill profile {other:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimulationParams {
    pub cohort_size: usize,
    pub steps: usize,
    pub seed: u64,
    pub skill: Skill,
    pub scale: LabelScale,
}

/// Default step names: the three classroom steps when `k = 3`, else `step-1..step-k`.
pub fn step_names(k: usize) -> Vec<String> {
    if k == CLASSROOM_STEPS.len() {
        CLASSROOM_STEPS.iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("step-{i}")).collect()
    }
}

pub fn simulate(params: &SimulationParams) -> Result<CohortDataset> {
    if params.cohort_size == 0 {
        return Err(Error::domain("cohort size must be at least 1"));
    }
    if params.steps == 0 {
        return Err(Error::domain("step count must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let total = (params.scale.len() - 1) as u64;
    let ability: Box<dyn Fn(&mut ChaCha8Rng) -> f64> = match params.skill {
        Skill::Uniform => {
            let d = Uniform::new_inclusive(0.0, 1.0).map_err(|e| Error::domain(e.to_string()))?;
            Box::new(move |rng| d.sample(rng))
        }
        Skill::Strong => {
            let d = Beta::new(5.0, 2.0).map_err(|e| Error::domain(e.to_string()))?;
            Box::new(move |rng| d.sample(rng))
        }
        Skill::Weak => {
            let d = Beta::new(2.0, 5.0).map_err(|e| Error::domain(e.to_string()))?;
            Box::new(move |rng| d.sample(rng))
        }
    };
    let names = step_names(params.steps);
    let width = params.cohort_size.to_string().len();
    let mut records = Vec::with_capacity(params.cohort_size * params.steps);
    for solver in 0..params.cohort_size {
        let p = ability(&mut rng).clamp(0.0, 1.0);
        let id = format!("s{:0width$}", solver + 1);
        for (i, step) in names.iter().enumerate() {
            let p_step = (p * STEP_DECAY.powi(i as i32)).clamp(0.0, 1.0);
            let solved = Binomial::new(total, p_step)
                .map_err(|e| Error::domain(e.to_string()))?
                .sample(&mut rng);
            records.push(SolverRecord {
                solver: id.clone(),
                step: step.clone(),
                solved,
                total,
            });
        }
    }
    Ok(CohortDataset {
        group_name: format!("simulated-{}-{:?}", params.seed, params.skill).to_lowercase(),
        note: None,
        scale: params
            .scale
            .names()
            .into_iter()
            .map(str::to_string)
            .collect(),
        step_names: names,
        rows: DatasetRows::PerSolver(records),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{parse_dataset, to_step_counts, DataFormat};
    use crate::label::default_scale;

    fn params(n: usize, k: usize, seed: u64, skill: Skill) -> SimulationParams {
        SimulationParams {
            cohort_size: n,
            steps: k,
            seed,
            skill,
            scale: default_scale(),
        }
    }

    #[test]
    fn parses_back_cleanly() {
        let ds = simulate(&params(20, 3, 42, Skill::Uniform)).unwrap();
        let text = ds.to_json().unwrap();
        let parsed = parse_dataset(text.as_bytes(), DataFormat::Json).unwrap();
        assert_eq!(parsed, ds);
        let steps = to_step_counts(&parsed, &default_scale()).unwrap();
        assert_eq!(steps.len(), 3);
        assert!(steps.iter().all(|s| s.cohort_size == 20 && s.total() == 20));
    }

    #[test]
    fn deterministic() {
        let a = simulate(&params(30, 4, 9, Skill::Strong))
            .unwrap()
            .to_json()
            .unwrap();
        let b = simulate(&params(30, 4, 9, Skill::Strong))
            .unwrap()
            .to_json()
            .unwrap();
        assert_eq!(a, b);
        let c = simulate(&params(30, 4, 10, Skill::Strong))
            .unwrap()
            .to_json()
            .unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn single_record_bounds() {
        let ds = simulate(&params(1, 1, 7, Skill::Strong)).unwrap();
        match &ds.rows {
            DatasetRows::PerSolver(r) => {
                assert_eq!(r.len(), 1);
                assert!(r[0].solved <= r[0].total);
            }
            _ => unreachable!(),
        }
    }

    #[test]
    fn skills_shift_the_mean() {
        let mean = |skill| {
            let ds = simulate(&params(400, 1, 3, skill)).unwrap();
            match ds.rows {
                DatasetRows::PerSolver(r) => {
                    r.iter().map(|x| x.solved as f64).sum::<f64>() / r.len() as f64
                }
                _ => unreachable!(),
            }
        };
        assert!(mean(Skill::Strong) > mean(Skill::Uniform));
        assert!(mean(Skill::Uniform) > mean(Skill::Weak));
    }

    #[test]
    fn rejects_empty() {
        assert!(simulate(&params(0, 3, 1, Skill::Uniform)).is_err());
        assert!(simulate(&params(3, 0, 1, Skill::Uniform)).is_err());
        assert!("average".parse::<Skill>().is_err());
    }
}
