#![allow(dead_code)]

use cbgame::game::{self, GameScalars};
use cbgame::krackhardt;
use cbgame::oracle;
use cbgame::spectral::{self, SpectralData};
use cbgame::{Scenario, SourcePair};
use rand::Rng;

pub fn spectral_of(scn: &Scenario) -> SpectralData {
    spectral::dominant_eigenpair(&scn.net, spectral::DEFAULT_TOL, spectral::DEFAULT_MAX_ITER).unwrap()
}

pub struct Instance {
    pub scn: Scenario,
    pub spec: SpectralData,
    pub gs: GameScalars,
}

impl Instance {
    pub fn new(scn: Scenario) -> Self {
        let spec = spectral_of(&scn);
        let gs = game::game_scalars(&scn, &spec).unwrap();
        Self { scn, spec, gs }
    }
}

pub fn random_instance(seed: u64) -> Instance {
    Instance::new(oracle::random_scenario(&mut oracle::seeded_rng(seed)))
}

/// The five reference cases on the bundled network, in order A..E.
pub fn krackhardt_cases() -> Vec<(&'static str, Instance)> {
    let net = krackhardt::network().unwrap();
    krackhardt::cases()
        .into_iter()
        .map(|c| (c.id, Instance::new(c.scenario(&net).unwrap())))
        .collect()
}

pub fn random_pair<R: Rng>(rng: &mut R, scn: &Scenario) -> SourcePair {
    let (lo, hi) = (scn.s_min(), scn.s_max());
    SourcePair::new(rng.gen::<f64>() * lo, hi + rng.gen::<f64>() * (1.0 - hi))
}

/// Property-test config without on-disk regression files.
pub fn prop_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
