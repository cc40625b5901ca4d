//! Initial-state specifications shared by the simulation commands:
//! `uniform:<v>`, `defect:<site>[:<value>]`, `random:<seed>`, `file:<path>`.
//!
//! Sites are 1-based. Seeded randomness uses the engine's fixed SplitMix64
//! generator, so a seed pins the state on every platform.

use permuton::rng::SplitMix64;
use permuton::{ChainState, GenChainState};

use crate::CliError;

pub enum InitSpec {
    Uniform(i64),
    Defect { site: usize, value: i64 },
    Random(u64),
    File(String),
}

pub fn parse(text: &str) -> Result<InitSpec, CliError> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| CliError::validation(format!("init spec `{text}` needs `kind:value`")))?;
    let bad = |what: &str| CliError::validation(format!("init spec `{text}`: bad {what}"));
    match kind {
        "uniform" => Ok(InitSpec::Uniform(
            rest.parse::<i64>().map_err(|_| bad("value"))?,
        )),
        "defect" => {
            let (site_text, value) = match rest.split_once(':') {
                Some((s, v)) => (s, v.parse::<i64>().map_err(|_| bad("value"))?),
                None => (rest, i64::MIN), // marker: default per state kind
            };
            Ok(InitSpec::Defect {
                site: site_text.parse::<usize>().map_err(|_| bad("site"))?,
                value,
            })
        }
        "random" => Ok(InitSpec::Random(
            rest.parse::<u64>().map_err(|_| bad("seed"))?,
        )),
        "file" => Ok(InitSpec::File(rest.to_string())),
        other => Err(CliError::validation(format!(
            "unknown init kind `{other}` (expected uniform, defect, random, or file)"
        ))),
    }
}

fn values_from_file(path: &str, expected: usize) -> Result<Vec<i64>, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::validation(format!("cannot read init file `{path}`: {e}")))?;
    let values: Result<Vec<i64>, _> = text.split_whitespace().map(str::parse::<i64>).collect();
    let values = values.map_err(|e| CliError::validation(format!("init file `{path}`: {e}")))?;
    if values.len() != expected {
        return Err(CliError::validation(format!(
            "init file `{path}` holds {} values, expected {expected}",
            values.len()
        )));
    }
    Ok(values)
}

pub fn chain_state(spec: &InitSpec, half_sites: usize) -> Result<ChainState, CliError> {
    let state = match spec {
        InitSpec::Uniform(v) => ChainState::uniform(half_sites, *v)?,
        InitSpec::Defect { site, value } => {
            if *value != i64::MIN && *value != -1 {
                return Err(CliError::validation(
                    "a chain defect is the flipped spin -1".into(),
                ));
            }
            ChainState::with_defect(half_sites, *site)?
        }
        InitSpec::Random(seed) => {
            let mut rng = SplitMix64::new(*seed);
            let spins: Vec<i64> = (0..2 * half_sites).map(|_| rng.spin()).collect();
            ChainState::from_spins(&spins)?
        }
        InitSpec::File(path) => {
            let values = values_from_file(path, 2 * half_sites)?;
            ChainState::from_spins(&values)?
        }
    };
    Ok(state)
}

pub fn gen_state(
    spec: &InitSpec,
    half_sites: usize,
    level_bound: i64,
) -> Result<GenChainState, CliError> {
    let state = match spec {
        InitSpec::Uniform(v) => {
            GenChainState::from_values(half_sites, level_bound, vec![*v; 2 * half_sites])?
        }
        InitSpec::Defect { site, value } => {
            let value = if *value == i64::MIN { 1 } else { *value };
            GenChainState::with_defect(half_sites, level_bound, *site, value)?
        }
        InitSpec::Random(seed) => {
            let mut rng = SplitMix64::new(*seed);
            let span = 2 * level_bound as u64 + 1;
            let values: Vec<i64> = (0..2 * half_sites)
                .map(|_| rng.below(span) as i64 - level_bound)
                .collect();
            GenChainState::from_values(half_sites, level_bound, values)?
        }
        InitSpec::File(path) => {
            let values = values_from_file(path, 2 * half_sites)?;
            GenChainState::from_values(half_sites, level_bound, values)?
        }
    };
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_four_kinds() {
        assert!(matches!(parse("uniform:+1"), Ok(InitSpec::Uniform(1))));
        assert!(matches!(
            parse("defect:3"),
            Ok(InitSpec::Defect { site: 3, .. })
        ));
        assert!(matches!(parse("random:99"), Ok(InitSpec::Random(99))));
        assert!(matches!(parse("file:x.txt"), Ok(InitSpec::File(_))));
        assert!(parse("nope:1").is_err());
        assert!(parse("uniform").is_err());
    }

    #[test]
    fn chain_states() {
        let defect = chain_state(&parse("defect:2").unwrap(), 2).unwrap();
        assert_eq!(defect.spins(), vec![1, -1, 1, 1]);
        let seeded_a = chain_state(&parse("random:7").unwrap(), 4).unwrap();
        let seeded_b = chain_state(&parse("random:7").unwrap(), 4).unwrap();
        assert_eq!(seeded_a, seeded_b);
    }

    #[test]
    fn gen_states_respect_bounds() {
        let s = gen_state(&parse("random:3").unwrap(), 8, 2).unwrap();
        assert!(s.values().iter().all(|v| v.abs() <= 2));
        let d = gen_state(&parse("defect:4:-2").unwrap(), 4, 3).unwrap();
        assert_eq!(d.values()[3], -2);
        assert!(gen_state(&parse("uniform:9").unwrap(), 2, 3).is_err());
    }
}
