//! Evidence search: ideals with componentwise linear quotients that have no
//! linear quotients.
//!
//! Ideals are drawn from a box (number of variables, generators, largest
//! exponent), either all antichains exhaustively or seeded random samples.
//! Ideals whose graded components all have linear quotients are searched for
//! an admissible order; every case where none is found is written as a
//! line-delimited JSON record.
//!
//! The output starts with a `config` record, has a `checkpoint` record after
//! every shard and ends with a `summary`. Records carry no timing, so equal
//! configurations give byte-identical files, and resuming from a checkpoint
//! continues the exact same stream.

use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::quotients::{
    admissible_by_permutations, find_admissible_order, has_componentwise_linear_quotients, Decision,
    SearchStatus,
};
use crate::report::IdealDigest;

pub const SCHEMA: u32 = 1;

/// Largest number of generator subsets an exhaustive box may contain.
pub const EXHAUSTIVE_GUARD: u128 = 50_000_000;

/// Exhausted searches on at most this many generators are rechecked by
/// trying every permutation.
pub const ORACLE_LIMIT: usize = 7;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub min_nvars: usize,
    pub max_nvars: usize,
    pub max_gens: usize,
    pub max_exp: u32,
    pub mode: Mode,
    pub budget: u64,
    /// Samples per shard in random mode. Exhaustive shards are the
    /// antichains sharing their first generator.
    pub shard_size: u64,
    /// Skip antichains that are not the smallest among their images under
    /// permutations of the variables. Exhaustive mode only.
    pub symmetry: bool,
}

impl SearchConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Precondition(m.to_string()));
        if self.min_nvars == 0 || self.min_nvars > self.max_nvars {
            return bad("variable range must be nonempty and start at 1 or more");
        }
        if self.max_nvars > 64 {
            return Err(Error::TooManyVariables(self.max_nvars));
        }
        if self.max_gens == 0 || self.max_exp == 0 || self.shard_size == 0 {
            return bad("max generators, max exponent and shard size must be positive");
        }
        match self.mode {
            Mode::Exhaustive => {
                let size = self.box_size();
                if size.map_or(true, |s| s > EXHAUSTIVE_GUARD) {
                    return Err(Error::Precondition(format!(
                        "exhaustive box has more than {EXHAUSTIVE_GUARD} generator sets"
                    )));
                }
            }
            Mode::Random { .. } if self.symmetry => {
                return bad("symmetry reduction applies to exhaustive mode only");
            }
            Mode::Random { .. } => {}
        }
        Ok(())
    }

    /// Number of generator sets of size at most `max_gens` over all
    /// non-constant monomials in the box, an upper bound on the antichains.
    fn box_size(&self) -> Option<u128> {
        let mut total: u128 = 0;
        for n in self.min_nvars..=self.max_nvars {
            let m = u128::from(self.max_exp + 1).checked_pow(u32::try_from(n).ok()?)? - 1;
            let mut binom: u128 = 1;
            for k in 1..=self.max_gens as u128 {
                if k > m {
                    break;
                }
                binom = binom.checked_mul(m - k + 1)? / k;
                total = total.checked_add(binom)?;
            }
        }
        Some(total)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flag {
    #[serde(rename = "CANDIDATE COUNTEREXAMPLE")]
    CandidateCounterexample,
    #[serde(rename = "inconclusive")]
    Inconclusive,
    /// The search exhausted but the permutation oracle found an order.
    #[serde(rename = "oracle_disagreement")]
    OracleDisagreement,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseRecord {
    pub shard: u64,
    pub case: u64,
    pub ideal: IdealDigest,
    pub clq: Decision,
    pub status: Option<SearchStatus>,
    pub flag: Flag,
    /// Whether the permutation oracle confirmed the exhausted verdict;
    /// `None` if it was not run.
    pub oracle_confirmed: Option<bool>,
    pub nodes: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub cases: u64,
    pub skipped_symmetric: u64,
    pub not_clq: u64,
    pub clq_unknown: u64,
    pub found: u64,
    pub candidates: u64,
    pub budget_exceeded: u64,
    pub oracle_disagreements: u64,
}

impl Counts {
    fn add(&mut self, o: &Counts) {
        self.cases += o.cases;
        self.skipped_symmetric += o.skipped_symmetric;
        self.not_clq += o.not_clq;
        self.clq_unknown += o.clq_unknown;
        self.found += o.found;
        self.candidates += o.candidates;
        self.budget_exceeded += o.budget_exceeded;
        self.oracle_disagreements += o.oracle_disagreements;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Record {
    Config { schema: u32, config: SearchConfig },
    Case(CaseRecord),
    Checkpoint { shard: u64, counts: Counts },
    Summary { shards: u64, symmetry: bool, counts: Counts },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchSummary {
    pub shards: u64,
    pub counts: Counts,
}

#[derive(Debug, Clone, Copy)]
enum Shard {
    Antichains { nvars: usize, first: usize },
    Samples { start: u64, end: u64 },
}

/// Non-constant monomials with exponents at most `max_exp`, canonical order.
fn box_monomials(nvars: usize, max_exp: u32) -> Vec<Monomial> {
    let caps = vec![max_exp; nvars];
    (1..=max_exp * nvars as u32)
        .flat_map(|d| Monomial::bounded_of_degree(nvars, d, &caps))
        .collect()
}

fn shards(cfg: &SearchConfig) -> Vec<Shard> {
    match cfg.mode {
        Mode::Exhaustive => (cfg.min_nvars..=cfg.max_nvars)
            .flat_map(|nvars| {
                let m = box_monomials(nvars, cfg.max_exp).len();
                (0..m).map(move |first| Shard::Antichains { nvars, first })
            })
            .collect(),
        Mode::Random { samples, .. } => (0..samples)
            .step_by(cfg.shard_size as usize)
            .map(|start| Shard::Samples {
                start,
                end: (start + cfg.shard_size).min(samples),
            })
            .collect(),
    }
}

/// Visit every antichain of at most `max_gens` candidates whose first
/// element is `cands[first]`, in increasing index order. Candidates are in
/// canonical order, so a later one never divides an earlier one.
fn antichains_from(cands: &[Monomial], first: usize, max_gens: usize, visit: &mut impl FnMut(&[Monomial])) {
    fn extend(
        cands: &[Monomial],
        from: usize,
        max_gens: usize,
        chosen: &mut Vec<Monomial>,
        visit: &mut impl FnMut(&[Monomial]),
    ) {
        visit(chosen);
        if chosen.len() == max_gens {
            return;
        }
        for idx in from..cands.len() {
            let m = &cands[idx];
            if chosen.iter().all(|c| !c.divides(m)) {
                chosen.push(m.clone());
                extend(cands, idx + 1, max_gens, chosen, visit);
                chosen.pop();
            }
        }
    }
    let mut chosen = vec![cands[first].clone()];
    extend(cands, first + 1, max_gens, &mut chosen, visit);
}

/// Whether `gens` (canonical order) is the smallest of its images under
/// variable permutations.
fn is_symmetry_minimal(gens: &[Monomial], perms: &[Vec<usize>]) -> bool {
    perms.iter().all(|p| {
        let mut image: Vec<Monomial> = gens
            .iter()
            .map(|g| Monomial::new(p.iter().map(|&k| g.exp(k)).collect()).expect("same degree"))
            .collect();
        image.sort();
        image.as_slice() >= gens
    })
}

fn sample_ideal(cfg: &SearchConfig, seed: u64, case: u64) -> MonomialIdeal {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    let nvars = rng.gen_range(cfg.min_nvars..=cfg.max_nvars);
    let count = rng.gen_range(1..=cfg.max_gens);
    let gens: Vec<Monomial> = (0..count)
        .map(|_| loop {
            let exps: Vec<u32> = (0..nvars).map(|_| rng.gen_range(0..=cfg.max_exp)).collect();
            if exps.iter().any(|&e| e > 0) {
                break Monomial::new(exps).expect("small exponents");
            }
        })
        .collect();
    MonomialIdeal::minimalize(nvars, gens).expect("nonempty, consistent arity")
}

fn evaluate(ideal: &MonomialIdeal, shard: u64, case: u64, budget: u64, counts: &mut Counts) -> Result<Option<CaseRecord>> {
    counts.cases += 1;
    let record = |clq, status, flag, oracle_confirmed, nodes| CaseRecord {
        shard,
        case,
        ideal: IdealDigest::of(ideal, false),
        clq,
        status,
        flag,
        oracle_confirmed,
        nodes,
    };
    match has_componentwise_linear_quotients(ideal, budget)? {
        Decision::No => {
            counts.not_clq += 1;
            Ok(None)
        }
        Decision::Unknown => {
            counts.clq_unknown += 1;
            Ok(Some(record(Decision::Unknown, None, Flag::Inconclusive, None, 0)))
        }
        Decision::Yes => {
            let outcome = find_admissible_order(ideal, budget)?;
            match outcome.status {
                SearchStatus::Found => {
                    counts.found += 1;
                    Ok(None)
                }
                SearchStatus::BudgetExceeded => {
                    counts.budget_exceeded += 1;
                    Ok(Some(record(
                        Decision::Yes,
                        Some(outcome.status),
                        Flag::Inconclusive,
                        None,
                        outcome.nodes,
                    )))
                }
                SearchStatus::Exhausted => {
                    let oracle = (ideal.len() <= ORACLE_LIMIT)
                        .then(|| admissible_by_permutations(ideal.gens()).is_none());
                    let flag = if oracle == Some(false) {
                        counts.oracle_disagreements += 1;
                        Flag::OracleDisagreement
                    } else {
                        counts.candidates += 1;
                        Flag::CandidateCounterexample
                    };
                    Ok(Some(record(Decision::Yes, Some(outcome.status), flag, oracle, outcome.nodes)))
                }
            }
        }
    }
}

fn run_shard(cfg: &SearchConfig, ordinal: u64, shard: Shard) -> Result<(Vec<CaseRecord>, Counts)> {
    let mut counts = Counts::default();
    let mut records = Vec::new();
    match shard {
        Shard::Antichains { nvars, first } => {
            let cands = box_monomials(nvars, cfg.max_exp);
            let perms: Vec<Vec<usize>> = if cfg.symmetry {
                (0..nvars).permutations(nvars).collect()
            } else {
                Vec::new()
            };
            let mut case = 0u64;
            let mut failure = None;
            antichains_from(&cands, first, cfg.max_gens, &mut |gens| {
                if failure.is_some() {
                    return;
                }
                let this = case;
                case += 1;
                if cfg.symmetry && !is_symmetry_minimal(gens, &perms) {
                    counts.skipped_symmetric += 1;
                    return;
                }
                let ideal = MonomialIdeal::from_antichain(nvars, gens.iter().cloned().collect());
                match evaluate(&ideal, ordinal, this, cfg.budget, &mut counts) {
                    Ok(Some(r)) => records.push(r),
                    Ok(None) => {}
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
        Shard::Samples { start, end } => {
            let Mode::Random { seed, .. } = cfg.mode else {
                unreachable!("sample shards come from random mode")
            };
            for case in start..end {
                let ideal = sample_ideal(cfg, seed, case);
                if let Some(r) = evaluate(&ideal, ordinal, case, cfg.budget, &mut counts)? {
                    records.push(r);
                }
            }
        }
    }
    Ok((records, counts))
}

fn write_record(out: &mut File, record: &Record) -> Result<()> {
    let mut line = serde_json::to_string(record).expect("records serialize");
    line.push('\n');
    out.write_all(line.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// Where to continue an interrupted run: the byte length to keep, the next
/// shard, and the counts so far. `None` if the file is already complete.
fn resume_point(path: &Path, cfg: &SearchConfig) -> Result<Option<(u64, u64, Counts)>> {
    let reader = BufReader::new(File::open(path)?);
    let mut offset = 0u64;
    let mut keep = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let end = offset + line.len() as u64 + 1;
        // a torn last line does not parse and is dropped
        let Ok(record) = serde_json::from_str::<Record>(&line) else {
            break;
        };
        match record {
            Record::Config { config, .. } if idx == 0 => {
                if &config != cfg {
                    return Err(Error::Precondition(
                        "output file was written with a different configuration".to_string(),
                    ));
                }
                keep = Some((end, 0, Counts::default()));
            }
            Record::Checkpoint { shard, counts } if keep.is_some() => keep = Some((end, shard + 1, counts)),
            Record::Summary { .. } if keep.is_some() => return Ok(None),
            _ if keep.is_none() => {
                return Err(Error::Precondition("output file does not start with a config record".to_string()))
            }
            _ => {}
        }
        offset = end;
    }
    keep.map(Some)
        .ok_or_else(|| Error::Precondition("output file does not start with a config record".to_string()))
}

fn read_summary(path: &Path) -> Result<SearchSummary> {
    let text = std::fs::read_to_string(path)?;
    for line in text.lines().rev() {
        if let Ok(Record::Summary { shards, counts, .. }) = serde_json::from_str(line) {
            return Ok(SearchSummary { shards, counts });
        }
    }
    Err(Error::Precondition("no summary record".to_string()))
}

/// Run the search, writing records to `out`. With `resume`, an existing
/// file is continued from its last checkpoint.
pub fn run_search(cfg: &SearchConfig, out: &Path, resume: bool) -> Result<SearchSummary> {
    cfg.validate()?;
    let shards = shards(cfg);
    let (mut file, next, mut counts) = if resume && out.exists() {
        match resume_point(out, cfg)? {
            None => return read_summary(out),
            Some((len, next, counts)) => {
                let file = OpenOptions::new().write(true).open(out)?;
                file.set_len(len)?;
                let file = OpenOptions::new().append(true).open(out)?;
                (file, next, counts)
            }
        }
    } else {
        let mut file = File::create(out)?;
        write_record(
            &mut file,
            &Record::Config {
                schema: SCHEMA,
                config: cfg.clone(),
            },
        )?;
        (file, 0, Counts::default())
    };

    let batch = rayon::current_num_threads().max(1) * 4;
    let pending: Vec<(u64, Shard)> = shards
        .iter()
        .enumerate()
        .skip(next as usize)
        .map(|(k, s)| (k as u64, *s))
        .collect();
    for chunk in pending.chunks(batch) {
        let results: Vec<Result<(Vec<CaseRecord>, Counts)>> =
            chunk.par_iter().map(|&(k, s)| run_shard(cfg, k, s)).collect();
        for (&(k, _), result) in chunk.iter().zip(results) {
            let (records, delta) = result?;
            for r in records {
                write_record(&mut file, &Record::Case(r))?;
            }
            counts.add(&delta);
            write_record(&mut file, &Record::Checkpoint { shard: k, counts })?;
        }
    }
    write_record(
        &mut file,
        &Record::Summary {
            shards: shards.len() as u64,
            symmetry: cfg.symmetry,
            counts,
        },
    )?;
    Ok(SearchSummary {
        shards: shards.len() as u64,
        counts,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exhaustive(max_exp: u32, max_gens: usize) -> SearchConfig {
        SearchConfig {
            min_nvars: 2,
            max_nvars: 2,
            max_gens,
            max_exp,
            mode: Mode::Exhaustive,
            budget: 10_000,
            shard_size: 16,
            symmetry: false,
        }
    }

    #[test]
    fn antichain_enumeration_matches_filtered_subsets() {
        let cands = box_monomials(2, 2);
        assert_eq!(cands.len(), 8);
        let mut direct = 0;
        for first in 0..cands.len() {
            antichains_from(&cands, first, 3, &mut |gens| {
                assert!(gens.iter().tuple_combinations().all(|(a, b)| !a.divides(b) && !b.divides(a)));
                direct += 1;
            });
        }
        let brute = (1..=3)
            .flat_map(|k| cands.iter().combinations(k))
            .filter(|s| s.iter().tuple_combinations().all(|(a, b)| !a.divides(b) && !b.divides(a)))
            .count();
        assert_eq!(direct, brute);
    }

    #[test]
    fn symmetry_keeps_one_per_orbit() {
        let perms: Vec<Vec<usize>> = (0..2).permutations(2).collect();
        let a = vec![Monomial::new(vec![2, 0]).unwrap()];
        let b = vec![Monomial::new(vec![0, 2]).unwrap()];
        assert_ne!(is_symmetry_minimal(&a, &perms), is_symmetry_minimal(&b, &perms));
    }

    #[test]
    fn guard_rejects_large_boxes() {
        let mut cfg = exhaustive(5, 4);
        cfg.validate().unwrap();
        cfg.max_nvars = 4;
        cfg.max_gens = 8;
        assert!(cfg.validate().is_err());
        let mut cfg = exhaustive(2, 2);
        cfg.mode = Mode::Random { seed: 1, samples: 5 };
        cfg.symmetry = true;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn small_bivariate_box_has_no_candidates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("out.jsonl");
        let s = run_search(&exhaustive(3, 3), &path, false).unwrap();
        assert_eq!(s.counts.candidates, 0);
        assert_eq!(s.counts.oracle_disagreements, 0);
        assert!(s.counts.found > 0);
    }

    #[test]
    fn resume_reproduces_the_stream() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SearchConfig {
            min_nvars: 2,
            max_nvars: 3,
            max_gens: 4,
            max_exp: 3,
            mode: Mode::Random { seed: 7, samples: 40 },
            budget: 10_000,
            shard_size: 8,
            symmetry: false,
        };
        let full = dir.path().join("full.jsonl");
        run_search(&cfg, &full, false).unwrap();
        let full_text = std::fs::read_to_string(&full).unwrap();

        let part = dir.path().join("part.jsonl");
        let cut = full_text.match_indices("\"checkpoint\"").nth(1).unwrap().0;
        let cut = cut + full_text[cut..].find('\n').unwrap() + 1;
        std::fs::write(&part, format!("{}{{\"type\":\"ca", &full_text[..cut])).unwrap();
        run_search(&cfg, &part, true).unwrap();
        assert_eq!(std::fs::read_to_string(&part).unwrap(), full_text);
        assert_eq!(run_search(&cfg, &part, true).unwrap(), read_summary(&full).unwrap());
    }
}
