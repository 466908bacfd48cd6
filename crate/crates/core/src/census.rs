//! Isomorphism classes of ribbon graphs of curves with `k` crossings,
//! grouped by genus, and the constants built from their boundary
//! automorphism groups.

use std::collections::{BTreeMap, HashMap};
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gauss::{is_traversal_representative, signings, BaseWords, GaussError, GaussWord};
use crate::map::{automorphisms, BoundaryGroup, CanonicalKey, MapError, RibbonGraph};

pub type ExactRational = BigRational;

pub const CENSUS_FORMAT: &str = "curve-census";
pub const DEFAULT_MAX_RANK: usize = 8;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("rank {k} exceeds the configured maximum {max}")]
    RankExceedsCap { k: usize, max: usize },
    #[error("census for rank {k} exceeds the class limit {limit}")]
    ClassLimit { k: usize, limit: usize },
    #[error("census file line {line}: {message}")]
    Corrupt { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Word(#[from] GaussError),
}

/// A ribbon graph class with its cached invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonGraphClass {
    pub key: CanonicalKey,
    pub k: usize,
    pub genus: u32,
    pub boundaries: usize,
    pub aut_order: usize,
    pub baut: BoundaryGroup,
    /// Least signed word (among those seen) whose map lies in the class.
    pub witness: GaussWord,
}

impl RibbonGraphClass {
    pub fn annulus() -> Self {
        Self::from_word(&GaussWord::empty()).expect("annulus is valid")
    }

    pub fn from_word(word: &GaussWord) -> Result<Self, MapError> {
        let graph = word.to_ribbon_graph();
        let key = graph.canonical_key();
        Self::from_graph(word, graph, key)
    }

    fn from_graph(word: &GaussWord, graph: RibbonGraph, key: CanonicalKey) -> Result<Self, MapError> {
        let genus = graph.genus()?;
        let (aut_order, baut) = match &graph {
            RibbonGraph::Annulus => (1, crate::map::boundary_automorphisms(&graph)),
            RibbonGraph::Map(m) => {
                let aut = automorphisms(m);
                (aut.aut_order(), aut.boundary_action)
            }
        };
        Ok(RibbonGraphClass {
            key,
            k: word.rank(),
            genus,
            boundaries: graph.boundary_count(),
            aut_order,
            baut,
            witness: word.clone(),
        })
    }

    pub fn is_annulus(&self) -> bool {
        self.k == 0
    }

    pub fn baut_order(&self) -> usize {
        self.baut.order()
    }
}

#[derive(Debug, Clone)]
pub struct CensusConfig {
    pub max_rank: usize,
    pub class_limit: Option<usize>,
}

impl Default for CensusConfig {
    fn default() -> Self {
        CensusConfig {
            max_rank: DEFAULT_MAX_RANK,
            class_limit: None,
        }
    }
}

/// The classes of one rank, sorted by canonical key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Census {
    k: usize,
    classes: Vec<RibbonGraphClass>,
    by_genus: BTreeMap<u32, Vec<usize>>,
}

impl Census {
    pub fn from_classes(k: usize, mut classes: Vec<RibbonGraphClass>) -> Self {
        classes.sort_by(|a, b| a.key.cmp(&b.key));
        let mut by_genus: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for (i, c) in classes.iter().enumerate() {
            by_genus.entry(c.genus).or_default().push(i);
        }
        Census {
            k,
            classes,
            by_genus,
        }
    }

    pub fn rank(&self) -> usize {
        self.k
    }

    pub fn classes(&self) -> &[RibbonGraphClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Classes of genus `h` (empty when there are none).
    pub fn of_genus(&self, h: u32) -> impl Iterator<Item = &RibbonGraphClass> {
        self.by_genus
            .get(&h)
            .map(|v| v.as_slice())
            .unwrap_or(&[])
            .iter()
            .map(move |&i| &self.classes[i])
    }

    /// Genera that occur, ascending.
    pub fn genera(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_genus.keys().copied()
    }

    /// Sum of `1 / |BAut|` over the classes of genus `h`.
    pub fn constant(&self, h: u32) -> ExactRational {
        self.of_genus(h).fold(ExactRational::zero(), |acc, c| {
            acc + ExactRational::new(BigInt::from(1), BigInt::from(c.baut_order()))
        })
    }
}

/// `C_{k,h}` for a built census.
pub fn constant_c(census: &Census, h: u32) -> ExactRational {
    census.constant(h)
}

/// Builds the census of rank `k`. Only words that are least among their
/// rotations and reversals are expanded; all their signings are mapped,
/// canonicalized and deduplicated.
pub fn build_census(k: usize, config: &CensusConfig) -> Result<Census, CensusError> {
    if k > config.max_rank {
        return Err(CensusError::RankExceedsCap {
            k,
            max: config.max_rank,
        });
    }
    if k == 0 {
        return Ok(Census::from_classes(0, vec![RibbonGraphClass::annulus()]));
    }
    let reps: Vec<Vec<u8>> = BaseWords::new(k)
        .par_bridge()
        .filter(|w| is_traversal_representative(w))
        .collect();
    let table = reps
        .par_iter()
        .fold(HashMap::new, |mut table, base| {
            for w in signings(base) {
                insert_witness(&mut table, w);
            }
            table
        })
        .reduce(HashMap::new, merge_tables);
    finish(k, table, config)
}

/// Builds the census from an arbitrary stream of rank-`k` words. The result
/// does not depend on the order of the stream.
pub fn build_census_from_words(
    k: usize,
    words: impl IntoIterator<Item = GaussWord>,
    config: &CensusConfig,
) -> Result<Census, CensusError> {
    if k == 0 {
        return Ok(Census::from_classes(0, vec![RibbonGraphClass::annulus()]));
    }
    let mut table = HashMap::new();
    for w in words {
        debug_assert_eq!(w.rank(), k);
        insert_witness(&mut table, w);
    }
    finish(k, table, config)
}

fn insert_witness(table: &mut HashMap<CanonicalKey, GaussWord>, w: GaussWord) {
    let key = w.to_ribbon_graph().canonical_key();
    match table.get_mut(&key) {
        Some(existing) if *existing <= w => {}
        Some(existing) => *existing = w,
        None => {
            table.insert(key, w);
        }
    }
}

fn merge_tables(
    mut a: HashMap<CanonicalKey, GaussWord>,
    b: HashMap<CanonicalKey, GaussWord>,
) -> HashMap<CanonicalKey, GaussWord> {
    if a.len() < b.len() {
        return merge_tables(b, a);
    }
    for (key, w) in b {
        match a.get_mut(&key) {
            Some(existing) if *existing <= w => {}
            Some(existing) => *existing = w,
            None => {
                a.insert(key, w);
            }
        }
    }
    a
}

fn finish(
    k: usize,
    table: HashMap<CanonicalKey, GaussWord>,
    config: &CensusConfig,
) -> Result<Census, CensusError> {
    if let Some(limit) = config.class_limit {
        if table.len() > limit {
            return Err(CensusError::ClassLimit { k, limit });
        }
    }
    let classes = table
        .into_par_iter()
        .map(|(key, w)| RibbonGraphClass::from_graph(&w, w.to_ribbon_graph(), key))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Census::from_classes(k, classes))
}

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    format: String,
    version: String,
    k: usize,
}

#[derive(Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CensusRecord {
    pub k: usize,
    pub h: u32,
    pub b: usize,
    pub aut: usize,
    pub baut: usize,
    pub key: String,
    pub word: String,
}

impl From<&RibbonGraphClass> for CensusRecord {
    fn from(c: &RibbonGraphClass) -> Self {
        CensusRecord {
            k: c.k,
            h: c.genus,
            b: c.boundaries,
            aut: c.aut_order,
            baut: c.baut_order(),
            key: c.key.to_hex(),
            word: c.witness.to_string(),
        }
    }
}

/// Writes a census as JSON lines: a header, then one record per class
/// (restricted to genus `genus` when given).
pub fn write_census(
    census: &Census,
    genus: Option<u32>,
    mut out: impl Write,
) -> Result<(), CensusError> {
    let header = Header {
        format: CENSUS_FORMAT.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        k: census.rank(),
    };
    writeln!(out, "{}", serde_json::to_string(&header).expect("header serializes"))?;
    for c in census.classes() {
        if genus.map_or(true, |h| h == c.genus) {
            let rec = CensusRecord::from(c);
            writeln!(out, "{}", serde_json::to_string(&rec).expect("record serializes"))?;
        }
    }
    Ok(())
}

/// Reads a census file, recomputing every class from its witness word and
/// rejecting records whose stored invariants disagree.
pub fn read_census(input: impl BufRead) -> Result<Census, CensusError> {
    let mut lines = input.lines().enumerate();
    let corrupt = |line: usize, message: String| CensusError::Corrupt {
        line: line + 1,
        message,
    };
    let (_, first) = lines
        .next()
        .ok_or_else(|| corrupt(0, "empty file".into()))?;
    let header: Header =
        serde_json::from_str(&first?).map_err(|e| corrupt(0, format!("bad header: {e}")))?;
    if header.format != CENSUS_FORMAT {
        return Err(corrupt(0, format!("unknown format `{}`", header.format)));
    }
    let mut classes = Vec::new();
    for (i, line) in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: CensusRecord =
            serde_json::from_str(&line).map_err(|e| corrupt(i, format!("bad record: {e}")))?;
        let word: GaussWord = rec.word.parse()?;
        let class = RibbonGraphClass::from_word(&word)?;
        let recomputed = CensusRecord::from(&class);
        if recomputed != rec || class.k != header.k {
            return Err(corrupt(i, "stored invariants do not match recomputation".into()));
        }
        classes.push(class);
    }
    let census = Census::from_classes(header.k, classes);
    if census.classes().windows(2).any(|p| p[0].key == p[1].key) {
        return Err(corrupt(0, "duplicate canonical keys".into()));
    }
    Ok(census)
}

pub fn census_file_name(k: usize) -> String {
    format!("census-k{k}.jsonl")
}

/// Builds censuses on demand and keeps them, optionally backed by a cache
/// directory of census files.
#[derive(Debug, Default)]
pub struct CensusStore {
    config: CensusConfig,
    dir: Option<PathBuf>,
    built: HashMap<usize, Arc<Census>>,
}

impl CensusStore {
    pub fn new(config: CensusConfig) -> Self {
        CensusStore {
            config,
            dir: None,
            built: HashMap::new(),
        }
    }

    pub fn with_cache_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.dir = Some(dir.into());
        self
    }

    pub fn config(&self) -> &CensusConfig {
        &self.config
    }

    /// Registers a census loaded elsewhere.
    pub fn insert(&mut self, census: Census) {
        self.built.insert(census.rank(), Arc::new(census));
    }

    pub fn get(&mut self, k: usize) -> Result<Arc<Census>, CensusError> {
        if let Some(c) = self.built.get(&k) {
            return Ok(c.clone());
        }
        if k > self.config.max_rank {
            return Err(CensusError::RankExceedsCap {
                k,
                max: self.config.max_rank,
            });
        }
        let census = match &self.dir {
            Some(dir) => {
                let path = dir.join(census_file_name(k));
                if path.exists() {
                    load_census(&path)?
                } else {
                    let c = build_census(k, &self.config)?;
                    std::fs::create_dir_all(dir)?;
                    save_census(&c, &path)?;
                    c
                }
            }
            None => build_census(k, &self.config)?,
        };
        let census = Arc::new(census);
        self.built.insert(k, census.clone());
        Ok(census)
    }
}

pub fn load_census(path: &Path) -> Result<Census, CensusError> {
    read_census(BufReader::new(File::open(path)?))
}

pub fn save_census(census: &Census, path: &Path) -> Result<(), CensusError> {
    let mut out = BufWriter::new(File::create(path)?);
    write_census(census, None, &mut out)?;
    out.flush()?;
    Ok(())
}
