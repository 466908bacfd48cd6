//! Embedding and orbit counts of ribbon graphs in surfaces of signature
//! `(g, n)`.
//!
//! An embedding is classified by a partition of the graph's boundary
//! components (which boundaries bound the same complementary piece) and a
//! signature for each piece, taken up to the boundary automorphism group.
//! Exact orbit counts are computed two ways: by explicit orbit reduction of
//! the enumerated data, and by Burnside's lemma with fixed points counted in
//! closed form. The second scales to large `(g, n)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::census::{Census, ExactRational, RibbonGraphClass};

/// Genus, punctures and boundary count of a complementary piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Signature {
    pub genus: u64,
    pub punctures: u64,
    pub boundaries: usize,
}

impl Signature {
    pub fn is_disk(&self) -> bool {
        self.genus == 0 && self.punctures == 0 && self.boundaries == 1
    }

    pub fn is_punctured_disk(&self) -> bool {
        self.genus == 0 && self.punctures == 1 && self.boundaries == 1
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.genus, self.punctures, self.boundaries)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CountMode {
    /// All embeddings up to isotopy.
    Iso,
    /// Embeddings with no unpunctured disk in the complement.
    NoDisk,
}

impl CountMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMode::Iso => "iso",
            CountMode::NoDisk => "no-disk",
        }
    }
}

/// Which complementary pieces are disallowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EmbeddingFilter {
    pub mode: CountMode,
    /// Also reject once-punctured disks (peripheral curves).
    pub exclude_punctured_disks: bool,
}

impl From<CountMode> for EmbeddingFilter {
    fn from(mode: CountMode) -> Self {
        EmbeddingFilter {
            mode,
            exclude_punctured_disks: false,
        }
    }
}

impl EmbeddingFilter {
    pub fn admits(&self, s: &Signature) -> bool {
        !(self.mode == CountMode::NoDisk && s.is_disk()
            || self.exclude_punctured_disks && s.is_punctured_disk())
    }

    // Forbidden (genus, punctures) for a piece with a single boundary.
    // Pieces with more boundaries are never rejected.
    fn forbidden_single(&self) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        if self.mode == CountMode::NoDisk {
            out.push((0, 0));
        }
        if self.exclude_punctured_disks {
            out.push((0, 1));
        }
        out
    }
}

/// One complementary piece: the boundary components it is glued to and its
/// signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Part {
    pub boundaries: Vec<usize>,
    pub signature: Signature,
}

/// A partition of the boundary components together with a signature per
/// block. Blocks are sorted, and ordered by their least boundary index.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct OrbitInvariant {
    pub parts: Vec<Part>,
}

impl OrbitInvariant {
    pub fn new(mut parts: Vec<Part>) -> Self {
        for p in &mut parts {
            p.boundaries.sort_unstable();
        }
        parts.sort();
        OrbitInvariant { parts }
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// Image under a permutation of boundary indices.
    pub fn permuted(&self, perm: &[usize]) -> OrbitInvariant {
        OrbitInvariant::new(
            self.parts
                .iter()
                .map(|p| Part {
                    boundaries: p.boundaries.iter().map(|&i| perm[i]).collect(),
                    signature: p.signature,
                })
                .collect(),
        )
    }

    pub fn has_disk(&self) -> bool {
        self.parts.iter().any(|p| p.signature.is_disk())
    }

    /// Every boundary is its own piece and no two pieces share a signature.
    pub fn all_distinct_singletons(&self) -> bool {
        self.parts.iter().all(|p| p.boundaries.len() == 1)
            && self
                .parts
                .iter()
                .map(|p| p.signature)
                .collect::<BTreeSet<_>>()
                .len()
                == self.parts.len()
    }

    /// Checks the Euler characteristic identities for an embedding of
    /// `graph` in a surface of signature `(g, n)`, plus that the blocks
    /// partition the boundary set.
    pub fn satisfies_identities(&self, graph: &RibbonGraphClass, g: u64, n: u64) -> bool {
        let b = graph.boundaries;
        let r = self.parts.len() as i64;
        let mut seen = vec![false; b];
        for p in &self.parts {
            if p.boundaries.is_empty() || p.signature.boundaries != p.boundaries.len() {
                return false;
            }
            for &i in &p.boundaries {
                if i >= b || seen[i] {
                    return false;
                }
                seen[i] = true;
            }
        }
        let punctures: u64 = self.parts.iter().map(|p| p.signature.punctures).sum();
        let boundaries: usize = self.parts.iter().map(|p| p.signature.boundaries).sum();
        let genus: i64 = self.parts.iter().map(|p| p.signature.genus as i64).sum();
        seen.iter().all(|&s| s)
            && punctures == n
            && boundaries == b
            && genus == g as i64 + r - graph.genus as i64 - b as i64
    }
}

impl fmt::Display for OrbitInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            let ids: Vec<String> = p.boundaries.iter().map(|b| b.to_string()).collect();
            write!(f, "{{{}}}:{}", ids.join(","), p.signature)?;
        }
        Ok(())
    }
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Number of `r`-tuples of non-negative integers summing to `s`; zero for
/// negative `s`.
pub fn weak_compositions(s: i64, r: u32) -> BigUint {
    if s < 0 {
        return BigUint::zero();
    }
    if r == 0 {
        return if s == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(s as u64 + r as u64 - 1, r as u64 - 1)
}

/// Stirling number of the second kind.
pub fn stirling2(m: usize, r: usize) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    if m == 0 {
        return BigUint::one();
    }
    let mut row = vec![BigUint::zero(); r + 1];
    row[0] = BigUint::one();
    for i in 1..=m {
        for j in (1..=r.min(i)).rev() {
            row[j] = &row[j - 1] + &row[j] * j;
        }
        row[0] = BigUint::zero();
    }
    row[r].clone()
}

/// All set partitions of `{0, .., b-1}`, blocks sorted and ordered by least
/// element.
pub fn set_partitions(b: usize) -> Vec<Vec<Vec<usize>>> {
    fn rec(i: usize, b: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == b {
            out.push(blocks.clone());
            return;
        }
        for j in 0..blocks.len() {
            blocks[j].push(i);
            rec(i + 1, b, blocks, out);
            blocks[j].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, b, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(0, b, &mut Vec::new(), &mut out);
    out
}

/// Calls `f` with every `r`-tuple of non-negative integers summing to `s`.
pub fn for_each_weak_composition(s: u64, r: usize, mut f: impl FnMut(&[u64])) {
    fn rec(left: u64, slot: usize, buf: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
        if slot + 1 == buf.len() {
            buf[slot] = left;
            f(buf);
            return;
        }
        for x in 0..=left {
            buf[slot] = x;
            rec(left - x, slot + 1, buf, f);
        }
    }
    if r == 0 {
        if s == 0 {
            f(&[]);
        }
        return;
    }
    let mut buf = vec![0; r];
    rec(s, 0, &mut buf, &mut f);
}

// Total genus to distribute over `r` pieces.
fn genus_budget(graph: &RibbonGraphClass, g: u64, r: usize) -> i64 {
    g as i64 + r as i64 - graph.genus as i64 - graph.boundaries as i64
}

/// Number of (partition, signature) pairs with distinguishable boundaries,
/// i.e. without quotienting by boundary automorphisms.
pub fn closed_form_ordered_count(graph: &RibbonGraphClass, g: u64, n: u64) -> BigUint {
    let b = graph.boundaries;
    (1..=b)
        .map(|r| {
            stirling2(b, r)
                * weak_compositions(genus_budget(graph, g, r), r as u32)
                * weak_compositions(n as i64, r as u32)
        })
        .sum()
}

/// Every valid (partition, signature) pair, boundaries distinguishable.
pub fn enumerate_ordered_invariants(
    graph: &RibbonGraphClass,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> Vec<OrbitInvariant> {
    let filter = filter.into();
    let mut out = Vec::new();
    for partition in set_partitions(graph.boundaries) {
        let r = partition.len();
        let budget = genus_budget(graph, g, r);
        if budget < 0 {
            continue;
        }
        for_each_weak_composition(budget as u64, r, |genera| {
            for_each_weak_composition(n, r, |punctures| {
                let parts: Vec<Part> = partition
                    .iter()
                    .zip(genera.iter().zip(punctures))
                    .map(|(block, (&genus, &punctures))| Part {
                        boundaries: block.clone(),
                        signature: Signature {
                            genus,
                            punctures,
                            boundaries: block.len(),
                        },
                    })
                    .collect();
                if parts.iter().all(|p| filter.admits(&p.signature)) {
                    out.push(OrbitInvariant::new(parts));
                }
            });
        });
    }
    out
}

/// Least element of the orbit of `inv` under the graph's boundary group.
pub fn canonical_representative(graph: &RibbonGraphClass, inv: &OrbitInvariant) -> OrbitInvariant {
    graph
        .baut
        .elements()
        .iter()
        .map(|p| inv.permuted(p))
        .min()
        .expect("group contains the identity")
}

/// One representative per boundary-automorphism orbit, sorted.
pub fn enumerate_orbit_invariants(
    graph: &RibbonGraphClass,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> Vec<OrbitInvariant> {
    let reps: BTreeSet<OrbitInvariant> = enumerate_ordered_invariants(graph, g, n, filter)
        .iter()
        .map(|inv| canonical_representative(graph, inv))
        .collect();
    reps.into_iter().collect()
}

/// Number of non-negative integer solutions of `sum lens[i] * x[i] = total`.
fn restricted_solutions(total: i64, lens: &[usize], memo: &mut HashMap<(i64, Vec<usize>), BigUint>) -> BigUint {
    if total < 0 {
        return BigUint::zero();
    }
    if lens.is_empty() {
        return if total == 0 { BigUint::one() } else { BigUint::zero() };
    }
    let mut key_lens = lens.to_vec();
    key_lens.sort_unstable();
    if key_lens.iter().all(|&l| l == 1) {
        return weak_compositions(total, lens.len() as u32);
    }
    let key = (total, key_lens);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let t = total as usize;
    let mut ways = vec![BigUint::zero(); t + 1];
    ways[0] = BigUint::one();
    for &len in &key.1 {
        for s in len..=t {
            let prev = ways[s - len].clone();
            ways[s] += prev;
        }
    }
    let v = ways[t].clone();
    memo.insert(key, v.clone());
    v
}

// A cycle of pieces under a boundary permutation: its length and whether
// its pieces have a single boundary (and so may be filtered).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct PartCycle {
    len: usize,
    single: bool,
}

// Signature assignments on `cycles` that are constant along each cycle and
// avoid the filter's forbidden pieces, by inclusion-exclusion over cycles
// forced onto a forbidden signature.
fn fixed_assignments(
    genus_total: i64,
    punctures: u64,
    cycles: &[PartCycle],
    forbidden: &[(u64, u64)],
    memo: &mut HashMap<(i64, Vec<usize>), BigUint>,
) -> BigUint {
    let free: Vec<usize> = cycles.iter().filter(|c| !c.single || forbidden.is_empty()).map(|c| c.len).collect();
    let mut eligible: Vec<usize> = if forbidden.is_empty() {
        Vec::new()
    } else {
        cycles.iter().filter(|c| c.single).map(|c| c.len).collect()
    };
    eligible.sort_unstable();
    // Each eligible cycle is free or pinned to one forbidden signature.
    let options = forbidden.len() + 1;
    let mut total = BigInt::zero();
    let mut choice = vec![0usize; eligible.len()];
    loop {
        // Only non-decreasing choices within runs of equal lengths; weight by
        // the number of orderings.
        let canonical = (1..eligible.len())
            .all(|i| eligible[i] != eligible[i - 1] || choice[i] >= choice[i - 1]);
        if canonical {
            let mut lens = free.clone();
            let mut g_used = 0i64;
            let mut n_used = 0i64;
            let mut pinned = 0usize;
            for (i, &c) in choice.iter().enumerate() {
                if c == 0 {
                    lens.push(eligible[i]);
                } else {
                    let (fg, fn_) = forbidden[c - 1];
                    g_used += (fg as usize * eligible[i]) as i64;
                    n_used += (fn_ as usize * eligible[i]) as i64;
                    pinned += 1;
                }
            }
            let term = restricted_solutions(genus_total - g_used, &lens, memo)
                * restricted_solutions(punctures as i64 - n_used, &lens, memo);
            if !term.is_zero() {
                let term = BigInt::from(term) * BigInt::from(orderings(&eligible, &choice));
                if pinned % 2 == 0 {
                    total += term;
                } else {
                    total -= term;
                }
            }
        }
        // Next choice vector in mixed radix.
        let mut i = 0;
        while i < choice.len() {
            choice[i] += 1;
            if choice[i] < options {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    debug_assert!(!total.is_negative());
    total.to_biguint().expect("inclusion-exclusion total is non-negative")
}

// Number of distinct assignments of options to equal-length cycles that
// sort to `choice` within each run of equal lengths.
fn orderings(eligible: &[usize], choice: &[usize]) -> BigUint {
    let mut acc = BigUint::one();
    let mut i = 0;
    while i < eligible.len() {
        let mut j = i;
        while j < eligible.len() && eligible[j] == eligible[i] {
            j += 1;
        }
        let mut counts: HashMap<usize, u64> = HashMap::new();
        for &c in &choice[i..j] {
            *counts.entry(c).or_default() += 1;
        }
        let mut left = (j - i) as u64;
        for &c in counts.values() {
            acc *= binomial(left, c);
            left -= c;
        }
        i = j;
    }
    acc
}

// Cycles of the permutation induced on the blocks of `partition`, or None
// when the partition is not invariant.
fn induced_cycles(partition: &[Vec<usize>], perm: &[usize], block_of: &[usize]) -> Option<Vec<PartCycle>> {
    let r = partition.len();
    let mut image = vec![0usize; r];
    for (j, block) in partition.iter().enumerate() {
        let target = block_of[perm[block[0]]];
        if partition[target].len() != block.len()
            || block.iter().any(|&x| block_of[perm[x]] != target)
        {
            return None;
        }
        image[j] = target;
    }
    let mut seen = vec![false; r];
    let mut cycles = Vec::new();
    for start in 0..r {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            len += 1;
            j = image[j];
        }
        cycles.push(PartCycle {
            len,
            single: partition[start].len() == 1,
        });
    }
    Some(cycles)
}

/// Burnside sum of fixed points over the boundary group, each fixed-point
/// count in closed form. Equals the number of orbits times the group order.
pub fn burnside_fixed_point_sum(
    graph: &RibbonGraphClass,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> BigUint {
    let filter = filter.into();
    let forbidden = filter.forbidden_single();
    let b = graph.boundaries;
    let partitions = set_partitions(b);
    let mut memo = HashMap::new();
    let mut by_type: HashMap<(i64, Vec<PartCycle>), BigUint> = HashMap::new();
    let mut sum = BigUint::zero();
    for perm in graph.baut.elements() {
        for partition in &partitions {
            let budget = genus_budget(graph, g, partition.len());
            if budget < 0 {
                continue;
            }
            let mut block_of = vec![0usize; b];
            for (j, block) in partition.iter().enumerate() {
                for &x in block {
                    block_of[x] = j;
                }
            }
            if let Some(mut cycles) = induced_cycles(partition, perm, &block_of) {
                cycles.sort_unstable();
                let value = by_type
                    .entry((budget, cycles))
                    .or_insert_with_key(|(budget, cycles)| {
                        fixed_assignments(*budget, n, cycles, &forbidden, &mut memo)
                    });
                sum += &*value;
            }
        }
    }
    sum
}

/// Number of embeddings of `graph` in the surface of signature `(g, n)` up
/// to homeomorphism: orbits of (partition, signature) pairs under the
/// boundary automorphism group.
pub fn count_embeddings(
    graph: &RibbonGraphClass,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> BigUint {
    let sum = burnside_fixed_point_sum(graph, g, n, filter);
    let order = BigUint::from(graph.baut_order());
    let (q, r) = sum.div_rem(&order);
    debug_assert!(r.is_zero(), "Burnside sum not divisible by group order");
    q
}

/// Sum of `count_embeddings` over the genus-`h` classes of the census. In
/// `NoDisk` mode this bounds the number of orbits of homotopy classes from
/// below, in `Iso` mode from above.
pub fn count_orbits_total(
    census: &Census,
    h: u32,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> BigUint {
    use rayon::prelude::*;
    let filter = filter.into();
    let classes: Vec<&RibbonGraphClass> = census.of_genus(h).collect();
    classes
        .par_iter()
        .map(|c| count_embeddings(c, g, n, filter))
        .reduce(BigUint::zero, |a, b| a + b)
}

/// Sum over every genus.
pub fn count_orbits_all_genera(
    census: &Census,
    g: u64,
    n: u64,
    filter: impl Into<EmbeddingFilter>,
) -> BigUint {
    let filter = filter.into();
    census
        .genera()
        .map(|h| count_orbits_total(census, h, g, n, filter))
        .sum()
}

fn rational(n: BigUint) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// Leading-order orbit count `C_{k,h} * C(g+k-3h+1, k+1-2h) * C(n+k+1-2h, k+1-2h)`,
/// the binomials read as weak-composition counts (zero for `g < h`).
pub fn asymptotic_orbit_count(census: &Census, h: u32, g: u64, n: u64) -> ExactRational {
    let k = census.rank() as i64;
    let exponent = k + 1 - 2 * h as i64;
    if exponent < 0 {
        return ExactRational::zero();
    }
    let parts = (exponent + 1) as u32;
    census.constant(h)
        * rational(weak_compositions(g as i64 - h as i64, parts))
        * rational(weak_compositions(n as i64, parts))
}

/// Leading-order count over all genera, `C_k * C(g+k+1, k+1) * C(n+k+1, k+1)`.
pub fn asymptotic_total(census: &Census, g: u64, n: u64) -> ExactRational {
    asymptotic_orbit_count(census, 0, g, n)
}

/// Closed-surface leading term `C_k * g^(k+1) / (k+1)!`.
pub fn asymptotic_closed(census: &Census, g: u64) -> ExactRational {
    let k = census.rank() as u32;
    let power = BigUint::from(g).pow(k + 1);
    let factorial: BigUint = (1..=(k as u64 + 1)).map(BigUint::from).product();
    census.constant(0)
        * ExactRational::new(BigInt::from(power), BigInt::from(factorial))
}

/// Orbit-level statistics over all iso-mode orbits of curves with `k`
/// crossings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitStatistics {
    pub orbits: BigUint,
    pub disk_orbits: BigUint,
    pub distinct_signature_orbits: BigUint,
    pub disk_fraction: ExactRational,
    pub distinct_signature_fraction: ExactRational,
}

/// Assignments of signatures to `b` distinguishable single-boundary pieces
/// with genera summing to `genus_total`, punctures to `punctures`, and all
/// (genus, punctures) pairs pairwise distinct. Möbius inversion over the
/// partition lattice, grouped by block type.
pub fn distinct_singleton_assignments(b: usize, genus_total: u64, punctures: u64) -> BigUint {
    fn integer_partitions(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            cur.push(part);
            integer_partitions(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut types = Vec::new();
    integer_partitions(b, b, &mut Vec::new(), &mut types);
    let factorial = |m: usize| -> BigUint { (1..=m as u64).map(BigUint::from).product() };
    let mut memo = HashMap::new();
    let mut total = BigInt::zero();
    for parts in types {
        // Number of set partitions of this block type.
        let mut denom = BigUint::one();
        let mut mult: HashMap<usize, usize> = HashMap::new();
        for &p in &parts {
            denom *= factorial(p);
            *mult.entry(p).or_default() += 1;
        }
        for &m in mult.values() {
            denom *= factorial(m);
        }
        let set_partitions = factorial(b) / denom;
        let mobius: BigUint = parts.iter().map(|&p| factorial(p - 1)).product();
        let negative = parts.iter().map(|&p| p - 1).sum::<usize>() % 2 == 1;
        let assignments = restricted_solutions(genus_total as i64, &parts, &mut memo)
            * restricted_solutions(punctures as i64, &parts, &mut memo);
        let term = BigInt::from(set_partitions * mobius * assignments);
        if negative {
            total -= term;
        } else {
            total += term;
        }
    }
    total.to_biguint().expect("count is non-negative")
}

pub fn orbit_statistics(census: &Census, g: u64, n: u64) -> OrbitStatistics {
    let orbits = count_orbits_all_genera(census, g, n, CountMode::Iso);
    let no_disk = count_orbits_all_genera(census, g, n, CountMode::NoDisk);
    let disk_orbits = &orbits - &no_disk;
    let distinct_signature_orbits: BigUint = census
        .classes()
        .iter()
        .filter(|c| c.boundaries == c.k + 2)
        .map(|c| {
            let ordered = distinct_singleton_assignments(c.boundaries, g, n);
            let (q, r) = ordered.div_rem(&BigUint::from(c.baut_order()));
            debug_assert!(r.is_zero());
            q
        })
        .sum();
    let fraction = |part: &BigUint| {
        if orbits.is_zero() {
            ExactRational::zero()
        } else {
            ExactRational::new(BigInt::from(part.clone()), BigInt::from(orbits.clone()))
        }
    };
    OrbitStatistics {
        disk_fraction: fraction(&disk_orbits),
        distinct_signature_fraction: fraction(&distinct_signature_orbits),
        orbits,
        disk_orbits,
        distinct_signature_orbits,
    }
}

/// Lossy conversion for ratio reporting.
pub fn to_f64(q: &ExactRational) -> f64 {
    let n = q.numer().to_f64().unwrap_or(f64::NAN);
    let d = q.denom().to_f64().unwrap_or(f64::NAN);
    n / d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::{build_census, CensusConfig};

    fn annulus() -> RibbonGraphClass {
        RibbonGraphClass::annulus()
    }

    fn figure_eight() -> RibbonGraphClass {
        build_census(1, &CensusConfig::default()).unwrap().classes()[0].clone()
    }

    fn genus_one_rank_two() -> RibbonGraphClass {
        let c = build_census(2, &CensusConfig::default()).unwrap();
        let mut h1 = c.of_genus(1);
        let class = h1.next().unwrap().clone();
        assert!(h1.next().is_none());
        class
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn weak_composition_values() {
        assert_eq!(weak_compositions(2, 2), big(3));
        assert_eq!(weak_compositions(0, 4), big(1));
        assert_eq!(weak_compositions(-1, 3), big(0));
        let mut count = 0;
        for_each_weak_composition(5, 3, |_| count += 1);
        assert_eq!(big(count), weak_compositions(5, 3));
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(3, 2), big(3));
        for b in 1..8 {
            assert_eq!(stirling2(b, b), big(1));
            assert_eq!(stirling2(b, 1), big(1));
        }
        // Bell numbers from partitions agree with Stirling sums.
        for b in 1..7 {
            let by_stirling: BigUint = (1..=b).map(|r| stirling2(b, r)).sum();
            assert_eq!(by_stirling, big(set_partitions(b).len() as u64));
        }
    }

    #[test]
    fn ordered_count_examples() {
        assert_eq!(closed_form_ordered_count(&annulus(), 2, 0), big(4));
        assert_eq!(closed_form_ordered_count(&figure_eight(), 0, 0), big(1));
        assert_eq!(closed_form_ordered_count(&annulus(), 1, 1), big(5));
    }

    #[test]
    fn annulus_orbits_in_genus_two() {
        let a = annulus();
        let iso = enumerate_orbit_invariants(&a, 2, 0, CountMode::Iso);
        assert_eq!(iso.len(), 3);
        let text: Vec<String> = iso.iter().map(|i| i.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "{0}:(0,0,1) | {1}:(2,0,1)",
                "{0}:(1,0,1) | {1}:(1,0,1)",
                "{0,1}:(1,0,2)",
            ]
        );
        assert_eq!(enumerate_orbit_invariants(&a, 2, 0, CountMode::NoDisk).len(), 2);
        assert_eq!(count_embeddings(&a, 2, 0, CountMode::Iso), big(3));
        assert_eq!(count_embeddings(&a, 10, 0, CountMode::NoDisk), big(6));
    }

    #[test]
    fn figure_eight_on_the_sphere() {
        let f = figure_eight();
        assert!(enumerate_orbit_invariants(&f, 0, 0, CountMode::NoDisk).is_empty());
        assert_eq!(count_embeddings(&f, 0, 0, CountMode::NoDisk), big(0));
        assert_eq!(count_embeddings(&f, 0, 0, CountMode::Iso), big(1));
    }

    #[test]
    fn genus_one_graph_in_the_torus() {
        // b = 2, h = 1: in the torus both boundaries bound disks, or one
        // annulus joins them (genus budget 1 + 1 - 1 - 2 = -1 rules that out).
        let c = genus_one_rank_two();
        assert_eq!((c.genus, c.boundaries), (1, 2));
        assert_eq!(count_embeddings(&c, 1, 0, CountMode::Iso), big(1));
        assert_eq!(count_embeddings(&c, 1, 0, CountMode::NoDisk), big(0));
    }

    #[test]
    fn punctured_disk_exclusion() {
        let a = annulus();
        let strict = EmbeddingFilter {
            mode: CountMode::NoDisk,
            exclude_punctured_disks: true,
        };
        // Sphere with four punctures: the separating curves split 2|2 only.
        assert_eq!(count_embeddings(&a, 0, 4, CountMode::NoDisk), big(2));
        assert_eq!(count_embeddings(&a, 0, 4, strict), big(1));
        assert_eq!(
            enumerate_orbit_invariants(&a, 0, 4, strict).len(),
            1
        );
    }

    #[test]
    fn burnside_matches_enumeration_small() {
        for class in [annulus(), figure_eight(), genus_one_rank_two()] {
            for g in 0..5 {
                for n in 0..5 {
                    for mode in [CountMode::Iso, CountMode::NoDisk] {
                        assert_eq!(
                            count_embeddings(&class, g, n, mode),
                            big(enumerate_orbit_invariants(&class, g, n, mode).len() as u64),
                            "g={g} n={n} {mode:?}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn asymptotic_examples() {
        let c0 = build_census(0, &CensusConfig::default()).unwrap();
        for (g, n) in [(0u64, 0u64), (3, 5), (10, 0)] {
            assert_eq!(
                asymptotic_orbit_count(&c0, 0, g, n),
                ExactRational::new(((g + 1) * (n + 1)).into(), 2.into())
            );
        }
        assert_eq!(asymptotic_total(&c0, 10, 0), ExactRational::new(11.into(), 2.into()));
        assert_eq!(asymptotic_closed(&c0, 7), ExactRational::new(7.into(), 2.into()));
        let c2 = build_census(2, &CensusConfig::default()).unwrap();
        // C_{2,1} = 1; C(5 + 2 - 3 + 1, 1) * C(5 + 1, 1) = 5 * 6.
        assert_eq!(asymptotic_orbit_count(&c2, 1, 5, 5), ExactRational::from_integer(30.into()));
        // k = 3, h = 2: both binomial exponents vanish and C_{3,2} = 1.
        let c3 = build_census(3, &CensusConfig::default()).unwrap();
        assert_eq!(c3.constant(2), ExactRational::from_integer(1.into()));
        assert_eq!(asymptotic_orbit_count(&c3, 2, 9, 4), ExactRational::from_integer(1.into()));
        assert_eq!(asymptotic_total(&c2, 0, 0), c2.constant(0));
        assert_eq!(asymptotic_orbit_count(&c2, 2, 5, 5), ExactRational::zero());
    }

    #[test]
    fn statistics_for_simple_curves() {
        let c0 = build_census(0, &CensusConfig::default()).unwrap();
        let s = orbit_statistics(&c0, 2, 0);
        assert_eq!(s.orbits, big(3));
        assert_eq!(s.disk_fraction, ExactRational::new(1.into(), 3.into()));
        assert_eq!(s.distinct_signature_fraction, ExactRational::new(1.into(), 3.into()));
        let s = orbit_statistics(&c0, 100, 0);
        assert_eq!(s.disk_fraction, ExactRational::new(1.into(), 52.into()));
    }

    #[test]
    fn distinct_assignments_brute_force() {
        for b in 1..=4 {
            for gt in 0..6u64 {
                for n in 0..4u64 {
                    let mut count = 0u64;
                    for_each_weak_composition(gt, b, |gs| {
                        for_each_weak_composition(n, b, |ns| {
                            let pairs: BTreeSet<(u64, u64)> =
                                gs.iter().copied().zip(ns.iter().copied()).collect();
                            if pairs.len() == b {
                                count += 1;
                            }
                        });
                    });
                    assert_eq!(distinct_singleton_assignments(b, gt, n), big(count));
                }
            }
        }
    }
}
