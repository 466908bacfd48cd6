//! Combinatorial maps of 4-valent ribbon graphs.
//!
//! A map is a pair of dart permutations: `sigma`, whose cycles are the
//! counterclockwise rotations at the vertices, and `alpha`, the fixed-point
//! free involution pairing half-edges. Boundary components of the thickened
//! surface are the cycles of `phi = sigma ∘ alpha`.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("dart count {0} is not a positive multiple of 4")]
    DartCount(usize),
    #[error("more than 256 darts cannot be encoded")]
    TooLarge,
    #[error("sigma is not a permutation made of 4-cycles")]
    BadRotation,
    #[error("alpha is not a fixed-point-free involution")]
    BadInvolution,
    #[error("map is not connected")]
    Disconnected,
    #[error("Euler characteristic gives a non-integral or negative genus")]
    BadGenus,
    #[error("canonical key has odd length or out-of-range entries")]
    BadKey,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CombinatorialMap {
    sigma: Vec<u32>,
    alpha: Vec<u32>,
}

impl CombinatorialMap {
    /// Validates and builds a map.
    pub fn new(sigma: Vec<u32>, alpha: Vec<u32>) -> Result<Self, MapError> {
        let n = sigma.len();
        if n == 0 || n % 4 != 0 || alpha.len() != n {
            return Err(MapError::DartCount(n));
        }
        if n > 256 {
            return Err(MapError::TooLarge);
        }
        if !is_permutation(&sigma) {
            return Err(MapError::BadRotation);
        }
        for d in 0..n {
            let mut x = d;
            for step in 1..=4 {
                x = sigma[x] as usize;
                if (x == d) != (step == 4) {
                    return Err(MapError::BadRotation);
                }
            }
        }
        for d in 0..n {
            let a = alpha[d] as usize;
            if a >= n || a == d || alpha[a] as usize != d {
                return Err(MapError::BadInvolution);
            }
        }
        let m = CombinatorialMap { sigma, alpha };
        if !m.is_connected() {
            return Err(MapError::Disconnected);
        }
        Ok(m)
    }

    pub(crate) fn from_parts_unchecked(sigma: Vec<u32>, alpha: Vec<u32>) -> Self {
        debug_assert!(CombinatorialMap::new(sigma.clone(), alpha.clone()).is_ok());
        CombinatorialMap { sigma, alpha }
    }

    pub fn sigma(&self) -> &[u32] {
        &self.sigma
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn dart_count(&self) -> usize {
        self.sigma.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.sigma.len() / 4
    }

    pub fn edge_count(&self) -> usize {
        self.sigma.len() / 2
    }

    /// Face permutation `phi(d) = sigma(alpha(d))`.
    pub fn phi(&self, d: u32) -> u32 {
        self.sigma[self.alpha[d as usize] as usize]
    }

    pub fn is_connected(&self) -> bool {
        let n = self.dart_count();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for e in [self.sigma[d as usize], self.alpha[d as usize]] {
                if !seen[e as usize] {
                    seen[e as usize] = true;
                    count += 1;
                    stack.push(e);
                }
            }
        }
        count == n
    }

    /// Conjugates the map by the dart relabeling `d -> perm[d]`.
    pub fn relabeled(&self, perm: &[u32]) -> CombinatorialMap {
        let n = self.dart_count();
        let mut sigma = vec![0u32; n];
        let mut alpha = vec![0u32; n];
        for d in 0..n {
            sigma[perm[d] as usize] = perm[self.sigma[d] as usize];
            alpha[perm[d] as usize] = perm[self.alpha[d] as usize];
        }
        CombinatorialMap { sigma, alpha }
    }

    /// Rebuilds the map encoded by a canonical key.
    pub fn from_key(key: &CanonicalKey) -> Result<Self, MapError> {
        let bytes = &key.0;
        if bytes.len() % 2 != 0 {
            return Err(MapError::BadKey);
        }
        let n = bytes.len() / 2;
        let mut sigma = Vec::with_capacity(n);
        let mut alpha = Vec::with_capacity(n);
        for pair in bytes.chunks_exact(2) {
            if pair[0] as usize >= n || pair[1] as usize >= n {
                return Err(MapError::BadKey);
            }
            sigma.push(pair[0] as u32);
            alpha.push(pair[1] as u32);
        }
        CombinatorialMap::new(sigma, alpha)
    }
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        let x = x as usize;
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

/// Boundary components of the ribbon surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundarySet {
    /// Face cycles, each starting at its least dart, ordered by that dart.
    pub faces: Vec<Vec<u32>>,
    /// Index of the face containing each dart.
    pub face_of: Vec<usize>,
}

impl BoundarySet {
    pub fn count(&self) -> usize {
        self.faces.len()
    }
}

pub fn trace_boundaries(m: &CombinatorialMap) -> BoundarySet {
    let n = m.dart_count();
    let mut face_of = vec![usize::MAX; n];
    let mut faces = Vec::new();
    for start in 0..n as u32 {
        if face_of[start as usize] != usize::MAX {
            continue;
        }
        let idx = faces.len();
        let mut cycle = Vec::new();
        let mut d = start;
        while face_of[d as usize] == usize::MAX {
            face_of[d as usize] = idx;
            cycle.push(d);
            d = m.phi(d);
        }
        faces.push(cycle);
    }
    BoundarySet { faces, face_of }
}

/// Genus from `V - E + b = 2 - 2h`.
pub fn genus(m: &CombinatorialMap) -> Result<u32, MapError> {
    let b = trace_boundaries(m).count() as i64;
    let twice = 2 - m.vertex_count() as i64 + m.edge_count() as i64 - b;
    if twice < 0 || twice % 2 != 0 {
        return Err(MapError::BadGenus);
    }
    Ok((twice / 2) as u32)
}

/// Canonical encoding of an isomorphism class of maps. Hex-serialized in
/// census files.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CanonicalKey(pub Vec<u8>);

impl CanonicalKey {
    pub fn to_hex(&self) -> String {
        const DIGITS: &[u8; 16] = b"0123456789abcdef";
        let mut s = String::with_capacity(2 * self.0.len());
        for &b in &self.0 {
            s.push(DIGITS[(b >> 4) as usize] as char);
            s.push(DIGITS[(b & 15) as usize] as char);
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self, MapError> {
        if s.len() % 2 != 0 || !s.bytes().all(|c| matches!(c, b'0'..=b'9' | b'a'..=b'f')) {
            return Err(MapError::BadKey);
        }
        (0..s.len())
            .step_by(2)
            .map(|i| u8::from_str_radix(&s[i..i + 2], 16).map_err(|_| MapError::BadKey))
            .collect::<Result<Vec<_>, _>>()
            .map(CanonicalKey)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Least encoding over all root darts of the breadth-first relabeling that
/// visits `sigma(d)` then `alpha(d)`. Entry `2i` of the key is the new label
/// of `sigma` applied to dart `i`, entry `2i + 1` that of `alpha`.
pub fn canonical_form(m: &CombinatorialMap) -> CanonicalKey {
    let n = m.dart_count();
    assert!(n <= 256, "canonical keys support at most 256 darts");
    let mut best: Vec<u8> = Vec::new();
    let mut label = vec![u32::MAX; n];
    let mut order: Vec<u32> = Vec::with_capacity(n);
    let mut code: Vec<u8> = Vec::with_capacity(2 * n);
    for root in 0..n as u32 {
        label.iter_mut().for_each(|l| *l = u32::MAX);
        order.clear();
        code.clear();
        label[root as usize] = 0;
        order.push(root);
        // Set once the prefix is strictly smaller than `best`.
        let mut smaller = best.is_empty();
        let mut abandoned = false;
        let mut i = 0;
        while i < order.len() {
            let d = order[i] as usize;
            i += 1;
            for e in [m.sigma[d], m.alpha[d]] {
                if label[e as usize] == u32::MAX {
                    label[e as usize] = order.len() as u32;
                    order.push(e);
                }
                let c = label[e as usize] as u8;
                if !smaller {
                    let b = best[code.len()];
                    if c > b {
                        abandoned = true;
                        break;
                    }
                    if c < b {
                        smaller = true;
                    }
                }
                code.push(c);
            }
            if abandoned {
                break;
            }
        }
        if !abandoned && smaller {
            std::mem::swap(&mut best, &mut code);
        }
    }
    CanonicalKey(best)
}

/// Group of permutations of boundary component indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryGroup {
    degree: usize,
    elements: Vec<Vec<usize>>,
}

impl BoundaryGroup {
    /// Builds the group from a generating-closed list of permutations;
    /// duplicates are removed and the identity comes first.
    pub fn from_elements(degree: usize, elements: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let mut set: BTreeSet<Vec<usize>> = elements.into_iter().collect();
        let identity: Vec<usize> = (0..degree).collect();
        set.insert(identity.clone());
        let mut elements: Vec<Vec<usize>> = vec![identity.clone()];
        elements.extend(set.into_iter().filter(|p| *p != identity));
        BoundaryGroup { degree, elements }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_elements(degree, [])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Elements, identity first.
    pub fn elements(&self) -> &[Vec<usize>] {
        &self.elements
    }

    pub fn is_closed(&self) -> bool {
        let set: BTreeSet<&Vec<usize>> = self.elements.iter().collect();
        self.elements.iter().all(|p| {
            let mut inv = vec![0; self.degree];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            set.contains(&inv)
                && self.elements.iter().all(|q| {
                    let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
                    set.contains(&pq)
                })
        })
    }
}

/// Orientation-preserving automorphisms and their boundary action.
#[derive(Debug, Clone)]
pub struct AutGroup {
    /// Dart permutations commuting with `sigma` and `alpha`.
    pub elements: Vec<Vec<u32>>,
    /// Induced permutations of face indices, deduplicated.
    pub boundary_action: BoundaryGroup,
}

impl AutGroup {
    pub fn aut_order(&self) -> usize {
        self.elements.len()
    }

    pub fn baut_order(&self) -> usize {
        self.boundary_action.order()
    }
}

/// All automorphisms. Connectedness means an automorphism is fixed by the
/// image of dart 0, so each candidate image is extended and checked.
pub fn automorphisms(m: &CombinatorialMap) -> AutGroup {
    let n = m.dart_count();
    let faces = trace_boundaries(m);
    let face_len = |d: u32| faces.faces[faces.face_of[d as usize]].len();
    let mut elements = Vec::new();
    let mut actions = Vec::new();
    for target in 0..n as u32 {
        // Automorphisms preserve face lengths.
        if face_len(target) != face_len(0) {
            continue;
        }
        if let Some(f) = extend_morphism(m, 0, target) {
            let action: Vec<usize> = faces
                .faces
                .iter()
                .map(|face| faces.face_of[f[face[0] as usize] as usize])
                .collect();
            actions.push(action);
            elements.push(f);
        }
    }
    AutGroup {
        elements,
        boundary_action: BoundaryGroup::from_elements(faces.count(), actions),
    }
}

fn extend_morphism(m: &CombinatorialMap, from: u32, to: u32) -> Option<Vec<u32>> {
    let n = m.dart_count();
    let mut f = vec![u32::MAX; n];
    let mut used = vec![false; n];
    f[from as usize] = to;
    used[to as usize] = true;
    let mut stack = vec![from];
    while let Some(d) = stack.pop() {
        let image = f[d as usize] as usize;
        for (src, dst) in [
            (m.sigma[d as usize], m.sigma[image]),
            (m.alpha[d as usize], m.alpha[image]),
        ] {
            let cur = f[src as usize];
            if cur == u32::MAX {
                if used[dst as usize] {
                    return None;
                }
                f[src as usize] = dst;
                used[dst as usize] = true;
                stack.push(src);
            } else if cur != dst {
                return None;
            }
        }
    }
    Some(f)
}

/// A ribbon graph of a closed curve: the annulus for a simple curve,
/// otherwise a 4-valent map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RibbonGraph {
    Annulus,
    Map(CombinatorialMap),
}

impl RibbonGraph {
    pub fn vertex_count(&self) -> usize {
        match self {
            RibbonGraph::Annulus => 0,
            RibbonGraph::Map(m) => m.vertex_count(),
        }
    }

    pub fn boundary_count(&self) -> usize {
        match self {
            RibbonGraph::Annulus => 2,
            RibbonGraph::Map(m) => trace_boundaries(m).count(),
        }
    }

    pub fn genus(&self) -> Result<u32, MapError> {
        match self {
            RibbonGraph::Annulus => Ok(0),
            RibbonGraph::Map(m) => genus(m),
        }
    }

    /// The annulus has the empty key.
    pub fn canonical_key(&self) -> CanonicalKey {
        match self {
            RibbonGraph::Annulus => CanonicalKey::default(),
            RibbonGraph::Map(m) => canonical_form(m),
        }
    }
}

/// Image of the automorphism group in the permutations of boundary
/// components. The annulus swaps its two boundaries.
pub fn boundary_automorphisms(g: &RibbonGraph) -> BoundaryGroup {
    match g {
        RibbonGraph::Annulus => BoundaryGroup::from_elements(2, [vec![1, 0]]),
        RibbonGraph::Map(m) => automorphisms(m).boundary_action,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{parse_gauss_word, word_to_map};

    fn map_of(text: &str) -> CombinatorialMap {
        word_to_map(&parse_gauss_word(text).unwrap())
    }

    // One vertex, opposite darts paired: two simple curves crossing once on
    // a torus. Not the map of a single curve, but a valid genus-1 map.
    fn torus_map() -> CombinatorialMap {
        CombinatorialMap::new(vec![1, 2, 3, 0], vec![2, 3, 0, 1]).unwrap()
    }

    #[test]
    fn figure_eight_faces() {
        for text in ["1 1 / +", "1 1 / -"] {
            let m = map_of(text);
            let b = trace_boundaries(&m);
            assert_eq!(b.count(), 3);
            let mut sizes: Vec<_> = b.faces.iter().map(Vec::len).collect();
            sizes.sort();
            assert_eq!(sizes, vec![1, 1, 2]);
            assert_eq!(genus(&m), Ok(0));
        }
    }

    #[test]
    fn both_signs_of_one_crossing_give_the_same_map() {
        assert_eq!(
            canonical_form(&map_of("1 1 / +")),
            canonical_form(&map_of("1 1 / -"))
        );
    }

    #[test]
    fn torus_map_invariants() {
        let m = torus_map();
        assert_eq!(trace_boundaries(&m).count(), 1);
        assert_eq!(genus(&m), Ok(1));
        let aut = automorphisms(&m);
        assert_eq!(aut.aut_order(), 4);
        assert_eq!(aut.baut_order(), 1);
        assert_ne!(canonical_form(&m), canonical_form(&map_of("1 1 / +")));
    }

    #[test]
    fn figure_eight_automorphisms() {
        let m = map_of("1 1 / +");
        let aut = automorphisms(&m);
        assert_eq!(aut.aut_order(), 2);
        assert_eq!(aut.baut_order(), 2);
        let faces = trace_boundaries(&m);
        let swap = &aut.boundary_action.elements()[1];
        // The bigon is fixed and the two monogons are exchanged.
        for (i, face) in faces.faces.iter().enumerate() {
            if face.len() == 2 {
                assert_eq!(swap[i], i);
            } else {
                assert_ne!(swap[i], i);
            }
        }
    }

    #[test]
    fn annulus_invariants() {
        let a = RibbonGraph::Annulus;
        assert_eq!(a.boundary_count(), 2);
        assert_eq!(a.genus(), Ok(0));
        assert_eq!(boundary_automorphisms(&a).order(), 2);
    }

    #[test]
    fn rotated_reading_has_same_key() {
        // 1 2 1 2 / +- read from the next arc is 2 1 2 1 with the crossing
        // visit order swapped, which flips both signs.
        let a = canonical_form(&map_of("1 2 1 2 / +-"));
        let b = canonical_form(&map_of("2 1 2 1 / -+"));
        assert_eq!(a, b);
    }

    #[test]
    fn key_round_trip() {
        let m = map_of("1 2 3 1 2 3 / +-+");
        let key = canonical_form(&m);
        let rebuilt = CombinatorialMap::from_key(&key).unwrap();
        assert_eq!(canonical_form(&rebuilt), key);
        assert_eq!(CanonicalKey::from_hex(&key.to_hex()).unwrap(), key);
    }

    #[test]
    fn rejects_invalid_maps() {
        assert_eq!(
            CombinatorialMap::new(vec![1, 0, 3, 2], vec![1, 0, 3, 2]),
            Err(MapError::BadRotation)
        );
        assert_eq!(
            CombinatorialMap::new(vec![1, 2, 3, 0], vec![0, 2, 1, 3]),
            Err(MapError::BadInvolution)
        );
        let sigma = vec![1, 2, 3, 0, 5, 6, 7, 4];
        let alpha = vec![1, 0, 3, 2, 5, 4, 7, 6];
        assert_eq!(CombinatorialMap::new(sigma, alpha), Err(MapError::Disconnected));
        assert_eq!(CombinatorialMap::new(vec![0, 1], vec![1, 0]), Err(MapError::DartCount(2)));
    }

    #[test]
    fn boundary_group_closure() {
        let g = BoundaryGroup::from_elements(3, [vec![1, 2, 0], vec![2, 0, 1]]);
        assert!(g.is_closed());
        assert_eq!(g.order(), 3);
        let broken = BoundaryGroup::from_elements(3, [vec![1, 2, 0]]);
        assert!(!broken.is_closed());
    }
}
