use std::sync::OnceLock;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

use curve_orbits::census::{
    build_census, build_census_from_words, read_census, write_census, Census, CensusConfig,
    CensusStore, RibbonGraphClass,
};
use curve_orbits::counting::{
    count_embeddings, count_orbits_total, enumerate_orbit_invariants, orbit_statistics, CountMode,
    EmbeddingFilter,
};
use curve_orbits::gauss::{enumerate_gauss_words, parse_gauss_word, GaussWord, Sign};
use curve_orbits::geometry::{
    basmajian_min_length, intersection_budget, short_orbit_bound, HyperbolicParams,
};

fn censuses() -> &'static [Census] {
    static CENSUSES: OnceLock<Vec<Census>> = OnceLock::new();
    CENSUSES.get_or_init(|| {
        (0..=4)
            .map(|k| build_census(k, &CensusConfig::default()).unwrap())
            .collect()
    })
}

fn class(k: usize, index: usize) -> &'static RibbonGraphClass {
    let classes = censuses()[k].classes();
    &classes[index % classes.len()]
}

/// A signed word with arbitrary labels: each label appears twice, and
/// `sign_of[label]` is that crossing's sign.
#[derive(Debug, Clone)]
struct RawWord {
    labels: Vec<usize>,
    sign_of: Vec<Sign>,
}

impl RawWord {
    fn word(&self) -> GaussWord {
        let mut seen = Vec::new();
        for &l in &self.labels {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        let signs = seen.iter().map(|&l| self.sign_of[l]).collect();
        GaussWord::from_raw(&self.labels, signs).unwrap()
    }

    fn flip(&mut self, label: usize) {
        self.sign_of[label] = match self.sign_of[label] {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        };
    }

    /// Same curve read from position `r`. Crossings whose visit order
    /// changes get the opposite sign.
    fn rotated(&self, r: usize) -> RawWord {
        let mut out = self.clone();
        out.labels.rotate_left(r);
        for label in 0..self.sign_of.len() {
            let before = self.labels[..r].iter().filter(|&&l| l == label).count();
            if before == 1 {
                out.flip(label);
            }
        }
        out
    }

    /// Same curve traversed backwards, which swaps every visit order.
    fn reversed(&self) -> RawWord {
        let mut out = self.clone();
        out.labels.reverse();
        for label in 0..self.sign_of.len() {
            out.flip(label);
        }
        out
    }
}

fn raw_word(max_k: usize) -> impl Strategy<Value = RawWord> {
    (1..=max_k)
        .prop_flat_map(|k| {
            let labels: Vec<usize> = (0..k).flat_map(|l| [l, l]).collect();
            (
                Just(labels).prop_shuffle(),
                proptest::collection::vec(any::<bool>(), k),
            )
        })
        .prop_map(|(labels, bits)| RawWord {
            labels,
            sign_of: bits
                .into_iter()
                .map(|b| if b { Sign::Plus } else { Sign::Minus })
                .collect(),
        })
}

fn key(w: &GaussWord) -> curve_orbits::CanonicalKey {
    w.to_ribbon_graph().canonical_key()
}

proptest! {
    #[test]
    fn text_round_trip(raw in raw_word(8)) {
        let w = raw.word();
        prop_assert_eq!(parse_gauss_word(&w.to_string()).unwrap(), w);
    }

    #[test]
    fn renaming_labels_keeps_word(raw in raw_word(8), seed in any::<u64>()) {
        let k = raw.sign_of.len();
        let mut perm: Vec<usize> = (0..k).collect();
        perm.shuffle(&mut StdRng::seed_from_u64(seed));
        let renamed = RawWord {
            labels: raw.labels.iter().map(|&l| perm[l] + 10).collect(),
            sign_of: {
                let mut s = vec![Sign::Plus; k + 10];
                for l in 0..k {
                    s[perm[l] + 10] = raw.sign_of[l];
                }
                s
            },
        };
        prop_assert_eq!(renamed.word(), raw.word());
    }

    #[test]
    fn key_ignores_starting_point(raw in raw_word(7), r in 0usize..14) {
        let r = r % raw.labels.len();
        prop_assert_eq!(key(&raw.rotated(r).word()), key(&raw.word()));
    }

    #[test]
    fn key_ignores_direction(raw in raw_word(7)) {
        prop_assert_eq!(key(&raw.reversed().word()), key(&raw.word()));
    }

    #[test]
    fn class_invariants_are_consistent(raw in raw_word(6)) {
        let w = raw.word();
        let c = RibbonGraphClass::from_word(&w).unwrap();
        let k = w.rank();
        prop_assert_eq!(c.boundaries + 2 * c.genus as usize, k + 2);
        prop_assert_eq!((4 * k) % c.aut_order, 0);
        prop_assert_eq!(c.aut_order % c.baut_order(), 0);
        prop_assert!(c.baut.is_closed());
    }

    #[test]
    fn burnside_matches_orbit_enumeration(
        k in 0usize..=3,
        index in any::<usize>(),
        g in 0u64..=6,
        n in 0u64..=6,
        mode in prop_oneof![Just(CountMode::Iso), Just(CountMode::NoDisk)],
        exclude_punctured_disks in any::<bool>(),
    ) {
        let graph = class(k, index);
        let filter = EmbeddingFilter { mode, exclude_punctured_disks };
        let orbits = enumerate_orbit_invariants(graph, g, n, filter);
        prop_assert_eq!(count_embeddings(graph, g, n, filter), BigUint::from(orbits.len()));
    }

    #[test]
    fn no_disk_count_is_at_most_iso(k in 0usize..=4, h in 0u32..=2, g in 0u64..=60, n in 0u64..=60) {
        let c = &censuses()[k];
        let iso = count_orbits_total(c, h, g, n, CountMode::Iso);
        let no_disk = count_orbits_total(c, h, g, n, CountMode::NoDisk);
        prop_assert!(no_disk <= iso);
    }

    #[test]
    fn disk_fraction_shrinks_when_surface_doubles(k in 0usize..=2, m in 6u64..=60) {
        let c = &censuses()[k];
        let small = orbit_statistics(c, m, m);
        let large = orbit_statistics(c, 2 * m, 2 * m);
        prop_assert!(large.disk_fraction < small.disk_fraction);
        // Disk orbits grow by a lower power than all orbits.
        prop_assert!(&large.disk_orbits * &small.orbits < &small.disk_orbits * &large.orbits);
    }

    #[test]
    fn min_length_is_monotone(k in 1u64..500, c in 0.0f64..3.0, dc in 0.0f64..1.0) {
        prop_assert!(basmajian_min_length(k, c) <= basmajian_min_length(k + 1, c));
        prop_assert!(basmajian_min_length(k, c) <= basmajian_min_length(k, c + dc));
    }

    #[test]
    fn budget_is_monotone(l in 0.01f64..3.0, dl in 0.0f64..1.0, c in 0.0f64..3.0, dc in 0.0f64..1.0) {
        prop_assert!(intersection_budget(l, c) <= intersection_budget(l + dl, c));
        if c > 0.0 {
            prop_assert!(intersection_budget(l, c + dc) <= intersection_budget(l, c));
        }
    }

    #[test]
    fn budget_is_first_unreachable_count(l in 0.01f64..2.0, c in 0.0f64..2.0) {
        let a = intersection_budget(l, c);
        if a >= 2 {
            prop_assert!(basmajian_min_length(a - 1, c) <= l);
        }
        prop_assert!(basmajian_min_length(a, c) > l);
    }
}

#[test]
fn short_orbit_bound_is_nondecreasing_in_length() {
    let mut store = CensusStore::new(CensusConfig::default());
    for k in 0..=4 {
        store.insert(censuses()[k].clone());
    }
    for (genus, punctures) in [(2, 0), (1, 3), (3, 2)] {
        let mut last = BigUint::from(0u32);
        let mut l = 0.05;
        while l < 0.55 {
            let p = HyperbolicParams::new(l, 0.0, genus, punctures).unwrap();
            let b = short_orbit_bound(&p, &mut store).unwrap();
            assert!(b.bound >= last, "bound fell at L = {l}");
            last = b.bound;
            l += 0.01;
        }
    }
}

#[test]
fn census_does_not_depend_on_word_order() {
    for k in 1..=3 {
        let words: Vec<GaussWord> = enumerate_gauss_words(k).collect();
        let config = CensusConfig::default();
        let forward = build_census_from_words(k, words.clone(), &config).unwrap();
        for seed in 0..3 {
            let mut shuffled = words.clone();
            shuffled.shuffle(&mut StdRng::seed_from_u64(seed));
            assert_eq!(build_census_from_words(k, shuffled, &config).unwrap(), forward);
        }
        // The representative-only build finds the same classes.
        let summary = |c: &Census| {
            c.classes()
                .iter()
                .map(|x| (x.key.clone(), x.genus, x.boundaries, x.aut_order, x.baut.clone()))
                .collect::<Vec<_>>()
        };
        assert_eq!(summary(&censuses()[k]), summary(&forward));
    }
}

#[test]
fn census_file_round_trip() {
    for census in censuses() {
        let mut buf = Vec::new();
        write_census(census, None, &mut buf).unwrap();
        assert_eq!(&read_census(buf.as_slice()).unwrap(), census);
    }
}

#[test]
fn corrupt_census_file_is_rejected() {
    let mut buf = Vec::new();
    write_census(&censuses()[2], None, &mut buf).unwrap();
    let text = String::from_utf8(buf).unwrap();
    let tampered = text.replacen("\"b\":", "\"b\":1", 1);
    assert!(read_census(tampered.as_bytes()).is_err());
}
