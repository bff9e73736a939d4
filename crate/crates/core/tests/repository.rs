use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use slp_edit::corpus::{alphabet, fibonacci_prefix, random_repetitive, random_scoring, random_slp};
use slp_edit::dist::{build_direct, Segment};
use slp_edit::{partition, Repository, ScoringFunction, Slp};

/// Bound on distinct table builds per pair of grammar variables.
const BUILDS_PER_PAIR: u64 = 6;

fn grammar(seed: u64, sigma: usize, size: usize) -> Slp {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if seed.is_multiple_of(2) {
        random_slp(&mut rng, &alphabet(sigma), size)
    } else {
        Slp::from_plain(&random_repetitive(&mut rng, &alphabet(sigma), size * 6)).unwrap()
    }
}

fn pair() -> impl Strategy<Value = (Slp, Slp, ScoringFunction, u64)> {
    (
        any::<u64>(),
        any::<u64>(),
        1usize..4,
        2usize..25,
        2usize..25,
        2u64..12,
        any::<bool>(),
    )
        .prop_filter_map("too long", |(sa, sb, sigma, na, nb, x, lev)| {
            let a = grammar(sa, sigma, na);
            let b = grammar(sb, sigma, nb);
            if a.derived_len() > 300 || b.derived_len() > 300 {
                return None;
            }
            let sf = if lev {
                ScoringFunction::levenshtein(alphabet(sigma)).unwrap()
            } else {
                random_scoring(&mut ChaCha8Rng::seed_from_u64(sa ^ sb), &alphabet(sigma), 6)
            };
            Some((a, b, sf, x))
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn tables_equal_direct_builds((a, b, sf, x) in pair()) {
        let (pa, pb) = (partition(&a, x).unwrap(), partition(&b, x).unwrap());
        let repo = Repository::build(&a, &pa, &b, &pb, &sf).unwrap();
        let (ta, tb): (Vec<char>, Vec<char>) = (a.text().chars().collect(), b.text().chars().collect());
        for p in pa.parts() {
            for q in pb.parts() {
                let table = repo.get(Segment { var: p.var, kind: p.kind }, Segment { var: q.var, kind: q.kind }).unwrap();
                prop_assert_eq!(table.a(), &ta[p.start as usize..(p.start + p.len) as usize]);
                prop_assert_eq!(table.b(), &tb[q.start as usize..(q.start + q.len) as usize]);
            }
        }
        for (_, table) in repo.iter() {
            let direct = build_direct(table.a(), table.b(), &sf).unwrap();
            prop_assert_eq!(table.matrix(), direct.matrix());
        }
    }

    #[test]
    fn work_is_bounded_by_grammar_sizes((a, b, sf, x) in pair()) {
        let (pa, pb) = (partition(&a, x).unwrap(), partition(&b, x).unwrap());
        let repo = Repository::build(&a, &pa, &b, &pb, &sf).unwrap();
        let c = repo.counters();
        let nn = (a.size() * b.size()) as u64;
        prop_assert!(c.direct_builds + c.merges <= BUILDS_PER_PAIR * nn, "{:?} for n_A*n_B = {}", c, nn);
        prop_assert!(repo.len() as u64 <= 4 * nn);
        // repeats are hits; a pair built earlier as a sub-table is one too
        let blocks = (pa.len() * pb.len()) as u64;
        prop_assert!(c.cache_hits + repo_part_pairs(&repo, &pa, &pb) >= blocks);
        prop_assert!(c.cache_hits < blocks);
    }

    #[test]
    fn rebuilding_gives_identical_memo((a, b, sf, x) in pair()) {
        let (pa, pb) = (partition(&a, x).unwrap(), partition(&b, x).unwrap());
        let one = Repository::build(&a, &pa, &b, &pb, &sf).unwrap();
        let two = Repository::build(&a, &pa, &b, &pb, &sf).unwrap();
        prop_assert_eq!(one.len(), two.len());
        prop_assert_eq!(one.counters(), two.counters());
        for (key, table) in one.iter() {
            let other = two.get(key.0, key.1).unwrap();
            prop_assert_eq!(table.a(), other.a());
            prop_assert_eq!(table.b(), other.b());
            prop_assert_eq!(table.matrix(), other.matrix());
        }
    }
}

/// Distinct part pairs; each must have a table.
fn repo_part_pairs(repo: &Repository, pa: &slp_edit::XPartition, pb: &slp_edit::XPartition) -> u64 {
    let mut seen = std::collections::HashSet::new();
    for p in pa.parts() {
        for q in pb.parts() {
            let key = (
                Segment {
                    var: p.var,
                    kind: p.kind,
                },
                Segment {
                    var: q.var,
                    kind: q.kind,
                },
            );
            assert!(repo.get(key.0, key.1).is_some());
            seen.insert(key);
        }
    }
    seen.len() as u64
}

#[test]
fn fibonacci_reuses_tables() {
    let a = fibonacci_prefix(2000).unwrap();
    let sf = ScoringFunction::levenshtein("ab".chars()).unwrap();
    let p = partition(&a, 16).unwrap();
    let repo = Repository::build(&a, &p, &a, &p, &sf).unwrap();
    let blocks = (p.len() * p.len()) as u64;
    assert!(
        repo.counters().cache_hits > blocks * 9 / 10,
        "{:?} for {blocks} blocks",
        repo.counters()
    );
    assert!(repo.len() as u64 <= 4 * (a.size() * a.size()) as u64);
}
