//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use fglab::families::{closed_form_c, gen_borel_conjugate, gen_c, gen_y, random_reduced, stream_rng};
use fglab::negligibility::{
    best_cover_exact, best_cover_greedy, family_profile, Method, ProfileRequest, DEFAULT_NODE_BUDGET,
};
use fglab::pseudoplane::{axiom_check, claim_walk, generate_tree, NeighborChoice, PseudoplaneGraph, RankValue};
use fglab::word::{reduced_words_up_to, Letter, RawSequence, Word};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: String) -> Outcome {
    Outcome { passed, detail }
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("reduction confluence", confluence),
        ("commutation vs primitive roots", commutation),
        ("conjugates of powers covered by two pairs", borel_two_pairs),
        ("Y family coverage floor", y_floor),
        ("c family closed form", c_closed_form),
        ("solver soundness on exhaustive corpus", solver_soundness),
        ("translate bound", translate_bound),
        ("pseudoplane walk distance", pseudoplane_walks),
        ("profile determinism", determinism),
    ];
    let mut failed = 0;
    for (index, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let result = check();
        let verdict = if result.passed { "PASS" } else { "FAIL" };
        failed += usize::from(!result.passed);
        println!("{verdict} {}. {name}: {} [{:.1}s]", index + 1, result.detail, started.elapsed().as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

fn random_raw<R: Rng>(rng: &mut R, rank: u32, len: usize) -> Vec<Letter> {
    (0..len)
        .map(|_| {
            let g = rng.gen_range(1..=rank as i32);
            Letter::from_signed(if rng.gen_bool(0.5) { g } else { -g }).unwrap()
        })
        .collect()
}

/// Cancels a uniformly chosen adjacent inverse pair until none is left.
fn reduce_random_order<R: Rng>(rng: &mut R, letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    loop {
        let spots: Vec<usize> = (0..w.len().saturating_sub(1)).filter(|&i| w[i].cancels(w[i + 1])).collect();
        let Some(&i) = spots.choose(rng) else { return w };
        w.drain(i..i + 2);
    }
}

fn confluence() -> Outcome {
    let samples = 100_000u64;
    let mismatches = (0..samples)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = stream_rng(0xC0F1, i);
            let len = rng.gen_range(0..=200);
            let raw = random_raw(&mut rng, 4, len);
            let left = RawSequence { letters: raw.clone() }.reduce(4).unwrap();
            let right = common::reduce_right_to_left(&raw);
            let random = reduce_random_order(&mut rng, &raw);
            left.letters() != right.as_slice() || right != random
        })
        .count();
    outcome(mismatches == 0, format!("{samples} sequences, 3 strategies, {mismatches} disagreements"))
}

fn concat_reduced(u: &Word, v: &Word) -> Vec<Letter> {
    let mut all = u.letters().to_vec();
    all.extend_from_slice(v.letters());
    common::reduce_right_to_left(&all)
}

fn commutation() -> Outcome {
    let words = reduced_words_up_to(2, 6);
    let roots: Vec<Option<Word>> = words.iter().map(|w| w.primitive_root().ok().map(|(r, _)| r)).collect();
    let discrepancies: usize = (0..words.len())
        .into_par_iter()
        .map(|i| {
            (0..words.len())
                .filter(|&j| {
                    let direct = concat_reduced(&words[i], &words[j]) == concat_reduced(&words[j], &words[i]);
                    let by_root = match (&roots[i], &roots[j]) {
                        (Some(a), Some(b)) => a == b || *a == b.invert(),
                        _ => true,
                    };
                    direct != by_root
                })
                .count()
        })
        .sum();
    let n = words.len();
    outcome(discrepancies == 0, format!("{n} words, {} pairs, {discrepancies} discrepancies", n * n))
}

fn borel_two_pairs() -> Outcome {
    // Conjugators over e2..e4 only: g⁻¹ a^m g is then reduced as written.
    let conjugators: Vec<Word> = reduced_words_up_to(3, 5)
        .into_iter()
        .map(|w| {
            let shifted: Vec<Letter> = w
                .letters()
                .iter()
                .map(|l| Letter::from_signed(l.sign() * (l.generator().index() as i32 + 1)).unwrap())
                .collect();
            Word::from_letters(4, shifted).unwrap()
        })
        .collect();
    let cases: Vec<(i64, usize)> = (2..=8).flat_map(|m| (0..conjugators.len()).map(move |i| (m, i))).collect();
    let failures: Vec<String> = cases
        .par_iter()
        .filter_map(|&(m, i)| {
            let g = &conjugators[i];
            let w = gen_borel_conjugate(m, g).unwrap();
            if w.len() != 2 * g.len() + m as usize {
                return Some(format!("{w} is not reduced as written"));
            }
            let exact = best_cover_exact(&w, 2, DEFAULT_NODE_BUDGET);
            let oracle = common::oracle_uncovered(&w, 2);
            let limit = if m % 2 == 0 { 0 } else { 1 };
            (exact.uncovered_letters != oracle || oracle > limit)
                .then(|| format!("m={m} g={g}: exact {} oracle {oracle}", exact.uncovered_letters))
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "{} conjugators x m in 2..8 = {} words, N=2; failures: {}",
            conjugators.len(),
            cases.len(),
            summarize(&failures)
        ),
    )
}

fn summarize(failures: &[String]) -> String {
    match failures {
        [] => "none".into(),
        [first, ..] => format!("{} (first: {first})", failures.len()),
    }
}

fn y_floor() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n_pairs in [1usize, 2] {
        let fractions: Vec<(u64, f64)> = (3..=7)
            .map(|n| {
                let w = gen_y(4, 2, n).unwrap();
                let r = best_cover_exact(&w, n_pairs, DEFAULT_NODE_BUDGET);
                (n, r.uncovered_fraction())
            })
            .collect();
        let w5 = gen_y(4, 2, 5).unwrap();
        let oracle = common::oracle_uncovered(&w5, n_pairs) as f64 / w5.len() as f64;
        let exact5 = fractions.iter().find(|(n, _)| *n == 5).unwrap().1;
        let tail_min = fractions.iter().filter(|(n, _)| *n >= 5).map(|p| p.1).fold(f64::INFINITY, f64::min);
        let positive = fractions.iter().all(|p| p.1 > 0.0);
        let cell_ok = positive && exact5.to_bits() == oracle.to_bits() && tail_min >= oracle;
        ok &= cell_ok;
        notes.push(format!("N={n_pairs}: floor {oracle:.6}, min over n=5..7 {tail_min:.6}"));
    }
    outcome(ok, notes.join("; "))
}

fn c_closed_form() -> Outcome {
    let mut bad = Vec::new();
    for k in 1..=4u64 {
        for n in 1..=12u64 {
            let rec = gen_c(4, k, n).unwrap();
            let closed = closed_form_c(4, k, n).unwrap();
            let expected = Word::parse("b C", 4)
                .unwrap()
                .multiply(&gen_y(4, k, n).unwrap())
                .unwrap()
                .multiply(&Word::parse("c", 4).unwrap())
                .unwrap();
            let len_ok = rec.len() as u64 == n * (n - 1) + n * k + 3;
            if rec != closed || closed != expected || !len_ok {
                bad.push(format!("k={k} n={n}"));
            }
        }
    }
    outcome(bad.is_empty(), format!("k<=4, n<=12 (48 cases); mismatches: {}", summarize(&bad)))
}

fn solver_soundness() -> Outcome {
    let words = reduced_words_up_to(2, 12);
    let count = words.len();
    let failures: Vec<String> = words
        .par_iter()
        .filter_map(|w| {
            let oracle = common::oracle_uncovered_upto(w, 3);
            let mut previous = w.len();
            for (n_pairs, &expected) in oracle.iter().enumerate().skip(1) {
                let exact = best_cover_exact(w, n_pairs, DEFAULT_NODE_BUDGET).uncovered_letters;
                let greedy = best_cover_greedy(w, n_pairs).uncovered_letters;
                if exact != expected || greedy < exact || exact > previous {
                    return Some(format!("{w} N={n_pairs}: exact {exact} oracle {expected} greedy {greedy}"));
                }
                previous = exact;
            }
            None
        })
        .collect();
    outcome(failures.is_empty(), format!("{count} words x N in 1..3; violations: {}", summarize(&failures)))
}

fn translate_bound() -> Outcome {
    let translators = reduced_words_up_to(2, 2);
    let words: Vec<Word> = (0..200u64)
        .map(|i| {
            let len = 30 + stream_rng(0x7A75, i).gen_range(0..=20);
            random_reduced(2, len, 0x7A76, i)
        })
        .collect();
    let failures: Vec<String> = words
        .par_iter()
        .flat_map_iter(|w| {
            let base: Vec<usize> =
                (1..=2).map(|n| best_cover_exact(w, n, DEFAULT_NODE_BUDGET).uncovered_letters).collect();
            let base = std::sync::Arc::new(base);
            translators.iter().flat_map(move |g| {
                let base = base.clone();
                let gw = g.multiply(w).unwrap();
                (1..=2usize).filter_map(move |n| {
                    let moved = best_cover_exact(&gw, n, DEFAULT_NODE_BUDGET).uncovered_letters;
                    let bound = base[n - 1] + (2 * n + 2) * g.len();
                    (moved > bound).then(|| format!("w={w} g={g} N={n}: {moved} > {bound}"))
                })
            })
        })
        .collect();
    outcome(
        failures.is_empty(),
        format!(
            "200 words of length 30..50 x {} translators x N in 1..2; violations: {}",
            translators.len(),
            summarize(&failures)
        ),
    )
}

fn pseudoplane_walks() -> Outcome {
    let failures: Vec<String> = (0..20u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            (0..=50usize).filter_map(move |n| {
                let g = generate_tree(3, 2 * n + 2, 1, seed).unwrap();
                if !axiom_check(&g).passed() {
                    return Some(format!("seed {seed} n={n}: generated tree fails the axioms"));
                }
                let mut rng = stream_rng(seed, n as u64);
                let b0 = *g.neighbors(0).unwrap().choose(&mut rng).unwrap();
                match claim_walk(&g, 0, b0, n, NeighborChoice::Seeded(seed)) {
                    Ok(w) if w.distance == RankValue::Finite(2 * n) => None,
                    Ok(w) => Some(format!("seed {seed} n={n}: distance {}", w.distance)),
                    Err(e) => Some(format!("seed {seed} n={n}: {e}")),
                }
            })
        })
        .collect();
    let triangle = PseudoplaneGraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)], 2).unwrap();
    let triangle_fails = !axiom_check(&triangle).passed();
    outcome(
        failures.is_empty() && triangle_fails,
        format!(
            "b=3, d=2n+2, n in 0..50, 20 seeds; failures: {}; triangle rejected: {triangle_fails}",
            summarize(&failures)
        ),
    )
}

fn determinism() -> Outcome {
    let requests = [
        ("Y k=2", (3..=7).collect::<Vec<u64>>(), vec![1, 2]),
        ("borel glen=6 seed=1", (2..=8).collect(), vec![1, 2]),
        ("random seed=5 r=3", (10..=24).collect(), vec![1, 2, 3]),
    ];
    let mut differing = Vec::new();
    for (family, ns, budgets) in requests {
        let request = ProfileRequest {
            family: family.parse().unwrap(),
            ns,
            pair_budgets: budgets,
            methods: vec![Method::Exact, Method::Greedy],
            node_budget: DEFAULT_NODE_BUDGET,
            record_timings: false,
        };
        let reference = family_profile(&request).unwrap().to_csv_string();
        for threads in [1, 2, 4, 8] {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            let csv = pool.install(|| family_profile(&request).unwrap().to_csv_string());
            if csv != reference {
                differing.push(format!("{family} with {threads} threads"));
            }
        }
    }
    outcome(differing.is_empty(), format!("3 families x 4 pool sizes; differing: {}", summarize(&differing)))
}
