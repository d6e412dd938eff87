//! Acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`). A failing criterion prints
//! FAIL; the process exits nonzero only for failures that are not listed as
//! known deviations, each of which carries its own explanation.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::prelude::*;
use scover::extremal::{phi_by, verify_xy_lemma_with};
use scover::word::{find_ab_x_bc, find_gapped_repeat_cover, find_square, is_square_free};
use scover::*;

use common::*;

struct Outcome {
    pass: bool,
    detail: String,
    /// Why a failure is expected rather than a defect.
    known_deviation: Option<&'static str>,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome {
            pass,
            detail: detail.into(),
            known_deviation: None,
        }
    }
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "golden tables",
            budget: Duration::from_millis(1),
            run: golden,
        },
        Criterion {
            id: 2,
            name: "oracle equivalence",
            budget: Duration::from_secs(120),
            run: oracle_equivalence,
        },
        Criterion {
            id: 3,
            name: "shortest cover vs brute force",
            budget: Duration::from_secs(300),
            run: shortest_brute_force,
        },
        Criterion {
            id: 4,
            name: "extremal values",
            budget: Duration::from_secs(4 * 3600),
            run: extremal_values,
        },
        Criterion {
            id: 5,
            name: "constructions",
            budget: Duration::from_secs(120),
            run: constructions,
        },
        Criterion {
            id: 6,
            name: "bounds table",
            budget: Duration::from_secs(10),
            run: bounds,
        },
        Criterion {
            id: 7,
            name: "XY lemma",
            budget: Duration::from_secs(30),
            run: xy_lemma,
        },
        Criterion {
            id: 8,
            name: "property suites",
            budget: Duration::from_secs(300),
            run: properties,
        },
    ];
    let mut unexpected = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut out = (c.run)();
        let elapsed = start.elapsed();
        if elapsed > c.budget {
            out.pass = false;
            out.detail = format!("{}; over budget {:?}", out.detail, c.budget);
        }
        let verdict = if out.pass { "PASS" } else { "FAIL" };
        println!(
            "criterion {}: {verdict} {} [{elapsed:.2?}] {}",
            c.id, c.name, out.detail
        );
        if !out.pass {
            match out.known_deviation {
                Some(why) => println!("    known deviation: {why}"),
                None => unexpected += 1,
            }
        }
    }
    if unexpected > 0 {
        eprintln!("{unexpected} criteria failed");
        std::process::exit(1);
    }
}

fn golden() -> Outcome {
    let cover = is_s_cover(&w("abcab"), &w("abcbacab"));
    let t = build_tables(&w("abcab"), &w("abacbacab")).expect("tables exist");
    let ok = cover
        && t.first_occ == [0, 1, 3, 5, 8]
        && t.last_occ[..5] == [2, 4, 6, 7, 8]
        && t.last_occ[5] == 9
        && t.pref == [0, 1, 0, 2, 1, 3, 2, 3, 4];
    Outcome::new(
        ok,
        format!(
            "cover={cover} first={:?} last={:?} pref={:?}",
            t.first_occ, t.last_occ, t.pref
        ),
    )
}

fn same_verdicts(c: &[Letter], s: &[Letter]) -> bool {
    let fast = cover_report(c, s);
    let split = oracle_split(c, s).unwrap();
    let en = oracle_enumerate(c, s).unwrap();
    fast.is_cover == is_s_cover(c, s)
        && fast.is_cover == split.is_cover
        && split.is_cover == en.is_cover
        && fast.covered == split.covered
        && split.covered == en.covered
}

fn oracle_equivalence() -> Outcome {
    // Exhaustive part. S ranges over canonical words (renaming is checked in
    // criterion 8). For |S| ≤ 6 every C over three letters with |C| ≤ |S|
    // is paired with S; for larger S, C ranges over the distinct
    // subsequences of S, the only candidates that can cover anything.
    let mut pairs = 0u64;
    let mut bad = Vec::new();
    for n in 1..=10 {
        let words = canonical_words(n, 3);
        for s in &words {
            let cands: Vec<Vec<Letter>> = if n <= 6 {
                (1..=n)
                    .flat_map(|m| all_words(m, 3))
                    .map(|c| c.into_letters())
                    .collect()
            } else {
                subsequences_by_length(s).into_iter().skip(1).flatten().collect()
            };
            for c in cands {
                pairs += 1;
                if !same_verdicts(&c, s) && bad.len() < 3 {
                    bad.push((Word::from(c), s.clone()));
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5c0e);
    let mut random = 0;
    for _ in 0..10_000 {
        let k = rng.random_range(1..=5);
        let s = random_word(&mut rng, 1..=16, k);
        let c = if rng.random_bool(0.7) {
            random_subsequence(&mut rng, &s)
        } else {
            random_word(&mut rng, 1..=s.len(), k)
        };
        random += 1;
        if !same_verdicts(&c, &s) && bad.len() < 3 {
            bad.push((c, s));
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{pairs} exhaustive + {random} random pairs; mismatches {bad:?}"),
    )
}

fn shortest_brute_force() -> Outcome {
    let mut words = 0u64;
    let mut renamed = 0u64;
    let mut bad: Vec<Word> = Vec::new();
    let cfg = SearchConfig {
        enumerate_all: true,
        ..SearchConfig::default()
    };
    for n in 1..=11 {
        let mut expected = std::collections::HashMap::new();
        for s in canonical_words(n, 3) {
            words += 1;
            let (len, set) = brute_shortest(&s);
            let got = shortest_s_cover(&s, &cfg).unwrap();
            let got_set: BTreeSet<Vec<Letter>> = got.all.unwrap().into_iter().map(Word::into_letters).collect();
            if got.length != len || got_set != set {
                bad.push(s.clone());
            }
            expected.insert(s, (len, set));
        }
        // every other word is a renaming of a canonical one
        for s in all_words(n, 3) {
            let canon = canonicalize(&s);
            if canon == s {
                continue;
            }
            renamed += 1;
            let mut perm = vec![0u32; 3];
            for (a, b) in canon.iter().zip(s.iter()) {
                perm[a.index()] = b.id();
            }
            let (len, set) = &expected[&canon];
            let want: BTreeSet<Vec<Letter>> = set.iter().map(|c| rename(c, &perm).into_letters()).collect();
            let got = shortest_s_cover(&s, &cfg).unwrap();
            let got_set: BTreeSet<Vec<Letter>> = got.all.unwrap().into_iter().map(Word::into_letters).collect();
            if got.length != *len || got_set != want {
                bad.push(s);
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{words} canonical words brute-forced, {renamed} renamings; mismatches {:?}",
            &bad[..bad.len().min(3)]
        ),
    )
}

/// γ(k) and the number of longest s-primitive words by testing every word.
fn flat_gamma(k: u32) -> (usize, usize) {
    let mut best = (0, 0);
    for n in 1.. {
        let count = all_words(n, k).iter().filter(|s| brute_primitive(s)).count();
        if count == 0 {
            return best;
        }
        best = (n, count);
    }
    unreachable!()
}

fn extremal_values() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let small = Instant::now();
    let mut gammas = vec![0];
    for (k, g, total) in [(1, 1, 1u32), (2, 3, 2), (3, 8, 12)] {
        let r = gamma_search(&GammaConfig::new(k)).unwrap();
        let flat = flat_gamma(k as u32);
        ok &= r.gamma == g && r.total_count == BigUint::from(total) && flat == (g, total as usize);
        notes.push(format!("gamma({k})={} total={} flat={flat:?}", r.gamma, r.total_count));
        gammas.push(r.gamma);
    }
    let small = small.elapsed();
    ok &= small < Duration::from_secs(10);

    let dir = std::env::temp_dir().join(format!("scover-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let checkpoint = dir.join("gamma4.json");
    let cfg = GammaConfig {
        workers: 2,
        checkpoint: Some(checkpoint.clone()),
        ..GammaConfig::new(4)
    };
    // interrupt after a few subtrees, then resume
    let partial = gamma_search(&GammaConfig {
        job_limit: Some(5),
        ..cfg.clone()
    })
    .unwrap();
    let r = gamma_search(&cfg).unwrap();
    std::fs::remove_dir_all(&dir).unwrap();
    ok &= partial.pending_jobs > 0 && r.pending_jobs == 0 && !r.truncated;
    ok &= r.gamma == 19 && r.canonical_count == 104 && r.total_count == BigUint::from(2496u32);
    gammas.push(r.gamma);
    notes.push(format!(
        "gamma(4)={} total={} (resumed after {} pending, {} nodes)",
        r.gamma, r.total_count, partial.pending_jobs, r.nodes_explored
    ));
    for k in 2..=4 {
        ok &= 2 * gammas[k - 1] < gammas[k];
    }
    ok &= gammas[4] <= 6 * gammas[3] + 6;
    notes.push(format!("k<=3 in {small:.2?}"));
    Outcome::new(ok, notes.join("; "))
}

fn constructions() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for k in 4..=8 {
        ok &= lower_bound_word(k).unwrap().len() == 5 * (1 << (k - 2)) - 1;
    }
    let cfg = SearchConfig::default();
    for k in 1..=4 {
        let s = lower_bound_word(k).unwrap();
        ok &= is_s_primitive(&s, &cfg).unwrap().primitive;
    }
    let s5 = lower_bound_word(5).unwrap();
    let d = decompose_unique_letter(&s5).expect("S5 has a unique letter");
    let s4 = lower_bound_word(4).unwrap();
    let halves_ok = d.left == s4
        && d.right == s4
        && !d.left.contains(&d.letter)
        && is_s_primitive(&d.left, &cfg).unwrap().primitive
        && is_s_primitive(&d.right, &cfg).unwrap().primitive;
    ok &= halves_ok && s5.len() == 39;
    notes.push(format!("S5 splits at {} into verified halves: {halves_ok}", d.position));

    let m15 = multicover_word(15).unwrap();
    let all: BTreeSet<String> = shortest_s_cover(
        &m15,
        &SearchConfig {
            enumerate_all: true,
            ..cfg.clone()
        },
    )
    .unwrap()
    .all
    .unwrap()
    .iter()
    .map(Word::render)
    .collect();
    let c15 = count_shortest_s_covers(&m15, &cfg).unwrap();
    let want: BTreeSet<String> = ["abcadcba", "abcdacba"].map(String::from).into();
    ok &= all == want && c15.count == BigUint::from(2u32);
    let c31 = count_shortest_s_covers(&multicover_word(31).unwrap(), &cfg).unwrap();
    ok &= c31.count == BigUint::from(4u32);
    notes.push(format!(
        "n=15 covers {all:?}; n=31 count {} of length {}",
        c31.count, c31.length
    ));
    Outcome::new(ok, notes.join("; "))
}

fn bounds() -> Outcome {
    let t = bounds_table(20).unwrap();
    let get = |k: usize, f: fn(&BoundsRow) -> Option<BigUint>| f(&t[k - 1]).unwrap();
    let delta: Vec<BigUint> = (5..=8).map(|k| get(k, |r| r.delta.clone())).collect();
    let conf: Vec<BigUint> = (5..=8).map(|k| get(k, |r| r.conference.clone())).collect();
    let want_delta: Vec<BigUint> = [158u32, 1586, 19038, 266538].map(BigUint::from).into();
    let want_conf: Vec<BigUint> = [190u32, 2280, 32046, 512736].map(BigUint::from).into();
    let below = (4..=20).all(|k| get(k, |r| r.delta.clone()) < t[k - 1].factorial_bound);
    let lower4 = t[3].lower == BigUint::from(19u32);
    let delta_ok = delta == want_delta && below && lower4;
    let conf_ok = conf == want_conf;
    let mut out = Outcome::new(
        delta_ok && conf_ok,
        format!("delta(5..8)={delta:?} below 2^(k-1)k! for 4..20: {below}; P(5..8)={conf:?} (expected {want_conf:?})"),
    );
    if delta_ok && !conf_ok && conf[..2] == want_conf[..2] {
        out.known_deviation = Some(
            "P(k)=2k*P(k-1) from P(5)=190, P(6)=2280 gives P(7)=31920 and P(8)=510720; \
             the expected 32046 is not 14*2280 (and 512736 = 16*32046 propagates it)",
        );
    }
    out
}

fn xy_lemma() -> Outcome {
    let r = verify_xy_lemma();
    let mutant = verify_xy_lemma_with(4, 6, |x, y| phi_by(x, y, |a1, _, b1, b2| a1 != b1 && a1 != b2));
    let short_y = verify_xy_lemma_with(4, 5, phi);
    let types_ok = r.x_types.iter().map(Word::render).collect::<Vec<_>>() == ["abac", "abca", "abcb", "abcd"];
    let mut out = Outcome::new(
        r.passed() && types_ok && mutant.counterexamples >= 1,
        format!(
            "{} pairs, {} counterexamples; clause-removal mutant: {} counterexamples; |Y|=5 control: {} counterexamples",
            r.pairs, r.counterexamples, mutant.counterexamples, short_y.counterexamples
        ),
    );
    if r.passed() && types_ok && mutant.counterexamples == 0 && !short_y.passed() {
        out.known_deviation = Some(
            "dropping a conjunct weakens the condition, so the mutant holds wherever the lemma does; \
             the enumerator is instead shown to find counterexamples when |Y|=5",
        );
    }
    out
}

fn properties() -> Outcome {
    const N: usize = 1000;
    let mut rng = StdRng::seed_from_u64(0xc0ffee);
    let cfg = SearchConfig::default();
    let mut lines = Vec::new();
    let mut ok = true;
    let mut report = |name: &str, instances: usize, violations: usize| {
        ok &= instances >= N && violations == 0;
        lines.push(format!("{name} {instances}/{violations}"));
    };

    // transitivity: C covers B and B covers S
    let (mut n, mut v) = (0, 0);
    while n < N {
        let s = random_word(&mut rng, 2..=10, 3);
        let covers_of = |x: &[Letter]| -> Vec<Vec<Letter>> {
            subsequences_by_length(x)
                .into_iter()
                .flatten()
                .filter(|c| !c.is_empty() && oracle_split(c, x).unwrap().is_cover)
                .collect()
        };
        let bs = covers_of(&s);
        let b = bs.choose(&mut rng).unwrap();
        let cs = covers_of(b);
        let c = cs.choose(&mut rng).unwrap();
        n += 1;
        v += usize::from(!oracle_split(c, &s).unwrap().is_cover);
    }
    report("transitivity", n, v);

    // FLFL a subsequence of S makes FL an s-cover
    let (mut n, mut v) = (0, 0);
    while n < N {
        let k = rng.random_range(1..=4);
        let s = random_word(&mut rng, 4..=24, k);
        let fl = first_word(&s).concat(&last_word(&s));
        let flfl = fl.concat(&fl);
        if scover::cover::is_subsequence(&flfl, &s) {
            n += 1;
            v += usize::from(!oracle_split(&fl, &s).unwrap().is_cover);
        }
    }
    report("FLFL=>FL", n, v);

    // planted squares and gapped repeats UVU, Alph(V) ⊆ Alph(U)
    let (mut n, mut v) = (0, 0);
    while n < N {
        let k = rng.random_range(2..=4);
        let u = random_word(&mut rng, 1..=4, k);
        let v_len = if n % 2 == 0 { 0 } else { rng.random_range(1..=4) };
        let gap: Word = (0..v_len).map(|_| *u.choose(&mut rng).unwrap()).collect();
        let p = random_word(&mut rng, 0..=4, k);
        let q = random_word(&mut rng, 0..=4, k);
        let s = p.concat(&u).concat(&gap).concat(&u).concat(&q);
        let cut = p.concat(&u).concat(&q);
        n += 1;
        let found = if v_len == 0 {
            find_square(&s).is_some()
        } else {
            find_gapped_repeat_cover(&s).is_some()
        };
        let nontrivial = find_nontrivial_cover(&s, &cfg).unwrap();
        v += usize::from(
            !found
                || !oracle_split(&cut, &s).unwrap().is_cover
                || nontrivial.is_none_or(|c| !oracle_split(&c, &s).unwrap().is_cover),
        );
    }
    report("repeats=>non-primitive", n, v);

    // ternary words with a factor abXbc
    let (mut n, mut v) = (0, 0);
    while n < N {
        let s = random_word(&mut rng, 5..=12, 3);
        if let Some((start, end)) = find_ab_x_bc(&s) {
            let f = &s[start..end];
            let abc = [f[0], f[1], f[f.len() - 1]];
            let c = Word::from(&s[..start]).concat(&abc).concat(&s[end..]);
            n += 1;
            v += usize::from(
                c.len() >= s.len()
                    || !oracle_split(&abc, f).unwrap().is_cover
                    || !oracle_split(&c, &s).unwrap().is_cover
                    || brute_primitive(&s),
            );
        }
    }
    report("abXbc=>non-primitive", n, v);

    // renaming invariance
    let (mut n, mut v) = (0, 0);
    while n < N {
        let k = rng.random_range(1..=5);
        let s = random_word(&mut rng, 1..=12, k);
        let c = random_subsequence(&mut rng, &s);
        let perm = random_permutation(&mut rng, k as usize);
        let (rs, rc) = (rename(&s, &perm), rename(&c, &perm));
        n += 1;
        let a = shortest_s_cover(&s, &cfg).unwrap();
        let b = shortest_s_cover(&rs, &cfg).unwrap();
        v += usize::from(
            is_s_cover(&c, &s) != is_s_cover(&rc, &rs)
                || cover_report(&c, &s).covered != cover_report(&rc, &rs).covered
                || a.length != b.length
                || is_s_primitive(&s, &cfg).unwrap().primitive != is_s_primitive(&rs, &cfg).unwrap().primitive,
        );
    }
    report("renaming", n, v);

    // Ψ-factor extraction
    let (mut n, mut v) = (0, 0);
    let example = w("abcabadabacba");
    let (s0, e0) = find_psi_factor(&example).unwrap();
    let tight = (0..example.len())
        .flat_map(|s| (s + 1..=example.len()).map(move |e| (s, e)))
        .filter(|(s, e)| e - s >= example.len() - 5)
        .all(|(s, e)| !psi(&example[s..e]));
    v += usize::from(e0 - s0 != example.len() - 6 || !psi(&example[s0..e0]) || !tight || !psi(&w("badabac")));
    n += 1;
    while n < N {
        let k = rng.random_range(3..=5);
        let len = rng.random_range(1..=30);
        let Some(s) = random_square_free(&mut rng, len, k) else {
            continue;
        };
        assert!(is_square_free(&s));
        let (a, b) = find_psi_factor(&s).unwrap();
        n += 1;
        v += usize::from(b > s.len() || a >= b || b - a + 6 < s.len() || !psi(&s[a..b]));
    }
    report("psi-factor", n, v);

    Outcome::new(ok, format!("instances/violations: {}", lines.join(", ")))
}
