#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;

use rcc_core::build::{add_kink, braid_closure, montesinos, Curl, Tangle};
use rcc_core::cert::is_unknot;
use rcc_core::codes::{load_corpus, CorpusEntry};
use rcc_core::diagram::PdDiagram;
use rcc_core::faces::{faces, FaceMap};

pub fn corpus8() -> Vec<CorpusEntry> {
    load_corpus(concat!(env!("CARGO_MANIFEST_DIR"), "/data/rolfsen8.tsv")).unwrap()
}

pub fn corpus9() -> Vec<CorpusEntry> {
    load_corpus(concat!(env!("CARGO_MANIFEST_DIR"), "/data/rolfsen9.tsv")).unwrap()
}

pub fn trefoil() -> PdDiagram {
    PdDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]], 0).unwrap()
}

pub fn figure_eight() -> PdDiagram {
    PdDiagram::from_pd(&[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]], 0).unwrap()
}

pub fn hopf() -> PdDiagram {
    PdDiagram::from_pd(&[[1, 3, 2, 4], [3, 1, 4, 2]], 0).unwrap()
}

/// Flips from a literal reading of the face walk: count, for every crossing,
/// how many of its corners lie in chosen regions. Uses only the corner
/// lists, not the incidence matrix.
pub fn flips_by_corners(d: &PdDiagram, map: &FaceMap, regions: &[usize]) -> Vec<bool> {
    let mut count = vec![0usize; d.crossing_count()];
    for &r in regions {
        for corner in &map.faces()[r].corners {
            count[corner.crossing] += 1;
        }
    }
    count.into_iter().map(|k| k % 2 == 1).collect()
}

pub fn apply_by_corners(d: &PdDiagram, map: &FaceMap, regions: &[usize]) -> PdDiagram {
    let mut out = d.clone();
    for (x, flip) in flips_by_corners(d, map, regions).into_iter().enumerate() {
        if flip {
            out = out.crossing_change(x).unwrap();
        }
    }
    out
}

/// Smallest number of regions whose changes give a certified unknot, by
/// trying every subset of regions.
pub fn brute_force_ur(d: &PdDiagram) -> usize {
    let map = faces(d).unwrap();
    let n = map.len();
    let mut best = usize::MAX;
    for mask in 0u64..(1 << n) {
        let size = mask.count_ones() as usize;
        if size >= best {
            continue;
        }
        let regions: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if is_unknot(&apply_by_corners(d, &map, &regions)).unwrap() {
            best = size;
        }
    }
    best
}

/// Whether deleting crossing `c` disconnects the rest of the diagram,
/// judged on the underlying graph alone.
pub fn is_cut_crossing(d: &PdDiagram, c: usize) -> bool {
    let m = d.edge_count();
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (i, x) in d.crossings().iter().enumerate() {
        if i == c {
            continue;
        }
        let e: Vec<usize> = x
            .ports()
            .iter()
            .map(|&l| d.edge_index(l).unwrap())
            .collect();
        for k in 1..4 {
            let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[k]));
            parent[a] = b;
        }
    }
    let mut roots: Vec<usize> = d.crossings()[c]
        .ports()
        .iter()
        .map(|&l| {
            let e = d.edge_index(l).unwrap();
            find(&mut parent, e)
        })
        .collect();
    roots.sort_unstable();
    roots.dedup();
    roots.len() > 1
}

fn random_word<R: Rng>(rng: &mut R, strands: usize, len: usize) -> Vec<i32> {
    // Every generator at least once keeps the closure connected.
    let mut word: Vec<i32> = (1..strands as i32).collect();
    while word.len() < len {
        word.push(rng.gen_range(1..strands as i32));
    }
    word.shuffle(rng);
    word.into_iter()
        .map(|g| if rng.gen_bool(0.5) { g } else { -g })
        .collect()
}

fn random_terms<R: Rng>(rng: &mut R, budget: usize) -> Vec<u32> {
    let mut terms = Vec::new();
    let mut left = budget;
    while left > 0 && (terms.is_empty() || rng.gen_bool(0.6)) {
        let a = rng.gen_range(1..=left.min(3));
        terms.push(a as u32);
        left -= a;
    }
    terms
}

fn flip_some<R: Rng>(rng: &mut R, mut d: PdDiagram) -> PdDiagram {
    for x in 0..d.crossing_count() {
        if rng.gen_bool(0.3) {
            d = d.crossing_change(x).unwrap();
        }
    }
    d
}

fn add_kinks<R: Rng>(rng: &mut R, mut d: PdDiagram, count: usize) -> PdDiagram {
    for _ in 0..count {
        if d.crossing_count() == 0 {
            d = PdDiagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap();
            continue;
        }
        let label = *d.edge_labels().choose(rng).unwrap();
        let curl = if rng.gen_bool(0.5) { Curl::Left } else { Curl::Right };
        d = add_kink(&d, label, curl, rng.gen_range(0..2)).unwrap();
    }
    d
}

/// A connected knot or link diagram with between 1 and `max` crossings:
/// braid closures, rational and Montesinos shadows with random crossing
/// signs, with kinks mixed in.
pub fn random_diagram<R: Rng>(rng: &mut R, max: usize) -> PdDiagram {
    loop {
        let size = rng.gen_range(1..=max);
        let base = match rng.gen_range(0..3) {
            0 => {
                let strands = rng.gen_range(2..=4).min(size + 1);
                braid_closure(strands, &random_word(rng, strands, size.max(strands - 1)))
            }
            1 => {
                let t = Tangle::rational(&random_terms(rng, size));
                if rng.gen_bool(0.5) {
                    t.numerator()
                } else {
                    t.denominator()
                }
            }
            _ => {
                let parts: Vec<Vec<u32>> =
                    (0..3).map(|_| random_terms(rng, (size / 3).max(1))).collect();
                let refs: Vec<&[u32]> = parts.iter().map(|p| p.as_slice()).collect();
                montesinos(&refs, 0, &[false; 3])
            }
        };
        let Ok(base) = base else { continue };
        let room = max.saturating_sub(base.crossing_count());
        let kinks = if room > 0 { rng.gen_range(0..=room.min(2)) } else { 0 };
        let flipped = flip_some(rng, base);
        let d = add_kinks(rng, flipped, kinks);
        if d.crossing_count() >= 1 && d.crossing_count() <= max && faces(&d).is_ok() {
            return d;
        }
    }
}

pub fn random_knot<R: Rng>(rng: &mut R, max: usize) -> PdDiagram {
    loop {
        let d = random_diagram(rng, max);
        if d.is_knot() {
            return d;
        }
    }
}

/// Unknot diagrams that are unknots by construction: kinked circles and
/// closures of braids using each generator exactly once, with kinks added.
pub fn random_unknot<R: Rng>(rng: &mut R, max: usize) -> PdDiagram {
    let base = if rng.gen_bool(0.5) {
        PdDiagram::unknot()
    } else {
        let strands = rng.gen_range(2..=max.min(6));
        let mut word: Vec<i32> = (1..strands as i32).collect();
        word.shuffle(rng);
        let word: Vec<i32> = word
            .into_iter()
            .map(|g| if rng.gen_bool(0.5) { g } else { -g })
            .collect();
        braid_closure(strands, &word).unwrap()
    };
    let room = max - base.crossing_count();
    let least = usize::from(base.crossing_count() == 0);
    let kinks = rng.gen_range(least..=room);
    add_kinks(rng, base, kinks)
}

/// Split pieces of a diagram: components joined when they share a crossing.
pub fn split_pieces(d: &PdDiagram) -> usize {
    let n = d.component_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            x = p[x];
        }
        x
    }
    for x in d.crossings() {
        let comps: Vec<usize> = x
            .ports()
            .iter()
            .map(|&l| d.components()[d.edge_index(l).unwrap()])
            .collect();
        for k in 1..4 {
            let (a, b) = (find(&mut parent, comps[0]), find(&mut parent, comps[k]));
            parent[a] = b;
        }
    }
    (0..n).filter(|&i| find(&mut parent, i) == i).count()
}

/// Checks the checkerboard corollaries and the reducibility criterion on one
/// diagram under both rules, returning a description of every failure.
pub fn checkerboard_failures(d: &PdDiagram) -> Vec<String> {
    use rcc_core::coloring::checkerboard_coloring;
    use rcc_core::engine::{RccSystem, RegionRule};
    use rcc_core::faces::reducible_crossings;

    let mut out = Vec::new();
    let map = faces(d).unwrap();
    let reducible = reducible_crossings(&map);
    for c in 0..d.crossing_count() {
        if reducible.contains(&c) != is_cut_crossing(d, c) {
            out.push(format!("crossing {c}: reducibility disagrees with the cut test"));
        }
    }
    for rule in [RegionRule::Parity, RegionRule::Boundary] {
        let system = RccSystem::with_rule(d.clone(), rule).unwrap();
        if reducible.is_empty() {
            let coloring = checkerboard_coloring(d, &map, 0).unwrap();
            let black = coloring.black_set(&map);
            let white = coloring.inverted().black_set(&map);
            for (name, set) in [("black", &black), ("white", &white)] {
                if system.apply(set).unwrap() != *d {
                    out.push(format!("{rule:?}: {name} regions change the diagram"));
                }
            }
            let b = black.indices();
            let subsets: Vec<u64> = if b.len() <= 8 {
                (0..1u64 << b.len()).collect()
            } else {
                (0..64u64).map(|i| i.wrapping_mul(0x9e37_79b9_7f4a_7c15) >> (64 - b.len())).collect()
            };
            for mask in subsets {
                let r = map
                    .region_set(b.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &f)| f))
                    .unwrap();
                let rest = black.difference(&r).unwrap();
                if system.apply(&r).unwrap() != system.apply(&rest).unwrap() {
                    out.push(format!("{rule:?}: D(R) != D(B-R) for R = {:?}", r.indices()));
                }
            }
        }
        for c in 0..d.crossing_count() {
            let f = map.around(c);
            if f[0] == f[2] || f[1] == f[3] {
                continue;
            }
            let set = map.region_set(f).unwrap();
            if system.flips(&set).unwrap().get(c) {
                out.push(format!("{rule:?}: its four regions change crossing {c}"));
            }
        }
    }
    out
}
