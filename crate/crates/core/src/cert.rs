//! Unknot certification through the Kauffman bracket.
//!
//! Every nontrivial knot with at most ten crossings has a nontrivial Jones
//! polynomial, and crossing changes never add crossings, so for diagrams
//! under the certification cap a trivial normalized bracket proves the
//! diagram is an unknot.

use rayon::prelude::*;

use crate::diagram::PdDiagram;
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;

pub const DEFAULT_BRACKET_CAP: usize = 24;
pub const DEFAULT_CERT_CAP: usize = 10;

/// Below this many crossings the state sum runs on one thread.
const PARALLEL_THRESHOLD: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub bracket: usize,
    pub cert: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            bracket: DEFAULT_BRACKET_CAP,
            cert: DEFAULT_CERT_CAP,
        }
    }
}

/// `-A^2 - A^-2`, the value of a split circle.
pub fn loop_value() -> LaurentPoly {
    LaurentPoly::from_terms([(2, -1), (-2, -1)])
}

pub fn kauffman_bracket(diagram: &PdDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_capped(diagram, DEFAULT_BRACKET_CAP)
}

/// State sum over all `2^c` smoothings. At `X[a,b,c,d]` the A-smoothing
/// joins `a` with `b` and `c` with `d`; the B-smoothing joins `a` with `d`
/// and `b` with `c`.
pub fn kauffman_bracket_capped(diagram: &PdDiagram, cap: usize) -> Result<LaurentPoly> {
    let n = diagram.crossing_count();
    if n > cap {
        return Err(Error::Cap {
            what: "bracket state sum",
            crossings: n,
            cap,
        });
    }
    let tuples: Vec<[usize; 4]> = diagram
        .pd_tuples()
        .iter()
        .map(|t| t.map(|l| diagram.edge_index(l).expect("edge")))
        .collect();
    let edges = diagram.edge_count();

    // hist[a][loops]: number of states with `a` A-smoothings and that many
    // circles.
    let count_states = |range: std::ops::Range<u64>| -> Vec<Vec<u64>> {
        let mut hist = vec![vec![0u64; edges + 2]; n + 1];
        let mut parent = vec![0usize; edges];
        for mask in range {
            for (i, p) in parent.iter_mut().enumerate() {
                *p = i;
            }
            let mut circles = edges;
            for (i, t) in tuples.iter().enumerate() {
                let pairs = if mask >> i & 1 == 0 {
                    [(t[0], t[1]), (t[2], t[3])]
                } else {
                    [(t[0], t[3]), (t[1], t[2])]
                };
                for (u, v) in pairs {
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru != rv {
                        parent[ru] = rv;
                        circles -= 1;
                    }
                }
            }
            let a = n - (mask.count_ones() as usize);
            hist[a][circles] += 1;
        }
        hist
    };

    let total = 1u64 << n;
    let hist = if n < PARALLEL_THRESHOLD {
        count_states(0..total)
    } else {
        let chunk = 1u64 << (n - 8);
        (0..256u64)
            .into_par_iter()
            .map(|k| count_states(k * chunk..(k + 1) * chunk))
            .reduce(
                || vec![vec![0u64; edges + 2]; n + 1],
                |mut acc, h| {
                    for (ra, rb) in acc.iter_mut().zip(h) {
                        for (x, y) in ra.iter_mut().zip(rb) {
                            *x += y;
                        }
                    }
                    acc
                },
            )
    };

    let d = loop_value();
    let mut powers = vec![LaurentPoly::one()];
    let extra = diagram.loops();
    let mut out = LaurentPoly::zero();
    for (a, row) in hist.iter().enumerate() {
        for (circles, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let k = circles + extra - 1;
            while powers.len() <= k {
                let next = powers.last().expect("nonempty") * &d;
                powers.push(next);
            }
            let weight = a as i32 - (n - a) as i32;
            let term = powers[k].shift(weight);
            for (e, c) in term.terms() {
                out.add_term(c * count as i64, e);
            }
        }
    }
    Ok(out)
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

pub fn writhe(diagram: &PdDiagram) -> i32 {
    diagram.writhe()
}

/// `(-A^3)^(-w) <D>`, an isotopy invariant of the oriented diagram.
pub fn normalized_bracket(diagram: &PdDiagram) -> Result<LaurentPoly> {
    normalized_bracket_capped(diagram, DEFAULT_BRACKET_CAP)
}

pub fn normalized_bracket_capped(diagram: &PdDiagram, cap: usize) -> Result<LaurentPoly> {
    let bracket = kauffman_bracket_capped(diagram, cap)?;
    let w = diagram.writhe();
    let sign = if w % 2 == 0 { 1 } else { -1 };
    Ok(&LaurentPoly::monomial(sign, -3 * w) * &bracket)
}

/// `|V(-1)|`, read off the bracket at `A = exp(i pi/4)`. The exponents of a
/// knot's bracket share one residue mod 4, so the value there is an integer
/// times a unit.
pub fn determinant(diagram: &PdDiagram) -> Result<i64> {
    let b = kauffman_bracket(diagram)?;
    let Some((first, _)) = b.terms().next() else {
        return Ok(0);
    };
    let r = first.rem_euclid(4);
    Ok(b.terms()
        .map(|(e, c)| if (e - r).div_euclid(4) % 2 == 0 { c } else { -c })
        .sum::<i64>()
        .abs())
}

pub fn is_unknot(diagram: &PdDiagram) -> Result<bool> {
    is_unknot_capped(diagram, Caps::default())
}

/// Certified unknot test for knot diagrams with at most `caps.cert`
/// crossings. Larger diagrams are refused rather than guessed.
pub fn is_unknot_capped(diagram: &PdDiagram, caps: Caps) -> Result<bool> {
    if !diagram.is_knot() {
        return Err(Error::NotAKnot {
            components: diagram.component_count(),
        });
    }
    let n = diagram.crossing_count();
    if n > caps.cert {
        return Err(Error::Cap {
            what: "unknot certification",
            crossings: n,
            cap: caps.cert,
        });
    }
    Ok(normalized_bracket_capped(diagram, caps.bracket)?.is_one())
}
