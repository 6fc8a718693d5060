//! Constructing diagrams from pieces: planar shadows with explicit crossing
//! rotations, Conway tangles, kinks and alternating re-signing.
//!
//! A [`Shadow`] crossing has four geometric slots numbered counterclockwise;
//! a strand runs straight through from slot `s` to slot `s + 2`. Wires join
//! slots. Converting a shadow to a [`PdDiagram`] orients each component by
//! walking it, labels edges consecutively along the walk and rewrites every
//! crossing into the PD frame.

use crate::diagram::{Crossing, EdgeLabel, PdDiagram};
use crate::error::{Error, Result};

/// A slot on a shadow crossing: `(crossing, geometric slot)`.
pub type Slot = (usize, u8);

/// A 4-valent planar graph with crossing information.
#[derive(Clone, Debug, Default)]
pub struct Shadow {
    /// `true` when the strand through slots 0 and 2 is on top.
    over_even: Vec<bool>,
    wires: Vec<(Slot, Slot)>,
    loops: usize,
}

impl Shadow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_crossing(&mut self, over_even: bool) -> usize {
        self.over_even.push(over_even);
        self.over_even.len() - 1
    }

    pub fn connect(&mut self, a: Slot, b: Slot) {
        self.wires.push((a, b));
    }

    pub fn add_loops(&mut self, n: usize) {
        self.loops += n;
    }

    pub fn crossing_count(&self) -> usize {
        self.over_even.len()
    }

    /// Orients, labels and converts to a diagram. Crossing `i` of the shadow
    /// becomes crossing `i` of the diagram.
    pub fn to_diagram(&self) -> Result<PdDiagram> {
        let n = self.over_even.len();
        let mut partner = vec![[None::<Slot>; 4]; n];
        for &(a, b) in &self.wires {
            for (p, q) in [(a, b), (b, a)] {
                let cell = &mut partner[p.0][p.1 as usize];
                if cell.is_some() {
                    return Err(Error::Orientation {
                        crossing: p.0,
                        message: format!("slot {} wired twice", p.1),
                    });
                }
                *cell = Some(q);
            }
        }
        let partner: Vec<[Slot; 4]> = partner
            .into_iter()
            .enumerate()
            .map(|(x, slots)| {
                let mut out = [(0, 0); 4];
                for (s, p) in slots.into_iter().enumerate() {
                    out[s] = p.ok_or_else(|| Error::Orientation {
                        crossing: x,
                        message: format!("slot {s} left open"),
                    })?;
                }
                Ok(out)
            })
            .collect::<Result<_>>()?;

        let mut label = vec![[0 as EdgeLabel; 4]; n];
        let mut incoming = vec![[false; 4]; n];
        let mut next: EdgeLabel = 1;
        for x in 0..n {
            for s in 0..4u8 {
                if label[x][s as usize] != 0 {
                    continue;
                }
                // Leave through (x, s); walk until the start comes round.
                let (mut cx, mut cs) = (x, s);
                loop {
                    let (hx, hs) = partner[cx][cs as usize];
                    label[cx][cs as usize] = next;
                    label[hx][hs as usize] = next;
                    incoming[hx][hs as usize] = true;
                    next += 1;
                    (cx, cs) = (hx, (hs + 2) % 4);
                    if (cx, cs) == (x, s) {
                        break;
                    }
                }
            }
        }

        let mut crossings = Vec::with_capacity(n);
        for x in 0..n {
            let ins: Vec<u8> = (0..4u8).filter(|&s| incoming[x][s as usize]).collect();
            if ins.len() != 2 || ins[0] % 2 == ins[1] % 2 {
                return Err(Error::Orientation {
                    crossing: x,
                    message: "strands do not cross".to_string(),
                });
            }
            let f0 = if (ins[0] + 1) % 4 == ins[1] { ins[0] } else { ins[1] };
            let ports = [0, 1, 2, 3].map(|k| label[x][((f0 + k) % 4) as usize]);
            let slot0_even = f0 % 2 == 0;
            let under = if slot0_even == self.over_even[x] { 1 } else { 0 };
            crossings.push(Crossing::new(ports, under));
        }
        PdDiagram::from_crossings(crossings, self.loops)
    }
}

/// Tangle boundary points.
pub const NW: u8 = 0;
pub const NE: u8 = 1;
pub const SW: u8 = 2;
pub const SE: u8 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Slot(usize, u8),
    Boundary(u8),
}

/// A Conway tangle: a shadow in a disk with four boundary points.
#[derive(Clone, Debug)]
pub struct Tangle {
    over_even: Vec<bool>,
    wires: Vec<(End, End)>,
    loops: usize,
}

const TMP_A: u8 = 4;
const TMP_B: u8 = 5;

impl Tangle {
    /// Two horizontal arcs, `NW-NE` and `SW-SE`.
    pub fn zero() -> Self {
        Tangle {
            over_even: Vec::new(),
            wires: vec![
                (End::Boundary(NW), End::Boundary(NE)),
                (End::Boundary(SW), End::Boundary(SE)),
            ],
            loops: 0,
        }
    }

    /// Two vertical arcs, `NW-SW` and `NE-SE`.
    pub fn infinity() -> Self {
        Tangle {
            over_even: Vec::new(),
            wires: vec![
                (End::Boundary(NW), End::Boundary(SW)),
                (End::Boundary(NE), End::Boundary(SE)),
            ],
            loops: 0,
        }
    }

    /// Rational tangle with Conway notation `a_1 a_2 ... a_k`: twists alternate
    /// between vertical and horizontal and the last group is horizontal, so
    /// the fraction is `a_k + 1/(a_{k-1} + ...)`. Shadow only; signs are
    /// fixed later.
    pub fn rational(terms: &[u32]) -> Self {
        let mut t = if terms.len() % 2 == 1 {
            Tangle::zero()
        } else {
            Tangle::infinity()
        };
        for (i, &a) in terms.iter().enumerate() {
            let horizontal = (terms.len() - i) % 2 == 1;
            for _ in 0..a {
                if horizontal {
                    t.twist_horizontal(true);
                } else {
                    t.twist_vertical(true);
                }
            }
        }
        t
    }

    pub fn crossing_count(&self) -> usize {
        self.over_even.len()
    }

    fn rename(&mut self, from: u8, to: u8) {
        for w in &mut self.wires {
            for e in [&mut w.0, &mut w.1] {
                if *e == End::Boundary(from) {
                    *e = End::Boundary(to);
                }
            }
        }
    }

    /// Removes boundary point `id` by joining the two wire ends meeting there.
    fn contract(&mut self, id: u8) {
        let hits: Vec<usize> = (0..self.wires.len())
            .filter(|&i| {
                self.wires[i].0 == End::Boundary(id) || self.wires[i].1 == End::Boundary(id)
            })
            .collect();
        match hits[..] {
            [i] => {
                // Both ends of one wire: a closed circle.
                self.wires.remove(i);
                self.loops += 1;
            }
            [i, j] => {
                let other = |w: (End, End)| if w.0 == End::Boundary(id) { w.1 } else { w.0 };
                let joined = (other(self.wires[i]), other(self.wires[j]));
                self.wires.remove(j);
                self.wires[i] = joined;
            }
            _ => unreachable!("boundary point {id} has {} ends", hits.len()),
        }
    }

    /// Twists `NE` and `SE` around each other once. `positive` puts the strand
    /// from lower left to upper right on top.
    pub fn twist_horizontal(&mut self, positive: bool) -> usize {
        let x = self.over_even.len();
        self.over_even.push(positive);
        // slots: 0 lower left, 1 lower right, 2 upper right, 3 upper left
        self.rename(NE, TMP_A);
        self.rename(SE, TMP_B);
        self.wires.push((End::Slot(x, 3), End::Boundary(TMP_A)));
        self.wires.push((End::Slot(x, 0), End::Boundary(TMP_B)));
        self.contract(TMP_A);
        self.contract(TMP_B);
        self.wires.push((End::Slot(x, 2), End::Boundary(NE)));
        self.wires.push((End::Slot(x, 1), End::Boundary(SE)));
        x
    }

    /// Twists `SW` and `SE` around each other once.
    pub fn twist_vertical(&mut self, positive: bool) -> usize {
        let x = self.over_even.len();
        self.over_even.push(positive);
        self.rename(SW, TMP_A);
        self.rename(SE, TMP_B);
        self.wires.push((End::Slot(x, 3), End::Boundary(TMP_A)));
        self.wires.push((End::Slot(x, 2), End::Boundary(TMP_B)));
        self.contract(TMP_A);
        self.contract(TMP_B);
        self.wires.push((End::Slot(x, 0), End::Boundary(SW)));
        self.wires.push((End::Slot(x, 1), End::Boundary(SE)));
        x
    }

    /// Mirror image in the `NW-SE` diagonal.
    pub fn reflect(&self) -> Tangle {
        let map = |e: End| match e {
            End::Slot(x, s) => End::Slot(x, (4 - s) % 4),
            End::Boundary(NE) => End::Boundary(SW),
            End::Boundary(SW) => End::Boundary(NE),
            b => b,
        };
        Tangle {
            over_even: self.over_even.clone(),
            wires: self.wires.iter().map(|&(a, b)| (map(a), map(b))).collect(),
            loops: self.loops,
        }
    }

    /// Side-by-side sum; crossings of `other` come after those of `self`.
    pub fn sum(&self, other: &Tangle) -> Tangle {
        let offset = self.over_even.len();
        let mut t = self.clone();
        t.rename(NE, TMP_A);
        t.rename(SE, TMP_B);
        let shift = |e: End| match e {
            End::Slot(x, s) => End::Slot(x + offset, s),
            End::Boundary(NW) => End::Boundary(TMP_A),
            End::Boundary(SW) => End::Boundary(TMP_B),
            b => b,
        };
        t.wires
            .extend(other.wires.iter().map(|&(a, b)| (shift(a), shift(b))));
        t.over_even.extend_from_slice(&other.over_even);
        t.loops += other.loops;
        t.contract(TMP_A);
        t.contract(TMP_B);
        t
    }

    fn close(mut self, pairs: [(u8, u8); 2]) -> Result<PdDiagram> {
        for (a, b) in pairs {
            self.rename(b, a);
            self.contract(a);
        }
        let mut shadow = Shadow::new();
        for &o in &self.over_even {
            shadow.add_crossing(o);
        }
        for &(a, b) in &self.wires {
            match (a, b) {
                (End::Slot(x, s), End::Slot(y, t)) => shadow.connect((x, s), (y, t)),
                _ => unreachable!("closed tangle has no boundary"),
            }
        }
        shadow.add_loops(self.loops);
        shadow.to_diagram()
    }

    /// Joins `NW-NE` and `SW-SE`.
    pub fn numerator(self) -> Result<PdDiagram> {
        self.close([(NW, NE), (SW, SE)])
    }

    /// Joins `NW-SW` and `NE-SE`.
    pub fn denominator(self) -> Result<PdDiagram> {
        self.close([(NW, SW), (NE, SE)])
    }
}

/// Re-signs every crossing so that each component alternates over and
/// under along its orientation, starting over at the tail of edge 0.
pub fn make_alternating(diagram: &PdDiagram) -> Result<PdDiagram> {
    let mut unders: Vec<Option<u8>> = vec![None; diagram.crossing_count()];
    let mut seen = vec![false; diagram.edge_count()];
    for start in 0..diagram.edge_count() {
        if seen[start] {
            continue;
        }
        let mut e = start;
        let mut over = true;
        while !seen[e] {
            seen[e] = true;
            let h = diagram.head(e);
            let want = if over { 1 - h.slot } else { h.slot };
            match unders[h.crossing] {
                Some(u) if u != want => {
                    return Err(Error::Orientation {
                        crossing: h.crossing,
                        message: "no alternating assignment exists".to_string(),
                    })
                }
                _ => unders[h.crossing] = Some(want),
            }
            over = !over;
            e = diagram.next_edge(e);
        }
    }
    let crossings = diagram
        .crossings()
        .iter()
        .zip(unders)
        .map(|(x, u)| Crossing::new(x.ports(), u.expect("every crossing is met")))
        .collect();
    PdDiagram::from_crossings(crossings, diagram.loops())
}

/// Which way a kink curls, relative to the strand it is added to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Curl {
    Left,
    Right,
}

/// Inserts a one-crossing kink into the edge labelled `label`. Labels above
/// `label` shift up by two; the kink crossing is appended last.
pub fn add_kink(diagram: &PdDiagram, label: EdgeLabel, curl: Curl, under: u8) -> Result<PdDiagram> {
    if diagram.edge_index(label).is_none() {
        return Err(Error::EdgePairing { edge: label, count: 0 });
    }
    let bump = |l: EdgeLabel| if l > label { l + 2 } else { l };
    let mut crossings: Vec<Crossing> = diagram
        .crossings()
        .iter()
        .map(|x| {
            let mut p = x.ports().map(bump);
            // The old head of `label` now receives the last kink edge.
            for s in 0..2 {
                if x.ports()[s] == label {
                    p[s] = label + 2;
                }
            }
            Crossing::new(p, x.under_strand())
        })
        .collect();
    let (a, b, c) = (label, label + 1, label + 2);
    let ports = match curl {
        Curl::Left => [a, b, b, c],
        Curl::Right => [b, a, c, b],
    };
    crossings.push(Crossing::new(ports, under));
    PdDiagram::from_crossings(crossings, diagram.loops())
}

/// Alternating rational knot or link from Conway notation.
pub fn rational_knot(terms: &[u32]) -> Result<PdDiagram> {
    make_alternating(&Tangle::rational(terms).numerator()?)
}

/// Montesinos-type knot `t_1 0 + t_2 0 + ... (+ extra horizontal twists)`,
/// alternating, then with every crossing of the tangles flagged in
/// `negative` changed. Crossings are numbered tangle by tangle.
pub fn montesinos(tangles: &[&[u32]], extra: u32, negative: &[bool]) -> Result<PdDiagram> {
    let mut sum: Option<Tangle> = None;
    let mut ranges = Vec::new();
    for t in tangles {
        let piece = Tangle::rational(t).reflect();
        let start = sum.as_ref().map_or(0, |s| s.crossing_count());
        ranges.push(start..start + piece.crossing_count());
        sum = Some(match sum {
            None => piece,
            Some(s) => s.sum(&piece),
        });
    }
    let mut sum = sum.unwrap_or_else(Tangle::zero);
    for _ in 0..extra {
        sum.twist_horizontal(true);
    }
    let mut d = make_alternating(&sum.numerator()?)?;
    for (range, &neg) in ranges.iter().zip(negative) {
        if neg {
            for x in range.clone() {
                d = d.crossing_change(x)?;
            }
        }
    }
    Ok(d)
}

/// The standard twist knot diagram: `n` half twists closed off by a clasp.
/// Returns the diagram and the indices of the two clasp crossings.
pub fn twist_knot(n: u32) -> Result<(PdDiagram, [usize; 2])> {
    let t = Tangle::rational(&[n, 2]);
    let clasp = [n as usize, n as usize + 1];
    Ok((make_alternating(&t.numerator()?)?, clasp))
}

/// Closure of a braid word on `strands` strands. Generator `i` (1-based)
/// crosses strands `i` and `i + 1`; a positive entry puts the strand going
/// from lower left to upper right on top.
pub fn braid_closure(strands: usize, word: &[i32]) -> Result<PdDiagram> {
    // Slots: 0 lower left, 1 lower right, 2 upper right, 3 upper left. The
    // strands run upwards and are closed round the right-hand side.
    let mut shadow = Shadow::new();
    let mut top: Vec<Option<Slot>> = vec![None; strands];
    let mut bottom: Vec<Option<Slot>> = vec![None; strands];
    for &g in word {
        let i = g.unsigned_abs() as usize;
        if i == 0 || i >= strands {
            return Err(Error::CrossingOutOfRange {
                index: i,
                count: strands,
            });
        }
        let x = shadow.add_crossing(g > 0);
        for (pos, enter, leave) in [(i - 1, 0u8, 3u8), (i, 1, 2)] {
            match top[pos] {
                Some(s) => shadow.connect(s, (x, enter)),
                None => bottom[pos] = Some((x, enter)),
            }
            top[pos] = Some((x, leave));
        }
    }
    let mut free_strands = 0;
    for pos in 0..strands {
        match (top[pos], bottom[pos]) {
            (Some(t), Some(b)) => shadow.connect(t, b),
            (None, None) => free_strands += 1,
            _ => unreachable!("a strand with crossings has both ends"),
        }
    }
    shadow.add_loops(free_strands);
    shadow.to_diagram()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{determinant, is_unknot, normalized_bracket};
    use crate::faces::faces;

    fn det(d: &PdDiagram) -> i64 {
        determinant(d).unwrap()
    }

    #[test]
    fn twist_knots_have_expected_determinants() {
        for n in 1..=6 {
            let (d, clasp) = twist_knot(n).unwrap();
            assert_eq!(d.crossing_count(), n as usize + 2);
            assert!(d.is_knot());
            assert_eq!(faces(&d).unwrap().len(), d.crossing_count() + 2);
            assert_eq!(det(&d), 2 * n as i64 + 1);
            assert!(clasp.iter().all(|&c| c < d.crossing_count()));
        }
    }

    #[test]
    fn rational_knots() {
        // 5_2 = 3 2, 6_2 = 3 1 2, 7_7 = 2 1 1 1 2
        assert_eq!(det(&rational_knot(&[3, 2]).unwrap()), 7);
        assert_eq!(det(&rational_knot(&[3, 1, 2]).unwrap()), 11);
        assert_eq!(det(&rational_knot(&[2, 1, 1, 1, 2]).unwrap()), 21);
        let t = rational_knot(&[3]).unwrap();
        assert_eq!(t.crossing_count(), 3);
        assert!(!is_unknot(&t).unwrap());
    }

    #[test]
    fn pretzels() {
        // P(3,3,3) has determinant 27; P(3,3,-3) has 9.
        let p = montesinos(&[&[3], &[3], &[3]], 0, &[false, false, false]).unwrap();
        assert!(p.is_knot());
        assert_eq!(det(&p), 27);
        let q = montesinos(&[&[3], &[3], &[3]], 0, &[false, false, true]).unwrap();
        assert_eq!(det(&q), 9);
        // 8_5 = 3,3,2
        assert_eq!(det(&montesinos(&[&[3], &[3], &[2]], 0, &[false; 3]).unwrap()), 21);
    }

    #[test]
    fn kinks_keep_the_knot_type() {
        let (d, _) = twist_knot(2).unwrap();
        let f = normalized_bracket(&d).unwrap();
        for curl in [Curl::Left, Curl::Right] {
            for under in 0..2 {
                let k = add_kink(&d, 3, curl, under).unwrap();
                assert_eq!(k.crossing_count(), 5);
                assert_eq!(faces(&k).unwrap().len(), 7);
                assert_eq!(normalized_bracket(&k).unwrap(), f);
            }
        }
        let c = add_kink(&PdDiagram::from_pd(&[[1, 1, 2, 2]], 0).unwrap(), 2, Curl::Right, 0);
        assert!(is_unknot(&c.unwrap()).unwrap());
    }

    #[test]
    fn braid_closures() {
        let trefoil = braid_closure(2, &[1, 1, 1]).unwrap();
        assert!(trefoil.is_knot());
        assert_eq!(det(&trefoil), 3);
        let eight = braid_closure(3, &[1, -2, 1, -2]).unwrap();
        assert_eq!(det(&eight), 5);
        let unknot = braid_closure(3, &[1, 2]).unwrap();
        assert!(is_unknot(&unknot).unwrap());
        let hopf = braid_closure(2, &[1, 1]).unwrap();
        assert_eq!(hopf.component_count(), 2);
    }

    #[test]
    fn alternating_is_idempotent() {
        let d = rational_knot(&[2, 2]).unwrap();
        assert_eq!(make_alternating(&d).unwrap(), d);
        let flipped = d.crossing_change(1).unwrap();
        assert_eq!(make_alternating(&flipped).unwrap(), d);
    }
}
