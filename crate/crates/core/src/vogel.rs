//! Seifert circles and Vogel's algorithm: turning a planar diagram into a
//! braid whose closure is the same knot.
//!
//! Each move is a Reidemeister II move pushing one edge across a face onto
//! another edge. It keeps the number of Seifert circles and lowers the
//! number of incompatible circle pairs; at zero the circles are nested and
//! coherently oriented, and the braid can be read off.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use log::debug;
use thiserror::Error;

use crate::braid::BraidWord;
use crate::pd::PdCode;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VogelError {
    #[error("diagram has {0} components; only knots are supported")]
    NotAKnot(usize),
    #[error("incoherence did not decrease ({before} -> {after}) at move {step}")]
    NotMonotone { step: usize, before: usize, after: usize },
    #[error("no reducing face although incoherence is {0}")]
    NoReducingFace(usize),
    #[error("braided diagram could not be read off: {0}")]
    Readout(String),
}

/// An oriented diagram with explicit edges.
#[derive(Clone, Debug)]
struct Diagram {
    cross: Vec<[usize; 4]>,
    over_in: Vec<usize>,
    label: Vec<u32>,
    // (crossing, slot) where each edge starts and ends.
    tail: Vec<(usize, usize)>,
    head: Vec<(usize, usize)>,
}

/// Seifert circles of a diagram together with the regions between them.
#[derive(Clone, Debug)]
pub struct SeifertDecomposition {
    /// Circle index per edge.
    pub circle_of_edge: Vec<usize>,
    pub circle_count: usize,
    /// Pairs of circles that are not nested with a common orientation.
    /// Zero exactly for braided diagrams.
    pub incoherence_count: usize,
    face_of_dart: Vec<usize>,
    face_count: usize,
    region_of_face: Vec<usize>,
    // (left region, right region) per circle.
    sides: Vec<(usize, usize)>,
}

impl Diagram {
    fn from_pd(pd: &PdCode) -> Self {
        let n = pd.len();
        let mut labels: Vec<u32> = pd.crossings().iter().flatten().copied().collect();
        labels.sort();
        labels.dedup();
        let idx = |l: u32| labels.binary_search(&l).unwrap();
        let mut tail = vec![(usize::MAX, 0); labels.len()];
        let mut head = vec![(usize::MAX, 0); labels.len()];
        let mut cross = vec![[0; 4]; n];
        let mut over_in = vec![0; n];
        for (c, x) in pd.crossings().iter().enumerate() {
            let oi = pd.over_in(c);
            over_in[c] = oi;
            for s in 0..4 {
                let e = idx(x[s]);
                cross[c][s] = e;
                if s == 0 || s == oi {
                    head[e] = (c, s);
                } else {
                    tail[e] = (c, s);
                }
            }
        }
        Diagram { cross, over_in, label: labels, tail, head }
    }

    fn edges(&self) -> usize {
        self.label.len()
    }

    fn sign(&self, c: usize) -> i32 {
        if self.over_in[c] == 3 {
            1
        } else {
            -1
        }
    }

    // Darts: 2e traverses e forwards, 2e+1 backwards. The face of a dart lies
    // on its left.
    fn arrival(&self, d: usize) -> (usize, usize) {
        if d.is_multiple_of(2) {
            self.head[d / 2]
        } else {
            self.tail[d / 2]
        }
    }

    fn dart_leaving(&self, c: usize, s: usize) -> usize {
        let e = self.cross[c][s];
        if self.tail[e] == (c, s) {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn dart_arriving(&self, c: usize, s: usize) -> usize {
        let e = self.cross[c][s];
        if self.head[e] == (c, s) {
            2 * e
        } else {
            2 * e + 1
        }
    }

    fn next_in_face(&self, d: usize) -> usize {
        let (c, s) = self.arrival(d);
        self.dart_leaving(c, (s + 3) % 4)
    }

    /// The edge following `e` along its Seifert circle.
    fn seifert_next(&self, e: usize) -> usize {
        let (c, s) = self.head[e];
        let out = if s == 0 { 4 - self.over_in[c] } else { 2 };
        self.cross[c][out]
    }

    fn faces(&self) -> (Vec<usize>, usize) {
        let mut face = vec![usize::MAX; 2 * self.edges()];
        let mut count = 0;
        for d0 in 0..face.len() {
            if face[d0] != usize::MAX {
                continue;
            }
            let mut d = d0;
            while face[d] == usize::MAX {
                face[d] = count;
                d = self.next_in_face(d);
            }
            count += 1;
        }
        (face, count)
    }

    fn seifert(&self) -> SeifertDecomposition {
        let m = self.edges();
        let mut circle_of_edge = vec![usize::MAX; m];
        let mut circle_count = 0;
        for e0 in 0..m {
            if circle_of_edge[e0] != usize::MAX {
                continue;
            }
            let mut e = e0;
            while circle_of_edge[e] == usize::MAX {
                circle_of_edge[e] = circle_count;
                e = self.seifert_next(e);
            }
            circle_count += 1;
        }

        let (face_of_dart, face_count) = self.faces();
        let mut uf: Vec<usize> = (0..face_count).collect();
        fn find(uf: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while uf[r] != r {
                r = uf[r];
            }
            let mut y = x;
            while uf[y] != r {
                let n = uf[y];
                uf[y] = r;
                y = n;
            }
            r
        }
        for c in 0..self.cross.len() {
            // The corner between slots j and j+1 belongs to the face of the
            // dart arriving at slot j+1. Faces at the in-in and out-out
            // corners are joined through the smoothing.
            let (in_in, out_out) = if self.over_in[c] == 1 { (1, 3) } else { (0, 2) };
            let f1 = face_of_dart[self.dart_arriving(c, in_in)];
            let f2 = face_of_dart[self.dart_arriving(c, out_out)];
            let (a, b) = (find(&mut uf, f1), find(&mut uf, f2));
            uf[a] = b;
        }
        let mut region_id = vec![usize::MAX; face_count];
        let mut region_of_face = vec![0; face_count];
        let mut regions = 0;
        for (f, slot) in region_of_face.iter_mut().enumerate() {
            let r = find(&mut uf, f);
            if region_id[r] == usize::MAX {
                region_id[r] = regions;
                regions += 1;
            }
            *slot = region_id[r];
        }

        let mut sides = vec![(usize::MAX, usize::MAX); circle_count];
        for e in 0..m {
            let side = (region_of_face[face_of_dart[2 * e]], region_of_face[face_of_dart[2 * e + 1]]);
            let c = circle_of_edge[e];
            debug_assert!(sides[c].0 == usize::MAX || sides[c] == side);
            sides[c] = side;
        }
        let incoherence_count = incoherent_pairs(&sides, regions);

        SeifertDecomposition {
            circle_of_edge,
            circle_count,
            incoherence_count,
            face_of_dart,
            face_count,
            region_of_face,
            sides,
        }
    }

    /// A face with two edges of different circles on the same side, and the
    /// pair of edges (least labels first).
    fn reducing_face(&self, sd: &SeifertDecomposition) -> Option<(usize, usize, bool)> {
        let mut darts: Vec<Vec<usize>> = vec![vec![]; sd.face_count];
        for (d, &f) in sd.face_of_dart.iter().enumerate() {
            darts[f].push(d);
        }
        type Choice = (usize, usize, bool);
        let mut best: Option<((usize, u32), Choice)> = None;
        for ds in &darts {
            let mut found: Option<(u32, u32, usize, usize, bool)> = None;
            for (i, &a) in ds.iter().enumerate() {
                for &b in &ds[i + 1..] {
                    let (ea, eb) = (a / 2, b / 2);
                    if a % 2 != b % 2 || sd.circle_of_edge[ea] == sd.circle_of_edge[eb] {
                        continue;
                    }
                    let (la, lb) = (self.label[ea], self.label[eb]);
                    let (l1, l2, e1, e2) = if la < lb { (la, lb, ea, eb) } else { (lb, la, eb, ea) };
                    if found.is_none_or(|f| (l1, l2) < (f.0, f.1)) {
                        found = Some((l1, l2, e1, e2, a % 2 == 0));
                    }
                }
            }
            if let Some((_, _, e1, e2, left)) = found {
                let min_label = ds.iter().map(|d| self.label[d / 2]).min().unwrap();
                let key = (ds.len(), min_label);
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, (e1, e2, left)));
                }
            }
        }
        best.map(|(_, v)| v)
    }

    /// Pushes `e1` over `e2` through the face lying on the given side of both.
    fn push_over(&mut self, e1: usize, e2: usize, left: bool) {
        let next_label = self.label.iter().max().map_or(1, |l| l + 1);
        let (x1, x2) = (self.cross.len(), self.cross.len() + 1);
        let m1 = self.edges();
        let (e1b, m2, e2b) = (m1 + 1, m1 + 2, m1 + 3);
        for k in 0..4 {
            self.label.push(next_label + k as u32);
        }
        let (h1, h2) = (self.head[e1], self.head[e2]);
        self.tail.extend([(0, 0); 4]);
        self.head.extend([(0, 0); 4]);
        if left {
            self.cross.push([m2, m1, e2b, e1]);
            self.over_in.push(3);
            self.cross.push([e2, m1, m2, e1b]);
            self.over_in.push(1);
            self.head[e1] = (x1, 3);
            self.tail[m1] = (x1, 1);
            self.head[m1] = (x2, 1);
            self.tail[e1b] = (x2, 3);
        } else {
            self.cross.push([m2, e1, e2b, m1]);
            self.over_in.push(1);
            self.cross.push([e2, e1b, m2, m1]);
            self.over_in.push(3);
            self.head[e1] = (x1, 1);
            self.tail[m1] = (x1, 3);
            self.head[m1] = (x2, 3);
            self.tail[e1b] = (x2, 1);
        }
        self.head[e2] = (x2, 0);
        self.tail[m2] = (x2, 2);
        self.head[m2] = (x1, 0);
        self.tail[e2b] = (x1, 2);
        self.head[e1b] = h1;
        self.cross[h1.0][h1.1] = e1b;
        self.head[e2b] = h2;
        self.cross[h2.0][h2.1] = e2b;
    }

    /// Reads the braid off a diagram with zero incoherence.
    fn read_braid(&self, sd: &SeifertDecomposition) -> Result<BraidWord, VogelError> {
        let k = sd.circle_count;
        if k == 1 {
            return BraidWord::new(1, vec![]).map_err(|e| VogelError::Readout(e.to_string()));
        }
        // Regions and circles form a path; order the circles along it.
        let regions = sd.region_of_face.iter().max().map_or(0, |r| r + 1);
        let mut circles_of_region: Vec<Vec<usize>> = vec![vec![]; regions];
        for (c, &(l, r)) in sd.sides.iter().enumerate() {
            circles_of_region[l].push(c);
            circles_of_region[r].push(c);
        }
        let end = (0..regions)
            .find(|&r| circles_of_region[r].len() == 1)
            .ok_or_else(|| VogelError::Readout("no outermost region".into()))?;
        let mut order = vec![];
        let mut outer_region = vec![];
        let (mut region, mut prev) = (end, usize::MAX);
        loop {
            let next = circles_of_region[region].iter().copied().find(|&c| c != prev);
            let Some(c) = next else { break };
            let (l, r) = sd.sides[c];
            let far = if l == region { r } else { l };
            order.push(c);
            outer_region.push(far);
            prev = c;
            region = far;
        }
        if order.len() != k {
            return Err(VogelError::Readout(format!("circle path has {} of {} circles", order.len(), k)));
        }
        let mut position = vec![0; k];
        for (i, &c) in order.iter().enumerate() {
            position[c] = i;
        }

        // A cut from the innermost circle outwards that avoids all crossings.
        let mut face_darts: Vec<Vec<usize>> = vec![vec![]; sd.face_count];
        for (d, &f) in sd.face_of_dart.iter().enumerate() {
            face_darts[f].push(d);
        }
        let mut cut = vec![usize::MAX; k];
        cut[0] =
            (0..self.edges()).filter(|&e| sd.circle_of_edge[e] == order[0]).min_by_key(|&e| self.label[e]).unwrap();
        for i in 0..k - 1 {
            let e = cut[i];
            let toward = outer_region[i];
            let d = if sd.region_of_face[sd.face_of_dart[2 * e]] == toward { 2 * e } else { 2 * e + 1 };
            let f = sd.face_of_dart[d];
            cut[i + 1] = face_darts[f]
                .iter()
                .map(|d| d / 2)
                .filter(|&e| sd.circle_of_edge[e] == order[i + 1])
                .min_by_key(|&e| self.label[e])
                .ok_or_else(|| VogelError::Readout("cut does not reach the next circle".into()))?;
        }

        // Crossings in order along each circle, starting after the cut,
        // merged into one sequence consistent with all of them.
        let n = self.cross.len();
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        let mut indeg = vec![0usize; n];
        for &e0 in &cut {
            let mut seq = vec![];
            let mut e = e0;
            loop {
                seq.push(self.head[e].0);
                e = self.seifert_next(e);
                if e == e0 {
                    break;
                }
            }
            for w in seq.windows(2) {
                if succ[w[0]].insert(w[1]) {
                    indeg[w[1]] += 1;
                }
            }
        }
        let mut heap: BinaryHeap<Reverse<usize>> = (0..n).filter(|&c| indeg[c] == 0).map(Reverse).collect();
        let mut letters = vec![];
        while let Some(Reverse(c)) = heap.pop() {
            let a = position[sd.circle_of_edge[self.cross[c][0]]];
            let b = position[sd.circle_of_edge[self.cross[c][2]]];
            if a.abs_diff(b) != 1 {
                return Err(VogelError::Readout(format!("crossing joins circles {a} and {b}")));
            }
            letters.push(self.sign(c) * (a.min(b) as i32 + 1));
            for &s in &succ[c] {
                indeg[s] -= 1;
                if indeg[s] == 0 {
                    heap.push(Reverse(s));
                }
            }
        }
        if letters.len() != n {
            return Err(VogelError::Readout("crossing order is cyclic".into()));
        }
        BraidWord::new(k, letters).map_err(|e| VogelError::Readout(e.to_string()))
    }
}

/// Circles are edges of a tree whose nodes are the regions. Two circles
/// are coherent when, looking along the tree path between them, exactly one
/// of them has the path on its left.
fn incoherent_pairs(sides: &[(usize, usize)], regions: usize) -> usize {
    let mut adj: Vec<Vec<usize>> = vec![vec![]; regions];
    for (c, &(l, r)) in sides.iter().enumerate() {
        adj[l].push(c);
        adj[r].push(c);
    }
    let mut count = 0;
    for (c, &(l, r)) in sides.iter().enumerate() {
        for (start, toward_left) in [(l, true), (r, false)] {
            let mut stack = vec![(start, c)];
            while let Some((region, from)) = stack.pop() {
                for &d in &adj[region] {
                    if d == from {
                        continue;
                    }
                    let (dl, dr) = sides[d];
                    if d > c && (dl == region) == toward_left {
                        count += 1;
                    }
                    stack.push((if dl == region { dr } else { dl }, d));
                }
            }
        }
    }
    count
}

/// Seifert circles of a PD code.
pub fn seifert_decomposition(pd: &PdCode) -> SeifertDecomposition {
    if pd.is_empty() {
        return SeifertDecomposition {
            circle_of_edge: vec![],
            circle_count: 1,
            incoherence_count: 0,
            face_of_dart: vec![],
            face_count: 2,
            region_of_face: vec![],
            sides: vec![],
        };
    }
    Diagram::from_pd(pd).seifert()
}

/// Record of one conversion, for diagnostics.
#[derive(Clone, Debug, Default)]
pub struct VogelTrace {
    /// Incoherence before the first move and after each move.
    pub incoherence: Vec<usize>,
    pub circles: usize,
}

/// Converts a knot diagram to a braid with as many strands as the diagram
/// has Seifert circles.
pub fn pd_to_braid(pd: &PdCode) -> Result<BraidWord, VogelError> {
    pd_to_braid_traced(pd).map(|(b, _)| b)
}

pub fn pd_to_braid_traced(pd: &PdCode) -> Result<(BraidWord, VogelTrace), VogelError> {
    let comps = pd.components();
    if comps != 1 {
        return Err(VogelError::NotAKnot(comps));
    }
    if pd.is_empty() {
        return Ok((BraidWord::unknot(), VogelTrace { incoherence: vec![0], circles: 1 }));
    }
    let mut dg = Diagram::from_pd(pd);
    let mut sd = dg.seifert();
    let mut trace = VogelTrace { incoherence: vec![sd.incoherence_count], circles: sd.circle_count };
    while sd.incoherence_count > 0 {
        let (e1, e2, left) = dg.reducing_face(&sd).ok_or(VogelError::NoReducingFace(sd.incoherence_count))?;
        dg.push_over(e1, e2, left);
        let next = dg.seifert();
        debug_assert_eq!(next.face_count, dg.cross.len() + 2, "move broke planarity");
        debug_assert_eq!(next.circle_count, sd.circle_count);
        if next.incoherence_count >= sd.incoherence_count {
            return Err(VogelError::NotMonotone {
                step: trace.incoherence.len(),
                before: sd.incoherence_count,
                after: next.incoherence_count,
            });
        }
        trace.incoherence.push(next.incoherence_count);
        sd = next;
    }
    debug!("vogel: {} moves, {} circles", trace.incoherence.len() - 1, sd.circle_count);
    let braid = dg.read_braid(&sd)?;
    Ok((braid, trace))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil_circles() {
        let pd = PdCode::parse("X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]").unwrap();
        let sd = seifert_decomposition(&pd);
        assert_eq!(sd.circle_count, 2);
        assert_eq!(sd.incoherence_count, 0);
        let b = pd_to_braid(&pd).unwrap();
        assert_eq!(b.strands(), 2);
        assert_eq!(b.letters(), &[-1, -1, -1]);
    }

    #[test]
    fn figure_eight_circles() {
        let pd = PdCode::parse("X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]").unwrap();
        let sd = seifert_decomposition(&pd);
        assert_eq!(sd.circle_count, 3);
        let b = pd_to_braid(&pd).unwrap();
        assert_eq!(b.strands(), 3);
        assert_eq!(b.writhe(), 0);
        assert_eq!(b.closure_components(), 1);
    }

    #[test]
    fn empty_and_links() {
        assert_eq!(pd_to_braid(&PdCode::parse("").unwrap()).unwrap(), BraidWord::unknot());
        let hopf = PdCode::parse("X[4,1,3,2] X[2,3,1,4]").unwrap();
        assert_eq!(pd_to_braid(&hopf), Err(VogelError::NotAKnot(2)));
    }
}
