//! Diagrams on two rows of `r` vertices: perfect matchings on `2r` points,
//! with stacking multiplication and deleted-cycle counting.
//!
//! Vertices are numbered `0, …, r-1` along the top row (left to right) and
//! `r, …, 2r-1` along the bottom row (left to right). The text encoding of a
//! diagram is its canonical edge list, e.g. `"0-1,2-3"`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Permutation;

/// Default ceiling on how many diagrams an enumeration may produce.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("diagram rank must be at least 1, got {0}")]
    InvalidRank(usize),
    #[error("generators need at least 2 strands, got r = {0}")]
    TooFewStrands(usize),
    #[error("not a perfect matching: {0}")]
    NotAMatching(String),
    #[error("cannot multiply diagrams of ranks {0} and {1}")]
    SizeMismatch(usize, usize),
    #[error("enumerating {required} diagrams exceeds the cap of {cap}")]
    CapExceeded { required: u128, cap: u64 },
}

/// A perfect matching on `2r` vertices; the basis element of the diagram
/// algebra on `r` strands.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BrauerDiagram {
    r: usize,
    /// `partner[v]` is the unique vertex joined to `v`; a fixed-point-free
    /// involution on `{0, …, 2r-1}`.
    partner: Vec<usize>,
}

/// Result of stacking two diagrams: the traced-out diagram together with the
/// number `cycles` of closed loops confined to the identified middle row.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiagramProduct {
    pub cycles: usize,
    pub diagram: BrauerDiagram,
}

impl BrauerDiagram {
    /// Builds a diagram from an edge list on `{0, …, 2r-1}`.
    pub fn from_edges(r: usize, edges: &[(usize, usize)]) -> Result<Self, DiagramError> {
        if r == 0 {
            return Err(DiagramError::InvalidRank(0));
        }
        if edges.len() != r {
            return Err(DiagramError::NotAMatching(format!(
                "expected {} edges, got {}",
                r,
                edges.len()
            )));
        }
        let mut partner = vec![usize::MAX; 2 * r];
        for &(a, b) in edges {
            if a >= 2 * r || b >= 2 * r {
                return Err(DiagramError::NotAMatching(format!(
                    "vertex out of range in edge {a}-{b}"
                )));
            }
            if a == b {
                return Err(DiagramError::NotAMatching(format!("loop at vertex {a}")));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                return Err(DiagramError::NotAMatching(format!(
                    "vertex repeated in edge {a}-{b}"
                )));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Ok(BrauerDiagram { r, partner })
    }

    /// The identity diagram: every strand vertical.
    pub fn identity(r: usize) -> Self {
        let edges: Vec<(usize, usize)> = (0..r).map(|j| (j, r + j)).collect();
        BrauerDiagram::from_edges(r, &edges).expect("identity is a matching")
    }

    /// The diagram of a permutation: top vertex `a-1` joined to bottom vertex
    /// below `(a)σ`, so stacking diagrams composes permutations in
    /// right-action order.
    pub fn from_permutation(perm: &Permutation) -> Self {
        let r = perm.degree();
        let edges: Vec<(usize, usize)> = (1..=r).map(|a| (a - 1, r + perm.apply(a) - 1)).collect();
        BrauerDiagram::from_edges(r, &edges).expect("permutation graph is a matching")
    }

    /// The contraction generator: top vertices 0,1 joined, bottom vertices
    /// 0,1 joined, all other strands vertical.
    pub fn contraction(r: usize) -> Result<Self, DiagramError> {
        if r < 2 {
            return Err(DiagramError::TooFewStrands(r));
        }
        let mut edges = vec![(0, 1), (r, r + 1)];
        edges.extend((2..r).map(|j| (j, r + j)));
        BrauerDiagram::from_edges(r, &edges)
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn partner(&self, v: usize) -> usize {
        self.partner[v]
    }

    /// Canonical edge list: `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.r);
        for v in 0..2 * self.r {
            let w = self.partner[v];
            if v < w {
                out.push((v, w));
            }
        }
        out
    }

    /// Top-row horizontal edges as position pairs `(a, b)` with `a < b < r`.
    pub fn top_horizontal_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(_, b)| b < self.r)
            .collect()
    }

    /// Bottom-row horizontal edges as 0-based positions within the bottom row.
    pub fn bottom_horizontal_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(a, _)| a >= self.r)
            .map(|(a, b)| (a - self.r, b - self.r))
            .collect()
    }

    /// Vertical edges as `(top position, bottom position)`, both 0-based.
    pub fn vertical_edges(&self) -> Vec<(usize, usize)> {
        self.edges()
            .into_iter()
            .filter(|&(a, b)| a < self.r && b >= self.r)
            .map(|(a, b)| (a, b - self.r))
            .collect()
    }

    /// Number of horizontal edges in the top row (equal to the number in the
    /// bottom row).
    pub fn horizontal_pairs(&self) -> usize {
        self.top_horizontal_edges().len()
    }

    pub fn is_permutation(&self) -> bool {
        self.horizontal_pairs() == 0
    }

    /// The permutation realized by a diagram without horizontal edges.
    pub fn to_permutation(&self) -> Option<Permutation> {
        if !self.is_permutation() {
            return None;
        }
        let mut images = vec![0; self.r];
        for (a, b) in self.vertical_edges() {
            images[a] = b + 1;
        }
        Some(Permutation::from_images(images).expect("matching gives a bijection"))
    }

    /// Number of interleaving edge pairs, with the `2r` vertices read along
    /// the rectangle boundary (top row left to right, bottom row right to
    /// left). For a permutation diagram this is its inversion count.
    pub fn crossing_number(&self) -> usize {
        let r = self.r;
        let coord = |v: usize| if v < r { v } else { 3 * r - 1 - v };
        let spans: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (coord(a), coord(b));
                (x.min(y), x.max(y))
            })
            .collect();
        let mut count = 0;
        for i in 0..spans.len() {
            for j in i + 1..spans.len() {
                let (p, q) = spans[i];
                let inside = |x: usize| p < x && x < q;
                if inside(spans[j].0) != inside(spans[j].1) {
                    count += 1;
                }
            }
        }
        count
    }
}

impl fmt::Display for BrauerDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, b) in self.edges() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{a}-{b}")?;
            first = false;
        }
        Ok(())
    }
}

impl FromStr for BrauerDiagram {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut edges = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| DiagramError::NotAMatching(format!("bad edge {part:?}")))?;
            let a: usize = a
                .trim()
                .parse()
                .map_err(|_| DiagramError::NotAMatching(format!("bad vertex {a:?}")))?;
            let b: usize = b
                .trim()
                .parse()
                .map_err(|_| DiagramError::NotAMatching(format!("bad vertex {b:?}")))?;
            edges.push((a, b));
        }
        BrauerDiagram::from_edges(edges.len(), &edges)
    }
}

/// The standard generating set `[s_1, …, s_{r-1}, c_0]`: the adjacent strand
/// swaps followed by the contraction diagram.
pub fn generator_diagrams(r: usize) -> Result<Vec<BrauerDiagram>, DiagramError> {
    if r < 2 {
        return Err(DiagramError::TooFewStrands(r));
    }
    let mut out = Vec::with_capacity(r);
    for i in 1..r {
        let swap = Permutation::transposition(r, i, i + 1).expect("in range");
        out.push(BrauerDiagram::from_permutation(&swap));
    }
    out.push(BrauerDiagram::contraction(r)?);
    Ok(out)
}

/// `(2r-1)!!`, the number of perfect matchings on `2r` points.
pub fn double_factorial_odd(r: usize) -> u128 {
    (0..r).map(|k| (2 * k + 1) as u128).product()
}

/// All diagrams on `r` strands in canonical order, refusing to enumerate
/// past the default cap.
pub fn enumerate_diagrams(r: usize) -> Result<Vec<BrauerDiagram>, DiagramError> {
    enumerate_diagrams_capped(r, DEFAULT_ENUMERATION_CAP)
}

/// All diagrams on `r` strands in canonical order, with an explicit cap.
pub fn enumerate_diagrams_capped(r: usize, cap: u64) -> Result<Vec<BrauerDiagram>, DiagramError> {
    if r == 0 {
        return Err(DiagramError::InvalidRank(0));
    }
    let required = double_factorial_odd(r);
    if required > cap as u128 {
        return Err(DiagramError::CapExceeded { required, cap });
    }
    let mut out = Vec::with_capacity(required as usize);
    let mut partner = vec![usize::MAX; 2 * r];
    fill_matchings(&mut partner, &mut out, r);
    Ok(out)
}

fn fill_matchings(partner: &mut Vec<usize>, out: &mut Vec<BrauerDiagram>, r: usize) {
    let first_free = match partner.iter().position(|&p| p == usize::MAX) {
        Some(v) => v,
        None => {
            out.push(BrauerDiagram {
                r,
                partner: partner.clone(),
            });
            return;
        }
    };
    for w in first_free + 1..2 * r {
        if partner[w] != usize::MAX {
            continue;
        }
        partner[first_free] = w;
        partner[w] = first_free;
        fill_matchings(partner, out, r);
        partner[first_free] = usize::MAX;
        partner[w] = usize::MAX;
    }
}

/// Stacks `d1` above `d2`, identifying the bottom row of `d1` with the top
/// row of `d2`, and traces the resulting paths. Returns the product diagram
/// together with the number of deleted middle cycles.
pub fn diagram_multiply(
    d1: &BrauerDiagram,
    d2: &BrauerDiagram,
) -> Result<DiagramProduct, DiagramError> {
    if d1.r != d2.r {
        return Err(DiagramError::SizeMismatch(d1.r, d2.r));
    }
    let r = d1.r;
    // Nodes of the stacked graph: 0..r top, r..2r middle, 2r..3r bottom.
    let up = |v: usize| d1.partner(v);
    let down = |v: usize| d2.partner(v - r) + r;

    let mut visited_mid = vec![false; r];
    let mut seen_endpoint = vec![false; 3 * r];
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(r);
    for start in (0..r).chain(2 * r..3 * r) {
        if seen_endpoint[start] {
            continue;
        }
        seen_endpoint[start] = true;
        let mut via_up = start < r;
        let mut cur = start;
        loop {
            let next = if via_up { up(cur) } else { down(cur) };
            if next < r || next >= 2 * r {
                seen_endpoint[next] = true;
                let a = if start < r { start } else { start - r };
                let b = if next < r { next } else { next - r };
                edges.push((a.min(b), a.max(b)));
                break;
            }
            visited_mid[next - r] = true;
            via_up = !via_up;
            cur = next;
        }
    }

    let mut cycles = 0;
    for m in 0..r {
        if visited_mid[m] {
            continue;
        }
        cycles += 1;
        let start = r + m;
        let mut via_up = true;
        let mut cur = start;
        loop {
            visited_mid[cur - r] = true;
            let next = if via_up { up(cur) } else { down(cur) };
            via_up = !via_up;
            cur = next;
            if cur == start {
                break;
            }
        }
    }

    Ok(DiagramProduct {
        cycles,
        diagram: BrauerDiagram::from_edges(r, &edges)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn all_perms(r: usize) -> Vec<Permutation> {
        (1..=r)
            .permutations(r)
            .map(|im| Permutation::from_images(im).unwrap())
            .collect()
    }

    #[test]
    fn identity_diagram_edges() {
        let d = BrauerDiagram::from_permutation(&Permutation::identity(3));
        assert_eq!(d, BrauerDiagram::identity(3));
        assert_eq!(d.to_string(), "0-3,1-4,2-5");
    }

    #[test]
    fn swap_diagram_crosses() {
        let s = Permutation::transposition(2, 1, 2).unwrap();
        let d = BrauerDiagram::from_permutation(&s);
        assert_eq!(d.to_string(), "0-3,1-2");
        assert_eq!(d.crossing_number(), 1);
    }

    #[test]
    fn permutation_diagrams_compose_in_right_action_order() {
        // Exhaustive over all 36 pairs in the degree-3 symmetric group.
        for s in all_perms(3) {
            for t in all_perms(3) {
                let prod =
                    diagram_multiply(&BrauerDiagram::from_permutation(&s), &BrauerDiagram::from_permutation(&t))
                        .unwrap();
                assert_eq!(prod.cycles, 0);
                assert_eq!(prod.diagram, BrauerDiagram::from_permutation(&s.then(&t)));
            }
        }
    }

    #[test]
    fn generator_counts() {
        assert_eq!(generator_diagrams(2).unwrap().len(), 2);
        assert_eq!(generator_diagrams(3).unwrap().len(), 3);
        assert!(matches!(
            generator_diagrams(1),
            Err(DiagramError::TooFewStrands(1))
        ));
    }

    #[test]
    fn generators_generate_everything_at_rank_3() {
        // Fixpoint closure of the generator set under multiplication.
        let mut known: std::collections::BTreeSet<BrauerDiagram> =
            generator_diagrams(3).unwrap().into_iter().collect();
        known.insert(BrauerDiagram::identity(3));
        loop {
            let snapshot: Vec<_> = known.iter().cloned().collect();
            let before = known.len();
            for a in &snapshot {
                for b in &snapshot {
                    known.insert(diagram_multiply(a, b).unwrap().diagram);
                }
            }
            if known.len() == before {
                break;
            }
        }
        let all = enumerate_diagrams(3).unwrap();
        assert_eq!(known.len(), all.len());
        assert_eq!(known, all.into_iter().collect());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_diagrams(1).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(2).unwrap().len(), 3);
        assert_eq!(enumerate_diagrams(3).unwrap().len(), 15);
        for r in 1..=5 {
            let ds = enumerate_diagrams(r).unwrap();
            assert_eq!(ds.len() as u128, double_factorial_odd(r));
            let set: std::collections::BTreeSet<_> = ds.iter().cloned().collect();
            assert_eq!(set.len(), ds.len(), "duplicates at r = {r}");
        }
    }

    #[test]
    fn enumeration_cap_is_reported() {
        match enumerate_diagrams_capped(4, 10) {
            Err(DiagramError::CapExceeded { required, cap }) => {
                assert_eq!(required, 105);
                assert_eq!(cap, 10);
            }
            other => panic!("expected cap error, got {other:?}"),
        }
    }

    #[test]
    fn rank_2_diagrams_are_the_expected_three() {
        let all = enumerate_diagrams(2).unwrap();
        let id = BrauerDiagram::identity(2);
        let s1 = BrauerDiagram::from_permutation(&Permutation::transposition(2, 1, 2).unwrap());
        let c0 = BrauerDiagram::contraction(2).unwrap();
        assert_eq!(all.len(), 3);
        for d in [&id, &s1, &c0] {
            assert!(all.contains(d));
        }
    }

    #[test]
    fn multiply_identity_law() {
        let id = BrauerDiagram::identity(3);
        for d in enumerate_diagrams(3).unwrap() {
            let left = diagram_multiply(&id, &d).unwrap();
            assert_eq!((left.cycles, &left.diagram), (0, &d));
            let right = diagram_multiply(&d, &id).unwrap();
            assert_eq!((right.cycles, &right.diagram), (0, &d));
        }
    }

    #[test]
    fn contraction_squares_with_one_cycle() {
        let c0 = BrauerDiagram::contraction(2).unwrap();
        let p = diagram_multiply(&c0, &c0).unwrap();
        assert_eq!(p.cycles, 1);
        assert_eq!(p.diagram, c0);
    }

    #[test]
    fn swap_absorbs_into_contraction() {
        let c0 = BrauerDiagram::contraction(2).unwrap();
        let s1 = BrauerDiagram::from_permutation(&Permutation::transposition(2, 1, 2).unwrap());
        let p = diagram_multiply(&s1, &c0).unwrap();
        assert_eq!((p.cycles, p.diagram), (0, c0.clone()));
        let p = diagram_multiply(&c0, &s1).unwrap();
        assert_eq!((p.cycles, p.diagram), (0, c0));
    }

    #[test]
    fn associativity_with_cycle_bookkeeping_rank_2() {
        let all = enumerate_diagrams(2).unwrap();
        for a in &all {
            for b in &all {
                for c in &all {
                    let ab = diagram_multiply(a, b).unwrap();
                    let ab_c = diagram_multiply(&ab.diagram, c).unwrap();
                    let bc = diagram_multiply(b, c).unwrap();
                    let a_bc = diagram_multiply(a, &bc.diagram).unwrap();
                    assert_eq!(ab_c.diagram, a_bc.diagram);
                    assert_eq!(ab.cycles + ab_c.cycles, bc.cycles + a_bc.cycles);
                }
            }
        }
    }

    #[test]
    fn multiplication_preserves_matching_invariant() {
        let all = enumerate_diagrams(3).unwrap();
        for a in &all {
            for b in &all {
                let p = diagram_multiply(a, b).unwrap();
                let d = &p.diagram;
                for v in 0..6 {
                    assert_ne!(d.partner(v), v);
                    assert_eq!(d.partner(d.partner(v)), v);
                }
                assert_eq!(
                    d.top_horizontal_edges().len(),
                    d.bottom_horizontal_edges().len()
                );
                assert!(p.cycles <= 3);
            }
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let c0 = BrauerDiagram::contraction(2).unwrap();
        assert_eq!(c0.to_string(), "0-1,2-3");
        assert_eq!("0-1,2-3".parse::<BrauerDiagram>().unwrap(), c0);
        assert_eq!(
            "0-1".parse::<BrauerDiagram>().unwrap(),
            BrauerDiagram::identity(1)
        );
        assert!("0-1,2-2".parse::<BrauerDiagram>().is_err());
        assert!("0-1,0-2".parse::<BrauerDiagram>().is_err());
        assert!("0-1,2-9".parse::<BrauerDiagram>().is_err());
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let a = BrauerDiagram::identity(2);
        let b = BrauerDiagram::identity(3);
        assert!(matches!(
            diagram_multiply(&a, &b),
            Err(DiagramError::SizeMismatch(2, 3))
        ));
    }

    mod random {
        use super::*;
        use proptest::prelude::*;

        fn permutation_pair(max_r: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
            (2..=max_r).prop_flat_map(|r| {
                let one = Just((1..=r).collect::<Vec<usize>>()).prop_shuffle();
                let other = Just((1..=r).collect::<Vec<usize>>()).prop_shuffle();
                (one, other).prop_map(|(a, b)| {
                    (
                        Permutation::from_images(a).unwrap(),
                        Permutation::from_images(b).unwrap(),
                    )
                })
            })
        }

        fn inversions(p: &Permutation) -> usize {
            let mut count = 0;
            for a in 1..=p.degree() {
                for b in a + 1..=p.degree() {
                    if p.apply(a) > p.apply(b) {
                        count += 1;
                    }
                }
            }
            count
        }

        proptest! {
            #[test]
            fn permutation_diagrams_at_larger_ranks((s, t) in permutation_pair(8)) {
                let ds = BrauerDiagram::from_permutation(&s);
                let dt = BrauerDiagram::from_permutation(&t);
                prop_assert!(ds.is_permutation());
                prop_assert_eq!(ds.to_permutation().unwrap(), s.clone());
                prop_assert_eq!(ds.crossing_number(), inversions(&s));
                let prod = diagram_multiply(&ds, &dt).unwrap();
                prop_assert_eq!(prod.cycles, 0);
                prop_assert_eq!(prod.diagram, BrauerDiagram::from_permutation(&s.then(&t)));
            }

            #[test]
            fn products_stay_perfect_matchings(seed in 0u64..1000, r in 2usize..6) {
                // Pick two pseudo-random diagrams out of the full list.
                let all = enumerate_diagrams(r).unwrap();
                let a = &all[(seed as usize * 7919) % all.len()];
                let b = &all[(seed as usize * 104729) % all.len()];
                let p = diagram_multiply(a, b).unwrap();
                for v in 0..2 * r {
                    prop_assert_ne!(p.diagram.partner(v), v);
                    prop_assert_eq!(p.diagram.partner(p.diagram.partner(v)), v);
                }
                prop_assert!(p.cycles <= r);
            }
        }
    }
}
