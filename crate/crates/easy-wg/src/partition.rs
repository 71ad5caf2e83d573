//! Two-row set partitions and the partition calculus: tensor, composition
//! with closed-block count, involution, rotation, join, crossing analysis,
//! delta evaluation and enumeration.
//!
//! A partition of `P(k,l)` partitions `k` upper points and `l` lower points.
//! Internally points are numbered `0..k` (upper, left to right) then
//! `k..k+l` (lower, left to right), and the block structure is stored as a
//! restricted growth string: `labels[i]` is the block of point `i`, with
//! block numbers assigned in first-occurrence order. That representation is
//! canonical, so `Eq`/`Hash` are structural equality of partitions.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on `k + l` for enumeration.
pub const DEFAULT_POINT_BOUND: usize = 14;

/// A two-row set partition in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    upper: usize,
    labels: Vec<usize>,
}

/// Rotation direction: `Left` moves the leftmost upper point to the
/// leftmost lower position, `Right` is the inverse.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Left,
    Right,
}

fn canonical_labels(raw: &[usize]) -> Vec<usize> {
    let mut map: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::with_capacity(raw.len());
    for &r in raw {
        let next = map.len();
        out.push(*map.entry(r).or_insert(next));
    }
    out
}

impl Partition {
    /// Builds a partition from an arbitrary labelling of the points
    /// (upper row first). Labels are renumbered into canonical form.
    pub fn from_labels(upper: usize, raw: &[usize]) -> Partition {
        assert!(upper <= raw.len(), "upper count exceeds point count");
        Partition {
            upper,
            labels: canonical_labels(raw),
        }
    }

    /// The empty partition in `P(0,0)`.
    pub fn empty() -> Partition {
        Partition {
            upper: 0,
            labels: Vec::new(),
        }
    }

    /// The unit partition `|` in `P(1,1)`.
    pub fn unit() -> Partition {
        Partition::from_labels(1, &[0, 0])
    }

    /// The duality partition `⊓` in `P(0,2)`.
    pub fn duality() -> Partition {
        Partition::from_labels(0, &[0, 0])
    }

    /// The basic crossing in `P(2,2)`, mapping `x⊗y` to `y⊗x`.
    pub fn crossing() -> Partition {
        Partition::from_labels(2, &[0, 1, 1, 0])
    }

    /// The singleton `↑` in `P(0,1)`.
    pub fn singleton() -> Partition {
        Partition::from_labels(0, &[0])
    }

    /// The one-block partition `b_k` in `P(0,k)`.
    pub fn one_block(k: usize) -> Partition {
        Partition::from_labels(0, &vec![0; k])
    }

    pub fn upper_count(&self) -> usize {
        self.upper
    }

    pub fn lower_count(&self) -> usize {
        self.labels.len() - self.upper
    }

    pub fn points(&self) -> usize {
        self.labels.len()
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.upper_count(), self.lower_count())
    }

    /// Canonical block label of each point, upper row first.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn block_count(&self) -> usize {
        self.labels.iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted point lists, ordered by minimal element.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (i, &b) in self.labels.iter().enumerate() {
            blocks[b].push(i);
        }
        blocks
    }

    /// Multiset of block sizes, sorted ascending.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut counts = vec![0usize; self.block_count()];
        for &b in &self.labels {
            counts[b] += 1;
        }
        counts.sort_unstable();
        counts
    }

    pub fn is_pairing(&self) -> bool {
        self.block_sizes().iter().all(|&s| s == 2)
    }

    /// Parses the `"UPPER/LOWER"` notation: words over `a-z`, with equal
    /// letters marking equal blocks across both rows.
    pub fn parse(text: &str) -> Result<Partition> {
        let slash = text.find('/').ok_or_else(|| Error::Parse {
            pos: text.len(),
            msg: "missing '/' separator".into(),
        })?;
        if text[slash + 1..].contains('/') {
            let pos = slash + 1 + text[slash + 1..].find('/').unwrap();
            return Err(Error::Parse {
                pos,
                msg: "more than one '/' separator".into(),
            });
        }
        let mut raw = Vec::with_capacity(text.len() - 1);
        for (pos, ch) in text.char_indices() {
            if pos == slash {
                continue;
            }
            if !ch.is_ascii_lowercase() {
                return Err(Error::Parse {
                    pos,
                    msg: format!("expected letter a-z, found {ch:?}"),
                });
            }
            raw.push(ch as usize - 'a' as usize);
        }
        Ok(Partition::from_labels(slash, &raw))
    }

    /// Horizontal concatenation `p ⊗ q`.
    pub fn tensor(&self, q: &Partition) -> Partition {
        let shift = self.block_count();
        let mut raw = Vec::with_capacity(self.points() + q.points());
        raw.extend_from_slice(&self.labels[..self.upper]);
        raw.extend(q.labels[..q.upper].iter().map(|&b| b + shift));
        raw.extend_from_slice(&self.labels[self.upper..]);
        raw.extend(q.labels[q.upper..].iter().map(|&b| b + shift));
        Partition::from_labels(self.upper + q.upper, &raw)
    }

    /// Vertical concatenation `pq` (q on top): glues the lower row of `q`
    /// to the upper row of `self`. Returns the composite in
    /// `P(upper(q), lower(self))` together with the number of closed blocks.
    pub fn compose(&self, q: &Partition) -> Result<(Partition, usize)> {
        let m = self.upper_count();
        if q.lower_count() != m {
            return Err(Error::ArityMismatch {
                p: self.to_string(),
                p_upper: m,
                q: q.to_string(),
                q_lower: q.lower_count(),
            });
        }
        // union-find over q's points followed by self's points
        let total = q.points() + self.points();
        let mut uf = UnionFind::new(total);
        let off = q.points();
        for (i, &b) in q.labels.iter().enumerate() {
            for (j, &b2) in q.labels.iter().enumerate().skip(i + 1) {
                if b == b2 {
                    uf.union(i, j);
                }
            }
        }
        for (i, &b) in self.labels.iter().enumerate() {
            for (j, &b2) in self.labels.iter().enumerate().skip(i + 1) {
                if b == b2 {
                    uf.union(off + i, off + j);
                }
            }
        }
        for i in 0..m {
            uf.union(q.upper + i, off + i);
        }
        // result points: q's upper row, then self's lower row
        let mut result_nodes = Vec::with_capacity(q.upper + self.lower_count());
        result_nodes.extend(0..q.upper);
        result_nodes.extend((off + m)..total);
        let mut root_to_label: HashMap<usize, usize> = HashMap::new();
        let mut raw = Vec::with_capacity(result_nodes.len());
        for &node in &result_nodes {
            let root = uf.find(node);
            let next = root_to_label.len();
            raw.push(*root_to_label.entry(root).or_insert(next));
        }
        // closed blocks: classes with no point in the outer rows
        let mut open = vec![false; total];
        for &node in &result_nodes {
            open[uf.find(node)] = true;
        }
        let mut closed = 0;
        let mut seen = vec![false; total];
        for node in 0..total {
            let root = uf.find(node);
            if !seen[root] {
                seen[root] = true;
                if !open[root] {
                    closed += 1;
                }
            }
        }
        Ok((Partition::from_labels(q.upper, &raw), closed))
    }

    /// Upside-down turning `p*`: swaps the rows, giving `T_{p*} = T_p^*`.
    pub fn involution(&self) -> Partition {
        let (k, l) = self.shape();
        let mut raw = Vec::with_capacity(self.points());
        raw.extend_from_slice(&self.labels[k..]);
        raw.extend_from_slice(&self.labels[..k]);
        Partition::from_labels(l, &raw)
    }

    /// Single-step Frobenius rotation. `Left` moves the leftmost upper
    /// point to the leftmost lower position; `Right` is the inverse.
    pub fn rotate(&self, dir: Direction) -> Result<Partition> {
        let (k, l) = self.shape();
        match dir {
            Direction::Left => {
                if k == 0 {
                    return Err(Error::EmptyRotationRow);
                }
                let mut raw = Vec::with_capacity(self.points());
                raw.extend_from_slice(&self.labels[1..k]);
                raw.push(self.labels[0]);
                raw.extend_from_slice(&self.labels[k..]);
                Ok(Partition::from_labels(k - 1, &raw))
            }
            Direction::Right => {
                if l == 0 {
                    return Err(Error::EmptyRotationRow);
                }
                let mut raw = Vec::with_capacity(self.points());
                raw.push(self.labels[k]);
                raw.extend_from_slice(&self.labels[..k]);
                raw.extend_from_slice(&self.labels[k + 1..]);
                Ok(Partition::from_labels(k + 1, &raw))
            }
        }
    }

    /// Full counterclockwise rotation `p̄ ∈ P(0, k+l)`: the upper points
    /// end up reversed in front of the lower row.
    pub fn one_line(&self) -> Partition {
        let mut p = self.clone();
        while p.upper_count() > 0 {
            p = p.rotate(Direction::Left).expect("upper row nonempty");
        }
        p
    }

    /// The set-theoretic sup `p ∨ q`: finest partition coarser than both.
    pub fn join(&self, q: &Partition) -> Result<Partition> {
        if self.shape() != q.shape() {
            let (k1, l1) = self.shape();
            let (k2, l2) = q.shape();
            return Err(Error::ShapeMismatch { k1, l1, k2, l2 });
        }
        let n = self.points();
        let mut uf = UnionFind::new(n);
        for part in [self, q] {
            let mut first_of_block: HashMap<usize, usize> = HashMap::new();
            for (i, &b) in part.labels.iter().enumerate() {
                if let Some(&f) = first_of_block.get(&b) {
                    uf.union(f, i);
                } else {
                    first_of_block.insert(b, i);
                }
            }
        }
        let raw: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
        Ok(Partition::from_labels(self.upper, &raw))
    }

    /// True iff `q` refines `self` (every block of `q` sits inside a block
    /// of `self`). Both partitions must have the same shape.
    pub fn is_refined_by(&self, q: &Partition) -> Result<bool> {
        Ok(self.join(q)? == *self)
    }

    /// Noncrossing test, taken on the one-line rotation `p̄`.
    pub fn is_noncrossing(&self) -> bool {
        let line = if self.upper == 0 {
            self.clone()
        } else {
            self.one_line()
        };
        let w = &line.labels;
        let _m = w.len();
        let mut last = vec![0usize; line.block_count()];
        let mut first = vec![usize::MAX; line.block_count()];
        for (i, &b) in w.iter().enumerate() {
            last[b] = i;
            if first[b] == usize::MAX {
                first[b] = i;
            }
        }
        let mut stack: Vec<usize> = Vec::new();
        for (i, &b) in w.iter().enumerate() {
            if first[b] == i {
                stack.push(b);
            } else if stack.last() != Some(&b) {
                return false;
            }
            if last[b] == i {
                if stack.last() == Some(&b) {
                    stack.pop();
                } else {
                    return false;
                }
            }
        }
        true
    }

    /// For a pairing, the number of other strings crossing each string,
    /// counted on the one-line rotation and indexed by the blocks of
    /// `self` in canonical order.
    pub fn string_crossings(&self) -> Result<Vec<usize>> {
        if let Some(&s) = self.block_sizes().iter().find(|&&s| s != 2) {
            return Err(Error::NotAPairing { size: s });
        }
        let k = self.upper;
        let m = self.points();
        // position of each point after full rotation: upper reversed, then lower
        let pos = |point: usize| -> usize {
            if point < k {
                k - 1 - point
            } else {
                point
            }
        };
        let nblocks = self.block_count();
        let mut ends = vec![(usize::MAX, usize::MAX); nblocks];
        for point in 0..m {
            let b = self.labels[point];
            let p = pos(point);
            if ends[b].0 == usize::MAX {
                ends[b] = (p, p);
            } else if p < ends[b].0 {
                ends[b].0 = p;
            } else {
                ends[b].1 = p;
            }
        }
        let mut crossings = vec![0usize; nblocks];
        for a in 0..nblocks {
            for b in (a + 1)..nblocks {
                let (a1, a2) = ends[a];
                let (b1, b2) = ends[b];
                let cross = (a1 < b1 && b1 < a2 && a2 < b2) || (b1 < a1 && a1 < b2 && b2 < a2);
                if cross {
                    crossings[a] += 1;
                    crossings[b] += 1;
                }
            }
        }
        Ok(crossings)
    }

    /// Crossing parity per string: `true` means even.
    pub fn crossing_parities(&self) -> Result<Vec<bool>> {
        Ok(self
            .string_crossings()?
            .into_iter()
            .map(|c| c % 2 == 0)
            .collect())
    }

    /// True iff every string crosses an even number of other strings.
    pub fn has_even_crossings(&self) -> Result<bool> {
        Ok(self.crossing_parities()?.into_iter().all(|p| p))
    }

    /// `δ_p(i,j)`: 1 iff the indices are constant on every block. Upper
    /// indices `i` have length `k`, lower indices `j` length `l`, entries
    /// in `1..=n`.
    pub fn delta(&self, i: &[usize], j: &[usize], n: usize) -> Result<bool> {
        let (k, l) = self.shape();
        if i.len() != k || j.len() != l {
            return Err(Error::BadMultiIndex {
                msg: format!(
                    "index lengths ({},{}) do not match shape ({k},{l})",
                    i.len(),
                    j.len()
                ),
            });
        }
        for &x in i.iter().chain(j.iter()) {
            if x < 1 || x > n {
                return Err(Error::BadMultiIndex {
                    msg: format!("entry {x} outside 1..={n}"),
                });
            }
        }
        let mut assigned = vec![usize::MAX; self.block_count()];
        for (point, &b) in self.labels.iter().enumerate() {
            let v = if point < k { i[point] } else { j[point - k] };
            if assigned[b] == usize::MAX {
                assigned[b] = v;
            } else if assigned[b] != v {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All partitions of `P(k,l)` in canonical (lexicographic) order.
    pub fn enumerate(k: usize, l: usize) -> Result<PartitionIter> {
        Self::enumerate_bounded(k, l, DEFAULT_POINT_BOUND)
    }

    pub fn enumerate_bounded(k: usize, l: usize, bound: usize) -> Result<PartitionIter> {
        if k + l > bound {
            return Err(Error::BoundExceeded {
                requested: k + l,
                bound,
            });
        }
        Ok(PartitionIter {
            upper: k,
            rgs: Some(vec![0; k + l]),
        })
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &b) in self.labels.iter().enumerate() {
            if i == self.upper {
                write!(f, "/")?;
            }
            write!(f, "{}", (b'a' + b as u8) as char)?;
        }
        if self.labels.len() == self.upper {
            write!(f, "/")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Partition({self})")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Partition> {
        Partition::parse(s)
    }
}

/// Lazy enumeration of restricted growth strings in lexicographic order.
pub struct PartitionIter {
    upper: usize,
    rgs: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let a = self.rgs.as_mut()?;
        let current = Partition {
            upper: self.upper,
            labels: a.clone(),
        };
        // advance to the next RGS: rightmost position that can grow
        let n = a.len();
        let mut advanced = false;
        if n > 1 {
            let mut prefix_max = vec![0usize; n];
            for i in 1..n {
                prefix_max[i] = prefix_max[i - 1].max(a[i - 1]);
            }
            for i in (1..n).rev() {
                if a[i] <= prefix_max[i] {
                    a[i] += 1;
                    for x in a[i + 1..].iter_mut() {
                        *x = 0;
                    }
                    advanced = true;
                    break;
                }
            }
        }
        if !advanced {
            self.rgs = None;
        }
        Some(current)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn parse_basic() {
        assert_eq!(p("/aa"), Partition::duality());
        assert_eq!(p("a/a"), Partition::unit());
        let q = p("abc/cba");
        assert_eq!(q.shape(), (3, 3));
        assert_eq!(q.blocks(), vec![vec![0, 5], vec![1, 4], vec![2, 3]]);
    }

    #[test]
    fn parse_canonicalizes() {
        assert_eq!(p("/ba").to_string(), "/ab");
        assert_eq!(p("zz/z").to_string(), "aa/a");
        assert_eq!(p("/").to_string(), "/");
    }

    #[test]
    fn parse_errors_carry_position() {
        match Partition::parse("ab!c/abc") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(Partition::parse("abc").is_err());
        assert!(Partition::parse("a/b/c").is_err());
    }

    #[test]
    fn tensor_examples() {
        assert_eq!(p("/a").tensor(&p("/a")), p("/ab"));
        assert_eq!(p("a/a").tensor(&p("a/a")), p("ab/ab"));
        assert_eq!(p("/aa").tensor(&p("a/a")), p("a/bba"));
    }

    #[test]
    fn compose_examples() {
        // cap and cup: one closed loop
        let (r, b) = p("aa/").compose(&p("/aa")).unwrap();
        assert_eq!(r, Partition::empty());
        assert_eq!(b, 1);
        // the unit acts as the identity
        let (r, b) = p("a/a").compose(&p("/a")).unwrap();
        assert_eq!(r, p("/a"));
        assert_eq!(b, 0);
        // b_{k-l} = (b_l* ⊗ |^(k-l)) b_k with k=3, l=2
        let capper = p("aa/").tensor(&p("a/a"));
        assert_eq!(capper, p("aab/b"));
        let (r, b) = capper.compose(&Partition::one_block(3)).unwrap();
        assert_eq!(r, p("/a"));
        assert_eq!(b, 0);
        assert!(p("a/a").compose(&p("/aa")).is_err());
    }

    #[test]
    fn involution_examples() {
        assert_eq!(p("/aa").involution(), p("aa/"));
        assert_eq!(p("a/a").involution(), p("a/a"));
        assert_eq!(p("abc/cba").involution(), p("abc/cba"));
    }

    #[test]
    fn rotation_examples() {
        assert_eq!(p("a/a").one_line(), p("/aa"));
        assert_eq!(p("/aa").one_line(), p("/aa"));
        assert_eq!(p("aa/").one_line(), p("/aa"));
        // the basic crossing rotates to the one-line crossing pattern
        assert_eq!(Partition::crossing().one_line(), p("/abab"));
        assert!(p("/aa").rotate(Direction::Left).is_err());
        assert!(p("aa/").rotate(Direction::Right).is_err());
    }

    #[test]
    fn rotate_left_right_inverse() {
        for q in Partition::enumerate(2, 2).unwrap() {
            let r = q.rotate(Direction::Left).unwrap();
            assert_eq!(r.rotate(Direction::Right).unwrap(), q);
        }
    }

    #[test]
    fn join_examples() {
        assert_eq!(p("/aa").join(&p("/ab")).unwrap(), p("/aa"));
        assert_eq!(p("/aabb").join(&p("/abba")).unwrap(), p("/aaaa"));
        let q = p("ab/ba");
        assert_eq!(q.join(&q).unwrap(), q);
        assert!(p("/aa").join(&p("a/a")).is_err());
    }

    #[test]
    fn block_statistics() {
        assert_eq!(p("/aaaa").block_count(), 1);
        assert_eq!(p("/abab").block_count(), 2);
        assert_eq!(p("a/bba").block_sizes(), vec![2, 2]);
    }

    #[test]
    fn noncrossing_examples() {
        assert!(!p("/abab").is_noncrossing());
        assert!(p("/abba").is_noncrossing());
        assert!(p("/aabaa").is_noncrossing());
        assert!(!p("/ababa").is_noncrossing());
        // the basic crossing stays crossing under rotation
        assert!(!p("ab/ba").is_noncrossing());
        assert!(p("ab/ab").is_noncrossing());
    }

    #[test]
    fn crossing_parity_examples() {
        let q = p("/abcabc");
        assert_eq!(q.string_crossings().unwrap(), vec![2, 2, 2]);
        assert!(q.has_even_crossings().unwrap());
        assert_eq!(p("/abab").string_crossings().unwrap(), vec![1, 1]);
        assert!(!p("/abab").has_even_crossings().unwrap());
        assert!(p("/aabb").has_even_crossings().unwrap());
        assert!(p("/aaa").string_crossings().is_err());
    }

    #[test]
    fn delta_examples() {
        let unit = p("a/a");
        assert!(unit.delta(&[1], &[1], 3).unwrap());
        assert!(!unit.delta(&[1], &[2], 3).unwrap());
        let cap = p("/aa");
        assert!(cap.delta(&[], &[2, 2], 3).unwrap());
        assert!(!cap.delta(&[], &[1, 2], 3).unwrap());
        assert!(p("ab/ab").delta(&[1, 2], &[1, 2], 3).unwrap());
        assert!(!p("ab/ab").delta(&[1, 2], &[2, 1], 3).unwrap());
        assert!(unit.delta(&[1, 2], &[1], 3).is_err());
        assert!(unit.delta(&[4], &[4], 3).is_err());
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(Partition::enumerate(0, 4).unwrap().count(), 15);
        assert_eq!(
            Partition::enumerate(0, 6)
                .unwrap()
                .filter(|q| q.is_pairing())
                .count(),
            15
        );
        assert_eq!(
            Partition::enumerate(0, 4)
                .unwrap()
                .filter(|q| q.is_noncrossing())
                .count(),
            14
        );
        assert!(Partition::enumerate(8, 8).is_err());
    }

    #[test]
    fn enumeration_is_sorted_and_starts_at_one_block() {
        let all: Vec<Partition> = Partition::enumerate(1, 3).unwrap().collect();
        assert_eq!(all.len(), 15);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
        assert_eq!(all[0], p("a/aaa"));
    }

    #[test]
    fn delta_respects_rotation() {
        let q = p("ab/ba");
        for i1 in 1..=2 {
            for i2 in 1..=2 {
                for j1 in 1..=2 {
                    for j2 in 1..=2 {
                        let d = q.delta(&[i1, i2], &[j1, j2], 2).unwrap();
                        // one-line order: reversed upper, then lower
                        let d2 = q.one_line().delta(&[], &[i2, i1, j1, j2], 2).unwrap();
                        assert_eq!(d, d2);
                    }
                }
            }
        }
    }
}
