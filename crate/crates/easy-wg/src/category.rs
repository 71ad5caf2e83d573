//! Named categories of partitions, the bounded closure (generation)
//! engine, and desk-scale classification checks.
//!
//! The thirteen named categories are the six classical ones (all pairings,
//! all partitions, even-size blocks, blocks of size at most two, and the
//! even parts of the latter two families), their six noncrossing
//! restrictions, and the half-liberated category of pairings in which
//! every string crosses an even number of other strings.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::{Direction, Partition};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Family {
    O,
    S,
    H,
    B,
    SPrime,
    BPrime,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::O,
        Family::S,
        Family::H,
        Family::B,
        Family::SPrime,
        Family::BPrime,
    ];

    fn symbol(self) -> &'static str {
        match self {
            Family::O => "o",
            Family::S => "s",
            Family::H => "h",
            Family::B => "b",
            Family::SPrime => "s'",
            Family::BPrime => "b'",
        }
    }

    /// Block-size test of the family, before any noncrossing restriction.
    fn admits(self, p: &Partition) -> bool {
        match self {
            Family::O => p.block_sizes().iter().all(|&s| s == 2),
            Family::S => true,
            Family::H => p.block_sizes().iter().all(|&s| s % 2 == 0),
            Family::B => p.block_sizes().iter().all(|&s| s <= 2),
            Family::SPrime => p.points().is_multiple_of(2),
            Family::BPrime => {
                let sizes = p.block_sizes();
                sizes.iter().all(|&s| s <= 2) && sizes.iter().filter(|&&s| s == 1).count() % 2 == 0
            }
        }
    }
}

/// One of the thirteen named categories.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum CategoryId {
    Classical(Family),
    Free(Family),
    HalfLiberated,
}

impl CategoryId {
    pub fn all() -> Vec<CategoryId> {
        let mut out = Vec::with_capacity(13);
        out.extend(Family::ALL.iter().map(|&f| CategoryId::Classical(f)));
        out.extend(Family::ALL.iter().map(|&f| CategoryId::Free(f)));
        out.push(CategoryId::HalfLiberated);
        out
    }

    pub fn is_classical(self) -> bool {
        matches!(self, CategoryId::Classical(_))
    }

    pub fn is_free(self) -> bool {
        matches!(self, CategoryId::Free(_))
    }

    /// Membership predicate of the category.
    pub fn contains(self, p: &Partition) -> bool {
        match self {
            CategoryId::Classical(f) => f.admits(p),
            CategoryId::Free(f) => f.admits(p) && p.is_noncrossing(),
            CategoryId::HalfLiberated => p.is_pairing() && p.has_even_crossings().unwrap_or(false),
        }
    }

    /// The noncrossing counterpart of a classical category.
    pub fn noncrossing_of(self) -> Option<CategoryId> {
        match self {
            CategoryId::Classical(f) => Some(CategoryId::Free(f)),
            _ => None,
        }
    }

    /// All members of `P(k,l)` in canonical order.
    pub fn enumerate(self, k: usize, l: usize) -> Result<Vec<Partition>> {
        Ok(Partition::enumerate(k, l)?
            .filter(|p| self.contains(p))
            .collect())
    }

    /// All members with at most `bound` points, over every `(k,l)` split.
    pub fn restriction(self, bound: usize) -> Result<BTreeSet<Partition>> {
        let mut out = BTreeSet::new();
        for m in 0..=bound {
            for k in 0..=m {
                for p in Partition::enumerate(k, m - k)? {
                    if self.contains(&p) {
                        out.insert(p);
                    }
                }
            }
        }
        Ok(out)
    }
}

impl fmt::Display for CategoryId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CategoryId::Classical(fam) => write!(f, "{}", fam.symbol()),
            CategoryId::Free(fam) => write!(f, "{}+", fam.symbol()),
            CategoryId::HalfLiberated => write!(f, "o*"),
        }
    }
}

impl std::str::FromStr for CategoryId {
    type Err = Error;

    fn from_str(s: &str) -> Result<CategoryId> {
        let lower = s.to_ascii_lowercase();
        if lower == "o*" {
            return Ok(CategoryId::HalfLiberated);
        }
        let (base, free) = match lower.strip_suffix('+') {
            Some(b) => (b, true),
            None => (lower.as_str(), false),
        };
        let fam = match base {
            "o" => Family::O,
            "s" => Family::S,
            "h" => Family::H,
            "b" => Family::B,
            "s'" => Family::SPrime,
            "b'" => Family::BPrime,
            _ => return Err(Error::UnknownCategory(s.to_string())),
        };
        Ok(if free {
            CategoryId::Free(fam)
        } else {
            CategoryId::Classical(fam)
        })
    }
}

/// Name of the extra noncrossing category generated by the double
/// singleton. It sits strictly between `b'+` and the closure of its own
/// generators and is not one of the thirteen named categories.
pub const NEST_EVEN_NAME: &str = "b#+";

/// Membership test of the [`NEST_EVEN_NAME`] category: noncrossing,
/// blocks of size at most two, an even number of singletons in total,
/// and an even number of singletons nested between the legs of every
/// pair. The bounded closure of the double singleton matches this
/// predicate exactly at every point bound tried (6, 8 and 10).
pub fn nest_even_contains(p: &Partition) -> bool {
    if !p.is_noncrossing() {
        return false;
    }
    let line = p.one_line();
    let labels = line.labels();
    let mut sizes: HashMap<usize, usize> = HashMap::new();
    for &b in labels {
        *sizes.entry(b).or_insert(0) += 1;
    }
    if sizes.values().any(|&s| s > 2) {
        return false;
    }
    if sizes.values().filter(|&&s| s == 1).count() % 2 != 0 {
        return false;
    }
    for (&blk, &sz) in &sizes {
        if sz == 2 {
            let mut legs = (0..labels.len()).filter(|&i| labels[i] == blk);
            let (a, b) = (legs.next().unwrap(), legs.next().unwrap());
            let nested = (a + 1..b).filter(|&i| sizes[&labels[i]] == 1).count();
            if nested % 2 != 0 {
                return false;
            }
        }
    }
    true
}

/// All members of the [`NEST_EVEN_NAME`] category with at most `bound`
/// points, over every `(k,l)` split.
pub fn nest_even_restriction(bound: usize) -> Result<BTreeSet<Partition>> {
    let mut out = BTreeSet::new();
    for m in 0..=bound {
        for k in 0..=m {
            for p in Partition::enumerate_bounded(k, m - k, bound)? {
                if nest_even_contains(&p) {
                    out.insert(p);
                }
            }
        }
    }
    Ok(out)
}

/// Restricts a membership predicate to its even part (`k+l` even).
pub fn even_part<F>(pred: F) -> impl Fn(&Partition) -> bool
where
    F: Fn(&Partition) -> bool,
{
    move |p: &Partition| p.points().is_multiple_of(2) && pred(p)
}

/// Input to the bounded closure engine.
#[derive(Clone, Debug)]
pub struct ClosureSpec {
    pub generators: Vec<Partition>,
    /// Whether the basic crossing is included as an axiom.
    pub crossing_axiom: bool,
    /// Hard cap on the number of points of every element kept.
    pub point_bound: usize,
}

/// Result of a bounded closure run. `complete` is false when the element
/// cap was hit; in either case the set is an under-approximation of the
/// true (infinite) closure restricted to the point bound.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub set: BTreeSet<Partition>,
    pub complete: bool,
}

pub const DEFAULT_CLOSURE_CAP: usize = 200_000;

/// Bounded least fixed point containing the generators and the axioms,
/// closed under involution, rotation, tensor and composition, with every
/// element kept at most `point_bound` points.
pub fn closure(spec: &ClosureSpec) -> Result<ClosureResult> {
    closure_capped(spec, DEFAULT_CLOSURE_CAP, None)
}

/// Like [`closure`], with an explicit element cap and an optional target
/// set: the run stops early (reporting `complete = false`) once every
/// target is present.
pub fn closure_capped(
    spec: &ClosureSpec,
    cap: usize,
    targets: Option<&[Partition]>,
) -> Result<ClosureResult> {
    for g in &spec.generators {
        if g.points() > spec.point_bound {
            return Err(Error::BoundExceeded {
                requested: g.points(),
                bound: spec.point_bound,
            });
        }
    }
    let mut seeds = vec![Partition::unit(), Partition::duality()];
    if spec.crossing_axiom {
        seeds.push(Partition::crossing());
    }
    seeds.extend(spec.generators.iter().cloned());
    seeds.retain(|p| p.points() <= spec.point_bound);

    let mut set: BTreeSet<Partition> = BTreeSet::new();
    let mut list: Vec<Partition> = Vec::new();
    // buckets for pairing candidates: by upper arity, by lower arity, by size
    let mut by_upper: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut by_lower: HashMap<usize, Vec<usize>> = HashMap::new();
    let mut missing: BTreeSet<Partition> = targets
        .map(|t| t.iter().cloned().collect())
        .unwrap_or_default();

    let push = |p: Partition,
                set: &mut BTreeSet<Partition>,
                list: &mut Vec<Partition>,
                by_upper: &mut HashMap<usize, Vec<usize>>,
                by_lower: &mut HashMap<usize, Vec<usize>>,
                missing: &mut BTreeSet<Partition>| {
        if p.points() <= spec.point_bound && set.insert(p.clone()) {
            missing.remove(&p);
            by_upper
                .entry(p.upper_count())
                .or_default()
                .push(list.len());
            by_lower
                .entry(p.lower_count())
                .or_default()
                .push(list.len());
            list.push(p);
        }
    };

    for s in seeds {
        push(
            s,
            &mut set,
            &mut list,
            &mut by_upper,
            &mut by_lower,
            &mut missing,
        );
    }

    let mut i = 0;
    let mut complete = true;
    'outer: while i < list.len() {
        if targets.is_some() && missing.is_empty() {
            complete = false;
            break;
        }
        if list.len() > cap {
            complete = false;
            break;
        }
        let x = list[i].clone();
        let mut fresh: Vec<Partition> = Vec::new();
        fresh.push(x.involution());
        if let Ok(r) = x.rotate(Direction::Left) {
            fresh.push(r);
        }
        if let Ok(r) = x.rotate(Direction::Right) {
            fresh.push(r);
        }
        // tensor with every current element small enough
        for y in list.iter().take(i + 1) {
            if x.points() + y.points() <= spec.point_bound {
                fresh.push(x.tensor(y));
                fresh.push(y.tensor(&x));
            }
        }
        // compose(x, y): upper(x) == lower(y)
        if let Some(idxs) = by_lower.get(&x.upper_count()) {
            for &j in idxs {
                if j > i {
                    continue;
                }
                if let Ok((r, _)) = x.compose(&list[j]) {
                    if r.points() <= spec.point_bound {
                        fresh.push(r);
                    }
                }
            }
        }
        // compose(y, x): upper(y) == lower(x)
        if let Some(idxs) = by_upper.get(&x.lower_count()) {
            for &j in idxs {
                if j > i {
                    continue;
                }
                if let Ok((r, _)) = list[j].compose(&x) {
                    if r.points() <= spec.point_bound {
                        fresh.push(r);
                    }
                }
            }
        }
        for p in fresh {
            push(
                p,
                &mut set,
                &mut list,
                &mut by_upper,
                &mut by_lower,
                &mut missing,
            );
            if list.len() > cap {
                complete = false;
                break 'outer;
            }
        }
        i += 1;
    }
    Ok(ClosureResult { set, complete })
}

/// Runs the closure until all `targets` are generated; true iff they are.
pub fn closure_reaches(spec: &ClosureSpec, targets: &[Partition]) -> Result<bool> {
    let res = closure_capped(spec, DEFAULT_CLOSURE_CAP, Some(targets))?;
    Ok(targets.iter().all(|t| res.set.contains(t)))
}

/// One classified generator in a [`ClassificationReport`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationEntry {
    pub generator: String,
    pub axiom_set: String,
    pub bound: usize,
    pub identified_as: String,
    pub closure_size: usize,
    /// Set when the closure matches the half-liberated restriction.
    pub half_liberated: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub bound: usize,
    pub with_crossing: bool,
    pub entries: Vec<ClassificationEntry>,
    pub unidentified: usize,
}

/// Identifies the bounded closure of a single generator against the named
/// category restrictions at the same bound.
pub fn classify_generator(
    generator: &Partition,
    with_crossing: bool,
    bound: usize,
) -> Result<ClassificationEntry> {
    let candidates = candidate_restrictions(with_crossing, bound)?;
    classify_with_candidates(generator, with_crossing, bound, &candidates)
}

fn candidate_restrictions(
    with_crossing: bool,
    bound: usize,
) -> Result<Vec<(String, BTreeSet<Partition>)>> {
    let ids: Vec<CategoryId> = if with_crossing {
        Family::ALL
            .iter()
            .map(|&f| CategoryId::Classical(f))
            .collect()
    } else {
        let mut v: Vec<CategoryId> = Family::ALL.iter().map(|&f| CategoryId::Free(f)).collect();
        v.push(CategoryId::HalfLiberated);
        // a crossing generator may regenerate a classical category
        v.extend(Family::ALL.iter().map(|&f| CategoryId::Classical(f)));
        v
    };
    let mut out: Vec<(String, BTreeSet<Partition>)> = ids
        .iter()
        .map(|&c| Ok((c.to_string(), c.restriction(bound)?)))
        .collect::<Result<_>>()?;
    if !with_crossing {
        out.push((NEST_EVEN_NAME.to_string(), nest_even_restriction(bound)?));
    }
    Ok(out)
}

fn classify_with_candidates(
    generator: &Partition,
    with_crossing: bool,
    bound: usize,
    candidates: &[(String, BTreeSet<Partition>)],
) -> Result<ClassificationEntry> {
    let spec = ClosureSpec {
        generators: vec![generator.clone()],
        crossing_axiom: with_crossing,
        point_bound: bound,
    };
    let res = closure(&spec)?;
    let mut identified: Option<&str> = None;
    for (name, restriction) in candidates {
        if res.set == *restriction {
            identified = Some(name);
            break;
        }
    }
    Ok(ClassificationEntry {
        generator: generator.to_string(),
        axiom_set: if with_crossing {
            "with-crossing".into()
        } else {
            "without-crossing".into()
        },
        bound,
        identified_as: identified.unwrap_or("unidentified").to_string(),
        closure_size: res.set.len(),
        half_liberated: identified == Some("o*"),
        complete: res.complete,
    })
}

/// Classifies every singly-generated bounded closure. With the crossing
/// axiom all partitions of at most `bound` points act as generators; in
/// the noncrossing run only the noncrossing ones do. Closures are computed
/// once per one-line rotation class.
pub fn verify_classification(bound: usize, with_crossing: bool) -> Result<ClassificationReport> {
    let candidates = candidate_restrictions(with_crossing, bound)?;
    let mut memo: HashMap<Partition, ClassificationEntry> = HashMap::new();
    let mut entries = Vec::new();
    for m in 0..=bound {
        for k in 0..=m {
            for p in Partition::enumerate(k, m - k)? {
                if !with_crossing && !p.is_noncrossing() {
                    continue;
                }
                let rep = p.one_line();
                let base = match memo.get(&rep) {
                    Some(e) => e.clone(),
                    None => {
                        let e = classify_with_candidates(&rep, with_crossing, bound, &candidates)?;
                        memo.insert(rep, e.clone());
                        e
                    }
                };
                entries.push(ClassificationEntry {
                    generator: p.to_string(),
                    ..base
                });
            }
        }
    }
    let unidentified = entries
        .iter()
        .filter(|e| e.identified_as == "unidentified")
        .count();
    Ok(ClassificationReport {
        bound,
        with_crossing,
        entries,
        unidentified,
    })
}

/// Extensional check of `NC_g = P_g ∧ noncrossing` up to `bound` points.
pub fn nc_intersection_check(family: Family, bound: usize) -> Result<bool> {
    let classical = CategoryId::Classical(family);
    let free = CategoryId::Free(family);
    for m in 0..=bound {
        for k in 0..=m {
            for p in Partition::enumerate(k, m - k)? {
                let lhs = free.contains(&p);
                let rhs = classical.contains(&p) && p.is_noncrossing();
                if lhs != rhs {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Checks that the noncrossing members of at most `gen_bound` points,
/// together with the basic crossing, regenerate the classical restriction
/// at `check_bound`.
pub fn regenerates_classical(family: Family, gen_bound: usize, check_bound: usize) -> Result<bool> {
    let free = CategoryId::Free(family);
    let generators: Vec<Partition> = free.restriction(gen_bound)?.into_iter().collect();
    let spec = ClosureSpec {
        generators,
        crossing_axiom: true,
        point_bound: check_bound,
    };
    let res = closure(&spec)?;
    let target = CategoryId::Classical(family).restriction(check_bound)?;
    Ok(res.complete && res.set == target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        Partition::parse(s).unwrap()
    }

    #[test]
    fn membership_examples() {
        let h = CategoryId::Classical(Family::H);
        assert!(h.contains(&p("/aaaa")));
        assert!(!h.contains(&p("/a")));
        let sp = CategoryId::Classical(Family::SPrime);
        assert!(sp.contains(&p("/ab")));
        assert!(!sp.contains(&p("/a")));
        let half = CategoryId::HalfLiberated;
        assert!(half.contains(&p("/abcabc")));
        assert!(!half.contains(&p("/abab")));
        assert!(!half.contains(&p("/aaaa")));
    }

    #[test]
    fn category_names_round_trip() {
        for c in CategoryId::all() {
            let s = c.to_string();
            assert_eq!(s.parse::<CategoryId>().unwrap(), c);
        }
        assert!("x".parse::<CategoryId>().is_err());
    }

    #[test]
    fn basis_counts() {
        assert_eq!(
            CategoryId::Classical(Family::O)
                .enumerate(0, 4)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(
            CategoryId::Free(Family::S).enumerate(0, 4).unwrap().len(),
            14
        );
        assert_eq!(
            CategoryId::Classical(Family::BPrime)
                .enumerate(0, 4)
                .unwrap()
                .len(),
            10
        );
        assert_eq!(
            CategoryId::Classical(Family::BPrime)
                .enumerate(0, 3)
                .unwrap()
                .len(),
            0
        );
    }

    #[test]
    fn even_part_examples() {
        let all = |_: &Partition| true;
        let even = even_part(all);
        assert!(!even(&p("/a")));
        assert!(even(&p("/ab")));
        let twice = even_part(even_part(all));
        for q in Partition::enumerate(0, 3).unwrap() {
            assert_eq!(twice(&q), even_part(all)(&q));
        }
    }

    #[test]
    fn closure_of_axioms_is_all_pairings() {
        let spec = ClosureSpec {
            generators: vec![],
            crossing_axiom: true,
            point_bound: 6,
        };
        let res = closure(&spec).unwrap();
        assert!(res.complete);
        let pairings = CategoryId::Classical(Family::O).restriction(6).unwrap();
        assert_eq!(res.set, pairings);
    }

    #[test]
    fn closure_without_crossing_is_noncrossing_pairings() {
        let spec = ClosureSpec {
            generators: vec![],
            crossing_axiom: false,
            point_bound: 6,
        };
        let res = closure(&spec).unwrap();
        let nc_pairings = CategoryId::Free(Family::O).restriction(6).unwrap();
        assert_eq!(res.set, nc_pairings);
    }

    #[test]
    fn closure_of_b4_reaches_b2_and_b6() {
        let spec = ClosureSpec {
            generators: vec![Partition::one_block(4)],
            crossing_axiom: true,
            point_bound: 8,
        };
        let targets = [Partition::one_block(2), Partition::one_block(6)];
        assert!(closure_reaches(&spec, &targets).unwrap());
    }

    #[test]
    fn classify_named_generators() {
        // the duality partition alone gives the pairings
        let e = classify_generator(&p("/aa"), false, 6).unwrap();
        assert_eq!(e.identified_as, "o+");
        // a one-block 4-partition generates the even-block category
        let e = classify_generator(&p("/aaaa"), true, 4).unwrap();
        assert_eq!(e.identified_as, "h");
        // the one-line crossing is not identified with a noncrossing category
        let e = classify_generator(&p("/abab"), false, 6).unwrap();
        assert_eq!(e.identified_as, "o");
        // the double singleton generates the extra noncrossing category,
        // a strict subcategory of b'+
        let e = classify_generator(&p("/ab"), false, 6).unwrap();
        assert_eq!(e.identified_as, NEST_EVEN_NAME);
    }

    #[test]
    fn nest_even_category_facts() {
        assert!(nest_even_contains(&p("/ab")));
        assert!(nest_even_contains(&p("/aabb")));
        assert!(nest_even_contains(&p("/abba")));
        assert!(nest_even_contains(&p("/abbacd")));
        // a singleton nested an odd number of times inside a pair
        assert!(!nest_even_contains(&p("/abac")));
        assert!(!nest_even_contains(&p("/abcb")));
        // blocks of size three and odd singleton counts are excluded
        assert!(!nest_even_contains(&p("/aaa")));
        assert!(!nest_even_contains(&p("/a")));
        // strict inclusion inside b'+ already at four points
        let bp = CategoryId::Free(Family::BPrime).restriction(4).unwrap();
        let ne = nest_even_restriction(4).unwrap();
        assert!(ne.is_subset(&bp));
        assert!(ne.len() < bp.len());
        // closed under the category operations: closure of the restriction
        // reproduces the restriction
        let spec = ClosureSpec {
            generators: ne.iter().cloned().collect(),
            crossing_axiom: false,
            point_bound: 6,
        };
        let res = closure(&spec).unwrap();
        assert!(res.complete);
        assert_eq!(res.set, nest_even_restriction(6).unwrap());
    }

    #[test]
    fn nc_is_classical_and_noncrossing() {
        for f in Family::ALL {
            assert!(nc_intersection_check(f, 6).unwrap());
        }
    }
}
