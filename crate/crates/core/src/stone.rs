//! Finite Boolean-algebra packages and clopen-set bookkeeping.
//!
//! For a graph with finitely many ends, the clopen subsets of the end pair
//! (all ends, loop-accumulating ends) form a pair of finite Boolean
//! algebras joined by the restriction map, and a rank tag. Equivalence of
//! descriptors is then isomorphism of these finite structures, which this
//! module decides by brute force over atom bijections — no peeking at how
//! the algebras were built: carriers are opaque labels and the operations
//! are tables.
//!
//! The module also enumerates clopen subsets of the binary sequence space
//! as reduced word antichains: no listed word is a prefix of another and no
//! two siblings `w0`, `w1` are both listed (they would merge into `w`). The
//! enumeration is ordered by total cost (sum of `|w| + 1`) and then
//! lexicographically, with the empty set first and the full space second.

use std::collections::BTreeMap;

/// A finite Boolean algebra as explicit tables. Element labels are opaque;
/// packages built side by side use disjoint (even/odd) label ranges so the
/// two carriers can never be confused.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBoolAlg {
    pub elements: Vec<u64>,
    pub meet: Vec<Vec<u16>>,
    pub join: Vec<Vec<u16>>,
    pub compl: Vec<u16>,
    pub bot: u16,
    pub top: u16,
}

impl FiniteBoolAlg {
    /// The powerset algebra on `atom_count` atoms. `tag` must be 0 or 1 and
    /// sets label parity.
    pub fn powerset(atom_count: u32, tag: u64) -> FiniteBoolAlg {
        assert!(tag < 2);
        assert!(atom_count <= 8, "tables would be enormous");
        let size = 1usize << atom_count;
        let full = (size - 1) as u64;
        let elements = (0..size as u64).map(|m| 2 * m + tag).collect();
        let mut meet = vec![vec![0u16; size]; size];
        let mut join = vec![vec![0u16; size]; size];
        for a in 0..size {
            for b in 0..size {
                meet[a][b] = (a & b) as u16;
                join[a][b] = (a | b) as u16;
            }
        }
        let compl = (0..size).map(|a| (a as u64 ^ full) as u16).collect();
        FiniteBoolAlg {
            elements,
            meet,
            join,
            compl,
            bot: 0,
            top: (size - 1) as u16,
        }
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Atoms read off the tables: nonzero elements whose meets are trivial.
    pub fn atoms(&self) -> Vec<u16> {
        (0..self.size() as u16)
            .filter(|&x| {
                x != self.bot
                    && (0..self.size() as u16)
                        .all(|y| [self.bot, x].contains(&self.meet[y as usize][x as usize]))
            })
            .collect()
    }

    /// Atom support of an element, in atom-list order.
    fn support(&self, x: u16, atoms: &[u16]) -> Vec<usize> {
        atoms
            .iter()
            .enumerate()
            .filter(|(_, &a)| self.meet[x as usize][a as usize] == a)
            .map(|(i, _)| i)
            .collect()
    }
}

/// The full structure: end algebra, loop-end algebra, restriction map,
/// and the rank tag (`rank + 1` for finite rank, `0` for infinite).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StonePackage {
    pub algebra: FiniteBoolAlg,
    pub loop_algebra: FiniteBoolAlg,
    /// Index map: restriction (intersection with the loop-end set).
    pub restrict: Vec<u16>,
    pub rank_tag: u32,
}

/// Package for a finite end pair: `ends` points of which the first
/// `loop_ends` accumulate loops.
pub fn finite_pair_package(rank_tag: u32, ends: u32, loop_ends: u32) -> StonePackage {
    assert!(loop_ends <= ends);
    let algebra = FiniteBoolAlg::powerset(ends, 0);
    let loop_algebra = FiniteBoolAlg::powerset(loop_ends, 1);
    let loop_mask = (1u32 << loop_ends) - 1;
    let restrict = (0..1u32 << ends).map(|m| (m & loop_mask) as u16).collect();
    StonePackage {
        algebra,
        loop_algebra,
        restrict,
        rank_tag,
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..n {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Extends an atom bijection to an element map `a -> b`, or fails when the
/// supports do not line up.
fn extend_atom_map(
    a: &FiniteBoolAlg,
    b: &FiniteBoolAlg,
    a_atoms: &[u16],
    b_atoms: &[u16],
    perm: &[usize],
) -> Option<Vec<u16>> {
    let mut by_support: BTreeMap<Vec<usize>, u16> = BTreeMap::new();
    for y in 0..b.size() as u16 {
        by_support.insert(b.support(y, b_atoms), y);
    }
    let mut map = Vec::with_capacity(a.size());
    for x in 0..a.size() as u16 {
        let mut img: Vec<usize> = a
            .support(x, a_atoms)
            .into_iter()
            .map(|i| perm[i])
            .collect();
        img.sort_unstable();
        map.push(*by_support.get(&img)?);
    }
    Some(map)
}

fn is_algebra_hom(a: &FiniteBoolAlg, b: &FiniteBoolAlg, map: &[u16]) -> bool {
    if map[a.bot as usize] != b.bot || map[a.top as usize] != b.top {
        return false;
    }
    for x in 0..a.size() {
        if map[a.compl[x] as usize] != b.compl[map[x] as usize] {
            return false;
        }
        for y in 0..a.size() {
            if map[a.meet[x][y] as usize] != b.meet[map[x] as usize][map[y] as usize] {
                return false;
            }
            if map[a.join[x][y] as usize] != b.join[map[x] as usize][map[y] as usize] {
                return false;
            }
        }
    }
    true
}

/// Isomorphism of packages: equal rank tags plus a pair of Boolean-algebra
/// isomorphisms commuting with restriction. Searched by brute force over
/// atom bijections of both algebras.
pub fn packages_isomorphic(a: &StonePackage, b: &StonePackage) -> bool {
    if a.rank_tag != b.rank_tag
        || a.algebra.size() != b.algebra.size()
        || a.loop_algebra.size() != b.loop_algebra.size()
    {
        return false;
    }
    let a_atoms = a.algebra.atoms();
    let b_atoms = b.algebra.atoms();
    let al_atoms = a.loop_algebra.atoms();
    let bl_atoms = b.loop_algebra.atoms();
    if a_atoms.len() != b_atoms.len() || al_atoms.len() != bl_atoms.len() {
        return false;
    }
    for k_perm in permutations(a_atoms.len()) {
        let Some(k_map) = extend_atom_map(&a.algebra, &b.algebra, &a_atoms, &b_atoms, &k_perm)
        else {
            continue;
        };
        if !is_algebra_hom(&a.algebra, &b.algebra, &k_map) {
            continue;
        }
        for l_perm in permutations(al_atoms.len()) {
            let Some(l_map) =
                extend_atom_map(&a.loop_algebra, &b.loop_algebra, &al_atoms, &bl_atoms, &l_perm)
            else {
                continue;
            };
            if !is_algebra_hom(&a.loop_algebra, &b.loop_algebra, &l_map) {
                continue;
            }
            let commutes = (0..a.algebra.size())
                .all(|x| l_map[a.restrict[x] as usize] == b.restrict[k_map[x] as usize]);
            if commutes {
                return true;
            }
        }
    }
    false
}

/// A clopen subset of the binary sequence space, stored as a reduced
/// antichain of cylinder words (sorted). The empty list is the empty set;
/// the single empty word is the full space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ClopenSet {
    words: Vec<Vec<bool>>,
}

impl ClopenSet {
    pub fn empty() -> ClopenSet {
        ClopenSet { words: Vec::new() }
    }

    pub fn full() -> ClopenSet {
        ClopenSet {
            words: vec![Vec::new()],
        }
    }

    /// Reduces an arbitrary cylinder list: drop words dominated by a prefix
    /// and merge sibling pairs, repeatedly.
    pub fn from_words(mut words: Vec<Vec<bool>>) -> ClopenSet {
        loop {
            words.sort();
            words.dedup();
            let mut changed = false;
            // Drop words with a proper prefix in the list.
            let kept: Vec<Vec<bool>> = words
                .iter()
                .filter(|w| {
                    !words
                        .iter()
                        .any(|p| p.len() < w.len() && w.starts_with(p))
                })
                .cloned()
                .collect();
            if kept.len() != words.len() {
                words = kept;
                changed = true;
            }
            // Merge one sibling pair per pass.
            'merge: for i in 0..words.len() {
                for j in i + 1..words.len() {
                    if words[i].len() == words[j].len()
                        && !words[i].is_empty()
                        && words[i][..words[i].len() - 1] == words[j][..words[j].len() - 1]
                        && words[i].last() != words[j].last()
                    {
                        let parent = words[i][..words[i].len() - 1].to_vec();
                        words.remove(j);
                        words.remove(i);
                        words.push(parent);
                        changed = true;
                        break 'merge;
                    }
                }
            }
            if !changed {
                return ClopenSet { words };
            }
        }
    }

    pub fn words(&self) -> &[Vec<bool>] {
        &self.words
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.words.len() == 1 && self.words[0].is_empty()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// Total cost: sum of `|w| + 1` over listed words.
    pub fn cost(&self) -> u32 {
        self.words.iter().map(|w| w.len() as u32 + 1).sum()
    }

    /// Does the cylinder of `prefix` meet the set?
    pub fn meets_cylinder(&self, prefix: &[bool]) -> bool {
        self.words.iter().any(|w| {
            w.iter().zip(prefix.iter()).all(|(a, b)| a == b)
        })
    }

    pub fn complement(&self) -> ClopenSet {
        fn compl(words: &[Vec<bool>]) -> Vec<Vec<bool>> {
            if words.iter().any(|w| w.is_empty()) {
                return Vec::new(); // complement of everything
            }
            if words.is_empty() {
                return vec![Vec::new()];
            }
            let side = |bit: bool| -> Vec<Vec<bool>> {
                let sub: Vec<Vec<bool>> = words
                    .iter()
                    .filter(|w| w[0] == bit)
                    .map(|w| w[1..].to_vec())
                    .collect();
                compl(&sub)
                    .into_iter()
                    .map(|mut w| {
                        w.insert(0, bit);
                        w
                    })
                    .collect()
            };
            let mut out = side(false);
            out.extend(side(true));
            out
        }
        ClopenSet::from_words(compl(&self.words))
    }
}

impl std::fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_empty() {
            return f.write_str("{}");
        }
        if self.is_full() {
            return f.write_str("{*}");
        }
        let parts: Vec<String> = self
            .words
            .iter()
            .map(|w| w.iter().map(|&b| if b { '1' } else { '0' }).collect())
            .collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The first `count` clopen sets in the canonical order: empty, full, then
/// every other reduced antichain by (cost, lexicographic word list).
pub fn clopen_enumeration(count: usize) -> Vec<ClopenSet> {
    let mut budget = 2u32;
    loop {
        let mut all = antichains_within(budget);
        all.sort_by_key(|c| (c.cost(), c.words.clone()));
        // Everything of cost <= budget - 1 is certainly complete: no deeper
        // budget can add sets of smaller cost.
        let complete: Vec<ClopenSet> = all
            .into_iter()
            .filter(|c| c.cost() < budget)
            .collect();
        if complete.len() >= count {
            return complete.into_iter().take(count).collect();
        }
        budget += 1;
    }
}

/// All reduced antichains with cost at most `budget` (order unspecified).
fn antichains_within(budget: u32) -> Vec<ClopenSet> {
    let mut out = vec![ClopenSet::empty()];
    if budget >= 1 {
        out.push(ClopenSet::full());
    }
    // Composite sets split by first letter: cost(0·A ∪ 1·B) =
    // cost(A) + |A| + cost(B) + |B|.
    if budget >= 2 {
        let parts = antichains_within(budget - 1);
        for left in &parts {
            for right in &parts {
                if left.is_empty() && right.is_empty() {
                    continue; // that's the empty set again
                }
                if left.is_full() && right.is_full() {
                    continue; // not reduced: merges to the full space
                }
                let cost = left.cost()
                    + left.words.len() as u32
                    + right.cost()
                    + right.words.len() as u32;
                if cost > budget {
                    continue;
                }
                let mut words = Vec::new();
                for w in &left.words {
                    let mut p = vec![false];
                    p.extend(w.iter().copied());
                    words.push(p);
                }
                for w in &right.words {
                    let mut p = vec![true];
                    p.extend(w.iter().copied());
                    words.push(p);
                }
                words.sort();
                out.push(ClopenSet { words });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powerset_is_a_boolean_algebra() {
        let alg = FiniteBoolAlg::powerset(3, 0);
        assert_eq!(alg.size(), 8);
        assert_eq!(alg.atoms(), vec![1, 2, 4]);
        for x in 0..8u16 {
            assert_eq!(alg.meet[x as usize][alg.top as usize], x);
            assert_eq!(alg.join[x as usize][alg.bot as usize], x);
            assert_eq!(alg.meet[x as usize][alg.compl[x as usize] as usize], alg.bot);
            assert_eq!(alg.join[x as usize][alg.compl[x as usize] as usize], alg.top);
            for y in 0..8usize {
                assert_eq!(alg.meet[x as usize][y], alg.meet[y][x as usize]);
            }
        }
    }

    #[test]
    fn carriers_are_disjoint() {
        let p = finite_pair_package(0, 2, 1);
        assert_eq!(p.algebra.size(), 4);
        assert_eq!(p.loop_algebra.size(), 2);
        for k in &p.algebra.elements {
            assert!(!p.loop_algebra.elements.contains(k));
        }
    }

    #[test]
    fn frozen_package_shapes() {
        // One plain end, finite rank 2.
        let p = finite_pair_package(3, 1, 0);
        assert_eq!((p.algebra.size(), p.loop_algebra.size(), p.rank_tag), (2, 1, 3));
        // Two ends, one accumulating loops, infinite rank.
        let q = finite_pair_package(0, 2, 1);
        assert_eq!((q.algebra.size(), q.loop_algebra.size(), q.rank_tag), (4, 2, 0));
    }

    #[test]
    fn isomorphism_detects_rank_and_shape() {
        let a = finite_pair_package(3, 2, 1);
        assert!(packages_isomorphic(&a, &finite_pair_package(3, 2, 1)));
        assert!(!packages_isomorphic(&a, &finite_pair_package(4, 2, 1)));
        assert!(!packages_isomorphic(&a, &finite_pair_package(3, 3, 1)));
        assert!(!packages_isomorphic(&a, &finite_pair_package(3, 2, 2)));
    }

    #[test]
    fn isomorphism_searches_atom_bijections() {
        // Mark the *last* end as the loop end instead of the first; the
        // packages differ as tables but an atom swap aligns them.
        let standard = finite_pair_package(0, 2, 1);
        let mut swapped = finite_pair_package(0, 2, 1);
        // Restriction keeping atom 1 (mask 2) instead of atom 0 (mask 1).
        swapped.restrict = (0..4u16).map(|m| (m >> 1) & 1).collect();
        assert!(packages_isomorphic(&standard, &swapped));

        // But a restriction killing everything is genuinely different.
        let mut dead = finite_pair_package(0, 2, 1);
        dead.restrict = vec![0; 4];
        assert!(!packages_isomorphic(&standard, &dead));
    }

    #[test]
    fn clopen_enumeration_prefix() {
        let sets = clopen_enumeration(8);
        let shown: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
        assert_eq!(
            shown,
            vec!["{}", "{*}", "{0}", "{1}", "{00}", "{01}", "{10}", "{11}"]
        );
        let more = clopen_enumeration(40);
        assert_eq!(&more[..8], &sets[..]);
        // All distinct, all reduced (reducing is a no-op).
        for (i, s) in more.iter().enumerate() {
            assert_eq!(ClopenSet::from_words(s.words().to_vec()), *s);
            for t in &more[..i] {
                assert_ne!(s, t);
            }
        }
        // Costs are nondecreasing.
        assert!(more.windows(2).all(|p| p[0].cost() <= p[1].cost()));
    }

    #[test]
    fn reduction_merges_and_dominates() {
        let w = |s: &str| -> Vec<bool> { s.chars().map(|c| c == '1').collect() };
        assert!(ClopenSet::from_words(vec![w("00"), w("01")])
            .words()
            .iter()
            .eq([w("0")].iter()));
        assert_eq!(
            ClopenSet::from_words(vec![w("0"), w("01")]),
            ClopenSet::from_words(vec![w("0")])
        );
        assert!(ClopenSet::from_words(vec![w("0"), w("1")]).is_full());
        assert!(ClopenSet::from_words(vec![]).is_empty());
    }

    #[test]
    fn complement_laws() {
        let w = |s: &str| -> Vec<bool> { s.chars().map(|c| c == '1').collect() };
        assert!(ClopenSet::empty().complement().is_full());
        assert!(ClopenSet::full().complement().is_empty());
        let left = ClopenSet::from_words(vec![w("0")]);
        assert_eq!(left.complement(), ClopenSet::from_words(vec![w("1")]));
        let lopsided = ClopenSet::from_words(vec![w("0"), w("10")]);
        assert_eq!(lopsided.complement(), ClopenSet::from_words(vec![w("11")]));
        for s in clopen_enumeration(30) {
            assert_eq!(s.complement().complement(), s);
        }
    }

    #[test]
    fn cylinder_meeting() {
        let w = |s: &str| -> Vec<bool> { s.chars().map(|c| c == '1').collect() };
        let set = ClopenSet::from_words(vec![w("01"), w("11")]);
        assert!(set.meets_cylinder(&w("0")));
        assert!(set.meets_cylinder(&w("011")));
        assert!(!set.meets_cylinder(&w("00")));
        assert!(set.meets_cylinder(&[]));
        assert!(!ClopenSet::empty().meets_cylinder(&[]));
    }
}
