//! Composition tables of finite semigroups.
//!
//! A [`CayleyTable`] stores an order-`n` semigroup as an `n`×`n` grid of
//! element indices: `table[x][y]` is the composite "x then y".  Construction
//! validates the semigroup axioms eagerly, so every table handed out by this
//! module is closed and associative, and downstream code may rely on that.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transform::{GenSet, Transformation};

/// An order-`n` semigroup given by its composition table.
///
/// Immutable after construction; cheap to share read-only across threads.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CayleyTable {
    order: usize,
    entries: Vec<usize>, // row-major, entries[x * order + y] = x then y
    labels: Option<Vec<String>>,
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable(order {})", self.order)?;
        for x in 0..self.order {
            write!(f, "\n  ")?;
            for y in 0..self.order {
                write!(f, "{} ", self.product(x, y))?;
            }
        }
        Ok(())
    }
}

/// Per-element structural flags reported by [`CayleyTable::element_info`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ElementInfo {
    pub index: usize,
    pub is_idempotent: bool,
    pub is_left_identity: bool,
    pub is_right_identity: bool,
}

impl ElementInfo {
    /// Two-sided identity.
    pub fn is_identity(&self) -> bool {
        self.is_left_identity && self.is_right_identity
    }
}

/// How to check associativity during validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssocCheck {
    /// Scan all n³ triples in lexicographic order.  Always reports the
    /// lexicographically first violating triple.
    #[default]
    Naive,
    /// Light's test: find a generating set of the table and check only the
    /// triples through generators.  Same accept/reject verdict as the naive
    /// scan, but a reported witness triple may differ.
    Generators,
}

impl CayleyTable {
    /// Validates `entries` (row-major, length `order²`) as a semigroup table.
    pub fn new(order: usize, entries: Vec<usize>) -> Result<Self> {
        Self::with_labels(order, entries, None)
    }

    /// Validating constructor with optional display labels.
    pub fn with_labels(
        order: usize,
        entries: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        Self::with_options(order, entries, labels, AssocCheck::Naive)
    }

    /// Full-control constructor: choice of associativity check.
    pub fn with_options(
        order: usize,
        entries: Vec<usize>,
        labels: Option<Vec<String>>,
        check: AssocCheck,
    ) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        if entries.len() != order * order {
            return Err(Error::InvalidArgument(format!(
                "expected {} entries for order {}, got {}",
                order * order,
                order,
                entries.len()
            )));
        }
        for (i, &v) in entries.iter().enumerate() {
            if v >= order {
                return Err(Error::EntryOutOfRange {
                    row: i / order,
                    col: i % order,
                    value: v,
                    order,
                });
            }
        }
        let witness = match check {
            AssocCheck::Naive => associativity_witness(order, &entries),
            AssocCheck::Generators => associativity_witness_via_generators(order, &entries),
        };
        if let Some((x, y, z)) = witness {
            return Err(Error::NotAssociative { x, y, z });
        }
        Self::attach_labels(order, entries, labels)
    }

    /// Constructor for tables that are associative by construction
    /// (componentwise products, closures of function composition).
    /// Skips the O(n³) scan; callers must guarantee the axioms.
    pub(crate) fn from_parts_unchecked(
        order: usize,
        entries: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        debug_assert_eq!(entries.len(), order * order);
        debug_assert!(entries.iter().all(|&v| v < order));
        Self::attach_labels(order, entries, labels)
    }

    fn attach_labels(
        order: usize,
        entries: Vec<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if let Some(ls) = &labels {
            if ls.len() != order {
                return Err(Error::InvalidArgument(format!(
                    "expected {} labels, got {}",
                    order,
                    ls.len()
                )));
            }
            for (i, l) in ls.iter().enumerate() {
                if ls[..i].contains(l) {
                    return Err(Error::DuplicateLabel(l.clone()));
                }
            }
        }
        Ok(CayleyTable {
            order,
            entries,
            labels,
        })
    }

    /// The 3-element monoid of a 1-bit memory cell: a read event `r`
    /// (identity) and two destructive writes `s0`, `s1` (right zeros).
    pub fn flip_flop() -> Self {
        let entries = vec![
            0, 1, 2, //  r then {r, s0, s1}
            1, 1, 2, // s0 then {r, s0, s1}
            2, 1, 2, // s1 then {r, s0, s1}
        ];
        CayleyTable {
            order: 3,
            entries,
            labels: Some(vec!["r".into(), "s0".into(), "s1".into()]),
        }
    }

    /// The cyclic group Z_n: a modulo-`n` counter, `table[i][j] = (i+j) mod n`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("cyclic order must be positive".into()));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push((i + j) % n);
            }
        }
        let labels = (0..n).map(|i| format!("+{i}")).collect();
        Ok(CayleyTable {
            order: n,
            entries,
            labels: Some(labels),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// The composite "x then y".  Panics if an index is out of range.
    #[inline]
    pub fn product(&self, x: usize, y: usize) -> usize {
        self.entries[x * self.order + y]
    }

    /// Row-major entries, length `order²`.
    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    pub fn has_labels(&self) -> bool {
        self.labels.is_some()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display label for an element, defaulting to `e{i}`.
    pub fn label(&self, i: usize) -> String {
        match &self.labels {
            Some(ls) => ls[i].clone(),
            None => format!("e{i}"),
        }
    }

    /// Returns a copy of this table carrying the given labels.
    pub fn relabeled(&self, labels: Option<Vec<String>>) -> Result<Self> {
        Self::attach_labels(self.order, self.entries.clone(), labels)
    }

    /// Idempotence and identity flags for every element.
    pub fn element_info(&self) -> Vec<ElementInfo> {
        (0..self.order)
            .map(|i| ElementInfo {
                index: i,
                is_idempotent: self.product(i, i) == i,
                is_left_identity: (0..self.order).all(|y| self.product(i, y) == y),
                is_right_identity: (0..self.order).all(|x| self.product(x, i) == x),
            })
            .collect()
    }

    /// Index of the two-sided identity, if one exists.  A semigroup has at
    /// most one.
    pub fn identity(&self) -> Option<usize> {
        (0..self.order).find(|&i| {
            (0..self.order).all(|y| self.product(i, y) == y && self.product(y, i) == y)
        })
    }

    /// True iff `subset` is closed under composition.
    pub fn is_subsemigroup(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &s in subset {
            member[s] = true;
        }
        subset
            .iter()
            .all(|&a| subset.iter().all(|&b| member[self.product(a, b)]))
    }

    /// The right regular representation: element `y` becomes the map
    /// `p ↦ p·y` on the element set.  With `adjoin_identity` an extra ground
    /// state is added on which `y` acts as `ground ↦ y`, which makes the
    /// representation faithful for every table.  Without it the representation
    /// is faithful exactly when the table is left-cancellative enough to
    /// separate elements (any monoid qualifies).
    pub fn right_regular_representation(&self, adjoin_identity: bool) -> RegularRepresentation {
        let n = self.order;
        let degree = if adjoin_identity { n + 1 } else { n };
        let map = (0..n)
            .map(|y| {
                let mut image: Vec<usize> = (0..n).map(|p| self.product(p, y)).collect();
                if adjoin_identity {
                    image.push(y);
                }
                Transformation::new(image).expect("entries are in range by table validity")
            })
            .collect();
        RegularRepresentation {
            degree,
            adjoined_identity: adjoin_identity,
            map,
        }
    }

    /// Right regular representation that is guaranteed faithful: adjoins the
    /// ground state only when the table has no two-sided identity.
    pub fn faithful_representation(&self) -> RegularRepresentation {
        self.right_regular_representation(self.identity().is_none())
    }
}

/// Outcome of the state-event abstraction on a table: one transformation per
/// element, acting on the element set (plus an optional adjoined ground
/// state).
#[derive(Debug, Clone)]
pub struct RegularRepresentation {
    degree: usize,
    adjoined_identity: bool,
    map: Vec<Transformation>,
}

impl RegularRepresentation {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn adjoined_identity(&self) -> bool {
        self.adjoined_identity
    }

    /// Transformation attached to element `i`.
    pub fn transformation(&self, i: usize) -> &Transformation {
        &self.map[i]
    }

    /// The element-to-transformation map in element order.
    pub fn transformations(&self) -> &[Transformation] {
        &self.map
    }

    /// The transformations as a generator set (duplicates possible when the
    /// representation is not faithful).
    pub fn gen_set(&self) -> GenSet {
        GenSet::new(self.map.clone()).expect("nonempty and degree-consistent by construction")
    }

    /// True iff distinct elements map to distinct transformations.
    pub fn is_faithful(&self) -> bool {
        for i in 0..self.map.len() {
            for j in 0..i {
                if self.map[i] == self.map[j] {
                    return false;
                }
            }
        }
        true
    }
}

/// Naive O(n³) associativity scan.  Returns the lexicographically first
/// triple `(x, y, z)` with `(xy)z ≠ x(yz)`, or `None` when associative.
///
/// `entries` must already be range-checked.  The scan is partitioned by
/// x-row across threads; the reported witness is still the lexicographic
/// minimum.
pub fn associativity_witness(order: usize, entries: &[usize]) -> Option<(usize, usize, usize)> {
    let at = |x: usize, y: usize| entries[x * order + y];
    let scan_row = |x: usize| {
        for y in 0..order {
            let xy = at(x, y);
            for z in 0..order {
                if at(xy, z) != at(x, at(y, z)) {
                    return Some((x, y, z));
                }
            }
        }
        None
    };
    // Parallelism only pays off once rows get wide.
    if order < 24 {
        (0..order).find_map(scan_row)
    } else {
        (0..order).into_par_iter().find_map_first(scan_row)
    }
}

/// Light's associativity test.  Finds a generating set of the table (closure
/// of pairwise products) and checks `x(gy) = (xg)y` only for generators `g`.
/// Accept/reject agrees with [`associativity_witness`]; a returned witness
/// triple is violating but not necessarily the lexicographically first one.
pub fn associativity_witness_via_generators(
    order: usize,
    entries: &[usize],
) -> Option<(usize, usize, usize)> {
    let at = |x: usize, y: usize| entries[x * order + y];
    for g in greedy_generating_set(order, entries) {
        for x in 0..order {
            let xg = at(x, g);
            for y in 0..order {
                if at(x, at(g, y)) != at(xg, y) {
                    return Some((x, g, y));
                }
            }
        }
    }
    None
}

/// Greedy generating set of a binary-operation table: repeatedly add the
/// smallest element not yet generated and re-close under pairwise products.
/// Well-defined whether or not the operation is associative.
pub(crate) fn greedy_generating_set(order: usize, entries: &[usize]) -> Vec<usize> {
    let at = |x: usize, y: usize| entries[x * order + y];
    let mut gens = Vec::new();
    let mut generated = vec![false; order];
    let mut members: Vec<usize> = Vec::new();
    let mut next = 0;
    while members.len() < order {
        while generated[next] {
            next += 1;
        }
        gens.push(next);
        // close under products with everything already generated
        let mut queue = vec![next];
        generated[next] = true;
        while let Some(a) = queue.pop() {
            members.push(a);
            let mut push = |v: usize, queue: &mut Vec<usize>, generated: &mut Vec<bool>| {
                if !generated[v] {
                    generated[v] = true;
                    queue.push(v);
                }
            };
            push(at(a, a), &mut queue, &mut generated);
            for i in 0..members.len() {
                let b = members[i];
                push(at(a, b), &mut queue, &mut generated);
                push(at(b, a), &mut queue, &mut generated);
            }
        }
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    // Independent brute-force oracle: enumerate all triples directly.
    fn oracle_first_violation(order: usize, entries: &[usize]) -> Option<(usize, usize, usize)> {
        for x in 0..order {
            for y in 0..order {
                for z in 0..order {
                    let xy = entries[x * order + y];
                    let yz = entries[y * order + z];
                    if entries[xy * order + z] != entries[x * order + yz] {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    #[test]
    fn flip_flop_matches_the_memory_cell_table() {
        let t = CayleyTable::flip_flop();
        assert_eq!(t.order(), 3);
        // r is a two-sided identity
        for x in 0..3 {
            assert_eq!(t.product(0, x), x);
            assert_eq!(t.product(x, 0), x);
        }
        // last write wins
        assert_eq!(t.product(1, 2), 2);
        assert_eq!(t.product(2, 1), 1);
        // all three elements idempotent
        for x in 0..3 {
            assert_eq!(t.product(x, x), x);
        }
        assert_eq!(t.labels(), Some(&["r".to_string(), "s0".into(), "s1".into()][..]));
    }

    #[test]
    fn flip_flop_entries_validate() {
        let t = CayleyTable::flip_flop();
        assert!(CayleyTable::new(3, t.entries().to_vec()).is_ok());
    }

    #[test]
    fn trivial_table_validates() {
        let t = CayleyTable::new(1, vec![0]).unwrap();
        assert_eq!(t.order(), 1);
        assert_eq!(t.label(0), "e0");
    }

    #[test]
    fn mutated_flip_flop_reports_first_violating_triple() {
        // change r·s0 from s0 to r
        let mut entries = CayleyTable::flip_flop().entries().to_vec();
        entries[0 * 3 + 1] = 0;
        let expected = oracle_first_violation(3, &entries).expect("mutation breaks associativity");
        match CayleyTable::new(3, entries) {
            Err(Error::NotAssociative { x, y, z }) => assert_eq!((x, y, z), expected),
            other => panic!("expected NotAssociative, got {other:?}"),
        }
    }

    #[test]
    fn out_of_range_entry_is_reported_with_position() {
        let err = CayleyTable::new(2, vec![0, 1, 3, 0]).unwrap_err();
        assert_eq!(
            err,
            Error::EntryOutOfRange {
                row: 1,
                col: 0,
                value: 3,
                order: 2
            }
        );
    }

    #[test]
    fn cyclic_tables() {
        let z3 = CayleyTable::cyclic(3).unwrap();
        assert_eq!(z3.entries(), &[0, 1, 2, 1, 2, 0, 2, 0, 1]);
        assert_eq!(z3.label(1), "+1");

        let z1 = CayleyTable::cyclic(1).unwrap();
        assert_eq!(z1.order(), 1);

        let z4 = CayleyTable::cyclic(4).unwrap();
        assert_eq!(z4.product(3, 2), 1);

        assert!(matches!(CayleyTable::cyclic(0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn cyclic_tables_validate_up_to_64() {
        for n in 1..=64 {
            let t = CayleyTable::cyclic(n).unwrap();
            assert!(
                CayleyTable::new(n, t.entries().to_vec()).is_ok(),
                "cyclic({n}) failed re-validation"
            );
        }
    }

    #[test]
    fn left_zero_table_is_associative() {
        // xy = x for all x, y
        let t = CayleyTable::new(2, vec![0, 0, 1, 1]).unwrap();
        assert_eq!(t.identity(), None);
        let info = t.element_info();
        assert!(info.iter().all(|e| e.is_idempotent));
        assert!(info.iter().all(|e| !e.is_identity()));
        // both are left identities? no: x·y = x, so y acts as right... check flags
        assert!(info.iter().all(|e| e.is_right_identity));
        assert!(!info[0].is_left_identity);
    }

    #[test]
    fn element_info_flags() {
        let ff = CayleyTable::flip_flop();
        let info = ff.element_info();
        assert!(info[0].is_identity());
        assert!(info.iter().all(|e| e.is_idempotent));
        assert_eq!(ff.identity(), Some(0));

        let z3 = CayleyTable::cyclic(3).unwrap();
        let info = z3.element_info();
        assert!(info[0].is_identity());
        assert_eq!(
            info.iter().filter(|e| e.is_idempotent).count(),
            1,
            "only the identity of a group is idempotent"
        );
    }

    #[test]
    fn subsemigroup_membership() {
        let ff = CayleyTable::flip_flop();
        assert!(ff.is_subsemigroup(&[1, 2]));
        assert!(ff.is_subsemigroup(&[0, 1, 2]));
        assert!(ff.is_subsemigroup(&[]));

        let z3 = CayleyTable::cyclic(3).unwrap();
        assert!(!z3.is_subsemigroup(&[0, 1]));
        assert!(z3.is_subsemigroup(&[0, 1, 2]));
    }

    #[test]
    fn regular_representation_of_z3_is_faithful_without_adjoining() {
        let z3 = CayleyTable::cyclic(3).unwrap();
        let rep = z3.right_regular_representation(false);
        assert_eq!(rep.degree(), 3);
        assert!(rep.is_faithful());
        assert_eq!(rep.transformation(0).image(), &[0, 1, 2]);
        assert_eq!(rep.transformation(1).image(), &[1, 2, 0]);
        assert_eq!(rep.transformation(2).image(), &[2, 0, 1]);
    }

    #[test]
    fn regular_representation_of_flip_flop() {
        let ff = CayleyTable::flip_flop();
        let rep = ff.right_regular_representation(false);
        assert!(rep.is_faithful());
        assert_eq!(rep.transformation(0).image(), &[0, 1, 2]); // read = identity
        assert_eq!(rep.transformation(1).image(), &[1, 1, 1]); // write 0
        assert_eq!(rep.transformation(2).image(), &[2, 2, 2]); // write 1
        // has an identity, so the faithful helper does not adjoin
        assert!(!ff.faithful_representation().adjoined_identity());
    }

    #[test]
    fn left_zero_representation_needs_the_ground_state() {
        let lz = CayleyTable::new(2, vec![0, 0, 1, 1]).unwrap();
        let plain = lz.right_regular_representation(false);
        assert!(!plain.is_faithful());
        assert_eq!(plain.transformation(0), plain.transformation(1));

        let adjoined = lz.right_regular_representation(true);
        assert!(adjoined.is_faithful());
        assert_eq!(adjoined.degree(), 3);
        assert_eq!(adjoined.transformation(0).image(), &[0, 1, 0]);
        assert_eq!(adjoined.transformation(1).image(), &[0, 1, 1]);

        assert!(lz.faithful_representation().adjoined_identity());
    }

    #[test]
    fn generator_based_check_agrees_on_named_tables() {
        for t in [
            CayleyTable::flip_flop(),
            CayleyTable::cyclic(3).unwrap(),
            CayleyTable::cyclic(6).unwrap(),
            CayleyTable::new(2, vec![0, 0, 1, 1]).unwrap(),
        ] {
            assert_eq!(
                associativity_witness_via_generators(t.order(), t.entries()),
                None
            );
        }
        // and rejects a broken table
        let mut entries = CayleyTable::cyclic(3).unwrap().entries().to_vec();
        entries[4] = 0; // 1+1 "=" 0
        let w = associativity_witness_via_generators(3, &entries);
        assert!(w.is_some());
        let (x, y, z) = w.unwrap();
        // any witness must actually violate
        let at = |a: usize, b: usize| entries[a * 3 + b];
        assert_ne!(at(at(x, y), z), at(x, at(y, z)));
    }

    #[test]
    fn labels_must_be_distinct_and_counted() {
        let e = CayleyTable::with_labels(
            2,
            vec![0, 1, 1, 0],
            Some(vec!["a".into(), "a".into()]),
        )
        .unwrap_err();
        assert_eq!(e, Error::DuplicateLabel("a".into()));

        let e = CayleyTable::with_labels(2, vec![0, 1, 1, 0], Some(vec!["a".into()])).unwrap_err();
        assert!(matches!(e, Error::InvalidArgument(_)));
    }
}
