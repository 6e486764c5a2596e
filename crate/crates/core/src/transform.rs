//! Concrete transformations of a finite point set and closure of generator
//! sets into composition tables.
//!
//! The closure engine is the workhorse of the crate: it discovers elements
//! breadth-first (generators first, then discovery order, so results are
//! reproducible) and fills the composition table in O(n²) lookups by reusing
//! each element's defining product instead of hashing every pair.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest degree accepted without an explicit override; `8^8` elements is
/// the desk-scale ceiling.
pub const MAX_PLAIN_DEGREE: usize = 8;

/// A total self-map of `{0, .., degree-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    image: Vec<usize>,
}

impl std::fmt::Debug for Transformation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.image.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

impl Transformation {
    /// `image[i]` = where point `i` is sent.  Errors on an empty image or an
    /// out-of-range point.
    pub fn new(image: Vec<usize>) -> Result<Self> {
        if image.is_empty() {
            return Err(Error::InvalidArgument("degree must be positive".into()));
        }
        let degree = image.len();
        for &v in &image {
            if v >= degree {
                return Err(Error::PointOutOfRange { value: v, degree });
            }
        }
        Ok(Transformation { image })
    }

    pub fn identity(degree: usize) -> Result<Self> {
        Self::new((0..degree).collect())
    }

    /// Sends every point to `target`.
    pub fn constant(degree: usize, target: usize) -> Result<Self> {
        Self::new(vec![target; degree])
    }

    /// Swaps `a` and `b`, fixing everything else.
    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        let mut image: Vec<usize> = (0..degree).collect();
        if a >= degree || b >= degree {
            return Err(Error::PointOutOfRange {
                value: a.max(b),
                degree,
            });
        }
        image.swap(a, b);
        Self::new(image)
    }

    /// The full cycle `i ↦ i+1 (mod degree)`.
    pub fn cycle(degree: usize) -> Result<Self> {
        Self::new((0..degree).map(|i| (i + 1) % degree).collect())
    }

    /// The elementary collapsing `0 ↦ 1`, all other points fixed.
    pub fn collapse_0_to_1(degree: usize) -> Result<Self> {
        if degree < 2 {
            return Err(Error::InvalidArgument(
                "collapsing needs at least two points".into(),
            ));
        }
        let mut image: Vec<usize> = (0..degree).collect();
        image[0] = 1;
        Self::new(image)
    }

    pub fn degree(&self) -> usize {
        self.image.len()
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, p: usize) -> usize {
        self.image[p]
    }

    /// "self then other": the composite sends `p` to `other(self(p))`.
    pub fn then(&self, other: &Transformation) -> Result<Transformation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        Ok(Transformation {
            image: self.image.iter().map(|&p| other.image[p]).collect(),
        })
    }

    /// True iff the map is a bijection.
    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.degree()];
        for &v in &self.image {
            if seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }
}

/// An ordered, nonempty list of transformations sharing one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenSet {
    degree: usize,
    gens: Vec<Transformation>,
}

impl GenSet {
    pub fn new(gens: Vec<Transformation>) -> Result<Self> {
        let degree = match gens.first() {
            Some(g) => g.degree(),
            None => {
                return Err(Error::InvalidArgument(
                    "generator set must be nonempty".into(),
                ))
            }
        };
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }
        Ok(GenSet { degree, gens })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn gens(&self) -> &[Transformation] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// Duplicates are permitted but worth reporting.
    pub fn has_duplicates(&self) -> bool {
        for i in 0..self.gens.len() {
            if self.gens[..i].contains(&self.gens[i]) {
                return true;
            }
        }
        false
    }
}

/// Caps applied during closure.
#[derive(Debug, Clone, Copy, Default)]
pub struct ClosureLimits {
    /// Maximum number of elements; defaults to `degree^degree`, which is
    /// always sufficient.
    pub max_size: Option<usize>,
    /// Degrees above [`MAX_PLAIN_DEGREE`] must be requested explicitly.
    pub allow_large_degree: bool,
}

/// A generator set closed into a full semigroup.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    /// Distinct elements in discovery order, generators first.
    pub elements: Vec<Transformation>,
    /// `table[i][j]` = index of `elements[i] then elements[j]`.
    pub table: CayleyTable,
    /// Index of each input generator within `elements` (duplicates map to the
    /// same index).
    pub gen_indices: Vec<usize>,
}

impl ClosureResult {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn degree(&self) -> usize {
        self.elements[0].degree()
    }

    /// The distinct generator elements, in first-appearance order.
    pub fn generator_elements(&self) -> Vec<&Transformation> {
        let mut seen = Vec::new();
        for &gi in &self.gen_indices {
            if !seen.contains(&gi) {
                seen.push(gi);
            }
        }
        seen.into_iter().map(|gi| &self.elements[gi]).collect()
    }

    /// Position of a transformation in `elements`, if present.
    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.elements.iter().position(|e| e == t)
    }
}

// How an element entered the closure: as the k-th generator, or as
// parent·gens[k].  Lets the table fill reuse already-known products.
enum Origin {
    Gen(usize),
    Product(usize, usize),
}

/// Breadth-first closure of a generator set, plus the full composition table.
///
/// Elements are processed in discovery order and composed with every
/// generator on the right, so the element order is deterministic for a given
/// input regardless of thread count.  `SizeExceeded` is returned when the
/// element count would pass the cap before the closure completes.
pub fn closure(gens: &GenSet, limits: ClosureLimits) -> Result<ClosureResult> {
    let degree = gens.degree();
    if degree > MAX_PLAIN_DEGREE && !limits.allow_large_degree {
        return Err(Error::InvalidArgument(format!(
            "degree {degree} exceeds {MAX_PLAIN_DEGREE}; raise the cap explicitly to proceed"
        )));
    }
    let cap = limits.max_size.unwrap_or_else(|| {
        degree
            .checked_pow(degree as u32)
            .unwrap_or(usize::MAX)
    });

    let mut elements: Vec<Transformation> = Vec::new();
    let mut index: HashMap<Transformation, usize> = HashMap::new();
    let mut origins: Vec<Origin> = Vec::new();
    let mut gen_indices = Vec::with_capacity(gens.len());

    for (k, g) in gens.gens().iter().enumerate() {
        let gi = match index.get(g) {
            Some(&i) => i,
            None => {
                let i = elements.len();
                if i + 1 > cap {
                    return Err(Error::SizeExceeded { cap });
                }
                elements.push(g.clone());
                origins.push(Origin::Gen(k));
                index.insert(g.clone(), i);
                i
            }
        };
        gen_indices.push(gi);
    }

    // right_mult[i][k] = index of elements[i] then gens[k]
    let mut right_mult: Vec<Vec<usize>> = Vec::new();
    let mut frontier = 0;
    while frontier < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (k, g) in gens.gens().iter().enumerate() {
            let composite = elements[frontier].then(g)?;
            let idx = match index.get(&composite) {
                Some(&i) => i,
                None => {
                    let i = elements.len();
                    if i + 1 > cap {
                        return Err(Error::SizeExceeded { cap });
                    }
                    elements.push(composite.clone());
                    origins.push(Origin::Product(frontier, k));
                    index.insert(composite, i);
                    i
                }
            };
            row.push(idx);
        }
        right_mult.push(row);
        frontier += 1;
    }

    let n = elements.len();
    let mut entries = vec![0usize; n * n];
    // Row i never reads outside its own slice and right_mult, so rows fill
    // independently.  Column j of origin Product(p, k) resolves through
    // column p (p < j), which within a row is already filled.
    entries
        .par_chunks_mut(n)
        .enumerate()
        .for_each(|(i, row)| {
            for (j, origin) in origins.iter().enumerate() {
                row[j] = match *origin {
                    Origin::Gen(k) => right_mult[i][k],
                    Origin::Product(p, k) => right_mult[row[p]][k],
                };
            }
        });

    let table = CayleyTable::from_parts_unchecked(n, entries, None)?;
    Ok(ClosureResult {
        elements,
        table,
        gen_indices,
    })
}

/// The standard generating set of the full transformation monoid on `n`
/// points: a transposition, the full cycle, and an elementary collapsing
/// (smaller sets for n < 3, where some of those maps coincide or vanish).
pub fn full_transformation_generators(n: usize) -> Result<GenSet> {
    match n {
        0 => Err(Error::InvalidArgument(
            "point count must be positive".into(),
        )),
        1 => GenSet::new(vec![Transformation::identity(1)?]),
        2 => GenSet::new(vec![
            Transformation::transposition(2, 0, 1)?,
            Transformation::collapse_0_to_1(2)?,
        ]),
        _ => GenSet::new(vec![
            Transformation::transposition(n, 0, 1)?,
            Transformation::cycle(n)?,
            Transformation::collapse_0_to_1(n)?,
        ]),
    }
}
