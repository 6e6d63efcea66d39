//! Belyi maps as monodromy permutation triples, and the degree-6
//! refinement operator.
//!
//! A triple (s1, sw, sw2) over {0, …, d−1} encodes the sheet monodromy
//! around the branch values 1, ω₃, ω₃², read along the positive orientation
//! of the unit circle from a base point between ω₃² and 1. Composition is
//! left-to-right: s1·sw·sw2 = id means applying s1 first. Sheets are
//! 0-indexed.

use crate::lifting::{self, Crossing};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A permutation of {0, …, d−1}, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree).collect())
    }

    /// Validates bijectivity.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &img in &images {
            if img >= d || seen[img] {
                return Err(Error::InvalidPermutation(format!(
                    "image array {images:?} is not a bijection of 0..{d}"
                )));
            }
            seen[img] = true;
        }
        Ok(Self(images))
    }

    /// Builds a permutation of 0..degree from disjoint cycles; entries not
    /// mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for cycle in cycles {
            for w in 0..cycle.len() {
                let from = cycle[w];
                let to = cycle[(w + 1) % cycle.len()];
                if from >= degree || to >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry out of range in {cycle:?}"
                    )));
                }
                images[from] = to;
            }
        }
        Self::new(images)
    }

    /// The cyclic shift i ↦ i + k (mod degree).
    pub fn shift(degree: usize, k: usize) -> Self {
        Self((0..degree).map(|i| (i + k) % degree).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// Left-to-right composition: `self` acts first.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &img)| i == img)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut next = self.0[start];
            while next != start {
                seen[next] = true;
                cycle.push(next);
                next = self.0[next];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths, descending.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

/// Monodromy triple of a Belyi map: permutations around 1, ω₃, ω₃² with
/// s1·sw·sw2 = id (left-to-right) acting transitively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonodromyTriple {
    s1: Permutation,
    sw: Permutation,
    sw2: Permutation,
}

/// Diagnostics from validating a candidate triple.
#[derive(Debug, Clone, Serialize)]
pub struct TripleDiagnostics {
    pub degrees_match: bool,
    pub product_is_identity: bool,
    pub transitive: bool,
}

impl TripleDiagnostics {
    pub fn ok(&self) -> bool {
        self.degrees_match && self.product_is_identity && self.transitive
    }

    pub fn describe(&self) -> String {
        let mut bad = Vec::new();
        if !self.degrees_match {
            bad.push("permutation degrees differ");
        }
        if !self.product_is_identity {
            bad.push("product s1*sw*sw2 is not the identity");
        }
        if !self.transitive {
            bad.push("the action is not transitive");
        }
        if bad.is_empty() {
            "ok".into()
        } else {
            bad.join("; ")
        }
    }
}

/// Checks the triple conditions without constructing the type.
pub fn validate_triple(
    s1: &Permutation,
    sw: &Permutation,
    sw2: &Permutation,
) -> TripleDiagnostics {
    let degrees_match = s1.degree() == sw.degree() && sw.degree() == sw2.degree();
    let product_is_identity =
        degrees_match && s1.then(sw).then(sw2).is_identity();
    let transitive = degrees_match && {
        let d = s1.degree();
        let mut seen = vec![false; d.max(1)];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for p in [s1, sw, sw2] {
                for y in [p.apply(x), p.inverse().apply(x)] {
                    if !seen[y] {
                        seen[y] = true;
                        count += 1;
                        stack.push(y);
                    }
                }
            }
        }
        count == d
    };
    TripleDiagnostics { degrees_match, product_is_identity, transitive }
}

impl MonodromyTriple {
    pub fn new(s1: Permutation, sw: Permutation, sw2: Permutation) -> Result<Self> {
        let diag = validate_triple(&s1, &sw, &sw2);
        if !diag.ok() {
            return Err(Error::InvalidTriple(diag.describe()));
        }
        Ok(Self { s1, sw, sw2 })
    }

    /// The degree-1 triple of the identity covering.
    pub fn trivial() -> Self {
        Self {
            s1: Permutation::identity(1),
            sw: Permutation::identity(1),
            sw2: Permutation::identity(1),
        }
    }

    /// Cyclic triple i ↦ i + a, i + b, i + c (mod d) with a + b + c ≡ 0;
    /// transitive whenever gcd of one shift with d is 1.
    pub fn cyclic(degree: usize, shifts: [usize; 3]) -> Result<Self> {
        Self::new(
            Permutation::shift(degree, shifts[0]),
            Permutation::shift(degree, shifts[1]),
            Permutation::shift(degree, shifts[2]),
        )
    }

    pub fn degree(&self) -> usize {
        self.s1.degree()
    }

    pub fn s1(&self) -> &Permutation {
        &self.s1
    }

    pub fn sw(&self) -> &Permutation {
        &self.sw
    }

    pub fn sw2(&self) -> &Permutation {
        &self.sw2
    }

    pub fn perm(&self, value: usize) -> &Permutation {
        match value {
            0 => &self.s1,
            1 => &self.sw,
            _ => &self.sw2,
        }
    }

    /// Genus from the degree and the total cycle count: the branched cover
    /// over the sphere has 2 − 2g = 2d − Σ (cycle length − 1) over the
    /// three fibers.
    pub fn genus(&self) -> usize {
        let d = self.degree();
        let cycles: usize =
            [&self.s1, &self.sw, &self.sw2].iter().map(|p| p.cycles().len()).sum();
        // 2 − 2g = c − d; parity is forced by the product relation
        debug_assert!((2 + d).checked_sub(cycles).is_some_and(|x| x % 2 == 0));
        (2 + d - cycles) / 2
    }

    fn word_action(&self, word: &[Crossing]) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for c in word {
            let p = self.perm(c.value);
            acc = if c.positive { acc.then(p) } else { acc.then(&p.inverse()) };
        }
        acc
    }

    /// Composes the covering with the fixed degree-6 quotient map: the
    /// result has degree 6d and encodes the same surface. Sheets of the
    /// composite are pairs (quotient sheet k, base sheet i) ↦ k·d + i.
    ///
    /// The monodromy of a loop acts by lifting it through the quotient map
    /// (permuting quotient sheets, recorded once by numeric continuation)
    /// and then pushing each lifted path through this triple via its ray
    /// crossing word, conjugated by the fiber tail paths.
    pub fn refine(&self) -> Result<MonodromyTriple> {
        let mono = lifting::r_monodromy()?;
        let d = self.degree();
        let mut perms: Vec<Permutation> = Vec::with_capacity(3);
        for v in 0..3 {
            let mut images = vec![0usize; 6 * d];
            for k in 0..6 {
                let target = mono.sigma[v][k];
                let mut word = mono.tail_words[k].clone();
                word.extend_from_slice(&mono.lift_words[v][k]);
                word.extend(lifting::invert_word(&mono.tail_words[target]));
                let rho = self.word_action(&word);
                for i in 0..d {
                    images[k * d + i] = target * d + rho.apply(i);
                }
            }
            perms.push(Permutation::new(images)?);
        }
        let sw2 = perms.pop().unwrap();
        let sw = perms.pop().unwrap();
        let s1 = perms.pop().unwrap();
        MonodromyTriple::new(s1, sw, sw2)
    }

    /// `stages` successive refinements.
    pub fn refine_times(&self, stages: usize) -> Result<MonodromyTriple> {
        let mut t = self.clone();
        for _ in 0..stages {
            t = t.refine()?;
        }
        Ok(t)
    }
}

/// The path-lifted monodromy triple of the degree-6 quotient map itself,
/// i.e. the refinement of the trivial covering. Cached.
pub fn r_constellation() -> Result<MonodromyTriple> {
    MonodromyTriple::trivial().refine()
}

/// JSON form: 0-indexed image arrays.
#[derive(Debug, Serialize, Deserialize)]
pub struct TripleFile {
    pub degree: usize,
    pub s1: Vec<usize>,
    pub sw: Vec<usize>,
    pub sw2: Vec<usize>,
}

impl TripleFile {
    pub fn build(&self) -> Result<MonodromyTriple> {
        for arr in [&self.s1, &self.sw, &self.sw2] {
            if arr.len() != self.degree {
                return Err(Error::InvalidTriple(format!(
                    "permutation of length {} in a degree-{} triple",
                    arr.len(),
                    self.degree
                )));
            }
        }
        MonodromyTriple::new(
            Permutation::new(self.s1.clone())?,
            Permutation::new(self.sw.clone())?,
            Permutation::new(self.sw2.clone())?,
        )
    }

    pub fn from_triple(t: &MonodromyTriple) -> Self {
        Self {
            degree: t.degree(),
            s1: t.s1().images().to_vec(),
            sw: t.sw().images().to_vec(),
            sw2: t.sw2().images().to_vec(),
        }
    }
}

/// A small corpus of valid triples of degree ≤ 8 and genus ≤ 3, used by the
/// verification suites.
pub fn desk_corpus() -> Vec<MonodromyTriple> {
    let mut out = vec![MonodromyTriple::trivial()];
    let cyclic = [
        (2, [1, 1, 0]),
        (3, [1, 1, 1]),
        (3, [1, 2, 0]),
        (4, [1, 1, 2]),
        (5, [1, 1, 3]),
        (5, [1, 2, 2]),
        (6, [1, 1, 4]),
        (7, [1, 1, 5]),
        (7, [1, 2, 4]),
        (8, [1, 3, 4]),
        (8, [1, 1, 6]),
    ];
    for (d, shifts) in cyclic {
        out.push(MonodromyTriple::cyclic(d, shifts).expect("corpus triples are valid"));
    }
    out
}

/// The genus-2 triple of three 5-cycles: shifts (1, 1, 3) on Z/5.
pub fn genus2_five_cycles() -> MonodromyTriple {
    MonodromyTriple::cyclic(5, [1, 1, 3]).expect("valid by construction")
}
