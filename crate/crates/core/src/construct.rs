//! Explicit incidence structures, permutations, and flag-orbit verification
//! for the surviving designs: the 2-(11,5,2) biplane built from the
//! quadratic-residue difference set mod 11, the projective planes over prime
//! fields, and their complements.
//!
//! Verification never computes automorphism groups; it checks supplied
//! generators and runs a breadth-first orbit closure on flags, which keeps
//! memory at O(v·k) without materializing group elements. A full element
//! closure with a hard cap exists as an independent oracle for the small
//! groups.

use serde::Serialize;
use std::collections::{HashSet, VecDeque};
use std::fmt::Write as _;
use thiserror::Error;

use crate::arith::is_prime_u64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("image array is not a bijection")]
    NotBijective,
    #[error("permutation degree {0} does not match structure degree {1}")]
    DegreeMismatch(usize, usize),
    #[error("generator {0} is not an automorphism")]
    NotAutomorphism(usize),
    #[error("element closure exceeded cap {0}")]
    ClosureCapExceeded(usize),
    #[error("{0} is not prime")]
    CompositeOrder(u64),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Names the first violated design axiom.
#[derive(Debug, Error, PartialEq, Eq, Serialize)]
pub enum DesignViolation {
    #[error("structure has no blocks")]
    Empty,
    #[error("block count {0} differs from point count {1}")]
    BlockCountMismatch(usize, usize),
    #[error("block sizes are not constant")]
    BlockSizeNonConstant,
    #[error("block contains an out-of-range or repeated point")]
    MalformedBlock,
    #[error("pair multiplicity non-constant")]
    PairMultiplicityNonConstant,
}

/// An incidence structure with as many blocks as points. Blocks are kept
/// sorted (inside each block and lexicographically across blocks), with a
/// membership bitset per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceStructure {
    v: usize,
    blocks: Vec<Vec<u32>>,
    masks: Vec<Vec<u64>>,
}

impl IncidenceStructure {
    pub fn new(v: usize, mut blocks: Vec<Vec<u32>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let masks = blocks.iter().map(|b| mask_of(v, b)).collect();
        IncidenceStructure { v, blocks, masks }
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }

    pub fn contains_block(&self, sorted_block: &[u32]) -> bool {
        self.blocks.binary_search_by(|b| b.as_slice().cmp(sorted_block)).is_ok()
    }

    /// Membership test against the per-block bitset.
    pub fn incident(&self, point: u32, block: usize) -> bool {
        (self.masks[block][point as usize / 64] >> (point % 64)) & 1 == 1
    }

    pub fn block_index(&self, sorted_block: &[u32]) -> Option<usize> {
        self.blocks.binary_search_by(|b| b.as_slice().cmp(sorted_block)).ok()
    }

    /// Plain-text form: "v k" then one block per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.v, self.block_size());
        for b in &self.blocks {
            let line: Vec<String> = b.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, ConstructError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| ConstructError::Parse("empty file".into()))?;
        let mut parts = header.split_whitespace();
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ConstructError::Parse("bad header".into()))?;
        let k: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| ConstructError::Parse("bad header".into()))?;
        let mut blocks = Vec::new();
        for line in lines {
            let block: Result<Vec<u32>, _> =
                line.split_whitespace().map(str::parse::<u32>).collect();
            let block = block.map_err(|e| ConstructError::Parse(e.to_string()))?;
            if block.len() != k {
                return Err(ConstructError::Parse(format!(
                    "block of size {} in a structure with k = {k}",
                    block.len()
                )));
            }
            blocks.push(block);
        }
        Ok(IncidenceStructure::new(v, blocks))
    }
}

fn mask_of(v: usize, block: &[u32]) -> Vec<u64> {
    let mut mask = vec![0u64; v.div_ceil(64)];
    for &p in block {
        mask[p as usize / 64] |= 1 << (p % 64);
    }
    mask
}

/// Checks every design axiom by exhaustive pair counting and returns the
/// parameters, or the first violated axiom.
pub fn verify_design(d: &IncidenceStructure) -> Result<(u64, u64, u64), DesignViolation> {
    if d.blocks.is_empty() {
        return Err(DesignViolation::Empty);
    }
    if d.blocks.len() != d.v {
        return Err(DesignViolation::BlockCountMismatch(d.blocks.len(), d.v));
    }
    let k = d.blocks[0].len();
    for b in &d.blocks {
        if b.len() != k {
            return Err(DesignViolation::BlockSizeNonConstant);
        }
        if b.iter().any(|&p| p as usize >= d.v) || b.windows(2).any(|w| w[0] >= w[1]) {
            return Err(DesignViolation::MalformedBlock);
        }
    }
    let mut pair_count = vec![0u32; d.v * d.v];
    for b in &d.blocks {
        for (idx, &p) in b.iter().enumerate() {
            for &q in &b[idx + 1..] {
                pair_count[p as usize * d.v + q as usize] += 1;
            }
        }
    }
    let lambda = pair_count[1]; // the (0, 1) pair
    for p in 0..d.v {
        for q in (p + 1)..d.v {
            if pair_count[p * d.v + q] != lambda {
                return Err(DesignViolation::PairMultiplicityNonConstant);
            }
        }
    }
    Ok((d.v as u64, k as u64, lambda as u64))
}

/// The 2-(11,5,2) biplane: translates of the quadratic residues mod 11.
pub fn build_biplane_11() -> IncidenceStructure {
    let base = [1u32, 3, 4, 5, 9];
    let blocks = (0..11u32)
        .map(|t| base.iter().map(|&x| (x + t) % 11).collect())
        .collect();
    IncidenceStructure::new(11, blocks)
}

/// The projective plane of prime order n: points are the 1-dimensional and
/// blocks the 2-dimensional subspaces of a 3-dimensional space over the
/// field with n elements. Parameters (n²+n+1, n+1, 1).
pub fn build_projective_plane(n: u64) -> Result<IncidenceStructure, ConstructError> {
    if !is_prime_u64(n) {
        return Err(ConstructError::CompositeOrder(n));
    }
    let points = plane_points(n);
    let v = points.len();
    // lines are indexed by the same canonical triples, via the dot product
    let blocks: Vec<Vec<u32>> = points
        .iter()
        .map(|line| {
            points
                .iter()
                .enumerate()
                .filter(|(_, p)| (line[0] * p[0] + line[1] * p[1] + line[2] * p[2]) % n == 0)
                .map(|(i, _)| i as u32)
                .collect()
        })
        .collect();
    Ok(IncidenceStructure::new(v, blocks))
}

/// Canonical projective point representatives: (1,a,b), (0,1,c), (0,0,1).
fn plane_points(n: u64) -> Vec<[u64; 3]> {
    let mut points = Vec::with_capacity((n * n + n + 1) as usize);
    for a in 0..n {
        for b in 0..n {
            points.push([1, a, b]);
        }
    }
    for c in 0..n {
        points.push([0, 1, c]);
    }
    points.push([0, 0, 1]);
    points
}

fn canonicalize(mut p: [u64; 3], n: u64) -> [u64; 3] {
    let lead = *p.iter().find(|&&x| x % n != 0).expect("nonzero vector");
    let inv = mod_inverse(lead % n, n);
    for x in &mut p {
        *x = (*x % n) * inv % n;
    }
    p
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    // n prime
    let mut acc = 1u64;
    let mut base = a % n;
    let mut e = n - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % n;
        }
        base = base * base % n;
        e >>= 1;
    }
    acc
}

/// Complement structure: every block replaced by its point-set complement.
pub fn complement_structure(d: &IncidenceStructure) -> IncidenceStructure {
    let blocks = d
        .blocks
        .iter()
        .map(|b| {
            let inside: HashSet<u32> = b.iter().copied().collect();
            (0..d.v as u32).filter(|p| !inside.contains(p)).collect()
        })
        .collect();
    IncidenceStructure::new(d.v, blocks)
}

/// A permutation of point indices, stored as its image array.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self, ConstructError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i as usize >= images.len() || seen[i as usize] {
                return Err(ConstructError::NotBijective);
            }
            seen[i as usize] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// self followed by other.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&x| other.images[x as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn parse_line(line: &str) -> Result<Self, ConstructError> {
        let images: Result<Vec<u32>, _> = line.split_whitespace().map(str::parse).collect();
        Permutation::new(images.map_err(|e| ConstructError::Parse(e.to_string()))?)
    }

    pub fn to_line(&self) -> String {
        let parts: Vec<String> = self.images.iter().map(u32::to_string).collect();
        parts.join(" ")
    }
}

/// Loads a generators file: one image array per line.
pub fn parse_generators(text: &str) -> Result<Vec<Permutation>, ConstructError> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(Permutation::parse_line)
        .collect()
}

/// A generator-driven permutation group; elements are only materialized by
/// the capped closure oracle.
#[derive(Debug, Clone)]
pub struct PermGroup {
    pub generators: Vec<Permutation>,
    pub degree: usize,
}

impl PermGroup {
    pub fn new(generators: Vec<Permutation>) -> Result<Self, ConstructError> {
        let degree = generators.first().map_or(0, Permutation::degree);
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(ConstructError::DegreeMismatch(degree, degree));
        }
        Ok(PermGroup { generators, degree })
    }

    /// Full element closure under composition, bounded by `cap`.
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>, ConstructError> {
        let mut seen: HashSet<Permutation> = HashSet::new();
        let id = Permutation::identity(self.degree);
        let mut queue = VecDeque::from([id.clone()]);
        seen.insert(id);
        while let Some(g) = queue.pop_front() {
            for h in &self.generators {
                let gh = g.then(h);
                if seen.insert(gh.clone()) {
                    if seen.len() > cap {
                        return Err(ConstructError::ClosureCapExceeded(cap));
                    }
                    queue.push_back(gh);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn order(&self, cap: usize) -> Result<usize, ConstructError> {
        Ok(self.elements(cap)?.len())
    }

    /// Orbit of a point under the generated group.
    pub fn point_orbit(&self, start: u32) -> Vec<u32> {
        let mut seen = vec![false; self.degree];
        let mut queue = VecDeque::from([start]);
        seen[start as usize] = true;
        let mut orbit = vec![start];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q as usize] {
                    seen[q as usize] = true;
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }
}

/// An incident (point, block) pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Flag {
    pub point: u32,
    pub block: usize,
}

/// True iff the image of every block under g is a block.
pub fn automorphism_check(d: &IncidenceStructure, g: &Permutation) -> bool {
    if g.degree() != d.v {
        return false;
    }
    d.blocks.iter().all(|b| {
        let mut image: Vec<u32> = b.iter().map(|&p| g.apply(p)).collect();
        image.sort_unstable();
        d.contains_block(&image)
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct FlagOrbitReport {
    pub flag_count: usize,
    pub orbit_size: usize,
    pub transitive: bool,
}

/// Breadth-first closure of one flag under generator application. The
/// generated group is flag-transitive iff the orbit exhausts all v·k flags.
pub fn flag_transitive(
    d: &IncidenceStructure,
    generators: &[Permutation],
) -> Result<FlagOrbitReport, ConstructError> {
    for (i, g) in generators.iter().enumerate() {
        if g.degree() != d.v {
            return Err(ConstructError::DegreeMismatch(g.degree(), d.v));
        }
        if !automorphism_check(d, g) {
            return Err(ConstructError::NotAutomorphism(i));
        }
    }
    let flag_count = d.v * d.block_size();
    if d.blocks.is_empty() || generators.is_empty() {
        return Ok(FlagOrbitReport { flag_count, orbit_size: 0, transitive: false });
    }

    // block permutation induced by each generator
    let block_images: Vec<Vec<usize>> = generators
        .iter()
        .map(|g| {
            d.blocks
                .iter()
                .map(|b| {
                    let mut image: Vec<u32> = b.iter().map(|&p| g.apply(p)).collect();
                    image.sort_unstable();
                    d.block_index(&image).expect("checked automorphism")
                })
                .collect()
        })
        .collect();

    let start = Flag { point: d.blocks[0][0], block: 0 };
    debug_assert!(d.incident(start.point, start.block));
    let mut seen: HashSet<Flag> = HashSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        for (g, blocks) in generators.iter().zip(&block_images) {
            let image = Flag { point: g.apply(f.point), block: blocks[f.block] };
            if seen.insert(image) {
                queue.push_back(image);
            }
        }
    }
    let orbit_size = seen.len();
    Ok(FlagOrbitReport { flag_count, orbit_size, transitive: orbit_size == flag_count })
}

/// The transvection generators of the special linear group of degree 3 over
/// the prime field with n elements, as permutations of the plane's points.
pub fn plane_transvection_generators(n: u64) -> Result<Vec<Permutation>, ConstructError> {
    if !is_prime_u64(n) {
        return Err(ConstructError::CompositeOrder(n));
    }
    let points = plane_points(n);
    let index_of = |p: [u64; 3]| -> u32 {
        points
            .iter()
            .position(|&q| q == p)
            .expect("canonical representative") as u32
    };
    let mut generators = Vec::new();
    for (i, j) in [(0usize, 1usize), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)] {
        // I + E_ij acting on row vectors: x_j += x_i
        let images: Vec<u32> = points
            .iter()
            .map(|p| {
                let mut q = *p;
                q[j] = (q[j] + p[i]) % n;
                index_of(canonicalize(q, n))
            })
            .collect();
        generators.push(Permutation::new(images)?);
    }
    Ok(generators)
}

/// The checked-in degree-11 generators for the biplane's automorphism
/// group: the translation x+1, the multiplier 3x, and an involution; the
/// closure of the three has order 660.
pub const BIPLANE_11_GENERATORS: &str = include_str!("../fixtures/psl2_11.gens");
