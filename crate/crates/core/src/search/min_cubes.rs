//! Bounded search for a shortest representation as a sum of cubes.
//!
//! Roots range over the box `|cᵢ| ≤ coeff_bound`. A list of roots is kept
//! non-decreasing in lexicographic coefficient order, so the first list
//! found while scanning in that order is the lexicographically least
//! representation of its length.
//!
//! - `k = 1, 2`: single cubes are looked up in a table keyed by the cube's
//!   coefficients (or, for boxes above [`TABLE_LIMIT`] entries, by exact
//!   cube-root inversion).
//! - `k ≥ 3`: the first `k - 2` roots run over the smaller `outer_bound`
//!   box and the last two reuse the `k = 2` step.
//!
//! Every partial residual is checked against the set of classes mod 9 that
//! sums of the remaining number of cubes can reach; this is sound pruning
//! and cuts the `k = 2` scan to roughly a tenth of the box.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive};
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::quat::{Quaternion, RingParams};

use super::mod9::{self, attainable_sums, cube_table, Code, CodeSet};

/// Boxes with more points than this are searched without a lookup table.
pub const TABLE_LIMIT: u64 = 1 << 21;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    pub max_cubes: usize,
    pub coeff_bound: u32,
    /// Box for the leading roots when `max_cubes ≥ 3`; clamped to `coeff_bound`.
    pub outer_bound: u32,
}

impl SearchConfig {
    pub const MAX_CUBES: usize = 4;

    pub fn new(max_cubes: usize, coeff_bound: u32, outer_bound: u32) -> Result<Self> {
        if !(1..=Self::MAX_CUBES).contains(&max_cubes) {
            return Err(Error::PreconditionViolated(format!(
                "max_cubes must be between 1 and {}, got {max_cubes}",
                Self::MAX_CUBES
            )));
        }
        Ok(SearchConfig {
            max_cubes,
            coeff_bound,
            outer_bound,
        })
    }
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_cubes: 3,
            coeff_bound: 10,
            outer_bound: 6,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Serial,
    Parallel,
}

/// Integer types the search can run on.
pub(crate) trait SearchInt:
    Clone + Ord + Hash + Send + Sync + Debug + Integer + Signed + Roots + FromPrimitive + ToPrimitive
{
    fn from_big(n: &BigInt) -> Self;
}

impl SearchInt for i64 {
    fn from_big(n: &BigInt) -> Self {
        i64::try_from(n).expect("magnitude checked before dispatch")
    }
}

impl SearchInt for i128 {
    fn from_big(n: &BigInt) -> Self {
        i128::try_from(n).expect("magnitude checked before dispatch")
    }
}

impl SearchInt for BigInt {
    fn from_big(n: &BigInt) -> Self {
        n.clone()
    }
}

type Coords = [i64; 4];

/// The box `[-bound, bound]⁴`, indexed in lexicographic order.
#[derive(Clone, Copy, Debug)]
struct Grid {
    bound: i64,
    side: u64,
}

impl Grid {
    fn new(bound: u32) -> Self {
        Grid {
            bound: i64::from(bound),
            side: 2 * u64::from(bound) + 1,
        }
    }

    fn len(&self) -> u64 {
        self.side.pow(4)
    }

    fn coords(&self, mut idx: u64) -> Coords {
        let mut c = [0i64; 4];
        for slot in c.iter_mut().rev() {
            *slot = (idx % self.side) as i64 - self.bound;
            idx /= self.side;
        }
        c
    }

    fn index(&self, c: &Coords) -> u64 {
        c.iter()
            .fold(0, |acc, &v| acc * self.side + (v + self.bound) as u64)
    }
}

fn code_of_coords(c: &Coords) -> Code {
    mod9::encode(c.map(|v| v.rem_euclid(9) as u8))
}

fn code_of<T: SearchInt>(c: &[T; 4]) -> Code {
    let nine = T::from_u8(9).expect("small");
    mod9::encode(c.clone().map(|v| v.mod_floor(&nine).to_u8().expect("residue")))
}

fn sub4<T: SearchInt>(x: &[T; 4], y: &[T; 4]) -> [T; 4] {
    std::array::from_fn(|n| x[n].clone() - y[n].clone())
}

struct Ring<T> {
    a: T,
    b: T,
    ab: T,
    cube9: Vec<Code>,
}

impl<T: SearchInt> Ring<T> {
    fn new(params: &RingParams) -> Self {
        let (a9, b9) = params.residues(9);
        Ring {
            a: T::from_big(params.a()),
            b: T::from_big(params.b()),
            ab: T::from_big(&params.ab()),
            cube9: cube_table(a9, b9),
        }
    }

    fn lift(v: i64) -> T {
        T::from_i64(v).expect("coordinate fits")
    }

    fn p_value(&self, v: [&T; 3]) -> T {
        self.a.clone() * v[0].clone() * v[0].clone()
            + self.b.clone() * v[1].clone() * v[1].clone()
            + self.ab.clone() * v[2].clone() * v[2].clone()
    }

    fn cube(&self, c: &Coords) -> [T; 4] {
        let [x0, x1, x2, x3] = c.map(Self::lift);
        let p = self.p_value([&x1, &x2, &x3]);
        let sq = x0.clone() * x0.clone();
        let three = Self::lift(3);
        let real = (sq.clone() - three.clone() * p.clone()) * x0;
        let factor = three * sq - p;
        [real, factor.clone() * x1, factor.clone() * x2, factor * x3]
    }

    fn cube_code(&self, c: &Coords) -> Code {
        self.cube9[usize::from(code_of_coords(c))]
    }

    /// Every `z` in the grid with `z³ = r`, in ascending order.
    fn cube_roots(&self, grid: &Grid, r: &[T; 4]) -> Vec<Coords> {
        let bound = Self::lift(grid.bound);
        let three = Self::lift(3);
        let mut out = Vec::new();
        let [r0, r1, r2, r3] = r;
        if r1.is_zero() && r2.is_zero() && r3.is_zero() {
            // z scalar
            let c = r0.cbrt();
            if c.clone() * c.clone() * c.clone() == *r0 && c.abs() <= bound {
                out.push([c.to_i64().expect("in box"), 0, 0, 0]);
            }
            // 3 z0² = P(v), v ≠ 0, so z³ = -8 z0³
            let eight = Self::lift(8);
            if !r0.is_zero() && r0.is_multiple_of(&eight) {
                let w = -(r0.clone() / eight);
                let z0 = w.cbrt();
                if z0.clone() * z0.clone() * z0.clone() == w && z0.abs() <= bound {
                    let target = three * z0.clone() * z0.clone();
                    let z0 = z0.to_i64().expect("in box");
                    for v1 in -grid.bound..=grid.bound {
                        for v2 in -grid.bound..=grid.bound {
                            let (t1, t2) = (Self::lift(v1), Self::lift(v2));
                            let rem = target.clone()
                                - self.a.clone() * t1.clone() * t1
                                - self.b.clone() * t2.clone() * t2;
                            if rem.is_negative() || !rem.is_multiple_of(&self.ab) {
                                continue;
                            }
                            let s = rem / self.ab.clone();
                            let v3 = s.sqrt();
                            if v3.clone() * v3.clone() != s || v3 > bound {
                                continue;
                            }
                            let v3 = v3.to_i64().expect("in box");
                            out.push([z0, v1, v2, v3]);
                            if v3 != 0 {
                                out.push([z0, v1, v2, -v3]);
                            }
                        }
                    }
                }
            }
        } else {
            // z = z0 + t·u with u the primitive direction of Im(r) and
            // (3 z0² - P(z)) t = gcd(Im r)
            let g = r1.gcd(r2).gcd(r3);
            let u = [r1, r2, r3].map(|v| v.clone() / g.clone());
            let umax = u.iter().map(|v| v.abs()).max().expect("three entries");
            if umax > bound {
                return out;
            }
            let pu = self.p_value([&u[0], &u[1], &u[2]]);
            let tmax = (bound.clone() / umax).min(g.clone());
            let mut t = T::one();
            while t <= tmax {
                if g.is_multiple_of(&t) {
                    for st in [t.clone(), -t.clone()] {
                        let m = g.clone() / st.clone();
                        let pz = st.clone() * st.clone() * pu.clone();
                        let s = m + pz.clone();
                        if s.is_negative() || !s.is_multiple_of(&three) {
                            continue;
                        }
                        let sq = s / three.clone();
                        let z0 = sq.sqrt();
                        if z0.clone() * z0.clone() != sq || z0 > bound {
                            continue;
                        }
                        let pure = u.clone().map(|v| (v * st.clone()).to_i64().expect("in box"));
                        let mags = if z0.is_zero() {
                            vec![z0]
                        } else {
                            vec![z0.clone(), -z0]
                        };
                        for z in mags {
                            let real = (z.clone() * z.clone() - three.clone() * pz.clone()) * z.clone();
                            if real == *r0 {
                                out.push([z.to_i64().expect("in box"), pure[0], pure[1], pure[2]]);
                            }
                        }
                    }
                }
                t = t + T::one();
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// How single cubes are found inside the grid.
trait CubeSpace<T>: Sync {
    fn cube(&self, idx: u64) -> [T; 4];
    fn cube_code(&self, idx: u64) -> Code;
    /// Least `z ≥ lo` with `z³ = r`.
    fn root_at_least(&self, r: &[T; 4], lo: u64) -> Option<u64>;
    /// Least `(y, z)` with `lo ≤ y ≤ z` and `y³ + z³ = r`.
    fn pair(&self, r: &[T; 4], code: Code, lo: u64, singles: &CodeSet, exec: Exec) -> Option<(u64, u64)>;
}

/// Precomputed cubes, a hash index from cube to root, and roots grouped by
/// the class of their cube mod 9.
struct TableSpace<'r, T> {
    ring: &'r Ring<T>,
    grid: Grid,
    cubes: Vec<[T; 4]>,
    codes: Vec<Code>,
    head: FxHashMap<[T; 4], u32>,
    next: Vec<u32>,
    groups: Vec<(Code, Vec<u32>)>,
}

impl<'r, T: SearchInt> TableSpace<'r, T> {
    fn new(ring: &'r Ring<T>, grid: Grid) -> Self {
        let n = grid.len() as usize;
        let mut cubes = Vec::with_capacity(n);
        let mut codes = Vec::with_capacity(n);
        for idx in 0..grid.len() {
            let c = grid.coords(idx);
            cubes.push(ring.cube(&c));
            codes.push(ring.cube_code(&c));
        }
        let mut head = FxHashMap::default();
        head.reserve(n);
        let mut next = vec![NONE; n];
        for idx in (0..n).rev() {
            if let Some(prev) = head.insert(cubes[idx].clone(), idx as u32) {
                next[idx] = prev;
            }
        }
        let mut by_code: Vec<Vec<u32>> = vec![Vec::new(); mod9::SPACE];
        for (idx, &code) in codes.iter().enumerate() {
            by_code[usize::from(code)].push(idx as u32);
        }
        let groups = by_code
            .into_iter()
            .enumerate()
            .filter(|(_, v)| !v.is_empty())
            .map(|(code, v)| (code as Code, v))
            .collect();
        TableSpace {
            ring,
            grid,
            cubes,
            codes,
            head,
            next,
            groups,
        }
    }

    fn chain_at_least(&self, start: u32, lo: u64) -> Option<u64> {
        let mut z = start;
        while z != NONE {
            if u64::from(z) >= lo {
                return Some(u64::from(z));
            }
            z = self.next[z as usize];
        }
        None
    }

    /// First `y` in `group` with `lo ≤ y < limit` that completes a pair.
    fn scan_group(&self, group: &[u32], r: &[T; 4], lo: u64, limit: u64) -> Option<(u64, u64)> {
        let start = group.partition_point(|&y| u64::from(y) < lo);
        for &y in &group[start..] {
            let y = u64::from(y);
            if y >= limit {
                break;
            }
            let rest = sub4(r, &self.cubes[y as usize]);
            if let Some(&h) = self.head.get(&rest) {
                if let Some(z) = self.chain_at_least(h, y) {
                    return Some((y, z));
                }
            }
        }
        None
    }
}

impl<T: SearchInt> CubeSpace<T> for TableSpace<'_, T> {
    fn cube(&self, idx: u64) -> [T; 4] {
        self.cubes[idx as usize].clone()
    }

    fn cube_code(&self, idx: u64) -> Code {
        self.codes[idx as usize]
    }

    fn root_at_least(&self, r: &[T; 4], lo: u64) -> Option<u64> {
        let &h = self.head.get(r)?;
        self.chain_at_least(h, lo)
    }

    fn pair(&self, r: &[T; 4], code: Code, lo: u64, singles: &CodeSet, exec: Exec) -> Option<(u64, u64)> {
        let live: Vec<&[u32]> = self
            .groups
            .iter()
            .filter(|(c, _)| singles.contains(mod9::sub(code, *c)))
            .map(|(_, v)| v.as_slice())
            .collect();
        match exec {
            Exec::Serial => {
                let mut best: Option<(u64, u64)> = None;
                for group in live {
                    let limit = best.map_or(u64::MAX, |b| b.0);
                    if let Some(hit) = self.scan_group(group, r, lo, limit) {
                        best = Some(best.map_or(hit, |b| b.min(hit)));
                    }
                }
                best
            }
            Exec::Parallel => live
                .par_iter()
                .filter_map(|group| self.scan_group(group, r, lo, u64::MAX))
                .min(),
        }
        .map(|(y, z)| {
            debug_assert!(self.ring.cube(&self.grid.coords(z)) == sub4(r, &self.cubes[y as usize]));
            (y, z)
        })
    }
}

/// No precomputation: cubes are evaluated on the fly and inverted exactly.
struct ScanSpace<'r, T> {
    ring: &'r Ring<T>,
    grid: Grid,
}

impl<T: SearchInt> ScanSpace<'_, T> {
    fn scan(&self, r: &[T; 4], code: Code, range: std::ops::Range<u64>, singles: &CodeSet) -> Option<(u64, u64)> {
        for y in range {
            let c = self.grid.coords(y);
            if !singles.contains(mod9::sub(code, self.ring.cube_code(&c))) {
                continue;
            }
            let rest = sub4(r, &self.ring.cube(&c));
            if let Some(z) = self.root_at_least(&rest, y) {
                return Some((y, z));
            }
        }
        None
    }
}

impl<T: SearchInt> CubeSpace<T> for ScanSpace<'_, T> {
    fn cube(&self, idx: u64) -> [T; 4] {
        self.ring.cube(&self.grid.coords(idx))
    }

    fn cube_code(&self, idx: u64) -> Code {
        self.ring.cube_code(&self.grid.coords(idx))
    }

    fn root_at_least(&self, r: &[T; 4], lo: u64) -> Option<u64> {
        self.ring
            .cube_roots(&self.grid, r)
            .iter()
            .map(|c| self.grid.index(c))
            .find(|&z| z >= lo)
    }

    fn pair(&self, r: &[T; 4], code: Code, lo: u64, singles: &CodeSet, exec: Exec) -> Option<(u64, u64)> {
        let n = self.grid.len();
        match exec {
            Exec::Serial => self.scan(r, code, lo..n, singles),
            Exec::Parallel => {
                const CHUNKS: u64 = 256;
                let width = (n - lo.min(n)).div_ceil(CHUNKS).max(1);
                (0..CHUNKS)
                    .into_par_iter()
                    .find_map_first(|c| {
                        let start = (lo + c * width).min(n);
                        let end = (start + width).min(n);
                        self.scan(r, code, start..end, singles)
                    })
            }
        }
    }
}

struct Searcher<'s, T, S> {
    space: &'s S,
    outer: Vec<u64>,
    /// `sums[k - 1]`: classes mod 9 reachable by exactly `k` cubes.
    sums: Vec<CodeSet>,
    _int: std::marker::PhantomData<T>,
}

impl<T: SearchInt, S: CubeSpace<T>> Searcher<'_, T, S> {
    fn search(&self, k: usize, r: &[T; 4], code: Code, lo: u64, exec: Exec) -> Option<Vec<u64>> {
        match k {
            1 => self.space.root_at_least(r, lo).map(|z| vec![z]),
            2 => self
                .space
                .pair(r, code, lo, &self.sums[0], exec)
                .map(|(y, z)| vec![y, z]),
            _ => {
                let start = self.outer.partition_point(|&x| x < lo);
                let step = |&x: &u64| {
                    let rest_code = mod9::sub(code, self.space.cube_code(x));
                    if !self.sums[k - 2].contains(rest_code) {
                        return None;
                    }
                    let rest = sub4(r, &self.space.cube(x));
                    self.search(k - 1, &rest, rest_code, x, Exec::Serial)
                        .map(|tail| std::iter::once(x).chain(tail).collect())
                };
                match exec {
                    Exec::Serial => self.outer[start..].iter().find_map(step),
                    Exec::Parallel => self.outer[start..].par_iter().find_map_first(step),
                }
            }
        }
    }
}

fn run<T: SearchInt>(alpha: &Quaternion, cfg: &SearchConfig, exec: Exec) -> Option<Vec<Quaternion>> {
    let params = alpha.params();
    let ring = Ring::<T>::new(params);
    let grid = Grid::new(cfg.coeff_bound);
    let target: [T; 4] = alpha.coeffs().clone().map(|c| T::from_big(&c));
    let code = code_of(&target);
    let sums = attainable_sums(&ring.cube9, cfg.max_cubes);
    if !(1..=cfg.max_cubes).any(|k| sums[k - 1].contains(code)) {
        return None;
    }

    let outer_grid = Grid::new(cfg.outer_bound.min(cfg.coeff_bound));
    let outer: Vec<u64> = if cfg.max_cubes >= 3 {
        (0..outer_grid.len())
            .map(|i| grid.index(&outer_grid.coords(i)))
            .collect()
    } else {
        Vec::new()
    };

    let found = if grid.len() <= TABLE_LIMIT {
        let space = TableSpace::new(&ring, grid);
        search_lengths(&space, outer, sums, cfg.max_cubes, &target, code, exec)
    } else {
        let space = ScanSpace { ring: &ring, grid };
        search_lengths(&space, outer, sums, cfg.max_cubes, &target, code, exec)
    }?;
    Some(
        found
            .into_iter()
            .map(|idx| Quaternion::from_coeffs(params, grid.coords(idx)))
            .collect(),
    )
}

fn search_lengths<T: SearchInt, S: CubeSpace<T>>(
    space: &S,
    outer: Vec<u64>,
    sums: Vec<CodeSet>,
    max_cubes: usize,
    target: &[T; 4],
    code: Code,
    exec: Exec,
) -> Option<Vec<u64>> {
    let searcher = Searcher {
        space,
        outer,
        sums,
        _int: std::marker::PhantomData,
    };
    (1..=max_cubes)
        .filter(|&k| searcher.sums[k - 1].contains(code))
        .find_map(|k| searcher.search(k, target, code, 0, exec))
}

/// Largest magnitude any intermediate value can reach during a search.
fn magnitude_bound(alpha: &Quaternion, cfg: &SearchConfig) -> BigInt {
    let params = alpha.params();
    let b = BigInt::from(cfg.coeff_bound.max(1));
    let p_max = (params.a() + params.b() + params.ab()) * &b * &b;
    let cube_max = (&b * &b + &p_max * 3u32) * &b + (&b * &b * 3u32 + &p_max) * &b;
    let target_max = alpha.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    target_max + cube_max * (cfg.max_cubes + 2) + params.ab() + BigInt::one()
}

/// Shortest representation of `alpha` as a sum of at most `max_cubes` cubes
/// with roots in the configured box, or `None` if there is none there.
///
/// `None` says nothing about representations outside the box. Among the
/// shortest representations the lexicographically least non-decreasing list
/// is returned; the result does not depend on `exec`.
pub fn min_cubes_search_with(alpha: &Quaternion, cfg: &SearchConfig, exec: Exec) -> Option<Vec<Quaternion>> {
    let m = magnitude_bound(alpha, cfg) * 16u32;
    if m < BigInt::from(i64::MAX) {
        run::<i64>(alpha, cfg, exec)
    } else if m < BigInt::from(i128::MAX) {
        run::<i128>(alpha, cfg, exec)
    } else {
        run::<BigInt>(alpha, cfg, exec)
    }
}

pub fn min_cubes_search(alpha: &Quaternion, cfg: &SearchConfig) -> Option<Vec<Quaternion>> {
    min_cubes_search_with(alpha, cfg, Exec::Parallel)
}
