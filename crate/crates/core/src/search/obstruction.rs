//! Modular obstructions behind the lower bounds.
//!
//! - If `3 | a` and `3 | b`, every `P` is divisible by 3, so the real part
//!   of a cube is `≡ x0³ mod 9`; sums of three integer cubes never reach
//!   `4 mod 9`.
//! - For two cubes, the real coefficient equation is read mod 9 and the
//!   three pure equations mod 3. A target with no solution of that system
//!   is not a sum of two cubes.

use std::collections::BTreeSet;

use crate::quat::{small_mod, Quaternion, RingParams};

use super::mod9::{cube_mod, decode, SPACE};

/// Residues mod 9 of `x³ + y³ + z³` over all integer triples.
pub fn three_cube_residues_mod9() -> BTreeSet<u8> {
    let mut out = BTreeSet::new();
    for x in 0..9u32 {
        for y in 0..9u32 {
            for z in 0..9u32 {
                out.insert(((x.pow(3) + y.pow(3) + z.pow(3)) % 9) as u8);
            }
        }
    }
    out
}

/// Index of a cube's contribution to the system: real part mod 9 and the
/// three pure parts mod 3, packed into `0..243`.
fn contribution(x: [u8; 4], a9: u32, b9: u32) -> usize {
    let c = cube_mod(x, a9, b9, 9);
    usize::from(c[0]) * 27 + usize::from(c[1] % 3) * 9 + usize::from(c[2] % 3) * 3 + usize::from(c[3] % 3)
}

fn target_index(target: &Quaternion) -> usize {
    let c = target.coeffs();
    small_mod(&c[0], 9) as usize * 27
        + small_mod(&c[1], 3) as usize * 9
        + small_mod(&c[2], 3) as usize * 3
        + small_mod(&c[3], 3) as usize
}

fn combine(u: usize, v: usize) -> usize {
    let real = (u / 27 + v / 27) % 9;
    let pure = |shift: usize| ((u / shift) % 3 + (v / shift) % 3) % 3;
    real * 27 + pure(9) * 9 + pure(3) * 3 + pure(1)
}

/// `true` when no pair `(x, y)` of classes mod 9 satisfies the two-cube
/// coefficient system for `target`, which proves `target ≠ x³ + y³` in
/// `LQ_{a,b}`.
///
/// Equivalent to scanning all `9⁸` tuples; the `x` and `y` halves are
/// enumerated separately and matched through their 243 possible
/// contributions.
pub fn two_cube_obstruction(params: &RingParams, target: &Quaternion) -> bool {
    let (a9, b9) = params.residues(9);
    let mut attained = [false; 243];
    for code in 0..SPACE as u16 {
        attained[contribution(decode(code), a9, b9)] = true;
    }
    let want = target_index(target);
    let reachable: Vec<usize> = (0..243).filter(|&u| attained[u]).collect();
    !reachable
        .iter()
        .any(|&u| reachable.iter().any(|&v| combine(u, v) == want))
}

/// Same answer as [`two_cube_obstruction`] by direct scan of all `9⁸`
/// coefficient tuples.
pub fn two_cube_obstruction_exhaustive(params: &RingParams, target: &Quaternion) -> bool {
    let (a9, b9) = params.residues(9);
    let contributions: Vec<usize> = (0..SPACE as u16)
        .map(|code| contribution(decode(code), a9, b9))
        .collect();
    let want = target_index(target);
    !contributions
        .iter()
        .any(|&u| contributions.iter().any(|&v| combine(u, v) == want))
}
