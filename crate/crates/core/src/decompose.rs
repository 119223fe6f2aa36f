//! Decomposition of cube-subgroup elements into at most 6 cubes (at most 5
//! when `3 | a` and `3 | b`).
//!
//! The pipeline for a target `α`:
//!
//! 1. If `α` is already `≡ 0 mod 6` or `≡ 3 mod 6` (real part mod 6,
//!    imaginary part `≡ 0 mod 6`), one of the two four-cube identities
//!    finishes immediately.
//! 2. Otherwise one or two "congruence roots" `x` are chosen so that the
//!    residual `α - Σ x³` has real part `≡ 0 mod 3` and imaginary part
//!    `≡ 0 mod 6`. Cases 1 and 2 need two roots, whose residue classes come
//!    from a fixed pair table; Case 3 needs one.
//! 3. The residual is `6z` or `6z + 3` and is written with four cubes.
//!
//! Cases 2b and 2c are solved in the normalized ring (`b ≡ 0 mod 3`) and
//! the roots are mapped back through [`Quaternion::swap_iso`].

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::quat::{sum_of_cubes, Quaternion};
use crate::residue::{classify_case, delta, lnr6, CaseKind, CaseTag, ResidueClass};

/// A target together with roots whose cubes sum to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub target: Quaternion,
    pub roots: Vec<Quaternion>,
    pub case: CaseTag,
}

impl Decomposition {
    pub fn count(&self) -> usize {
        self.roots.len()
    }

    /// Recomputes the sum of cubes and checks the root-count bound.
    pub fn verify(&self) -> bool {
        verify(self)
    }
}

pub fn verify(dec: &Decomposition) -> bool {
    if dec.roots.len() > dec.case.kind.cube_bound() {
        return false;
    }
    if classify_case(dec.target.params()).kind != dec.case.kind {
        return false;
    }
    match sum_of_cubes(dec.target.params(), &dec.roots) {
        Ok(sum) => sum == dec.target,
        Err(_) => false,
    }
}

/// `6z = (z+1)³ + (z-1)³ + (-z)³ + (-z)³`.
pub fn identity_6z(z: &Quaternion) -> [Quaternion; 4] {
    let one = BigInt::from(1);
    [z.add_scalar(&one), z.add_scalar(&-&one), -z, -z]
}

/// `6z + 3 = (-z-5)³ + (z+1)³ + (-2z-6)³ + (2z+7)³`.
pub fn identity_6z3(z: &Quaternion) -> [Quaternion; 4] {
    let two = BigInt::from(2);
    [
        (-z).add_scalar(&BigInt::from(-5)),
        z.add_scalar(&BigInt::from(1)),
        z.scale(&-&two).add_scalar(&BigInt::from(-6)),
        z.scale(&two).add_scalar(&BigInt::from(7)),
    ]
}

/// True when `Re(x) ≡ 0 mod 3` and `Im(x) ≡ 0 mod 6`, i.e. `x` is `6z` or `6z + 3`.
pub fn residual_ready(x: &Quaternion) -> bool {
    let [c0, c1, c2, c3] = x.coeffs();
    c0.mod_floor(&BigInt::from(3)).is_zero() && [c1, c2, c3].iter().all(|c| lnr6(c) == 0)
}

/// Writes `x` (which must satisfy [`residual_ready`]) as four cubes.
fn finish(x: &Quaternion) -> [Quaternion; 4] {
    assert!(residual_ready(x), "residual {x} is not 0 or 3 mod 6");
    let six = BigInt::from(6);
    if lnr6(x.real()) == 0 {
        identity_6z(&x.exact_div(&six).expect("divisible by 6"))
    } else {
        let shifted = x.add_scalar(&BigInt::from(-3));
        identity_6z3(&shifted.exact_div(&six).expect("divisible by 6"))
    }
}

fn case_mismatch(alpha: &Quaternion, case: CaseTag) -> Option<Error> {
    if case.swapped {
        return Some(Error::PreconditionViolated(format!(
            "{case} must be normalized with swap_iso before applying the recipe"
        )));
    }
    let actual = classify_case(alpha.params());
    if actual != case {
        return Some(Error::PreconditionViolated(format!(
            "ring LQ_{{{}}} is {actual}, not {case}",
            alpha.params()
        )));
    }
    None
}

/// A root `x` with `Re(x³) ≡ Re(α) mod 3` and `Im(x³) ≡ Im(α) mod 6`.
///
/// `α` must lie in `S` (Case 1), in `T₂ ∪ T₃` (Case 2, normalized ring), or
/// have imaginary coefficients divisible by 3 (Case 3).
pub fn cube_root_congruence(alpha: &Quaternion, case: CaseTag) -> Result<Quaternion> {
    if let Some(err) = case_mismatch(alpha, case) {
        return Err(err);
    }
    let class = ResidueClass::of(alpha);
    let admissible = match case.kind {
        CaseKind::Case1 => class.in_s(),
        CaseKind::Case2a | CaseKind::Case2b | CaseKind::Case2c => class.in_t2() || class.in_t3(),
        CaseKind::Case3 => class.r[1..].iter().all(|r| r % 3 == 0),
    };
    if !admissible {
        return Err(Error::PreconditionViolated(format!(
            "{alpha} has class {class}, outside the recipe domain for {}",
            case.kind
        )));
    }

    let flip = case.kind == CaseKind::Case2c;
    let d = delta(alpha, case.kind);
    let x0 = i64::from(class.r[0]) - 3 * i64::from(d);
    let pure = |r: u8| if flip { 6 - i64::from(r) } else { i64::from(r) };
    Ok(Quaternion::from_coeffs(
        alpha.params(),
        [x0, pure(class.r[1]), pure(class.r[2]), pure(class.r[3])],
    ))
}

type Pair = ([u8; 4], [u8; 4]);

/// Pair tables indexed by target `(t0 mod 3, t1, t2, t3 mod 6)`.
struct PairTables {
    case1: Vec<Pair>,
    case2: Vec<Pair>,
}

fn pair_tables() -> &'static PairTables {
    static TABLES: OnceLock<PairTables> = OnceLock::new();
    TABLES.get_or_init(|| PairTables {
        case1: build_pair_table(CaseKind::Case1),
        case2: build_pair_table(CaseKind::Case2a),
    })
}

fn target_index(t: [u8; 4]) -> usize {
    usize::from(t[0] % 3) * 216 + usize::from(t[1]) * 36 + usize::from(t[2]) * 6 + usize::from(t[3])
}

/// Odd representative in `{1, 3, 5}` of a residue mod 3.
fn odd_rep(r3: u8) -> u8 {
    match r3 % 3 {
        0 => 3,
        1 => 1,
        _ => 5,
    }
}

fn build_pair_table(kind: CaseKind) -> Vec<Pair> {
    let mut table = Vec::with_capacity(3 * 216);
    for t0 in 0..3u8 {
        for t1 in 0..6u8 {
            for t2 in 0..6u8 {
                for t3 in 0..6u8 {
                    let t = [t0, t1, t2, t3];
                    let pair = least_pair(kind, t)
                        .unwrap_or_else(|| panic!("no pair for target {t:?} in {kind}"));
                    table.push(pair);
                }
            }
        }
    }
    table
}

/// Lexicographically least `(α', α'')` for target residues `t`, following
/// the set rule of the case.
fn least_pair(kind: CaseKind, t: [u8; 4]) -> Option<Pair> {
    type Pred = fn(&ResidueClass) -> bool;
    let (first, second): (Pred, Pred) = match kind {
        CaseKind::Case1 => (ResidueClass::in_s, ResidueClass::in_s),
        CaseKind::Case3 => return None,
        _ if t[2].is_multiple_of(3) => (ResidueClass::in_t2, ResidueClass::in_t2),
        _ if t[3].is_multiple_of(3) => (ResidueClass::in_t3, ResidueClass::in_t3),
        _ => (ResidueClass::in_t2, ResidueClass::in_t3),
    };
    crate::residue::all_classes(0, 0)
        .filter(first)
        .find_map(|c| {
            let r = c.r;
            let other = [
                odd_rep((3 + t[0] % 3 - r[0] % 3) % 3),
                (6 + t[1] - r[1]) % 6,
                (6 + t[2] - r[2]) % 6,
                (6 + t[3] - r[3]) % 6,
            ];
            second(&ResidueClass::new(other, 0, 0)).then_some((r, other))
        })
}

/// Residue classes `(α', α'')` in the case's set whose sum matches `α` in
/// the real part mod 3 and the imaginary part mod 6.
pub fn select_pair(alpha: &Quaternion, case: CaseTag) -> Result<(ResidueClass, ResidueClass)> {
    if case.kind == CaseKind::Case3 {
        return Err(Error::PreconditionViolated(
            "Case 3 uses a single congruence root, not a pair".into(),
        ));
    }
    if let Some(err) = case_mismatch(alpha, case) {
        return Err(err);
    }
    let class = ResidueClass::of(alpha);
    let tables = pair_tables();
    let table = if case.kind == CaseKind::Case1 {
        &tables.case1
    } else {
        &tables.case2
    };
    let (first, second) = table[target_index(class.r)];
    Ok((
        ResidueClass::new(first, class.a6, class.b6),
        ResidueClass::new(second, class.a6, class.b6),
    ))
}

/// Membership in the additive group generated by cubes: everything, unless
/// `3 | a` and `3 | b`, where the imaginary coefficients must be divisible by 3.
pub fn member_cube_subgroup(alpha: &Quaternion) -> bool {
    if classify_case(alpha.params()).kind != CaseKind::Case3 {
        return true;
    }
    let three = BigInt::from(3);
    alpha.imag().iter().all(|c| c.mod_floor(&three).is_zero())
}

/// The representative of `residual`'s class with odd real part in `{1,3,5}`
/// and imaginary coefficients in `0..6`.
fn lift_residual(residual: &Quaternion) -> Quaternion {
    let [c0, c1, c2, c3] = residual.coeffs();
    let r0 = odd_rep(crate::quat::small_mod(c0, 3) as u8);
    Quaternion::from_coeffs(
        residual.params(),
        [r0, lnr6(c1), lnr6(c2), lnr6(c3)].map(u32::from),
    )
}

fn decompose_normalized(alpha: &Quaternion, case: CaseTag) -> Result<Vec<Quaternion>> {
    let mut roots = Vec::with_capacity(6);
    let residual = if residual_ready(alpha) {
        alpha.clone()
    } else if case.kind == CaseKind::Case3 {
        let x = cube_root_congruence(alpha, case)?;
        let residual = alpha.try_sub(&x.cube())?;
        roots.push(x);
        residual
    } else {
        let (first, second) = select_pair(alpha, case)?;
        let x1 = cube_root_congruence(&first.lift(alpha.params()), case)?;
        let partial = alpha.try_sub(&x1.cube())?;
        let lift = lift_residual(&partial);
        debug_assert_eq!(ResidueClass::of(&lift), second);
        let x2 = cube_root_congruence(&lift, case)?;
        let residual = partial.try_sub(&x2.cube())?;
        roots.push(x1);
        roots.push(x2);
        residual
    };
    roots.extend(finish(&residual));
    Ok(roots)
}

/// Writes a cube-subgroup element as a sum of at most 6 cubes (5 when
/// `3 | a` and `3 | b`).
pub fn decompose(alpha: &Quaternion) -> Result<Decomposition> {
    if !member_cube_subgroup(alpha) {
        return Err(Error::NotRepresentable(alpha.to_string()));
    }
    let case = classify_case(alpha.params());
    let roots = if case.swapped {
        decompose_normalized(&alpha.swap_iso(), case.normalized())?
            .iter()
            .map(Quaternion::swap_iso)
            .collect()
    } else {
        decompose_normalized(alpha, case)?
    };
    let dec = Decomposition {
        target: alpha.clone(),
        roots,
        case,
    };
    debug_assert!(dec.verify(), "decomposition of {alpha} failed to verify");
    Ok(dec)
}
