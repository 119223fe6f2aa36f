//! Exhaustive certification of the congruence recipes and the pair tables
//! over every residue class, for one choice of `(a mod 6, b mod 6)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::decompose::{cube_root_congruence, select_pair};
use crate::error::{Error, Result};
use crate::quat::{Quaternion, RingParams};
use crate::residue::{
    all_classes, case3_classes, classify_case, s_classes, t_classes, CaseKind, CaseTag,
    ResidueClass,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub case: CaseTag,
    /// Classes run through the cube-root recipe.
    pub classes_checked: usize,
    /// Targets run through the pair table (0 in Case 3).
    pub targets_checked: usize,
    pub failures: Vec<ResidueClass>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn lift_param(r: u8, extra: u8) -> BigInt {
    let base = if r == 0 { 6 } else { r };
    BigInt::from(base + 6 * extra)
}

/// `Re(x³) ≡ Re(α) mod 3` and `Im(x³) ≡ Im(α) mod 6`.
fn congruent_cube(x: &Quaternion, alpha: &Quaternion) -> bool {
    let cube = x.cube();
    let diff = alpha.try_sub(&cube).expect("same ring");
    let c = diff.coeffs();
    c[0].mod_floor(&BigInt::from(3)).is_zero()
        && c[1..].iter().all(|v| v.mod_floor(&BigInt::from(6)).is_zero())
}

/// Runs the recipe on every admissible class and the pair table on every
/// target class, for rings with `a ≡ a6`, `b ≡ b6 mod 6`.
///
/// Each class is tried with two lifts of its coefficients and two lifts of
/// `(a, b)`, so a pass shows the outcome depends on residues only.
pub fn lemma_residue_check(a6: u8, b6: u8) -> Result<LemmaReport> {
    if a6 > 5 || b6 > 5 {
        return Err(Error::InvalidResidues { a6, b6 });
    }
    let original = RingParams::new(lift_param(a6, 0), lift_param(b6, 0))?;
    let case = classify_case(&original);
    // Cases 2b/2c are certified in the normalized ring b ≡ 0 mod 3.
    let (na6, nb6) = if case.swapped { (b6, a6) } else { (a6, b6) };
    let rings: Vec<RingParams> = (0..2)
        .map(|extra| RingParams::new(lift_param(na6, extra), lift_param(nb6, 2 * extra)))
        .collect::<Result<_>>()?;
    let norm = case.normalized();

    let classes = match case.kind {
        CaseKind::Case1 => s_classes(na6, nb6),
        CaseKind::Case3 => case3_classes(na6, nb6),
        _ => t_classes(na6, nb6),
    };
    let mut failures = Vec::new();
    for class in &classes {
        let ok = rings.iter().all(|ring| {
            let canonical = class.lift(ring);
            let shifted = canonical.try_sub(&Quaternion::from_coeffs(ring, [6, 6, -6, 6])).expect("same ring");
            [canonical, shifted].iter().all(|alpha| {
                cube_root_congruence(alpha, norm).is_ok_and(|x| congruent_cube(&x, alpha))
            })
        });
        if !ok {
            failures.push(*class);
        }
    }

    let mut targets_checked = 0;
    if case.kind != CaseKind::Case3 {
        for target in all_classes(na6, nb6) {
            targets_checked += 1;
            if !pair_ok(&target, &rings[0], norm) {
                failures.push(target);
            }
        }
    }

    Ok(LemmaReport {
        case,
        classes_checked: classes.len(),
        targets_checked,
        failures,
    })
}

fn pair_ok(target: &ResidueClass, ring: &RingParams, case: CaseTag) -> bool {
    let Ok((first, second)) = select_pair(&target.lift(ring), case) else {
        return false;
    };
    let sets_ok = match case.kind {
        CaseKind::Case1 => first.in_s() && second.in_s(),
        _ => {
            let (t2, t3) = (target.r[2].is_multiple_of(3), target.r[3].is_multiple_of(3));
            if t2 {
                first.in_t2() && second.in_t2()
            } else if t3 {
                first.in_t3() && second.in_t3()
            } else {
                first.in_t2() && second.in_t3()
            }
        }
    };
    let real_ok = (first.r[0] + second.r[0]) % 3 == target.r[0] % 3;
    let imag_ok = (1..4).all(|n| (first.r[n] + second.r[n]) % 6 == target.r[n]);
    sets_ok && real_ok && imag_ok
}

/// [`lemma_residue_check`] for all 36 pairs `(a mod 6, b mod 6)`.
pub fn check_all_lemmas() -> Vec<((u8, u8), LemmaReport)> {
    (0..6u8)
        .flat_map(|a6| (0..6u8).map(move |b6| (a6, b6)))
        .map(|(a6, b6)| ((a6, b6), lemma_residue_check(a6, b6).expect("residues in range")))
        .collect()
}
