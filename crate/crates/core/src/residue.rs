//! Residue-class machinery: the mod-3 case split of `(a, b)`, residues mod 6,
//! the sets `S`, `T₂`, `T₃` and the `δ` selector used by the cube-root recipes.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::Serialize;

use crate::error::Result;
use crate::quat::{small_mod, Quaternion, RingParams};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseKind {
    /// `3 ∤ ab` and at least one of `a, b` is `2 mod 3`.
    Case1,
    /// `a ≡ b ≡ 1 mod 3`.
    Case2a,
    /// One of `a, b` is `0 mod 3`, the other `2 mod 3`.
    Case2b,
    /// One of `a, b` is `0 mod 3`, the other `1 mod 3`.
    Case2c,
    /// `3 | a` and `3 | b`.
    Case3,
}

impl CaseKind {
    /// Number of cubes the decomposer guarantees for this case.
    pub fn cube_bound(self) -> usize {
        match self {
            CaseKind::Case3 => 5,
            _ => 6,
        }
    }

    pub fn is_case2(self) -> bool {
        matches!(self, CaseKind::Case2a | CaseKind::Case2b | CaseKind::Case2c)
    }

    pub fn name(self) -> &'static str {
        match self {
            CaseKind::Case1 => "Case1",
            CaseKind::Case2a => "Case2a",
            CaseKind::Case2b => "Case2b",
            CaseKind::Case2c => "Case2c",
            CaseKind::Case3 => "Case3",
        }
    }
}

impl fmt::Display for CaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Case of a ring, plus whether `(a, b)` must be exchanged to reach the
/// normalized form `b ≡ 0 mod 3` used by Cases 2b and 2c.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseTag {
    pub kind: CaseKind,
    pub swapped: bool,
}

impl CaseTag {
    pub fn normalized(self) -> CaseTag {
        CaseTag {
            kind: self.kind,
            swapped: false,
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        if self.swapped {
            f.write_str(" (swapped)")?;
        }
        Ok(())
    }
}

pub fn classify_case(params: &RingParams) -> CaseTag {
    let (a3, b3) = params.residues(3);
    classify_residues(a3, b3)
}

/// Classification from `a mod 3` and `b mod 3` alone.
pub fn classify_residues(a3: u32, b3: u32) -> CaseTag {
    let (kind, swapped) = match (a3 % 3, b3 % 3) {
        (0, 0) => (CaseKind::Case3, false),
        (1, 1) => (CaseKind::Case2a, false),
        (2, 0) => (CaseKind::Case2b, false),
        (0, 2) => (CaseKind::Case2b, true),
        (1, 0) => (CaseKind::Case2c, false),
        (0, 1) => (CaseKind::Case2c, true),
        // remaining pairs: 3 ∤ ab and some parameter is 2 mod 3
        _ => (CaseKind::Case1, false),
    };
    CaseTag { kind, swapped }
}

/// Least non-negative residue mod 6.
pub fn lnr6(n: &BigInt) -> u8 {
    small_mod(n, 6) as u8
}

/// Coefficients of a quaternion reduced mod 6, together with `a, b mod 6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ResidueClass {
    pub r: [u8; 4],
    pub a6: u8,
    pub b6: u8,
}

const UNITS6: [u8; 4] = [1, 2, 4, 5];

fn is_unit3(r: u8) -> bool {
    !r.is_multiple_of(3)
}

impl ResidueClass {
    pub fn new(r: [u8; 4], a6: u8, b6: u8) -> Self {
        debug_assert!(r.iter().chain([&a6, &b6]).all(|&v| v < 6));
        ResidueClass { r, a6, b6 }
    }

    pub fn of(x: &Quaternion) -> Self {
        let (a6, b6) = x.params().residues(6);
        ResidueClass {
            r: std::array::from_fn(|n| lnr6(&x.coeffs()[n])),
            a6: a6 as u8,
            b6: b6 as u8,
        }
    }

    /// The representative with coefficients in `0..6`, placed in `params`.
    pub fn lift(&self, params: &RingParams) -> Quaternion {
        Quaternion::from_coeffs(params, self.r.map(u32::from))
    }

    /// `2 ∤ c0` and `3 ∤ c1 c2 c3`.
    pub fn in_s(&self) -> bool {
        let [r0, r1, r2, r3] = self.r;
        r0 % 2 == 1 && is_unit3(r1) && is_unit3(r2) && is_unit3(r3)
    }

    /// `2 ∤ c0`, `3 ∤ c1 c3` and `3 | c2`.
    pub fn in_t2(&self) -> bool {
        let [r0, r1, r2, r3] = self.r;
        r0 % 2 == 1 && is_unit3(r1) && !is_unit3(r2) && is_unit3(r3)
    }

    /// `2 ∤ c0`, `3 ∤ c1 c2` and `3 | c3`.
    pub fn in_t3(&self) -> bool {
        let [r0, r1, r2, r3] = self.r;
        r0 % 2 == 1 && is_unit3(r1) && is_unit3(r2) && !is_unit3(r3)
    }

    /// Parity of `P` read off the residues.
    pub fn p_parity(&self) -> u8 {
        let [_, r1, r2, r3] = self.r.map(u32::from);
        let (a, b) = (u32::from(self.a6), u32::from(self.b6));
        ((a * r1 * r1 + b * r2 * r2 + a * b * r3 * r3) % 2) as u8
    }

    /// `δ` computed from residue data only; agrees with [`delta`].
    pub fn delta(&self, case: CaseKind) -> u8 {
        let p = self.p_parity();
        match case {
            CaseKind::Case3 => u8::from(p == self.r[0] % 2),
            _ => p,
        }
    }
}

impl fmt::Display for ResidueClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [r0, r1, r2, r3] = self.r;
        write!(f, "({r0}; {r1},{r2},{r3}) mod 6 in (a,b) ≡ ({},{})", self.a6, self.b6)
    }
}

/// Every class in `S` for the given ring residues, in lexicographic order.
pub fn s_classes(a6: u8, b6: u8) -> Vec<ResidueClass> {
    let mut out = Vec::with_capacity(192);
    for r0 in [1, 3, 5] {
        for r1 in UNITS6 {
            for r2 in UNITS6 {
                for r3 in UNITS6 {
                    out.push(ResidueClass::new([r0, r1, r2, r3], a6, b6));
                }
            }
        }
    }
    out
}

/// Every class in `T₂ ∪ T₃`, in lexicographic order.
pub fn t_classes(a6: u8, b6: u8) -> Vec<ResidueClass> {
    all_classes(a6, b6)
        .filter(|c| c.in_t2() || c.in_t3())
        .collect()
}

/// Every class of a Case-3 cube-subgroup element: imaginary residues in `{0, 3}`.
pub fn case3_classes(a6: u8, b6: u8) -> Vec<ResidueClass> {
    all_classes(a6, b6)
        .filter(|c| c.r[1..].iter().all(|&v| v % 3 == 0))
        .collect()
}

/// All `6⁴` classes in lexicographic order.
pub fn all_classes(a6: u8, b6: u8) -> impl Iterator<Item = ResidueClass> {
    (0..6u16.pow(4)).map(move |n| {
        let r = std::array::from_fn(|pos| ((n / 6u16.pow(3 - pos as u32)) % 6) as u8);
        ResidueClass::new(r, a6, b6)
    })
}

/// `δ`: in Cases 1 and 2, `1` iff `P` is odd; in Case 3, `1` iff `P ≡ c0 mod 2`.
pub fn delta(x: &Quaternion, case: CaseKind) -> u8 {
    let p_odd = x.p_value().is_odd();
    match case {
        CaseKind::Case3 => u8::from(p_odd == x.real().is_odd()),
        _ => u8::from(p_odd),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parts {
    Real,
    Imaginary,
    All,
}

/// Whether `m` divides the selected coefficients of `x - y`.
pub fn congruent_mod(x: &Quaternion, y: &Quaternion, m: &BigInt, parts: Parts) -> Result<bool> {
    let diff = x.try_sub(y)?;
    let range = match parts {
        Parts::Real => 0..1,
        Parts::Imaginary => 1..4,
        Parts::All => 0..4,
    };
    Ok(diff.coeffs()[range].iter().all(|c| c.mod_floor(m).is_zero()))
}
