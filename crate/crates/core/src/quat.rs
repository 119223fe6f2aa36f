//! Exact arithmetic in the quaternion rings `LQ_{a,b}`.
//!
//! An element is `c0 + c1 i + c2 j + c3 k` with integer coefficients, where
//!
//! - `i² = -a`, `j² = -b`, `k² = -ab`
//! - `ij = k`, `ji = -k`
//! - `ik = -a j`, `ki = a j`, `jk = b i`, `kj = -b i`
//!
//! The last row is derived from the first two (e.g. `ik = i(ij) = i² j`).
//! Coefficients are `BigInt`, so nothing overflows.

use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The pair `(a, b)` of positive integers defining `LQ_{a,b}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingParams {
    a: BigInt,
    b: BigInt,
}

impl RingParams {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if !a.is_positive() || !b.is_positive() {
            return Err(Error::InvalidParams {
                a: a.to_string(),
                b: b.to_string(),
            });
        }
        Ok(RingParams { a, b })
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn ab(&self) -> BigInt {
        &self.a * &self.b
    }

    /// Parameters of the ring reached by exchanging `i` and `j`.
    pub fn swapped(&self) -> RingParams {
        RingParams {
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }

    /// `a mod m` and `b mod m` as small non-negative residues.
    pub fn residues(&self, m: u32) -> (u32, u32) {
        (small_mod(&self.a, m), small_mod(&self.b, m))
    }

    pub fn zero(&self) -> Quaternion {
        Quaternion::scalar(self, 0)
    }

    pub fn one(&self) -> Quaternion {
        Quaternion::scalar(self, 1)
    }

    pub fn i(&self) -> Quaternion {
        Quaternion::from_coeffs(self, [0, 1, 0, 0])
    }

    pub fn j(&self) -> Quaternion {
        Quaternion::from_coeffs(self, [0, 0, 1, 0])
    }

    pub fn k(&self) -> Quaternion {
        Quaternion::from_coeffs(self, [0, 0, 0, 1])
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// Least non-negative residue of `n` modulo a small positive `m`.
pub(crate) fn small_mod(n: &BigInt, m: u32) -> u32 {
    let r = n.mod_floor(&BigInt::from(m));
    u32::try_from(r).expect("residue below modulus")
}

/// An element of `LQ_{a,b}`, bound to its ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quaternion {
    params: RingParams,
    coeffs: [BigInt; 4],
}

/// The quadratic form `P = a c1² + b c2² + ab c3²` of a quaternion.
///
/// The square of the pure part is `-P`, so `P ≥ 0` with equality exactly
/// when the pure part vanishes.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PValue(BigInt);

impl PValue {
    pub fn value(&self) -> &BigInt {
        &self.0
    }

    pub fn into_inner(self) -> BigInt {
        self.0
    }

    pub fn is_odd(&self) -> bool {
        self.0.is_odd()
    }
}

impl fmt::Display for PValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl Quaternion {
    pub fn new(params: &RingParams, coeffs: [BigInt; 4]) -> Self {
        Quaternion {
            params: params.clone(),
            coeffs,
        }
    }

    pub fn from_coeffs<T: Into<BigInt>>(params: &RingParams, coeffs: [T; 4]) -> Self {
        Quaternion::new(params, coeffs.map(Into::into))
    }

    pub fn scalar(params: &RingParams, n: impl Into<BigInt>) -> Self {
        Quaternion::new(
            params,
            [n.into(), BigInt::zero(), BigInt::zero(), BigInt::zero()],
        )
    }

    pub fn params(&self) -> &RingParams {
        &self.params
    }

    /// Coefficients of `1, i, j, k` in that order.
    pub fn coeffs(&self) -> &[BigInt; 4] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> [BigInt; 4] {
        self.coeffs
    }

    pub fn real(&self) -> &BigInt {
        &self.coeffs[0]
    }

    pub fn imag(&self) -> &[BigInt] {
        &self.coeffs[1..]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_scalar(&self) -> bool {
        self.imag().iter().all(Zero::is_zero)
    }

    fn check_ring(&self, other: &Quaternion) -> Result<()> {
        if self.params == other.params {
            Ok(())
        } else {
            Err(Error::MixedRings {
                left: self.params.to_string(),
                right: other.params.to_string(),
            })
        }
    }

    fn zip_with(&self, other: &Quaternion, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        self.check_ring(other)?;
        let c = std::array::from_fn(|n| f(&self.coeffs[n], &other.coeffs[n]));
        Ok(Quaternion::new(&self.params, c))
    }

    pub fn try_add(&self, other: &Quaternion) -> Result<Self> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &Quaternion) -> Result<Self> {
        self.zip_with(other, |x, y| x - y)
    }

    /// Full non-commutative product.
    pub fn try_mul(&self, other: &Quaternion) -> Result<Self> {
        self.check_ring(other)?;
        let [x0, x1, x2, x3] = &self.coeffs;
        let [y0, y1, y2, y3] = &other.coeffs;
        let (a, b) = (&self.params.a, &self.params.b);
        let ab = self.params.ab();

        let c0 = x0 * y0 - a * (x1 * y1) - b * (x2 * y2) - &ab * (x3 * y3);
        let c1 = x0 * y1 + x1 * y0 + b * (x2 * y3 - x3 * y2);
        let c2 = x0 * y2 + x2 * y0 - a * (x1 * y3 - x3 * y1);
        let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(Quaternion::new(&self.params, [c0, c1, c2, c3]))
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        Quaternion::new(&self.params, self.coeffs.clone().map(|c| c * n))
    }

    pub fn add_scalar(&self, n: &BigInt) -> Self {
        let mut c = self.coeffs.clone();
        c[0] += n;
        Quaternion::new(&self.params, c)
    }

    /// Divides every coefficient by `d`, or `None` when `d` does not divide
    /// all of them.
    pub fn exact_div(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let mut out = self.coeffs.clone();
        for c in out.iter_mut() {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            *c = q;
        }
        Some(Quaternion::new(&self.params, out))
    }

    pub fn p_value(&self) -> PValue {
        let [_, c1, c2, c3] = &self.coeffs;
        PValue(&self.params.a * (c1 * c1) + &self.params.b * (c2 * c2) + self.params.ab() * (c3 * c3))
    }

    /// Cube via the closed form
    /// `x³ = (c0² - 3P) c0 + (3 c0² - P)(c1 i + c2 j + c3 k)`.
    pub fn cube(&self) -> Self {
        let p = self.p_value().into_inner();
        let c0 = &self.coeffs[0];
        let sq = c0 * c0;
        let real = (&sq - &p * 3u32) * c0;
        let factor = sq * 3u32 - p;
        let [_, c1, c2, c3] = &self.coeffs;
        Quaternion::new(&self.params, [real, &factor * c1, &factor * c2, &factor * c3])
    }

    /// Cube by two explicit multiplications; independent of [`Quaternion::cube`].
    pub fn cube_by_mul(&self) -> Self {
        let sq = self.try_mul(self).expect("same ring");
        sq.try_mul(self).expect("same ring")
    }

    /// The isomorphism `LQ_{a,b} → LQ_{b,a}` sending `i ↦ j'`, `j ↦ i'`,
    /// and hence `k ↦ -k'`.
    pub fn swap_iso(&self) -> Self {
        let [c0, c1, c2, c3] = &self.coeffs;
        Quaternion {
            params: self.params.swapped(),
            coeffs: [c0.clone(), c2.clone(), c1.clone(), -c3],
        }
    }

    /// Re-binds the coefficients to another ring without changing them.
    pub fn with_params(&self, params: &RingParams) -> Self {
        Quaternion::new(params, self.coeffs.clone())
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        Quaternion {
            params: self.params,
            coeffs: self.coeffs.map(|c| -c),
        }
    }
}

impl Neg for &Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        -self.clone()
    }
}

/// Sum of the cubes of `roots`, all of which must share `params`.
pub fn sum_of_cubes(params: &RingParams, roots: &[Quaternion]) -> Result<Quaternion> {
    roots
        .iter()
        .try_fold(params.zero(), |acc, r| acc.try_add(&r.cube()))
}

impl fmt::Display for Quaternion {
    /// Renders as e.g. `3 + 3i - 2k`; the zero element renders as `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNITS: [&str; 4] = ["", "i", "j", "k"];
        let mut first = true;
        for (c, unit) in self.coeffs.iter().zip(UNITS) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            if unit.is_empty() || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            f.write_str(unit)?;
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(a: i64, b: i64) -> RingParams {
        RingParams::new(a, b).unwrap()
    }

    fn q(r: &RingParams, c: [i64; 4]) -> Quaternion {
        Quaternion::from_coeffs(r, c)
    }

    #[test]
    fn params_must_be_positive() {
        assert!(RingParams::new(0, 1).is_err());
        assert!(RingParams::new(1, -3).is_err());
        assert!(RingParams::new(1, 1).is_ok());
    }

    #[test]
    fn add_sub_neg() {
        let r = ring(1, 1);
        let x = q(&r, [1, 1, 0, 0]);
        let y = q(&r, [2, 0, 1, 0]);
        assert_eq!(x.try_add(&y).unwrap(), q(&r, [3, 1, 1, 0]));
        assert!(x.try_add(&-&x).unwrap().is_zero());
        assert_eq!(x.try_sub(&y).unwrap(), q(&r, [-1, 1, -1, 0]));
    }

    #[test]
    fn mixed_rings_rejected() {
        let x = q(&ring(1, 1), [1, 1, 0, 0]);
        let y = q(&ring(2, 1), [1, 1, 0, 0]);
        assert!(matches!(x.try_add(&y), Err(Error::MixedRings { .. })));
        assert!(matches!(x.try_mul(&y), Err(Error::MixedRings { .. })));
    }

    #[test]
    fn basis_products() {
        let r = ring(2, 3);
        let (one, i, j, k) = (r.one(), r.i(), r.j(), r.k());
        let m = |x: &Quaternion, y: &Quaternion| x.try_mul(y).unwrap();
        assert_eq!(m(&i, &i), one.scale(&BigInt::from(-2)));
        assert_eq!(m(&j, &j), one.scale(&BigInt::from(-3)));
        assert_eq!(m(&k, &k), one.scale(&BigInt::from(-6)));
        assert_eq!(m(&i, &j), k);
        assert_eq!(m(&j, &i), -&k);
        assert_eq!(m(&i, &k), j.scale(&BigInt::from(-2)));
        assert_eq!(m(&k, &i), j.scale(&BigInt::from(2)));
        assert_eq!(m(&j, &k), i.scale(&BigInt::from(3)));
        assert_eq!(m(&k, &j), i.scale(&BigInt::from(-3)));
        // ik = i(ij) must agree with the associative expansion
        assert_eq!(m(&i, &k), m(&m(&i, &i), &j));
    }

    #[test]
    fn p_value_examples() {
        assert_eq!(q(&ring(2, 3), [1, 1, 1, 1]).p_value().into_inner(), BigInt::from(11));
        assert_eq!(q(&ring(2, 3), [17, 0, 0, 0]).p_value().into_inner(), BigInt::zero());
        assert_eq!(q(&ring(1, 1), [1, 1, 1, 1]).p_value().into_inner(), BigInt::from(3));
    }

    #[test]
    fn cube_examples() {
        let r = ring(1, 1);
        let x = q(&r, [1, 1, 1, 1]);
        assert_eq!(x.cube(), r.one().scale(&BigInt::from(-8)));
        assert_eq!(x.cube(), x.cube_by_mul());
        assert_eq!(q(&r, [-2, 0, 0, 0]).cube(), q(&r, [-8, 0, 0, 0]));

        let r = ring(3, 3);
        let x = q(&r, [-2, 3, 3, 3]);
        // pure factor 3·4 - 135 = -123 multiplies each coefficient 3
        assert_eq!(x.cube(), q(&r, [802, -369, -369, -369]));
        assert_eq!(x.cube_by_mul(), q(&r, [802, -369, -369, -369]));
    }

    #[test]
    fn swap_iso_examples() {
        let r = ring(2, 3);
        let s = r.swapped();
        assert_eq!(r.i().swap_iso(), s.j());
        assert_eq!(r.j().swap_iso(), s.i());
        assert_eq!(r.k().swap_iso(), -s.k());
        let jj = s.j().try_mul(&s.j()).unwrap();
        assert_eq!(jj, s.one().scale(&BigInt::from(-2)));
        let x = q(&r, [5, -1, 7, 2]);
        assert_eq!(x.swap_iso().swap_iso(), x);
    }

    #[test]
    fn exact_division() {
        let r = ring(1, 1);
        assert_eq!(q(&r, [6, -12, 0, 18]).exact_div(&BigInt::from(6)), Some(q(&r, [1, -2, 0, 3])));
        assert_eq!(q(&r, [6, 1, 0, 0]).exact_div(&BigInt::from(6)), None);
    }

    #[test]
    fn display() {
        let r = ring(1, 1);
        assert_eq!(q(&r, [3, 3, 0, 0]).to_string(), "3 + 3i");
        assert_eq!(q(&r, [0, 0, 2, -2]).to_string(), "2j - 2k");
        assert_eq!(q(&r, [0, -1, 0, 1]).to_string(), "-i + k");
        assert_eq!(q(&r, [-7, 0, 0, 0]).to_string(), "-7");
        assert_eq!(r.zero().to_string(), "0");
    }
}
