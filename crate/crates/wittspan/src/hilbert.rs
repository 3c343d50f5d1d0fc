//! Hilbert symbols at all places of ℚ and the Hasse symbol of diagonal forms.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::arith::{legendre_unit, padic_decompose, two_adic_digits};
use crate::forms::DiagonalForm;

fn omega(a1: u8, a2: u8) -> u8 {
    (a1 + a2) % 2
}

/// Hilbert symbol (a, b)_p: +1 iff ax² + by² = 1 is solvable in ℚ_p.
///
/// At p = 2: with a = 2^ν·u, b = 2^μ·w and (u₁,u₂), (w₁,w₂) the low bits of
/// the odd units, the value is (−1)^{u₁w₁ + ν·ω(w) + μ·ω(u)} where
/// ω = bit₁ + bit₂ (mod 2). At odd p: (p^α u, p^β v)_p =
/// (−1)^{αβ(p−1)/2} · (u|p)^β · (v|p)^α.
pub fn hilbert_symbol(a: &BigRational, b: &BigRational, p: &BigInt) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    if *p == BigInt::from(2) {
        let (nu, a1, a2) = two_adic_digits(a);
        let (mu, b1, b2) = two_adic_digits(b);
        let e = (a1 as i64 * b1 as i64) + nu * omega(b1, b2) as i64 + mu * omega(a1, a2) as i64;
        return if e % 2 == 0 { 1 } else { -1 };
    }
    let da = padic_decompose(a, p);
    let db = padic_decompose(b, p);
    let mut s = 1;
    if da.ord % 2 != 0 && db.ord % 2 != 0 {
        // (−1)^{(p−1)/2}
        if (p - 1) % 4 != BigInt::zero() {
            s = -s;
        }
    }
    if db.ord % 2 != 0 {
        s *= legendre_unit(&da.unit, p);
    }
    if da.ord % 2 != 0 {
        s *= legendre_unit(&db.unit, p);
    }
    s
}

/// Hilbert symbol at the real place: −1 iff both arguments are negative.
pub fn hilbert_symbol_real(a: &BigRational, b: &BigRational) -> i32 {
    assert!(!a.is_zero() && !b.is_zero());
    if a.is_negative() && b.is_negative() {
        -1
    } else {
        1
    }
}

/// Hasse symbol S_p B = ∏_{i<j} (a_i, a_j)_p of a diagonal form.
pub fn hasse_symbol(f: &DiagonalForm, p: &BigInt) -> i32 {
    let entries: Vec<BigRational> = f
        .entries()
        .iter()
        .map(|e| BigRational::from_integer(e.clone()))
        .collect();
    let mut s = 1;
    for i in 0..entries.len() {
        for j in i + 1..entries.len() {
            s *= hilbert_symbol(&entries[i], &entries[j], p);
        }
    }
    s
}
