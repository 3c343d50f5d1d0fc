//! Arbitrary-precision number theory: factorization, primality, square
//! classes, p-adic orders, local square tests, Legendre symbols, CRT and
//! prime search in arithmetic progressions.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::Error;
use crate::Result;

/// Trial division bound used before switching to rho splitting.
pub const TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// Default rho effort: iterations per splitting attempt.
pub const DEFAULT_FACTOR_EFFORT: u64 = 1 << 22;

/// Default scan bound for [`prime_in_progression`].
pub const DEFAULT_PRIME_SCAN_BOUND: u64 = 1 << 22;

/// Sign and prime-exponent map of a nonzero integer.
///
/// Invariant: keys are pairwise distinct primes and
/// `sign · ∏ p^e` reproduces the input exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: i8,
    pub factors: BTreeMap<BigInt, u32>,
}

impl Factorization {
    /// Multiplies the factorization back together.
    pub fn value(&self) -> BigInt {
        let mut v = BigInt::from(self.sign);
        for (p, e) in &self.factors {
            v *= p.pow(*e);
        }
        v
    }

    /// Primes appearing to odd exponent, i.e. the squarefree part's support.
    pub fn odd_exponent_primes(&self) -> impl Iterator<Item = &BigInt> {
        self.factors
            .iter()
            .filter(|(_, e)| *e % 2 == 1)
            .map(|(p, _)| p)
    }
}

/// `p^ν · u` decomposition of a nonzero rational, with `u` a p-adic unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicDecomposition {
    pub ord: i64,
    pub unit: BigRational,
}

/// Deterministic Miller–Rabin witness set; proves primality for all
/// n < 3.317·10²⁴ (Sorenson–Webster), and acts as a strong probable-prime
/// test beyond that threshold.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Primality test: deterministic below 3.317·10²⁴, strong probabilistic above.
pub fn is_prime(n: &BigInt) -> bool {
    if n <= &BigInt::one() {
        return false;
    }
    let two = BigInt::from(2);
    if n == &two || n == &BigInt::from(3) {
        return true;
    }
    if n.is_even() {
        return false;
    }
    for q in [3u32, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let q = BigInt::from(q);
        if *n == q {
            return true;
        }
        if (n % &q).is_zero() {
            return false;
        }
    }
    // n - 1 = d · 2^s with d odd
    let n_minus_1 = n - 1;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in MR_BASES {
        let a = BigInt::from(a);
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod_u64(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod_u64(acc, b, m);
        }
        b = mulmod_u64(b, b, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin over the full u64 range.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in MR_BASES {
        let mut x = powmod_u64(a as u64, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle rho on u64; returns a nontrivial factor of an odd composite.
fn rho_u64(n: u64, budget: u64) -> Option<u64> {
    for c in 1..=16u64 {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut count = 0u64;
        loop {
            if count >= budget {
                break;
            }
            x = f(x);
            y = f(f(y));
            if x == y {
                break; // cycle without factor; retry with the next constant
            }
            let diff = x.max(y) - x.min(y);
            let d = num_integer::gcd(diff, n);
            if d > 1 && d < n {
                return Some(d);
            }
            count += 1;
        }
    }
    None
}

fn split_composite_u64(n: u64, effort: u64, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    if n == 1 {
        return Ok(());
    }
    if is_prime_u64(n) {
        *out.entry(BigInt::from(n)).or_insert(0) += 1;
        return Ok(());
    }
    let root = num_integer::Roots::sqrt(&n);
    if root > 1 && root * root == n {
        split_composite_u64(root, effort, out)?;
        split_composite_u64(root, effort, out)?;
        return Ok(());
    }
    match rho_u64(n, effort) {
        Some(d) => {
            split_composite_u64(d, effort, out)?;
            split_composite_u64(n / d, effort, out)?;
            Ok(())
        }
        None => Err(Error::FactorizationLimitExceeded {
            cofactor: BigInt::from(n),
            effort,
        }),
    }
}

fn factor_u64(mut m: u64, effort: u64, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    while m % 2 == 0 {
        m /= 2;
        *out.entry(BigInt::from(2)).or_insert(0) += 1;
    }
    let mut p = 3u64;
    while p < TRIAL_DIVISION_BOUND && p * p <= m {
        while m % p == 0 {
            m /= p;
            *out.entry(BigInt::from(p)).or_insert(0) += 1;
        }
        p += 2;
    }
    if m > 1 {
        split_composite_u64(m, effort, out)?;
    }
    Ok(())
}

/// One Brent-style rho round on BigInt; used only above the u64 range.
fn rho_round(n: &BigInt, c: u64, budget: u64) -> Option<BigInt> {
    let one = BigInt::one();
    let c = BigInt::from(c);
    let f = |x: &BigInt| (x * x + &c) % n;
    let mut x = BigInt::from(2);
    let mut y = x.clone();
    let mut d = BigInt::one();
    let mut count = 0u64;
    while d.is_one() {
        if count >= budget {
            return None;
        }
        x = f(&x);
        y = f(&f(&y));
        let diff = if x > y { &x - &y } else { &y - &x };
        if diff.is_zero() {
            return None; // cycle without factor; retry with another constant
        }
        d = diff.gcd(n);
        count += 1;
    }
    if d > one && &d < n {
        Some(d)
    } else {
        None
    }
}

fn split_composite(n: &BigInt, effort: u64, out: &mut BTreeMap<BigInt, u32>) -> Result<()> {
    if let Ok(small) = u64::try_from(n) {
        return split_composite_u64(small, effort, out);
    }
    if is_prime(n) {
        *out.entry(n.clone()).or_insert(0) += 1;
        return Ok(());
    }
    let root = n.sqrt();
    if &root * &root == *n {
        split_composite(&root, effort, out)?;
        split_composite(&root, effort, out)?;
        return Ok(());
    }
    for c in 1..=16u64 {
        if let Some(d) = rho_round(n, c, effort) {
            let q = n / &d;
            split_composite(&d, effort, out)?;
            split_composite(&q, effort, out)?;
            return Ok(());
        }
    }
    Err(Error::FactorizationLimitExceeded {
        cofactor: n.clone(),
        effort,
    })
}

/// Exact factorization of a nonzero integer: trial division up to
/// [`TRIAL_DIVISION_BOUND`], then rho splitting with primality certification.
/// Deterministic for fixed input.
pub fn factorize(n: &BigInt, effort: u64) -> Result<Factorization> {
    assert!(!n.is_zero(), "factorize requires nonzero input");
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut factors = BTreeMap::new();
    let mut m = n.abs();
    if let Ok(small) = u64::try_from(&m) {
        factor_u64(small, effort, &mut factors)?;
        return Ok(Factorization { sign, factors });
    }
    // Strip small primes so the remaining cofactor is either prime, fits in
    // u64, or is rho-worthy.
    let mut p = 2u64;
    while p < TRIAL_DIVISION_BOUND {
        if (&m % p).is_zero() {
            m /= p;
            *factors.entry(BigInt::from(p)).or_insert(0) += 1;
            if let Ok(small) = u64::try_from(&m) {
                factor_u64(small, effort, &mut factors)?;
                return Ok(Factorization { sign, factors });
            }
        } else {
            p = if p == 2 { 3 } else { p + 2 };
        }
    }
    if !m.is_one() {
        split_composite(&m, effort, &mut factors)?;
    }
    Ok(Factorization { sign, factors })
}

/// Factorization with the default effort.
pub fn factorize_default(n: &BigInt) -> Result<Factorization> {
    factorize(n, DEFAULT_FACTOR_EFFORT)
}

/// Canonical squarefree representative of the square class of a nonzero
/// rational: the unique squarefree integer d with r/d a rational square.
pub fn squarefree_class(r: &BigRational) -> Result<BigInt> {
    assert!(!r.is_zero(), "squarefree_class requires nonzero input");
    // r and numer·denom lie in the same square class.
    let n = r.numer() * r.denom();
    let f = factorize_default(&n)?;
    let mut d = BigInt::from(f.sign);
    for p in f.odd_exponent_primes() {
        d *= p;
    }
    Ok(d)
}

/// Squarefree class of an integer.
pub fn squarefree_class_int(n: &BigInt) -> Result<BigInt> {
    squarefree_class(&BigRational::from_integer(n.clone()))
}

/// Writes a nonzero rational as `p^ν · u` with `u` a p-adic unit.
pub fn padic_decompose(r: &BigRational, p: &BigInt) -> PadicDecomposition {
    assert!(!r.is_zero(), "padic_decompose requires nonzero input");
    let mut num = r.numer().clone();
    let mut den = r.denom().clone();
    let mut ord: i64 = 0;
    loop {
        let (q, rem) = num.div_rem(p);
        if rem.is_zero() {
            num = q;
            ord += 1;
        } else {
            break;
        }
    }
    loop {
        let (q, rem) = den.div_rem(p);
        if rem.is_zero() {
            den = q;
            ord -= 1;
        } else {
            break;
        }
    }
    PadicDecomposition {
        ord,
        unit: BigRational::new(num, den),
    }
}

/// p-adic order of a nonzero rational.
pub fn padic_ord(r: &BigRational, p: &BigInt) -> i64 {
    padic_decompose(r, p).ord
}

/// Residue of a p-adic unit rational modulo `m` (numerator times inverse
/// of denominator), with `m` a power of the prime in question.
fn unit_mod(u: &BigRational, m: &BigInt) -> BigInt {
    let num = u.numer().mod_floor(m);
    let den = u.denom().mod_floor(m);
    let inv = mod_inverse(&den, m).expect("denominator is a unit modulo m");
    (num * inv).mod_floor(m)
}

/// Modular inverse, when it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

/// The 2-adic order of `r` together with bits 1 and 2 of the canonical
/// expansion of its odd unit part (so `u ≡ 1 + 2·a1 + 4·a2 (mod 8)`).
pub fn two_adic_digits(r: &BigRational) -> (i64, u8, u8) {
    let two = BigInt::from(2);
    let d = padic_decompose(r, &two);
    let m = unit_mod(&d.unit, &BigInt::from(8));
    let m = m.to_u32_digits().1.first().copied().unwrap_or(0);
    (d.ord, ((m >> 1) & 1) as u8, ((m >> 2) & 1) as u8)
}

/// Legendre symbol of `u` modulo an odd prime `p`; requires gcd(u, p) = 1.
pub fn legendre(u: &BigInt, p: &BigInt) -> i32 {
    debug_assert!(p.is_odd() && is_prime(p));
    let exp = (p - 1) / 2;
    let s = u.mod_floor(p).modpow(&exp, p);
    assert!(!s.is_zero(), "legendre requires gcd(u, p) = 1");
    if s.is_one() {
        1
    } else {
        -1
    }
}

/// Legendre symbol of a p-adic unit rational at an odd prime.
pub fn legendre_unit(u: &BigRational, p: &BigInt) -> i32 {
    legendre(u.numer(), p) * legendre(u.denom(), p)
}

/// Whether a nonzero rational is a square in ℚ_p: even order, and the unit
/// part a square (quadratic residue at odd p; ≡ 1 mod 8 at p = 2).
pub fn is_square_in_qp(r: &BigRational, p: &BigInt) -> bool {
    let d = padic_decompose(r, p);
    if d.ord % 2 != 0 {
        return false;
    }
    if *p == BigInt::from(2) {
        let (_, a1, a2) = two_adic_digits(&d.unit);
        a1 == 0 && a2 == 0
    } else {
        legendre_unit(&d.unit, p) == 1
    }
}

/// Least positive nonresidue β modulo a prime p ≡ 1 (mod 4).
pub fn least_nonsquare(p: &BigInt) -> BigInt {
    assert!(
        p.mod_floor(&BigInt::from(4)) == BigInt::one(),
        "least_nonsquare requires p ≡ 1 (mod 4)"
    );
    let mut b = BigInt::from(2);
    while legendre(&b, p) == 1 {
        b += 1;
    }
    b
}

/// Chinese remainder: combines congruences x ≡ rᵢ (mod mᵢ) into a single
/// residue modulo lcm(mᵢ). Errors when the congruences contradict.
pub fn crt(pairs: &[(BigInt, BigInt)]) -> Result<(BigInt, BigInt)> {
    let mut r = BigInt::zero();
    let mut m = BigInt::one();
    for (ri, mi) in pairs {
        assert!(mi.is_positive(), "crt moduli must be positive");
        let g = m.gcd(mi);
        if (&r - ri).mod_floor(&g) != BigInt::zero() {
            return Err(Error::InconsistentCongruence(
                format!("x ≡ {} (mod {})", r, m),
                format!("x ≡ {} (mod {})", ri, mi),
            ));
        }
        let lcm = &m / &g * mi;
        // Solve r + m·t ≡ ri (mod mi): t ≡ (ri − r)/g · inv(m/g) (mod mi/g)
        let mi_g = mi / &g;
        let t = ((ri - &r) / &g * mod_inverse(&(&m / &g).mod_floor(&mi_g), &mi_g).unwrap())
            .mod_floor(&mi_g);
        r = (&r + &m * t).mod_floor(&lcm);
        m = lcm;
    }
    Ok((r, m))
}

/// Smallest prime ≡ residue (mod modulus), found by incremental scan with
/// primality testing; requires gcd(residue, modulus) = 1.
pub fn prime_in_progression(residue: &BigInt, modulus: &BigInt) -> Result<BigInt> {
    prime_in_progression_bounded(residue, modulus, DEFAULT_PRIME_SCAN_BOUND)
}

/// As [`prime_in_progression`] with an explicit scan bound.
pub fn prime_in_progression_bounded(
    residue: &BigInt,
    modulus: &BigInt,
    bound: u64,
) -> Result<BigInt> {
    assert!(
        residue.gcd(modulus).is_one(),
        "prime_in_progression requires gcd(residue, modulus) = 1"
    );
    let mut x = residue.mod_floor(modulus);
    if x < BigInt::from(2) {
        x += modulus;
    }
    let mut scanned = 0u64;
    while scanned < bound {
        if is_prime(&x) {
            return Ok(x);
        }
        x += modulus;
        scanned += 1;
    }
    Err(Error::SearchLimitExceeded {
        residue: residue.clone(),
        modulus: modulus.clone(),
        scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn big(n: i64) -> BigInt {
        BigInt::from(n)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(big(n), big(d))
    }

    #[test]
    fn factorize_examples() {
        let f = factorize_default(&big(300)).unwrap();
        assert_eq!(f.sign, 1);
        assert_eq!(
            f.factors,
            BTreeMap::from([(big(2), 2), (big(3), 1), (big(5), 2)])
        );
        let f = factorize_default(&big(871)).unwrap();
        assert_eq!(f.factors, BTreeMap::from([(big(13), 1), (big(67), 1)]));
        let f = factorize_default(&big(-1)).unwrap();
        assert_eq!(f.sign, -1);
        assert!(f.factors.is_empty());
    }

    #[test]
    fn factorize_semiprime_beyond_trial_division() {
        // 1_000_003 · 1_000_033, both prime and above the trial bound
        let n = big(1_000_003) * big(1_000_033);
        let f = factorize_default(&n).unwrap();
        assert_eq!(f.value(), n);
        assert_eq!(f.factors.len(), 2);
    }

    #[test]
    fn factorize_limit_error() {
        let n = big(1_000_003) * big(1_000_033);
        match factorize(&n, 1) {
            Err(Error::FactorizationLimitExceeded { .. }) => {}
            other => panic!("expected limit error, got {:?}", other),
        }
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_class_int(&big(300)).unwrap(), big(3));
        assert_eq!(squarefree_class(&rat(4, 9)).unwrap(), big(1));
        assert_eq!(squarefree_class_int(&big(-50)).unwrap(), big(-2));
    }

    #[test]
    fn padic_examples() {
        let d = padic_decompose(&rat(24, 1), &big(2));
        assert_eq!((d.ord, d.unit), (3, rat(3, 1)));
        let d = padic_decompose(&rat(13, 1), &big(2));
        assert_eq!((d.ord, d.unit), (0, rat(13, 1)));
        let d = padic_decompose(&rat(-15, 1), &big(5));
        assert_eq!((d.ord, d.unit), (1, rat(-3, 1)));
    }

    #[test]
    fn two_adic_digit_examples() {
        assert_eq!(two_adic_digits(&rat(13, 1)), (0, 0, 1));
        assert_eq!(two_adic_digits(&rat(24, 1)), (3, 1, 0));
        assert_eq!(two_adic_digits(&rat(-1, 1)), (0, 1, 1));
    }

    #[test]
    fn qp_square_examples() {
        assert!(is_square_in_qp(&rat(17, 1), &big(2)));
        assert!(!is_square_in_qp(&rat(-1, 1), &big(2)));
        assert!(!is_square_in_qp(&rat(2, 1), &big(5)));
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre(&big(2), &big(5)), -1);
        assert_eq!(legendre(&big(4), &big(7)), 1);
        for p in [3i64, 5, 7, 11, 13] {
            assert_eq!(legendre(&big(1), &big(p)), 1);
        }
    }

    #[test]
    fn least_nonsquare_examples() {
        assert_eq!(least_nonsquare(&big(5)), big(2));
        assert_eq!(least_nonsquare(&big(41)), big(3));
        assert_eq!(least_nonsquare(&big(13)), big(2));
    }

    #[test]
    fn crt_examples() {
        let (r, m) = crt(&[(big(3), big(4)), (big(2), big(13))]).unwrap();
        assert_eq!((r, m), (big(15), big(52)));
        assert!(matches!(
            crt(&[(big(1), big(4)), (big(2), big(4))]),
            Err(Error::InconsistentCongruence(_, _))
        ));
        // overlapping moduli with a consistent overlap
        let (r, m) = crt(&[(big(2), big(6)), (big(5), big(9))]).unwrap();
        assert_eq!((r, m), (big(14), big(18)));
    }

    #[test]
    fn prime_progression_examples() {
        assert_eq!(prime_in_progression(&big(15), &big(52)).unwrap(), big(67));
        assert_eq!(prime_in_progression(&big(1), &big(1)).unwrap(), big(2));
        assert_eq!(prime_in_progression(&big(3), &big(4)).unwrap(), big(3));
    }

    #[test]
    fn prime_progression_limit() {
        assert!(matches!(
            prime_in_progression_bounded(&big(8), &big(9), 3),
            Err(Error::SearchLimitExceeded { .. })
        ));
    }

    #[test]
    fn is_prime_basics() {
        let primes = [2i64, 3, 5, 13, 67, 97, 1_000_003, 178_284_673];
        for p in primes {
            assert!(is_prime(&big(p)), "{p} is prime");
        }
        let composites = [0i64, 1, 4, 9, 871, 1_000_001, 25_326_001];
        for c in composites {
            assert!(!is_prime(&big(c)), "{c} is composite");
        }
        assert!(!is_prime(&big(-7)));
    }

    /// Exhaustive reference for the ℚ_p square test: search x with
    /// x² ≡ r·(denominator cleared) mod p^k over p-primitive candidates.
    fn square_oracle(r: &BigRational, p: i64) -> bool {
        let pb = big(p);
        let d = padic_decompose(r, &pb);
        if d.ord % 2 != 0 {
            return false;
        }
        let k = if p == 2 { 5 } else { 3 };
        let m = pb.pow(k);
        // unit part cleared of denominators: num·den is in the same class
        let target = (d.unit.numer() * d.unit.denom()).mod_floor(&m);
        let mut x = BigInt::one();
        while x < m {
            if (&x * &x).mod_floor(&m) == target {
                return true;
            }
            x += 1;
            while (&x % &pb).is_zero() {
                x += 1;
            }
        }
        false
    }

    proptest! {
        #[test]
        fn squarefree_class_ignores_squares(n in -300i64..300, s in 1i64..40, d in 1i64..40) {
            prop_assume!(n != 0);
            let r = rat(n, d);
            let scaled = &r * rat(s * s, 1);
            prop_assert_eq!(
                squarefree_class(&r).unwrap(),
                squarefree_class(&scaled).unwrap()
            );
        }

        #[test]
        fn padic_reconstructs_and_ord_additive(
            a in -400i64..400, b in -400i64..400, p in prop::sample::select(vec![2i64, 3, 5, 7, 13])
        ) {
            prop_assume!(a != 0 && b != 0);
            let pb = big(p);
            let ra = rat(a, 1);
            let rb = rat(b, 1);
            let da = padic_decompose(&ra, &pb);
            let pow = |e: i64| -> BigRational {
                if e >= 0 {
                    BigRational::from_integer(pb.pow(e as u32))
                } else {
                    BigRational::new(BigInt::one(), pb.pow((-e) as u32))
                }
            };
            prop_assert_eq!(&pow(da.ord) * &da.unit, ra.clone());
            let dab = padic_decompose(&(&ra * &rb), &pb);
            let db = padic_decompose(&rb, &pb);
            prop_assert_eq!(dab.ord, da.ord + db.ord);
        }

        #[test]
        fn legendre_multiplicative(u in 1i64..200, v in 1i64..200, p in prop::sample::select(vec![3i64, 5, 7, 11, 13, 17])) {
            prop_assume!(u % p != 0 && v % p != 0);
            prop_assert_eq!(
                legendre(&big(u * v), &big(p)),
                legendre(&big(u), &big(p)) * legendre(&big(v), &big(p))
            );
        }

        #[test]
        fn least_nonsquare_is_nonsquare(p in prop::sample::select(vec![5i64, 13, 17, 29, 37, 41])) {
            let b = least_nonsquare(&big(p));
            prop_assert_eq!(legendre(&b, &big(p)), -1);
        }

        #[test]
        fn qp_square_test_matches_exhaustive_search(
            n in -120i64..120, d in 1i64..30, p in prop::sample::select(vec![2i64, 3, 5, 7])
        ) {
            prop_assume!(n != 0);
            let r = rat(n, d);
            prop_assert_eq!(is_square_in_qp(&r, &big(p)), square_oracle(&r, p));
        }
    }
}
