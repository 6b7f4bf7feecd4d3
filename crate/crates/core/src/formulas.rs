//! Recurrences, explicit sums and closed forms for the `G_n` / `H_n`
//! family.
//!
//! Everything here is exact: integers are arbitrary precision and the
//! closed forms are evaluated in `Q(sqrt 5)`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::antiforcing::AfClass;
use crate::forcing::forcing_polynomial_enum;
use crate::lattice::build_h;
use crate::poly::IntPolynomial;
use crate::surd::SurdNumber;
use crate::Limits;

fn p(terms: &[(usize, i64)]) -> IntPolynomial {
    IntPolynomial::from_terms(terms.iter().copied())
}

/// `Φ(G_n)` by `Φ_n = 6Φ_{n-1} - 4Φ_{n-2}`.
pub fn phi_g(n: usize) -> BigUint {
    let (mut prev, mut cur) = (BigUint::one(), BigUint::from(6u32));
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = BigUint::from(6u32) * &cur - BigUint::from(4u32) * &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// `Φ(H_n) = Φ(G_{n-1}) + 4Φ(H_{n-1})`, with `Φ(H_0) = 1`.
pub fn phi_h(n: usize) -> BigUint {
    let mut h = BigUint::one();
    let mut g_prev = BigUint::one();
    for m in 1..=n {
        h = &g_prev + BigUint::from(4u32) * &h;
        g_prev = phi_g(m);
    }
    h
}

fn lambda() -> SurdNumber {
    SurdNumber::from_parts(3, -1, 1)
}

fn integer_value(value: SurdNumber, what: &str) -> BigInt {
    value
        .to_integer()
        .unwrap_or_else(|| panic!("{what} closed form left a non-integer {value}"))
}

/// `sum_i c_i r_i^n + d_i n r_i^n + constant` over the roots `3 -+ sqrt 5`,
/// with the coefficients of the second root the conjugates of the first.
fn two_root_closed_form(n: usize, plain: &SurdNumber, linear: &SurdNumber, constant: i64) -> SurdNumber {
    let power = lambda().pow(n as u32);
    let nn = BigRational::from_integer(BigInt::from(n));
    let half = &(plain * &power) + &(linear * &power).scale(&nn);
    &(&half + &half.conjugate()) + &SurdNumber::from_integer(constant)
}

/// `Φ(G_n)` from the closed form, as an exact element of `Q(sqrt 5)`.
pub fn phi_closed_surd(n: usize) -> SurdNumber {
    two_root_closed_form(n, &SurdNumber::from_parts(5, -3, 10), &SurdNumber::zero(), 0)
}

pub fn phi_closed(n: usize) -> BigUint {
    let v = integer_value(phi_closed_surd(n), "phi");
    v.to_biguint().expect("phi closed form is nonnegative")
}

/// `F(G_0..=G_n)` by the three-term recurrence.
pub fn forcing_poly_g_table(n: usize) -> Vec<IntPolynomial> {
    let mut t = vec![
        IntPolynomial::one(),
        p(&[(2, 4), (1, 2)]),
        p(&[(4, 16), (3, 12), (2, 4)]),
    ];
    let (a, b, c) = (p(&[(2, 4), (1, 3)]), p(&[(3, 8), (2, 2)]), p(&[(3, 4)]));
    for m in 3..=n {
        let next = &(&(&a * &t[m - 1]) - &(&b * &t[m - 2])) + &(&c * &t[m - 3]);
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

pub fn forcing_poly_g_rec(n: usize) -> IntPolynomial {
    forcing_poly_g_table(n).pop().expect("table is never empty")
}

/// `F(H_n, x)`. `F(H_1, x)` comes from enumerating the five matchings of
/// `H_1`; larger `n` use `F(H_n) = (4x^2+x)F(H_{n-1}) + xF(G_{n-2})`.
pub fn forcing_poly_h_rec(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let g = forcing_poly_g_table(n.saturating_sub(2));
    let mut h = forcing_polynomial_enum(&build_h(1), &Limits::default())
        .expect("H_1 is far below every search limit");
    let step = p(&[(2, 4), (1, 1)]);
    for m in 2..=n {
        h = &(&step * &h) + &g[m - 2].shift(1);
    }
    h
}

/// Pascal triangle with `C(a, b) = 0` outside `0 <= b <= a`.
struct Binomials {
    rows: Vec<Vec<BigInt>>,
}

impl Binomials {
    fn new(size: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(size + 1);
        for a in 0..=size {
            let mut row = vec![BigInt::one(); a + 1];
            for b in 1..a {
                row[b] = &rows[a - 1][b - 1] + &rows[a - 1][b];
            }
            rows.push(row);
        }
        Binomials { rows }
    }

    fn get(&self, a: i64, b: i64) -> Option<&BigInt> {
        if a < 0 || b < 0 || b > a {
            return None;
        }
        self.rows.get(a as usize).map(|row| &row[b as usize])
    }

    /// Product of several binomials, `None` when any factor vanishes.
    fn product(&self, pairs: &[(i64, i64)]) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for &(a, b) in pairs {
            acc *= self.get(a, b)?;
        }
        Some(acc)
    }
}

fn signed_power(sign_exp: i64, two_exp: i64, three_exp: i64) -> BigInt {
    let exp = |e: i64| u32::try_from(e).expect("exponent is nonnegative on every nonzero term");
    let v = num_traits::pow(BigInt::from(2), exp(two_exp) as usize)
        * num_traits::pow(BigInt::from(3), exp(three_exp) as usize);
    if sign_exp.rem_euclid(2) == 1 {
        -v
    } else {
        v
    }
}

fn cdiv(a: i64, b: i64) -> i64 {
    -((-a).div_euclid(b))
}

fn fdiv(a: i64, b: i64) -> i64 {
    a.div_euclid(b)
}

/// `F(G_n, x)` from the explicit triple sum.
pub fn forcing_poly_g_explicit(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let c = Binomials::new(2 * n + 2);
    let nn = n as i64;
    let mut coeffs: Vec<(usize, BigInt)> = vec![(2 * n, num_traits::pow(BigInt::from(4), n))];
    for m in 0..nn {
        let mut s = BigInt::zero();
        for i in cdiv(nn, 3).max(m)..=nn {
            for j in cdiv(nn - i, 2).max(m + nn - 2 * i)..=nn - i {
                let t = i + 2 * j - nn;
                for k in (m - t).max(0)..=m {
                    if let Some(b) = c.product(&[(i, j), (j, nn - i - j), (i - j, k), (t, m - k)]) {
                        s += b * signed_power(t, nn + 2 * m - i, i - j - k);
                    }
                }
            }
        }
        for i in cdiv(nn - 1, 3).max(m)..nn {
            for j in cdiv(nn - i - 1, 2).max(m + nn - 2 * i - 1)..nn - i {
                let t = i + 2 * j - nn + 1;
                for k in (m - t).max(0)..=m {
                    if let Some(b) = c.product(&[(i, j), (j, nn - i - j - 1), (i - j, k), (t, m - k)]) {
                        s -= b * signed_power(t, nn + 2 * m - i - 1, i - j - k);
                    }
                }
            }
        }
        coeffs.push(((nn + m) as usize, s));
    }
    IntPolynomial::from_terms(coeffs)
}

/// Degree of freedom `IDF_n = F'(G_n, 1)` from the closed form.
pub fn idf_closed(n: usize) -> BigInt {
    let v = two_root_closed_form(
        n,
        &SurdNumber::from_parts(50, 22, 25),
        &SurdNumber::from_parts(13, -3, 10),
        -4,
    );
    integer_value(v, "IDF")
}

/// Coefficients of the order-5 linear recurrence shared by `IDF_n` and
/// `A_n`: `a_m = 13a_{m-1} - 56a_{m-2} + 92a_{m-3} - 64a_{m-4} + 16a_{m-5}`.
pub const ORDER5_RECURRENCE: [i64; 5] = [13, -56, 92, -64, 16];

fn order5(initial: [i64; 5], n: usize) -> BigInt {
    let mut seq: Vec<BigInt> = initial.iter().map(|&v| BigInt::from(v)).collect();
    for m in 5..=n {
        let next = ORDER5_RECURRENCE
            .iter()
            .enumerate()
            .map(|(d, &c)| BigInt::from(c) * &seq[m - 1 - d])
            .sum();
        seq.push(next);
    }
    seq.swap_remove(n)
}

/// `IDF_n` by the order-5 recurrence from `IDF_0..IDF_4`.
pub fn idf_rec(n: usize) -> BigInt {
    order5([0, 10, 108, 852, 5948], n)
}

pub fn idf_from_poly(n: usize) -> BigInt {
    forcing_poly_g_rec(n).derivative_at_one()
}

/// `Af(G_0..=G_n)` by the three-term recurrence.
pub fn af_poly_g_table(n: usize) -> Vec<IntPolynomial> {
    let mut t = vec![
        IntPolynomial::one(),
        p(&[(3, 2), (2, 3), (1, 1)]),
        p(&[(6, 4), (5, 9), (4, 15), (3, 3), (2, 1)]),
    ];
    let a = p(&[(3, 3), (2, 3), (1, 1)]);
    let b = p(&[(6, 2), (5, 6), (4, -1), (3, 3)]);
    let c = p(&[(7, 1), (6, 3)]);
    for m in 3..=n {
        let next = &(&(&a * &t[m - 1]) - &(&b * &t[m - 2])) + &(&c * &t[m - 3]);
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

pub fn af_poly_g_rec(n: usize) -> IntPolynomial {
    af_poly_g_table(n).pop().expect("table is never empty")
}

/// `Af(H_n) = x^2 Af(G_{n-1}) + (x^3+3x^2) Af(H_{n-1})`, `Af(H_0) = 1`.
pub fn af_poly_h_rec(n: usize) -> IntPolynomial {
    let g = af_poly_g_table(n.saturating_sub(1));
    let step = p(&[(3, 1), (2, 3)]);
    let mut h = IntPolynomial::one();
    for m in 1..=n {
        h = &g[m - 1].shift(2) + &(&step * &h);
    }
    h
}

/// Per-class contributions to `Af(G_n, x)`, split by the leftmost matched
/// vertical edges (see [`AfClass`]). They sum to `Af(G_n, x)`.
pub fn af_decomposition_terms(n: usize) -> Vec<(AfClass, IntPolynomial)> {
    if n == 0 {
        return Vec::new();
    }
    let g = af_poly_g_table(n - 1);
    let block = p(&[(3, 1), (2, 3)]);
    let mut out = vec![(AfClass::LeftRungFree, g[n - 1].shift(1))];
    for k in 0..n {
        let head = &block.pow(k as u32) + &p(&[(1, 1), (0, -1)]).shift(3 * k);
        out.push((AfClass::FirstRung { k }, (&head * &g[n - k - 1]).shift(2)));
    }
    out.push((AfClass::NoMiddleRung, block.pow(n as u32)));
    out
}

/// `Af(G_n, x) = x^n (R + Q) + 3x^{n+1} + x^n` from the two eight-fold sums.
pub fn af_poly_g_explicit(n: usize) -> IntPolynomial {
    if n == 0 {
        return IntPolynomial::one();
    }
    let c = Binomials::new(4 * n + 4);
    let nn = n as i64;
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); 2 * n + 1];
    for q in 2..=2 * nn {
        let slot = &mut acc[q as usize];
        // R
        for i in (nn - q).max(cdiv(nn, 3))..=nn {
            let j_hi = (q + 3 * i - 2 * nn).min(fdiv(4 * i - q, 2)).min(fdiv(3 * i - nn, 2));
            for j in (2 * i - nn).max(0)..=j_hi {
                let (al, be) = (nn - 2 * i + j, 3 * i - 2 * j - nn);
                for k in cdiv(q + 4 * j - 4 * i, 2).max(0)..=j.min(q + 3 * i - j - 2 * nn) {
                    for r in (q + 4 * j - k - 4 * i).max(0)..=k.min(q + 3 * i - k - j - 2 * nn) {
                        let m_hi = al.min(q + 3 * i - k - r - j - 2 * nn);
                        for m in (q + 5 * j + nn - k - r - 6 * i).max(0)..=m_hi {
                            let ga = k + m + r;
                            let s_hi = be.min(fdiv(ga + 6 * i - 5 * j - nn - q, 3));
                            for s in (ga + nn - j - q).max(0)..=s_hi {
                                let l_hi = (be - s).min(fdiv(ga + 6 * i - 5 * j - 3 * s - nn - q, 2));
                                for l in (ga + 3 * i - 3 * j - 2 * s - q).max(0)..=l_hi {
                                    let th = q + 3 * j + 2 * s + l - k - r - m - 3 * i;
                                    let pairs = [
                                        (i, j),
                                        (i - j, al),
                                        (j, k),
                                        (k, r),
                                        (al, m),
                                        (be, s),
                                        (be - s, l),
                                        (be - s - l, th),
                                    ];
                                    if let Some(b) = c.product(&pairs) {
                                        *slot += b * signed_power(be + l, be - s - l, k + i - j - m - l - th);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        // Q
        for i in (nn - q + 1).max(cdiv(nn - 1, 3))..nn {
            let j_hi = (q + 3 * i - 2 * nn)
                .min(fdiv(4 * i - q + 2, 2))
                .min(fdiv(3 * i - nn + 1, 2));
            for j in (2 * i - nn + 1).max(0)..=j_hi {
                let (al, be) = (nn - 2 * i + j, 3 * i - 2 * j - nn);
                for k in cdiv(q + 4 * j - 4 * i - 2, 2).max(0)..=j.min(q + 3 * i - j - 2 * nn) {
                    for r in (q + 4 * j - k - 4 * i - 2).max(0)..=k.min(q + 3 * i - k - j - 2 * nn) {
                        let m_hi = (al - 1).min(q + 3 * i - k - r - j - 2 * nn);
                        for m in (q + 5 * j + nn - k - r - 6 * i - 3).max(0)..=m_hi {
                            let ga = k + m + r;
                            let s_hi = (be + 1).min(fdiv(ga + 6 * i - 5 * j - nn - q + 3, 3));
                            for s in (ga + nn - j - q + 1).max(0)..=s_hi {
                                let l_hi = (be - s + 1).min(fdiv(ga + 6 * i - 5 * j - 3 * s - nn - q + 3, 2));
                                for l in (ga + 3 * i - 3 * j - 2 * s - q + 2).max(0)..=l_hi {
                                    let th = q + 3 * j + 2 * s + l - k - r - m - 3 * i;
                                    let pairs = [
                                        (i, j),
                                        (i - j, al - 1),
                                        (j, k),
                                        (k, r),
                                        (al - 1, m),
                                        (be + 1, s),
                                        (be - s + 1, l),
                                        (be - s - l + 1, th - 2),
                                    ];
                                    if let Some(b) = c.product(&pairs) {
                                        *slot += b * signed_power(
                                            be + l + 2,
                                            be - s - l + 1,
                                            k + i - j - m - l - th + 2,
                                        );
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let sums = IntPolynomial::from_coeffs(acc).shift(n);
    &sums + &p(&[(n + 1, 3), (n, 1)])
}

/// Anti-forcing sum `A_n = Af'(G_n, 1)` from the closed form.
pub fn afsum_closed(n: usize) -> BigInt {
    let v = two_root_closed_form(
        n,
        &SurdNumber::from_parts(150, 67, 100),
        &SurdNumber::from_parts(29, -10, 20),
        -3,
    );
    integer_value(v, "anti-forcing sum")
}

/// `A_n` by the order-5 recurrence from `A_0..A_4`.
pub fn afsum_rec(n: usize) -> BigInt {
    order5([0, 13, 140, 1105, 7721], n)
}

pub fn afsum_from_poly(n: usize) -> BigInt {
    af_poly_g_rec(n).derivative_at_one()
}

/// `value / (n * Φ_n)` against its limit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub n: usize,
    pub value: BigRational,
    pub limit: SurdNumber,
    /// Both decimals are rounded half up.
    pub value_decimal: String,
    pub limit_decimal: String,
    /// `|value - limit|`, rounded half up.
    pub distance: String,
    pub distance_exact: SurdNumber,
}

/// Number of decimal places in [`RatioReport`] strings.
pub const RATIO_DIGITS: u32 = 12;

fn ratio(n: usize, numerator: BigInt, limit: SurdNumber) -> RatioReport {
    assert!(n >= 1, "ratio is undefined at n = 0");
    let den = BigInt::from(n) * BigInt::from(phi_g(n));
    let value = BigRational::new(numerator, den);
    let exact = SurdNumber::from_rational(value.clone());
    let distance_exact = (&exact - &limit).abs();
    RatioReport {
        n,
        value_decimal: exact.to_decimal_rounded(RATIO_DIGITS),
        limit_decimal: limit.to_decimal_rounded(RATIO_DIGITS),
        distance: distance_exact.to_decimal_rounded(RATIO_DIGITS),
        distance_exact,
        limit,
        value,
    }
}

/// Limit of `IDF_n / (n Φ_n)`: `(-5 + 6 sqrt 5) / 5`.
pub fn idf_ratio_limit() -> SurdNumber {
    SurdNumber::from_parts(-5, 6, 5)
}

/// Limit of `A_n / (n Φ_n)`: `(5 + 37 sqrt 5) / 40`.
pub fn afsum_ratio_limit() -> SurdNumber {
    SurdNumber::from_parts(5, 37, 40)
}

pub fn ratio_idf(n: usize) -> RatioReport {
    ratio(n, idf_closed(n), idf_ratio_limit())
}

pub fn ratio_afsum(n: usize) -> RatioReport {
    ratio(n, afsum_closed(n), afsum_ratio_limit())
}

/// Whether `value` is within `bound` of the limit, compared exactly.
pub fn within(report: &RatioReport, bound: &BigRational) -> bool {
    !(&SurdNumber::from_rational(bound.clone()) - &report.distance_exact).is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_values() {
        let expected = [1u64, 6, 32, 168, 880, 4608, 24128, 126336, 661504];
        for (n, &v) in expected.iter().enumerate() {
            assert_eq!(phi_g(n), BigUint::from(v));
            assert_eq!(phi_closed(n), BigUint::from(v));
        }
        assert_eq!(phi_h(0), BigUint::from(1u32));
        assert_eq!(phi_h(1), BigUint::from(5u32));
        assert_eq!(phi_h(2), BigUint::from(26u32));
        for n in 1..10 {
            assert_eq!(phi_g(n), phi_h(n) + phi_g(n - 1));
        }
    }

    #[test]
    fn forcing_polys() {
        assert_eq!(forcing_poly_g_rec(3), p(&[(6, 64), (5, 64), (4, 28), (3, 12)]));
        assert_eq!(forcing_poly_g_rec(5).eval_at_one(), BigInt::from(4608));
        assert_eq!(forcing_poly_h_rec(1), p(&[(2, 4), (1, 1)]));
        assert_eq!(forcing_poly_h_rec(2), p(&[(4, 16), (3, 8), (2, 1), (1, 1)]));
        for n in 0..=8 {
            assert_eq!(forcing_poly_g_explicit(n), forcing_poly_g_rec(n), "n = {n}");
        }
        assert_eq!(forcing_poly_g_explicit(4).leading_coeff(), Some(&BigInt::from(256)));
        assert_eq!(forcing_poly_g_explicit(4).degree(), Some(8));
    }

    #[test]
    fn af_polys() {
        assert_eq!(
            af_poly_g_rec(3),
            p(&[(9, 8), (8, 21), (7, 59), (6, 57), (5, 19), (4, 3), (3, 1)])
        );
        assert_eq!(af_poly_h_rec(1), p(&[(3, 1), (2, 4)]));
        assert_eq!(af_poly_h_rec(2).eval_at_one(), BigInt::from(26));
        for n in 0..=7 {
            assert_eq!(af_poly_g_explicit(n), af_poly_g_rec(n), "n = {n}");
        }
        for n in 1..=6 {
            let total: IntPolynomial = af_decomposition_terms(n).into_iter().map(|(_, t)| t).sum();
            assert_eq!(total, af_poly_g_rec(n));
        }
        let one = af_decomposition_terms(1);
        assert_eq!(one[0], (AfClass::LeftRungFree, p(&[(1, 1)])));
        assert_eq!(one.last().unwrap(), &(AfClass::NoMiddleRung, p(&[(3, 1), (2, 3)])));
    }

    #[test]
    fn sums() {
        for n in 0..=20 {
            assert_eq!(idf_closed(n), idf_rec(n));
            assert_eq!(idf_closed(n), idf_from_poly(n));
            assert_eq!(afsum_closed(n), afsum_rec(n));
            assert_eq!(afsum_closed(n), afsum_from_poly(n));
        }
        assert_eq!(idf_closed(8), BigInt::from(8926204));
        assert_eq!(afsum_closed(5), BigInt::from(50541));
        assert_eq!(afsum_closed(1), BigInt::from(13));
    }

    #[test]
    fn ratios() {
        let r = ratio_idf(50);
        assert_eq!(r.limit_decimal, "1.683281573000");
        assert!(within(&r, &BigRational::new(1.into(), 1000.into())));
        assert!(!within(&r, &BigRational::new(1.into(), 100000.into())));
        let a = ratio_afsum(50);
        assert_eq!(&a.limit_decimal[..9], "2.1933628");
        assert!(within(&a, &BigRational::new(1.into(), 1000.into())));
        assert_eq!(ratio_idf(1).value, BigRational::new(10.into(), 6.into()));
    }
}
