//! Quad-double arithmetic: an unevaluated sum of four `f64`s, roughly 212
//! bits of significand.
//!
//! Used where double-double runs out: certifying the symplectic spectrum of
//! three-mode states whose entries reach `(r² − 1)⁻²` for `r − 1` well below
//! 1e-3. Addition and multiplication follow the accurate (IEEE-style)
//! algorithms of the QD library; division is long division, square root is
//! Newton iteration on the reciprocal root.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, DivAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use crate::real::Real;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QuadDouble([f64; 4]);

const PI: QuadDouble = QuadDouble([
    std::f64::consts::PI,
    1.2246467991473532e-16,
    -2.9947698097183397e-33,
    1.1124542208633653e-49,
]);

const FRAC_PI_2: QuadDouble = QuadDouble([
    std::f64::consts::FRAC_PI_2,
    6.123233995736766e-17,
    -1.4973849048591698e-33,
    5.562271104316826e-50,
]);

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

#[inline]
fn three_sum(a: f64, b: f64, c: f64) -> (f64, f64, f64) {
    let (t1, t2) = two_sum(a, b);
    let (a, t3) = two_sum(c, t1);
    let (b, c) = two_sum(t2, t3);
    (a, b, c)
}

/// Adds `c` into the double-length accumulator `(a, b)`; returns a finished
/// component, or 0 if none was produced.
#[inline]
fn quick_three_accum(a: &mut f64, b: &mut f64, c: f64) -> f64 {
    let (s, bb) = two_sum(*b, c);
    let (s, aa) = two_sum(*a, s);
    *a = aa;
    *b = bb;
    let (za, zb) = (*a != 0.0, *b != 0.0);
    if za && zb {
        return s;
    }
    if !zb {
        *b = *a;
    }
    *a = s;
    0.0
}

fn renorm4(c: [f64; 4]) -> QuadDouble {
    let [c0, c1, c2, c3] = c;
    if !c0.is_finite() {
        return QuadDouble(c);
    }
    let (s0, c3) = quick_two_sum(c2, c3);
    let (s0, c2) = quick_two_sum(c1, s0);
    let (c0, c1) = quick_two_sum(c0, s0);
    let (mut s0, mut s1) = (c0, c1);
    let (mut s2, mut s3) = (0.0, 0.0);
    if s1 != 0.0 {
        (s1, s2) = quick_two_sum(s1, c2);
        if s2 != 0.0 {
            (s2, s3) = quick_two_sum(s2, c3);
        } else {
            (s1, s2) = quick_two_sum(s1, c3);
        }
    } else {
        (s0, s1) = quick_two_sum(s0, c2);
        if s1 != 0.0 {
            (s1, s2) = quick_two_sum(s1, c3);
        } else {
            (s0, s1) = quick_two_sum(s0, c3);
        }
    }
    QuadDouble([s0, s1, s2, s3])
}

fn renorm5(c: [f64; 5]) -> QuadDouble {
    let [c0, c1, c2, c3, c4] = c;
    if !c0.is_finite() {
        return QuadDouble([c0, c1, c2, c3]);
    }
    let (s0, c4) = quick_two_sum(c3, c4);
    let (s0, c3) = quick_two_sum(c2, s0);
    let (s0, c2) = quick_two_sum(c1, s0);
    let (c0, c1) = quick_two_sum(c0, s0);
    let (mut s0, mut s1) = quick_two_sum(c0, c1);
    let (mut s2, mut s3) = (0.0, 0.0);
    if s1 != 0.0 {
        (s1, s2) = quick_two_sum(s1, c2);
        if s2 != 0.0 {
            (s2, s3) = quick_two_sum(s2, c3);
            if s3 != 0.0 {
                s3 += c4;
            } else {
                (s2, s3) = quick_two_sum(s2, c4);
            }
        } else {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        }
    } else {
        (s0, s1) = quick_two_sum(s0, c2);
        if s1 != 0.0 {
            (s1, s2) = quick_two_sum(s1, c3);
            if s2 != 0.0 {
                (s2, s3) = quick_two_sum(s2, c4);
            } else {
                (s1, s2) = quick_two_sum(s1, c4);
            }
        } else {
            (s0, s1) = quick_two_sum(s0, c3);
            if s1 != 0.0 {
                (s1, s2) = quick_two_sum(s1, c4);
            } else {
                (s0, s1) = quick_two_sum(s0, c4);
            }
        }
    }
    QuadDouble([s0, s1, s2, s3])
}

impl QuadDouble {
    pub const fn from_f64(x: f64) -> Self {
        QuadDouble([x, 0.0, 0.0, 0.0])
    }

    pub fn components(self) -> [f64; 4] {
        self.0
    }

    fn mul_f64(self, b: f64) -> Self {
        self * QuadDouble::from_f64(b)
    }

    /// `sin` and `cos` of `|x| ≤ π/4` by Taylor series.
    fn sin_cos_reduced(x: Self) -> (Self, Self) {
        const TERMS: u32 = 40;
        let x2 = x * x;
        let threshold = 1e-66;

        let mut sin = x;
        let mut term = x;
        for n in 1..TERMS {
            let k = f64::from(2 * n);
            term = -(term * x2) / QuadDouble::from_f64(k * (k + 1.0));
            sin += term;
            if term.0[0].abs() < threshold {
                break;
            }
        }

        let mut cos = Self::one();
        let mut term = Self::one();
        for n in 1..TERMS {
            let k = f64::from(2 * n);
            term = -(term * x2) / QuadDouble::from_f64((k - 1.0) * k);
            cos += term;
            if term.0[0].abs() < threshold {
                break;
            }
        }
        (sin, cos)
    }
}

impl From<f64> for QuadDouble {
    fn from(x: f64) -> Self {
        QuadDouble::from_f64(x)
    }
}

impl fmt::Display for QuadDouble {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&(self.0[0] + self.0[1]), f)
    }
}

impl PartialOrd for QuadDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        for (a, b) in self.0.iter().zip(&other.0) {
            match a.partial_cmp(b)? {
                Ordering::Equal => continue,
                ord => return Some(ord),
            }
        }
        Some(Ordering::Equal)
    }
}

impl Neg for QuadDouble {
    type Output = Self;
    fn neg(self) -> Self {
        QuadDouble(self.0.map(|x| -x))
    }
}

impl Add for QuadDouble {
    type Output = Self;

    fn add(self, b: Self) -> Self {
        let (a, b) = (self.0, b.0);
        let (mut i, mut j, mut k) = (0, 0, 0);
        let mut x = [0.0; 4];
        let next = |i: &mut usize, j: &mut usize| -> f64 {
            if *i >= 4 {
                *j += 1;
                b[*j - 1]
            } else if *j >= 4 || a[*i].abs() > b[*j].abs() {
                *i += 1;
                a[*i - 1]
            } else {
                *j += 1;
                b[*j - 1]
            }
        };
        let u = next(&mut i, &mut j);
        let v = next(&mut i, &mut j);
        let (mut u, mut v) = quick_two_sum(u, v);
        while k < 4 {
            if i >= 4 && j >= 4 {
                x[k] = u;
                if k < 3 {
                    x[k + 1] = v;
                }
                break;
            }
            let t = next(&mut i, &mut j);
            let s = quick_three_accum(&mut u, &mut v, t);
            if s != 0.0 {
                x[k] = s;
                k += 1;
            }
        }
        for &ai in &a[i..] {
            x[3] += ai;
        }
        for &bj in &b[j..] {
            x[3] += bj;
        }
        renorm4(x)
    }
}

impl Sub for QuadDouble {
    type Output = Self;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for QuadDouble {
    type Output = Self;

    fn mul(self, b: Self) -> Self {
        let (a, b) = (self.0, b.0);
        let (p0, q0) = two_prod(a[0], b[0]);

        let (p1, q1) = two_prod(a[0], b[1]);
        let (p2, q2) = two_prod(a[1], b[0]);

        let (p3, q3) = two_prod(a[0], b[2]);
        let (p4, q4) = two_prod(a[1], b[1]);
        let (p5, q5) = two_prod(a[2], b[0]);

        let (p1, p2, q0) = three_sum(p1, p2, q0);

        let (p2, q1, q2) = three_sum(p2, q1, q2);
        let (p3, p4, p5) = three_sum(p3, p4, p5);
        let (s0, t0) = two_sum(p2, p3);
        let (s1, t1) = two_sum(q1, p4);
        let mut s2 = q2 + p5;
        let (s1, t0) = two_sum(s1, t0);
        s2 += t0 + t1;

        let (p6, q6) = two_prod(a[0], b[3]);
        let (p7, q7) = two_prod(a[1], b[2]);
        let (p8, q8) = two_prod(a[2], b[1]);
        let (p9, q9) = two_prod(a[3], b[0]);

        let (q0, q3) = two_sum(q0, q3);
        let (q4, q5) = two_sum(q4, q5);
        let (p6, p7) = two_sum(p6, p7);
        let (p8, p9) = two_sum(p8, p9);
        let (t0, mut t1) = two_sum(q0, q4);
        t1 += q3 + q5;
        let (r0, mut r1) = two_sum(p6, p8);
        r1 += p7 + p9;
        let (q3, mut q4) = two_sum(t0, r0);
        q4 += t1 + r1;
        let (t0, mut t1) = two_sum(q3, s1);
        t1 += q4;

        t1 += a[1] * b[3] + a[2] * b[2] + a[3] * b[1] + q6 + q7 + q8 + q9 + s2;

        renorm5([p0, p1, s0, t0, t1])
    }
}

impl Div for QuadDouble {
    type Output = Self;

    fn div(self, b: Self) -> Self {
        let mut q = [0.0; 5];
        let mut r = self;
        for qi in q.iter_mut() {
            *qi = r.0[0] / b.0[0];
            r -= b.mul_f64(*qi);
        }
        renorm5(q)
    }
}

macro_rules! assign_ops {
    ($($tr:ident $m:ident $op:tt),*) => {$(
        impl $tr for QuadDouble {
            fn $m(&mut self, rhs: Self) {
                *self = *self $op rhs;
            }
        }
    )*};
}

assign_ops!(AddAssign add_assign +, SubAssign sub_assign -, MulAssign mul_assign *, DivAssign div_assign /);

impl Zero for QuadDouble {
    fn zero() -> Self {
        QuadDouble([0.0; 4])
    }

    fn is_zero(&self) -> bool {
        self.0[0] == 0.0
    }
}

impl One for QuadDouble {
    fn one() -> Self {
        QuadDouble::from_f64(1.0)
    }
}

impl Real for QuadDouble {
    // 2^-209
    const UNIT_ROUNDOFF: f64 = 1.216_188_973_139_922_3e-63;

    fn from_f64(x: f64) -> Self {
        QuadDouble::from_f64(x)
    }

    fn to_f64(self) -> f64 {
        self.0[0] + self.0[1]
    }

    fn sqrt(self) -> Self {
        if self.0[0] <= 0.0 {
            return if self.0[0] == 0.0 {
                Self::zero()
            } else {
                QuadDouble::from_f64(f64::NAN)
            };
        }
        let half = self.mul_f64(0.5);
        let mut x = QuadDouble::from_f64(1.0 / self.0[0].sqrt());
        let one_half = QuadDouble::from_f64(0.5);
        for _ in 0..3 {
            x += x * (one_half - half * x * x);
        }
        self * x
    }

    fn abs(self) -> Self {
        if self.0[0] < 0.0 {
            -self
        } else {
            self
        }
    }

    fn sin_cos(self) -> (Self, Self) {
        let k = (self.0[0] / FRAC_PI_2.0[0]).round();
        let reduced = self - FRAC_PI_2.mul_f64(k);
        let (s, c) = Self::sin_cos_reduced(reduced);
        match (k as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }

    fn pi() -> Self {
        PI
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qd(x: f64) -> QuadDouble {
        QuadDouble::from_f64(x)
    }

    #[test]
    fn third_times_three_is_one() {
        let third = qd(1.0) / qd(3.0);
        let back = third * qd(3.0) - qd(1.0);
        assert!(back.0[0].abs() < 1e-62, "{:?}", back);
        assert!(third.0[3] != 0.0);
    }

    #[test]
    fn cancellation_keeps_all_words() {
        let big = qd(1e30) + qd(1.0) + qd(1e-30);
        let rest = big - qd(1e30);
        assert_eq!(rest.0[0], 1.0);
        assert_eq!(rest.0[1], 1e-30);
    }

    #[test]
    fn sqrt_two_squared() {
        let s = qd(2.0).sqrt();
        assert!((s * s - qd(2.0)).0[0].abs() < 1e-62);
        assert_eq!(qd(0.0).sqrt(), QuadDouble::zero());
        assert!(qd(-1.0).sqrt().0[0].is_nan());
    }

    #[test]
    fn pythagorean_identity_and_known_values() {
        for x in [0.3, 1.0, 2.5, 7.0, -4.2, 12.566370614359172] {
            let (s, c) = qd(x).sin_cos();
            assert!((s * s + c * c - qd(1.0)).0[0].abs() < 1e-60, "x={x}");
            assert!((s.to_f64() - x.sin()).abs() < 1e-15);
            assert!((c.to_f64() - x.cos()).abs() < 1e-15);
        }
        // sin(fl(π)) = sin δ with δ = π − fl(π).
        let (s, _) = qd(std::f64::consts::PI).sin_cos();
        let delta = PI - qd(std::f64::consts::PI);
        let expected = delta - delta * delta * delta / qd(6.0);
        assert!((s - expected).0[0].abs() < 1e-80, "{:?}", s - expected);
    }

    #[test]
    fn ordering_uses_every_word() {
        let a = qd(1.0) + qd(1e-40);
        assert!(a > qd(1.0));
        assert!(-a < qd(-1.0));
    }
}
