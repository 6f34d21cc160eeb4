//! Dense univariate polynomials over the rationals, coefficients low to high.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::scalar::{common_denominator, Rational};

pub type Poly = Vec<Rational>;

pub fn trim(p: &mut Poly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn degree(p: &[Rational]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

pub fn mul(a: &[Rational], b: &[Rational]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[Rational], b: &[Rational]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(Rational::zero);
            let y = b.get(i).cloned().unwrap_or_else(Rational::zero);
            x - y
        })
        .collect();
    trim(&mut out);
    out
}

/// Division with remainder; panics if `b` is zero.
pub fn divrem(a: &[Rational], b: &[Rational]) -> (Poly, Poly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem: Poly = a.to_vec();
    trim(&mut rem);
    let mut quot = vec![Rational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate().take(db + 1) {
            rem[shift + j] -= &c * bj;
        }
        quot[shift] = c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

/// Returns `(g, s)` with `g = gcd(a, m)` monic and `s * a = g (mod m)`.
pub fn ext_gcd_mod(a: &[Rational], m: &[Rational]) -> (Poly, Poly) {
    let (mut r0, mut r1): (Poly, Poly) = (m.to_vec(), a.to_vec());
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![Rational::one()]);
    while degree(&r1).is_some() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    let lead = r0.last().cloned().unwrap_or_else(Rational::one);
    let g = r0.iter().map(|c| c / &lead).collect();
    let s = s0.iter().map(|c| c / &lead).collect();
    (g, s)
}

pub fn eval(p: &[Rational], x: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// Scales `p` to a primitive integer polynomial with the same roots.
pub fn integer_form(p: &[Rational]) -> Vec<BigInt> {
    let d = common_denominator(p.iter());
    let ints: Vec<BigInt> = p.iter().map(|c| (c * Rational::from_integer(d.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    if n.is_zero() {
        return Vec::new();
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = BigInt::one();
    while &i * &i <= n {
        if (&n % &i).is_zero() {
            let j = &n / &i;
            if j != i {
                large.push(j);
            }
            small.push(i.clone());
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// All distinct rational roots, in increasing order.
pub fn rational_roots(p: &[Rational]) -> Vec<Rational> {
    let mut p = p.to_vec();
    trim(&mut p);
    let mut roots = Vec::new();
    if degree(&p).unwrap_or(0) == 0 {
        return roots;
    }
    if p[0].is_zero() {
        roots.push(Rational::zero());
        let first = p.iter().position(|c| !c.is_zero()).unwrap_or(0);
        p.drain(..first);
    }
    if degree(&p).unwrap_or(0) > 0 {
        let ints = integer_form(&p);
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for sign in [1, -1] {
                    let cand = Rational::new(&num * BigInt::from(sign), den.clone());
                    if eval(&p, &cand).is_zero() && !roots.contains(&cand) {
                        roots.push(cand);
                    }
                }
            }
        }
    }
    roots.sort();
    roots
}

/// Outcome of the irreducibility test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Irreducibility {
    Verified,
    Reducible,
    /// Degree above the checked range; the caller vouches for it.
    Asserted,
}

/// Decides irreducibility over the rationals for degree at most four.
pub fn irreducibility(p: &[Rational]) -> Irreducibility {
    let mut p = p.to_vec();
    trim(&mut p);
    let n = match degree(&p) {
        None | Some(0) => return Irreducibility::Reducible,
        Some(n) => n,
    };
    if n == 1 {
        return Irreducibility::Verified;
    }
    if n > 4 {
        return Irreducibility::Asserted;
    }
    if !rational_roots(&p).is_empty() {
        return Irreducibility::Reducible;
    }
    if n < 4 || !has_quadratic_factor(&p) {
        Irreducibility::Verified
    } else {
        Irreducibility::Reducible
    }
}

/// For a quartic without rational roots: does it split into two rational quadratics?
fn has_quadratic_factor(p: &[Rational]) -> bool {
    // Substitute x = y / D to get a monic integer quartic, then apply Gauss' lemma.
    let lead = p[4].clone();
    let monic: Vec<Rational> = p.iter().map(|c| c / &lead).collect();
    let d = common_denominator(monic.iter());
    let dq = Rational::from_integer(d);
    let mut scale = Rational::one();
    let mut coeffs = vec![BigInt::zero(); 5];
    for k in (0..5).rev() {
        coeffs[k] = (&monic[k] * &scale).to_integer();
        scale *= &dq;
    }
    let (a3, a2, a1, a0) = (&coeffs[3], &coeffs[2], &coeffs[1], &coeffs[0]);
    // (y^2 + a y + b)(y^2 + c y + e) with integers a, b, c, e.
    for b in divisors(a0).into_iter().flat_map(|b| [b.clone(), -b]) {
        let e = a0 / &b;
        let target_sum = a2 - &b - &e; // a*c
        if b != e {
            // a*(e - b) = a1 - b*a3
            let num = a1 - &b * a3;
            let den = &e - &b;
            if (&num % &den).is_zero() {
                let a = &num / &den;
                let c = a3 - &a;
                if &a * &c == target_sum {
                    return true;
                }
            }
        } else {
            // a + c = a3, a*c = target_sum, and a1 = b*a3 must hold.
            if a1 != &(&b * a3) {
                continue;
            }
            let disc = a3 * a3 - BigInt::from(4) * &target_sum;
            if disc.is_negative() {
                continue;
            }
            let r = disc.sqrt();
            if &r * &r == disc && ((a3 + &r) % BigInt::from(2)).is_zero() {
                return true;
            }
        }
    }
    false
}

/// Characteristic polynomial by the Faddeev-LeVerrier recursion; input is a square
/// row-major matrix of rationals, output is monic, low to high.
pub fn characteristic_polynomial(n: usize, m: &[Rational]) -> Poly {
    let matmul = |a: &[Rational], b: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let x = &a[i * n + k];
                if x.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += x * &b[k * n + j];
                }
            }
        }
        out
    };
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = vec![Rational::zero(); n * n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k)/k
        let mut next = matmul(m, &mk);
        for i in 0..n {
            next[i * n + i] += &coeffs[n - k + 1];
        }
        let am = matmul(m, &next);
        let tr: Rational = (0..n).map(|i| am[i * n + i].clone()).sum();
        coeffs[n - k] = -tr / Rational::from_integer(BigInt::from(k.to_i64().unwrap()));
        mk = next;
    }
    coeffs
}
