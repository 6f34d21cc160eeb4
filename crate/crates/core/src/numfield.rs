//! Number fields `Q[x]/(m)` in the power basis and their elements.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{self, Irreducibility};
use crate::scalar::{common_denominator, format_rational, Field, Rational};

/// Numerators over the least common denominator.
fn integer_coords(a: &[Rational]) -> (Vec<BigInt>, BigInt) {
    let den = common_denominator(a);
    let nums = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// `Q[x]/(m)` for a monic irreducible `m`.
#[derive(Debug)]
pub struct NumberField {
    minpoly: Vec<Rational>,
    irreducibility: Irreducibility,
    /// Coordinates of `x^(d+k)` for `k < d - 1`, over the common denominator `reduction_den`.
    reduction_num: Vec<Vec<BigInt>>,
    reduction_den: BigInt,
    /// `Tr(x^j)` for `j < d`.
    traces: Vec<Rational>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minpoly == other.minpoly
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Builds the field from a monic minimal polynomial, coefficients low to high.
    ///
    /// Irreducibility is decided for degree at most four; above that it is
    /// taken on trust and [`NumberField::irreducibility_asserted`] reports so.
    pub fn new(minpoly: Vec<Rational>) -> Result<Arc<Self>> {
        let d = match poly::degree(&minpoly) {
            Some(d) if d >= 1 && d + 1 == minpoly.len() => d,
            _ => return Err(Error::InvalidField("polynomial must have positive degree and no trailing zeros".into())),
        };
        if !minpoly[d].is_one() {
            return Err(Error::InvalidField("polynomial is not monic".into()));
        }
        let irreducibility = poly::irreducibility(&minpoly);
        if irreducibility == Irreducibility::Reducible {
            return Err(Error::InvalidField("polynomial is reducible over the rationals".into()));
        }
        // x^d = -(m_0 + ... + m_{d-1} x^{d-1}); build higher powers by shifting.
        let mut reduction: Vec<Vec<Rational>> = Vec::with_capacity(d.saturating_sub(1));
        let mut cur: Vec<Rational> = minpoly[..d].iter().map(|c| -c.clone()).collect();
        for _ in 0..d.saturating_sub(1) {
            reduction.push(cur.clone());
            let top = cur[d - 1].clone();
            let mut next = vec![Rational::zero(); d];
            next[1..d].clone_from_slice(&cur[..d - 1]);
            for j in 0..d {
                next[j] -= &top * &minpoly[j];
            }
            cur = next;
        }
        let flat: Vec<Rational> = reduction.iter().flatten().cloned().collect();
        let (flat_num, reduction_den) = integer_coords(&flat);
        let reduction_num = flat_num.chunks(d.max(1)).map(|c| c.to_vec()).collect();
        let mut field = NumberField { minpoly, irreducibility, reduction_num, reduction_den, traces: Vec::new() };
        field.traces = (0..d)
            .map(|j| {
                let mut basis = vec![Rational::zero(); d];
                basis[j] = Rational::one();
                (0..d)
                    .map(|i| {
                        let mut e = vec![Rational::zero(); d];
                        e[i] = Rational::one();
                        field.mul_coords(&basis, &e)[i].clone()
                    })
                    .sum()
            })
            .collect();
        Ok(Arc::new(field))
    }

    pub fn degree(&self) -> usize {
        self.minpoly.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[Rational] {
        &self.minpoly
    }

    /// True when the degree exceeded the checked range and irreducibility was assumed.
    pub fn irreducibility_asserted(&self) -> bool {
        self.irreducibility == Irreducibility::Asserted
    }

    /// Product of two coordinate vectors of length `degree`.
    pub fn mul_coords(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let d = self.degree();
        // Clear denominators so the convolution runs over Z; reduce once at the end.
        let (na, da) = integer_coords(a);
        let (nb, db) = integer_coords(b);
        let mut full = vec![BigInt::zero(); 2 * d - 1];
        for (i, x) in na.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in nb.iter().enumerate() {
                if !y.is_zero() {
                    full[i + j] += x * y;
                }
            }
        }
        let mut out: Vec<BigInt> = full[..d].iter().map(|c| c * &self.reduction_den).collect();
        for (k, c) in full[d..].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.reduction_num[k]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        let den = da * db * &self.reduction_den;
        out.into_iter().map(|n| if n.is_zero() { Rational::zero() } else { Rational::new(n, den.clone()) }).collect()
    }

    /// Inverse of a nonzero coordinate vector via extended Euclid.
    pub fn inv_coords(&self, a: &[Rational]) -> Result<Vec<Rational>> {
        let (g, s) = poly::ext_gcd_mod(a, &self.minpoly);
        if poly::degree(&g) != Some(0) {
            return Err(Error::NotInvertible);
        }
        let mut out = vec![Rational::zero(); self.degree()];
        for (o, c) in out.iter_mut().zip(s) {
            *o = c;
        }
        Ok(out)
    }

    /// Absolute trace of an element given by coordinates.
    pub fn trace_coords(&self, a: &[Rational]) -> Rational {
        a.iter().zip(&self.traces).map(|(x, t)| x * t).sum()
    }

    /// `Tr(x^j)` for `j < degree`.
    pub fn power_traces(&self) -> &[Rational] {
        &self.traces
    }

    /// Matrix (row-major, `d x d`) of multiplication by `a` in the power basis.
    pub fn regular_matrix(&self, a: &[Rational]) -> Vec<Rational> {
        let d = self.degree();
        let mut m = vec![Rational::zero(); d * d];
        for j in 0..d {
            let mut e = vec![Rational::zero(); d];
            e[j] = Rational::one();
            for (i, c) in self.mul_coords(a, &e).into_iter().enumerate() {
                m[i * d + j] = c;
            }
        }
        m
    }
}

/// An element of the rationals or of a [`NumberField`].
///
/// A missing field marks a rational constant; it combines with elements of any field.
#[derive(Clone)]
pub struct FieldElement {
    field: Option<Arc<NumberField>>,
    coords: Vec<Rational>,
}

impl FieldElement {
    pub fn rational(q: Rational) -> Self {
        FieldElement { field: None, coords: vec![q] }
    }

    pub fn new(field: &Arc<NumberField>, coords: Vec<Rational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::Shape(format!("expected {} coordinates, got {}", field.degree(), coords.len())));
        }
        Ok(FieldElement { field: Some(field.clone()), coords })
    }

    /// The class of `x` in the field.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        let d = field.degree();
        if d == 1 {
            return FieldElement::rational(-field.minpoly[0].clone());
        }
        let mut coords = vec![Rational::zero(); d];
        coords[1] = Rational::one();
        FieldElement { field: Some(field.clone()), coords }
    }

    pub fn field(&self) -> Option<&Arc<NumberField>> {
        self.field.as_ref()
    }

    /// Coordinates padded to `degree` entries.
    pub fn coords_in(&self, degree: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); degree];
        for (o, c) in out.iter_mut().zip(&self.coords) {
            *o = c.clone();
        }
        out
    }

    pub fn raw_coords(&self) -> &[Rational] {
        &self.coords
    }

    /// `Some(q)` when the element is the rational number `q`.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coords[1..].iter().all(Zero::is_zero) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// Places the element in `field`; rational constants are promoted.
    pub fn in_field(&self, field: &Arc<NumberField>) -> Result<Self> {
        match &self.field {
            Some(f) if **f != **field => Err(Error::FieldMismatch),
            _ => Ok(FieldElement { field: Some(field.clone()), coords: self.coords_in(field.degree()) }),
        }
    }

    pub fn trace(&self) -> Rational {
        match &self.field {
            None => self.coords[0].clone(),
            Some(f) => f.trace_coords(&self.coords),
        }
    }

    fn joint_field(&self, other: &Self) -> Option<Arc<NumberField>> {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || **a == **b, "entries live in different number fields");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        let field = self.joint_field(other);
        let d = field.as_ref().map_or(1, |f| f.degree());
        let coords = (0..d)
            .map(|i| {
                let z = Rational::zero();
                op(self.coords.get(i).unwrap_or(&z), other.coords.get(i).unwrap_or(&z))
            })
            .collect();
        FieldElement { field, coords }.normalized()
    }

    fn normalized(mut self) -> Self {
        if self.field.as_ref().is_some_and(|f| f.degree() == 1) {
            self.field = None;
        }
        self
    }

    fn product(&self, other: &Self) -> Self {
        match self.joint_field(other) {
            None => FieldElement::rational(&self.coords[0] * &other.coords[0]),
            Some(f) => {
                if let Some(q) = self.as_rational() {
                    return FieldElement { field: Some(f), coords: other.coords.iter().map(|c| c * &q).collect() };
                }
                if let Some(q) = other.as_rational() {
                    return FieldElement { field: Some(f), coords: self.coords.iter().map(|c| c * &q).collect() };
                }
                let coords = f.mul_coords(&self.coords, &other.coords);
                FieldElement { field: Some(f), coords }
            }
        }
    }

    pub fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::NotInvertible);
        }
        match (&self.field, self.as_rational()) {
            (_, Some(q)) => Ok(FieldElement::rational(q.recip())),
            (Some(f), None) => Ok(FieldElement { field: Some(f.clone()), coords: f.inv_coords(&self.coords)? }),
            (None, None) => unreachable!("rational constants have one coordinate"),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coords.len().max(other.coords.len());
        let z = Rational::zero();
        (0..n).all(|i| self.coords.get(i).unwrap_or(&z) == other.coords.get(i).unwrap_or(&z))
            && match (&self.field, &other.field) {
                (Some(a), Some(b)) => **a == **b || self.as_rational().is_some(),
                _ => true,
            }
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", format_rational(&q));
        }
        let terms: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, c)| match j {
                0 => format_rational(c),
                1 => format!("{}*t", format_rational(c)),
                _ => format!("{}*t^{j}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl Add for FieldElement {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.combine(&rhs, |a, b| a + b)
    }
}

impl Sub for FieldElement {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.combine(&rhs, |a, b| a - b)
    }
}

impl Mul for FieldElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.product(&rhs)
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.product(rhs)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.combine(rhs, |a, b| a + b)
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Div for FieldElement {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.inv()
    }
}

impl Neg for FieldElement {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElement { field: self.field, coords: self.coords.into_iter().map(|c| -c).collect() }
    }
}

impl Zero for FieldElement {
    fn zero() -> Self {
        FieldElement::rational(Rational::zero())
    }
    fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

impl One for FieldElement {
    fn one() -> Self {
        FieldElement::rational(Rational::one())
    }
}

impl Field for FieldElement {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero")
    }

    fn from_rational(q: Rational) -> Self {
        FieldElement::rational(q)
    }

    fn compatible(&self, other: &Self) -> bool {
        match (&self.field, &other.field) {
            (Some(a), Some(b)) => **a == **b,
            _ => true,
        }
    }

    fn rational_degree(&self) -> usize {
        self.field.as_ref().map_or(1, |f| f.degree())
    }

    fn rational_coords(&self) -> Vec<Rational> {
        self.coords.clone()
    }

    fn mul_ref(&self, other: &Self) -> Self {
        self.product(other)
    }

    fn add_ref(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a + b)
    }

    fn sub_ref(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a - b)
    }
}
