//! Truncated Taylor series ("jets") for exact higher-order derivatives.
//!
//! A [`Jet`] of order `K` around a point `t0` stores the normalized Taylor
//! coefficients `c[k] = f^(k)(t0) / k!` for `k = 0..=K`. Arithmetic on jets
//! propagates all derivatives at once, so a curve written once in terms of
//! [`Jet`] yields its whole derivative stack without symbolic work or
//! finite differences.

use std::ops::{Add, Div, Mul, Neg, Sub};

use nalgebra::Vector3;

/// Largest supported truncation order.
pub const MAX_ORDER: usize = 12;

const CAP: usize = MAX_ORDER + 1;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    c: [f64; CAP],
}

impl Jet {
    pub fn constant(value: f64, order: usize) -> Self {
        assert!(order <= MAX_ORDER, "jet order {order} exceeds {MAX_ORDER}");
        let mut c = [0.0; CAP];
        c[0] = value;
        Self { order, c }
    }

    /// The independent variable `t` expanded around `t0`.
    pub fn variable(t0: f64, order: usize) -> Self {
        let mut j = Self::constant(t0, order);
        if order >= 1 {
            j.c[1] = 1.0;
        }
        j
    }

    pub fn from_coeffs(coeffs: &[f64]) -> Self {
        assert!(!coeffs.is_empty() && coeffs.len() <= CAP);
        let mut c = [0.0; CAP];
        c[..coeffs.len()].copy_from_slice(coeffs);
        Self {
            order: coeffs.len() - 1,
            c,
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.c[0]
    }

    /// Normalized Taylor coefficient `f^(k)(t0) / k!`.
    #[inline]
    pub fn coeff(&self, k: usize) -> f64 {
        if k <= self.order {
            self.c[k]
        } else {
            0.0
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.c[..=self.order]
    }

    /// The `k`-th derivative at the expansion point.
    ///
    /// Panics if `k` exceeds the jet's order.
    pub fn derivative(&self, k: usize) -> f64 {
        assert!(k <= self.order, "derivative {k} beyond jet order {}", self.order);
        self.c[k] * factorial(k)
    }

    /// d/dt of the series; the order drops by one.
    pub fn deriv(&self) -> Self {
        assert!(self.order >= 1, "cannot differentiate an order-0 jet");
        let mut c = [0.0; CAP];
        for k in 0..self.order {
            c[k] = (k + 1) as f64 * self.c[k + 1];
        }
        Self {
            order: self.order - 1,
            c,
        }
    }

    /// Antiderivative with constant term `c0`; the order rises by one up to
    /// [`MAX_ORDER`].
    pub fn integrate(&self, c0: f64) -> Self {
        let order = (self.order + 1).min(MAX_ORDER);
        let mut c = [0.0; CAP];
        c[0] = c0;
        for k in 1..=order {
            c[k] = self.c[k - 1] / k as f64;
        }
        Self { order, c }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut c = [0.0; CAP];
        c[..=order].copy_from_slice(&self.c[..=order]);
        Self { order, c }
    }

    fn zero_like(order: usize) -> Self {
        Self { order, c: [0.0; CAP] }
    }

    pub fn recip(&self) -> Self {
        Jet::constant(1.0, self.order) / *self
    }

    pub fn sqrt(&self) -> Self {
        let a = &self.c;
        let mut r = Self::zero_like(self.order);
        r.c[0] = a[0].sqrt();
        for k in 1..=self.order {
            let mut acc = a[k];
            for j in 1..k {
                acc -= r.c[j] * r.c[k - j];
            }
            r.c[k] = acc / (2.0 * r.c[0]);
        }
        r
    }

    /// Real power `self^p`; requires a positive constant term.
    pub fn powf(&self, p: f64) -> Self {
        let a = &self.c;
        let mut r = Self::zero_like(self.order);
        r.c[0] = a[0].powf(p);
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += ((p + 1.0) * j as f64 - k as f64) * a[j] * r.c[k - j];
            }
            r.c[k] = acc / (k as f64 * a[0]);
        }
        r
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut out = Jet::constant(1.0, self.order);
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    pub fn sin_cos(&self) -> (Self, Self) {
        let a = &self.c;
        let mut s = Self::zero_like(self.order);
        let mut c = Self::zero_like(self.order);
        s.c[0] = a[0].sin();
        c.c[0] = a[0].cos();
        for k in 1..=self.order {
            let mut ds = 0.0;
            let mut dc = 0.0;
            for j in 1..=k {
                let ja = j as f64 * a[j];
                ds += ja * c.c[k - j];
                dc -= ja * s.c[k - j];
            }
            s.c[k] = ds / k as f64;
            c.c[k] = dc / k as f64;
        }
        (s, c)
    }

    pub fn sin(&self) -> Self {
        self.sin_cos().0
    }

    pub fn cos(&self) -> Self {
        self.sin_cos().1
    }

    pub fn exp(&self) -> Self {
        let a = &self.c;
        let mut e = Self::zero_like(self.order);
        e.c[0] = a[0].exp();
        for k in 1..=self.order {
            let mut acc = 0.0;
            for j in 1..=k {
                acc += j as f64 * a[j] * e.c[k - j];
            }
            e.c[k] = acc / k as f64;
        }
        e
    }
}

pub(crate) fn factorial(k: usize) -> f64 {
    (1..=k).fold(1.0, |acc, i| acc * i as f64)
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero_like(order);
        for k in 0..=order {
            out.c[k] = self.c[k] + rhs.c[k];
        }
        out
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero_like(order);
        for k in 0..=order {
            out.c[k] = self.c[k] - rhs.c[k];
        }
        out
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut out = Jet::zero_like(order);
        for k in 0..=order {
            let mut acc = 0.0;
            for j in 0..=k {
                acc += self.c[j] * rhs.c[k - j];
            }
            out.c[k] = acc;
        }
        out
    }
}

impl Div for Jet {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        let order = self.order.min(rhs.order);
        let mut q = Jet::zero_like(order);
        for k in 0..=order {
            let mut acc = self.c[k];
            for j in 1..=k {
                acc -= rhs.c[j] * q.c[k - j];
            }
            q.c[k] = acc / rhs.c[0];
        }
        q
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        let mut out = self;
        for v in out.c[..=out.order].iter_mut() {
            *v = -*v;
        }
        out
    }
}

impl Add<f64> for Jet {
    type Output = Jet;
    fn add(self, rhs: f64) -> Jet {
        let mut out = self;
        out.c[0] += rhs;
        out
    }
}

impl Sub<f64> for Jet {
    type Output = Jet;
    fn sub(self, rhs: f64) -> Jet {
        let mut out = self;
        out.c[0] -= rhs;
        out
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        let mut out = self;
        for v in out.c[..=out.order].iter_mut() {
            *v *= rhs;
        }
        out
    }
}

impl Div<f64> for Jet {
    type Output = Jet;
    fn div(self, rhs: f64) -> Jet {
        self * (1.0 / rhs)
    }
}

impl Add<Jet> for f64 {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        rhs + self
    }
}

impl Sub<Jet> for f64 {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        -rhs + self
    }
}

impl Mul<Jet> for f64 {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        rhs * self
    }
}

impl Div<Jet> for f64 {
    type Output = Jet;
    fn div(self, rhs: Jet) -> Jet {
        rhs.recip() * self
    }
}

/// A point or vector in 3-space whose components are jets.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct JetVec3 {
    pub x: Jet,
    pub y: Jet,
    pub z: Jet,
}

impl JetVec3 {
    pub fn new(x: Jet, y: Jet, z: Jet) -> Self {
        Self { x, y, z }
    }

    pub fn constant(v: &Vector3<f64>, order: usize) -> Self {
        Self::new(
            Jet::constant(v.x, order),
            Jet::constant(v.y, order),
            Jet::constant(v.z, order),
        )
    }

    /// Builds a jet from a derivative stack `[p, p', p'', ...]`.
    pub fn from_derivatives(stack: &[Vector3<f64>]) -> Self {
        let mut cx = Vec::with_capacity(stack.len());
        let mut cy = Vec::with_capacity(stack.len());
        let mut cz = Vec::with_capacity(stack.len());
        for (k, d) in stack.iter().enumerate() {
            let inv = 1.0 / factorial(k);
            cx.push(d.x * inv);
            cy.push(d.y * inv);
            cz.push(d.z * inv);
        }
        Self::new(Jet::from_coeffs(&cx), Jet::from_coeffs(&cy), Jet::from_coeffs(&cz))
    }

    pub fn order(&self) -> usize {
        self.x.order().min(self.y.order()).min(self.z.order())
    }

    pub fn value(&self) -> Vector3<f64> {
        Vector3::new(self.x.value(), self.y.value(), self.z.value())
    }

    pub fn derivative(&self, k: usize) -> Vector3<f64> {
        Vector3::new(self.x.derivative(k), self.y.derivative(k), self.z.derivative(k))
    }

    pub fn deriv(&self) -> Self {
        Self::new(self.x.deriv(), self.y.deriv(), self.z.deriv())
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::new(self.x.truncate(order), self.y.truncate(order), self.z.truncate(order))
    }

    pub fn dot(&self, o: &JetVec3) -> Jet {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(&self, o: &JetVec3) -> JetVec3 {
        JetVec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(&self) -> Jet {
        self.dot(self).sqrt()
    }

    pub fn scale(&self, s: Jet) -> JetVec3 {
        JetVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn scale_f64(&self, s: f64) -> JetVec3 {
        JetVec3::new(self.x * s, self.y * s, self.z * s)
    }

    pub fn normalize(&self) -> JetVec3 {
        self.scale(self.norm().recip())
    }
}

impl Add for JetVec3 {
    type Output = JetVec3;
    fn add(self, o: JetVec3) -> JetVec3 {
        JetVec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for JetVec3 {
    type Output = JetVec3;
    fn sub(self, o: JetVec3) -> JetVec3 {
        JetVec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for JetVec3 {
    type Output = JetVec3;
    fn neg(self) -> JetVec3 {
        JetVec3::new(-self.x, -self.y, -self.z)
    }
}
