//! Dense polynomials with complex coefficients and truncated Taylor series.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

/// Polynomial `Σ c_k x^k`, coefficients stored in ascending order.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly {
    coeffs: Vec<Complex64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::constant(Complex64::new(0.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self { coeffs: vec![c] }
    }

    pub fn real(c: f64) -> Self {
        Self::constant(Complex64::new(c, 0.0))
    }

    /// `a + b·x`.
    pub fn linear(a: Complex64, b: Complex64) -> Self {
        Self::new(vec![a, b])
    }

    /// The identity polynomial `x`.
    pub fn x() -> Self {
        Self::linear(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0))
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        roots.iter().fold(Self::real(1.0), |acc, &r| {
            acc * Self::linear(-r, Complex64::new(1.0, 0.0))
        })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, x: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * x + c)
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::zero();
        }
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * k as f64)
                .collect(),
        )
    }

    /// Coefficient-conjugated polynomial: the analytic continuation of
    /// `conj(P(x))` off the real axis.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.conj()).collect())
    }

    /// Taylor coefficients `P^(k)(x₀)/k!` for `k = 0..=order`.
    pub fn taylor_at(&self, x0: Complex64, order: usize) -> Series {
        // Repeated synthetic division by (x − x₀).
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            if work.is_empty() {
                out.push(Complex64::new(0.0, 0.0));
                continue;
            }
            let n = work.len();
            let mut acc = Complex64::new(0.0, 0.0);
            let mut quotient = vec![Complex64::new(0.0, 0.0); n.saturating_sub(1)];
            for i in (0..n).rev() {
                acc = acc * x0 + work[i];
                if i > 0 {
                    quotient[i - 1] = acc;
                }
            }
            out.push(acc);
            work = quotient;
        }
        Series(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex64::new(0.0, 0.0);
        Poly::new(
            (0..n)
                .map(|k| self.coeffs.get(k).copied().unwrap_or(zero) + rhs.coeffs.get(k).copied().unwrap_or(zero))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $f(self, rhs: &Poly) -> Poly {
                (&self).$f(rhs)
            }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $f(self, rhs: Poly) -> Poly {
                self.$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Truncated power series `Σ a_k t^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series(pub Vec<Complex64>);

impl Series {
    /// Expansion of `1/(a + t)^m` to the given order.
    pub fn inverse_power(a: Complex64, m: u32, order: usize) -> Self {
        let inv = 1.0 / a;
        let mut out = Vec::with_capacity(order + 1);
        let mut term = inv.powu(m);
        for k in 0..=order {
            out.push(term);
            // binom(−m, k+1)/binom(−m, k) = −(m + k)/(k + 1)
            term = term * (-(m as f64 + k as f64) / (k as f64 + 1.0)) * inv;
        }
        Series(out)
    }

    pub fn order(&self) -> usize {
        self.0.len() - 1
    }

    /// Cauchy product truncated to the shorter order.
    pub fn mul(&self, rhs: &Series) -> Series {
        let order = self.order().min(rhs.order());
        Series(
            (0..=order)
                .map(|k| (0..=k).map(|i| self.0[i] * rhs.0[k - i]).sum())
                .collect(),
        )
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.0[k]
    }
}
