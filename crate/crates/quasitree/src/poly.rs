//! Exact-integer polynomial containers for the subset expansions: the
//! one-variable quasi-tree polynomial, the two-variable refinement in (t, Y),
//! and the trivariate C(X, Y, Z).

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// q(t) with nonnegative coefficients: `coeffs[j]` counts genus-j quasi-trees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiTreePoly {
    coeffs: Vec<BigInt>,
}

impl QuasiTreePoly {
    /// Normalizes by dropping trailing zero coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        assert!(coeffs.iter().all(|c| !c.is_negative()));
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        QuasiTreePoly { coeffs }
    }

    pub fn from_counts(counts: &[u64]) -> Self {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        QuasiTreePoly { coeffs: vec![] }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Highest genus with a nonzero count, if any quasi-tree exists.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, t: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    /// q(1): the total number of quasi-trees.
    pub fn total(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// q(-1), whose absolute value is the knot determinant for all-A graphs.
    pub fn at_minus_one(&self) -> BigInt {
        self.eval(&BigInt::from(-1))
    }
}

impl fmt::Display for QuasiTreePoly {
    /// Ascending powers, e.g. `21 + 6t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{c}")?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{c}")?;
                    }
                    write!(f, "t")?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Polynomial in (t, Y) with integer coefficients, keyed by exponent pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoVarPoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl TwoVarPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, t_exp: u32, y_exp: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self
            .terms
            .entry((t_exp, y_exp))
            .or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(t_exp, y_exp));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Specializes Y = 0: only Y^0 terms survive.
    pub fn at_y_zero(&self) -> QuasiTreePoly {
        let mut coeffs: Vec<BigInt> = Vec::new();
        for (&(t_exp, y_exp), c) in &self.terms {
            if y_exp != 0 {
                continue;
            }
            let t = t_exp as usize;
            if coeffs.len() <= t {
                coeffs.resize(t + 1, BigInt::zero());
            }
            coeffs[t] += c;
        }
        QuasiTreePoly::new(coeffs)
    }

    pub fn eval(&self, t: &BigInt, y: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j), c) in &self.terms {
            acc += c * t.pow(i) * y.pow(j);
        }
        acc
    }
}

impl fmt::Display for TwoVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, c, &[("t", i), ("Y", j)])?;
        }
        Ok(())
    }
}

/// Trivariate polynomial with exact integer coefficients, keyed by
/// (X, Y, Z) exponent triples. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TriVarPoly {
    terms: BTreeMap<(u32, u32, u32), BigInt>,
}

impl TriVarPoly {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, x: u32, y: u32, z: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry((x, y, z)).or_insert_with(BigInt::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&(x, y, z));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32, u32), &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt, z: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for (&(i, j, k), c) in &self.terms {
            acc += c * x.pow(i) * y.pow(j) * z.pow(k);
        }
        acc
    }

    /// Specializes X = 1 and formally substitutes Z -> t * Y^(-2).
    ///
    /// Every surviving term Y^n Z^g rewrites to t^g Y^(n-2g); the result is a
    /// genuine polynomial because n - 2g = f - k >= 0 on the surviving
    /// subsets. A negative exponent would mean the exponent convention is
    /// wrong, so it panics rather than truncating.
    pub fn at_x_one_sub_z(&self) -> TwoVarPoly {
        let mut out = TwoVarPoly::new();
        for (&(_, y_exp, z_exp), c) in &self.terms {
            let shifted = y_exp as i64 - 2 * z_exp as i64;
            assert!(
                shifted >= 0,
                "substitution Z -> t Y^-2 left a negative Y exponent"
            );
            out.add_term(z_exp, shifted as u32, c.clone());
        }
        out
    }
}

impl fmt::Display for TriVarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j, k), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_term(f, c, &[("X", i), ("Y", j), ("Z", k)])?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, coeff: &BigInt, vars: &[(&str, u32)]) -> fmt::Result {
    let constant = vars.iter().all(|&(_, e)| e == 0);
    if constant || !coeff.is_one() {
        write!(f, "{coeff}")?;
        if !constant {
            write!(f, " ")?;
        }
    }
    let mut first = true;
    for &(name, exp) in vars {
        if exp == 0 {
            continue;
        }
        if !first {
            write!(f, " ")?;
        }
        first = false;
        write!(f, "{name}")?;
        if exp > 1 {
            write!(f, "^{exp}")?;
        }
    }
    Ok(())
}
