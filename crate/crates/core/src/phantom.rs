//! Test functions on the cylinder `B² × [-1, 1]`.
//!
//! A [`Phantom`] is either a polynomial given by monomial coefficients or a
//! member of a small catalog of closed-form functions. Anything else that
//! needs projecting can implement [`Field`] directly.

use std::fmt;
use std::path::Path;

use crate::cheb::u_recurrence;
use crate::error::{Error, Result};

/// A real-valued function on the closed cylinder.
pub trait Field: Sync {
    fn value(&self, x: f64, y: f64, z: f64) -> f64;
}

impl<F> Field for F
where
    F: Fn(f64, f64, f64) -> f64 + Sync,
{
    fn value(&self, x: f64, y: f64, z: f64) -> f64 {
        self(x, y, z)
    }
}

/// Exponents `[a, b, c]` of the monomial `x^a y^b z^c`.
pub type Exponents = [u32; 3];

/// Sparse polynomial in `x, y, z`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Polynomial3 {
    terms: Vec<(Exponents, f64)>,
}

impl Polynomial3 {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([([0, 0, 0], c)])
    }

    /// Builds a polynomial, merging repeated exponents and dropping zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (Exponents, f64)>) -> Self {
        let mut p = Self::new();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exponents: Exponents, coeff: f64) {
        match self.terms.iter_mut().find(|(e, _)| *e == exponents) {
            Some((_, c)) => *c += coeff,
            None => self.terms.push((exponents, coeff)),
        }
        self.terms.retain(|(_, c)| *c != 0.0);
        self.terms.sort_by_key(|(e, _)| *e);
    }

    pub fn terms(&self) -> &[(Exponents, f64)] {
        &self.terms
    }

    /// Total degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(e, _)| (e[0] + e[1] + e[2]) as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        self.terms
            .iter()
            .map(|&([a, b, c], coeff)| {
                coeff * x.powi(a as i32) * y.powi(b as i32) * z.powi(c as i32)
            })
            .sum()
    }

    /// Parses `a,b,c,coeff` rows. Blank lines, `#` comments and a leading
    /// `a,b,c,coeff` column line are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut p = Self::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("a,") {
                continue;
            }
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            let bad = |message: String| Error::Parse {
                line: idx + 1,
                message,
            };
            if fields.len() != 4 {
                return Err(bad(format!("expected 4 fields, found {}", fields.len())));
            }
            let mut exps = [0u32; 3];
            for (slot, f) in exps.iter_mut().zip(&fields[..3]) {
                *slot = f.parse().map_err(|_| bad(format!("bad exponent `{f}`")))?;
            }
            let coeff: f64 = fields[3]
                .parse()
                .map_err(|_| bad(format!("bad coefficient `{}`", fields[3])))?;
            if !coeff.is_finite() {
                return Err(Error::NonFinite {
                    value: coeff,
                    location: format!("coefficient line {}", idx + 1),
                });
            }
            p.add_term(exps, coeff);
        }
        Ok(p)
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&text)
    }
}

/// Closed-form catalog entries.
#[derive(Debug, Clone, PartialEq)]
pub enum ClosedForm {
    /// `cos(2x + y) e^z`.
    CosExp,
    /// `(1 - |p - c|²/ρ²)³` inside the ball of radius `ρ`, zero outside. C².
    Bump { center: [f64; 3], radius: f64 },
    /// `exp(-|p - c|²/w²)`.
    Gaussian { center: [f64; 3], width: f64 },
    /// Ridge polynomial `U_k(x cos α + y sin α)`, constant in `z`.
    Ridge { degree: usize, angle: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Phantom {
    Polynomial(Polynomial3),
    Closed(ClosedForm),
}

/// Catalog identifiers with their parameter layout, as accepted by
/// [`Phantom::from_catalog`].
pub const CATALOG: &[(&str, &str)] = &[
    ("const1", "f = 1 (no parameters)"),
    ("poly", "polynomial from an a,b,c,coeff file"),
    ("cosexp", "f = cos(2x + y) exp(z) (no parameters)"),
    (
        "bump",
        "C² bump (1 - r²/rho²)^3, params cx,cy,cz,rho (default 0,0,0,0.8)",
    ),
    (
        "gaussian",
        "exp(-r²/w²), params cx,cy,cz,w (default 0,0,0,0.5)",
    ),
    ("ridge", "U_k(x cos a + y sin a), params k,a (default 2,0)"),
];

impl Phantom {
    pub fn constant_one() -> Self {
        Phantom::Polynomial(Polynomial3::constant(1.0))
    }

    pub fn cos_exp() -> Self {
        Phantom::Closed(ClosedForm::CosExp)
    }

    pub fn ridge(degree: usize, angle: f64) -> Self {
        Phantom::Closed(ClosedForm::Ridge { degree, angle })
    }

    /// Looks up a closed-form or constant phantom by id. `poly` is not
    /// constructible here since it needs a coefficient file.
    pub fn from_catalog(id: &str, params: &[f64]) -> Result<Self> {
        let with_defaults = |defaults: &[f64]| -> Result<Vec<f64>> {
            match params.len() {
                0 => Ok(defaults.to_vec()),
                n if n == defaults.len() => Ok(params.to_vec()),
                n => Err(Error::InvalidArgument(format!(
                    "phantom `{id}` takes {} parameters, got {n}",
                    defaults.len()
                ))),
            }
        };
        let phantom = match id {
            "const1" => {
                with_defaults(&[])?;
                Self::constant_one()
            }
            "cosexp" => {
                with_defaults(&[])?;
                Self::cos_exp()
            }
            "bump" => {
                let p = with_defaults(&[0.0, 0.0, 0.0, 0.8])?;
                if !(p[3] > 0.0) {
                    return Err(Error::InvalidArgument(
                        "bump radius must be positive".into(),
                    ));
                }
                Phantom::Closed(ClosedForm::Bump {
                    center: [p[0], p[1], p[2]],
                    radius: p[3],
                })
            }
            "gaussian" => {
                let p = with_defaults(&[0.0, 0.0, 0.0, 0.5])?;
                if !(p[3] > 0.0) {
                    return Err(Error::InvalidArgument(
                        "gaussian width must be positive".into(),
                    ));
                }
                Phantom::Closed(ClosedForm::Gaussian {
                    center: [p[0], p[1], p[2]],
                    width: p[3],
                })
            }
            "ridge" => {
                let p = with_defaults(&[2.0, 0.0])?;
                if p[0] < 0.0 || p[0].fract() != 0.0 {
                    return Err(Error::InvalidArgument(
                        "ridge degree must be a nonnegative integer".into(),
                    ));
                }
                Self::ridge(p[0] as usize, p[1])
            }
            other => return Err(Error::UnknownPhantom(other.to_string())),
        };
        Ok(phantom)
    }

    /// Polynomial degree, or `None` for non-polynomial phantoms.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Phantom::Polynomial(p) => Some(p.degree()),
            Phantom::Closed(ClosedForm::Ridge { degree, .. }) => Some(*degree),
            Phantom::Closed(_) => None,
        }
    }

    /// Default Gauss–Legendre order for chord integrals of this phantom.
    pub fn default_order(&self) -> usize {
        match self.degree() {
            Some(d) => (d + 2).max(16),
            None => 32,
        }
    }

    pub fn eval(&self, x: f64, y: f64, z: f64) -> f64 {
        match self {
            Phantom::Polynomial(p) => p.eval(x, y, z),
            Phantom::Closed(c) => match *c {
                ClosedForm::CosExp => (2.0 * x + y).cos() * z.exp(),
                ClosedForm::Bump { center, radius } => {
                    let r2 = dist2([x, y, z], center) / (radius * radius);
                    if r2 >= 1.0 {
                        0.0
                    } else {
                        (1.0 - r2).powi(3)
                    }
                }
                ClosedForm::Gaussian { center, width } => {
                    (-dist2([x, y, z], center) / (width * width)).exp()
                }
                ClosedForm::Ridge { degree, angle } => {
                    let s = (x * angle.cos() + y * angle.sin()).clamp(-1.0, 1.0);
                    u_recurrence(degree, s)
                }
            },
        }
    }

    /// Rotates the phantom about the z-axis: `g(p) = f(R(-angle) p)`.
    pub fn rotated(&self, angle: f64) -> Rotated<'_> {
        Rotated {
            inner: self,
            cos: angle.cos(),
            sin: angle.sin(),
        }
    }
}

fn dist2(p: [f64; 3], c: [f64; 3]) -> f64 {
    (p[0] - c[0]).powi(2) + (p[1] - c[1]).powi(2) + (p[2] - c[2]).powi(2)
}

impl Field for Phantom {
    fn value(&self, x: f64, y: f64, z: f64) -> f64 {
        self.eval(x, y, z)
    }
}

impl fmt::Display for Phantom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Phantom::Polynomial(p) => write!(f, "poly(deg {})", p.degree()),
            Phantom::Closed(ClosedForm::CosExp) => f.write_str("cosexp"),
            Phantom::Closed(ClosedForm::Bump { .. }) => f.write_str("bump"),
            Phantom::Closed(ClosedForm::Gaussian { .. }) => f.write_str("gaussian"),
            Phantom::Closed(ClosedForm::Ridge { degree, .. }) => write!(f, "ridge{degree}"),
        }
    }
}

/// A phantom rotated about the cylinder axis.
#[derive(Debug, Clone, Copy)]
pub struct Rotated<'a> {
    inner: &'a Phantom,
    cos: f64,
    sin: f64,
}

impl Field for Rotated<'_> {
    fn value(&self, x: f64, y: f64, z: f64) -> f64 {
        let xr = self.cos * x + self.sin * y;
        let yr = -self.sin * x + self.cos * y;
        self.inner.eval(xr, yr, z)
    }
}
