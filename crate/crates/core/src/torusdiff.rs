//! An exact model of `Diff(H_{1,0}) ≅ (S¹ × ℤ) ⋊ (S¹ ⋊ ℤ₂)` with circle
//! coordinates in `ℚ/ℤ`, its components `Map(H_{1,0}) ≅ ℤ × ℤ₂`, and their
//! image in `SL(2, ℤ)`.
//!
//! An element `((a, n), (x, ε))` multiplies by
//!
//! ```text
//! ((a, n), (x, ε)) · ((a', n'), (x', ε')) = ((a + ε a' + n' x, n + n'), (x + ε x', ε ε'))
//! ```
//!
//! Element literals read `(a=p/q, n=k; x=r/s, eps=±1)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::field::{format_scalar, parse_rational, Scalar};
use crate::report::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("cannot parse element literal `{0}`")]
    Parse(String),
    #[error("determinant {0} is not 1")]
    NotUnimodular(i64),
}

/// A point of `ℚ/ℤ`, stored as its representative in `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CirclePoint(Scalar);

impl CirclePoint {
    pub fn zero() -> Self {
        CirclePoint(Scalar::zero())
    }

    /// Reduces any rational mod 1.
    pub fn new(value: Scalar) -> Self {
        let floor = value.floor();
        CirclePoint(value - floor)
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::new(Scalar::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn add(&self, other: &CirclePoint) -> Self {
        Self::new(&self.0 + &other.0)
    }

    pub fn neg(&self) -> Self {
        Self::new(-&self.0)
    }

    /// `k · self`.
    pub fn times(&self, k: i64) -> Self {
        Self::new(&self.0 * Scalar::from_integer(BigInt::from(k)))
    }

    /// `self` for `ε = +1`, `−self` for `ε = −1`.
    pub fn signed(&self, eps: Sign) -> Self {
        match eps {
            Sign::Plus => self.clone(),
            Sign::Minus => self.neg(),
        }
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_scalar(&self.0))
    }
}

/// `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Self> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

/// `((a, n), (x, ε))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusDiffElement {
    pub a: CirclePoint,
    pub n: i64,
    pub x: CirclePoint,
    pub eps: Sign,
}

impl TorusDiffElement {
    pub fn new(a: CirclePoint, n: i64, x: CirclePoint, eps: Sign) -> Self {
        TorusDiffElement { a, n, x, eps }
    }

    pub fn identity() -> Self {
        Self::new(CirclePoint::zero(), 0, CirclePoint::zero(), Sign::Plus)
    }

    /// The Dehn twist `((0, 1), (0, +1))`.
    pub fn dehn_twist() -> Self {
        Self::section(&MCGElement::dehn_twist())
    }

    /// The rotation `((0, 0), (0, −1))`.
    pub fn rotation() -> Self {
        Self::section(&MCGElement::rotation())
    }

    /// `(n, ε) ↦ ((0, n), (0, ε))`, a section of [`TorusDiffElement::pi0`].
    pub fn section(m: &MCGElement) -> Self {
        Self::new(CirclePoint::zero(), m.n, CirclePoint::zero(), m.eps)
    }

    pub fn multiply(&self, h: &TorusDiffElement) -> Self {
        let a = self.a.add(&h.a.signed(self.eps)).add(&self.x.times(h.n));
        let n = self.n.checked_add(h.n).expect("winding number overflow");
        let x = self.x.add(&h.x.signed(self.eps));
        Self::new(a, n, x, self.eps.mul(h.eps))
    }

    pub fn inverse(&self) -> Self {
        let a = self.x.times(self.n).add(&self.a.neg()).signed(self.eps);
        let x = self.x.neg().signed(self.eps);
        Self::new(a, -self.n, x, self.eps)
    }

    pub fn pi0(&self) -> MCGElement {
        MCGElement { n: self.n, eps: self.eps }
    }

    /// `((a, n), (x, ε))` with plain numbers, e.g. `((2/3,2),(1/3,1))`.
    pub fn pair_notation(&self) -> String {
        format!("(({},{}),({},{}))", self.a, self.n, self.x, self.eps.to_i64())
    }
}

impl fmt::Display for TorusDiffElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(a={}, n={}; x={}, eps={})", self.a, self.n, self.x, self.eps)
    }
}

impl FromStr for TorusDiffElement {
    type Err = TorusError;

    /// Circle coordinates may be any rational; they are reduced mod 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || TorusError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (left, right) = inner.split_once(';').ok_or_else(bad)?;
        let field = |part: &str, key: &str| -> Result<String, TorusError> {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            if k.trim() != key {
                return Err(bad());
            }
            Ok(v.trim().to_string())
        };
        let (pa, pn) = left.split_once(',').ok_or_else(bad)?;
        let (px, pe) = right.split_once(',').ok_or_else(bad)?;
        let a = parse_rational(&field(pa, "a")?).map_err(|_| bad())?;
        let n: i64 = field(pn, "n")?.parse().map_err(|_| bad())?;
        let x = parse_rational(&field(px, "x")?).map_err(|_| bad())?;
        let eps = match field(pe, "eps")?.as_str() {
            "+1" | "1" => Sign::Plus,
            "-1" => Sign::Minus,
            _ => return Err(bad()),
        };
        Ok(Self::new(CirclePoint::new(a), n, CirclePoint::new(x), eps))
    }
}

/// An element `T^n R^k` of `Map(H_{1,0}) ≅ ℤ × ℤ₂`, `ε = (−1)^k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MCGElement {
    pub n: i64,
    pub eps: Sign,
}

impl MCGElement {
    pub fn identity() -> Self {
        MCGElement { n: 0, eps: Sign::Plus }
    }

    pub fn dehn_twist() -> Self {
        MCGElement { n: 1, eps: Sign::Plus }
    }

    pub fn rotation() -> Self {
        MCGElement { n: 0, eps: Sign::Minus }
    }

    pub fn multiply(&self, other: &MCGElement) -> Self {
        MCGElement {
            n: self.n + other.n,
            eps: self.eps.mul(other.eps),
        }
    }

    /// `T ↦ [[1,0],[1,1]]`, `R ↦ [[−1,0],[0,−1]]`.
    pub fn to_sl2(&self) -> SL2Matrix {
        let e = self.eps.to_i64();
        SL2Matrix::new(e, 0, e * self.n, e).expect("determinant one")
    }
}

impl fmt::Display for MCGElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = match self.n {
            0 => None,
            1 => Some("T".to_string()),
            n => Some(format!("T^{n}")),
        };
        match (t, self.eps) {
            (None, Sign::Plus) => f.write_str("id"),
            (None, Sign::Minus) => f.write_str("R"),
            (Some(t), Sign::Plus) => f.write_str(&t),
            (Some(t), Sign::Minus) => write!(f, "{t} R"),
        }
    }
}

/// `[[a, b], [c, d]]` with `ad − bc = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl SL2Matrix {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, TorusError> {
        let det = a * d - b * c;
        if det != 1 {
            return Err(TorusError::NotUnimodular(det));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    pub fn identity() -> Self {
        SL2Matrix { a: 1, b: 0, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &SL2Matrix) -> Self {
        SL2Matrix {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        SL2Matrix {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// The linear action on `ℝ²/ℤ² = 𝕋²`, on rational points.
    pub fn act_on_torus(&self, p: &(CirclePoint, CirclePoint)) -> (CirclePoint, CirclePoint) {
        (
            p.0.times(self.a).add(&p.1.times(self.b)),
            p.0.times(self.c).add(&p.1.times(self.d)),
        )
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

fn random_point(rng: &mut ChaCha8Rng) -> CirclePoint {
    let den: i64 = rng.random_range(1..=12);
    CirclePoint::from_ratio(rng.random_range(0..den), den)
}

/// A random element with small denominators and `|n| ≤ 5`.
pub fn random_element(rng: &mut ChaCha8Rng) -> TorusDiffElement {
    let a = random_point(rng);
    let n = rng.random_range(-5..=5);
    let x = random_point(rng);
    let eps = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
    TorusDiffElement::new(a, n, x, eps)
}

/// Associativity on `sample_size` random triples, identity and inverse laws
/// on each of their entries, and the conjugation laws of the two semidirect
/// products: `ℤ₂` reflects both circles and fixes `ℤ`; the `x`-circle fixes
/// the `a`-circle and sends `(0, n)` to `(n x, n)`.
pub fn check_group_axioms(sample_size: usize, seed: u64) -> ValidationReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidationReport::new();
    let e = TorusDiffElement::identity();
    let r = TorusDiffElement::rotation();
    for i in 0..sample_size {
        let triple = [random_element(&mut rng), random_element(&mut rng), random_element(&mut rng)];
        let [f, g, h] = &triple;
        let loc = || format!("sample {i}: {f}, {g}, {h}");
        report.require(
            f.multiply(g).multiply(h) == f.multiply(&g.multiply(h)),
            "associativity",
            loc(),
        );
        for (k, u) in triple.iter().enumerate() {
            report.require(e.multiply(u) == *u && u.multiply(&e) == *u, "identity", format!("{} element {k}", loc()));
            let inv = u.inverse();
            report.require(
                u.multiply(&inv) == e && inv.multiply(u) == e,
                "inverse",
                format!("{} element {k}", loc()),
            );
        }
        let pi = |u: &TorusDiffElement| u.pi0();
        report.require(
            pi(&f.multiply(g)) == pi(f).multiply(&pi(g)),
            "pi0 homomorphism",
            loc(),
        );
        let conj = |c: &TorusDiffElement, u: &TorusDiffElement| c.multiply(u).multiply(&c.inverse());
        // ℤ₂ on S¹ × ℤ and on the x-circle.
        let base = TorusDiffElement::new(f.a.clone(), f.n, CirclePoint::zero(), Sign::Plus);
        report.require(
            conj(&r, &base) == TorusDiffElement::new(f.a.neg(), f.n, CirclePoint::zero(), Sign::Plus),
            "reflection acts on (a, n) by (-a, n)",
            loc(),
        );
        let xs = TorusDiffElement::new(CirclePoint::zero(), 0, g.x.clone(), Sign::Plus);
        report.require(
            conj(&r, &xs) == TorusDiffElement::new(CirclePoint::zero(), 0, g.x.neg(), Sign::Plus),
            "reflection acts on x by -x",
            loc(),
        );
        // The x-circle on S¹ × ℤ.
        let winding = TorusDiffElement::new(CirclePoint::zero(), f.n, CirclePoint::zero(), Sign::Plus);
        report.require(
            conj(&xs, &winding) == TorusDiffElement::new(g.x.times(f.n), f.n, CirclePoint::zero(), Sign::Plus),
            "x sends (0, n) to (n x, n)",
            loc(),
        );
        let circle = TorusDiffElement::new(h.a.clone(), 0, CirclePoint::zero(), Sign::Plus);
        report.require(conj(&xs, &circle) == circle, "x fixes (a, 0)", loc());
    }
    report
}

/// Checks that the section `(n, ε) ↦ ((0, n), (0, ε))` is multiplicative on
/// `n ∈ [lo, hi]`, both signs, and that it splits `pi0`.
pub fn check_section(lo: i64, hi: i64) -> ValidationReport {
    let mut report = ValidationReport::new();
    let signs = [Sign::Plus, Sign::Minus];
    for n in lo..=hi {
        for m in lo..=hi {
            for &e1 in &signs {
                for &e2 in &signs {
                    let (p, q) = (MCGElement { n, eps: e1 }, MCGElement { n: m, eps: e2 });
                    let s = |u: &MCGElement| TorusDiffElement::section(u);
                    report.require(
                        s(&p).multiply(&s(&q)) == s(&p.multiply(&q)),
                        "section multiplicative",
                        format!("({n},{e1}) ({m},{e2})"),
                    );
                }
            }
            report.require(
                TorusDiffElement::section(&MCGElement { n, eps: Sign::Plus }).pi0() == MCGElement { n, eps: Sign::Plus },
                "pi0 of section",
                format!("{n}"),
            );
        }
    }
    report
}

/// Denominator of a circle point, for sampling diagnostics.
pub fn denominator(p: &CirclePoint) -> BigInt {
    let d = p.value().denom().clone();
    debug_assert!(d.is_positive() && (p.value().numer().is_zero() || p.value().numer().gcd(&d).is_one()));
    d
}
