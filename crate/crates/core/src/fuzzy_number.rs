//! Trapezoidal fuzzy quantifiers and alpha-cut fuzzy arithmetic.
//!
//! Fuzzy numbers are carried as families of alpha-cuts on a shared grid.
//! The product of two trapezoids is not a trapezoid, so results are never
//! forced back into four points: every stored level is the exact cut of the
//! result at that alpha, and only the shape between stored levels is left
//! unrepresented (interpolating linearly between levels would bow away from
//! the true membership function of a product).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::interval::{fmt_num, Interval};

/// Number of alpha levels used when none is given: 0, 0.1, ..., 1.
pub const DEFAULT_RESOLUTION: usize = 11;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FuzzyError {
    #[error("trapezoid points must be finite and ordered a <= b <= c <= d, got {0:?}")]
    InvalidTrapezoid([f64; 4]),
    #[error("alpha resolution must be at least 2, got {0}")]
    InvalidResolution(usize),
    #[error("operands use different alpha grids")]
    MismatchedAlphaGrid,
    #[error("clamp floor {0} is outside [0, 1]")]
    InvalidFloor(f64),
}

/// Four-point trapezoid `(support_low, kernel_low, kernel_high, support_high)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct TrapezoidalQuantifier {
    support_low: f64,
    kernel_low: f64,
    kernel_high: f64,
    support_high: f64,
}

impl TryFrom<[f64; 4]> for TrapezoidalQuantifier {
    type Error = FuzzyError;

    fn try_from(p: [f64; 4]) -> Result<Self, Self::Error> {
        TrapezoidalQuantifier::new(p[0], p[1], p[2], p[3])
    }
}

impl From<TrapezoidalQuantifier> for [f64; 4] {
    fn from(t: TrapezoidalQuantifier) -> Self {
        t.points()
    }
}

impl TrapezoidalQuantifier {
    pub fn new(support_low: f64, kernel_low: f64, kernel_high: f64, support_high: f64) -> Result<Self, FuzzyError> {
        let p = [support_low, kernel_low, kernel_high, support_high];
        let finite = p.iter().all(|v| v.is_finite());
        if !finite || !(support_low <= kernel_low && kernel_low <= kernel_high && kernel_high <= support_high) {
            return Err(FuzzyError::InvalidTrapezoid(p));
        }
        Ok(TrapezoidalQuantifier { support_low, kernel_low, kernel_high, support_high })
    }

    /// Degenerate trapezoid `(v, v, v, v)`.
    pub fn crisp(value: f64) -> Result<Self, FuzzyError> {
        Self::new(value, value, value, value)
    }

    /// `(l, l, u, u)`; endpoint openness is dropped.
    pub fn from_interval(iv: &Interval) -> Self {
        TrapezoidalQuantifier {
            support_low: iv.lower(),
            kernel_low: iv.lower(),
            kernel_high: iv.upper(),
            support_high: iv.upper(),
        }
    }

    pub fn points(&self) -> [f64; 4] {
        [self.support_low, self.kernel_low, self.kernel_high, self.support_high]
    }

    pub fn support(&self) -> Interval {
        Interval::closed(self.support_low, self.support_high).expect("ordered trapezoid")
    }

    pub fn kernel(&self) -> Interval {
        Interval::closed(self.kernel_low, self.kernel_high).expect("ordered trapezoid")
    }

    pub fn is_proportion(&self) -> bool {
        self.support_low >= 0.0 && self.support_high <= 1.0
    }

    pub fn membership(&self, x: f64) -> f64 {
        let [a, b, c, d] = self.points();
        if x >= b && x <= c {
            1.0
        } else if x <= a || x >= d {
            0.0
        } else if x < b {
            (x - a) / (b - a)
        } else {
            (d - x) / (d - c)
        }
    }

    /// The closed alpha-cut; `alpha = 0` yields the support.
    pub fn cut(&self, alpha: f64) -> Interval {
        let [a, b, c, d] = self.points();
        let lower = a + alpha * (b - a);
        let upper = d - alpha * (d - c);
        Interval::closed(lower, upper.max(lower)).expect("ordered trapezoid")
    }
}

impl std::fmt::Display for TrapezoidalQuantifier {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c, d] = self.points();
        write!(f, "({}, {}, {}, {})", fmt_num(a), fmt_num(b), fmt_num(c), fmt_num(d))
    }
}

/// Evenly spaced alpha levels `0, 1/(n-1), ..., 1`. Level 0 stands for the
/// limit cut as alpha goes to 0 from above, i.e. the support.
pub fn alpha_grid(resolution: usize) -> Result<Vec<f64>, FuzzyError> {
    if resolution < 2 {
        return Err(FuzzyError::InvalidResolution(resolution));
    }
    let n = (resolution - 1) as f64;
    Ok((0..resolution).map(|k| k as f64 / n).collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaLevel {
    pub alpha: f64,
    pub cut: Interval,
}

/// A fuzzy number as a nested family of alpha-cuts, ordered by increasing alpha.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaCutNumber {
    levels: Vec<AlphaLevel>,
}

impl AlphaCutNumber {
    pub fn from_trapezoid(t: &TrapezoidalQuantifier, resolution: usize) -> Result<Self, FuzzyError> {
        let levels = alpha_grid(resolution)?.into_iter().map(|alpha| AlphaLevel { alpha, cut: t.cut(alpha) }).collect();
        Ok(AlphaCutNumber { levels })
    }

    /// Every cut equal to `iv`, openness included.
    pub fn from_interval(iv: Interval, resolution: usize) -> Result<Self, FuzzyError> {
        let levels = alpha_grid(resolution)?.into_iter().map(|alpha| AlphaLevel { alpha, cut: iv }).collect();
        Ok(AlphaCutNumber { levels })
    }

    pub fn crisp(value: f64, resolution: usize) -> Result<Self, FuzzyError> {
        let iv = Interval::point(value).map_err(|_| FuzzyError::InvalidTrapezoid([value; 4]))?;
        Self::from_interval(iv, resolution)
    }

    pub fn levels(&self) -> &[AlphaLevel] {
        &self.levels
    }

    pub fn resolution(&self) -> usize {
        self.levels.len()
    }

    /// Cut at the lowest level (the support).
    pub fn support(&self) -> Interval {
        self.levels.first().expect("at least two levels").cut
    }

    /// Cut at alpha = 1.
    pub fn kernel(&self) -> Interval {
        self.levels.last().expect("at least two levels").cut
    }

    pub fn same_grid(&self, other: &AlphaCutNumber) -> bool {
        self.levels.len() == other.levels.len()
            && self.levels.iter().zip(&other.levels).all(|(a, b)| a.alpha == b.alpha)
    }

    /// Level-wise combination of two numbers on the same grid.
    pub fn zip_with(
        &self,
        other: &AlphaCutNumber,
        op: impl Fn(&Interval, &Interval) -> Interval,
    ) -> Result<AlphaCutNumber, FuzzyError> {
        if !self.same_grid(other) {
            return Err(FuzzyError::MismatchedAlphaGrid);
        }
        let levels = self
            .levels
            .iter()
            .zip(&other.levels)
            .map(|(a, b)| AlphaLevel { alpha: a.alpha, cut: op(&a.cut, &b.cut) })
            .collect();
        Ok(AlphaCutNumber { levels })
    }

    pub fn map(&self, op: impl Fn(&Interval) -> Interval) -> AlphaCutNumber {
        AlphaCutNumber { levels: self.levels.iter().map(|l| AlphaLevel { alpha: l.alpha, cut: op(&l.cut) }).collect() }
    }

    /// Fuzzy sum, unclamped.
    pub fn add(&self, other: &AlphaCutNumber) -> Result<AlphaCutNumber, FuzzyError> {
        self.zip_with(other, |a, b| a.add(b, false))
    }

    /// Fuzzy difference, unclamped: results may leave `[0, 1]`.
    pub fn sub(&self, other: &AlphaCutNumber) -> Result<AlphaCutNumber, FuzzyError> {
        self.zip_with(other, |a, b| a.sub(b, false))
    }

    pub fn mul(&self, other: &AlphaCutNumber) -> Result<AlphaCutNumber, FuzzyError> {
        self.zip_with(other, |a, b| a.mul(b))
    }

    /// Pointwise `max(endpoint, floor)` on every cut.
    pub fn clamp_floor(&self, floor: f64) -> Result<AlphaCutNumber, FuzzyError> {
        if !(0.0..=1.0).contains(&floor) {
            return Err(FuzzyError::InvalidFloor(floor));
        }
        Ok(self.map(|cut| cut.clamp_floor(floor)))
    }

    /// Higher levels sit inside lower ones (closed containment, 1e-9 slack).
    pub fn is_nested(&self) -> bool {
        self.levels.windows(2).all(|w| w[1].cut.closure().entails(&w[0].cut.closure()))
    }

    /// Is every cut a single shared interval (a crisp interval quantifier)?
    pub fn is_interval(&self) -> bool {
        let s = self.support();
        self.levels.iter().all(|l| l.cut.approx_eq(&s, 1e-12))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundMode {
    Exact,
    /// The conclusion states only "Q >= core".
    AtLeast,
}

/// A fuzzy conclusion together with whether it is exact or a lower bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundedQuantifier {
    pub core: AlphaCutNumber,
    pub mode: BoundMode,
}

impl BoundedQuantifier {
    pub fn exact(core: AlphaCutNumber) -> Self {
        BoundedQuantifier { core, mode: BoundMode::Exact }
    }

    pub fn at_least(core: AlphaCutNumber) -> Self {
        BoundedQuantifier { core, mode: BoundMode::AtLeast }
    }

    /// The cut actually denoted at a level: widened to `[lower, 1]` in AtLeast mode.
    pub fn effective_cut(&self, level: usize) -> Interval {
        let cut = self.core.levels()[level].cut;
        match self.mode {
            BoundMode::Exact => cut,
            BoundMode::AtLeast => cut.at_least(),
        }
    }

    /// `(support, kernel)` of the denoted quantifier.
    pub fn defuzz_bounds(&self) -> (Interval, Interval) {
        let last = self.core.resolution() - 1;
        (self.effective_cut(0), self.effective_cut(last))
    }
}
