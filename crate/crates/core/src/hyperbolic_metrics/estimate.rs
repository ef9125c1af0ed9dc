//! Upper bound for the twist count of a factorization, composed from the
//! length and intersection estimates and kept in iterated-log form.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tops above this are folded into one more level.
const FOLD: f64 = 1e300;
/// `ln(f64::MAX)` rounded down; tops below this unfold when possible.
const UNFOLD: f64 = 709.0;

/// The non-negative number `exp^height(top)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Tower {
    pub height: u32,
    pub top: f64,
}

impl Tower {
    pub fn new(x: f64) -> Tower {
        Tower { height: 0, top: x.max(0.0) }.normalized()
    }

    fn normalized(mut self) -> Tower {
        while self.top > FOLD {
            self.top = self.top.ln();
            self.height += 1;
        }
        while self.height > 0 && self.top < UNFOLD {
            self.top = self.top.exp();
            self.height -= 1;
        }
        self
    }

    /// `ln(self)` for values at least one.
    pub fn ln(self) -> Tower {
        if self.height > 0 {
            Tower { height: self.height - 1, top: self.top }.normalized()
        } else {
            Tower::new(self.top.max(1.0).ln())
        }
    }

    pub fn exp(self) -> Tower {
        Tower { height: self.height + 1, top: self.top }.normalized()
    }

    /// An upper bound for the sum.
    pub fn add(self, o: Tower) -> Tower {
        if self.height == 0 && o.height == 0 {
            return Tower::new(self.top + o.top);
        }
        // a + b ≤ 2 max(a, b)
        let m = if self >= o { self } else { o };
        m.mul(Tower::new(2.0))
    }

    /// An upper bound for the product (exact below the fold).
    pub fn mul(self, o: Tower) -> Tower {
        if self.height == 0 && o.height == 0 && (self.top * o.top) <= FOLD {
            return Tower::new(self.top * o.top);
        }
        if self.top == 0.0 || o.top == 0.0 {
            return Tower::new(0.0);
        }
        self.max1().ln().add(o.max1().ln()).exp()
    }

    fn max1(self) -> Tower {
        if self.height == 0 && self.top < 1.0 {
            Tower::new(1.0)
        } else {
            self
        }
    }

    /// The value as `f64`, infinite beyond the float range.
    pub fn to_f64(self) -> f64 {
        if self.height == 0 {
            self.top
        } else {
            f64::INFINITY
        }
    }
}

impl PartialOrd for Tower {
    fn partial_cmp(&self, o: &Tower) -> Option<Ordering> {
        match self.height.cmp(&o.height) {
            Ordering::Equal => self.top.partial_cmp(&o.top),
            c => Some(c),
        }
    }
}

impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.height == 0 {
            write!(f, "{:.6e}", self.top)
        } else {
            write!(f, "exp^{}({:.6})", self.height, self.top)
        }
    }
}

/// One stage of the bound: the state after `stage` pants curves.
#[derive(Clone, Debug, Serialize)]
pub struct Stage {
    pub stage: usize,
    /// Bound for the length of every remaining curve.
    pub length: Tower,
    /// Bound for the crossings with the next pants curve.
    pub intersection: Tower,
    /// Bound for the twists spent on it.
    pub twists: Tower,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConstantEstimate {
    pub genus: usize,
    pub radius: f64,
    /// Natural log of the bound for the number of twists and curve lengths.
    pub log_value: Tower,
    pub stages: Vec<Stage>,
}

/// Log of a bound `C(g, r)` for the positive twist count and the curve
/// lengths of a factorization on a closed surface of genus `g` and
/// injectivity radius `r`.
///
/// Pants curves have length at most `26(g−1)` and duals at most
/// `182(g−1) − log(r/4)`. At every pants curve the crossings are bounded
/// by `4 l(a) L / (π r²)`, the twists by crossings plus ten, the reducing
/// curves by `(2N − 1) l(a) + L`, and every twist stretches the remaining
/// curves by at most `1 + 4 Λ²/(π r²)`. Repeating this over the `3g − 3`
/// curves gives a tower of that height.
pub fn estimate_constant(g: usize, r: f64) -> Result<ConstantEstimate> {
    if g < 2 {
        return Err(Error::Precondition("genus must be at least two".into()));
    }
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::Precondition("radius must be positive".into()));
    }
    let gm = (g - 1) as f64;
    let thurston = Tower::new(4.0 / (std::f64::consts::PI * r * r));
    let pants = Tower::new(26.0 * gm);
    let dual = Tower::new((182.0 * gm - (r / 4.0).ln()).max(26.0 * gm));
    let mut length = dual;
    let mut total = Tower::new(0.0);
    let mut stages = vec![];
    for stage in 0..3 * g - 3 {
        let intersection = thurston.mul(pants).mul(length);
        let twists = intersection.add(Tower::new(10.0));
        // Λ = (2N − 1) l(a) + L ≤ 2 N l(a) + L
        let lambda = Tower::new(2.0).mul(twists).mul(pants).add(length);
        let stretch = thurston.mul(lambda).mul(lambda).add(Tower::new(1.0));
        // L' = L · stretch^N, taken through logs
        let log_len = length.ln().add(twists.mul(stretch.ln()));
        stages.push(Stage {
            stage,
            length,
            intersection,
            twists,
        });
        total = total.add(twists);
        length = log_len.exp();
    }
    let log_value = if total >= length { total } else { length }.ln();
    Ok(ConstantEstimate {
        genus: g,
        radius: r,
        log_value,
        stages,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tower_round_trips() {
        let x = Tower::new(1e200);
        assert_eq!(x.height, 0);
        let y = x.mul(x);
        assert_eq!(y.height, 1);
        assert!((y.top - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert!(y > x);
        assert!((y.ln().to_f64() - 400.0 * 10f64.ln()).abs() < 1e-9);
        assert_eq!(Tower::new(3.0).add(Tower::new(4.0)).to_f64(), 7.0);
    }

    #[test]
    fn towers_are_ordered() {
        let a = Tower::new(700.0).exp();
        let b = a.exp();
        assert!(b > a && a > Tower::new(1e300));
        assert!(b.ln() == a);
    }

    #[test]
    fn genus_two_exceeds_tower_of_twos() {
        let e = estimate_constant(2, 2f64.ln()).unwrap();
        assert_eq!(e.stages.len(), 3);
        assert!(e.log_value >= Tower::new(16f64.ln()));
    }

    #[test]
    fn monotone_on_grid() {
        let rs = [0.05, 0.2, 0.5, 1.0, 3.0];
        for g in 2..7 {
            for w in rs.windows(2) {
                let a = estimate_constant(g, w[0]).unwrap().log_value;
                let b = estimate_constant(g, w[1]).unwrap().log_value;
                assert!(a >= b, "g = {g}: {a} < {b}");
            }
            for &r in &rs {
                let a = estimate_constant(g, r).unwrap().log_value;
                let b = estimate_constant(g + 1, r).unwrap().log_value;
                assert!(b >= a, "r = {r}: {b} < {a}");
            }
        }
    }

    #[test]
    fn rejects_bad_input() {
        assert!(estimate_constant(2, 0.0).is_err());
        assert!(estimate_constant(2, -1.0).is_err());
        assert!(estimate_constant(1, 1.0).is_err());
    }
}
