//! Curve arguments: `p,q` slopes on the torus, `pants:i` and `dual:i` for
//! the curves of the preset pants system, or a path to a curve JSON file.

use std::path::PathBuf;
use std::str::FromStr;

use dehn_core::surface_model::{torus_curve, CurveJson};
use dehn_core::{build_preset, EmbeddedCurve, Error, Result};

#[derive(Clone, Debug)]
pub enum CurveArg {
    Slope(i64, i64),
    Pants(usize),
    Dual(usize),
    File(PathBuf),
}

impl FromStr for CurveArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<CurveArg, String> {
        let index = |t: &str| t.parse::<usize>().map_err(|e| format!("bad index `{t}`: {e}"));
        if let Some(i) = s.strip_prefix("pants:") {
            return Ok(CurveArg::Pants(index(i)?));
        }
        if let Some(i) = s.strip_prefix("dual:") {
            return Ok(CurveArg::Dual(index(i)?));
        }
        if let Some((p, q)) = s.split_once(',') {
            let p = p.trim().parse().map_err(|_| format!("bad slope `{s}`"))?;
            let q = q.trim().parse().map_err(|_| format!("bad slope `{s}`"))?;
            return Ok(CurveArg::Slope(p, q));
        }
        Ok(CurveArg::File(PathBuf::from(s)))
    }
}

impl CurveArg {
    /// The oriented curve on the named preset.
    pub fn resolve(&self, surface: &str) -> Result<EmbeddedCurve> {
        let (s, sys) = build_preset(surface)?;
        let pick = |cs: &[EmbeddedCurve], i: usize, what: &str| {
            cs.get(i)
                .map(|c| c.oriented())
                .ok_or_else(|| Error::Validation(format!("no {what} curve {i}")))
        };
        match self {
            CurveArg::Slope(p, q) => torus_curve(&s, *p, *q),
            CurveArg::Pants(i) => pick(sys.interior_curves(), *i, "pants"),
            CurveArg::Dual(i) => pick(&sys.dual_curves, *i, "dual"),
            CurveArg::File(path) => {
                let bytes = std::fs::read(path)
                    .map_err(|e| Error::Validation(format!("{}: {e}", path.display())))?;
                let cj: CurveJson = serde_json::from_slice(&bytes)?;
                let (cs, c) = cj.to_curve()?;
                if cs.id() != s.id() {
                    return Err(Error::SurfaceMismatch);
                }
                Ok(c)
            }
        }
    }
}
