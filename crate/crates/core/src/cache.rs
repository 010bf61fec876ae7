//! Coefficient and constants cache files: exact textual records that
//! round-trip bit-exactly.

use crate::fourier_lab::{Calibration, FourierSeries, GeneratorSet};
use crate::numfield::{DualIndex, QuadRat, Rat};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::str::FromStr;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CoefficientRecord {
    pub index: [i64; 2],
    /// coefficient a + b√5 as exact rationals \["p/q", "r/s"\]
    pub coeff: [String; 2],
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct SeriesFile {
    pub form: String,
    pub weight: [i64; 2],
    pub trace_bound: u32,
    /// Eisenstein normalisation constant C
    pub c: String,
    /// sign convention: χ₅ coefficient at index (0, 1)
    pub chi5_sign: String,
    pub constant_term: [String; 2],
    pub records: Vec<CoefficientRecord>,
}

fn rat_to_string(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn rat_from_string(s: &str) -> Result<Rat> {
    Rat::from_str(s).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

impl SeriesFile {
    pub fn from_series(name: &str, f: &FourierSeries, c: &Rat) -> Self {
        SeriesFile {
            form: name.to_string(),
            weight: [f.weight.0, f.weight.1],
            trace_bound: f.bound,
            c: rat_to_string(c),
            chi5_sign: "+1 at (0,1)".to_string(),
            constant_term: [rat_to_string(&f.constant.a), rat_to_string(&f.constant.b)],
            records: f
                .coeffs
                .iter()
                .map(|(nu, v)| CoefficientRecord {
                    index: [nu.a, nu.b],
                    coeff: [rat_to_string(&v.a), rat_to_string(&v.b)],
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<FourierSeries> {
        let mut f = FourierSeries::zero(self.trace_bound, (self.weight[0], self.weight[1]));
        f.constant = QuadRat::new(rat_from_string(&self.constant_term[0])?, rat_from_string(&self.constant_term[1])?);
        for r in &self.records {
            let nu = DualIndex::new(r.index[0], r.index[1]);
            f.set(nu, QuadRat::new(rat_from_string(&r.coeff[0])?, rat_from_string(&r.coeff[1])?));
        }
        Ok(f)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("series serialisation");
        std::fs::write(path, text).map_err(|e| Error::Config(format!("write {path:?}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("read {path:?}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("parse {path:?}: {e}")))
    }
}

/// Dump the four generator series into `dir` (one file per form).
pub fn dump_generators(gens: &GeneratorSet, dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Config(format!("mkdir {dir:?}: {e}")))?;
    let mut out = Vec::new();
    for (name, series) in [
        ("phi2", &gens.phi2),
        ("chi5", &gens.chi5),
        ("chi6", &gens.chi6),
        ("chi15", &gens.chi15),
    ] {
        let path = dir.join(format!("{name}.json"));
        SeriesFile::from_series(name, series, &gens.c).save(&path)?;
        out.push(path);
    }
    Ok(out)
}

fn quad_to_pair(q: &QuadRat) -> [String; 2] {
    [rat_to_string(&q.a), rat_to_string(&q.b)]
}

fn quad_from_pair(p: &[String; 2]) -> Result<QuadRat> {
    Ok(QuadRat::new(rat_from_string(&p[0])?, rat_from_string(&p[1])?))
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct ConstantsFile {
    pub trace_bound: u32,
    pub c: String,
    pub l1: [String; 2],
    pub l2: [String; 2],
    pub l3: [String; 2],
    pub klein_lambda: String,
    pub chi15_scale: String,
}

impl ConstantsFile {
    pub fn from_calibration(bound: u32, cal: &Calibration) -> Self {
        ConstantsFile {
            trace_bound: bound,
            c: rat_to_string(&cal.c),
            l1: quad_to_pair(&cal.l1),
            l2: quad_to_pair(&cal.l2),
            l3: quad_to_pair(&cal.l3),
            klein_lambda: rat_to_string(&cal.klein_lambda),
            chi15_scale: rat_to_string(&cal.chi15_scale),
        }
    }

    pub fn to_calibration(&self) -> Result<Calibration> {
        Ok(Calibration {
            c: rat_from_string(&self.c)?,
            l1: quad_from_pair(&self.l1)?,
            l2: quad_from_pair(&self.l2)?,
            l3: quad_from_pair(&self.l3)?,
            klein_lambda: rat_from_string(&self.klein_lambda)?,
            chi15_scale: rat_from_string(&self.chi15_scale)?,
        })
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = serde_json::to_string_pretty(self).expect("constants serialisation");
        std::fs::write(path, text).map_err(|e| Error::Config(format!("write {path:?}: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Config(format!("read {path:?}: {e}")))?;
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("parse {path:?}: {e}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fourier_lab::{build_generators, default_c};

    #[test]
    fn series_file_roundtrip() {
        let gens = build_generators(5, &default_c()).unwrap();
        for (name, f) in [("phi2", &gens.phi2), ("chi5", &gens.chi5)] {
            let file = SeriesFile::from_series(name, f, &gens.c);
            let text = serde_json::to_string(&file).unwrap();
            let back: SeriesFile = serde_json::from_str(&text).unwrap();
            assert_eq!(back, file);
            let series = back.to_series().unwrap();
            assert!(series.agrees_with(f));
            assert_eq!(series.weight, f.weight);
        }
    }

    #[test]
    fn constants_file_roundtrip() {
        let cal = crate::fourier_lab::Calibration {
            c: crate::numfield::rat_int(120),
            l1: QuadRat::from_parts(0, 1, 14, 5),
            l2: QuadRat::from_parts(0, 1, -16, 5),
            l3: QuadRat::from_parts(0, 1, 22, 5),
            klein_lambda: crate::numfield::rat(1, 16),
            chi15_scale: crate::numfield::rat(11, 7),
        };
        let file = ConstantsFile::from_calibration(8, &cal);
        let text = serde_json::to_string(&file).unwrap();
        let back: ConstantsFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back, file);
        let cal2 = back.to_calibration().unwrap();
        assert_eq!(cal2.l1, cal.l1);
        assert_eq!(cal2.klein_lambda, cal.klein_lambda);
    }
}
