//! Textual presentation files.
//!
//! A presentation file is TOML with five sections:
//!
//! ```toml
//! [field]
//! kind = "Q"          # or "Fp" with p = <prime>
//!
//! [caps]
//! degree = 4
//! steps = 100000
//!
//! [algebra]
//! kind = "constants"  # or group | nilcoxeter | zero_hecke | generic_hecke | a1n
//! dim = 1
//! u = [[0, 0, 0, 1, 1]]   # sparse [j, k, l, num, den]: coeff of a_l in a_j a_k
//! r = [[0, 0, 0, 1, 1]]   # sparse [j, k, l, num, den]: coeff of a_k (x) a_l
//!
//! [module]
//! dim = 2
//! s = []              # sparse [j, k, h, num, den]: coeff of x_h in a_j(x_k)
//!
//! [deformation]
//! q = []              # sparse [j, k, l, num, den]
//! v = [[1, 0, 0, 1, 1]]   # stored for j > k only; skew-completed
//! w = []              # stored for j > k only; skew-completed
//! ```
//!
//! Constructor kinds take `order` (group), or `coxeter` + `d` (+ `p` for
//! generic_hecke; `d` alone for a1n) instead of explicit tables.  All
//! scalars are exact integer pairs `num/den`.

use serde::{Deserialize, Serialize};

use crate::action::ModuleAction;
use crate::coalgebra::{
    build_nilcoxeter, generic_hecke, zero_hecke, AlgebraWithCoproduct, CoxeterData,
};
use crate::deformation::{DeformationData, Instance};
use crate::scalar::{Field, Scalar};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid presentation: {0}")]
    Invalid(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub field: FieldSpec,
    #[serde(default)]
    pub caps: Caps,
    pub algebra: AlgebraSpec,
    pub module: ModuleSpec,
    #[serde(default)]
    pub deformation: DeformationSpec,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    pub degree: usize,
    pub steps: usize,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            degree: 4,
            steps: 100_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlgebraSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub u: Vec<[i64; 5]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub r: Vec<[i64; 5]>,
    /// Cyclic group order, for `kind = "group"`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Coxeter matrix, for the Coxeter-type constructors.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coxeter: Option<Vec<Vec<usize>>>,
    /// Nilpotence orders of the generators.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<Vec<usize>>,
    /// Generic Hecke parameters: per generator, the coefficients of
    /// `1, T_i, T_i^2, ...` in `T_i^{d_i}`, each an exact pair.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<Vec<Vec<[i64; 2]>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub s: Vec<[i64; 5]>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct DeformationSpec {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub q: Vec<[i64; 5]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub v: Vec<[i64; 5]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub w: Vec<[i64; 5]>,
}

pub fn parse_str(text: &str) -> Result<PresentationFile, IoError> {
    toml::from_str(text).map_err(|e| IoError::Parse(e.to_string()))
}

pub fn to_toml_string(file: &PresentationFile) -> String {
    toml::to_string(file).expect("presentation serializes")
}

impl FieldSpec {
    pub fn build(&self) -> Result<Field, IoError> {
        match self.kind.as_str() {
            "Q" => Ok(Field::Q),
            "Fp" => {
                let p = self
                    .p
                    .ok_or_else(|| IoError::Invalid("Fp requires p".into()))?;
                Field::fp(p).map_err(|e| IoError::Invalid(e.to_string()))
            }
            other => Err(IoError::Invalid(format!("unknown field kind {other:?}"))),
        }
    }
}

fn scalar(f: Field, num: i64, den: i64) -> Result<Scalar, IoError> {
    f.from_ratio(num, den)
        .map_err(|e| IoError::Invalid(e.to_string()))
}

/// Expand a sparse triple list into a dense rank-3 tensor.
fn dense3(
    f: Field,
    entries: &[[i64; 5]],
    d0: usize,
    d1: usize,
    d2: usize,
) -> Result<Vec<Scalar>, IoError> {
    let mut out = vec![f.zero(); d0 * d1 * d2];
    for &[j, k, l, num, den] in entries {
        let (j, k, l) = (j as usize, k as usize, l as usize);
        if j >= d0 || k >= d1 || l >= d2 {
            return Err(IoError::Invalid(format!(
                "index ({j}, {k}, {l}) out of range ({d0}, {d1}, {d2})"
            )));
        }
        out[(j * d1 + k) * d2 + l] = scalar(f, num, den)?;
    }
    Ok(out)
}

fn coxeter_data(spec: &AlgebraSpec) -> Result<CoxeterData, IoError> {
    let d = spec
        .d
        .clone()
        .ok_or_else(|| IoError::Invalid("constructor requires d".into()))?;
    match &spec.coxeter {
        Some(m) => CoxeterData::new(m.clone(), d).map_err(|e| IoError::Invalid(e.to_string())),
        None => Ok(CoxeterData::a1n(d)),
    }
}

/// Group algebra of the cyclic group of the given order, with counit and
/// antipode attached.
pub fn cyclic_group_algebra(f: Field, n: usize) -> Result<AlgebraWithCoproduct, IoError> {
    if n == 0 {
        return Err(IoError::Invalid("group order must be positive".into()));
    }
    let mut u = vec![f.zero(); n * n * n];
    let mut r = vec![f.zero(); n * n * n];
    for j in 0..n {
        for k in 0..n {
            u[(j * n + k) * n + (j + k) % n] = f.one();
        }
        r[(j * n + j) * n + j] = f.one();
    }
    let mut alg =
        AlgebraWithCoproduct::new(f, n, u, r).map_err(|e| IoError::Invalid(e.to_string()))?;
    let eps = alg
        .find_counit()
        .ok_or_else(|| IoError::Invalid("group algebra has no counit".into()))?;
    alg.antipode = alg.find_antipode(&eps);
    alg.counit = Some(eps);
    Ok(alg)
}

impl AlgebraSpec {
    pub fn build(&self, f: Field, caps: &Caps) -> Result<AlgebraWithCoproduct, IoError> {
        let built = |res: Result<crate::coalgebra::BuiltAlgebra, _>| {
            res.map(|b| b.algebra)
                .map_err(|e: crate::coalgebra::CoalgebraError| IoError::Invalid(e.to_string()))
        };
        match self.kind.as_str() {
            "constants" => {
                let dim = self
                    .dim
                    .ok_or_else(|| IoError::Invalid("constants requires dim".into()))?;
                let u = dense3(f, &self.u, dim, dim, dim)?;
                let r = dense3(f, &self.r, dim, dim, dim)?;
                let mut alg = AlgebraWithCoproduct::new(f, dim, u, r)
                    .map_err(|e| IoError::Invalid(e.to_string()))?;
                if let Some(eps) = alg.find_counit() {
                    alg.antipode = alg.find_antipode(&eps);
                    alg.counit = Some(eps);
                }
                Ok(alg)
            }
            "group" => {
                let order = self
                    .order
                    .ok_or_else(|| IoError::Invalid("group requires order".into()))?;
                cyclic_group_algebra(f, order)
            }
            "nilcoxeter" | "a1n" => {
                let cox = coxeter_data(self)?;
                built(build_nilcoxeter(f, &cox, caps.degree.max(8), caps.steps))
            }
            "zero_hecke" => {
                let cox = coxeter_data(self)?;
                built(zero_hecke(f, &cox, caps.degree.max(8), caps.steps))
            }
            "generic_hecke" => {
                let cox = coxeter_data(self)?;
                let raw = self
                    .p
                    .as_ref()
                    .ok_or_else(|| IoError::Invalid("generic_hecke requires p".into()))?;
                let mut p = Vec::new();
                for pi in raw {
                    let mut row = Vec::new();
                    for &[num, den] in pi {
                        row.push(scalar(f, num, den)?);
                    }
                    p.push(row);
                }
                built(generic_hecke(f, &cox, &p, caps.degree.max(8), caps.steps))
            }
            other => Err(IoError::Invalid(format!("unknown algebra kind {other:?}"))),
        }
    }
}

/// Build the full instance a presentation file describes.
pub fn build_instance(file: &PresentationFile) -> Result<Instance, IoError> {
    let f = file.field.build()?;
    let alg = file.algebra.build(f, &file.caps)?;
    let da = alg.dim;
    let dv = file.module.dim;
    let s = dense3(f, &file.module.s, da, dv, dv)?;
    let act =
        ModuleAction::new(f, da, dv, s).map_err(|e| IoError::Invalid(e.to_string()))?;
    if !act.check_module_axiom(&alg) {
        return Err(IoError::Invalid(
            "module tables violate the module axiom".into(),
        ));
    }
    let mut def = DeformationData::zero(f, da, dv);
    for &[j, k, l, num, den] in &file.deformation.q {
        let (j, k, l) = (j as usize, k as usize, l as usize);
        if j == 0 || j >= da || k >= dv || l >= da {
            return Err(IoError::Invalid(format!("q index ({j}, {k}, {l}) invalid")));
        }
        def.set_q(j, k, l, scalar(f, num, den)?);
    }
    for &[j, k, l, num, den] in &file.deformation.v {
        let (j, k, l) = (j as usize, k as usize, l as usize);
        if j <= k || j >= dv || l >= da {
            return Err(IoError::Invalid(format!(
                "v index ({j}, {k}, {l}) invalid (store j > k)"
            )));
        }
        def.set_v(j, k, l, scalar(f, num, den)?);
    }
    for &[j, k, h, num, den] in &file.deformation.w {
        let (j, k, h) = (j as usize, k as usize, h as usize);
        if j <= k || j >= dv || h >= dv {
            return Err(IoError::Invalid(format!(
                "w index ({j}, {k}, {h}) invalid (store j > k)"
            )));
        }
        def.set_w(j, k, h, scalar(f, num, den)?);
    }
    Ok(Instance { alg, act, def })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::Method;

    fn fixture(name: &str) -> String {
        let path = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");
        std::fs::read_to_string(format!("{path}/{name}")).unwrap()
    }

    #[test]
    fn round_trip_is_identity() {
        for name in ["weyl.alg", "usl2.alg", "nc_a2.alg"] {
            let file = parse_str(&fixture(name)).unwrap();
            let text = to_toml_string(&file);
            let reparsed = parse_str(&text).unwrap();
            assert_eq!(file, reparsed, "{name}");
        }
    }

    #[test]
    fn weyl_fixture_has_pbw() {
        let file = parse_str(&fixture("weyl.alg")).unwrap();
        let inst = build_instance(&file).unwrap();
        let rep = inst
            .pbw_check(&Method::ALL, file.caps.degree, file.caps.steps)
            .unwrap();
        assert!(rep.pbw);
    }

    #[test]
    fn enveloping_fixture_has_pbw() {
        let file = parse_str(&fixture("usl2.alg")).unwrap();
        let inst = build_instance(&file).unwrap();
        let rep = inst
            .pbw_check(&Method::ALL, file.caps.degree, file.caps.steps)
            .unwrap();
        assert!(rep.pbw);
    }

    #[test]
    fn coxeter_fixture_builds_six_dims() {
        let file = parse_str(&fixture("nc_a2.alg")).unwrap();
        let inst = build_instance(&file).unwrap();
        assert_eq!(inst.alg.dim, 6);
    }

    #[test]
    fn bad_index_is_rejected() {
        let file = parse_str(&fixture("weyl.alg")).unwrap();
        let mut bad = file.clone();
        bad.deformation.v = vec![[1, 0, 7, 1, 1]];
        assert!(build_instance(&bad).is_err());
        let mut bad = file;
        bad.module.s = vec![[0, 5, 0, 1, 1]];
        assert!(build_instance(&bad).is_err());
    }
}
