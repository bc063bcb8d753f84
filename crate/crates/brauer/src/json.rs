//! JSON encodings of the domain values.
//!
//! Field elements of `F_{p^n}` are length-`n` coordinate arrays (low degree
//! first), polynomials are arrays of such elements, rational functions are
//! `{"num": .., "den": ..}` and matrices are arrays of rows.

use std::collections::BTreeMap;

use brauer_core::building::SearchOutcome;
use brauer_core::{
    Base, CrossedProduct, Fq, LMatrix, LatticeVertex, Matrix, OneCocycle, Poly, RatFn, ResidueClass,
    StructureConstantAlgebra, Tower, TwoCocycle,
};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TowerJson {
    pub p: u32,
    pub n: u32,
    pub f: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnJson {
    pub num: Vec<Vec<u32>>,
    pub den: Vec<Vec<u32>>,
}

pub type MatrixJson = Vec<Vec<RatFnJson>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleJson {
    pub tower: TowerJson,
    pub n_mat: usize,
    pub lifts: BTreeMap<u32, MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoCocycleJson {
    pub tower: TowerJson,
    pub entries: BTreeMap<String, RatFnJson>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueJson {
    pub num: u32,
    pub den: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub tower: TowerJson,
    pub base: String,
    pub dim: usize,
    pub constants: Vec<RatFnJson>,
    pub unit: Vec<RatFnJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub rep: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchJson {
    pub found: bool,
    pub vertex: Option<VertexJson>,
    pub radius: u32,
    pub visited: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossedProductJson {
    pub d: TwoCocycleJson,
    pub p_tilde: BTreeMap<u32, MatrixJson>,
    pub q: BTreeMap<u32, MatrixJson>,
    pub r: BTreeMap<u32, MatrixJson>,
}

fn bad(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

pub fn encode_tower(tw: &Tower) -> TowerJson {
    TowerJson { p: tw.p(), n: tw.n(), f: tw.modulus().to_vec() }
}

pub fn decode_tower(j: &TowerJson) -> Result<Tower, CliError> {
    let tw = Tower::with_modulus(j.p, &j.f)?;
    if tw.n() != j.n {
        return Err(bad(format!("tower degree {} does not match defining polynomial of degree {}", j.n, tw.n())));
    }
    Ok(tw)
}

fn encode_poly(tw: &Tower, p: &Poly) -> Vec<Vec<u32>> {
    p.coeffs().iter().map(|&c| tw.gf().coords(c)).collect()
}

fn decode_poly(tw: &Tower, j: &[Vec<u32>]) -> Result<Poly, CliError> {
    let gf = tw.gf();
    let coeffs = j
        .iter()
        .map(|c| {
            if c.len() != tw.n() as usize || c.iter().any(|&x| x >= tw.p()) {
                return Err(bad(format!("field element {:?} is not a length-{} array over F_{}", c, tw.n(), tw.p())));
            }
            Ok(gf.from_coords(c)?)
        })
        .collect::<Result<Vec<Fq>, CliError>>()?;
    Ok(Poly::from_coeffs(coeffs))
}

pub fn encode_ratfn(tw: &Tower, x: &RatFn) -> RatFnJson {
    RatFnJson { num: encode_poly(tw, x.num()), den: encode_poly(tw, x.den()) }
}

pub fn decode_ratfn(tw: &Tower, j: &RatFnJson) -> Result<RatFn, CliError> {
    let num = decode_poly(tw, &j.num)?;
    let den = decode_poly(tw, &j.den)?;
    tw.l().fraction(num, den).ok_or_else(|| bad("rational function has zero denominator"))
}

pub fn encode_matrix(tw: &Tower, m: &LMatrix) -> MatrixJson {
    m.to_rows().iter().map(|r| r.iter().map(|x| encode_ratfn(tw, x)).collect()).collect()
}

pub fn decode_matrix(tw: &Tower, j: &MatrixJson) -> Result<LMatrix, CliError> {
    let rows = j
        .iter()
        .map(|r| r.iter().map(|x| decode_ratfn(tw, x)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(rows).ok_or_else(|| bad("matrix rows have different lengths"))
}

fn encode_matrices(tw: &Tower, ms: &[LMatrix]) -> BTreeMap<u32, MatrixJson> {
    ms.iter().enumerate().map(|(i, m)| (i as u32, encode_matrix(tw, m))).collect()
}

pub fn encode_cocycle(c: &OneCocycle) -> CocycleJson {
    let tw = c.tower();
    CocycleJson { tower: encode_tower(tw), n_mat: c.size(), lifts: encode_matrices(tw, c.lifts()) }
}

pub fn decode_cocycle(j: &CocycleJson) -> Result<OneCocycle, CliError> {
    let tw = decode_tower(&j.tower)?;
    let n = tw.n();
    if j.lifts.len() != n as usize || j.lifts.keys().any(|&k| k >= n) {
        return Err(bad(format!("lifts must be keyed by the exponents 0..{}", n)));
    }
    let lifts = j.lifts.values().map(|m| decode_matrix(&tw, m)).collect::<Result<Vec<_>, _>>()?;
    if lifts.iter().any(|m| m.rows() != j.n_mat || m.cols() != j.n_mat) {
        return Err(bad(format!("every lift must be {0}x{0}", j.n_mat)));
    }
    Ok(OneCocycle::new(&tw, lifts)?)
}

pub fn encode_two_cocycle(d: &TwoCocycle) -> TwoCocycleJson {
    let tw = d.tower();
    let mut entries = BTreeMap::new();
    for s in tw.galois() {
        for t in tw.galois() {
            entries.insert(format!("{},{}", s.exp, t.exp), encode_ratfn(tw, d.entry(s, t)));
        }
    }
    TwoCocycleJson { tower: encode_tower(tw), entries }
}

pub fn decode_two_cocycle(j: &TwoCocycleJson) -> Result<TwoCocycle, CliError> {
    let tw = decode_tower(&j.tower)?;
    let n = tw.n() as usize;
    if j.entries.len() != n * n {
        return Err(bad(format!("expected {} entries", n * n)));
    }
    let mut entries = Vec::with_capacity(n * n);
    for s in tw.galois() {
        for t in tw.galois() {
            let key = format!("{},{}", s.exp, t.exp);
            let e = j.entries.get(&key).ok_or_else(|| bad(format!("missing entry {}", key)))?;
            entries.push(decode_ratfn(&tw, e)?);
        }
    }
    Ok(TwoCocycle::new(&tw, entries)?)
}

pub fn encode_residue(r: &ResidueClass) -> ResidueJson {
    ResidueJson { num: r.num(), den: r.den() }
}

pub fn decode_residue(j: &ResidueJson) -> Result<ResidueClass, CliError> {
    if j.den == 0 || j.num >= j.den {
        return Err(bad("residue must satisfy 0 <= num < den"));
    }
    let r = ResidueClass::from_fraction(j.num as i64, j.den as i64);
    if r.num() != j.num || r.den() != j.den {
        return Err(bad("residue fraction is not reduced"));
    }
    Ok(r)
}

pub fn encode_algebra(a: &StructureConstantAlgebra) -> AlgebraJson {
    let tw = a.tower();
    AlgebraJson {
        tower: encode_tower(tw),
        base: match a.base() {
            Base::K => "K".into(),
            Base::O => "O".into(),
        },
        dim: a.dim(),
        constants: a.constants().iter().map(|x| encode_ratfn(tw, x)).collect(),
        unit: a.unit().iter().map(|x| encode_ratfn(tw, x)).collect(),
    }
}

pub fn decode_algebra(j: &AlgebraJson) -> Result<StructureConstantAlgebra, CliError> {
    let tw = decode_tower(&j.tower)?;
    let base = match j.base.as_str() {
        "K" => Base::K,
        "O" => Base::O,
        other => return Err(bad(format!("unknown base {:?}", other))),
    };
    let constants = j.constants.iter().map(|x| decode_ratfn(&tw, x)).collect::<Result<Vec<_>, _>>()?;
    let unit = j.unit.iter().map(|x| decode_ratfn(&tw, x)).collect::<Result<Vec<_>, _>>()?;
    Ok(StructureConstantAlgebra::new(&tw, base, j.dim, constants, unit)?)
}

pub fn encode_vertex(tw: &Tower, v: &LatticeVertex) -> VertexJson {
    VertexJson { rep: encode_matrix(tw, v.rep()) }
}

pub fn decode_vertex(tw: &Tower, j: &VertexJson) -> Result<LatticeVertex, CliError> {
    Ok(LatticeVertex::new(tw, &decode_matrix(tw, &j.rep)?)?)
}

pub fn encode_search(tw: &Tower, s: &SearchOutcome) -> SearchJson {
    SearchJson {
        found: s.vertex.is_some(),
        vertex: s.vertex.as_ref().map(|v| encode_vertex(tw, v)),
        radius: s.radius,
        visited: s.visited,
    }
}

pub fn encode_crossed_product(cp: &CrossedProduct) -> CrossedProductJson {
    let tw = cp.d().tower();
    CrossedProductJson {
        d: encode_two_cocycle(cp.d()),
        p_tilde: encode_matrices(tw, cp.p_tilde()),
        q: encode_matrices(tw, cp.q()),
        r: encode_matrices(tw, cp.r()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use brauer_core::Field;

    #[test]
    fn tower_json_shape() {
        let tw = Tower::new(3, 2).unwrap();
        let v = serde_json::to_value(encode_tower(&tw)).unwrap();
        assert_eq!(v, serde_json::json!({"p": 3, "n": 2, "f": [1, 0, 1]}));
    }

    #[test]
    fn ratfn_round_trip() {
        let tw = Tower::new(3, 2).unwrap();
        let l = tw.l();
        let x = l.div(&l.add(&l.t(), &l.constant(tw.gf().generator())), &l.t_pow(3)).unwrap();
        let j = encode_ratfn(&tw, &x);
        assert_eq!(j.num, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(j.den, vec![vec![0, 0], vec![0, 0], vec![0, 0], vec![1, 0]]);
        assert_eq!(decode_ratfn(&tw, &j).unwrap(), x);
    }

    #[test]
    fn cocycle_keys_are_exponents() {
        let tw = Tower::new(3, 2).unwrap();
        let c = OneCocycle::symbol(&tw, &tw.l().t()).unwrap();
        let v = serde_json::to_value(encode_cocycle(&c)).unwrap();
        assert!(v["lifts"]["0"].is_array() && v["lifts"]["1"].is_array());
        let back: CocycleJson = serde_json::from_value(v).unwrap();
        assert_eq!(decode_cocycle(&back).unwrap(), c);
    }

    #[test]
    fn rejects_out_of_range_coordinates() {
        let tw = Tower::new(3, 2).unwrap();
        let j = RatFnJson { num: vec![vec![3, 0]], den: vec![vec![1, 0]] };
        assert!(decode_ratfn(&tw, &j).is_err());
        let z = RatFnJson { num: vec![vec![1, 0]], den: vec![] };
        assert!(decode_ratfn(&tw, &z).is_err());
    }
}
