//! Finite-dimensional algebras by structure constants, with optional Hopf data.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::WreathError;
use crate::exactalg::{fmt_rational, parse_rational, qi, Q};
use crate::recollement::FiniteGroup;

/// Elements are coordinate vectors in the basis.
pub type Elem = Vec<Q>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfData {
    /// `delta[a][b * d + c]`: coefficient of `b ⊗ c` in `Δ(a)`.
    pub delta: Vec<Vec<Q>>,
    pub counit: Vec<Q>,
    /// `antipode[a]`: coordinates of `S(a)`.
    pub antipode: Vec<Vec<Q>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAlgebra {
    pub basis: Vec<String>,
    /// `mul[a][b]`: coordinates of `a b`.
    pub mul: Vec<Vec<Elem>>,
    pub unit: Elem,
    pub hopf: Option<HopfData>,
}

impl FinAlgebra {
    /// Builds and validates; Hopf axioms are checked when Hopf data is given.
    pub fn new(basis: Vec<String>, mul: Vec<Vec<Elem>>, unit: Elem, hopf: Option<HopfData>) -> Result<Self, WreathError> {
        let a = FinAlgebra { basis, mul, unit, hopf };
        a.validate()?;
        Ok(a)
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_vec(&self, i: usize) -> Elem {
        let mut v = vec![Q::zero(); self.dim()];
        v[i] = Q::one();
        v
    }

    pub fn zero(&self) -> Elem {
        vec![Q::zero(); self.dim()]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == name)
    }

    pub fn mul(&self, x: &[Q], y: &[Q]) -> Elem {
        let mut out = self.zero();
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xi * yj;
                for (k, m) in self.mul[i][j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] += &c * m;
                    }
                }
            }
        }
        out
    }

    pub fn commutator(&self, x: &[Q], y: &[Q]) -> Elem {
        let xy = self.mul(x, y);
        let yx = self.mul(y, x);
        xy.iter().zip(&yx).map(|(a, b)| a - b).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let d = self.dim();
        (0..d).all(|i| (0..d).all(|j| self.mul[i][j] == self.mul[j][i]))
    }

    pub fn antipode(&self, x: &[Q]) -> Result<Elem, WreathError> {
        let h = self.hopf.as_ref().ok_or(WreathError::NotHopf)?;
        let mut out = self.zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (k, s) in h.antipode[i].iter().enumerate() {
                out[k] += c * s;
            }
        }
        Ok(out)
    }

    /// `Δ(x)` as `d × d` coefficients.
    pub fn coproduct(&self, x: &[Q]) -> Result<Vec<Vec<Q>>, WreathError> {
        let h = self.hopf.as_ref().ok_or(WreathError::NotHopf)?;
        let d = self.dim();
        let mut out = vec![vec![Q::zero(); d]; d];
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for b in 0..d {
                for e in 0..d {
                    out[b][e] += c * &h.delta[i][b * d + e];
                }
            }
        }
        Ok(out)
    }

    pub fn counit(&self, x: &[Q]) -> Result<Q, WreathError> {
        let h = self.hopf.as_ref().ok_or(WreathError::NotHopf)?;
        Ok(x.iter().zip(&h.counit).map(|(a, b)| a * b).sum())
    }

    fn validate(&self) -> Result<(), WreathError> {
        let d = self.dim();
        let bad = |m: String| Err(WreathError::BadAlgebra(m));
        if d == 0 {
            return bad("zero-dimensional algebra".into());
        }
        if self.mul.len() != d || self.mul.iter().any(|r| r.len() != d || r.iter().any(|v| v.len() != d)) || self.unit.len() != d {
            return bad("structure constants have the wrong shape".into());
        }
        for i in 0..d {
            let e = self.basis_vec(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return bad(format!("unit law fails at {}", self.basis[i]));
            }
            for j in 0..d {
                let f = self.basis_vec(j);
                for k in 0..d {
                    let g = self.basis_vec(k);
                    if self.mul(&self.mul(&e, &f), &g) != self.mul(&e, &self.mul(&f, &g)) {
                        return bad(format!("not associative at ({}, {}, {})", self.basis[i], self.basis[j], self.basis[k]));
                    }
                }
            }
        }
        let Some(h) = &self.hopf else { return Ok(()) };
        if h.delta.len() != d || h.delta.iter().any(|r| r.len() != d * d) || h.counit.len() != d || h.antipode.len() != d || h.antipode.iter().any(|r| r.len() != d) {
            return bad("Hopf data has the wrong shape".into());
        }
        for i in 0..d {
            let x = self.basis_vec(i);
            let dx = self.coproduct(&x)?;
            // Coassociativity on d^3 coefficients.
            let mut left = vec![Q::zero(); d * d * d];
            let mut right = vec![Q::zero(); d * d * d];
            for b in 0..d {
                for c in 0..d {
                    let coeff = &dx[b][c];
                    if coeff.is_zero() {
                        continue;
                    }
                    let db = self.coproduct(&self.basis_vec(b))?;
                    let dc = self.coproduct(&self.basis_vec(c))?;
                    for p in 0..d {
                        for r in 0..d {
                            left[(p * d + r) * d + c] += coeff * &db[p][r];
                            right[(b * d + p) * d + r] += coeff * &dc[p][r];
                        }
                    }
                }
            }
            if left != right {
                return bad(format!("not coassociative at {}", self.basis[i]));
            }
            // Counit laws and the antipode law.
            let mut lc = self.zero();
            let mut rc = self.zero();
            let mut anti = self.zero();
            for b in 0..d {
                for c in 0..d {
                    let coeff = &dx[b][c];
                    if coeff.is_zero() {
                        continue;
                    }
                    lc[c] += coeff * &h.counit[b];
                    rc[b] += coeff * &h.counit[c];
                    let term = self.mul(&self.basis_vec(b), &self.antipode(&self.basis_vec(c))?);
                    for k in 0..d {
                        anti[k] += coeff * &term[k];
                    }
                }
            }
            if lc != x || rc != x {
                return bad(format!("counit law fails at {}", self.basis[i]));
            }
            let expect: Elem = self.unit.iter().map(|u| u * &h.counit[i]).collect();
            if anti != expect {
                return bad(format!("antipode law fails at {}", self.basis[i]));
            }
            // Δ and ε are multiplicative.
            for j in 0..d {
                let y = self.basis_vec(j);
                let dy = self.coproduct(&y)?;
                let dxy = self.coproduct(&self.mul(&x, &y))?;
                let mut prod = vec![vec![Q::zero(); d]; d];
                for (b, c) in (0..d).flat_map(|b| (0..d).map(move |c| (b, c))) {
                    if dx[b][c].is_zero() {
                        continue;
                    }
                    for (p, r) in (0..d).flat_map(|p| (0..d).map(move |r| (p, r))) {
                        if dy[p][r].is_zero() {
                            continue;
                        }
                        let coeff = &dx[b][c] * &dy[p][r];
                        let bp = self.mul(&self.basis_vec(b), &self.basis_vec(p));
                        let cr = self.mul(&self.basis_vec(c), &self.basis_vec(r));
                        for (u, bu) in bp.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                            for (v, cv) in cr.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                                prod[u][v] += &coeff * bu * cv;
                            }
                        }
                    }
                }
                if prod != dxy {
                    return bad(format!("coproduct is not multiplicative at ({}, {})", self.basis[i], self.basis[j]));
                }
                if self.counit(&self.mul(&x, &y))? != &h.counit[i] * &h.counit[j] {
                    return bad(format!("counit is not multiplicative at ({}, {})", self.basis[i], self.basis[j]));
                }
            }
        }
        if self.counit(&self.unit)? != Q::one() {
            return bad("counit of the unit is not 1".into());
        }
        Ok(())
    }

    /// The group algebra `k[G]` with its standard Hopf structure.
    pub fn group_algebra(g: &FiniteGroup) -> Self {
        let d = g.order();
        let bv = |i: usize| {
            let mut v = vec![Q::zero(); d];
            v[i] = Q::one();
            v
        };
        let mul = (0..d).map(|a| (0..d).map(|b| bv(g.mul(a, b))).collect()).collect();
        let delta = (0..d)
            .map(|a| {
                let mut v = vec![Q::zero(); d * d];
                v[a * d + a] = Q::one();
                v
            })
            .collect();
        let hopf = HopfData { delta, counit: vec![Q::one(); d], antipode: (0..d).map(|a| bv(g.inv(a))).collect() };
        FinAlgebra { basis: g.names.clone(), mul, unit: bv(0), hopf: Some(hopf) }
    }

    /// `k[x]/(x^2)`, non-semisimple. In characteristic zero it carries no
    /// Hopf structure with `x` primitive, since `Δ(x^2) = 2 x⊗x`.
    pub fn dual_numbers() -> Self {
        let z = Q::zero;
        let o = Q::one;
        let mul = vec![vec![vec![o(), z()], vec![z(), o()]], vec![vec![z(), o()], vec![z(), z()]]];
        FinAlgebra { basis: vec!["1".into(), "x".into()], mul, unit: vec![o(), z()], hopf: None }
    }

    /// `χ` given by its values on the basis.
    pub fn check_character(&self, chi: &[Q]) -> Result<(), WreathError> {
        let d = self.dim();
        if chi.len() != d {
            return Err(WreathError::NotACharacter(format!("expected {d} values, got {}", chi.len())));
        }
        let ev = |x: &[Q]| -> Q { x.iter().zip(chi).map(|(a, b)| a * b).sum() };
        if ev(&self.unit) != Q::one() {
            return Err(WreathError::NotACharacter("χ(1) != 1".into()));
        }
        for i in 0..d {
            for j in 0..d {
                if ev(&self.mul[i][j]) != &chi[i] * &chi[j] {
                    return Err(WreathError::NotACharacter(format!("χ({} {}) != χ({}) χ({})", self.basis[i], self.basis[j], self.basis[i], self.basis[j])));
                }
            }
        }
        Ok(())
    }

    /// Characters for the Hopf structure: `χψ = (χ ⊗ ψ) ∘ Δ` and `χ ∘ S`.
    pub fn character_product(&self, chi: &[Q], psi: &[Q]) -> Result<Vec<Q>, WreathError> {
        (0..self.dim())
            .map(|a| {
                let da = self.coproduct(&self.basis_vec(a))?;
                let mut s = Q::zero();
                for b in 0..self.dim() {
                    for c in 0..self.dim() {
                        s += &da[b][c] * &chi[b] * &psi[c];
                    }
                }
                Ok(s)
            })
            .collect()
    }

    pub fn character_dual(&self, chi: &[Q]) -> Result<Vec<Q>, WreathError> {
        (0..self.dim())
            .map(|a| Ok(self.antipode(&self.basis_vec(a))?.iter().zip(chi).map(|(x, y)| x * y).sum()))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        let vs = |v: &[Q]| Value::Array(v.iter().map(|x| Value::String(fmt_rational(x))).collect());
        let mut out = json!({
            "dim": self.dim(),
            "basis": self.basis,
            "mul": self.mul.iter().map(|r| r.iter().map(|v| vs(v)).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "unit": vs(&self.unit),
        });
        if let Some(h) = &self.hopf {
            out["hopf"] = json!({
                "delta": h.delta.iter().map(|v| vs(v)).collect::<Vec<_>>(),
                "counit": vs(&h.counit),
                "antipode": h.antipode.iter().map(|v| vs(v)).collect::<Vec<_>>(),
            });
        }
        out
    }

    pub fn from_json(v: &Value) -> Result<Self, WreathError> {
        let bad = |m: &str| WreathError::BadAlgebra(m.to_string());
        let basis: Vec<String> = v["basis"]
            .as_array()
            .ok_or_else(|| bad("missing basis"))?
            .iter()
            .map(|b| b.as_str().map(str::to_string).ok_or_else(|| bad("basis names must be strings")))
            .collect::<Result<_, _>>()?;
        if let Some(d) = v.get("dim") {
            if d.as_u64() != Some(basis.len() as u64) {
                return Err(bad("dim does not match the basis"));
            }
        }
        let mul = v["mul"]
            .as_array()
            .ok_or_else(|| bad("missing mul"))?
            .iter()
            .map(|row| row.as_array().ok_or_else(|| bad("mul rows must be arrays"))?.iter().map(parse_vec).collect())
            .collect::<Result<Vec<Vec<Elem>>, _>>()?;
        let unit = parse_vec(&v["unit"])?;
        let hopf = match v.get("hopf") {
            None | Some(Value::Null) => None,
            Some(h) => {
                let mat = |key: &str| -> Result<Vec<Vec<Q>>, WreathError> {
                    h[key].as_array().ok_or_else(|| bad("Hopf matrices must be arrays"))?.iter().map(parse_vec).collect()
                };
                Some(HopfData { delta: mat("delta")?, counit: parse_vec(&h["counit"])?, antipode: mat("antipode")? })
            }
        };
        FinAlgebra::new(basis, mul, unit, hopf)
    }
}

/// A rational vector from JSON numbers or strings such as `"3/2"`.
pub fn parse_vec(v: &Value) -> Result<Vec<Q>, WreathError> {
    v.as_array()
        .ok_or_else(|| WreathError::BadAlgebra("expected an array of rationals".into()))?
        .iter()
        .map(parse_scalar)
        .collect()
}

pub fn parse_scalar(v: &Value) -> Result<Q, WreathError> {
    match v {
        Value::Number(n) => n.as_i64().map(qi).ok_or_else(|| WreathError::BadAlgebra(format!("non-integer number {n}; write fractions as strings"))),
        Value::String(s) => parse_rational(s).ok_or_else(|| WreathError::BadAlgebra(format!("bad rational {s:?}"))),
        other => Err(WreathError::BadAlgebra(format!("expected a rational, got {other}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primitive_dual_numbers_are_not_hopf() {
        let mut a = FinAlgebra::dual_numbers();
        let (z, o) = (Q::zero, Q::one);
        a.hopf = Some(HopfData {
            delta: vec![vec![o(), z(), z(), z()], vec![z(), o(), o(), z()]],
            counit: vec![o(), z()],
            antipode: vec![vec![o(), z()], vec![z(), -o()]],
        });
        assert!(a.validate().is_err());
    }

    #[test]
    fn standard_algebras_validate() {
        let z2 = FinAlgebra::group_algebra(&FiniteGroup::cyclic(2));
        z2.validate().unwrap();
        FinAlgebra::group_algebra(&FiniteGroup::s3()).validate().unwrap();
        FinAlgebra::dual_numbers().validate().unwrap();
        assert!(z2.is_commutative());
        assert!(!FinAlgebra::group_algebra(&FiniteGroup::s3()).is_commutative());
    }

    #[test]
    fn broken_antipode_is_rejected() {
        let mut a = FinAlgebra::group_algebra(&FiniteGroup::cyclic(3));
        a.hopf.as_mut().unwrap().antipode = (0..3).map(|i| a.basis_vec(i)).collect();
        assert!(matches!(a.validate(), Err(WreathError::BadAlgebra(_))));
    }

    #[test]
    fn json_round_trip() {
        let a = FinAlgebra::dual_numbers();
        assert_eq!(FinAlgebra::from_json(&a.to_json()).unwrap(), a);
    }

    #[test]
    fn characters() {
        let a = FinAlgebra::group_algebra(&FiniteGroup::cyclic(2));
        let sign = vec![qi(1), qi(-1)];
        a.check_character(&sign).unwrap();
        assert!(a.check_character(&[qi(1), qi(2)]).is_err());
        assert_eq!(a.character_product(&sign, &sign).unwrap(), vec![qi(1), qi(1)]);
        assert_eq!(a.character_dual(&sign).unwrap(), sign);
        let b = FinAlgebra::dual_numbers();
        b.check_character(&[qi(1), qi(0)]).unwrap();
        assert!(b.check_character(&[qi(1), qi(1)]).is_err());
    }
}
