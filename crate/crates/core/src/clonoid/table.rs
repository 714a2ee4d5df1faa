use serde::{Deserialize, Serialize};

use super::FieldPair;
use crate::error::{Error, Result};
use crate::gf::FieldElem;
use crate::linalg::Matrix;

/// A function `F_q^n -> F_p` as a dense value table.
///
/// Position of `(x_1, ..., x_n)` is `sum enc(x_i) q^{n-i}`, so `x_1` is the
/// most significant digit.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FnTable {
    pair: FieldPair,
    arity: usize,
    values: Vec<FieldElem>,
}

/// Wire form `{"p": .., "q": .., "arity": n, "values": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FnTableJson {
    pub p: u32,
    pub q: u32,
    pub arity: usize,
    pub values: Vec<u16>,
}

impl FnTable {
    pub fn new(pair: &FieldPair, arity: usize, values: Vec<FieldElem>) -> Result<FnTable> {
        let expected = pair.table_len(arity)?;
        if values.len() != expected {
            return Err(Error::InvalidTable(format!(
                "arity {arity} needs {expected} values, got {}",
                values.len()
            )));
        }
        if let Some(bad) = values.iter().find(|v| v.0 as u32 >= pair.p().order()) {
            return Err(Error::InvalidElement {
                value: bad.0 as u64,
                order: pair.p().order(),
            });
        }
        Ok(FnTable {
            pair: pair.clone(),
            arity,
            values,
        })
    }

    pub fn from_ints(pair: &FieldPair, arity: usize, values: &[u64]) -> Result<FnTable> {
        let vs = values
            .iter()
            .map(|&v| pair.p().elem(v))
            .collect::<Result<Vec<_>>>()?;
        FnTable::new(pair, arity, vs)
    }

    pub fn from_fn(
        pair: &FieldPair,
        arity: usize,
        mut f: impl FnMut(&[FieldElem]) -> FieldElem,
    ) -> Result<FnTable> {
        let len = pair.table_len(arity)?;
        let values = (0..len).map(|i| f(&pair.decode(i, arity))).collect();
        FnTable::new(pair, arity, values)
    }

    pub fn constant(pair: &FieldPair, arity: usize, c: FieldElem) -> Result<FnTable> {
        FnTable::new(pair, arity, vec![c; pair.table_len(arity)?])
    }

    pub fn zero(pair: &FieldPair, arity: usize) -> Result<FnTable> {
        FnTable::constant(pair, arity, FieldElem::ZERO)
    }

    pub(crate) fn from_values_unchecked(
        pair: &FieldPair,
        arity: usize,
        values: Vec<FieldElem>,
    ) -> FnTable {
        FnTable {
            pair: pair.clone(),
            arity,
            values,
        }
    }

    pub fn pair(&self) -> &FieldPair {
        &self.pair
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn values(&self) -> &[FieldElem] {
        &self.values
    }

    pub fn into_values(self) -> Vec<FieldElem> {
        self.values
    }

    pub fn at(&self, point: &[FieldElem]) -> FieldElem {
        self.values[self.pair.encode(point)]
    }

    pub fn is_zero_preserving(&self) -> bool {
        self.values[0].is_zero()
    }

    pub fn add(&self, other: &FnTable) -> Result<FnTable> {
        self.check_same_shape(other)?;
        let p = self.pair.p();
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| p.add(a, b))
            .collect();
        Ok(FnTable::from_values_unchecked(
            &self.pair, self.arity, values,
        ))
    }

    pub fn scale(&self, c: FieldElem) -> FnTable {
        let p = self.pair.p();
        let values = self.values.iter().map(|&a| p.mul(a, c)).collect();
        FnTable::from_values_unchecked(&self.pair, self.arity, values)
    }

    pub(crate) fn check_same_shape(&self, other: &FnTable) -> Result<()> {
        self.pair.same_as(&other.pair)?;
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: other.arity,
            });
        }
        Ok(())
    }

    /// `x -> f(A x)` for a `k x n` matrix `A` over `F_q`, where `k` is the
    /// arity of `f`.
    pub fn compose(&self, a: &Matrix) -> Result<FnTable> {
        let fq = self.pair.q();
        fq.same_as(a.field())?;
        if a.rows() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: a.rows(),
            });
        }
        let n = a.cols();
        let q = fq.order() as usize;
        let len = self.pair.table_len(n)?;
        let mut values = Vec::with_capacity(len);
        let mut x = vec![FieldElem::ZERO; n];
        for idx in 0..len {
            if idx > 0 {
                increment(&mut x, q);
            }
            let mut yi = 0usize;
            for r in 0..a.rows() {
                let row = a.row(r);
                let y = row
                    .iter()
                    .zip(&x)
                    .fold(FieldElem::ZERO, |acc, (&m, &v)| fq.add(acc, fq.mul(m, v)));
                yi = yi * q + y.index();
            }
            values.push(self.values[yi]);
        }
        Ok(FnTable::from_values_unchecked(&self.pair, n, values))
    }

    /// Scalar-line specialization `x -> f(c_1 x, ..., c_n x)`.
    pub fn specialize(&self, c: &[FieldElem]) -> Result<FnTable> {
        if c.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                actual: c.len(),
            });
        }
        let fq = self.pair.q();
        let values = fq
            .elements()
            .map(|x| {
                let point: Vec<FieldElem> = c.iter().map(|&ci| fq.mul(ci, x)).collect();
                self.at(&point)
            })
            .collect();
        Ok(FnTable::from_values_unchecked(&self.pair, 1, values))
    }

    /// Constant on every punctured line `{lambda w : lambda != 0}`.
    pub fn is_star(&self) -> bool {
        let fq = self.pair.q();
        (0..self.values.len()).all(|i| {
            let w = self.pair.decode(i, self.arity);
            let value = self.values[i];
            fq.nonzero_elements().all(|lambda| {
                let point: Vec<FieldElem> = w.iter().map(|&x| fq.mul(lambda, x)).collect();
                self.at(&point) == value
            })
        })
    }

    pub fn to_json(&self) -> FnTableJson {
        FnTableJson {
            p: self.pair.p().order(),
            q: self.pair.q().order(),
            arity: self.arity,
            values: self.values.iter().map(|v| v.0).collect(),
        }
    }

    pub fn from_json(json: &FnTableJson) -> Result<FnTable> {
        let pair = FieldPair::from_orders(json.p as u64, json.q as u64)?;
        let vs: Vec<u64> = json.values.iter().map(|&v| v as u64).collect();
        FnTable::from_ints(&pair, json.arity, &vs)
    }

    /// Parses one table, or a JSON array of tables.
    pub fn parse_many(text: &str) -> Result<Vec<FnTable>> {
        let jsons: Vec<FnTableJson> = if text.trim_start().starts_with('[') {
            serde_json::from_str(text).map_err(|e| Error::from_json(&e))?
        } else {
            vec![serde_json::from_str(text).map_err(|e| Error::from_json(&e))?]
        };
        jsons.iter().map(FnTable::from_json).collect()
    }
}

// odometer over F_q^n in table order (last coordinate fastest)
pub(crate) fn increment(x: &mut [FieldElem], q: usize) {
    for v in x.iter_mut().rev() {
        if v.index() + 1 < q {
            v.0 += 1;
            return;
        }
        v.0 = 0;
    }
}

/// Indicator of a single point, valued in `{0, 1}`.
pub fn lagrange_fn(pair: &FieldPair, point: &[FieldElem]) -> Result<FnTable> {
    if point.is_empty() {
        return Err(Error::ArityMismatch {
            expected: 1,
            actual: 0,
        });
    }
    if let Some(bad) = point.iter().find(|a| a.0 as u32 >= pair.q().order()) {
        return Err(Error::InvalidElement {
            value: bad.0 as u64,
            order: pair.q().order(),
        });
    }
    let mut values = vec![FieldElem::ZERO; pair.table_len(point.len())?];
    values[pair.encode(point)] = FieldElem::ONE;
    FnTable::new(pair, point.len(), values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn pair(p: u64, q: u64) -> FieldPair {
        FieldPair::from_orders(p, q).unwrap()
    }

    fn ints(t: &FnTable) -> Vec<u16> {
        t.values().iter().map(|v| v.0).collect()
    }

    #[test]
    fn lagrange_examples() {
        let pr = pair(2, 3);
        assert_eq!(
            ints(&lagrange_fn(&pr, &[FieldElem(1)]).unwrap()),
            vec![0, 1, 0]
        );
        let pr = pair(3, 2);
        assert_eq!(
            ints(&lagrange_fn(&pr, &[FieldElem(0), FieldElem(0)]).unwrap()),
            vec![1, 0, 0, 0]
        );
        let pr = pair(2, 5);
        assert_eq!(
            ints(&lagrange_fn(&pr, &[FieldElem(0)]).unwrap()),
            vec![1, 0, 0, 0, 0]
        );
        assert!(lagrange_fn(&pr, &[]).is_err());
    }

    #[test]
    fn index_order_is_big_endian() {
        let pr = pair(5, 3);
        // f(x, y) = x, so value at index 3*x + y is x
        let f = FnTable::from_fn(&pr, 2, |x| FieldElem(x[0].0)).unwrap();
        assert_eq!(ints(&f), vec![0, 0, 0, 1, 1, 1, 2, 2, 2]);
        assert_eq!(pr.decode(5, 2), vec![FieldElem(1), FieldElem(2)]);
    }

    #[test]
    fn composition_and_specialization() {
        let pr = pair(2, 3);
        let fq = pr.q().clone();
        let f1 = lagrange_fn(&pr, &[FieldElem(1)]).unwrap();
        // f1(x + y) as a binary function
        let a = Matrix::from_ints(&fq, &[&[1, 1]]).unwrap();
        let g = f1.compose(&a).unwrap();
        for i in 0..9 {
            let x = pr.decode(i, 2);
            let s = fq.add(x[0], x[1]);
            assert_eq!(g.values()[i], f1.at(&[s]));
        }
        // specializing back along c = (2, 0) gives x -> f1(2x)
        let h = g.specialize(&[FieldElem(2), FieldElem(0)]).unwrap();
        assert_eq!(ints(&h), vec![0, 0, 1]);
        assert!(g.compose(&Matrix::identity(&fq, 3)).is_err());
    }

    #[test]
    fn star_examples() {
        let pr = pair(2, 3);
        assert!(FnTable::constant(&pr, 2, FieldElem::ONE).unwrap().is_star());
        assert!(!FnTable::from_ints(&pr, 1, &[0, 1, 0]).unwrap().is_star());
        assert!(FnTable::from_ints(&pr, 1, &[0, 1, 1]).unwrap().is_star());
    }

    #[test]
    fn json_forms() {
        let pr = pair(2, 3);
        let f = FnTable::from_ints(&pr, 1, &[1, 0, 1]).unwrap();
        let text = serde_json::to_string(&f.to_json()).unwrap();
        assert_eq!(text, r#"{"p":2,"q":3,"arity":1,"values":[1,0,1]}"#);
        assert_eq!(FnTable::parse_many(&text).unwrap(), vec![f.clone()]);
        assert_eq!(
            FnTable::parse_many(&format!("[{text},{text}]"))
                .unwrap()
                .len(),
            2
        );
        let err = FnTable::parse_many("{\"p\": 2,\n \"q\": }").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }));
        assert!(matches!(
            FnTable::parse_many(r#"{"p":2,"q":3,"arity":1,"values":[1,0]}"#),
            Err(Error::InvalidTable(_))
        ));
        assert!(matches!(
            FnTable::parse_many(r#"{"p":2,"q":3,"arity":1,"values":[1,0,2]}"#),
            Err(Error::InvalidElement { .. })
        ));
    }
}
