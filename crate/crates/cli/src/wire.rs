//! Wire representation of complex data: complex numbers as [re, im] pairs of
//! decimal floats, matrices as row-major nested arrays. The lowest common
//! denominator across languages, and bit-exact for representable values.

use modalg_core::{CMatrix, CVector, Operator, Projection};
use num_complex::Complex64;

pub type WireComplex = [f64; 2];
pub type WireVector = Vec<WireComplex>;
pub type WireMatrix = Vec<WireVector>;

pub fn operator_to_wire(op: &Operator) -> WireMatrix {
    let n = op.dim();
    (0..n)
        .map(|i| (0..n).map(|j| complex_to_wire(op.entry(i, j))).collect())
        .collect()
}

pub fn projection_to_wire(p: &Projection) -> WireMatrix {
    operator_to_wire(p.as_operator())
}

pub fn complex_to_wire(z: Complex64) -> WireComplex {
    [z.re, z.im]
}

pub fn wire_to_operator(rows: &WireMatrix) -> Result<Operator, String> {
    let n = rows.len();
    if n == 0 {
        return Err("matrix must be non-empty".into());
    }
    let mut mat = CMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(format!(
                "row {i} has {} entries, expected {n} (square, row-major)",
                row.len()
            ));
        }
        for (j, &[re, im]) in row.iter().enumerate() {
            mat[(i, j)] = Complex64::new(re, im);
        }
    }
    Operator::new(mat).map_err(|e| e.to_string())
}

pub fn wire_to_vector(entries: &WireVector) -> Result<CVector, String> {
    if entries.is_empty() {
        return Err("vector must be non-empty".into());
    }
    Ok(CVector::from_vec(
        entries
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect(),
    ))
}

pub fn vector_to_wire(v: &CVector) -> WireVector {
    v.iter().map(|&z| complex_to_wire(z)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let op = Operator::from_rows(
            2,
            &[
                Complex64::new(0.1, -0.25),
                Complex64::new(1.0 / 3.0, 2.0),
                Complex64::new(-7.5, 1e-17),
                Complex64::new(0.0, -0.0),
            ],
        )
        .unwrap();
        let wire = operator_to_wire(&op);
        let back = wire_to_operator(&wire).unwrap();
        assert_eq!(op, back);
    }

    #[test]
    fn rejects_ragged_input() {
        let ragged = vec![vec![[1.0, 0.0], [0.0, 0.0]], vec![[0.0, 0.0]]];
        assert!(wire_to_operator(&ragged).is_err());
    }
}
