//! Row reduction over F_{q^2}.

use crate::field::{Elem, FieldSpec};

/// Reduces `rows` to reduced row echelon form in place, drops zero rows and
/// returns the pivot columns.
pub fn rref(f: &FieldSpec, rows: &mut Vec<Vec<Elem>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, sel);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(f: &FieldSpec, rows: &[Vec<Elem>]) -> usize {
    let mut m = rows.to_vec();
    rref(f, &mut m).len()
}

/// Basis of `{x : rows . x = 0}` in `ncols` unknowns.
pub fn nullspace(f: &FieldSpec, rows: &[Vec<Elem>], ncols: usize) -> Vec<Vec<Elem>> {
    let mut m = rows.to_vec();
    let pivots = rref(f, &mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Elem::ZERO; ncols];
            v[fc] = Elem::ONE;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_is_annihilated() {
        let f = FieldSpec::new(3).unwrap();
        let rows = vec![
            vec![Elem(1), Elem(2), Elem(0), Elem(5)],
            vec![Elem(0), Elem(1), Elem(7), Elem(3)],
        ];
        let ns = nullspace(&f, &rows, 4);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            for r in &rows {
                assert_eq!(f.dot(r, v), Elem::ZERO);
            }
        }
        assert_eq!(rank(&f, &ns), 2);
    }

    #[test]
    fn rank_of_dependent_rows() {
        let f = FieldSpec::new(2).unwrap();
        let a = vec![Elem(1), Elem(2), Elem(3)];
        let b: Vec<Elem> = a.iter().map(|&x| f.mul(x, Elem(2))).collect();
        assert_eq!(rank(&f, &[a, b]), 1);
        assert_eq!(rank(&f, &[vec![Elem(0); 3]]), 0);
    }
}
