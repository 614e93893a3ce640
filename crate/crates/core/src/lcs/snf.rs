//! Smith normal form over the integers and finitely generated abelian
//! group invariants.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense row-major integer matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds from rows; all rows must have `cols` entries.
    pub fn from_rows<R, T>(cols: usize, rows: R) -> IntMatrix
    where
        R: IntoIterator<Item = Vec<T>>,
        T: Into<BigInt>,
    {
        let mut data = Vec::new();
        let mut count = 0;
        for row in rows {
            assert_eq!(row.len(), cols, "row length must match column count");
            data.extend(row.into_iter().map(Into::into));
            count += 1;
        }
        IntMatrix {
            rows: count,
            cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// `row[dst] += k * row[src]`
    pub fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] += v;
        }
    }

    /// `col[dst] += k * col[src]`
    pub fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        if k.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] += v;
        }
    }

    pub fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -std::mem::take(&mut self.data[r * self.cols + c]);
            self.data[r * self.cols + c] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero diagonal entries, positive, each dividing the next.
    pub divisors: Vec<BigInt>,
    pub rank: usize,
}

/// Diagonalizes `m` by unimodular row and column operations, always pivoting
/// on the entry of least absolute value in the remaining block.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut divisors = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pr);
        a.swap_cols(t, pc);
        loop {
            let mut dirty = false;
            for r in t + 1..rows {
                if a[(r, t)].is_zero() {
                    continue;
                }
                let q = a[(r, t)].div_floor(&a[(t, t)]);
                a.add_row_multiple(r, t, &-q);
                if !a[(r, t)].is_zero() {
                    dirty = true;
                }
            }
            for c in t + 1..cols {
                if a[(t, c)].is_zero() {
                    continue;
                }
                let q = a[(t, c)].div_floor(&a[(t, t)]);
                a.add_col_multiple(c, t, &-q);
                if !a[(t, c)].is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a remainder smaller than the pivot is left in row or column t
                let (pr, pc) = min_abs_in_cross(&a, t);
                a.swap_rows(t, pr);
                a.swap_cols(t, pc);
                continue;
            }
            // pivot must divide the whole remaining block
            let pivot = a[(t, t)].clone();
            let offender = (t + 1..rows).find(|&r| {
                (t + 1..cols).any(|c| !a[(r, c)].is_multiple_of(&pivot))
            });
            match offender {
                Some(r) => a.add_row_multiple(t, r, &BigInt::one()),
                None => break,
            }
        }
        divisors.push(a[(t, t)].abs());
    }
    SmithForm {
        rank: divisors.len(),
        divisors,
    }
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in t..a.rows {
        for c in t..a.cols {
            let v = &a[(r, c)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(br, bc)| v.abs() < a[(br, bc)].abs()) {
                best = Some((r, c));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    for r in t + 1..a.rows {
        if !a[(r, t)].is_zero() && a[(r, t)].abs() < a[best].abs() {
            best = (r, t);
        }
    }
    for c in t + 1..a.cols {
        if !a[(t, c)].is_zero() && a[(t, c)].abs() < a[best].abs() {
            best = (t, c);
        }
    }
    best
}

/// A finitely generated abelian group `Z^free_rank + Z/d_1 + ... + Z/d_k`
/// with `d_1 | d_2 | ... | d_k` and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn free(rank: usize) -> AbelianInvariants {
        AbelianInvariants {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants::free(0)
    }

    /// `Z^generators` modulo the row space of `relations`.
    pub fn from_relations(relations: &IntMatrix) -> AbelianInvariants {
        let snf = smith_normal_form(relations);
        AbelianInvariants {
            free_rank: relations.cols() - snf.rank,
            torsion: snf.divisors.into_iter().filter(|d| !d.is_one()).collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// `d1,d2,...` (empty when torsion-free).
    pub fn torsion_list(&self) -> String {
        self.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn examples() {
        let snf = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(snf, SmithForm { divisors: big(&[1, 1, 1]), rank: 3 });
        let snf = smith_normal_form(&IntMatrix::from_rows(2, [vec![2, 0], vec![0, 3]]));
        assert_eq!(snf.divisors, big(&[1, 6]));
        let snf = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert_eq!(snf, SmithForm { divisors: vec![], rank: 0 });
    }

    #[test]
    fn harder_matrix() {
        // classic example with invariants 2, 6, 12
        let m = IntMatrix::from_rows(
            3,
            [vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
        );
        assert_eq!(smith_normal_form(&m).divisors, big(&[2, 6, 12]));
        let m = IntMatrix::from_rows(3, [vec![4, 6, 0]]);
        let inv = AbelianInvariants::from_relations(&m);
        assert_eq!(inv, AbelianInvariants { free_rank: 2, torsion: big(&[2]) });
        assert_eq!(inv.to_string(), "Z^2 + Z/2");
    }

    #[test]
    fn display() {
        assert_eq!(AbelianInvariants::free(5).to_string(), "Z^5");
        assert_eq!(AbelianInvariants::free(1).to_string(), "Z");
        assert_eq!(AbelianInvariants::trivial().to_string(), "0");
        let t = AbelianInvariants { free_rank: 0, torsion: big(&[2]) };
        assert_eq!(t.to_string(), "Z/2");
        assert_eq!(t.torsion_list(), "2");
    }
}
