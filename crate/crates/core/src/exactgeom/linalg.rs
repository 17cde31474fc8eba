//! Dense exact linear algebra over `Rat`.

use num_traits::{One, Zero};

use super::Rat;

pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Reduced row echelon form in place. Returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = Rat::one() / &rows[r][c];
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Rat>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of `{x : row . x = 0 for every row}` in `ncols` unknowns.
pub fn nullspace(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let pivots = if m.is_empty() { Vec::new() } else { rref(&mut m) };
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Rat::zero(); ncols];
            v[f] = Rat::one();
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = -row[f].clone();
            }
            v
        })
        .collect()
}

/// Affine dimension of a point set (-1 for the empty set).
pub fn affine_dim<P: AsRef<[Rat]>>(points: &[P]) -> isize {
    let Some(first) = points.first() else {
        return -1;
    };
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| sub(p.as_ref(), first.as_ref()))
        .collect();
    if diffs.is_empty() {
        0
    } else {
        rank(&diffs) as isize
    }
}

/// Coordinates of `points` in an affine chart of their affine hull.
///
/// Projection onto the pivot columns of the row-reduced difference matrix is
/// injective on the hull, so the projected set is full-dimensional in `R^r`.
pub fn affine_chart<P: AsRef<[Rat]>>(points: &[P]) -> Vec<Vec<Rat>> {
    let Some(first) = points.first() else {
        return Vec::new();
    };
    let mut diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| sub(p.as_ref(), first.as_ref()))
        .collect();
    let pivots = if diffs.is_empty() { Vec::new() } else { rref(&mut diffs) };
    points
        .iter()
        .map(|p| pivots.iter().map(|&c| p.as_ref()[c].clone()).collect())
        .collect()
}
