//! Howell normal form of submodules of (Z/m)^n.
//!
//! Row echelon form is not canonical over Z/m when m is composite: the span of
//! `(2, 1)` over Z/4 also contains `(0, 2)`, which no echelon row exposes. The
//! Howell form adds those "annihilator" rows, which makes it unique for a given
//! row span and turns membership into a plain reduction.
//!
//! A matrix in Howell form here satisfies:
//! * rows are nonzero and in echelon order (strictly increasing pivot columns);
//! * each pivot divides `m`;
//! * entries above a pivot lie in `[0, pivot)`;
//! * any vector of the span whose first `j` entries vanish is a combination of
//!   the rows whose pivot column is at least `j`.

use crate::modular;

/// Leading column and value of a row, or `None` for the zero row.
pub fn pivot(row: &[u64]) -> Option<(usize, u64)> {
    row.iter().enumerate().find(|(_, &x)| x != 0).map(|(c, &x)| (c, x))
}

fn axpy(dst: &mut [u64], scale: u64, src: &[u64], m: u64) {
    if scale == 0 {
        return;
    }
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = (*d + scale * s) % m;
    }
}

/// Compute the Howell normal form of the row span of `rows` over Z/m.
pub fn howell_form(rows: Vec<Vec<u64>>, m: u64, ncols: usize) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|r| {
            debug_assert_eq!(r.len(), ncols);
            r.into_iter().map(|x| x % m).collect::<Vec<u64>>()
        })
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect();
    let mut r = 0usize;
    for col in 0..ncols {
        if r >= a.len() {
            break;
        }
        for i in (r + 1)..a.len() {
            let b = a[i][col];
            if b == 0 {
                continue;
            }
            let top = a[r][col];
            if top == 0 {
                a.swap(r, i);
                continue;
            }
            // Unimodular 2x2 transform [[s, t], [-b/g, top/g]] sends (top, b) to (g, 0).
            let (g, s, t) = modular::xgcd(top as i64, b as i64);
            let s = modular::reduce_signed(s, m);
            let t = modular::reduce_signed(t, m);
            let u = modular::neg((b as i64 / g) as u64 % m, m);
            let v = (top as i64 / g) as u64 % m;
            let (row_r, row_i) = (a[r].clone(), a[i].clone());
            for c in col..ncols {
                a[r][c] = (s * row_r[c] + t * row_i[c]) % m;
                a[i][c] = (u * row_r[c] + v * row_i[c]) % m;
            }
        }
        let p = a[r][col];
        if p == 0 {
            continue;
        }
        let unit = modular::normalizing_unit(p, m);
        if unit != 1 {
            for x in a[r].iter_mut() {
                *x = *x * unit % m;
            }
        }
        let p = a[r][col];
        let pivot_row = a[r].clone();
        for k in 0..r {
            let q = a[k][col] / p;
            if q != 0 {
                axpy(&mut a[k], modular::neg(q % m, m), &pivot_row, m);
            }
        }
        let ann = m / p;
        if ann != m {
            let extra: Vec<u64> = pivot_row.iter().map(|&x| x * ann % m).collect();
            if extra.iter().any(|&x| x != 0) {
                a.push(extra);
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

/// Reduce `v` against a Howell basis. The result is zero iff `v` is in the span.
///
/// Also returns the coefficients used, so that `v - remainder = Σ coeff_i row_i`.
pub fn reduce_with_coefficients(basis: &[Vec<u64>], v: &[u64], m: u64) -> (Vec<u64>, Vec<u64>) {
    let mut rem: Vec<u64> = v.iter().map(|&x| x % m).collect();
    let mut coeffs = vec![0u64; basis.len()];
    for (idx, row) in basis.iter().enumerate() {
        let Some((col, p)) = pivot(row) else { continue };
        let x = rem[col];
        if x % p != 0 {
            // Later rows have larger pivots, so this entry can never be cleared.
            return (rem, coeffs);
        }
        let q = x / p;
        if q != 0 {
            coeffs[idx] = q;
            axpy(&mut rem, modular::neg(q, m), row, m);
        }
    }
    (rem, coeffs)
}

pub fn reduce(basis: &[Vec<u64>], v: &[u64], m: u64) -> Vec<u64> {
    reduce_with_coefficients(basis, v, m).0
}

pub fn contains(basis: &[Vec<u64>], v: &[u64], m: u64) -> bool {
    reduce(basis, v, m).iter().all(|&x| x == 0)
}

/// Size of the span of a Howell basis: each row contributes `m / pivot` multiples.
pub fn span_order(basis: &[Vec<u64>], m: u64) -> u128 {
    basis
        .iter()
        .filter_map(|r| pivot(r))
        .map(|(_, p)| (m / p) as u128)
        .product()
}

/// Find `x` with `Σ_i x_i · rows[i] = rhs` over Z/m, if one exists.
///
/// Works on the augmented rows `[rows[i] | e_i]`: their span is `{(xA, x)}`, so
/// reducing `(rhs | 0)` on the first block leaves `(0 | -x)` when a solution exists.
pub fn solve_left(rows: &[Vec<u64>], rhs: &[u64], m: u64) -> Option<Vec<u64>> {
    let k = rows.len();
    let width = rhs.len();
    let augmented: Vec<Vec<u64>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            debug_assert_eq!(r.len(), width);
            let mut v = r.clone();
            v.extend((0..k).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let h = howell_form(augmented, m, width + k);
    let mut target = rhs.to_vec();
    target.extend(std::iter::repeat(0).take(k));
    for row in &h {
        let Some((col, p)) = pivot(row) else { continue };
        if col >= width {
            break;
        }
        let x = target[col];
        if x % p != 0 {
            return None;
        }
        axpy(&mut target, modular::neg(x / p, m), row, m);
    }
    if target[..width].iter().any(|&x| x != 0) {
        return None;
    }
    Some(target[width..].iter().map(|&x| modular::neg(x, m)).collect())
}

/// Enumerate every element of the span of a Howell basis.
pub fn span_elements(basis: &[Vec<u64>], m: u64, ncols: usize) -> Vec<Vec<u64>> {
    let radices: Vec<u64> = basis
        .iter()
        .map(|r| pivot(r).map_or(1, |(_, p)| m / p))
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0u64; basis.len()];
    loop {
        let mut v = vec![0u64; ncols];
        for (d, row) in digits.iter().zip(basis) {
            axpy(&mut v, *d, row, m);
        }
        out.push(v);
        let mut pos = 0;
        loop {
            if pos == digits.len() {
                return out;
            }
            digits[pos] += 1;
            if digits[pos] < radices[pos] {
                break;
            }
            digits[pos] = 0;
            pos += 1;
        }
    }
}
