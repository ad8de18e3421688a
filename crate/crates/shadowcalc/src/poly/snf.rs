//! Smith normal form over the integers.

use num_integer::Integer;

use crate::error::{Error, Result};

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow("Smith normal form"))
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix given by rows.
pub fn smith_diagonal(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<i64>> {
    let mut a: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let nr = a.len();
    let nc = ncols;
    let mut diag = Vec::new();
    let mut t = 0;
    while t < nr.min(nc) {
        // smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize, i128)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(_, _, b)| x.abs() < b) {
                    best = Some((i, j, x.abs()));
                    if x.abs() == 1 {
                        break;
                    }
                }
            }
            if matches!(best, Some((_, _, 1))) {
                break;
            }
        }
        let Some((pi, pj, _)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut dirty = false;
            for i in (t + 1)..nr {
                let x = a[i][t];
                if x == 0 {
                    continue;
                }
                let q = Integer::div_floor(&x, &p);
                for j in t..nc {
                    let v = ck(a[t][j].checked_mul(q))?;
                    a[i][j] = ck(a[i][j].checked_sub(v))?;
                }
                if a[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in (t + 1)..nc {
                let x = a[t][j];
                if x == 0 {
                    continue;
                }
                let q = Integer::div_floor(&x, &p);
                for row in a.iter_mut().skip(t) {
                    let v = ck(row[t].checked_mul(q))?;
                    row[j] = ck(row[j].checked_sub(v))?;
                }
                if a[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // move the smallest nonzero entry of row t / column t to the pivot
            let mut bi = (t, t, a[t][t].abs());
            for i in (t + 1)..nr {
                let x = a[i][t].abs();
                if x != 0 && x < bi.2 {
                    bi = (i, t, x);
                }
            }
            for j in (t + 1)..nc {
                let x = a[t][j].abs();
                if x != 0 && x < bi.2 {
                    bi = (t, j, x);
                }
            }
            if bi.0 != t {
                a.swap(t, bi.0);
            }
            if bi.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, bi.1);
                }
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    // enforce the divisibility chain
    let k = diag.len();
    for i in 0..k {
        for j in (i + 1)..k {
            let (x, y) = (diag[i], diag[j]);
            let g = x.gcd(&y);
            let l = ck((x / g).checked_mul(y))?;
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag.into_iter()
        .map(|d| i64::try_from(d).map_err(|_| Error::Overflow("Smith normal form")))
        .collect()
}
