//! Dense linear algebra over a prime field `F_p`, rows stored as `Vec<u64>`.

pub type Row = Vec<u64>;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    // Fermat
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Reduced row-echelon form. Returns the non-zero rows and their pivot columns.
pub fn rref(mut rows: Vec<Row>, ncols: usize, p: u64) -> (Vec<Row>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] % p != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = inv_mod(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[r].clone();
        for (k, row) in rows.iter_mut().enumerate() {
            if k == r || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    (rows, pivots)
}

pub fn rank(rows: Vec<Row>, ncols: usize, p: u64) -> usize {
    rref(rows, ncols, p).1.len()
}

/// Basis of `{x : A x = 0}` for `A` given by its rows (`ncols` unknowns).
pub fn kernel(rows: Vec<Row>, ncols: usize, p: u64) -> Vec<Row> {
    let (r, pivots) = rref(rows, ncols, p);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0; ncols];
        v[free] = 1;
        for (row, &pc) in r.iter().zip(&pivots) {
            v[pc] = (p - row[free]) % p;
        }
        out.push(v);
    }
    out
}

/// `M v` for `M` given by rows.
pub fn mat_vec(m: &[Row], v: &[u64], p: u64) -> Row {
    m.iter().map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % p)).collect()
}

/// `A B` for row-major matrices, `inner` = columns of `A`.
pub fn mat_mul(a: &[Row], b: &[Row], ncols_b: usize, p: u64) -> Vec<Row> {
    a.iter()
        .map(|row| {
            (0..ncols_b)
                .map(|j| row.iter().zip(b).fold(0, |acc, (x, brow)| (acc + x * brow[j]) % p))
                .collect()
        })
        .collect()
}

pub fn transpose(m: &[Row], nrows: usize, ncols: usize) -> Vec<Row> {
    (0..ncols).map(|j| (0..nrows).map(|i| m[i][j]).collect()).collect()
}
