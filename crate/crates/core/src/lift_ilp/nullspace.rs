use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Integer basis of `{h : rows · h = 0}`, each vector scaled to the lcm of
/// its denominators and divided by its content.
pub fn integer_null_space(rows: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|c| BigRational::from_integer(c.clone())).collect())
        .collect();
    // reduced row echelon form
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in 0..ncols {
                    let d = &f * &m[r][k];
                    m[i][k] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut h = vec![BigRational::zero(); ncols];
            h[f] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                h[pc] = -m[i][f].clone();
            }
            let den = h.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints: Vec<BigInt> = h.iter().map(|x| (x * &den).to_integer()).collect();
            primitive(ints)
        })
        .collect()
}

/// Divide by the content; the zero vector is returned unchanged.
pub fn primitive(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|x| x / &g).collect()
}

pub fn rank(rows: &[Vec<BigInt>], ncols: usize) -> usize {
    ncols - integer_null_space(rows, ncols).len()
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn is_zero_vec(v: &[BigInt]) -> bool {
    v.iter().all(|x| x.is_zero())
}

pub fn max_abs(v: &[BigInt]) -> BigInt {
    v.iter().map(|x| x.abs()).max().unwrap_or_default()
}
