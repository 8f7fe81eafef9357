//! Dense polynomials over the residue field `F_p`.

use super::scalar::Prime;

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let (mut b, mut e) = (a % p, p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = mulm(r, b, p);
        }
        b = mulm(b, b, p);
        e >>= 1;
    }
    r
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Polynomial over `F_p`, ascending coefficients, trimmed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    pub coeffs: Vec<u64>,
}

impl FpPoly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn rem(&self, d: &FpPoly, p: u64) -> FpPoly {
        let dd = d.degree().expect("nonzero divisor");
        let inv = inv_mod(*d.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let q = mulm(*r.last().unwrap(), inv, p);
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mulm(q, *c, p)) % p;
            }
            r.pop();
            while r.last() == Some(&0) {
                r.pop();
            }
        }
        FpPoly::new(r)
    }

    pub fn div_exact(&self, d: &FpPoly, p: u64) -> FpPoly {
        let dd = d.degree().expect("nonzero divisor");
        let inv = inv_mod(*d.coeffs.last().unwrap(), p);
        let mut r = self.coeffs.clone();
        let mut q = vec![0; r.len().saturating_sub(dd)];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c0 = mulm(*r.last().unwrap(), inv, p);
            for (i, c) in d.coeffs.iter().enumerate() {
                r[k + i] = (r[k + i] + p - mulm(c0, *c, p)) % p;
            }
            q[k] = c0;
            r.pop();
        }
        FpPoly::new(q)
    }

    pub fn gcd(&self, other: &FpPoly, p: u64) -> FpPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b, p);
            a = b;
            b = r;
        }
        if let Some(&l) = a.coeffs.last() {
            let inv = inv_mod(l, p);
            a = FpPoly::new(a.coeffs.iter().map(|&c| mulm(c, inv, p)).collect());
        }
        a
    }
}

/// Determinant of a square matrix over `F_p`.
pub fn det_mod(mut m: Vec<Vec<u64>>, p: Prime) -> u64 {
    let p = p.get();
    let n = m.len();
    let mut det = 1u64;
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !m[r][col].is_multiple_of(p)) else {
            return 0;
        };
        if piv != col {
            m.swap(piv, col);
            det = (p - det) % p;
        }
        det = mulm(det, m[col][col], p);
        let inv = inv_mod(m[col][col], p);
        for r in col + 1..n {
            let f = mulm(m[r][col], inv, p);
            if f == 0 {
                continue;
            }
            for c in col..n {
                m[r][c] = (m[r][c] + p - mulm(f, m[col][c], p)) % p;
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_over_f2() {
        let p = 2;
        // (x+1)^2 = x^2+1 and x^2+x = x(x+1)
        let a = FpPoly::new(vec![1, 0, 1]);
        let b = FpPoly::new(vec![0, 1, 1]);
        assert_eq!(a.gcd(&b, p), FpPoly::new(vec![1, 1]));
        assert_eq!(
            a.div_exact(&FpPoly::new(vec![1, 1]), p),
            FpPoly::new(vec![1, 1])
        );
    }

    #[test]
    fn det_small() {
        let p = Prime::new(5).unwrap();
        assert_eq!(det_mod(vec![vec![1, 2], vec![3, 4]], p), 3); // -2 mod 5
        assert_eq!(det_mod(vec![vec![2, 4], vec![1, 2]], p), 0);
    }
}
