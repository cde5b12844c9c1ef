//! Matrix products as circuits: Boolean schoolbook products and Strassen's
//! algorithm over integer bundles.

use super::arith::{self, IntBundle};
use super::{GateBuilder, Wire};
use crate::{Error, Result};

/// Square matrix, row-major, 0-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn diagonal(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { n: self.n, data: self.data.iter().map(f).collect() }
    }

    fn quadrant(&self, qi: usize, qj: usize) -> Matrix<T> {
        let h = self.n / 2;
        Matrix::from_fn(h, |i, j| self.get(qi * h + i, qj * h + j).clone())
    }

    fn join(q: [Matrix<T>; 4]) -> Matrix<T> {
        let h = q[0].n;
        Matrix::from_fn(2 * h, |i, j| q[(i / h) * 2 + j / h].get(i % h, j % h).clone())
    }
}

/// Boolean product: `C_ij = OR_k A_ik & B_kj`.
pub fn bool_matmul<G: GateBuilder + ?Sized>(g: &mut G, a: &Matrix<Wire>, b: &Matrix<Wire>) -> Result<Matrix<Wire>> {
    assert_eq!(a.n, b.n);
    let n = a.n;
    let mut data = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            data.push(bool_entry(g, a, b, i, j));
        }
        g.check_budget()?;
    }
    Ok(Matrix { n, data })
}

/// Only the diagonal of the Boolean product.
pub fn bool_matmul_diagonal<G: GateBuilder + ?Sized>(g: &mut G, a: &Matrix<Wire>, b: &Matrix<Wire>) -> Result<Vec<Wire>> {
    let mut out = Vec::with_capacity(a.n);
    for i in 0..a.n {
        out.push(bool_entry(g, a, b, i, i));
        g.check_budget()?;
    }
    Ok(out)
}

fn bool_entry<G: GateBuilder + ?Sized>(g: &mut G, a: &Matrix<Wire>, b: &Matrix<Wire>, i: usize, j: usize) -> Wire {
    let terms: Vec<Wire> = (0..a.n).map(|k| g.and(*a.get(i, k), *b.get(k, j))).collect();
    g.or_reduce(&terms)
}

/// Number of Strassen recursion levels for an `n x n` product.
pub fn strassen_levels(n: usize) -> usize {
    n.max(1).next_power_of_two().trailing_zeros() as usize
}

/// Bundle width cap for a Strassen product of 0/1 matrices: the bits of
/// `n + 1`, one bit per recursion level, and a sign bit.
pub fn strassen_width(n: usize) -> usize {
    let log = usize::BITS as usize - n.leading_zeros() as usize; // ceil(log2(n+1))
    log + strassen_levels(n) + 1
}

/// Integer product of 0/1 matrices by Strassen's algorithm, collapsed back
/// to Booleans (`entry != 0`). Matrices are padded with zeros to a power of
/// two. Passing the same matrix twice shares the operand sums.
pub fn strassen_bool_matmul<G: GateBuilder + ?Sized>(
    g: &mut G,
    a: &Matrix<Wire>,
    b: &Matrix<Wire>,
    square: bool,
) -> Result<Matrix<Wire>> {
    let n = a.n;
    let cap = strassen_width(n);
    let c = strassen_product(g, a, b, square, cap)?;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(arith::is_nonzero(g, c.get(i, j)));
        }
    }
    g.check_budget()?;
    Ok(Matrix { n, data: out })
}

/// Exact integer product of 0/1 matrices (entries in `0..=n`) via Strassen,
/// computed modulo `2^cap`. Errors if `cap` cannot hold `n`.
pub fn strassen_product<G: GateBuilder + ?Sized>(
    g: &mut G,
    a: &Matrix<Wire>,
    b: &Matrix<Wire>,
    square: bool,
    cap: usize,
) -> Result<Matrix<IntBundle>> {
    assert_eq!(a.n, b.n);
    let n = a.n;
    let needed = arith::bits_for(0, n as i64);
    if cap < needed {
        return Err(Error::WidthPlan { lo: 0, hi: n as i64, needed, width: cap });
    }
    let m = n.max(1).next_power_of_two();
    let lift = |x: &Matrix<Wire>| {
        Matrix::from_fn(m, |i, j| {
            IntBundle::from_bit(if i < n && j < n { *x.get(i, j) } else { Wire::FALSE })
        })
    };
    let (pa, pb) = (lift(a), lift(b));
    let c = strassen_rec(g, &pa, if square { None } else { Some(&pb) }, cap)?;
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            out.push(c.get(i, j).clone());
        }
    }
    Ok(Matrix { n, data: out })
}

fn zip<G: GateBuilder + ?Sized>(
    g: &mut G,
    x: &Matrix<IntBundle>,
    y: &Matrix<IntBundle>,
    cap: usize,
    op: fn(&mut G, &IntBundle, &IntBundle, usize) -> IntBundle,
) -> Matrix<IntBundle> {
    Matrix { n: x.n, data: x.data.iter().zip(&y.data).map(|(a, b)| op(g, a, b, cap)).collect() }
}

/// `A * B`, or `A * A` when `b` is `None`.
fn strassen_rec<G: GateBuilder + ?Sized>(
    g: &mut G,
    a: &Matrix<IntBundle>,
    b: Option<&Matrix<IntBundle>>,
    cap: usize,
) -> Result<Matrix<IntBundle>> {
    if a.n == 1 {
        let y = b.unwrap_or(a).get(0, 0);
        return Ok(Matrix { n: 1, data: vec![arith::mul_wrapping(g, a.get(0, 0), y, cap)] });
    }
    let add = |g: &mut G, x: &Matrix<IntBundle>, y: &Matrix<IntBundle>| zip(g, x, y, cap, arith::add_wrapping::<G>);
    let sub = |g: &mut G, x: &Matrix<IntBundle>, y: &Matrix<IntBundle>| zip(g, x, y, cap, arith::sub_wrapping::<G>);
    let [a11, a12, a21, a22] = [a.quadrant(0, 0), a.quadrant(0, 1), a.quadrant(1, 0), a.quadrant(1, 1)];
    let s1 = add(g, &a11, &a22);
    let s2 = add(g, &a21, &a22);
    let s5 = add(g, &a11, &a12);
    let s6 = sub(g, &a21, &a11);
    let s7 = sub(g, &a12, &a22);
    g.check_budget()?;
    let m = match b {
        None => [
            // For a square every right operand coincides with a left one.
            strassen_rec(g, &s1, None, cap)?,
            strassen_rec(g, &s2, Some(&a11), cap)?,
            strassen_rec(g, &a11, Some(&s7), cap)?,
            strassen_rec(g, &a22, Some(&s6), cap)?,
            strassen_rec(g, &s5, Some(&a22), cap)?,
            strassen_rec(g, &s6, Some(&s5), cap)?,
            strassen_rec(g, &s7, Some(&s2), cap)?,
        ],
        Some(b) => {
            let [b11, b12, b21, b22] = [b.quadrant(0, 0), b.quadrant(0, 1), b.quadrant(1, 0), b.quadrant(1, 1)];
            let t1 = add(g, &b11, &b22);
            let t3 = sub(g, &b12, &b22);
            let t4 = sub(g, &b21, &b11);
            let t6 = add(g, &b11, &b12);
            let t7 = add(g, &b21, &b22);
            [
                strassen_rec(g, &s1, Some(&t1), cap)?,
                strassen_rec(g, &s2, Some(&b11), cap)?,
                strassen_rec(g, &a11, Some(&t3), cap)?,
                strassen_rec(g, &a22, Some(&t4), cap)?,
                strassen_rec(g, &s5, Some(&b22), cap)?,
                strassen_rec(g, &s6, Some(&t6), cap)?,
                strassen_rec(g, &s7, Some(&t7), cap)?,
            ]
        }
    };
    let [m1, m2, m3, m4, m5, m6, m7] = m;
    let c11 = {
        let x = add(g, &m1, &m4);
        let y = sub(g, &x, &m5);
        add(g, &y, &m7)
    };
    let c12 = add(g, &m3, &m5);
    let c21 = add(g, &m2, &m4);
    let c22 = {
        let x = sub(g, &m1, &m2);
        let y = add(g, &x, &m3);
        add(g, &y, &m6)
    };
    g.check_budget()?;
    Ok(Matrix::join([c11, c12, c21, c22]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::{Circuit, CircuitOptions, GateCounter};
    use crate::cnf::{Assignment, Var, VarAllocator};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn inputs(c: &mut Circuit, alloc: &mut VarAllocator, n: usize) -> (Matrix<Wire>, Vec<Var>) {
        let vars = alloc.fresh_vec(n * n);
        let m = Matrix::from_fn(n, |i, j| c.input(vars[i * n + j]));
        (m, vars)
    }

    fn schoolbook(a: &[bool], b: &[bool], n: usize) -> Vec<i64> {
        let mut c = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                c[i * n + j] = (0..n).filter(|&k| a[i * n + k] && b[k * n + j]).count() as i64;
            }
        }
        c
    }

    #[test]
    fn widths() {
        assert_eq!(strassen_levels(1), 0);
        assert_eq!(strassen_levels(5), 3);
        assert_eq!(strassen_width(1), 2);
        assert_eq!(strassen_width(8), 4 + 3 + 1);
    }

    #[test]
    fn strassen_matches_schoolbook() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 1..=6 {
            let mut c = Circuit::default();
            let mut alloc = VarAllocator::new();
            let (a, av) = inputs(&mut c, &mut alloc, n);
            let (b, bv) = inputs(&mut c, &mut alloc, n);
            let p = strassen_product(&mut c, &a, &b, false, strassen_width(n)).unwrap();
            let q = strassen_product(&mut c, &a, &a, true, strassen_width(n)).unwrap();
            for _ in 0..20 {
                let xa: Vec<bool> = (0..n * n).map(|_| rng.random()).collect();
                let xb: Vec<bool> = (0..n * n).map(|_| rng.random()).collect();
                let mut asg = Assignment::new();
                for (v, x) in av.iter().zip(&xa).chain(bv.iter().zip(&xb)) {
                    asg.set(*v, *x);
                }
                let vals = c.evaluate(&asg).unwrap();
                let got: Vec<i64> = p.data.iter().map(|e| e.value(&vals)).collect();
                assert_eq!(got, schoolbook(&xa, &xb, n));
                let sq: Vec<i64> = q.data.iter().map(|e| e.value(&vals)).collect();
                assert_eq!(sq, schoolbook(&xa, &xa, n));
            }
        }
    }

    #[test]
    fn boolean_products_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 5;
        let mut c = Circuit::default();
        let mut alloc = VarAllocator::new();
        let (a, av) = inputs(&mut c, &mut alloc, n);
        let (b, bv) = inputs(&mut c, &mut alloc, n);
        let naive = bool_matmul(&mut c, &a, &b).unwrap();
        let fast = strassen_bool_matmul(&mut c, &a, &b, false).unwrap();
        let diag = bool_matmul_diagonal(&mut c, &a, &b).unwrap();
        for _ in 0..50 {
            let mut asg = Assignment::new();
            for v in av.iter().chain(&bv) {
                asg.set(*v, rng.random_bool(0.4));
            }
            let vals = c.eval_wires(&asg, &naive.data).unwrap();
            assert_eq!(vals, c.eval_wires(&asg, &fast.data).unwrap());
            let d: Vec<bool> = (0..n).map(|i| vals[i * n + i]).collect();
            assert_eq!(d, c.eval_wires(&asg, &diag).unwrap());
        }
    }

    #[test]
    fn too_narrow_cap_is_rejected() {
        let mut c = Circuit::default();
        let mut alloc = VarAllocator::new();
        let (a, _) = inputs(&mut c, &mut alloc, 4);
        assert!(matches!(strassen_product(&mut c, &a, &a, true, 3), Err(Error::WidthPlan { needed: 4, .. })));
    }

    #[test]
    fn counter_agrees_with_unshared_circuit() {
        for n in [2, 3, 4, 7] {
            let mut c = Circuit::new(CircuitOptions { share: false, ..CircuitOptions::default() });
            let mut alloc = VarAllocator::new();
            let (a, vars) = inputs(&mut c, &mut alloc, n);
            strassen_bool_matmul(&mut c, &a, &a, true).unwrap();
            let mut k = GateCounter::new();
            let ka = Matrix::from_fn(n, |i, j| k.input(vars[i * n + j]));
            strassen_bool_matmul(&mut k, &ka, &ka, true).unwrap();
            assert_eq!(c.and_count(), k.and_count(), "n = {n}");
        }
    }

    #[test]
    fn budget_stops_construction() {
        let mut k = GateCounter::with_budget(100);
        let mut alloc = VarAllocator::new();
        let vars = alloc.fresh_vec(64);
        let a = Matrix::from_fn(8, |i, j| k.input(vars[i * 8 + j]));
        assert!(matches!(strassen_bool_matmul(&mut k, &a, &a, true), Err(Error::GateBudget { budget: 100 })));
    }
}
