use super::{Checker, EncodeOptions, EncodingResult};
use crate::circuit::matrix::{bool_matmul, bool_matmul_diagonal, strassen_bool_matmul, Matrix};
use crate::circuit::{tseitin, Circuit, CircuitOptions, GateBuilder, Wire};
use crate::cnf::{EdgeVarMap, VarAllocator};
use crate::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MatrixMethod {
    /// Boolean schoolbook products.
    Naive,
    /// Integer Strassen products collapsed to Booleans.
    Strassen,
}

/// Rounds `K = ceil(log2 n)` of repeated squaring.
pub fn squaring_rounds(n: usize) -> usize {
    super::label_bits(n)
}

fn product<G: GateBuilder>(g: &mut G, a: &Matrix<Wire>, b: Option<&Matrix<Wire>>, method: MatrixMethod) -> Result<Matrix<Wire>> {
    match method {
        MatrixMethod::Naive => bool_matmul(g, a, b.unwrap_or(a)),
        MatrixMethod::Strassen => strassen_bool_matmul(g, a, b.unwrap_or(a), b.is_none()),
    }
}

/// The diagonal of `B_K`, where `A_0 = B_0 = X`, `A_{k+1} = A_k^2` and
/// `B_{k+1} = B_k | A_k B_k`. Entry `(i, j)` of `B_k` holds iff there is
/// a path from `i` to `j` of length `1..=2^k`.
pub fn matrix_circuit<G: GateBuilder>(g: &mut G, edges: &EdgeVarMap, method: MatrixMethod) -> Result<Vec<Wire>> {
    let n = edges.n();
    let x = Matrix::from_fn(n, |i, j| g.input(edges.var(i + 1, j + 1)));
    let rounds = squaring_rounds(n);
    let mut a = x.clone();
    let mut b = x;
    for k in 0..rounds {
        let last = k + 1 == rounds;
        if last && method == MatrixMethod::Naive {
            let d = if k == 0 { bool_matmul_diagonal(g, &a, &a)? } else { bool_matmul_diagonal(g, &a, &b)? };
            return Ok(b.diagonal().into_iter().zip(d).map(|(p, q)| g.or(p, q)).collect());
        }
        // A_0 B_0 = A_0^2 = A_1
        let ab = if k == 0 { product(g, &a, None, method)? } else { product(g, &a, Some(&b), method)? };
        b = Matrix::from_fn(n, |i, j| g.or(*b.get(i, j), *ab.get(i, j)));
        if !last {
            a = if k == 0 { ab } else { product(g, &a, None, method)? };
        }
        g.check_budget()?;
    }
    Ok(b.diagonal())
}

fn matrix_checker(
    checker: Checker,
    method: MatrixMethod,
    edges: &EdgeVarMap,
    alloc: &mut VarAllocator,
    opts: &EncodeOptions,
) -> Result<EncodingResult> {
    let base = if opts.fold { CircuitOptions::default() } else { CircuitOptions::raw() };
    let mut c = Circuit::new(CircuitOptions { budget: opts.gate_budget, ..base });
    for w in matrix_circuit(&mut c, edges, method)? {
        c.assert_true(!w);
    }
    let enc = tseitin(&c, alloc)?;
    EncodingResult::new(checker, edges, enc.formula, enc.varmap)
}

/// Zero diagonal of the path matrix, by Boolean repeated squaring.
pub fn mm_naive(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    matrix_checker(Checker::Mm, MatrixMethod::Naive, edges, alloc, opts)
}

/// As [`mm_naive`], with every product computed by Strassen's algorithm.
pub fn mm_strassen(edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    matrix_checker(Checker::Ss, MatrixMethod::Strassen, edges, alloc, opts)
}
