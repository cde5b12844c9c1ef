//! The eight acyclicity checkers.
//!
//! | name | idea | size |
//! |------|------|------|
//! | `tc1` | irreflexive transitive relation containing the edges | `n^3` |
//! | `tc2` | as `tc1`, closing under `R E` instead of `R R` | `n^3` |
//! | `tc3` | the edge relation itself is transitive (monotone families only) | `n^3` |
//! | `bin` | binary vertex labels increasing along edges | `n^2 log n` |
//! | `unr` | unary vertex labels increasing along edges | `n^3` |
//! | `fw`  | Warshall's reachability recurrence | `n^3` |
//! | `mm`  | zero diagonal of the path matrix by repeated Boolean squaring | `n^3 log n` |
//! | `ss`  | as `mm`, each product by Strassen's algorithm over integers | `n^2.81 log^3 n` |

mod labels;
mod matrix;
mod reach;

pub use labels::{bin, label_bits, unr};
pub use matrix::{matrix_circuit, mm_naive, mm_strassen, squaring_rounds, MatrixMethod};
pub use reach::{fw, tc1, tc2, tc3};

use std::fmt;
use std::str::FromStr;

use crate::circuit::{GateBuilder, GateCounter};
use crate::cnf::{CnfFormula, EdgeVarMap, VarAllocator, VarMap};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Checker {
    Tc1,
    Tc2,
    Tc3,
    Bin,
    Unr,
    Fw,
    Mm,
    Ss,
}

impl Checker {
    pub const ALL: [Checker; 8] =
        [Checker::Tc1, Checker::Tc2, Checker::Tc3, Checker::Bin, Checker::Unr, Checker::Fw, Checker::Mm, Checker::Ss];

    pub fn name(self) -> &'static str {
        match self {
            Checker::Tc1 => "tc1",
            Checker::Tc2 => "tc2",
            Checker::Tc3 => "tc3",
            Checker::Bin => "bin",
            Checker::Unr => "unr",
            Checker::Fw => "fw",
            Checker::Mm => "mm",
            Checker::Ss => "ss",
        }
    }

    pub fn size_class(self) -> SizeClass {
        match self {
            Checker::Tc1 | Checker::Tc2 | Checker::Tc3 | Checker::Unr | Checker::Fw => SizeClass::Cubic,
            Checker::Bin => SizeClass::QuadraticLog,
            Checker::Mm => SizeClass::CubicLog,
            Checker::Ss => SizeClass::StrassenLog3,
        }
    }

    /// Sound only together with families closed under adding edges.
    pub fn requires_monotone_family(self) -> bool {
        self == Checker::Tc3
    }

    /// Built by compiling a circuit.
    pub fn is_circuit(self) -> bool {
        matches!(self, Checker::Bin | Checker::Mm | Checker::Ss)
    }
}

impl fmt::Display for Checker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Checker {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Checker::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown checker `{s}` (expected one of tc1 tc2 tc3 bin unr fw mm ss)")))
    }
}

/// Declared asymptotic formula size.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SizeClass {
    Cubic,
    QuadraticLog,
    CubicLog,
    StrassenLog3,
}

impl SizeClass {
    /// `(polynomial exponent, power of log n)`.
    pub fn exponents(self) -> (f64, u32) {
        match self {
            SizeClass::Cubic => (3.0, 0),
            SizeClass::QuadraticLog => (2.0, 1),
            SizeClass::CubicLog => (3.0, 1),
            SizeClass::StrassenLog3 => (7f64.log2(), 3),
        }
    }
}

impl fmt::Display for SizeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SizeClass::Cubic => "n^3",
            SizeClass::QuadraticLog => "n^2 log n",
            SizeClass::CubicLog => "n^3 log n",
            SizeClass::StrassenLog3 => "n^2.81 log^3 n",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Drop clauses of the transitivity and Warshall schemes that are
    /// tautological or subsumed because two indices coincide.
    pub skip_degenerate: bool,
    /// Constant folding and structural hashing in circuit checkers.
    pub fold: bool,
    /// Give up with `GateBudget` once a circuit exceeds this many ANDs.
    pub gate_budget: Option<u64>,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions { skip_degenerate: false, fold: true, gate_budget: None }
    }
}

/// An acyclicity checker for one `n`.
#[derive(Clone, Debug)]
pub struct EncodingResult {
    pub checker: Checker,
    pub n: usize,
    pub formula: CnfFormula,
    /// Edge variables plus every auxiliary variable of the encoding.
    pub varmap: VarMap,
    pub size_class: SizeClass,
}

impl EncodingResult {
    pub(crate) fn new(checker: Checker, edges: &EdgeVarMap, formula: CnfFormula, aux: VarMap) -> Result<Self> {
        let mut varmap = VarMap::with_edges(edges.clone());
        varmap.merge(aux)?;
        let mut formula = formula;
        formula.reserve_vars(edges.vars().iter().map(|v| v.index()).max().unwrap_or(0));
        Ok(EncodingResult { checker, n: edges.n(), formula, varmap, size_class: checker.size_class() })
    }

    pub fn edges(&self) -> &EdgeVarMap {
        self.varmap.edges().expect("encodings always carry their edge map")
    }
}

/// Build checker `c` over `edges`, drawing auxiliaries from `alloc`.
pub fn encode(c: Checker, edges: &EdgeVarMap, alloc: &mut VarAllocator, opts: &EncodeOptions) -> Result<EncodingResult> {
    match c {
        Checker::Tc1 => tc1(edges, alloc, opts),
        Checker::Tc2 => tc2(edges, alloc, opts),
        Checker::Tc3 => tc3(edges, opts),
        Checker::Bin => bin(edges, alloc, opts),
        Checker::Unr => unr(edges, alloc),
        Checker::Fw => fw(edges, alloc, opts),
        Checker::Mm => mm_naive(edges, alloc, opts),
        Checker::Ss => mm_strassen(edges, alloc, opts),
    }
}

/// Formula size of checker `c` for `n` vertices with default options.
///
/// The matrix checkers are measured by counting gates without building
/// them (folding on, structural hashing off), which gives the exact size of
/// the unhashed encoding and an upper bound on the default one. With a
/// budget, returns `GateBudget` as soon as the count passes it.
pub fn formula_size(c: Checker, n: usize, budget: Option<u64>) -> Result<u64> {
    match c {
        Checker::Mm | Checker::Ss => {
            let mut k = match budget {
                Some(b) => GateCounter::with_budget(b),
                None => GateCounter::new(),
            };
            let mut alloc = VarAllocator::new();
            let edges = EdgeVarMap::allocate(n, &mut alloc);
            let method = if c == Checker::Mm { MatrixMethod::Naive } else { MatrixMethod::Strassen };
            let diag = matrix_circuit(&mut k, &edges, method)?;
            k.check_budget()?;
            let outputs: u64 = diag
                .iter()
                .map(|w| match w.const_value() {
                    Some(false) => 0,
                    Some(true) => 1,
                    None => 2,
                })
                .sum();
            Ok(10 * k.and_count() + outputs)
        }
        _ => {
            let mut alloc = VarAllocator::new();
            let edges = EdgeVarMap::allocate(n, &mut alloc);
            let opts = EncodeOptions { gate_budget: budget, ..EncodeOptions::default() };
            Ok(encode(c, &edges, &mut alloc, &opts)?.formula.size())
        }
    }
}
