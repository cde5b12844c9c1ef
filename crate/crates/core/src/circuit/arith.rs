//! Two's-complement integer bundles.
//!
//! A bundle carries, besides its wires, a closed interval known to contain
//! its value. The checked operations ([`add`], [`sub`], [`mul`]) use the
//! interval to reject width plans that could overflow. The wrapping
//! operations compute modulo `2^w` for a width chosen from the interval but
//! never above a cap; see [`add_wrapping`].

use super::{wire_value, GateBuilder, Wire};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntBundle {
    bits: Vec<Wire>,
    lo: i64,
    hi: i64,
    wrapped: bool,
}

/// Smallest two's-complement width holding every value in `[lo, hi]`.
pub fn bits_for(lo: i64, hi: i64) -> usize {
    let mut w = 1;
    while lo < -(1i64 << (w - 1)) || hi > (1i64 << (w - 1)) - 1 {
        w += 1;
    }
    w
}

fn full_range(width: usize) -> (i64, i64) {
    (-(1i64 << (width - 1)), (1i64 << (width - 1)) - 1)
}

impl IntBundle {
    /// The constant `value` at `width` bits.
    pub fn constant(value: i64, width: usize) -> Result<Self> {
        let needed = bits_for(value, value);
        if width == 0 || needed > width || width > 62 {
            return Err(Error::WidthPlan { lo: value, hi: value, needed, width });
        }
        let bits = (0..width).map(|i| Wire::constant((value >> i) & 1 == 1)).collect();
        Ok(IntBundle { bits, lo: value, hi: value, wrapped: false })
    }

    /// A 0/1 value: `[w, 0]`.
    pub fn from_bit(w: Wire) -> Self {
        let (lo, hi) = match w.const_value() {
            Some(v) => (v as i64, v as i64),
            None => (0, 1),
        };
        IntBundle { bits: vec![w, Wire::FALSE], lo, hi, wrapped: false }
    }

    /// Nonnegative value with the given magnitude bits (an extra sign bit is added).
    pub fn from_unsigned(mut bits: Vec<Wire>) -> Self {
        assert!(bits.len() < 62, "bundle too wide");
        let hi = (1i64 << bits.len()) - 1;
        bits.push(Wire::FALSE);
        IntBundle { bits, lo: 0, hi, wrapped: false }
    }

    /// Signed value with the given bits, sign bit last.
    pub fn from_signed(bits: Vec<Wire>) -> Self {
        assert!(!bits.is_empty() && bits.len() <= 62, "bundle width must be in 1..=62");
        let (lo, hi) = full_range(bits.len());
        IntBundle { bits, lo, hi, wrapped: false }
    }

    pub fn width(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[Wire] {
        &self.bits
    }

    /// Interval known to contain the value (the full width range once wrapped).
    pub fn range(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    /// True once the value is only known modulo `2^width`.
    pub fn is_wrapped(&self) -> bool {
        self.wrapped
    }

    /// Decode the value from node values produced by `Circuit::evaluate`.
    pub fn value(&self, values: &[bool]) -> i64 {
        let w = self.bits.len();
        let mut v = 0i64;
        for (i, &b) in self.bits.iter().enumerate() {
            if wire_value(values, b) {
                v |= 1 << i;
            }
        }
        if w < 64 && v >> (w - 1) & 1 == 1 {
            v -= 1 << w;
        }
        v
    }

    fn wrapped_at(bits: Vec<Wire>) -> Self {
        let (lo, hi) = full_range(bits.len());
        IntBundle { bits, lo, hi, wrapped: true }
    }
}

/// Sign-extend or truncate to `width` bits.
fn resize(bits: &[Wire], width: usize) -> Vec<Wire> {
    let sign = *bits.last().expect("empty bundle");
    (0..width).map(|i| bits.get(i).copied().unwrap_or(sign)).collect()
}

fn full_add<G: GateBuilder + ?Sized>(g: &mut G, a: Wire, b: Wire, c: Wire) -> (Wire, Wire) {
    let t = g.xor(a, b);
    let s = g.xor(t, c);
    let ab = g.and(a, b);
    let tc = g.and(t, c);
    (s, g.or(ab, tc))
}

/// Ripple-carry `a + b + cin` on equal-width bit vectors, modulo `2^len`.
fn ripple<G: GateBuilder + ?Sized>(g: &mut G, a: &[Wire], b: &[Wire], cin: Wire) -> Vec<Wire> {
    debug_assert_eq!(a.len(), b.len());
    let mut carry = cin;
    let mut out = Vec::with_capacity(a.len());
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        if i + 1 == a.len() {
            let t = g.xor(x, y);
            out.push(g.xor(t, carry));
        } else {
            let (s, c) = full_add(g, x, y, carry);
            out.push(s);
            carry = c;
        }
    }
    out
}

fn add_bits<G: GateBuilder + ?Sized>(g: &mut G, a: &[Wire], b: &[Wire], width: usize) -> Vec<Wire> {
    ripple(g, &resize(a, width), &resize(b, width), Wire::FALSE)
}

fn sub_bits<G: GateBuilder + ?Sized>(g: &mut G, a: &[Wire], b: &[Wire], width: usize) -> Vec<Wire> {
    let nb: Vec<Wire> = resize(b, width).into_iter().map(|w| !w).collect();
    ripple(g, &resize(a, width), &nb, Wire::TRUE)
}

/// Schoolbook signed product modulo `2^width`.
fn mul_bits<G: GateBuilder + ?Sized>(g: &mut G, a: &[Wire], b: &[Wire], width: usize) -> Vec<Wire> {
    let b = resize(b, width);
    let mut acc = vec![Wire::FALSE; width];
    for (i, &ai) in a.iter().enumerate().take(width) {
        // The row a_i * b, shifted by i; only bits i.. are affected.
        let row: Vec<Wire> = b[..width - i].iter().map(|&bj| g.and(ai, bj)).collect();
        let sum = if i + 1 == a.len() {
            // The sign bit of a has weight -2^i.
            let neg: Vec<Wire> = row.iter().map(|&w| !w).collect();
            ripple(g, &acc[i..], &neg, Wire::TRUE)
        } else {
            ripple(g, &acc[i..], &row, Wire::FALSE)
        };
        acc.splice(i.., sum);
    }
    acc
}

fn checked(lo: i64, hi: i64, width: usize, operands: [&IntBundle; 2]) -> Result<()> {
    let needed = bits_for(lo, hi);
    if operands.iter().any(|o| o.wrapped) || needed > width || width > 62 {
        return Err(Error::WidthPlan { lo, hi, needed, width });
    }
    Ok(())
}

fn mul_range(a: &IntBundle, b: &IntBundle) -> (i64, i64) {
    let c = [a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi];
    (*c.iter().min().unwrap(), *c.iter().max().unwrap())
}

/// `a + b` at `width` bits; errors unless the result provably fits.
pub fn add<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, width: usize) -> Result<IntBundle> {
    let (lo, hi) = (a.lo + b.lo, a.hi + b.hi);
    checked(lo, hi, width, [a, b])?;
    Ok(IntBundle { bits: add_bits(g, &a.bits, &b.bits, width), lo, hi, wrapped: false })
}

/// `a - b` at `width` bits; errors unless the result provably fits.
pub fn sub<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, width: usize) -> Result<IntBundle> {
    let (lo, hi) = (a.lo - b.hi, a.hi - b.lo);
    checked(lo, hi, width, [a, b])?;
    Ok(IntBundle { bits: sub_bits(g, &a.bits, &b.bits, width), lo, hi, wrapped: false })
}

/// `a * b` at `width` bits; errors unless the result provably fits.
pub fn mul<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, width: usize) -> Result<IntBundle> {
    let (lo, hi) = mul_range(a, b);
    checked(lo, hi, width, [a, b])?;
    Ok(IntBundle { bits: mul_bits(g, &a.bits, &b.bits, width), lo, hi, wrapped: false })
}

/// Width for a wrapping result: exact if the interval fits under `cap`.
fn plan(lo: i64, hi: i64, cap: usize, operands: [&IntBundle; 2]) -> Option<usize> {
    let exact = !operands.iter().any(|o| o.wrapped) && bits_for(lo, hi) <= cap;
    exact.then(|| bits_for(lo, hi))
}

fn finish(bits: Vec<Wire>, lo: i64, hi: i64, exact: bool) -> IntBundle {
    if exact {
        IntBundle { bits, lo, hi, wrapped: false }
    } else {
        IntBundle::wrapped_at(bits)
    }
}

/// `a + b` using the narrowest width that holds the result interval, or
/// `cap` bits modulo `2^cap` when the interval does not fit.
///
/// Arithmetic modulo `2^cap` is a ring homomorphism, so a chain of wrapping
/// operations still yields the exact result whenever that result fits in
/// `cap` bits.
pub fn add_wrapping<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, cap: usize) -> IntBundle {
    let (lo, hi) = (a.lo.saturating_add(b.lo), a.hi.saturating_add(b.hi));
    let w = plan(lo, hi, cap, [a, b]);
    finish(add_bits(g, &a.bits, &b.bits, w.unwrap_or(cap)), lo, hi, w.is_some())
}

pub fn sub_wrapping<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, cap: usize) -> IntBundle {
    let (lo, hi) = (a.lo.saturating_sub(b.hi), a.hi.saturating_sub(b.lo));
    let w = plan(lo, hi, cap, [a, b]);
    finish(sub_bits(g, &a.bits, &b.bits, w.unwrap_or(cap)), lo, hi, w.is_some())
}

pub fn mul_wrapping<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle, b: &IntBundle, cap: usize) -> IntBundle {
    let (lo, hi) = mul_range(a, b);
    let w = plan(lo, hi, cap, [a, b]);
    finish(mul_bits(g, &a.bits, &b.bits, w.unwrap_or(cap)), lo, hi, w.is_some())
}

/// OR of all bits. For a nonnegative bundle this is the test `value != 0`.
pub fn is_nonzero<G: GateBuilder + ?Sized>(g: &mut G, a: &IntBundle) -> Wire {
    g.or_reduce(&a.bits)
}

pub fn bool_and<G: GateBuilder + ?Sized>(g: &mut G, a: Wire, b: Wire) -> Wire {
    g.and(a, b)
}

pub fn bool_or<G: GateBuilder + ?Sized>(g: &mut G, a: Wire, b: Wire) -> Wire {
    g.or(a, b)
}
