//! Realified complex linear algebra.
//!
//! A vector in ℂ^m is stored as a `DVector<f64>` of length 2m with interleaved
//! (re, im) pairs. The Euclidean dot product of realified vectors equals
//! Re⟨a, b⟩ for the Hermitian product ⟨a, b⟩ = Σ a_k conj(b_k).

use nalgebra::DVector;

/// Multiplication by i: (x, y) ↦ (-y, x) in every complex slot.
pub fn mul_i(v: &DVector<f64>) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for k in 0..v.len() / 2 {
        out[2 * k] = -v[2 * k + 1];
        out[2 * k + 1] = v[2 * k];
    }
    out
}

/// Hermitian product ⟨a, b⟩ = Σ a_k conj(b_k), returned as (re, im).
pub fn herm(a: &DVector<f64>, b: &DVector<f64>) -> (f64, f64) {
    debug_assert_eq!(a.len(), b.len());
    let mut re = 0.0;
    let mut im = 0.0;
    for k in 0..a.len() / 2 {
        let (ax, ay) = (a[2 * k], a[2 * k + 1]);
        let (bx, by) = (b[2 * k], b[2 * k + 1]);
        re += ax * bx + ay * by;
        im += ay * bx - ax * by;
    }
    (re, im)
}

/// |⟨a, b⟩| for the Hermitian product.
pub fn herm_abs(a: &DVector<f64>, b: &DVector<f64>) -> f64 {
    let (re, im) = herm(a, b);
    re.hypot(im)
}

/// Multiply every complex slot by the unit complex number (c, s) = c + is.
pub fn rotate(v: &DVector<f64>, c: f64, s: f64) -> DVector<f64> {
    let mut out = DVector::zeros(v.len());
    for k in 0..v.len() / 2 {
        let (x, y) = (v[2 * k], v[2 * k + 1]);
        out[2 * k] = c * x - s * y;
        out[2 * k + 1] = s * x + c * y;
    }
    out
}

/// Realify a list of complex pairs.
pub fn from_pairs(pairs: &[(f64, f64)]) -> DVector<f64> {
    let mut out = DVector::zeros(2 * pairs.len());
    for (k, &(re, im)) in pairs.iter().enumerate() {
        out[2 * k] = re;
        out[2 * k + 1] = im;
    }
    out
}

/// Embed a real m-vector into realified ℂ^m (imaginary parts zero).
pub fn from_real(parts: &[f64]) -> DVector<f64> {
    let mut out = DVector::zeros(2 * parts.len());
    for (k, &x) in parts.iter().enumerate() {
        out[2 * k] = x;
    }
    out
}

/// Gram-Schmidt step: remove from `w` its components along the (assumed
/// orthonormal) vectors in `basis`, in order.
pub fn project_out(w: &DVector<f64>, basis: &[DVector<f64>]) -> DVector<f64> {
    let mut out = w.clone();
    for b in basis {
        let c = out.dot(b);
        out.axpy(-c, b, 1.0);
    }
    out
}
