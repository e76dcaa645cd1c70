//! Matrix exponential by scaling-and-squaring with a degree-13 diagonal
//! Padé approximant, scaling chosen from the 1-norm.

use num_complex::Complex64;

use crate::error::MatrixError;
use crate::matrix::ComplexMatrix;

/// Padé-13 numerator coefficients (Higham's b_j for the [13/13] approximant).
const PADE13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

/// 1-norm threshold above which the argument is scaled down.
const THETA13: f64 = 5.371920351148152;

pub fn expm(a: &ComplexMatrix) -> Result<ComplexMatrix, MatrixError> {
    let n = a.require_square()?;
    let norm = a.one_norm();
    if !norm.is_finite() {
        return Err(MatrixError::Overflow);
    }
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale_re(0.5_f64.powi(squarings as i32));

    let identity = ComplexMatrix::identity(n);
    let a2 = &scaled * &scaled;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;

    let b = |k: usize| Complex64::new(PADE13[k], 0.0);
    let u_inner = &(&a6.scale(b(13)) + &a4.scale(b(11))) + &a2.scale(b(9));
    let u_poly = &(&a6 * &u_inner)
        + &(&(&a6.scale(b(7)) + &a4.scale(b(5))) + &(&a2.scale(b(3)) + &identity.scale(b(1))));
    let u = &scaled * &u_poly;
    let v_inner = &(&a6.scale(b(12)) + &a4.scale(b(10))) + &a2.scale(b(8));
    let v = &(&a6 * &v_inner)
        + &(&(&a6.scale(b(6)) + &a4.scale(b(4))) + &(&a2.scale(b(2)) + &identity.scale(b(0))));

    // (V - U) F = (V + U)
    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut f = lhs.lu().map_err(|_| MatrixError::Overflow)?.solve(&rhs);
    for _ in 0..squarings {
        f = &f * &f;
    }
    if f.data().iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(MatrixError::Overflow);
    }
    Ok(f)
}
