//! Exact scalars: the base fields `Q` and `F_p`, the quadratic extensions
//! `K(sqrt d)`, and the square-class / cube-class tests the conjugacy
//! criteria are phrased in.

mod field;
mod prime;
mod quadext;
mod rational;

use alloc::vec;

pub use field::{Field, FieldKind};
pub use prime::{Fp, PrimeField};
pub use quadext::QuadExt;
pub use rational::{
    cubefree_part, cubefree_part_with_bound, factor, q, q_frac, squarefree_part,
    squarefree_part_with_bound, CubeFreeDecomp, SquareFreeDecomp, DEFAULT_TRIAL_BOUND, Q,
};

use crate::error::{Error, Result};

/// Whether `a / b` is a square in `K^*`.
pub fn same_square_class<F: Field>(a: &F, b: &F) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok((a.clone() / b.clone()).is_square())
}

/// A cube root of `x` in `K^*`, if there is one.
pub fn is_cube<F: Field>(x: &F) -> Result<Option<F>> {
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    Ok(x.cbrt())
}

/// Find `beta` in `K(sqrt d)` with `beta^3 = alpha`, for `alpha` of norm 1.
///
/// Any such `beta` also has norm 1, so `beta^2 = t*beta - 1` with
/// `t = trace(beta)`. Then `beta^3 = (t^2 - 1)*beta - t`, which forces
/// `t^3 - 3t = trace(alpha)` and `beta = (alpha + t)/(t^2 - 1)`. Every
/// candidate is checked by cubing before it is returned.
pub fn cube_root_norm_one<F: Field>(alpha: &QuadExt<F>) -> Result<Option<QuadExt<F>>> {
    if !alpha.norm().is_one() {
        return Err(Error::NormNotOne);
    }
    let ctx = alpha.x.ctx();
    let one = F::one(&ctx);
    let cubic = vec![
        -alpha.trace(),
        F::from_i64(&ctx, -3),
        F::zero(&ctx),
        one.clone(),
    ];
    for t in F::roots_of(&cubic, &ctx)? {
        let denom = t.square() - one.clone();
        let Some(denom_inv) = denom.inv() else {
            // t = +-1 only occurs for alpha = -+1, where t = -+2 also works.
            continue;
        };
        let beta = alpha.add_base(&t).scale(&denom_inv);
        if beta.cube() == *alpha {
            return Ok(Some(beta));
        }
    }
    Ok(None)
}
