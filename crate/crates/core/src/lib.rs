//! Exact computations with finitely presented OI-modules over a field.
//!
//! OI is the category of finite totally ordered sets `[n] = {1, ..., n}` and
//! strictly increasing maps. A module over OI is presented here as a free
//! module `F = M(d_1) ⊕ ... ⊕ M(d_k)` modulo the submodule `W` generated by a
//! finite list of homogeneous relations. Everything is computed degreewise with
//! exact linear algebra over ℚ or a prime field.
//!
//! Module map:
//!
//! * [`combinatorics`]: increasing maps, enumeration, ranking and the map
//!   transforms used by the shift functor.
//! * [`field`] and [`linalg`]: exact scalars, row reduction and subspaces.
//! * [`module`]: free modules, elements, presentations and degreewise
//!   evaluation.
//! * [`homology`]: `H_0`, `H_1`, higher homology windows, semi-induced
//!   certification.
//! * [`functors`]: shift, `κ`/`Δ`, the quotient `V̄` and its certification.
//! * [`bounds`]: regularity bounds, Hilbert polynomial fitting, stable degree.
//!
//! ```
//! use oi_core::functors::check_kappa_vbar;
//! use oi_core::homology::{t0, t1};
//! use oi_core::module::Presentation;
//!
//! let p = Presentation::from_json(r#"{"field":{"kind":"rationals"},"generators":[1],
//!     "relations":[{"degree":2,"terms":[{"gen":0,"map":[1],"coeff":"1"}]}]}"#)?;
//! assert_eq!((t0(&p)?, t1(&p)?), (1, 2));
//! assert!(check_kappa_vbar(&p, 2, 10, false)?.pass);
//! # Ok::<(), oi_core::OiError>(())
//! ```

pub mod bounds;
pub mod combinatorics;
pub mod error;
pub mod field;
pub mod functors;
pub mod homology;
pub mod linalg;
pub mod module;

use std::sync::atomic::{AtomicUsize, Ordering};

pub use error::{OiError, Result};

/// Default limit on the degree `n` of any `[n]` the engine will enumerate.
pub const DEFAULT_DEGREE_CAP: usize = 64;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Current global degree cap.
pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

/// Replaces the global degree cap. Returns the previous value.
pub fn set_degree_cap(cap: usize) -> usize {
    DEGREE_CAP.swap(cap, Ordering::Relaxed)
}

pub(crate) fn check_degree(degree: usize) -> Result<()> {
    let cap = degree_cap();
    if degree > cap {
        Err(OiError::DegreeCap { degree, cap })
    } else {
        Ok(())
    }
}
