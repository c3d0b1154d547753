//! Upper bounds on the value set |f(F_q^n)| of a polynomial self-map of a
//! finite-field vector space, computed and verified exactly.
//!
//! The pieces:
//!
//! - [`fields`]: F_q = F_{p^e} and tower extensions F_{q^n}, with
//!   deterministic irreducible-modulus selection.
//! - [`poly`]: sparse multivariate polynomials, a text parser, and the
//!   encoding of a map f = (f_1, ..., f_n) as a single polynomial
//!   g = sum f_i e_i over F_{q^n}.
//! - [`polytope`]: Newton polytopes, exact rational gauges via an
//!   all-rational simplex, and the dilation invariant (the least k such
//!   that k times the polytope contains a strictly positive lattice
//!   point), plus an independent brute-force oracle for it.
//! - [`padic`]: truncated unramified p-adic rings, Teichmueller lifts,
//!   power sums S_k, and the invariant U (first k with S_k nonzero mod
//!   p^(1 + v_p(k))).
//! - [`valueset`]: brute-force value-set enumeration, the bound
//!   q^n - min{q, mu (q-1)} and its degree-only and U-based companions,
//!   sharp families, variety valuation checks, and seeded random sweeps.
//! - [`svg`]: deterministic 2D figures of polytopes and their dilations.
//! - [`cli`]: the `vsbound` binary (mu, verify, u-invariant, valueset,
//!   sweep, polytope-svg, variety-check).
//!
//! Every runnable capability has a worked example under `examples/`; start
//! with `cargo run -p vsbound --example figure_polytopes`.

pub mod cli;
pub mod fields;
pub mod padic;
pub mod poly;
pub mod polytope;
pub mod rational;
pub mod ring;
mod simplex;
pub mod svg;
pub mod valueset;

pub use fields::{make_field, make_tower, FFElement, FieldSpec, TowerElement, TowerSpec};
pub use padic::{charsum_oracle, compute_u, power_sum, UResult, WittElem, WittRing};
pub use poly::{construct_g, parse_poly, parse_vector, Monomial, MultiPoly, PolyVector};
pub use polytope::{newton_polytope, newton_polytope_of, LatticePolytope, MuResult};
pub use rational::ExtRat;
pub use ring::Ring;
pub use valueset::{
    bound_from_u, bound_mww, bound_polytope, bound_univariate, value_set_size, variety_ord_check,
    verify_bounds, BoundsReport, VerifyOptions,
};
