//! Exact torus-equivariant localization.
//!
//! A Hamiltonian torus action on a compact symplectic manifold is described
//! entirely by its fixed-point data: moment values and tangent (or normal)
//! weights at each fixed component. From that data this crate evaluates
//! equivariant integrals by summing fixed-point contributions in
//! ℚ[t0, …, t{r-1}] and insists that the poles cancel.
//!
//! ```
//! use equiloc::{builtin_cpn, power_integral, Polynomial};
//!
//! // ∫_{CP^3} c1(O(1))^3 = 1
//! let cp3 = builtin_cpn(3).unwrap();
//! assert_eq!(power_integral(&cp3, 3).unwrap(), Polynomial::one(4));
//! ```

pub mod charclass;
pub mod exactalg;
pub mod localize;
pub mod model;
pub mod oracle;

pub use charclass::{
    chern_restriction, component_contribution, elementary_symmetric, euler_class_at, inverse_euler_component,
    ClassError, Truncated, TruncatedClass,
};
pub use exactalg::{
    format_rational, parse_polynomial, parse_rational, AlgebraError, LinFactoredRational, LinearForm, Monomial,
    Polynomial, Rational,
};
pub use localize::{
    dh_closed_form, dh_series, dh_volume, euler_characteristic, load_class_file, localize, power_integral,
    EquivariantIntegrand, LocalizationResult, LocalizeError,
};
pub use model::{
    builtin_cpn, builtin_gaussian, builtin_s2, load_model, product, render_model, subtorus_restrict, FixedComponent,
    FixedLocus, FixedPoint, ModelError, NormalWeight, TorusModel,
};
pub use oracle::{
    lagrange_power_sum, rat_equal_by_evaluation, s2_area_quadrature, sum_equal_by_evaluation, vandermonde_det,
    OracleError,
};
