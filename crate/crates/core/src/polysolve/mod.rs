//! Exact polynomial toolkit: trigonometric polynomials and their tan-half
//! form, Sylvester resultants and real-root isolation.

mod modular;

pub mod bipoly;
pub mod numbers;
pub mod resultant;
pub mod system;
pub mod roots;
pub mod trig;
pub mod unipoly;

pub use bipoly::{BiPoly, FloatBiPoly};
pub use resultant::{sylvester_resultant, ResultantMethod};
pub use roots::{count_real_roots, real_roots, RealRoot};
pub use trig::{trig_to_bipoly, TrigPoly};
pub use unipoly::UniPoly;
pub use system::{solve_trig_pair, PairOptions, PairReport, PairRoot};
