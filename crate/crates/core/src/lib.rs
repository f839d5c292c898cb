//! Multiple zeta-star values of infinite indices and the map
//! `Z*(sum_j 2^-(k_1 + ... + k_j)) = zeta*(k_1 + 1, k_2, ...)`.

pub mod closed_form;
pub mod digits;
pub mod dyadic;
pub mod error;
pub mod format;
pub mod index;
pub mod series;
pub mod verify;
pub mod zstar;

pub use digits::DigitStream;
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use index::{Index, PointValue, Tail};
pub use series::{Evaluation, Method, TruncationParams};
pub use zstar::{DerivativeReport, Side, ZPoint};
