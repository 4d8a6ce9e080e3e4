//! Quantified syllogistic reasoning: classical moods, interval and fuzzy
//! syllogisms, a finite-model oracle and the compatibility analysis between
//! them.

pub mod aristotle;
pub mod compat;
pub mod dsl;
pub mod dubois;
pub mod fuzzy_number;
pub mod interval;
pub mod oracle;
pub mod zadeh;
