//! Reference implementations that are deliberately independent of the main
//! code paths: a symbolic BCH expansion through free associative series, the
//! bigraded Witt dimension count for free Lie algebras, and small brute-force
//! enumerations. The main crates are tested against these, never the other
//! way around.

pub mod assoc;
pub mod bch_words;
pub mod brute;
pub mod witt;
