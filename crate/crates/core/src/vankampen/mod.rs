//! Seifert-van Kampen verification.
