//! Descent data over coverings and the stack verifier.
