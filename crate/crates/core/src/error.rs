use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("bracket index must be positive, got {0}")]
    NonPositiveBracket(i64),
    #[error("pretzel parameter list must have odd length, got {0}")]
    EvenArity(usize),
    #[error("expected a nonzero polynomial")]
    ZeroPolynomial,
    #[error("polynomial still has a cyclotomic factor (index {0})")]
    CyclotomicFactor(u64),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("the pretzel parameter s must be at least 3, got {0}")]
    SmallS(i64),
    #[error("surgery coefficients must be coprime positive integers, got p={p} q={q}")]
    BadSlope { p: i64, q: i64 },
    #[error("word contains generator k where only c, l are allowed")]
    UnexpectedK,
    #[error("invalid letter position {pos} in a word of length {len}")]
    BadPosition { pos: usize, len: usize },
    #[error("invalid cyclic shift {shift} for a relator of length {len}")]
    BadShift { shift: usize, len: usize },
    #[error("syntax error in word literal at byte {at}: {msg}")]
    WordSyntax { at: usize, msg: String },
}
