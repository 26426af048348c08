use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("input error: {0}")]
    Input(String),
    #[error("variable lists differ: [{left}] vs [{right}]")]
    VarMismatch { left: String, right: String },
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

impl PolyError {
    pub fn input(msg: impl Into<String>) -> Self {
        PolyError::Input(msg.into())
    }

    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        PolyError::Parse {
            line,
            msg: msg.into(),
        }
    }
}
