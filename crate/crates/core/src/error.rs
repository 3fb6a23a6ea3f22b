use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate identifier `{0}`")]
    Duplicate(String),
    #[error("identity `{arrow}` for object `{object}` is not an endomorphism of it")]
    BadIdentity { object: String, arrow: String },
    #[error("object `{0}` has no identity")]
    MissingIdentity(String),
    #[error("missing composite of `{g}` after `{f}`")]
    MissingComposite { g: String, f: String },
    #[error("composite given for non-composable pair `{g}` after `{f}`")]
    NotComposable { g: String, f: String },
    #[error("composite of `{g}` after `{f}` is `{gf}`, which has the wrong domain or codomain")]
    CompositeShape { g: String, f: String, gf: String },
    #[error("identity law fails at `{0}`")]
    IdentityLawViolation(String),
    #[error("associativity fails at `{h}`, `{g}`, `{f}`")]
    NonAssociative { h: String, g: String, f: String },
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("diagram is not functorial: {0}")]
    NonFunctorialDiagram(String),
    #[error("not a cone: {0}")]
    NotACone(String),
    #[error("bounded free category: composite of `{g}` after `{f}` exceeds length {bound}")]
    BoundExceeded { g: String, f: String, bound: usize },
    #[error("invalid presentation: {0}")]
    PresentationInvalid(String),
    #[error("negative degree {degree} for object `{object}`")]
    NegativeDegree { object: String, degree: i64 },
    #[error("Reedy structure violation: {0}")]
    StructureViolation(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("lift search exceeded the cap of {0} nodes")]
    SizeCapExceeded(usize),
    #[error("no lift exists: {0}")]
    NoLift(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("i/o error on `{path}`: {msg}")]
    Io { path: String, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
