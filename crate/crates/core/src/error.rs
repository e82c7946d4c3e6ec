use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid weight literal {0:?}")]
    InvalidWeight(String),

    #[error("malformed graph document: {0}")]
    MalformedDocument(String),

    #[error("graph must have at least one vertex")]
    NoVertices,

    #[error("edge {edge}: endpoint {vertex} out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),

    #[error("empty {0}")]
    Empty(&'static str),

    #[error("q = 0 is not a valid evaluation point for the reduction formulas")]
    InvalidQ,

    /// The series denominator `prod(v_i + q) - prod(v_i)` vanished.
    #[error("singular point at q = {q}{}", fmt_terminals(.terminals))]
    SingularPoint {
        q: String,
        terminals: Option<(usize, usize)>,
    },

    #[error(
        "graph is not series-parallel: degree-2 reduction stalls with {residual_vertices} vertices and {residual_edges} edges remaining"
    )]
    NotSeriesParallel {
        residual_vertices: usize,
        residual_edges: usize,
    },

    #[error("graph is not connected")]
    Disconnected,

    #[error("edge {0} is a self-loop")]
    SelfLoop(usize),

    #[error("input too large: {what} = {actual} exceeds the limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: u128,
        limit: u128,
    },

    #[error("interpolation failed: {0}")]
    InterpolationFailure(String),
}

fn fmt_terminals(terminals: &Option<(usize, usize)>) -> String {
    match terminals {
        Some((s, t)) => format!(" (series node between vertices {s} and {t})"),
        None => String::new(),
    }
}

impl Error {
    pub fn is_singular(&self) -> bool {
        matches!(self, Error::SingularPoint { .. })
    }
}
