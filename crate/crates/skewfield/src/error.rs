use thiserror::Error;

/// Malformed or inadmissible input; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("cannot read {0}: {1}")]
    Io(String, String),
    #[error("{0}")]
    Invalid(String),
    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: skewfield_core::Error,
    },
}

impl InputError {
    /// Wraps a core error with what was being loaded.
    pub fn core(context: impl Into<String>) -> impl FnOnce(skewfield_core::Error) -> InputError {
        let context = context.into();
        move |source| InputError::Core { context, source }
    }
}
