use thiserror::Error;

/// Errors shared by every category instance and the bundle machinery.
///
/// Validation problems in user data (a square that fails to commute, a
/// morphism outside its hom-set) are reported through [`crate::report::Report`]
/// findings, not through this type. `Error` is reserved for conditions that
/// make an operation impossible to carry out at all.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("morphisms are not composable: {0}")]
    NonComposable(String),

    #[error("values belong to different category instances: {0}")]
    InstanceMismatch(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),

    #[error("universe too large: {candidates} candidates exceed the cap of {cap}")]
    UniverseTooLarge { candidates: u64, cap: u64 },

    #[error("enumeration explosion: {candidates} candidates exceed the cap of {cap}")]
    ExplosionGuard { candidates: u64, cap: u64 },

    #[error("hom-sets of this instance cannot be enumerated: {0}")]
    HomNotEnumerable(String),

    #[error("the instance cannot represent the image object: {0}")]
    NoImage(String),

    #[error("zero objects are not available in this instance: {0}")]
    ZeroUnsupported(String),

    #[error("subobject preorder is not available in this instance: {0}")]
    SubobjectsUnsupported(String),

    #[error("kernels are not supported here: {0}")]
    KernelsUnsupported(String),

    #[error("cokernels are not supported here: {0}")]
    CokernelsUnsupported(String),

    #[error("products are not supported here: {0}")]
    ProductsUnsupported(String),

    #[error("bundle morphisms do not share the required source: {0}")]
    SourceMismatch(String),

    #[error("functor does not apply to this value: {0}")]
    FunctorDomainMismatch(String),

    #[error("image is not spanned by basis elements at grade {grade}")]
    ImageNotBasisAligned { grade: usize },

    #[error("malformed chain bundle: {0}")]
    BundleStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
