//! Chain bundles over concrete finite categories.
//!
//! A chain bundle is a finite descending sequence of objects ending at a
//! designated base, with a chosen *set* of morphisms at each level rather
//! than a single one. This crate provides:
//!
//! * a finite-category kernel ([`category`]) with composition, hom-set
//!   enumeration, morphism classification, subobject preorders and canonical
//!   epi-inclusion factorization;
//! * concrete instances ([`instances`]): finite cyclic groups with their
//!   subgroups, integer submodules with tuple products, pointed finite sets,
//!   plain finite sets, the augmented simplex category, directed-graph path
//!   categories with their own bundle notion, and free abelian groups with
//!   labeled bases;
//! * the chain-bundle layer ([`bundle`]): validation, bundle morphisms with
//!   commuting-square checks, factorization, products, kernels, cokernels,
//!   chain extraction and functor application;
//! * simplicial machinery ([`simplicial`]): complexes, integer chain
//!   complexes with boundary matrices, induced chain maps and their
//!   factorization through image subcomplexes.
//!
//! Everything is exact: integers and rationals only, no floating point. All
//! values are immutable after construction and every operation is a pure
//! function of its inputs, so concurrent read-only use is safe. Exhaustive
//! searches run in a documented canonical order and are guarded by
//! [`limits::Limits`].

pub mod bundle;
pub mod category;
pub mod error;
pub mod functor;
pub mod instances;
pub mod limits;
pub mod matrix;
pub mod report;
pub mod simplicial;

pub use bundle::{
    apply_functor_to_bundle, apply_functor_to_bundle_morphism, compose_bundle_morphisms,
    cokernel_of_bundle_morphism, enumerate_bundle_morphisms, extract_chains,
    factorize_bundle_morphism, identity_bundle_morphism, is_subbundle,
    kernel_of_bundle_morphism, pair_bundle_morphisms, product_bundles, validate_bundle,
    validate_bundle_morphism, verify_kernel_universal_property, verify_pairing_unique,
    zero_bundle_morphism, AssignmentSpec, BundleCategory, BundleFactorization, BundleMorphism,
    BundleProduct, Chain, ChainBundle, ChainMode, LevelSet,
};
pub use category::{
    classify_by_enumeration, has_image, Category, Factorization, ImageCheck, Morphism,
    MorphismClass, ProductData, QuotientWitness, SubobjectWitness, Universe,
};
pub use error::{Error, Result};
pub use functor::{verify_universal_arrow, Functor, IdFunctor};
pub use limits::Limits;
pub use report::{Finding, Report};
