//! Building blocks for growing a target-language wordnet on top of a
//! source-language wordnet skeleton.
//!
//! The stages are: merge bilingual dumps into one translation map
//! ([`bilingual`]), attach target words to synsets by translation classes
//! ([`linker`]), tag dictionary definitions with semantic primitives
//! ([`semtag`]), grow per-primitive sense taxonomies ([`taxonomy`]), and
//! fill skeleton gaps by matching taxonomy edges against the skeleton
//! ([`merger`]). [`pipeline`] drives them over files on disk.

pub mod bilingual;
pub mod error;
pub mod fixture;
pub mod graph;
pub mod linker;
pub mod merger;
pub mod pipeline;
pub mod semtag;
pub mod taxonomy;
pub mod text;

pub use error::{Error, Result};
