//! Exact computation in subregular J-rings of Coxeter systems, in path algebras
//! of double quivers modulo evaluation ideals, and in their representations.
//!
//! The modules build on each other from the bottom up:
//!
//! - [`diagram`]: Coxeter diagrams, words, rigidity and the subregular cell.
//! - [`jring`]: the ring `J_C` in its `t_w` basis.
//! - [`quiver`]: generalized double quivers and unbraided paths.
//! - [`rewrite`]: polynomial families, relations, normal forms and the map `phi`.
//! - [`contract`]: quiver contraction, cores and presentations.
//! - [`rep`]: representations over exact fields.
//! - [`classify`]: the semisimplicity / boundedness verdict for a diagram.
//! - [`format`]: the JSON file formats shared with the command-line tool.
//!
//! ```
//! use jring::diagram::{CoxeterDiagram, Weight};
//! use jring::jring::{mul, JElement};
//!
//! let d = CoxeterDiagram::new(
//!     ["a", "b", "c"],
//!     [("a", "b", Weight::Finite(3)), ("a", "c", Weight::Finite(4)), ("b", "c", Weight::Finite(5))],
//! )
//! .unwrap();
//! let x = JElement::basis(d.parse_word("abcb").unwrap());
//! let y = JElement::basis(d.parse_word("bcbcac").unwrap());
//! let xy = mul(&x, &y, &d).unwrap();
//! assert_eq!(xy, JElement::basis(d.parse_word("abcac").unwrap()));
//! assert!(mul(&y, &x, &d).unwrap().is_zero());
//! ```

pub mod classify;
pub mod contract;
pub mod diagram;
pub mod format;
pub mod jring;
pub mod quiver;
pub mod rep;
pub mod rewrite;

mod parallel;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/diagrams.md")]
    mod diagrams {}
    #[doc = include_str!("../../../book/src/jring.md")]
    mod jring {}
    #[doc = include_str!("../../../book/src/quivers.md")]
    mod quivers {}
    #[doc = include_str!("../../../book/src/contraction.md")]
    mod contraction {}
    #[doc = include_str!("../../../book/src/representations.md")]
    mod representations {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
