//! Cellular automata generated by idempotents on full shifts.
//!
//! A CA `G` with `G ∘ G = G` is idempotent. A CA on `S^Z` is a product of
//! idempotents exactly when, for every `n`, mapping the points of least
//! period `n` onto themselves forces it to fix them, and surjectivity forces
//! it to be the identity. This crate provides the pieces needed to work with
//! that characterization on concrete rules:
//!
//! * [`ca`]: rule tables, composition, powers, equality and the structural
//!   predicates (idempotency, spreading states, ...).
//! * [`language`]: de Bruijn graph deciders for surjectivity and
//!   preinjectivity, orphans, diamonds, and word counts of one-word SFTs.
//! * [`periodic`]: the sets `Q_n` and the periodic-point condition.
//! * [`finite`]: idempotent factorizations of finite maps and of
//!   shift-equivariant maps on periodic points, plus a brute-force monoid oracle.
//! * [`eraser`]: the idempotent non-surjective CA that erases a diamond.
//! * [`marker`]: a marker CA with the spacing and coverage guarantees.
//! * [`coding`]: unbordered words, capacity thresholds and block coding.
//! * [`membership`]: the verdict engine combining all of the above.
//!
//! The `book/` directory of the repository walks through each of these with
//! runnable examples; those chapters are compiled as doctests of this crate.

pub mod budget;
pub mod ca;
pub mod coding;
pub mod cyclic;
pub mod eraser;
pub mod error;
pub mod finite;
pub mod language;
pub mod marker;
pub mod membership;
pub mod periodic;
pub mod rulefile;
pub mod word;

pub use budget::Budget;
pub use ca::{Ca, CellularAutomaton, ProceduralCA, RuleTableCA};
pub use cyclic::CyclicWord;
pub use error::{Error, Result};
pub use word::{Alphabet, Symbol, Word};

#[cfg(doctest)]
mod book {
    macro_rules! chapters {
        ($($name:ident => $file:literal),* $(,)?) => {
            $(
                #[doc = include_str!(concat!("../../../book/src/", $file))]
                mod $name {}
            )*
        };
    }

    chapters! {
        introduction => "introduction.md",
        rules => "rules.md",
        garden_of_eden => "garden-of-eden.md",
        periodic => "periodic.md",
        finite => "finite.md",
        eraser => "eraser.md",
        marker => "marker.md",
        coding => "coding.md",
        membership => "membership.md",
        cli => "cli.md",
    }
}
