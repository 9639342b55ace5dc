//! Languages of images and of one-word shifts of finite type.
//!
//! Surjectivity is decided on the image automaton (the de Bruijn graph read
//! over output labels), preinjectivity on the product of the de Bruijn graph
//! with itself. By the Garden of Eden theorem the two answers coincide;
//! [`moore_myhill_crosscheck`] computes both independently.

mod avoid;
mod debruijn;
mod diamond;
mod image;

pub use avoid::{count_avoiding, is_mixing_avoid, AvoidAutomaton};
pub use debruijn::DeBruijnGraph;
pub use diamond::{find_diamond, is_preinjective, Diamond};
pub use image::{find_orphan, is_orphan, is_surjective, ImageAutomaton, SubsetAutomaton};

use crate::budget::Budget;
use crate::ca::RuleTableCA;
use crate::error::Result;
use crate::word::Word;

pub fn build_image_automaton(ca: &RuleTableCA, budget: Budget) -> Result<ImageAutomaton> {
    ImageAutomaton::new(ca, budget)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GardenOfEdenReport {
    pub surjective: bool,
    pub preinjective: bool,
    pub orphan: Option<Word>,
    pub diamond: Option<Diamond>,
}

impl GardenOfEdenReport {
    pub fn consistent(&self) -> bool {
        self.surjective == self.preinjective
            && self.orphan.is_none() == self.surjective
            && self.diamond.is_none() == self.preinjective
    }
}

/// Runs both deciders and collects their witnesses.
pub fn moore_myhill_crosscheck(ca: &RuleTableCA, budget: Budget) -> Result<GardenOfEdenReport> {
    let image = ImageAutomaton::new(ca, budget)?;
    let orphan = image.find_orphan()?;
    let diamond = find_diamond(ca, budget)?;
    Ok(GardenOfEdenReport {
        surjective: orphan.is_none(),
        preinjective: is_preinjective(ca, budget)?,
        orphan,
        diamond,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ca::CellularAutomaton;
    use crate::word::Alphabet;

    #[test]
    fn crosscheck_examples() {
        let xor = moore_myhill_crosscheck(&RuleTableCA::elementary(102), Budget::DEFAULT).unwrap();
        assert!(xor.surjective && xor.preinjective && xor.consistent());
        let and = moore_myhill_crosscheck(&RuleTableCA::elementary(136), Budget::DEFAULT).unwrap();
        assert!(!and.surjective && !and.preinjective && and.consistent());
        assert_eq!(and.orphan.unwrap().symbols(), &[1, 0, 1]);
    }

    /// Surjective rules map the `k^(n+2)` words of length `n + 2` onto the
    /// words of length `n`, each hit exactly `k^2` times.
    #[test]
    fn garden_of_eden_for_all_eca() {
        let mut surjective = 0;
        for rule in 0..=255u8 {
            let ca = RuleTableCA::elementary(rule);
            let report = moore_myhill_crosscheck(&ca, Budget::DEFAULT).unwrap();
            assert!(report.consistent(), "rule {rule}");
            let balanced = (1..=6).all(|n| {
                let mut hits = vec![0usize; 1 << n];
                for w in Alphabet::BINARY.words(n + 2) {
                    hits[Alphabet::BINARY.index_of(&ca.apply_to_word(&w).unwrap())] += 1;
                }
                hits.iter().all(|&h| h == 4)
            });
            assert_eq!(balanced, report.surjective, "rule {rule}");
            surjective += report.surjective as usize;
        }
        // identity, shifts, complements and the additive rules
        assert_eq!(surjective, 30);
    }

    #[test]
    fn image_automaton_examples() {
        let zero = build_image_automaton(&RuleTableCA::elementary(0), Budget::DEFAULT).unwrap();
        for len in 1..=6 {
            for w in Alphabet::BINARY.words(len) {
                assert_eq!(zero.accepts(&w), w.iter().all(|&a| a == 0));
            }
        }
        let id = build_image_automaton(&RuleTableCA::elementary(204), Budget::DEFAULT).unwrap();
        assert!(Alphabet::BINARY.words(8).all(|w| id.accepts(&w)));
        let and = build_image_automaton(&RuleTableCA::elementary(136), Budget::DEFAULT).unwrap();
        assert!(!and.accepts(&[1, 0, 1]));
    }

    #[test]
    fn count_examples() {
        let k2 = Alphabet::BINARY;
        assert_eq!(count_avoiding(k2, &[], 4).unwrap(), 16u32.into());
        assert_eq!(
            count_avoiding(k2, &[Word(vec![1, 1])], 4).unwrap(),
            8u32.into()
        );
        assert_eq!(
            count_avoiding(k2, &[Word(vec![0]), Word(vec![1])], 1).unwrap(),
            0u32.into()
        );
    }
}
