//! Layered dot-bracket rendering.
//!
//! Pairs on the first layer render as `()`, then `[]`, `{}`, `<>`. A
//! two-page assignment maps directly onto the first two layers; structures
//! with richer crossing patterns get a deterministic first-fit layering.
//! Anything needing more than four layers cannot be rendered and callers
//! fall back to the pair-list format.

use crate::planarity::{Page, PageAssignment};
use crate::structure::{BasePair, SecondaryStructure};

pub const LAYER_BRACKETS: [(char, char); 4] = [('(', ')'), ('[', ']'), ('{', '}'), ('<', '>')];

/// First-fit layering: pairs in ascending order each take the smallest
/// layer on which they cross nothing placed earlier.
pub fn assign_layers(structure: &SecondaryStructure) -> Vec<(BasePair, usize)> {
    let mut layers: Vec<Vec<BasePair>> = Vec::new();
    let mut out = Vec::with_capacity(structure.len());
    for &pair in structure.pairs() {
        let layer = layers
            .iter()
            .position(|placed| placed.iter().all(|other| !pair.crosses(other)))
            .unwrap_or_else(|| {
                layers.push(Vec::new());
                layers.len() - 1
            });
        layers[layer].push(pair);
        out.push((pair, layer));
    }
    out
}

/// Layers from a two-page assignment: above is layer 0, below layer 1.
pub fn layers_from_pages(assignment: &PageAssignment) -> Vec<(BasePair, usize)> {
    assignment
        .pages
        .iter()
        .map(|&(pair, page)| (pair, if page == Page::Above { 0 } else { 1 }))
        .collect()
}

/// Render a layered structure over `n` positions, or `None` when more than
/// four layers are needed.
pub fn format_dotbracket(n: usize, layered: &[(BasePair, usize)]) -> Option<String> {
    let mut chars = vec!['.'; n];
    for &(pair, layer) in layered {
        let (open, close) = LAYER_BRACKETS.get(layer)?;
        chars[pair.i - 1] = *open;
        chars[pair.j - 1] = *close;
    }
    Some(chars.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planarity::page_assignment;
    use crate::seq::parse_sequence;
    use crate::structure::SecondaryStructure;

    fn structure(seq: &str, pairs: &[(usize, usize)]) -> SecondaryStructure {
        let s = parse_sequence(seq).unwrap();
        SecondaryStructure::new(&s, pairs.iter().map(|&(i, j)| BasePair { i, j })).unwrap()
    }

    #[test]
    fn nested_single_layer() {
        let st = structure("AAGUU", &[(1, 5), (2, 4)]);
        let layered = assign_layers(&st);
        assert_eq!(format_dotbracket(5, &layered).unwrap(), "((.))");
    }

    #[test]
    fn empty_structure() {
        let st = SecondaryStructure::empty(4);
        assert_eq!(format_dotbracket(4, &assign_layers(&st)).unwrap(), "....");
    }

    #[test]
    fn crossing_pairs_use_two_layers() {
        let st = structure("AAGAAUUGUU", &[(1, 7), (4, 10)]);
        let pages = page_assignment(&st).unwrap();
        let layered = layers_from_pages(&pages);
        assert_eq!(format_dotbracket(10, &layered).unwrap(), "(..[..)..]");
        // First-fit layering agrees here.
        assert_eq!(
            format_dotbracket(10, &assign_layers(&st)).unwrap(),
            "(..[..)..]"
        );
    }

    #[test]
    fn too_many_layers_reported() {
        // Five mutually crossing pairs need five layers.
        let st = structure("AAAAAUUUUU", &[(1, 6), (2, 7), (3, 8), (4, 9), (5, 10)]);
        assert_eq!(format_dotbracket(10, &assign_layers(&st)), None);
    }
}
