//! The bundled sample lexicon and the golden clause corpus.

/// LEXF source of the sample lexicon.
pub const BUNDLED_LEXICON: &str = include_str!("../data/lexicon.lexf");

/// One `CLAUSE` line per example sentence, in corpus order.
pub const GOLDEN_CLAUSES: &str = include_str!("../data/golden.clauses");

/// Expected LCS per golden clause, `<label>\t<lcs>` per line.
pub const GOLDEN_LCS: &str = include_str!("../data/golden.lcs");

/// Non-comment, non-blank lines of a corpus file.
pub fn lines(text: &str) -> impl Iterator<Item = &str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

/// `(label, lcs)` pairs from [`GOLDEN_LCS`].
pub fn golden_lcs() -> Vec<(&'static str, &'static str)> {
    lines(GOLDEN_LCS)
        .filter_map(|l| l.split_once('\t'))
        .collect()
}
