/// Lowercased word tokens.
///
/// Splits on Unicode whitespace and trims non-alphanumeric characters from
/// both ends of each piece, so `"Hello, world!"` gives `["hello", "world"]`
/// while `"don't"` and `"3.14"` keep their inner punctuation. Pieces that are
/// all punctuation vanish.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace()
        .map(|piece| piece.trim_matches(|c: char| !c.is_alphanumeric()))
        .filter(|piece| !piece.is_empty())
        .map(str::to_lowercase)
        .collect()
}
