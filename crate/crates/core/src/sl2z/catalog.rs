use std::collections::BTreeMap;

use super::MatSL2;

/// Named matrices used throughout: Stebe's pair, the `X_i`/`Y_i` pairs and
/// the lens-space gluings `Λ_i`.
///
/// `Y51` is reproduced as printed in the source; the literature notes a
/// misprint for that entry in an earlier reference.
pub fn named_matrices() -> BTreeMap<&'static str, MatSL2> {
    let table: [(&str, [[i64; 2]; 2]); 14] = [
        ("StebeG", [[188, 275], [121, 177]]),
        ("StebeH", [[188, 11], [3025, 177]]),
        ("X21", [[1, 21], [21, 442]]),
        ("Y21", [[106, 189], [189, 337]]),
        ("X51", [[1, 51], [51, 2602]]),
        ("Y51", [[562, 1071], [1071, 2041]]),
        ("X53", [[1, 53], [53, 2810]]),
        ("Y53", [[425, 1007], [1007, 2386]]),
        ("X55", [[1, 55], [55, 3026]]),
        ("Y55", [[881, 1375], [1375, 2146]]),
        ("Lambda1", [[7, -8], [1, -1]]),
        ("Lambda2", [[7, -4], [2, -1]]),
        ("Lambda8", [[65, 8], [8, 1]]),
        ("Lambda18", [[65, 18], [18, 5]]),
    ];
    table
        .into_iter()
        .map(|(k, rows)| (k, MatSL2::lit(rows)))
        .collect()
}

pub fn named(name: &str) -> Option<MatSL2> {
    named_matrices().remove(name)
}
