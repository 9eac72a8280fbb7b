//! Documents shipped with the binary, addressable by file name.

const BUNDLED: &[(&str, &str)] = &[
    ("cube1.doc", include_str!("../../corpus/cube1.doc")),
    ("cube2.doc", include_str!("../../corpus/cube2.doc")),
    ("cube3.doc", include_str!("../../corpus/cube3.doc")),
    ("simplex1.doc", include_str!("../../corpus/simplex1.doc")),
    ("simplex2.doc", include_str!("../../corpus/simplex2.doc")),
    ("simplex3.doc", include_str!("../../corpus/simplex3.doc")),
    ("globe1.doc", include_str!("../../corpus/globe1.doc")),
    ("globe2.doc", include_str!("../../corpus/globe2.doc")),
    ("globe3.doc", include_str!("../../corpus/globe3.doc")),
    ("globe4.doc", include_str!("../../corpus/globe4.doc")),
    ("subdivision-left.doc", include_str!("../../corpus/subdivision-left.doc")),
    ("subdivision-right.doc", include_str!("../../corpus/subdivision-right.doc")),
    ("subdivision-left-v.doc", include_str!("../../corpus/subdivision-left-v.doc")),
    ("false-cycle.doc", include_str!("../../corpus/false-cycle.doc")),
];

/// Names of the bundled documents.
pub fn names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(n, _)| *n)
}

/// Looks up `name`, with or without the `.doc` suffix.
pub fn get(name: &str) -> Option<&'static str> {
    let key = name.strip_suffix(".doc").unwrap_or(name);
    BUNDLED
        .iter()
        .find(|(n, _)| n.strip_suffix(".doc") == Some(key))
        .map(|(_, t)| *t)
}
