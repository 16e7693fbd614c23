//! Character tables, rings and generator files shipped with the crate.

macro_rules! shipped {
    ($dir:literal, $ext:literal, [$($name:literal),* $(,)?]) => {
        &[$(($name, include_str!(concat!("../fixtures/", $dir, "/", $name, $ext)))),*]
    };
}

/// Names of the shipped groups.
pub const GROUPS: &[&str] = &["c2", "c4", "c2xc2", "s3", "d4", "q8", "a4", "d6", "s4"];

const TABLES: &[(&str, &str)] =
    shipped!("tables", ".ct.json", ["c2", "c4", "c2xc2", "s3", "d4", "q8", "a4", "d6", "s4"]);

const GENERATORS: &[(&str, &str)] =
    shipped!("groups", ".gens", ["c2", "c4", "c2xc2", "s3", "d4", "q8", "a4", "d6", "s4"]);

const RINGS: &[(&str, &str)] = shipped!(
    "rings",
    ".ring.json",
    ["trivial", "c2", "c4", "c2xc2", "s3", "d4", "q8", "a4", "d6", "s4"]
);

fn lookup(set: &'static [(&'static str, &'static str)], name: &str) -> Option<&'static str> {
    set.iter().find(|(n, _)| *n == name).map(|(_, s)| *s)
}

/// Character table JSON for a shipped group.
pub fn table(name: &str) -> Option<&'static str> {
    lookup(TABLES, name)
}

/// Generator file for a shipped group.
pub fn generators(name: &str) -> Option<&'static str> {
    lookup(GENERATORS, name)
}

/// Ring JSON for a shipped ring (`trivial` plus every shipped group).
pub fn ring(name: &str) -> Option<&'static str> {
    lookup(RINGS, name)
}

pub fn ring_names() -> impl Iterator<Item = &'static str> {
    RINGS.iter().map(|(n, _)| *n)
}
