use std::sync::OnceLock;

use super::descriptor::NamedDescriptor;

macro_rules! shipped {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../../assets/examples/", $name, ".json")))),*]
    };
}

/// Built-in descriptor files, in suite order.
pub const SHIPPED: &[(&str, &str)] = shipped![
    "cubic-c3",
    "dp4-dicyclic",
    "dp5-c5",
    "dp5-d5",
    "dp5-f20",
    "dp5-a5",
    "dp5-s5",
    "dp6-c6",
    "dp6-s3tw",
    "dp6-torus",
    "dp6-weyl",
    "p1p1-c4",
    "p1p1-d4",
    "p1p1-d5",
    "p1p1-a4",
    "p1p1-s4",
    "p1p1-a5",
    "plane-s3",
];

pub fn builtin_examples() -> &'static [NamedDescriptor] {
    static ALL: OnceLock<Vec<NamedDescriptor>> = OnceLock::new();
    ALL.get_or_init(|| {
        SHIPPED
            .iter()
            .map(|(name, text)| {
                let d: NamedDescriptor = serde_json::from_str(text)
                    .unwrap_or_else(|e| panic!("shipped example {name} is invalid: {e}"));
                assert_eq!(d.name, *name, "file name and example name agree");
                d
            })
            .collect()
    })
}

pub fn builtin(name: &str) -> Option<&'static NamedDescriptor> {
    builtin_examples().iter().find(|d| d.name == name)
}

/// Raw JSON text of a built-in example.
pub fn builtin_text(name: &str) -> Option<&'static str> {
    SHIPPED.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}
