//! The chapters of `book/` as doc-tests, so the guide's snippets keep compiling.

macro_rules! chapters {
    ($($name:ident => $file:literal),* $(,)?) => {
        $(
            #[doc = include_str!(concat!("../../../book/src/", $file))]
            pub mod $name {}
        )*
    };
}

chapters! {
    introduction => "introduction.md",
    spectra => "spectra.md",
    fermions => "fermions.md",
    catalog => "catalog.md",
    schubert => "schubert.md",
    chambers => "chambers.md",
    plethysm => "plethysm.md",
    verification => "verification.md",
    cli => "cli.md",
}
