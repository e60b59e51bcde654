// Each chapter of the book is pulled in as the docs of an empty module, so
// `cargo test` runs every snippet. One module per chapter keeps failures
// traceable to their file.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/degree-sequences.md")]
pub mod degree_sequences {}
#[doc = include_str!("../../../book/src/sampling.md")]
pub mod sampling {}
#[doc = include_str!("../../../book/src/kernel.md")]
pub mod kernel {}
#[doc = include_str!("../../../book/src/exploration.md")]
pub mod exploration {}
#[doc = include_str!("../../../book/src/cycles.md")]
pub mod cycles {}
#[doc = include_str!("../../../book/src/power-law.md")]
pub mod power_law {}
#[doc = include_str!("../../../book/src/experiments.md")]
pub mod experiments {}
