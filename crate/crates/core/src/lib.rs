pub mod analytic_sl2;
pub mod cli;
pub mod convex;
pub mod duals;
pub mod mackey;
pub mod multiplicity;
pub mod root_datum;
pub mod weight;


#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    struct Introduction;
    #[doc = include_str!("../../../book/src/root-data.md")]
    struct RootData;
    #[doc = include_str!("../../../book/src/duals.md")]
    struct Duals;
    #[doc = include_str!("../../../book/src/multiplicities.md")]
    struct Multiplicities;
    #[doc = include_str!("../../../book/src/mackey.md")]
    struct Mackey;
    #[doc = include_str!("../../../book/src/sl2.md")]
    struct Sl2;
    #[doc = include_str!("../../../book/src/cli.md")]
    struct Cli;
}
