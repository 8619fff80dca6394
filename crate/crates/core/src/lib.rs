pub mod error;
pub mod expr;
pub mod hecke;
pub mod involutions;
pub mod koszul;
pub mod ktheory;
pub mod poly;
pub mod report;
pub mod root_data;
pub mod suite;
pub mod weyl;

#[cfg(doctest)]
mod booktest {
    macro_rules! booktest {
        ($i:ident) => {
            #[doc = include_str!(concat!("../../../book/src/", stringify!($i), ".md"))]
            mod $i {}
        };
    }
    booktest!(introduction);
    booktest!(root_data);
    booktest!(hecke);
    booktest!(involutions);
    booktest!(ktheory);
    booktest!(koszul);
    booktest!(cli);
}
