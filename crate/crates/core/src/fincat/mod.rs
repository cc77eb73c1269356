//! Finite categories given by explicit composition tables, functors between
//! them, and the constructions built on top.

mod category;
mod concrete;
pub mod constructions;
mod elements;
mod functor;
mod nerve;

pub use category::{CategoryBuilder, FinCategory, Morphism, Violation};
pub use concrete::{concrete_category, concrete_category_with_maps, SetMap};
pub use constructions::{
    comma, coslice, coslice_along, full_subcategory, multislice, opposite, product, pullback,
    slice, slice_along, Comma, Pullback,
};
pub use elements::{category_of_elements, grothendieck, Grothendieck};
pub use functor::{enumerate_functors, Functor};
pub use nerve::{category_of_simplices, nerve, Nerve, SimplexCategory};
