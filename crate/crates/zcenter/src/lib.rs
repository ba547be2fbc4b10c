pub mod algebra;
pub mod braided;
pub mod builtin;
pub mod category;
pub mod center;
pub mod coherence;
pub mod data;
pub mod deligne;
pub mod dims;
pub mod export;
pub mod formula;
pub mod fullcenter;
pub mod halfbraid;
pub mod ihom;
pub mod linalg;
pub mod module;
pub mod obj;
pub mod solve;
pub mod split;
pub mod tensor;
pub mod tree;

pub use category::{CatError, Category};
pub use data::{AlgebraData, CategoryData};
pub use linalg::{Mat, C64};
pub use obj::{Mor, Obj};
