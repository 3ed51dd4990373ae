pub mod crosscheck;
pub mod cyclotomic;
pub mod field;
pub mod ext_engine;
pub mod linalg;
pub mod quantum_group;
pub mod affine_labels;
pub mod zigzag;
