pub mod centralizer;
pub mod gitcheck;
pub mod modrep;
pub mod roots;
pub mod separability;
pub mod verify;
pub mod weyl;
