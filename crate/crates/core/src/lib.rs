pub mod charlab;
pub mod field;
pub mod nagao;
pub mod planeaut;
pub mod superrep;
pub mod torsionlab;
