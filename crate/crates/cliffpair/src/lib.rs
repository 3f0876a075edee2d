pub mod scalars;
pub mod exactla;
pub mod quadforms;
pub mod algebras;
pub mod quadpairs;
pub mod clifford;
pub mod triality;
pub mod cli;
