pub mod corpus;
pub mod finring;
pub mod graded;
pub mod howell;
pub mod idempotents;
pub mod modular;
pub mod skewalg;
pub mod smallcat;
pub mod verdict;
