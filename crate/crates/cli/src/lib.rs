pub mod manifest;
pub mod report;
pub mod run;
