pub mod exactlin;
pub mod artin;
pub mod scheme;
pub mod json;
pub mod reduce;
pub mod oracle;
pub mod bundled;
pub mod sample;
