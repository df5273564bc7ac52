#![allow(dead_code)]

pub mod generators;
pub mod oracle;
