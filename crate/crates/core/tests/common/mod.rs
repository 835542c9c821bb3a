#![allow(dead_code)]
pub mod cobar;
pub mod props;
