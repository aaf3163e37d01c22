//! The shipped fixture corpus, embedded at build time.
//!
//! `lattices` holds every distributive lattice with at most five elements up
//! to isomorphism, plus the cube.

use crate::frame::Frame;
use crate::io::{parse_domain, parse_lattice};
use crate::lattice::Lattice;
use crate::scott::ScottDomain;

macro_rules! fixtures {
    ($dir:literal: $($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $dir, "/", $name)))),*]
    };
}

pub const LATTICE_FILES: &[(&str, &str)] = fixtures!("lattices":
    "one.lat", "c2.lat", "c3.lat", "c4.lat", "m2.lat", "c5.lat", "m2_top.lat", "m2_bot.lat", "cube.lat",
);

pub const DOMAIN_FILES: &[(&str, &str)] = fixtures!("domains":
    "one.dom", "chain2.dom", "flat2.dom", "flat3.dom", "m2.dom",
);

pub const INVALID_FILES: &[(&str, &str)] = fixtures!("invalid":
    "n5.lat", "m2_missing_edge.lat", "not_bounded_complete.dom", "no_bot.dom",
);

pub const SIERPINSKI_FILE: &str = include_str!("../corpus/named/sierpinski.lat");

pub fn lattices() -> Vec<(&'static str, Lattice)> {
    LATTICE_FILES
        .iter()
        .map(|(name, text)| (*name, parse_lattice(text).expect("corpus lattice")))
        .collect()
}

pub fn lattices_up_to(n: usize) -> Vec<(&'static str, Lattice)> {
    lattices().into_iter().filter(|(_, l)| l.len() <= n).collect()
}

pub fn frames_up_to(n: usize) -> Vec<(&'static str, Frame)> {
    lattices_up_to(n).into_iter().map(|(name, l)| (name, Frame::new(l))).collect()
}

pub fn frames() -> Vec<(&'static str, Frame)> {
    frames_up_to(usize::MAX)
}

pub fn domains() -> Vec<(&'static str, ScottDomain)> {
    DOMAIN_FILES
        .iter()
        .map(|(name, text)| (*name, parse_domain(text).expect("corpus domain")))
        .collect()
}

pub fn sierpinski() -> Frame {
    Frame::new(parse_lattice(SIERPINSKI_FILE).expect("sierpinski fixture"))
}
