#![allow(dead_code)]

use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;

use proptest::prelude::*;

use lg_core::knot::read_knot_table_strict;
use lg_core::{BraidWord, KnotRecord, LaurentPoly2, Var};

pub fn data_path(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(rel)
}

pub fn table(rel: &str) -> Vec<KnotRecord> {
    read_knot_table_strict(BufReader::new(File::open(data_path(rel)).unwrap())).unwrap()
}

/// `(name, PD code)` pairs from a `.pd` file.
pub fn pd_lines(rel: &str) -> Vec<(String, String)> {
    std::fs::read_to_string(data_path(rel))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (n, c) = l.split_once(' ').unwrap();
            (n.to_string(), c.to_string())
        })
        .collect()
}

/// Braids on at most `max_strands` strands with at most `max_len` letters.
pub fn braids(max_strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (1..=max_strands).prop_flat_map(move |s| {
        let letter = if s == 1 {
            Just(0i32).boxed()
        } else {
            (1..s as i32, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g }).boxed()
        };
        prop::collection::vec(letter, 0..=max_len).prop_map(move |ls| {
            let ls: Vec<i32> = ls.into_iter().filter(|&l| l != 0).collect();
            BraidWord::new(s, ls).unwrap()
        })
    })
}

/// Every `p`-block has `q`-exponents of a single parity, equal to the parity
/// of half the `p`-degree.
pub fn q_parity_holds(f: &LaurentPoly2) -> bool {
    f.p_blocks()
        .iter()
        .all(|(p2, block)| p2 % 4 == 0 && block.terms().iter().all(|(m, _)| (m.q2 / 2 - p2 / 4).rem_euclid(2) == 0))
}

pub fn p_palindromic(f: &LaurentPoly2) -> bool {
    f.dot_eq(&f.substitute_inverse(Var::P))
}
