#![allow(dead_code)]

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// `(file name, contents)` of every shipped fixture, sorted by name.
pub fn fixtures() -> Vec<(String, String)> {
    let mut out: Vec<(String, String)> = std::fs::read_dir(fixture_dir())
        .expect("fixtures directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "fc"))
        .map(|p| {
            let name = p.file_name().unwrap().to_string_lossy().into_owned();
            (name, std::fs::read_to_string(&p).unwrap())
        })
        .collect();
    out.sort();
    out
}

const WORDS: &[&str] = &[
    "ring", "module", "morphism", "category", "diagram", "diagmor", "functor", "ses", "sesmor", "task", "over",
    "coker", "free", "trivial", "zero", "cyclic", "factors", "field", "abelian", "group", "standard", "objects",
    "arrow", "compose", "tensor", "reduce", "augmentation", "identity", "quotient", "derive", "les", "ss",
    "verify", "ladder", "homology", "validate", "[", "]", "(", ")", "{", "}", ",", ";", ":", "=", "->", "\n",
    "0", "1", "2", "-3", "9999999", "99999999999999999999", "\"", "\"*\"", "#", "Z", "M", "F", "n=", "A=",
];

/// Random byte strings and token-level mutations of the fixtures.
pub fn fuzz_inputs(seed: u64, count: usize) -> Vec<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases: Vec<String> = fixtures().into_iter().map(|(_, s)| s).collect();
    (0..count)
        .map(|k| match k % 3 {
            0 => {
                let len = rng.gen_range(0..200);
                let bytes: Vec<u8> = (0..len).map(|_| rng.gen()).collect();
                String::from_utf8_lossy(&bytes).into_owned()
            }
            1 => {
                let len = rng.gen_range(0..60);
                let words: Vec<&str> = (0..len).map(|_| *WORDS.choose(&mut rng).unwrap()).collect();
                words.join(" ")
            }
            _ => {
                let base = bases.choose(&mut rng).unwrap();
                let mut toks: Vec<String> = base.split_inclusive(|c: char| c.is_whitespace()).map(str::to_string).collect();
                for _ in 0..rng.gen_range(1..6) {
                    if toks.is_empty() {
                        break;
                    }
                    let i = rng.gen_range(0..toks.len());
                    match rng.gen_range(0..4) {
                        0 => {
                            toks.remove(i);
                        }
                        1 => toks.insert(i, format!("{} ", WORDS.choose(&mut rng).unwrap())),
                        2 => {
                            let j = rng.gen_range(0..toks.len());
                            toks.swap(i, j);
                        }
                        _ => {
                            let t = toks[i].clone();
                            toks.insert(i, t);
                        }
                    }
                }
                toks.concat()
            }
        })
        .collect()
}

/// Number of inputs on which parsing or checking panicked.
pub fn fuzz_panics(inputs: &[String]) -> usize {
    inputs
        .iter()
        .filter(|src| {
            catch_unwind(AssertUnwindSafe(|| {
                let _ = funcat_dsl::parse(src).map(|doc| funcat_dsl::print(&doc));
                let _ = funcat_dsl::check(src);
            }))
            .is_err()
        })
        .count()
}

/// Text and JSON reports for a fixture with the given seed.
pub fn reports(src: &str, seed: u64) -> (String, String) {
    let wb = funcat_dsl::check(src).expect("fixture checks");
    let opts = funcat_dsl::RunOptions {
        seed: Some(seed),
        ..Default::default()
    };
    let r = funcat_dsl::run(&wb, &opts).expect("fixture runs");
    (r.to_text(), r.to_json())
}
