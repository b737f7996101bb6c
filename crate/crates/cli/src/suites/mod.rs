//! Named verification suites.

use std::fmt;

use crate::report::{Checks, Report};

pub mod chern;
pub mod dm;
pub mod fano;
pub mod lattice;
pub mod namba;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Fano,
    Chern,
    Namba,
    Lattice,
    Dm,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 5] = [Suite::Fano, Suite::Chern, Suite::Namba, Suite::Lattice, Suite::Dm];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Fano => "fano",
            Suite::Chern => "chern",
            Suite::Namba => "namba",
            Suite::Lattice => "lattice",
            Suite::Dm => "dm",
            Suite::All => "all",
        }
    }

    fn notes(self) -> Vec<String> {
        match self {
            Suite::Fano => fano::notes(),
            Suite::Chern => chern::notes(),
            Suite::Namba => namba::notes(),
            Suite::Lattice => lattice::notes(),
            Suite::Dm => dm::notes(),
            Suite::All => Vec::new(),
        }
    }

    fn checks(self, c: &mut Checks) {
        match self {
            Suite::Fano => fano::run(c),
            Suite::Chern => chern::run(c),
            Suite::Namba => namba::run(c),
            Suite::Lattice => lattice::run(c),
            Suite::Dm => dm::run(c),
            Suite::All => {}
        }
    }

    fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => Self::PARTS.to_vec(),
            s => vec![s],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Self::PARTS
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

/// Runs the suite's checks in a fixed order. Parts of `all` may run
/// concurrently; the report is assembled in declaration order.
pub fn run_suite(suite: Suite, parallel: bool) -> Report {
    let parts = suite.parts();
    let run_part = |s: &Suite| {
        let mut c = Checks::new();
        s.checks(&mut c);
        let notes: Vec<String> = s.notes().into_iter().map(|n| format!("{s}: {n}")).collect();
        (notes, c.into_results())
    };
    let results: Vec<_> = if parallel {
        use rayon::prelude::*;
        parts.par_iter().map(run_part).collect()
    } else {
        parts.iter().map(run_part).collect()
    };
    let (mut notes, mut checks) = (Vec::new(), Vec::new());
    for (n, c) in results {
        notes.extend(n);
        checks.extend(c);
    }
    Report::new(suite.name(), notes, checks)
}
