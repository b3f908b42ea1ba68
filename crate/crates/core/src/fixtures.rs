//! Bundled example inputs.

use std::sync::Arc;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::format::{parse_algebra, parse_complex, ComplexFile};

#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub algebra: &'static str,
    pub complex: &'static str,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "nakayama2",
        algebra: include_str!("../fixtures/nakayama2.alg"),
        complex: include_str!("../fixtures/nakayama2.cpx"),
    },
    Fixture {
        name: "a2_tilt",
        algebra: include_str!("../fixtures/a2_tilt.alg"),
        complex: include_str!("../fixtures/a2_tilt.cpx"),
    },
    Fixture {
        name: "a3_silt",
        algebra: include_str!("../fixtures/a3_silt.alg"),
        complex: include_str!("../fixtures/a3_silt.cpx"),
    },
];

pub fn fixture(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    pub fn algebra(&self, field: Option<Field>) -> Result<Arc<Algebra>> {
        Ok(Arc::new(parse_algebra(self.algebra)?.build(field)?))
    }

    pub fn load(&self, field: Option<Field>) -> Result<(Arc<Algebra>, ComplexFile)> {
        let alg = self.algebra(field)?;
        let c = parse_complex(self.complex, &alg)?;
        Ok((alg, c))
    }
}

pub fn load(name: &str, field: Option<Field>) -> Result<(Arc<Algebra>, ComplexFile)> {
    fixture(name).ok_or_else(|| Error::Precondition(format!("unknown fixture `{name}`")))?.load(field)
}
