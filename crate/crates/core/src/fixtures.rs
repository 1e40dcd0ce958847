//! Bundled example presentations.

use crate::words::StringAlgebra;

pub const GP23: &str = include_str!("../fixtures/gp23.sqa");
pub const LAMBDA2: &str = include_str!("../fixtures/lambda2.sqa");
pub const NOT_TORSION_FREE: &str = include_str!("../fixtures/not_torsion_free.sqa");
pub const NEGATIVE_POWER: &str = include_str!("../fixtures/negative_power.sqa");
pub const STABLE_OMEGA: &str = include_str!("../fixtures/stable_omega.sqa");
pub const STABLE_OMEGA_PLUS_ONE: &str = include_str!("../fixtures/stable_omega_plus_one.sqa");
pub const STABLE_OMEGA_PLUS_TWO: &str = include_str!("../fixtures/stable_omega_plus_two.sqa");

/// `(file stem, contents)` for every bundled fixture.
pub const ALL: [(&str, &str); 7] = [
    ("gp23", GP23),
    ("lambda2", LAMBDA2),
    ("not_torsion_free", NOT_TORSION_FREE),
    ("negative_power", NEGATIVE_POWER),
    ("stable_omega", STABLE_OMEGA),
    ("stable_omega_plus_one", STABLE_OMEGA_PLUS_ONE),
    ("stable_omega_plus_two", STABLE_OMEGA_PLUS_TWO),
];

fn load(text: &str) -> StringAlgebra {
    StringAlgebra::from_sqa(text).expect("bundled fixture is a string algebra")
}

pub fn gp23() -> StringAlgebra {
    load(GP23)
}

pub fn lambda2() -> StringAlgebra {
    load(LAMBDA2)
}

pub fn not_torsion_free() -> StringAlgebra {
    load(NOT_TORSION_FREE)
}

pub fn negative_power() -> StringAlgebra {
    load(NEGATIVE_POWER)
}

pub fn stable_omega() -> StringAlgebra {
    load(STABLE_OMEGA)
}

pub fn stable_omega_plus_one() -> StringAlgebra {
    load(STABLE_OMEGA_PLUS_ONE)
}

pub fn stable_omega_plus_two() -> StringAlgebra {
    load(STABLE_OMEGA_PLUS_TWO)
}

pub fn by_name(name: &str) -> Option<StringAlgebra> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| load(t))
}
