use std::fmt;

/// Number of symbols in the alphabet.
pub const NSYM: usize = 10;

/// The fixed symbol alphabet. `R` stands for the square root of `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    R,
    Alpha,
    Gamma,
    LamPi,
    LamPiL,
    Lam10,
    Lam01,
    SqrtD,
    X,
    Y,
}

impl Symbol {
    pub const ALL: [Symbol; NSYM] = [
        Symbol::R,
        Symbol::Alpha,
        Symbol::Gamma,
        Symbol::LamPi,
        Symbol::LamPiL,
        Symbol::Lam10,
        Symbol::Lam01,
        Symbol::SqrtD,
        Symbol::X,
        Symbol::Y,
    ];

    /// Order in which factors of a monomial are printed.
    pub(crate) const PRINT_ORDER: [Symbol; NSYM] = [
        Symbol::Alpha,
        Symbol::Gamma,
        Symbol::LamPi,
        Symbol::LamPiL,
        Symbol::Lam10,
        Symbol::Lam01,
        Symbol::R,
        Symbol::SqrtD,
        Symbol::X,
        Symbol::Y,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Symbol::R => "r",
            Symbol::Alpha => "alpha",
            Symbol::Gamma => "gamma",
            Symbol::LamPi => "lam_pi",
            Symbol::LamPiL => "lam_piL",
            Symbol::Lam10 => "lam_10",
            Symbol::Lam01 => "lam_01",
            Symbol::SqrtD => "sqrt_d",
            Symbol::X => "X",
            Symbol::Y => "Y",
        }
    }

    pub fn from_name(s: &str) -> Option<Symbol> {
        Symbol::ALL.iter().copied().find(|x| x.name() == s)
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
