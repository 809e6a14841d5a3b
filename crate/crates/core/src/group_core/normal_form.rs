use std::fmt;

use super::Gen;

/// Reduced form in a finite-factor amalgam `A *_C B`: `head ∈ C`, then an
/// alternating sequence of non-trivial right-coset representatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmalgamForm {
    pub head: u32,
    /// `(factor, element)` with factor `0` for `A` and `1` for `B`.
    pub letters: Vec<(u8, u32)>,
}

/// Britton normal form `g0 t^e1 g1 ... t^en gn` in an HNN extension of a
/// finite group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HnnForm {
    pub head: u32,
    /// `(exponent, coset representative)` with exponent `±1`.
    pub syllables: Vec<(i8, u32)>,
}

/// Canonical element payload. Each group family uses one variant and
/// guarantees that equal elements have equal payloads. The derived order is
/// the payload order used for deterministic tie-breaking.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalForm {
    Finite(u32),
    Ints(Vec<i64>),
    Word(Vec<Gen>),
    Pair(Box<(NormalForm, NormalForm)>),
    Amalgam(AmalgamForm),
    Hnn(HnnForm),
    Coset { state: u32, residual: Vec<Gen> },
}

impl NormalForm {
    pub fn pair(a: NormalForm, b: NormalForm) -> Self {
        NormalForm::Pair(Box::new((a, b)))
    }

    pub fn as_pair(&self) -> Option<(&NormalForm, &NormalForm)> {
        match self {
            NormalForm::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Gen]) -> fmt::Result {
    if letters.is_empty() {
        return write!(f, "1");
    }
    for s in letters {
        write!(f, "{s}")?;
    }
    Ok(())
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::Finite(i) => write!(f, "#{i}"),
            NormalForm::Ints(v) => {
                write!(f, "(")?;
                for (k, x) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
            NormalForm::Word(w) => write_letters(f, w),
            NormalForm::Pair(p) => write!(f, "<{};{}>", p.0, p.1),
            NormalForm::Amalgam(a) => {
                write!(f, "c{}", a.head)?;
                for (factor, e) in &a.letters {
                    let tag = if *factor == 0 { 'A' } else { 'B' };
                    write!(f, ".{tag}{e}")?;
                }
                Ok(())
            }
            NormalForm::Hnn(h) => {
                write!(f, "{}", h.head)?;
                for (eps, g) in &h.syllables {
                    let t = if *eps > 0 { 't' } else { 'T' };
                    write!(f, ".{t}{g}")?;
                }
                Ok(())
            }
            NormalForm::Coset { state, residual } => {
                write!(f, "q{state}:")?;
                write_letters(f, residual)
            }
        }
    }
}
