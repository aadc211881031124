//! Named objects addressable by string, e.g. `theta00`, `psi:3:1`,
//! `ch:Rt:1:1/4:0`, `genus:x2:15`.

use std::fmt;

use crate::characters::{CharacterBook, CharacterSpec, Sector};
use crate::error::{Error, Result};
use crate::genus::{build_genus, GenusSpec};
use crate::modular::{affine_character, eta_pow, jacobi_theta, level_theta, psi, ThetaKind};
use crate::series::{parse_rational, Exp, QSeries};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Eta3,
    Theta(ThetaKind),
    LevelTheta { p: i64, a: i64 },
    AffineCharacter { k: i64, two_l: i64 },
    Psi { p: i64, a: i64 },
    Character(CharacterSpec),
    Genus(GenusSpec),
}

fn int(s: &str, whole: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| Error::UnknownObject(format!("{whole}: {s:?} is not an integer")))
}

fn exp_from(s: &str, whole: &str) -> Result<Exp> {
    let r = parse_rational(s).map_err(|_| Error::UnknownObject(format!("{whole}: bad weight {s:?}")))?;
    let n: i64 = r.numer().try_into().map_err(|_| Error::UnknownObject(whole.into()))?;
    let d: i64 = r.denom().try_into().map_err(|_| Error::UnknownObject(whole.into()))?;
    Ok(Exp::new(n, d))
}

impl GenusSpec {
    /// Parses `k3`, `sym:k`, `mixed:k2:k3:k4` or `x2:n`.
    pub fn parse(s: &str) -> Result<GenusSpec> {
        let parts: Vec<&str> = s.split(':').collect();
        let spec = match parts.as_slice() {
            ["k3"] => GenusSpec::k3(),
            ["sym", k] => GenusSpec::symmetric_power_sum(int(k, s)?),
            ["mixed", a, b, c] => GenusSpec::mixed(int(a, s)?, int(b, s)?, int(c, s)?),
            ["x2", n] => GenusSpec::x2(int(n, s)?),
            _ => return Err(Error::UnknownObject(format!("genus {s:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl Object {
    pub fn parse(name: &str) -> Result<Object> {
        let unknown = || Error::UnknownObject(name.to_string());
        if let Some(rest) = name.strip_prefix("genus:") {
            return Ok(Object::Genus(GenusSpec::parse(rest)?));
        }
        let parts: Vec<&str> = name.split(':').collect();
        let obj = match parts.as_slice() {
            ["eta3"] => Object::Eta3,
            ["theta11"] => Object::Theta(ThetaKind::T11),
            ["theta10"] => Object::Theta(ThetaKind::T10),
            ["theta00"] => Object::Theta(ThetaKind::T00),
            ["theta01"] => Object::Theta(ThetaKind::T01),
            ["vartheta", p, a] => {
                let p = int(p, name)?;
                if p < 1 {
                    return Err(Error::InvalidSpec(format!("level {p} must be positive")));
                }
                Object::LevelTheta { p, a: int(a, name)? }
            }
            ["chi", k, l] => {
                let (k, two_l) = (int(k, name)?, int(l, name)?);
                if k < 0 || !(0..=k).contains(&two_l) {
                    return Err(Error::InvalidSpec(format!("isospin {two_l}/2 outside level {k}")));
                }
                Object::AffineCharacter { k, two_l }
            }
            ["psi", p, a] => {
                let (p, a) = (int(p, name)?, int(a, name)?);
                if !(0 < a && a < p) {
                    return Err(Error::InvalidSpec(format!("need 0 < a < P, got P={p}, a={a}")));
                }
                Object::Psi { p, a }
            }
            ["ch", sector, k, h, l] => {
                let spec = CharacterSpec {
                    sector: Sector::parse(sector).ok_or_else(unknown)?,
                    k: int(k, name)?,
                    h: exp_from(h, name)?,
                    two_l: int(l, name)?,
                };
                spec.validate()?;
                Object::Character(spec)
            }
            _ => return Err(unknown()),
        };
        Ok(obj)
    }

    pub fn expand(&self, order: Exp) -> Result<QSeries> {
        match self {
            Object::Eta3 => eta_pow(3, order),
            Object::Theta(kind) => Ok(jacobi_theta(*kind, 1, order)),
            Object::LevelTheta { p, a } => Ok(level_theta(*p, *a, order)),
            Object::AffineCharacter { k, two_l } => affine_character(*k, *two_l, order),
            Object::Psi { p, a } => Ok(psi(*p, *a, order)),
            Object::Character(spec) => CharacterBook::new().character(spec, order),
            Object::Genus(spec) => build_genus(spec, order),
        }
    }
}

impl fmt::Display for Object {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Object::Eta3 => write!(f, "eta3"),
            Object::Theta(kind) => write!(f, "{}", kind.name()),
            Object::LevelTheta { p, a } => write!(f, "vartheta:{p}:{a}"),
            Object::AffineCharacter { k, two_l } => write!(f, "chi:{k}:{two_l}"),
            Object::Psi { p, a } => write!(f, "psi:{p}:{a}"),
            Object::Character(s) => write!(f, "ch:{}:{}:{}/{}:{}", s.sector, s.k, s.h.numer(), s.h.denom(), s.two_l),
            Object::Genus(g) => write!(f, "genus:{g}"),
        }
    }
}

/// Parse and expand in one step.
pub fn expand_object(name: &str, order: Exp) -> Result<QSeries> {
    Object::parse(name)?.expand(order)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for name in [
            "eta3",
            "theta11",
            "theta01",
            "vartheta:3:-1",
            "chi:2:1",
            "psi:3:1",
            "ch:Rt:1:1/4:0",
            "ch:NS:2:3/2:1",
            "genus:k3",
            "genus:sym:2",
            "genus:mixed:1:1:0",
            "genus:x2:15",
        ] {
            assert_eq!(Object::parse(name).unwrap().to_string(), name);
        }
        // Integer weights print in canonical n/1 form.
        assert_eq!(Object::parse("ch:R:2:1:1").unwrap().to_string(), "ch:R:2:1/1:1");
    }

    #[test]
    fn bad_names() {
        for name in ["bogus", "theta12", "psi:3", "ch:Q:1:1/4:0", "genus:k4", "psi:x:1"] {
            assert!(matches!(Object::parse(name), Err(Error::UnknownObject(_))), "{name}");
        }
        assert!(matches!(Object::parse("psi:3:3"), Err(Error::InvalidSpec(_))));
        assert!(matches!(Object::parse("chi:1:2"), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn psi_2_1_is_eta_cubed() {
        let o = Exp::from_integer(2);
        let a = expand_object("psi:2:1", o).unwrap();
        assert!(a.agrees_with(&expand_object("eta3", o).unwrap()));
        let want = QSeries::from_scalars(
            [(Exp::new(1, 8), 1), (Exp::new(9, 8), -3)]
                .map(|(e, c)| (e, num_rational::BigRational::from_integer(c.into()))),
            o,
        );
        assert!(a.agrees_with(&want));
    }
}
