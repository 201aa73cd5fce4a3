//! Printing in the concrete grammar accepted by [`super::parse`].

use std::fmt;

use super::{Connective, Formula, Quantifier, Term, EQ, LT, PLUS, TIMES};

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::Num(n) => write!(f, "{n}"),
            Term::App(name, args) if (name == PLUS || name == TIMES) && args.len() == 2 => {
                write!(f, "({} {} {})", args[0], name, args[1])
            }
            Term::App(name, args) if args.is_empty() => f.write_str(name),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
        }
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, args: &[Term]) -> fmt::Result {
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{a}")?;
    }
    Ok(())
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
            Connective::Iff => "<->",
        }
    }
}

impl Quantifier {
    pub fn keyword(self) -> &'static str {
        match self {
            Quantifier::Forall => "forall",
            Quantifier::Exists => "exists",
        }
    }
}

/// Prints a formula that sits in operand position.
struct Operand<'a>(&'a Formula);

impl fmt::Display for Operand<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::Quant(..) => write!(f, "({})", self.0),
            other => write!(f, "{other}"),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(p, args) if (p == EQ || p == LT) && args.len() == 2 => {
                write!(f, "{} {} {}", args[0], p, args[1])
            }
            Formula::Atom(p, args) if args.is_empty() => f.write_str(p),
            Formula::Atom(p, args) => {
                write!(f, "{p}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            Formula::SoAtom(v, args) => {
                write!(f, "{v}(")?;
                write_list(f, args)?;
                f.write_str(")")
            }
            Formula::Not(a) => write!(f, "!{}", Operand(a)),
            Formula::Binary(op, a, b) => write!(f, "({} {} {})", Operand(a), op.symbol(), Operand(b)),
            Formula::Quant(q, v, body) => write!(f, "{} x{}. {}", q.keyword(), v, body),
        }
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse;

    #[test]
    fn round_trips() {
        for s in [
            "forall x0. x0 = x0",
            "!(exists x1. x1 < 3)",
            "((forall x0. x0 = x0) & !x1 = 2)",
            "forall x0. (x0 = x0 & !x1 = 2)",
            "forall x0. exists x1. Y2_0(x0, S(x1))",
            "((x0 + 1) * x2) < 7",
            "((P(x0) -> Q(x1, c)) <-> !!x0 = x1)",
        ] {
            let f = parse(s).unwrap();
            assert_eq!(f.to_string(), s);
            assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}
