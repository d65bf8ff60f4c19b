use super::{Expr, Gen, Value};
use crate::hnn::HnnWord;
use crate::unitri::UniTri;
use crate::word::Word;

fn gen(g: Gen) -> String {
    match g {
        Gen::F(k) => format!("f{k}"),
        Gen::Lambda(i, j) => format!("L({i},{j})"),
        Gen::Tau(i) => format!("tau({i})"),
        Gen::Sigma => "sigma".into(),
        Gen::T => "t".into(),
    }
}

fn base(expr: &Expr) -> String {
    match expr {
        Expr::Product(_) | Expr::Inverse(_) | Expr::Power(..) => format!("({})", format_expr(expr)),
        _ => format_expr(expr),
    }
}

/// Prints an expression so that [`super::parse`] reads it back unchanged.
pub fn format_expr(expr: &Expr) -> String {
    match expr {
        Expr::Identity => "e".into(),
        Expr::Gen(g) => gen(*g),
        Expr::Product(items) => items
            .iter()
            .map(|x| match x {
                Expr::Product(_) => format!("({})", format_expr(x)),
                _ => format_expr(x),
            })
            .collect::<Vec<_>>()
            .join(" "),
        Expr::Inverse(x) => format!("{}^-1", base(x)),
        Expr::Power(x, n) => format!("{}^{n}", base(x)),
        Expr::Commutator(a, b) => format!("[{}, {}]", format_expr(a), format_expr(b)),
        Expr::Pair(u, v) => format!("({} | {})", format_expr(u), format_expr(v)),
    }
}

pub fn format_word(w: &Word) -> String {
    w.to_string()
}

/// A λ-word for the element, `e` for the identity.
pub fn format_unitri(x: &UniTri) -> String {
    let word = x.to_lambda_word();
    if word.is_empty() {
        return "e".into();
    }
    word.letters()
        .iter()
        .map(|l| {
            if l.exponent < 0 {
                format!("L({},{})^-1", l.i, l.j)
            } else {
                format!("L({},{})", l.i, l.j)
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

pub fn format_hnn(w: &HnnWord) -> String {
    w.to_string()
}

/// Text form of a value. Words, `U_n` elements and HNN words re-parse to the
/// same value; an endomorphism prints as its image table.
pub fn format_value(v: &Value) -> String {
    match v {
        Value::Word(w) => format_word(w),
        Value::UniTri(x) => format_unitri(x),
        Value::Endo(e) => e.to_string(),
        Value::Hnn(w) => format_hnn(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse, read, Context, Kind};

    #[test]
    fn expressions_round_trip() {
        for (input, kind) in [
            ("f1 f2^-1", Kind::Word),
            ("(f1 f2)^3 [f1, f2 f1]^-2 e", Kind::Word),
            ("((f1)^2)^-1", Kind::Word),
            ("[L(3,2), L(2,1)] L(3,1)^-1", Kind::LambdaWord),
            ("sigma^-1 tau(2) sigma L(1,2)", Kind::EndoWord),
            ("t (f1 | f1) t^-1 (e | f1^-1)", Kind::HnnWord),
            ("((e | f2) t)^2 [t, (f1 f2 | e)]", Kind::HnnWord),
        ] {
            let ctx = Context::new(3, kind);
            let e = parse(input, ctx).unwrap();
            let printed = format_expr(&e);
            assert_eq!(parse(&printed, ctx).unwrap(), e, "{input} -> {printed}");
        }
    }

    #[test]
    fn unitri_format() {
        let ctx = Context::new(3, Kind::LambdaWord);
        let x = read("[L(3,2), L(2,1)] L(2,1)^2", ctx).unwrap();
        let printed = format_value(&x);
        assert_eq!(printed, "L(2,1) L(2,1) L(3,1)");
        assert_eq!(read(&printed, ctx).unwrap(), x);
        assert_eq!(format_unitri(&UniTri::identity(3).unwrap()), "e");
    }
}
