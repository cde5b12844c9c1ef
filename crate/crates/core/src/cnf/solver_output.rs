use super::{Assignment, Lit};

/// What a SAT solver said about a formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolverAnswer {
    /// Satisfiable; variables not mentioned by the solver are unassigned.
    Sat(Assignment),
    Unsat,
    /// No verdict, with the reason.
    Unknown(String),
}

/// Parse output in the SAT-competition convention (`s SATISFIABLE`, `v` lines).
///
/// Bare `SAT`/`UNSAT`/`SATISFIABLE`/`UNSATISFIABLE` status lines, as written by
/// minisat's result file, are accepted too; following lines of literals are
/// then read as the model.
pub fn parse_solver_output(text: &str) -> SolverAnswer {
    let mut status: Option<bool> = None;
    let mut lits: Vec<Lit> = Vec::new();
    let mut bare_status = false;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let (tag, rest) = match line.split_once(char::is_whitespace) {
            Some((t, r)) => (t, r.trim()),
            None => (line, ""),
        };
        match tag {
            "s" => match rest {
                "SATISFIABLE" => status = Some(true),
                "UNSATISFIABLE" => status = Some(false),
                other => return SolverAnswer::Unknown(format!("solver reported `{other}`")),
            },
            "SAT" | "SATISFIABLE" if rest.is_empty() => {
                status = Some(true);
                bare_status = true;
            }
            "UNSAT" | "UNSATISFIABLE" if rest.is_empty() => {
                status = Some(false);
                bare_status = true;
            }
            "INDET" | "UNKNOWN" => return SolverAnswer::Unknown(format!("solver reported `{tag}`")),
            "v" => {
                if let Err(e) = push_lits(rest, &mut lits) {
                    return SolverAnswer::Unknown(e);
                }
            }
            _ if bare_status && status == Some(true) => {
                if let Err(e) = push_lits(line, &mut lits) {
                    return SolverAnswer::Unknown(e);
                }
            }
            _ => {}
        }
    }
    match status {
        Some(true) => match Assignment::from_lits(lits) {
            Ok(a) => SolverAnswer::Sat(a),
            Err(e) => SolverAnswer::Unknown(e.to_string()),
        },
        Some(false) => SolverAnswer::Unsat,
        None if text.trim().is_empty() => SolverAnswer::Unknown("no output".into()),
        None => SolverAnswer::Unknown("no status line in solver output".into()),
    }
}

fn push_lits(s: &str, out: &mut Vec<Lit>) -> Result<(), String> {
    for tok in s.split_whitespace() {
        let v: i64 = tok.parse().map_err(|_| format!("bad model literal `{tok}`"))?;
        if v != 0 {
            out.push(Lit::from_dimacs(v).map_err(|e| e.to_string())?);
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::lit;

    #[test]
    fn competition_format() {
        assert_eq!(parse_solver_output("s UNSATISFIABLE\n"), SolverAnswer::Unsat);
        let a = Assignment::from_lits([lit(1), lit(-2)]).unwrap();
        assert_eq!(parse_solver_output("s SATISFIABLE\nv 1 -2 0"), SolverAnswer::Sat(a.clone()));
        assert_eq!(
            parse_solver_output("c hello\ns SATISFIABLE\nv 1\nv -2 0\n"),
            SolverAnswer::Sat(a)
        );
    }

    #[test]
    fn minisat_result_file() {
        let a = Assignment::from_lits([lit(-1), lit(2), lit(3)]).unwrap();
        assert_eq!(parse_solver_output("SAT\n-1 2 3 0\n"), SolverAnswer::Sat(a));
        assert_eq!(parse_solver_output("UNSAT\n"), SolverAnswer::Unsat);
    }

    #[test]
    fn unknown_outcomes() {
        assert!(matches!(parse_solver_output(""), SolverAnswer::Unknown(_)));
        assert!(matches!(parse_solver_output("s UNKNOWN\n"), SolverAnswer::Unknown(_)));
        assert!(matches!(parse_solver_output("garbage\n"), SolverAnswer::Unknown(_)));
        assert!(matches!(
            parse_solver_output("s SATISFIABLE\nv 1 x 0\n"),
            SolverAnswer::Unknown(_)
        ));
        assert!(matches!(
            parse_solver_output("s SATISFIABLE\nv 1 -1 0\n"),
            SolverAnswer::Unknown(_)
        ));
    }

    #[test]
    fn unmentioned_variables_stay_unassigned() {
        let SolverAnswer::Sat(a) = parse_solver_output("s SATISFIABLE\nv 3 0\n") else {
            panic!()
        };
        assert_eq!(a.get(lit(1).var()), None);
        assert_eq!(a.get(lit(3).var()), Some(true));
    }
}
