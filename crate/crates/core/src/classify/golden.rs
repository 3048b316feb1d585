use super::Form;

macro_rules! table {
    ($dir:literal: $($q:literal),*) => {
        &[$(($q, include_str!(concat!("../../data/v1/", $dir, "/q", stringify!($q), ".txt")))),*]
    };
}

const FORM36: &[(u64, &str)] = table!("form3.6": 2, 3, 4, 5, 7, 8, 9, 16);
const FORM312: &[(u64, &str)] = table!("form3.12": 2, 3, 4, 9);

/// Listed class representatives of a normal form over `F_q`, or `None` when
/// no list is on file. `#` starts a comment line.
pub fn golden(form: Form, q: u64) -> Option<Vec<&'static str>> {
    let table = match form {
        Form::Form36 => FORM36,
        Form::Form312 => FORM312,
        Form::Deg3 => return None,
    };
    let (_, text) = table.iter().find(|(k, _)| *k == q)?;
    Some(
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect(),
    )
}
