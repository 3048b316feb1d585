use super::*;
use crate::perm::is_pr_brute;
use crate::ratfun::are_equivalent;

fn opts() -> ClassifyOptions {
    ClassifyOptions::default()
}

fn count(q: u64, form: Form) -> usize {
    let r = classify(q, form.degree(), form, &opts()).unwrap();
    assert_eq!(r.matches_references(), Some(true), "{form} q={q}: {:?}", r.references);
    r.class_count
}

#[test]
fn form36_counts() {
    for (q, n) in [(2, 2), (3, 3), (4, 5), (5, 2), (7, 1), (8, 3), (9, 0)] {
        assert_eq!(count(q, Form::Form36), n, "q={q}");
    }
}

#[test]
fn form312_counts() {
    for (q, n) in [(2, 0), (3, 2), (4, 0), (9, 1)] {
        assert_eq!(count(q, Form::Form312), n, "q={q}");
    }
}

#[test]
fn deg3_counts() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let r = classify(q, 3, Form::Deg3, &opts()).unwrap();
        assert_eq!(r.pr_class_count, 1, "q={q}");
        let want = usize::from(q % 3 == 1);
        assert_eq!(r.class_count, want, "q={q}");
    }
}

#[test]
fn sweep_members_are_prs() {
    for (q, form) in [(4, Form::Form36), (5, Form::Form36), (3, Form::Form312), (7, Form::Deg3)] {
        let prs = sweep(q, form, &opts()).unwrap();
        assert!(!prs.is_empty());
        for f in &prs {
            assert!(is_pr_brute(f), "{f}");
            assert_eq!(f.degree(), form.degree());
        }
    }
}

// pairwise oracle on a small list
fn naive_classes(fs: &[RationalFunction]) -> usize {
    let mut reps: Vec<&RationalFunction> = Vec::new();
    for f in fs {
        if !reps.iter().any(|g| are_equivalent(f, g).unwrap().is_some()) {
            reps.push(f);
        }
    }
    reps.len()
}

#[test]
fn dedupe_matches_pairwise() {
    for (q, form) in [(3, Form::Form36), (4, Form::Form36), (3, Form::Form312), (5, Form::Deg3)] {
        let prs = sweep(q, form, &opts()).unwrap();
        let classes = dedupe(&prs).unwrap();
        assert_eq!(classes.len(), naive_classes(&prs), "{form} q={q}");
        let total: usize = classes.iter().map(|c| c.members.len()).sum();
        assert_eq!(total, prs.len());
        for c in &classes {
            for &i in &c.members {
                assert!(are_equivalent(&prs[i], &c.representative).unwrap().is_some());
            }
        }
    }
}

#[test]
fn witnesses_reproduce_references() {
    let r = classify(4, 4, Form::Form36, &opts()).unwrap();
    let base = Field::from_order(4).unwrap();
    for m in r.references.as_ref().unwrap() {
        let f = parse_ratfun(&base, &m.text).unwrap();
        let rep = parse_ratfun(&base, &r.class_representatives[m.class_index.unwrap()]).unwrap();
        let w = are_equivalent(&f, &rep).unwrap().unwrap();
        assert_eq!(w.apply(&rep), f);
    }
}

#[test]
fn representatives_sorted_and_stable() {
    let a = classify(8, 4, Form::Form36, &opts()).unwrap();
    let b = classify(8, 4, Form::Form36, &opts()).unwrap();
    assert_eq!(a, b);
    let keys: Vec<_> = a.class_representatives.iter().map(|s| (s.len(), s.clone())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn errors() {
    assert!(matches!(classify(4, 3, Form::Form36, &opts()), Err(Error::Hypothesis(_))));
    let tight = ClassifyOptions { budget: 100 };
    assert!(matches!(classify(16, 4, Form::Form36, &tight), Err(Error::BudgetExceeded(_))));
    assert!(classify(6, 4, Form::Form36, &opts()).is_err());
    assert!(dedupe(&[]).unwrap().is_empty());
}

#[test]
fn form_names() {
    for f in [Form::Deg3, Form::Form36, Form::Form312] {
        assert_eq!(f.name().parse::<Form>().unwrap(), f);
        let j = serde_json::to_string(&f).unwrap();
        assert_eq!(j, format!("\"{}\"", f.name()));
    }
    assert_eq!("3.12".parse::<Form>().unwrap(), Form::Form312);
    assert!("3.7".parse::<Form>().is_err());
}

#[test]
fn golden_lists_load() {
    assert_eq!(golden(Form::Form36, 4).unwrap().len(), 5);
    assert_eq!(golden(Form::Form36, 16).unwrap().len(), 0);
    assert!(golden(Form::Form36, 11).is_none());
    assert!(golden(Form::Deg3, 4).is_none());
}
