use super::*;

#[test]
fn item_names_round_trip() {
    for i in Item::ALL {
        assert_eq!(i.name().parse::<Item>().unwrap(), i);
    }
    assert_eq!("7".parse::<Item>().unwrap(), Item::Resultants);
    assert_eq!(Item::ProofSums.number(), None);
    assert!("10".parse::<Item>().is_err());
}

#[test]
fn fast_items_pass() {
    let opts = ReproduceOptions::default();
    for i in [Item::CarlitzIdentity, Item::LemmaL32, Item::Instantiation] {
        let r = run_item(i, &opts);
        assert!(r.passed, "{i}: {:?}", r.failure);
        assert!(r.checks > 0);
    }
}

#[test]
fn reports_are_deterministic() {
    let opts = ReproduceOptions {
        instantiations: 20,
        ..ReproduceOptions::default()
    };
    let a = serde_json::to_string(&run_item(Item::Instantiation, &opts)).unwrap();
    let b = serde_json::to_string(&run_item(Item::Instantiation, &opts)).unwrap();
    assert_eq!(a, b);
}
