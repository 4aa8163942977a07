use multicat::sample::{single_entry_mutants, Sampler};
use multicat::validate::{validate_category, validate_multicat, validate_tables};
use multicat::Structure;

#[test]
fn sampled_instances_are_valid() {
    let mut s = Sampler::new(7);
    for _ in 0..50 {
        let c = s.category();
        assert!(validate_category(&c).ok(), "{:?}", validate_category(&c));
    }
    for k in 1..=3 {
        for _ in 0..50 {
            let m = s.multicat(k);
            assert!(validate_multicat(&m).ok(), "{:?}", validate_multicat(&m));
        }
    }
}

#[test]
fn sampling_is_deterministic() {
    let (mut a, mut b) = (Sampler::new(42), Sampler::new(42));
    for _ in 0..20 {
        assert!(a.multicat(2).tables().same_tables(b.multicat(2).tables()));
    }
}

#[test]
fn mutants_differ_in_one_entry() {
    let m = Sampler::new(3).multicat(2);
    let mutants = single_entry_mutants(m.tables());
    assert!(!mutants.is_empty());
    let caught = mutants
        .iter()
        .filter(|x| !validate_tables(&x.tables, multicat::DEFAULT_BUDGET).ok())
        .count();
    assert!(caught * 2 >= mutants.len(), "{caught}/{}", mutants.len());
}

#[test]
fn sub_models_include_by_name() {
    use multicat::sample::inclusion_by_name;
    use std::sync::Arc;
    let mut s = Sampler::new(11);
    for _ in 0..30 {
        let m = s.model(3, 2, false);
        let whole = Arc::new(m.multicat("W", &[0, 1, 2]));
        let part = Arc::new(m.multicat("P", &[0, 2]));
        assert!(validate_multicat(&part).ok());
        let inc = inclusion_by_name(&part, &whole);
        assert!(inc.problems().is_empty());
        assert!(inc.is_full_faithful());
        let unary = Arc::new(m.category("U", &[0, 1, 2]));
        assert!(validate_category(&unary).ok());
    }
}
