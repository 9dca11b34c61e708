use finsupp::finset::all_functions_up_to;
use finsupp::theory::empty_mod_max;
use finsupp::{zoo, FiniteFunction, FunctorInstance, QueryError, TabulatedFunctor};

fn reload(inst: &FunctorInstance, max_size: usize) -> FunctorInstance {
    let text = inst.tabulate(max_size).unwrap().to_json();
    FunctorInstance::from_tabulation(inst.name(), TabulatedFunctor::from_json(&text).unwrap())
}

fn assert_agree(direct: &FunctorInstance, loaded: &FunctorInstance, max_size: usize) {
    for k in 0..=max_size {
        assert_eq!(
            direct.element_names(k).unwrap(),
            loaded.element_names(k).unwrap()
        );
    }
    for f in all_functions_up_to(max_size) {
        assert_eq!(
            direct.morphism(&f).unwrap(),
            loaded.morphism(&f).unwrap(),
            "{}: {f}",
            direct.name()
        );
    }
}

#[test]
fn zoo_round_trips_through_tabulation() {
    for inst in zoo::all() {
        assert_agree(&inst, &reload(&inst, 3), 3);
    }
}

#[test]
fn modified_twins_round_trips() {
    let twins = empty_mod_max(&zoo::instance("twins").unwrap()).unwrap();
    let loaded = reload(&twins, 3);
    assert_agree(&twins, &loaded, 3);
    assert_eq!(loaded.element_names(0).unwrap(), ["c"]);
}

#[test]
fn export_is_stable() {
    let twins = zoo::instance("twins").unwrap();
    let first = twins.tabulate(3).unwrap().to_json();
    let again = TabulatedFunctor::from_json(&first).unwrap().to_json();
    assert_eq!(first, again);
}

#[test]
fn tabulated_queries() {
    let upair = zoo::instance("upair").unwrap();
    let tab = reload(&upair, 3);
    assert_eq!(
        tab.element_names(2).unwrap(),
        ["p(0,0)", "p(0,1)", "p(1,1)"]
    );
    assert_eq!(
        tab.cardinality(4),
        Err(QueryError::SizeBound { size: 4, bound: 3 })
    );
    let collapse = FiniteFunction::new(2, 1, vec![0, 0]).unwrap();
    assert_eq!(tab.morphism(&collapse).unwrap().table(), &[0, 0, 0]);
    let too_big = FiniteFunction::identity(4);
    assert!(matches!(
        tab.morphism(&too_big),
        Err(QueryError::SizeBound { .. })
    ));
    assert_eq!(tab.find_element(2, "p(0,1)").unwrap(), 1);
    assert!(tab.find_element(2, "p(1,0)").is_err());
}

#[test]
fn modification_needs_size_two() {
    let upair = zoo::instance("upair").unwrap();
    let tab = reload(&upair, 1);
    assert!(matches!(
        empty_mod_max(&tab),
        Err(QueryError::SizeBound { size: 2, bound: 1 })
    ));
}
