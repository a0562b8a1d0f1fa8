use cantor_core::*;
use num_bigint::BigUint;

fn fixture(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

#[test]
fn repunit_prime_values_match_fixture() {
    let expected = parse_bfile(&fixture("a076481.txt")).unwrap();
    assert_eq!(expected.len(), 6);
    let computed: Vec<BigUint> = search_repunit_prime_exponents(541, &SearchConfig::default())
        .into_iter()
        .filter(|r| r.is_positive())
        .map(|r| repunit3(r.s).unwrap())
        .collect();
    let cap = expected.last().unwrap().value.clone();
    assert!(cross_check(&expected, &computed, &cap).is_agreement());
}

#[test]
fn repunit_exponents_match_fixture_on_shared_range() {
    let expected = parse_bfile(&fixture("a028491.txt")).unwrap();
    let computed: Vec<BigUint> = search_repunit_prime_exponents(1100, &SearchConfig::default())
        .into_iter()
        .filter(|r| r.is_positive())
        .map(|r| BigUint::from(r.s))
        .collect();
    assert!(cross_check(&expected, &computed, &BigUint::from(1100u32)).is_agreement());
    // the fixture extends to 877843; past the cap only the expected side has entries
    let wide = cross_check(&expected, &computed, &BigUint::from(10_000u32));
    assert_eq!(wide.only_expected, vec![BigUint::from(1367u32), BigUint::from(1627u32), BigUint::from(4177u32), BigUint::from(9011u32), BigUint::from(9551u32)]);
    assert!(wide.only_computed.is_empty());
}

#[test]
fn published_exponents_are_the_fixture_without_three() {
    let fixture: Vec<u64> = parse_bfile(&fixture("a028491.txt"))
        .unwrap()
        .into_iter()
        .map(|e| e.value.try_into().unwrap())
        .collect();
    assert_eq!(fixture[0], 3);
    assert_eq!(&fixture[1..], known_positive_exponents().as_slice());
}
