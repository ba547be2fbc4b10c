use std::path::PathBuf;
use zcenter::builtin;
use zcenter::data::{AlgebraData, CategoryData};
use zcenter::Category;
use zcenter_cli::io::{canonical_json, load_algebra, load_category, parse_algebra, parse_category};

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn read(name: &str) -> String {
    std::fs::read_to_string(data_dir().join(name)).unwrap()
}

fn categories() -> Vec<(&'static str, CategoryData)> {
    vec![
        ("vec.json", builtin::vec_data()),
        ("vecz2.json", builtin::vecz2_data()),
        ("fib.json", builtin::fib_data()),
        ("ising.json", builtin::ising_data()),
        ("fib_corrupted.json", builtin::fib_corrupted_data()),
    ]
}

fn algebras() -> Vec<(&'static str, AlgebraData)> {
    vec![
        ("vec_trivial.alg.json", builtin::trivial_algebra_data("vec.json", 1, 0)),
        ("vecz2_trivial.alg.json", builtin::trivial_algebra_data("vecz2.json", 2, 0)),
        ("fib_trivial.alg.json", builtin::trivial_algebra_data("fib.json", 2, 0)),
        ("ising_trivial.alg.json", builtin::trivial_algebra_data("ising.json", 3, 0)),
        ("vecz2_group.alg.json", builtin::z2_group_algebra_data()),
        ("vecz2_broken.alg.json", builtin::z2_broken_algebra_data()),
        ("ising_psi.alg.json", builtin::ising_psi_algebra_data()),
    ]
}

#[test]
fn shipped_categories_match_bundled_data() {
    for (file, want) in categories() {
        let got = parse_category(&read(file), file).unwrap();
        assert_eq!(got, want, "{}", file);
    }
}

#[test]
fn shipped_algebras_match_bundled_data() {
    for (file, want) in algebras() {
        let got = parse_algebra(&read(file), file).unwrap();
        assert_eq!(got, want, "{}", file);
    }
}

#[test]
fn round_trip_is_byte_stable() {
    for (file, _) in categories() {
        let text = read(file);
        let d = parse_category(&text, file).unwrap();
        assert_eq!(canonical_json(&d), text, "{}", file);
        let again = parse_category(&canonical_json(&d), file).unwrap();
        assert_eq!(canonical_json(&again), text);
    }
    for (file, _) in algebras() {
        let text = read(file);
        assert_eq!(canonical_json(&parse_algebra(&text, file).unwrap()), text, "{}", file);
    }
}

#[test]
fn fib_file_validates() {
    let lc = load_category(data_dir().join("fib.json").to_str().unwrap(), None).unwrap();
    assert!(lc.cat.validate().pass);
    let lc = load_category("fib", None).unwrap();
    assert!(lc.cat.validate().pass);
}

#[test]
fn structurally_bad_files_are_rejected() {
    let e = load_category(data_dir().join("ising_bad_dual.json").to_str().unwrap(), None).err().unwrap();
    assert!(e.0.contains("involution"), "{}", e);
    let e = load_category(data_dir().join("fib_missing_f.json").to_str().unwrap(), None).err().unwrap();
    assert!(e.0.contains("missing F entry [1,0,1,1,1,1,0,0,0,0]"), "{}", e);
    assert!(load_category("no_such_category", None).is_err());
}

#[test]
fn schema_violations_name_the_field() {
    let text = read("vecz2.json").replacen("\"dual\": [0, 1]", "\"dual\": [0, \"one\"]", 1);
    let e = parse_category(&text, "x.json").err().unwrap();
    assert!(e.0.starts_with("x.json: at dual[1]:"), "{}", e);
    let text = read("vecz2.json").replacen("\"fusion\"", "\"fusions\"", 1);
    let e = parse_category(&text, "x.json").err().unwrap();
    assert!(e.0.contains("fusion"), "{}", e);
    let text = read("vecz2_group.alg.json").replacen("[0, 1.0, 0.0]", "[0, 1.0]", 1);
    let e = parse_algebra(&text, "a.json").err().unwrap();
    assert!(e.0.contains("unit[0]"), "{}", e);
}

#[test]
fn tolerance_override_applies() {
    let lc = load_category("vecz2", Some(1e-5)).unwrap();
    assert_eq!(lc.cat.tol, 1e-5);
}

#[test]
fn algebra_specs() {
    let cat = Category::from_data(&builtin::ising_data()).unwrap();
    let a = load_algebra("ihom:sigma", &cat).unwrap();
    assert_eq!(a.algebra.carrier.mult, vec![1, 0, 1]);
    assert!(load_algebra("ihom:tau", &cat).is_err());
    let path = data_dir().join("ising_psi.alg.json");
    let b = load_algebra(path.to_str().unwrap(), &cat).unwrap();
    assert_eq!(b.canonical, read("ising_psi.alg.json"));
    assert!(cat.check_algebra(&b.algebra).pass);
}
