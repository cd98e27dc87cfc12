use pyo3::prelude::*;
use pyo3::types::PyDict;

fn module(py: Python<'_>) -> Bound<'_, PyModule> {
    let m = PyModule::new(py, "pyfregcheck").unwrap();
    pyfregcheck::register(&m).unwrap();
    m
}

fn run(code: &str) {
    Python::attach(|py| {
        let globals = PyDict::new(py);
        globals.set_item("fc", module(py)).unwrap();
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None).unwrap_or_else(|e| panic!("{e}"));
    });
}

#[test]
fn ring_polynomial_and_ideal() {
    run(r#"
R = fc.Ring(["a", "b", "c", "d", "t"], [4, 8, 8, 24, 2], p=5)
I = R.ideal(["(a^2+t^4)*a^2 - b*c", "(a^2+t^4)*(b^3-d) - d*c", "b*(b^3-d) - d*a^2"])
assert R.characteristic == 5
f = R.parse("b*t") ** 2
assert str(f) == "b^2*t^2"
assert f.degree() == 20 and f.is_homogeneous()
g = R.parse("b*(b^3-d) - d*a^2")
assert I.contains(R.parse("t^2") * g + g * g)
assert not I.contains("b^3*t^3")
assert I.dimension() == 3
gb = I.groebner_basis()
assert all(I.contains(g) for g in gb)
assert I.normal_form("b*c") == I.normal_form("(a^2+t^4)*a^2")
"#);
}

#[test]
fn errors_map_to_python_exceptions() {
    run(r#"
try:
    fc.Ring(["x"], p=4)
    raise AssertionError("4 accepted as a prime")
except ValueError:
    pass
R = fc.Ring(["x", "y"])
try:
    R.parse("x + z")
    raise AssertionError("unknown variable accepted")
except ValueError:
    pass
I = R.ideal(["x^3 - y^3", "x*y - y^2"])
try:
    I.groebner_basis(budget=1)
    raise AssertionError("budget ignored")
except fc.FregcheckError:
    pass
"#);
}

#[test]
fn divisors() {
    run(r#"
E = fc.QDivisor("1/2@VX, 1/2@VY, 1/4@VXY")
assert E == fc.QDivisor.standard(2)
assert E.degree == "5/4"
assert (E * 4).floor_degree() == 5
assert E.section_dims(2) == [1, 1, 3]
assert (E + -E).degree == "0"
"#);
}

#[test]
fn verification_reports_are_json() {
    run(r#"
import json
[r] = json.loads(fc.verify("lemma-4.2-replay", m=4, n=3, k=2))
assert r["verdict"] == "verified"
ids = [c["id"] for c in json.loads(fc.list_claims())]
assert "lemma-4.2" in ids and "sec5-sweep" in ids
try:
    fc.verify("lemma-4.2", p=17, m=4, n=3)
    raise AssertionError("missing k accepted")
except ValueError:
    pass
rows = json.loads(fc.sweep(4, 3, [5, 7]))
assert [r["instance"]["p"] for r in rows] == [5, 7]
"#);
}
