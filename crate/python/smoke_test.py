"""Smoke test for the pyfregcheck extension module.

Build and install it first:

    pip install maturin
    pip install --no-build-isolation ./crates/python
"""

import json

import pyfregcheck as fc


def main():
    R = fc.Ring(["a", "b", "c", "d", "t"], [4, 8, 8, 24, 2], p=17)
    I = R.ideal(["(a^2+t^4)*a^2 - b*c", "(a^2+t^4)*(b^3-d) - d*c", "b*(b^3-d) - d*a^2"])
    print("dim R =", I.dimension())
    print("basis size:", len(I.groebner_basis()))

    J = R.ideal(I.generators + ["a^17", "d^17"])
    x = R.parse("b^3*t^3")
    print("x^17 in (a^17, d^17) + I:", J.contains(x ** 17))

    E = fc.QDivisor.standard(2)
    print(f"E = {E}, deg E = {E.degree}, h0(iE) = {E.section_dims(6)}")

    for report in json.loads(fc.verify("lemma-4.2", p=17, m=4, n=3, k=2)):
        print(report["claim"], report["verdict"])
    for row in json.loads(fc.sweep(4, 3, [3, 5, 7])):
        print("sweep p =", row["instance"]["p"], row["verdict"])

    assert I.dimension() == 3
    assert J.contains(x ** 17)


if __name__ == "__main__":
    main()
