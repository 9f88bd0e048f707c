"""Smoke test for the hallvertex Python module."""

import json

import hallvertex as hv


def main():
    assert hv.coha_mul("a1", "x@[1]", "1@[1]") == "1@[2]"
    assert hv.coha_mul("a1", "x^2@[1]", "1@[1]") == "x1 + x2@[2]"
    assert hv.coha_mul("jordan", "1@[1]", "1@[1]") == "2@[2]"
    kronecker = json.dumps({"nodes": ["p", "q"], "arrows": [{"from": "p", "to": "q", "mult": 2}]})
    assert hv.coha_assoc(kronecker, "x1_p@[1,0]", "1@[0,1]", "x1_q@[0,1]")

    assert hv.s_matrix("jordan", [1], [1], -6, 0) == {0: "1"}
    assert hv.ybe("kronecker", [1, 0], [0, 1], [1, 1])
    y = hv.y_covertex("a1", "x1 + x2@[2]", [1], [1], 0, 2)
    assert y[2] == "1", y

    assert hv.verify_bialgebra("jordan", maxdim=2, degree=1) > 0

    ch = hv.lattice_character([[1]], 8)
    assert [ch.get(k, 0) for k in range(9)] == [1, 2, 1, 2, 4, 4, 5, 6, 9], ch
    assert hv.lattice_yop([[1]], "|1>", "|1>", 1, 2) == {1: "|2>", 2: "b(-1)|2>"}

    assert hv.grassmann_oracle("x^2", 1, 1) == "u1 + u2"
    fixed = json.dumps([
        {"class": "x1 + z", "even": [["x1 - x2", 1]]},
        {"class": "x2", "even": [["x2 - x1", -1]]},
    ])
    assert hv.pushforward(fixed, t0=True) == "1"

    try:
        hv.coha_mul("a1", "x1@[2]", "1@[1]")
    except ValueError:
        pass
    else:
        raise AssertionError("non-invariant class accepted")
    try:
        hv.pushforward(json.dumps([{"class": "1", "even": [["x1", 1]]}]), t0=True)
    except RuntimeError:
        pass
    else:
        raise AssertionError("non-polynomial pushforward accepted")
    print("smoke test passed")


if __name__ == "__main__":
    main()
