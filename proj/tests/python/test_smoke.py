"""Smoke tests for the python bindings."""

import ratlin

EXAMPLE_RM = "ratmatrix 2 2\nl^2+l-1 / l ; -1 / l\n-1 ; -l^2+l-2\n"

EXAMPLE_PSM = (
    "polymatrix 4 4\n"
    "l ; 0 ; 1 ; 1\n"
    "0 ; 1 ; 0 ; l\n"
    "1 ; 0 ; l+1 ; 0\n"
    "l ; l ; 0 ; l-1\n"
    "staterows: 1 2\n"
    "statecols: 1 2\n"
)


def test_invariant_orders_at_infinity():
    g = ratlin.RatMatrix.parse(EXAMPLE_RM)
    assert g.invariant_orders("inf") == [-2, -1]
    ls = g.local_structure("0")
    assert ls["pole_mults"] == [1]
    assert ls["zero_mults"] == []


def test_smith_forms():
    p = ratlin.PolyMatrix.parse("polymatrix 2 2\nl ; 1\n0 ; l\n")
    assert p.smith_form() == ["1", "l^2"]
    assert p.smith_form() == p.smith_via_minors()
    assert p.normal_rank() == 2
    assert p.rank_at("0") == 1


def test_system_matrix_roundtrip_and_structure():
    psm = ratlin.SystemMatrix.parse(EXAMPLE_PSM)
    g = ratlin.RatMatrix.parse(EXAMPLE_RM)
    assert psm.transfer_function() == g
    assert psm.is_strongly_minimal()
    rep = psm.structure_at("0")
    assert rep["pole_eds"] == [1]
    assert rep["zero_eds"] == []
    assert psm.structure_at_infinity() == [-2, -1]
    assert ratlin.recover_infinite_orders(psm, 1) == [-2, -1]


def test_linearization_checks():
    psm = ratlin.SystemMatrix.parse(EXAMPLE_PSM)
    g = ratlin.RatMatrix.parse(EXAMPLE_RM)
    assert ratlin.is_linearization_in(psm, g, "all")["holds"]
    assert ratlin.is_g_strong(psm, g, 1)["holds"]
    bad = ratlin.is_g_strong(psm, g, 2)
    assert not bad["holds"]
    assert bad["witness"]


def test_eigenvalues_and_regions():
    g = ratlin.RatMatrix.parse("ratmatrix 2 2\nl-2 ; 0\n0 ; 1\n")
    evs = g.eigenvalues()
    assert len(evs) == 1
    assert evs[0]["point"] == "2"
    assert evs[0]["zero_mults"] == [1]
    assert g.eigenvalues("except:{2}") == []


def test_build_family():
    params = "sigma: 0\nA0:\n1\nB0:\n0\nB1:\n1\n"
    built = ratlin.build("saad", params)
    g = built["g"]
    psm = built["psm"]
    assert psm.transfer_function() == g
    assert str(g).splitlines()[1] == "l^2+1 / l"
    assert g.invariant_orders("inf") == [-1]
