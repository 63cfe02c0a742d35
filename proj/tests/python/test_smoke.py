"""Python smoke tests against the built extension module."""

import diagext

QS = """
field GF(5)
unit q = 2
vertex v
arrow x: v -> v
arrow y: v -> v
relation x*y - q*y*x
relation x*x
relation y*y
"""

QXY_Q = QS.replace("field GF(5)", "field Q")

QPLANE = """
field Q
unit q = 2
vertex v
arrow x: v -> v
arrow y: v -> v
relation x*x
relation x*y + q*y*x
relation y*y
"""

KX2 = "field Q\nvertex v\narrow x: v -> v\nrelation x*x\n"

STRING_MOD = "module cokernel [[-y, 0], [x, q*y]]"
CYC_MOD = "module cokernel [[x+y]]"


def test_commands_listed():
    assert "resolve" in diagext.commands()
    assert "verify-grcent" in diagext.commands()


def test_string_module_betti():
    rep = diagext.resolve(QS, STRING_MOD, n=5)
    assert rep["betti"] == [2, 2, 2, 2, 2, 2]
    assert rep["linear"] is True


def test_diagonal_generic_vs_gf5():
    d = diagext.diagonal(QXY_Q, CYC_MOD, n=6)
    assert d["dims"] == [1, 0, 0, 0, 0, 0, 0]
    d5 = diagext.diagonal(QS, CYC_MOD, n=6)
    assert d5["dims"] == [1, 0, 0, 0, 1, 0, 0]


def test_periodicity_verdicts():
    v = diagext.periodicity(QS, CYC_MOD, n=6, window=8)
    assert v["kind"] == "Periodic"
    assert v["period"] == 4
    v1 = diagext.periodicity(QXY_Q, CYC_MOD, n=6, window=8, units={"q": "-1"})
    assert v1["kind"] == "Periodic" and v1["period"] == 1
    vg = diagext.periodicity(QXY_Q, CYC_MOD, n=6, window=8)
    assert vg["kind"] == "NotDetected"


def test_hochschild_and_grcent():
    hh = diagext.hochschild(KX2, n=4)
    assert hh["dims"] == [2, 1, 1, 1, 1]
    assert hh["delta_dims"] == [1, 0, 1, 0, 1]
    rep = diagext.verify_grcent(KX2, n=4)
    assert rep["pass"] is True


def test_center_of_period_one_module_algebra():
    rep = diagext.ext_simples(QPLANE, n=5)
    assert rep["dims"] == [1, 2, 3, 4, 5, 6]


def test_errors_surface():
    bad = diagext.run("resolve", QS, ["module cokernel [[z]]"])
    assert bad["exit_code"] == 1
    assert "UnknownGenerator" in bad["error"]

    hyp = diagext.run("simple-syzygy", QS, window=6)
    assert hyp["exit_code"] == 2
