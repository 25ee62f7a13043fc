import pytest

import vmeander as vm

TREFOIL = "O1+U2+O3+U1+O2+U3+"
VIRTUAL = "O1-U2-O3-U1-O2-U4+O4+U3-"


def test_gauss_code_round_trip():
    c = vm.GaussCode(TREFOIL)
    assert str(c) == TREFOIL
    assert len(c) == 6
    assert c.chord_count == 3
    assert vm.GaussCode("") == vm.GaussCode()


def test_bad_codes_raise_value_error():
    with pytest.raises(ValueError):
        vm.GaussCode("O1+O1+")
    with pytest.raises(vm.GaussError):
        vm.GaussCode("O1+")


def test_invariants():
    c = vm.GaussCode(TREFOIL)
    assert vm.writhe(c) == 3
    assert vm.odd_writhe(c) == 0
    assert vm.carter_genus(c) == 0
    assert vm.f_polynomial(c) == vm.f_polynomial_frontier(c)
    assert vm.affine_index_polynomial(c) == "0"


def test_arc_numbers():
    r = vm.min_arc_number(vm.GaussCode(TREFOIL))
    assert r["min_arcs"] == 2
    assert vm.is_k_arc_split(vm.GaussCode(TREFOIL), r["witness"])
    assert vm.brute_min_arc_number(vm.GaussCode(VIRTUAL)) == vm.min_arc_number(vm.GaussCode(VIRTUAL))["min_arcs"]


def test_meanderize_keeps_invariants_and_replays():
    c = vm.GaussCode(VIRTUAL)
    d = vm.Diagram.from_gauss(c)
    r = vm.meanderize(d)
    out = vm.Diagram.parse(r["diagram"])
    assert vm.is_strong_meander(out)
    assert out.genus == 0
    assert vm.f_polynomial(out.to_gauss()) == vm.f_polynomial(c)
    assert vm.replay_trace(r["trace"]) == r["diagram"]


def test_trefoil_is_fixed():
    d = vm.Diagram.from_gauss(vm.GaussCode(TREFOIL))
    assert vm.semimeanderize(d)["identity"]
    assert vm.meanderize(d)["identity"]


def test_cli_commands():
    recs = vm.run("arcs", TREFOIL)
    assert recs[-1]["min_arcs"] == 2
    assert vm.report_ok(vm.run("semimeander", VIRTUAL))
    assert vm.report_ok(vm.run("verify", "", 3, 10))
    assert len(vm.run("gen", 4, 5, 3)) == 3
