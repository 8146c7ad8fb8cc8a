import pytest

from strandlab.exactla import Echelon
from strandlab.periplectic_lab import (PeInstance, PreconditionError, build_pe_module,
                                       check_example_s1, pe_complex, run_pe, trace_eval_composite)
from strandlab.exactla import rank
from strandlab.superrep import (Block, GradedSubmodule, TensorAmbient, character_of,
                                check_irreducible, corrupt_phi_prime, pe_omega, pe_space,
                                verify_two_sided_axioms, young_symmetrizer_image)
from strandlab.symfunc import SchurSum


@pytest.fixture(scope="module")
def rep411():
    return run_pe(PeInstance(4, 1, 1))


@pytest.fixture(scope="module")
def cx411():
    return build_pe_module(PeInstance(4, 1, 1))


def test_411_dims_and_characters(rep411):
    assert [r["dim"] for r in rep411.degrees] == [6, 15, 10]
    chars = [r["character"] for r in rep411.degrees]
    assert chars == [SchurSum({(1, 1): 1}), SchurSum({(2, 1, 1): 1}), SchurSum({(3, 1, 1, 1): 1})]
    assert all(rep411.conjecture_equal)
    assert rep411.passed


def test_411_axioms(rep411):
    ax = rep411.axioms
    assert ax["sq_zero_phi"] and ax["sq_zero_phi_prime"] and ax["bracket"] and ax["degree_shift"]
    # the plain commutator is not the relation that holds
    assert not ax["commutator_form"]


def test_411_surj_examples(rep411):
    pairs = {(tuple(x["alpha"]), tuple(x["beta"])): x for x in rep411.surj}
    for key in [((1,), ()), ((2,), (1,))]:
        assert pairs[key]["phi"] and pairs[key]["phi_prime"]


def test_411_json_fields(rep411):
    js = rep411.to_json()
    for f in ("instance", "degrees", "axioms", "lemmas", "irreducible", "conjecture"):
        assert f in js
    assert set(js["lemmas"]) == {"multiplicity_one", "surj"}


def test_column_shape_keeps_everything(cx411):
    # lam = (1,1) has no row of length 2, so nothing is evaluated away
    assert cx411.info["k"] == cx411.info["S"]
    assert cx411.info["i"] == {0: 0, 1: 1, 2: 0}


def test_euler_bookkeeping(cx411):
    info = cx411.info
    lhs = sum((-1) ** h * d for h, d in cx411.module.dims_by_degree().items())
    rhs = sum((-1) ** h * (info["k"].get(h, 0) - info["k_cap_i"].get(h, 0)) for h in info["k"])
    assert lhs == rhs


def test_closure_generators_agree(cx411):
    a = check_irreducible(cx411, "minimal")
    b = check_irreducible(cx411, "full")
    assert a["irreducible"] and b["irreducible"] and a["exact"]
    assert [g["closure_dim"] for g in a["generated"]] == [g["closure_dim"] for g in b["generated"]]


def test_wedge_square_not_irreducible(cx411):
    S = cx411.info["S_module"]
    assert S.dim == 32
    assert not check_irreducible(pe_complex(S))["irreducible"]


def test_trivial_line_irreducible():
    sp = pe_space(2)
    amb = TensorAmbient(sp, [range(sp.size)] * 2)
    w = {amb.encode_word((x, y)): c for x, y, c in pe_omega(sp)}
    key = (1, 0, 0)
    M = GradedSubmodule(amb, {key: Block(key, Echelon([w]))})
    assert check_irreducible(pe_complex(M))["irreducible"]


def test_vector_rep_irreducible():
    sp = pe_space(3)
    assert check_irreducible(pe_complex(young_symmetrizer_image((1,), sp)))["irreducible"]


@pytest.mark.parametrize("mode", ["negate", "symmetric"])
def test_corrupted_phi_prime_detected(cx411, mode):
    ax = verify_two_sided_axioms(corrupt_phi_prime(cx411, mode))
    assert not ax["bracket"]
    if mode == "negate":
        assert ax["sq_zero_phi_prime"]


@pytest.mark.parametrize("n,r,s", [(4, 1, 1), (5, 2, 2), (5, 1, 1)])
def test_degree_one_shape(n, r, s):
    cx = build_pe_module(PeInstance(n, r, s))
    shape = (s + 1,) + (s,) * (s - 1 + r) + (1,)
    assert character_of(cx.module, 1) == SchurSum({shape: 1})


def test_degree_zero_rectangle():
    inst = PeInstance(5, 2, 2)
    cx = build_pe_module(inst)
    assert character_of(cx.module, 0) == SchurSum({(2,) * 4: 1})


def test_preconditions():
    with pytest.raises(PreconditionError, match=r"requires dim E > s\+r"):
        PeInstance(3, 2, 1)
    with pytest.raises(PreconditionError):
        PeInstance(4, 1, 0)
    with pytest.raises(PreconditionError):
        check_example_s1(3, 1)


def test_trace_eval_golden():
    for n in (3, 4):
        M = trace_eval_composite((2, 1), n)
        assert rank(M) == 2 * n


def test_example_s1():
    rep = check_example_s1(4, 1)
    assert rep["passed"]
    deg1 = rep["degrees"][1]
    # W_1 = wedge^3 E* (x) E*
    assert SchurSum.from_json(deg1["character"]) == SchurSum({(1, 1, 1, 1): 1, (2, 1, 1): 1})
    assert SchurSum.from_json(rep["degrees"][0]["character"]) == SchurSum({(1, 1): 1})
    assert SchurSum.from_json(deg1["quotient"]) == SchurSum({(2, 1, 1): 1})
