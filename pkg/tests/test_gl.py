import pytest

from strandlab.exactla import Echelon
from strandlab.gl_lab import (GlInstance, PreconditionError, check_prop_glcomplex,
                              dimension_condition, gl_complex, glcomplex_composite,
                              glcomplex_instances, run_gl, trace_eval_scalar, trace_invariance)
from strandlab.superrep import (Block, GradedSubmodule, TensorAmbient, check_irreducible,
                                gl_space, gl_trace_element, mixed_symmetrizer_image)
from strandlab.symfunc import PairSchurSum


@pytest.fixture(scope="module")
def rep3311():
    return run_gl(GlInstance(3, 3, 1, 1))


def test_3311(rep3311):
    assert [r["dim"] for r in rep3311.degrees] == [9, 16, 9]
    chars = [r["character"] for r in rep3311.degrees]
    assert chars[0] == PairSchurSum({((1, 1), (1, 1)): 1})
    assert chars[1] == PairSchurSum({((2, 1), (1, 1, 1)): 1, ((1, 1, 1), (2, 1)): 1})
    assert chars[2] == PairSchurSum({((2, 1, 1), (2, 1, 1)): 1})
    assert all(rep3311.conjecture_equal)
    assert rep3311.passed and rep3311.irreducible["exact"]


def test_3311_json(rep3311):
    js = rep3311.to_json()
    assert js["instance"] == {"kind": "gl", "n": 3, "m": 3, "r": 1, "s": 1,
                              "lambda": [1], "mu": [1]}
    assert js["conjecture"]["per_degree_equal"] == [True, True, True]


@pytest.mark.parametrize("args", [(3, 3, 0, 1), (3, 3, 1, 0), (2, 3, 1, 2), (3, 1, 1, 1)])
def test_rejections(args):
    with pytest.raises(PreconditionError):
        GlInstance(*args)


def test_dimension_condition():
    assert dimension_condition((1,), (1,), 3, 3)
    assert not dimension_condition((1,), (1,), 3, 2)
    assert dimension_condition((2,), (1, 1), 2, 4)


def test_rectangular_composites_vanish():
    for lam, mu, n, m in [((1,), (1,), 2, 2), ((2,), (2,), 3, 3), ((1, 1), (2,), 4, 2),
                          ((2, 2), (1,), 3, 3)]:
        assert dimension_condition(lam, mu, n, m)
        assert check_prop_glcomplex(lam, mu, n, m)["zero"]


@pytest.mark.parametrize("n,m", [(3, 3), (3, 2), (2, 3), (4, 2)])
def test_hook_counterexample_formula(n, m):
    """lam = (2,1), mu = (1): (x,y) -> 3[(n-1-m+[x!=y])(x,y) - [x!=y](y,x)]."""
    sp = gl_space(n, m)
    small = TensorAmbient(sp, [sp.letters(0)] * 2)
    rows = glcomplex_composite((2, 1), (1,), n, m)
    src = [(x, y) for x in range(n) for y in range(n)]
    for (x, y), row in zip(src, rows):
        got = {small.word_of(k): c for k, c in row.items()}
        ne = int(x != y)
        exp = {}
        for w, c in (((x, y), 3 * (n - 1 - m + ne)), ((y, x), -3 * ne)):
            exp[w] = exp.get(w, 0) + c
        assert got == {w: c for w, c in exp.items() if c}


def test_instances_split_by_shape():
    res = [check_prop_glcomplex(*i) for i in glcomplex_instances()]
    rect = lambda p: len(set(p)) <= 1
    assert len(res) == 92
    assert all(r["zero"] for r in res if rect(r["lambda"]) and rect(r["mu"]))
    assert all(not (rect(r["lambda"]) and rect(r["mu"])) for r in res if not r["zero"])


def test_trace_eval_scalar():
    assert trace_eval_scalar(2, 2) == 0
    assert trace_eval_scalar(3, 3) == 0
    assert trace_eval_scalar(3, 1) == 2


@pytest.mark.parametrize("n,m", [(1, 1), (2, 1), (2, 3)])
def test_trace_invariant(n, m):
    assert trace_invariance(n, m)


def test_untwisted_vv_star_not_irreducible():
    sp = gl_space(2, 1)
    cx = gl_complex(mixed_symmetrizer_image((1,), (1,), sp))
    assert not check_irreducible(cx)["irreducible"]


def test_trivial_line_irreducible():
    sp = gl_space(2, 1)
    amb = TensorAmbient(sp, [sp.letters(0), sp.letters(1)])
    t = {amb.encode_word((x, y)): c for x, y, c in gl_trace_element(sp)}
    key = (1, 0, 0, 0)
    M = GradedSubmodule(amb, {key: Block(key, Echelon([t]))})
    assert check_irreducible(gl_complex(M))["irreducible"]


@pytest.mark.slow
def test_4411():
    rep = run_gl(GlInstance(4, 4, 1, 1))
    assert [r["dim"] for r in rep.degrees] == [36, 160, 315, 288, 100]
    assert rep.passed
