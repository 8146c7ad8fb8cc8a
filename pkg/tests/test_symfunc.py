import itertools

import pytest

from strandlab.partitions import Partition, SkewShape, enumerate_partitions, p_rs, rect_complement
from strandlab.symfunc import (PairSchurSum, SchurSum, count_ssyt, dim_schur, jpw_character,
                               lascoux_character, lr_coeff, lr_product, pieri, schur_complex_terms,
                               skew_expand, strand_length, twisted_schur_complex_character)


def brute_lr(lam, mu, nu):
    """Multiplicity via characters: expand s_mu s_nu by counting SSYT weights."""
    n = len(lam) + 1
    from strandlab.symfunc import kostka_weights
    prod = {}
    for a, ca in kostka_weights(mu, n).items():
        for b, cb in kostka_weights(nu, n).items():
            w = tuple(x + y for x, y in zip(a, b))
            prod[w] = prod.get(w, 0) + ca * cb
    # peel off dominant weights from the top
    out = {}
    rem = dict(prod)
    for shape in enumerate_partitions(sum(lam)):
        if len(shape) > n:
            continue
        w = tuple(shape) + (0,) * (n - len(shape))
        c = rem.get(w, 0)
        if c:
            out[shape] = c
            for v, k in kostka_weights(shape, n).items():
                rem[v] = rem.get(v, 0) - c * k
    return out.get(Partition(lam), 0)


@pytest.mark.parametrize("lam,n,expected", [((2, 1), 3, 8), ((1,) * 5, 4, 0), ((2, 1, 1), 4, 15)])
def test_dim_examples(lam, n, expected):
    assert dim_schur(lam, n) == expected
    assert count_ssyt(lam, n) == expected


def test_lr_examples():
    assert lr_coeff((2, 1), (1,), (1, 1)) == 1
    assert lr_coeff((3, 2), (2, 1), (1, 1)) == 1
    assert lr_coeff((3,), (1,), (1, 1)) == 0
    assert lr_coeff((3, 2, 1), (2, 1), (2, 1)) == 2


def test_lr_against_weight_peeling():
    for mu, nu in itertools.product([(1,), (2,), (1, 1), (2, 1)], repeat=2):
        for lam in lr_product(mu, nu):
            assert lr_coeff(lam, mu, nu) == brute_lr(lam, mu, nu)


def test_lr_commutative_and_associative():
    shapes = [Partition(p) for p in [(1,), (2,), (1, 1), (2, 1)]]
    for a, b in itertools.product(shapes, repeat=2):
        assert SchurSum.single(a) * SchurSum.single(b) == SchurSum.single(b) * SchurSum.single(a)
    a, b, c = (SchurSum.single(s) for s in shapes[1:4])
    assert (a * b) * c == a * (b * c)


def test_pieri():
    assert pieri((1,), 2) == SchurSum({(3,): 1, (2, 1): 1})
    assert pieri((), 3, "column") == SchurSum.single((1, 1, 1))
    for i, r in [(1, 1), (2, 1), (1, 2)]:
        mu = Partition((i,) + (1,) * (r + i - 1))
        assert pieri(mu, 2)[(i,) + (1,) * (r + i + 1)] == 0
    for mu in [p for k in range(5) for p in enumerate_partitions(k)]:
        for k in range(1, 4):
            row = pieri(mu, k)
            assert row == SchurSum(lr_product(mu, (k,)))
            col = pieri(mu, k, "column")
            assert col == SchurSum(lr_product(mu, (1,) * k))


def test_skew_expand():
    assert skew_expand(SkewShape(Partition((2, 2)), Partition((1,)))) == SchurSum.single((2, 1))
    assert skew_expand(SkewShape(Partition((2, 1)), Partition(()))) == SchurSum.single((2, 1))
    assert skew_expand(SkewShape(Partition((2, 1)), Partition((1,)))) == SchurSum({(2,): 1, (1, 1): 1})
    # rectangle rule
    for a, b in [(2, 2), (3, 2), (2, 3)]:
        for nu in [p for k in range(a * b + 1) for p in enumerate_partitions(k, b, a)]:
            sh = SkewShape(Partition((a,) * b), nu)
            assert skew_expand(sh) == SchurSum.single(rect_complement(a, b, nu))


def test_schur_complex_terms():
    t = schur_complex_terms((1, 1), 1)
    assert [(s.outer, s.inner, o) for s, o in t] == [(Partition((1, 1)), Partition((1,)), Partition((1,)))]
    t = schur_complex_terms((1, 1), 2)
    assert [(s.inner, o) for s, o in t] == [(Partition((1, 1)), Partition((2,)))]
    t = schur_complex_terms((2,), 0)
    assert [(s.outer, s.inner, o) for s, o in t] == [(Partition((2,)), Partition(()), Partition(()))]


def test_jpw_examples():
    assert jpw_character(1, 1, 0, 4) == SchurSum.single((1, 1))
    assert jpw_character(1, 1, 1, 4) == SchurSum.single((2, 1, 1))
    assert jpw_character(1, 1, 3, 4) == SchurSum()
    with pytest.raises(ValueError):
        jpw_character(2, 1, 0, 3)


def test_lascoux_examples():
    assert lascoux_character(1, 1, 0, 3, 3) == PairSchurSum({((1, 1), (1, 1)): 1})
    # (alpha, beta) = ((1), ()) and ((), (1)) substituted directly
    deg1 = lascoux_character(1, 1, 1, 3, 3)
    assert deg1 == PairSchurSum({((2, 1), (1, 1, 1)): 1, ((1, 1, 1), (2, 1)): 1})
    assert deg1.dim(3, 3) == 16
    assert lascoux_character(2, 0, 0, 2, 2) == PairSchurSum({((), ()): 1})
    with pytest.raises(ValueError):
        lascoux_character(0, 1, 0, 3, 3)


def test_multiplicity_one_at_character_level():
    """Each P_{r,s}(alpha) occurs once in the twisted Schur complex character."""
    for n in range(2, 7):
        for s in range(1, n):
            for r in range(0, n - s):
                if s * (n - s - r) > 6:
                    continue
                lam = Partition((s,) * (n - s - r))
                for i in range(strand_length(r, s, n) + 1):
                    ch = twisted_schur_complex_character(lam, n, i, s)
                    for alpha in enumerate_partitions(i, s, n - s - r):
                        assert ch[p_rs(alpha, r, s)] == 1, (n, r, s, alpha)


def test_json_roundtrip():
    ch = SchurSum({(2, 1): 2, (1,): 1})
    assert SchurSum.from_json(ch.to_json()) == ch
    pc = PairSchurSum({((1,), (2,)): 3})
    assert PairSchurSum.from_json(pc.to_json()) == pc
    assert pc.to_json() == [{"shapeE": [1], "shapeF": [2], "coeff": 3}]
