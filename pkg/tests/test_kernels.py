"""The numba and numpy kernels against a pure-Python reference."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from strandlab import _kernels as K
from strandlab.superrep import (TensorAmbient, apply_perm_py, derive_py, gl_space, pe_phi,
                                pe_phi_prime, pe_space, perm_sign)


def as_dict(ids, keys, coeffs, amb):
    out = {}
    for a, k, c in zip(ids.tolist(), keys.tolist(), coeffs.tolist()):
        out.setdefault(a, {})[amb.word_of(k)] = c
    return out


words_st = st.integers(2, 4).flatmap(lambda d: st.lists(
    st.lists(st.integers(0, 5), min_size=d, max_size=d), min_size=1, max_size=6))


@pytest.mark.parametrize("jit", [True, False])
@given(words=words_st, data=st.data())
def test_perms_match_reference(jit, words, data):
    if jit and not K.HAVE_NUMBA:
        pytest.skip("numba missing")
    sp = pe_space(3)
    d = len(words[0])
    amb = TensorAmbient(sp, [range(6)] * d)
    perms = data.draw(st.lists(st.permutations(range(d)), min_size=1, max_size=3))
    W = np.array(words, dtype=np.int64)
    ids = np.arange(len(words), dtype=np.int64)
    coeffs = np.array(data.draw(st.lists(st.integers(-3, 3), min_size=len(words), max_size=len(words))),
                      dtype=np.int64)
    P = np.array(perms, dtype=np.int64)
    S = np.array([perm_sign(p) for p in perms], dtype=np.int64)
    fn = K._perms_jit if jit else K._perms_numpy
    got = as_dict(*K.merge(*fn(ids, W, coeffs, P, S, sp.parity_array), amb.base), amb)
    for a, (w, c) in enumerate(zip(words, coeffs.tolist())):
        ref = {}
        for p, sg in zip(perms, S.tolist()):
            for k, v in apply_perm_py({tuple(w): c}, p, sp.parity, sg).items():
                ref[k] = ref.get(k, 0) + v
        ref = {k: v for k, v in ref.items() if v}
        assert got.get(a, {}) == ref


@pytest.mark.parametrize("jit", [True, False])
@given(words=words_st, which=st.sampled_from(["phi", "phi_prime"]))
def test_derivation_matches_reference(jit, words, which):
    if jit and not K.HAVE_NUMBA:
        pytest.skip("numba missing")
    sp = pe_space(3)
    op = pe_phi(sp, 0, 1) if which == "phi" else pe_phi_prime(sp, 0, 2)
    d = len(words[0])
    amb = TensorAmbient(sp, [range(6)] * d)
    W = np.array(words, dtype=np.int64)
    ids = np.arange(len(words), dtype=np.int64)
    ptr, dst, val = op.csr()
    fn = K._derive_jit if jit else K._derive_numpy
    got = as_dict(*K.merge(*fn(ids, W, np.ones(len(words), dtype=np.int64), ptr, dst, val, 1,
                               sp.parity_array), amb.base), amb)
    for a, w in enumerate(words):
        assert got.get(a, {}) == derive_py(op, {tuple(w): 1})


def test_env_flag_selects_path(monkeypatch):
    monkeypatch.setenv("STRAND_JIT", "0")
    assert not K.use_jit()
    monkeypatch.setenv("STRAND_JIT", "1")
    assert K.use_jit() == K.HAVE_NUMBA


def test_encode_decode_roundtrip():
    rng = np.random.default_rng(0)
    W = rng.integers(0, 7, size=(50, 5))
    assert np.array_equal(K.decode(K.encode(W, 7), 7, 5), W)


def test_merge_cancels():
    ids = np.array([0, 0, 1], dtype=np.int64)
    W = np.array([[1, 2], [1, 2], [0, 0]], dtype=np.int64)
    c = np.array([3, -3, 2], dtype=np.int64)
    i, k, v = K.merge(ids, W, c, 3)
    assert i.tolist() == [1] and v.tolist() == [2]


def test_headroom_guard():
    with pytest.raises(OverflowError):
        K.check_headroom(np.array([1 << 50], dtype=np.int64), 8)


def test_module_identical_under_both_paths(monkeypatch):
    from strandlab.superrep import young_symmetrizer_image
    sp = gl_space(2, 1)
    results = []
    for flag in ("1", "0"):
        monkeypatch.setenv("STRAND_JIT", flag)
        M = young_symmetrizer_image((2, 1), sp)
        results.append({k: sorted(b.basis.rows.items()) for k, b in M.blocks.items()})
    assert results[0] == results[1]
