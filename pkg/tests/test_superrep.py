import pytest
from hypothesis import given, strategies as st

from strandlab.partitions import enumerate_partitions
from strandlab.superrep import (ClosureError, ResourceCapExceeded, TensorAmbient, apply_op_rows,
                                character_of, combine_ops, contract_batch, derive_py, even_basis,
                                gl_elementary, gl_phi_families, gl_space, koszul_sign,
                                pe_even, pe_even_from_matrix, pe_omega, pe_pairing,
                                pe_phi, pe_phi_families, pe_space,
                                permute_word, plain_space, rows_to_batch, young_symmetrizer_image)
from strandlab.symfunc import SchurSum, schur_complex_dim


def test_koszul_examples():
    par = (0, 1)
    assert koszul_sign((1, 0), (1, 1), par) == -1
    assert koszul_sign((1, 0), (0, 1), par) == 1
    assert koszul_sign((0, 1), (1, 1), par) == 1
    assert koszul_sign((2, 0, 1), (1, 1, 1), par) == 1


@given(st.permutations(range(4)), st.permutations(range(4)),
       st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_koszul_composition(p, q, word):
    par = (0, 1)
    w1 = permute_word(p, word)
    pq = tuple(q[p[k]] for k in range(4))
    assert permute_word(pq, word) == permute_word(q, w1)
    assert koszul_sign(pq, word, par) == koszul_sign(p, word, par) * koszul_sign(q, w1, par)


def test_derivation_example():
    sp = pe_space(1)
    X = pe_phi(sp, 0, 0)
    assert derive_py(X, {(1, 1): 1}) == {(0, 1): 1, (1, 0): -1}


def test_identity_acts_by_degree():
    sp = pe_space(2)
    ident = pe_even_from_matrix(sp, [[1, 0], [0, 1]])
    assert derive_py(ident, {(0, 1, 0): 1}) == {(0, 1, 0): 3}
    # on E* the identity acts by -1
    assert derive_py(ident, {(0, 2): 1}) == {}


def test_letter_actions():
    sp = pe_space(2)
    E12 = pe_even(sp, 0, 1)
    assert E12.apply_letter(1) == {0: 1}
    assert E12.apply_letter(2) == {3: -1}
    comm = combine_ops("c", [(1, E12 * pe_even(sp, 1, 0)), (-1, pe_even(sp, 1, 0) * E12)], sp)
    expect = combine_ops("d", [(1, pe_even(sp, 0, 0)), (-1, pe_even(sp, 1, 1))], sp)
    assert comm.entries == expect.entries


def test_families():
    sp = pe_space(3)
    phi, phip = pe_phi_families(sp)
    assert phi.param_space_dim == 6 and phip.param_space_dim == 3
    assert phi.degree_shift == -1 and phip.degree_shift == 1
    g = gl_space(2, 3)
    phi, phip = gl_phi_families(g)
    assert phi.param_space_dim == phip.param_space_dim == 6
    assert len(even_basis(g)) == 4 + 9


@pytest.mark.parametrize("n", [1, 2, 3])
def test_pe_bracket_on_letters(n):
    """{Phi(X), Phi'(Y)} on V equals the derivation of X o Y."""
    sp = pe_space(n)
    phi, phip = pe_phi_families(sp)
    from strandlab.periplectic_lab import pe_complex
    cx = pe_complex(young_symmetrizer_image((1,), sp))
    for a, X in zip(phi.ops, phi.param_matrices):
        for b, Y in zip(phip.ops, phip.param_matrices):
            lhs = combine_ops("l", [(1, a * b), (1, b * a)], sp)
            rhs = cx.bracket_element(X, Y)
            assert lhs.entries == rhs.entries


def test_gl_super_commutator():
    sp = gl_space(1, 1)
    x, y = gl_elementary(sp, 0, 1), gl_elementary(sp, 1, 0)
    anti = combine_ops("a", [(1, x * y), (1, y * x)], sp)
    ident = combine_ops("i", [(1, gl_elementary(sp, 0, 0)), (1, gl_elementary(sp, 1, 1))], sp)
    assert anti.entries == ident.entries


def test_symmetrizer_dims():
    M = young_symmetrizer_image((1, 1), plain_space(2, 2))
    assert M.dims_by_degree() == {0: 1, 1: 4, 2: 3}
    M = young_symmetrizer_image((3,), plain_space(3, 0))
    assert M.dim == 10
    M = young_symmetrizer_image((1, 1), pe_space(4), twist=1)
    assert M.dims_by_degree() == {0: 6, 1: 16, 2: 10}


@pytest.mark.parametrize("p,q", [(1, 1), (2, 1), (2, 2)])
def test_symmetrizer_matches_supercharacter(p, q):
    for k in range(1, 4):
        for lam in enumerate_partitions(k):
            M = young_symmetrizer_image(lam, plain_space(p, q))
            assert M.dim == schur_complex_dim(lam, p, q)


def test_character_examples():
    M = young_symmetrizer_image((1, 1), pe_space(4), twist=1)
    assert character_of(M, 1) == SchurSum({(2, 1, 1): 1, (1, 1, 1, 1): 1})
    assert character_of(M, 0) == SchurSum({(1, 1): 1})
    assert character_of(M, 2) == SchurSum({(3, 1, 1, 1): 1})


def _omega_vec(sp, elem):
    amb = TensorAmbient(sp, [range(sp.size)] * 2)
    return amb, {amb.encode_word((x, y)): c for x, y, c in elem}


@pytest.mark.parametrize("n", [1, 2, 3])
def test_omega_invariant(n):
    sp = pe_space(n)
    phi, phip = pe_phi_families(sp)
    amb, w = _omega_vec(sp, pe_omega(sp))
    for op in even_basis(sp) + phi.ops + phip.ops:
        assert not apply_op_rows(op, [w], amb)[0]


def test_plus_omega_not_invariant():
    sp = pe_space(2)
    phi, phip = pe_phi_families(sp)
    plus = [(x, y, abs(c)) for x, y, c in pe_omega(sp)]
    amb, w = _omega_vec(sp, plus)
    assert any(apply_op_rows(op, [w], amb)[0] for op in phi.ops + phip.ops)


def test_eval_of_omega_is_zero():
    sp = pe_space(3)
    amb, w = _omega_vec(sp, pe_omega(sp))
    ids, keys, coeffs = contract_batch(rows_to_batch([w], amb), 0, 1, pe_pairing(sp), sp, amb.base)
    assert coeffs.sum() == 0


def test_resource_cap():
    with pytest.raises(ResourceCapExceeded):
        TensorAmbient(pe_space(4), [range(8)] * 6, cap=1000)


def test_resource_cap_env(monkeypatch):
    monkeypatch.setenv("STRAND_AMBIENT_CAP", "10")
    with pytest.raises(ResourceCapExceeded):
        young_symmetrizer_image((1, 1), pe_space(2))


def test_closure_error():
    sp = pe_space(2)
    M = young_symmetrizer_image((2,), sp)
    amb = M.ambient
    bad = {amb.encode_word((0, 1)): 1}
    with pytest.raises(ClosureError):
        M.coords((0, -1, -1), bad)
