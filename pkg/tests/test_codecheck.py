import itertools

import numpy as np
import pytest

from eaqmds.codecheck import (
    CodeError,
    build_cyclic_code,
    check_prop22_part1,
    code_roots,
    desk_checks,
    entanglement_rank,
    generator_matrix,
    hermitian_dual_basis,
    null_space,
    poly_divmod,
    rank,
    rref,
    true_min_distance,
)
from eaqmds.constructions import FamilyInput, defining_set
from eaqmds.cosets import CosetContext, DefiningSet, coset_union, decompose_defining_set
from eaqmds.field import field_for, make_field


@pytest.fixture(scope="module")
def gf9():
    return make_field(3, 2)


def ds(n, q, values):
    return DefiningSet.from_integers(CosetContext(n, q), values)


def naive_min_distance(F, rows, symbols):
    # Scalar reference: every nonzero message, accumulated one symbol at a time.
    k, n = len(rows), len(rows[0])
    best = n + 1
    for msg in itertools.product(symbols, repeat=k):
        if not any(msg):
            continue
        word = [0] * n
        for coef, row in zip(msg, rows):
            word = [F.add(w, F.mul(coef, int(x))) for w, x in zip(word, row)]
        best = min(best, sum(1 for w in word if w))
    return best


def herm(F, q, u, v):
    acc = 0
    for a, b in zip(u, v):
        acc = F.add(acc, F.mul(int(a), F.pow(int(b), q)))
    return acc


def test_generator_polynomial_gf9_n8(gf9):
    code = build_cyclic_code(gf9, 8, ds(8, 3, [7, 0, 1]))
    assert len(code.g) == 4 and code.g[-1] == 1
    assert code.k_classical == 5
    assert code.ambient is gf9


def test_empty_and_near_full_sets(gf9):
    full_code = build_cyclic_code(gf9, 8, DefiningSet.empty(CosetContext(8, 3)))
    assert full_code.g == (1,) and code_roots(full_code) == set()
    whole_space = build_cyclic_code(gf9, 4, DefiningSet.empty(CosetContext(4, 3)))
    assert true_min_distance(whole_space).distance == 1
    rep = build_cyclic_code(gf9, 8, ds(8, 3, range(7)))
    assert rep.k_classical == 1
    assert true_min_distance(rep).distance == 8
    everything = build_cyclic_code(gf9, 8, ds(8, 3, range(8)))
    assert true_min_distance(everything).status == "empty"


def test_min_distance_matches_scalar_enumeration(gf9):
    symbols = [int(s) for s in gf9.subfield_elements(9)]
    for values in ([7, 0, 1, 2], [0, 1, 3, 4], [1, 2, 3, 4, 5], [0, 2, 4, 6]):
        code = build_cyclic_code(gf9, 8, ds(8, 3, values))
        rows = generator_matrix(code).rows.tolist()
        assert true_min_distance(code).distance == naive_min_distance(gf9, rows, symbols)


def test_min_distance_bch_and_singleton(gf9):
    res = true_min_distance(build_cyclic_code(gf9, 8, ds(8, 3, [7, 0, 1])))
    assert res.status == "exact" and res.distance == 4 and res.evaluated == 9**5


def test_min_distance_budget_abstains(gf9):
    res = true_min_distance(build_cyclic_code(gf9, 8, ds(8, 3, [7, 0, 1])), budget=9**5 - 1)
    assert res.status == "abstained" and res.distance is None


@pytest.mark.parametrize("values,k", [([], 8), ([7, 0, 1], 5), (range(7), 1)])
def test_hermitian_dual_dimension_and_orthogonality(gf9, values, k):
    G = generator_matrix(build_cyclic_code(gf9, 8, ds(8, 3, values)))
    D = hermitian_dual_basis(G)
    assert (G.k, D.k) == (k, 8 - k)
    for u in G.rows:
        for v in D.rows:
            assert herm(gf9, 3, u, v) == 0


def test_rref_rank_null_space(gf9):
    M = np.array([[1, 2, 0], [2, 4, 0], [0, 1, 1]], dtype=np.int64)
    # row 2 = 2 * row 1 over GF(9)? only if 2*2 == 4 as field elements; check via the field
    M[1] = gf9.mul_arr(M[0], 2)
    R, piv = rref(gf9, M)
    assert rank(gf9, M) == 2 and len(piv) == 2
    N = null_space(gf9, M, 3)
    assert N.shape == (1, 3)
    assert not np.any(gf9.matmul(M, N.T))


def test_poly_divmod_exact(gf9):
    a, b = [gf9.neg(1), 0, 1], [gf9.neg(1), 1]  # (x^2 - 1) / (x - 1)
    quot, rem = poly_divmod(gf9, a, b)
    assert quot == [1, 1] and rem == [0]


def test_roots_round_trip_small_cases():
    for q, n in [(3, 8), (3, 10), (5, 13), (5, 24)]:
        F = field_for(q)
        ctx = CosetContext(n, q)
        for reps in ([0], [1], [0, 1], [1, 2, 3]):
            T = coset_union(ctx, reps)
            assert code_roots(build_cyclic_code(F, n, T)) == T.as_set()


def test_ambient_field_for_q2_plus_1():
    F = field_for(3)
    code = build_cyclic_code(F, 10, coset_union(CosetContext(10, 3), [1]))
    assert code.ambient.order == 81
    assert all(code.ambient.pow(c, 9) == c for c in code.g)


def test_non_closed_length_rejected():
    with pytest.raises(CodeError):
        build_cyclic_code(field_for(3), 7, DefiningSet.empty(CosetContext(7, 3)))
    with pytest.raises(CodeError):
        build_cyclic_code(field_for(5), 8, DefiningSet.empty(CosetContext(8, 3)))


@pytest.mark.parametrize(
    "q,n,values",
    [(3, 8, [7, 0, 1]), (3, 8, [2, 6]), (3, 8, [1, 3]), (7, 50, range(-7, 8))],
)
def test_prop22_part1(q, n, values):
    T = ds(n, q, values)
    dec = decompose_defining_set(T)
    rep = check_prop22_part1(field_for(q), n, dec)
    assert rep.passed
    assert rep.dims["k1"] == n - len(dec.t_ss)


def test_prop22_empty_t_ss(gf9):
    T = ds(8, 3, [1, 3])  # -3 maps 1 -> 5 and 3 -> 7
    dec = decompose_defining_set(T)
    assert len(dec.t_ss) == 0
    assert check_prop22_part1(gf9, 8, dec).dims["hull1"] == 0


def test_entanglement_rank_matches_t_ss_small():
    for q, n, values in [(3, 8, [7, 0, 1]), (3, 8, [2, 6]), (3, 8, [1, 3]), (7, 50, range(-7, 8))]:
        T = ds(n, q, values)
        code = build_cyclic_code(field_for(q), n, T)
        assert entanglement_rank(code) == len(decompose_defining_set(T).t_ss)


def test_entanglement_rank_wraparound_q7_t2():
    # n = 24: the printed closed form c = (2m-1)^2 = 1, the Hermitian rank is 5.
    inp = FamilyInput(7, 2, 1, "A")
    T = defining_set(inp)
    code = build_cyclic_code(field_for(7), inp.n, T)
    assert entanglement_rank(code) == len(decompose_defining_set(T).t_ss) == 5


def test_entanglement_rank_q29_t3():
    inp = FamilyInput(29, 3, 1, "A")
    T = defining_set(inp)
    code = build_cyclic_code(field_for(29), inp.n, T)
    assert entanglement_rank(code) == 9


def test_desk_checks_pass_on_small_code():
    T = ds(8, 3, [7, 0, 1])
    checks = {c.name: c for c in desk_checks(T)}
    assert all(c.status == "pass" for c in checks.values()), checks
    assert checks["true_min_distance"].detail["d_exact"] == 4
    assert checks["entanglement_rank"].detail["rank_HHdag"] == 1
