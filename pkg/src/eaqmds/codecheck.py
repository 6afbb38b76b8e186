"""Desk-scale realization of cyclic codes over GF(q^2).

Builds the generator polynomial from a defining set, then checks exact
minimum distance by message enumeration and the Hermitian properties of the
T_ss / T_as component codes by rank computations.

When n divides q^2 + 1 but not q^2 - 1 the n-th root of unity lives in
GF(q^4).  All arithmetic then runs in that ambient field; code coefficients
are still checked to lie in the GF(q^2) subfield (``a^(q^2) == a``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from eaqmds.cosets import Decomposition, DefiningSet, decompose_defining_set, max_consecutive_run
from eaqmds.engine import ABSTAINED, DEFAULT_BUDGET, FAIL, PASS, Check
from eaqmds.field import (
    DEFAULT_TABLE_CAP,
    FieldDescriptor,
    ResourceCapError,
    field_for,
    make_field,
    primitive_nth_root,
)

# Rows of the precomputed suffix table in distance enumeration.
_BLOCK = 2**16


class CodeError(ValueError):
    pass


@dataclass(frozen=True)
class CyclicCodeSpec:
    field: FieldDescriptor  # GF(q^2)
    ambient: FieldDescriptor  # field holding alpha: GF(q^2) or GF(q^4)
    q: int
    n: int
    defining_set: DefiningSet
    alpha: int
    g: tuple[int, ...]  # low degree first, ambient-field encoding

    @property
    def k_classical(self) -> int:
        return self.n - (len(self.g) - 1)


@dataclass(frozen=True)
class GeneratorMatrix:
    field: FieldDescriptor  # ambient arithmetic field
    q: int
    rows: np.ndarray

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=np.int64)
        if rows.ndim != 2:
            raise CodeError("generator matrix must be two-dimensional")
        object.__setattr__(self, "rows", rows)

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def conjugated(self) -> np.ndarray:
        return self.field.pow_arr(self.rows, self.q)


@dataclass(frozen=True)
class DistanceResult:
    status: str  # "exact", "abstained" or "empty" (the zero code)
    distance: int | None
    evaluated: int


@dataclass(frozen=True)
class Prop22Report:
    c1_hull_trivial: bool
    c2_dual_contained: bool
    dims: dict

    @property
    def passed(self) -> bool:
        return self.c1_hull_trivial and self.c2_dual_contained


# -- polynomials over the ambient field (lists, low degree first) -----------


def _poly_trim(a: list[int]) -> list[int]:
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a


def poly_divmod(F: FieldDescriptor, num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    num = _poly_trim(list(num))
    den = _poly_trim(list(den))
    if den == [0]:
        raise ZeroDivisionError("polynomial division by zero")
    lead_inv = F.inv(den[-1])
    quot = [0] * max(1, len(num) - len(den) + 1)
    rem = list(num)
    for shift in range(len(num) - len(den), -1, -1):
        coef = F.mul(rem[shift + len(den) - 1], lead_inv)
        quot[shift] = coef
        if coef:
            for i, d in enumerate(den):
                rem[shift + i] = F.sub(rem[shift + i], F.mul(coef, d))
    return _poly_trim(quot), _poly_trim(rem[: max(1, len(den) - 1)])


def poly_eval_many(F: FieldDescriptor, poly, points) -> np.ndarray:
    points = np.asarray(points, dtype=np.int64)
    acc = np.zeros_like(points)
    for coef in reversed(poly):
        acc = F.add_arr(F.mul_arr(acc, points), coef)
    return acc


# -- linear algebra ----------------------------------------------------------


def rref(F: FieldDescriptor, M) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form; returns the nonzero rows and pivot columns."""
    M = np.array(M, dtype=np.int64, copy=True)
    if M.ndim != 2:
        raise CodeError("expected a matrix")
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = F.mul_arr(M[r], F.inv(int(M[r, c])))
        others = np.nonzero(M[:, c])[0]
        others = others[others != r]
        if others.size:
            M[others] = F.sub_arr(M[others], F.mul_arr(M[others, c][:, None], M[r][None, :]))
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(F: FieldDescriptor, M) -> int:
    M = np.asarray(M, dtype=np.int64)
    if M.size == 0:
        return 0
    return len(rref(F, M)[1])


def null_space(F: FieldDescriptor, M, n: int | None = None) -> np.ndarray:
    """Basis (as rows) of {v : M v^T = 0}."""
    M = np.asarray(M, dtype=np.int64)
    if n is None:
        n = M.shape[1]
    if M.size == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = rref(F, M)
    free = [c for c in range(n) if c not in set(piv)]
    B = np.zeros((len(free), n), dtype=np.int64)
    if free:
        B[np.arange(len(free)), free] = 1
        if piv:
            B[:, piv] = F.neg_arr(R[:, free].T)
    return B


# -- codes -------------------------------------------------------------------


def _ambient_field(F: FieldDescriptor, q: int, n: int, cap: int) -> FieldDescriptor:
    if (F.order - 1) % n == 0:
        return F
    if (q**4 - 1) % n == 0:
        return make_field(F.p, 2 * F.e, cap)
    raise CodeError(f"n={n} divides neither q^2-1 nor q^4-1 for q={q}")


def build_cyclic_code(
    F: FieldDescriptor, n: int, T: DefiningSet, cap: int = DEFAULT_TABLE_CAP
) -> CyclicCodeSpec:
    """Cyclic code of length n over F = GF(q^2) with defining set T.

    ``g(x) = prod_{i in T} (x - alpha^i)``; coefficient membership in GF(q^2)
    and exact division of ``x^n - 1`` by g are verified.
    """
    q = T.q
    if F.order != q * q:
        raise CodeError(f"{F!r} is not GF({q}^2)")
    if T.n != n:
        raise CodeError(f"defining set is modulo {T.n}, expected {n}")
    W = _ambient_field(F, q, n, cap)
    alpha = primitive_nth_root(W, n)

    g = np.array([1], dtype=np.int64)
    for i in T.residues:
        root = W.pow(alpha, i)
        shifted = np.concatenate(([0], g))
        scaled = np.concatenate((W.mul_arr(g, root), [0]))
        g = W.sub_arr(shifted, scaled)
    coeffs = [int(c) for c in g]

    if any(W.pow(c, q * q) != c for c in coeffs):
        raise CodeError("generator coefficients escape GF(q^2); T is not q^2-closed")
    x_n_minus_1 = [W.neg(1)] + [0] * (n - 1) + [1]
    _, rem = poly_divmod(W, x_n_minus_1, coeffs)
    if rem != [0]:
        raise CodeError("g(x) does not divide x^n - 1")
    return CyclicCodeSpec(F, W, q, n, T, alpha, tuple(coeffs))


def generator_matrix(code: CyclicCodeSpec) -> GeneratorMatrix:
    k, n = code.k_classical, code.n
    rows = np.zeros((k, n), dtype=np.int64)
    for i in range(k):
        rows[i, i : i + len(code.g)] = code.g
    return GeneratorMatrix(code.ambient, code.q, rows)


def code_roots(code: CyclicCodeSpec) -> set[int]:
    """{i in [0, n-1] : g(alpha^i) = 0}."""
    W = code.ambient
    points = np.array([W.pow(code.alpha, i) for i in range(code.n)], dtype=np.int64)
    values = poly_eval_many(W, code.g, points)
    return {int(i) for i in np.nonzero(values == 0)[0]}


def hermitian_dual_basis(G: GeneratorMatrix) -> GeneratorMatrix:
    """Basis of the Hermitian dual: null space of the conjugated generator matrix."""
    F = G.field
    if rank(F, G.rows) != G.k:
        raise CodeError("generator matrix is rank deficient")
    conj = G.conjugated()
    D = null_space(F, conj, G.n) if G.k else np.eye(G.n, dtype=np.int64)
    if D.shape[0] != G.n - G.k:
        raise CodeError("dual dimension does not match n - k")  # pragma: no cover
    if D.size and G.k and np.any(F.matmul(D, conj.T)):
        raise CodeError("dual basis is not Hermitian-orthogonal to the code")  # pragma: no cover
    return GeneratorMatrix(F, G.q, D.reshape(G.n - G.k, G.n))


def true_min_distance(code: CyclicCodeSpec, budget: int = DEFAULT_BUDGET) -> DistanceResult:
    """Exact minimum distance by enumerating all (q^2)^k messages."""
    G = generator_matrix(code)
    W, k, n = code.ambient, G.k, G.n
    if k == 0:
        return DistanceResult("empty", None, 0)
    symbols = W.subfield_elements(code.q * code.q)
    Q = len(symbols)
    total = Q**k
    if total > budget:
        return DistanceResult("abstained", None, 0)

    k2 = 0
    while k2 < k and Q ** (k2 + 1) <= _BLOCK:
        k2 += 1
    k1 = k - k2
    table = np.zeros((1, n), dtype=np.int64)
    for row in G.rows[k1:]:
        scaled = W.mul_arr(symbols[:, None], row[None, :])  # (Q, n)
        table = W.add_arr(table[None, :, :], scaled[:, None, :]).reshape(-1, n)

    best = n + 1
    for prefix in itertools.product(range(Q), repeat=k1):
        vec = np.zeros(n, dtype=np.int64)
        for idx, row in zip(prefix, G.rows[:k1]):
            if idx:
                vec = W.add_arr(vec, W.mul_arr(symbols[idx], row))
        weights = np.count_nonzero(W.add_arr(table, vec[None, :]), axis=1)
        if not any(prefix):
            weights[0] = n + 1  # zero message
        best = min(best, int(weights.min()))
    return DistanceResult("exact", best, total)


def parity_check_matrix(code: CyclicCodeSpec) -> np.ndarray:
    G = generator_matrix(code)
    return null_space(code.ambient, G.rows, code.n) if G.k else np.eye(code.n, dtype=np.int64)


def entanglement_rank(code: CyclicCodeSpec) -> int:
    """rank(H H^dagger) over GF(q^2) for a parity-check matrix H of the code.

    This is the number of entangled pairs of the Hermitian EAQEC construction,
    computed without reference to the defining set.
    """
    W = code.ambient
    H = parity_check_matrix(code)
    if H.shape[0] == 0:
        return 0
    return rank(W, W.matmul(H, W.pow_arr(H, code.q).T))


def check_prop22_part1(
    F: FieldDescriptor, n: int, decomposition: Decomposition, cap: int = DEFAULT_TABLE_CAP
) -> Prop22Report:
    """C1 (defining set T_ss) has trivial Hermitian hull; C2 (T_as) contains its Hermitian dual."""
    c1 = build_cyclic_code(F, n, decomposition.t_ss, cap)
    c2 = build_cyclic_code(F, n, decomposition.t_as, cap)
    W = c1.ambient

    G1 = generator_matrix(c1)
    D1 = hermitian_dual_basis(G1)
    stacked1 = rank(W, np.vstack([G1.rows, D1.rows]))
    hull1 = G1.k + D1.k - stacked1

    G2 = generator_matrix(c2)
    D2 = hermitian_dual_basis(G2)
    stacked2 = rank(W, np.vstack([G2.rows, D2.rows]))

    return Prop22Report(
        c1_hull_trivial=hull1 == 0,
        c2_dual_contained=stacked2 == G2.k,
        dims={"k1": G1.k, "hull1": hull1, "k2": G2.k, "dual2": D2.k, "span2": stacked2},
    )


def desk_checks(T: DefiningSet, dec: Decomposition | None = None, budget: int = DEFAULT_BUDGET) -> list[Check]:
    """Exhaustive checks on the classical code behind T, as certificate entries."""
    names = ["generator_polynomial", "roots_roundtrip", "true_min_distance", "prop22_part1", "entanglement_rank"]
    n, q = T.n, T.q
    if dec is None:
        dec = decompose_defining_set(T)
    if n**3 > budget:
        reason = {"reason": f"rank work n^3 = {n**3} exceeds budget {budget}"}
        return [Check(name, ABSTAINED, reason) for name in names]
    try:
        F = field_for(q, 2)
        code = build_cyclic_code(F, n, T)
    except ResourceCapError as exc:
        return [Check(name, ABSTAINED, {"reason": str(exc)}) for name in names]
    except CodeError as exc:
        return [Check(name, FAIL, {"reason": str(exc)}) for name in names]

    checks = [
        Check(
            "generator_polynomial",
            PASS if len(code.g) - 1 == len(T) else FAIL,
            {"degree": len(code.g) - 1, "ambient": repr(code.ambient), "k_classical": code.k_classical},
        )
    ]
    roots = code_roots(code)
    checks.append(Check("roots_roundtrip", PASS if roots == T.as_set() else FAIL, {"roots": len(roots)}))

    bch = max_consecutive_run(T) + 1
    dist = true_min_distance(code, budget)
    if dist.status == "abstained":
        checks.append(Check("true_min_distance", ABSTAINED, {"messages": (q * q) ** code.k_classical}))
    elif dist.status == "empty":
        checks.append(Check("true_min_distance", PASS, {"d_exact": None, "note": "zero code"}))
    else:
        singleton = n - code.k_classical + 1
        ok = bch <= dist.distance <= singleton
        checks.append(
            Check(
                "true_min_distance",
                PASS if ok else FAIL,
                {
                    "d_exact": dist.distance,
                    "bch_bound": bch,
                    "singleton_bound": singleton,
                    "mds": dist.distance == singleton,
                    "codewords": dist.evaluated,
                },
            )
        )

    report = check_prop22_part1(F, n, dec)
    checks.append(
        Check(
            "prop22_part1",
            PASS if report.passed else FAIL,
            {"c1_hull_trivial": report.c1_hull_trivial, "c2_dual_contained": report.c2_dual_contained, **report.dims},
        )
    )
    c_rank = entanglement_rank(code)
    checks.append(
        Check(
            "entanglement_rank",
            PASS if c_rank == len(dec.t_ss) else FAIL,
            {"rank_HHdag": c_rank, "T_ss": len(dec.t_ss)},
        )
    )
    return checks
