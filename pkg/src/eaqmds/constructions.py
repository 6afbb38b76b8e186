"""The two cyclic-code EAQMDS families and exhaustive checks of their lemmas.

Family A: n = (q^2 - 1)/t, T = residues of [-mq+m+1, mq-m-1],
          1 <= m <= floor((q+1)/(4t)).
Family B: n = (q^2 + 1)/t even, T = C_0 u C_1 u ... u C_{(m-1)q},
          2 <= m <= floor((q+1)/(4t)).
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from sympy import divisors

from eaqmds.cosets import (
    CosetContext,
    DefiningSet,
    coset_union,
    cyclotomic_coset,
    neg_q_image,
)
from eaqmds.engine import DEFAULT_BUDGET, FAIL, PASS, Certificate, Check, EAParams, certify
from eaqmds.field import is_odd_prime_power

FAMILIES = ("A", "B")


class InvalidInput(ValueError):
    pass


def _validate_q(q: int):
    if not isinstance(q, int) or not is_odd_prime_power(q):
        raise InvalidInput(f"q={q} is not an odd prime power")


def m_upper(q: int, t: int) -> int:
    return (q + 1) // (4 * t)


def family_length(q: int, t: int, family: str) -> int:
    """n for the family; raises InvalidInput when t is not a valid divisor."""
    _validate_q(q)
    if t < 1:
        raise InvalidInput(f"t must be positive, got {t}")
    if family == "A":
        if (q * q - 1) % t:
            raise InvalidInput(f"t={t} does not divide q^2-1={q * q - 1}")
        n = (q * q - 1) // t
    elif family == "B":
        if (q * q + 1) % t:
            raise InvalidInput(f"t={t} does not divide q^2+1={q * q + 1}")
        n = (q * q + 1) // t
        if n % 2:
            raise InvalidInput(f"n=(q^2+1)/t={n} is odd; family B needs even n")
    else:
        raise InvalidInput(f"unknown family {family!r}")
    if n < 2:
        raise InvalidInput(f"length n={n} is too small")
    return n


@dataclass(frozen=True)
class FamilyInput:
    q: int
    t: int
    m: int
    family: str
    force: bool = False

    def __post_init__(self):
        n = family_length(self.q, self.t, self.family)
        object.__setattr__(self, "_n", n)
        if self.m < 1:
            raise InvalidInput(f"m must be >= 1, got {self.m}")
        if not self.in_range and not self.force:
            raise InvalidInput(
                f"m={self.m} outside [{self.m_lower}, {self.m_upper}] for family {self.family}"
                f" (q={self.q}, t={self.t}); use force to construct anyway"
            )

    @property
    def n(self) -> int:
        return self._n

    @property
    def m_lower(self) -> int:
        return 1 if self.family == "A" else 2

    @property
    def m_upper(self) -> int:
        return m_upper(self.q, self.t)

    @property
    def in_range(self) -> bool:
        return self.m_lower <= self.m <= self.m_upper

    @property
    def context(self) -> CosetContext:
        return CosetContext(self.n, self.q)

    def as_dict(self) -> dict:
        return {"family": self.family, "q": self.q, "t": self.t, "m": self.m, "n": self.n, "force": self.force}


def _require(inp: FamilyInput, family: str):
    if inp.family != family:
        raise InvalidInput(f"expected a family {family} input, got family {inp.family}")


def family_a_defining_set(inp: FamilyInput) -> DefiningSet:
    _require(inp, "A")
    q, m = inp.q, inp.m
    return DefiningSet.from_integers(inp.context, range(-m * q + m + 1, m * q - m))


def family_a_params(inp: FamilyInput) -> EAParams:
    _require(inp, "A")
    q, m, n = inp.q, inp.m, inp.n
    return EAParams(n, n - 4 * q * m + 4 * m * m + 3, 2 * m * (q - 1), (2 * m - 1) ** 2, q)


def family_b_defining_set(inp: FamilyInput) -> DefiningSet:
    _require(inp, "B")
    return coset_union(inp.context, range((inp.m - 1) * inp.q + 1))


def family_b_params(inp: FamilyInput) -> EAParams:
    _require(inp, "B")
    q, m, n = inp.q, inp.m, inp.n
    return EAParams(
        n,
        n - 4 * m * q + 4 * q + 4 * m * m - 8 * m + 3,
        2 * (m - 1) * q + 2,
        4 * (m - 1) ** 2 + 1,
        q,
    )


def defining_set(inp: FamilyInput) -> DefiningSet:
    return family_a_defining_set(inp) if inp.family == "A" else family_b_defining_set(inp)


def closed_form_params(inp: FamilyInput) -> EAParams:
    return family_a_params(inp) if inp.family == "A" else family_b_params(inp)


def expected_set_size(inp: FamilyInput) -> int:
    if inp.family == "A":
        return 2 * inp.q * inp.m - 2 * inp.m - 1
    return 2 * (inp.m - 1) * inp.q + 1


def valid_divisors(q: int, family: str) -> list[int]:
    """Divisors t of q^2 -/+ 1 giving a legal length (even length for family B)."""
    _validate_q(q)
    target = q * q - 1 if family == "A" else q * q + 1
    out = []
    for t in divisors(target):
        try:
            family_length(q, t, family)
        except InvalidInput:
            continue
        out.append(t)
    return out


def admissible_inputs(q: int, family: str, t: int | None = None, m: int | None = None) -> list[FamilyInput]:
    """Every in-range (q, t, m) for the family, optionally pinning t and/or m."""
    if not is_odd_prime_power(q):
        return []
    ts = valid_divisors(q, family) if t is None else [t]
    out = []
    for tt in ts:
        try:
            family_length(q, tt, family)
        except InvalidInput:
            continue
        lo = 1 if family == "A" else 2
        ms = range(lo, m_upper(q, tt) + 1)
        for mm in ms if m is None else [m]:
            if lo <= mm <= m_upper(q, tt):
                out.append(FamilyInput(q, tt, mm, family))
    return out


# -- certificates -------------------------------------------------------------


def certify_family(inp: FamilyInput, desk_check: bool = False, budget: int = DEFAULT_BUDGET) -> Certificate:
    T = defining_set(inp)
    size = expected_set_size(inp)
    warnings = []
    range_detail = {"m": inp.m, "m_lower": inp.m_lower, "m_upper": inp.m_upper}
    if not inp.in_range:
        warnings.append(
            f"range violation: m={inp.m} not in [{inp.m_lower}, {inp.m_upper}]"
            f" (floor((q+1)/(4t)) = {inp.m_upper})"
        )
    extra = [
        Check("family_range", PASS if inp.in_range else FAIL, range_detail),
        Check("defining_set_size", PASS if len(T) == size else FAIL, {"size": len(T), "expected": size}),
    ]
    return certify(
        T,
        closed_form_params(inp),
        inputs=inp.as_dict(),
        desk_check=desk_check,
        budget=budget,
        extra_checks=extra,
        warnings=warnings,
        expected_name="formula_match",
    )


def _certify_job(args) -> Certificate:
    inp, desk_check, budget = args
    return certify_family(inp, desk_check, budget)


def _sort_key(cert: Certificate):
    i = cert.inputs
    return (i["q"], i["n"], i["family"], i["m"])


def scan_families(
    qs,
    families=FAMILIES,
    t: int | None = None,
    m: int | None = None,
    *,
    workers: int = 1,
    desk_check: bool = False,
    budget: int = DEFAULT_BUDGET,
) -> list[Certificate]:
    """Certificates for all admissible (q, t, m), sorted by (q, n, family, m).

    ``t``/``m`` of None sweep every valid divisor / every in-range index.
    """
    jobs = [
        (inp, desk_check, budget)
        for q in qs
        for fam in families
        for inp in admissible_inputs(q, fam, t, m)
    ]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=min(workers, os.cpu_count() or 1)) as pool:
            certs = list(pool.map(_certify_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        certs = [_certify_job(j) for j in jobs]
    return sorted(certs, key=_sort_key)


# -- lemma verifiers ----------------------------------------------------------


@dataclass
class LemmaReport:
    lemma: str
    q: int
    t: int | None
    m: int | None
    swept: int
    counterexamples: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    @property
    def status(self) -> str:
        if self.counterexamples:
            return "fail"
        return "pass" if self.swept else "vacuous"

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def as_dict(self) -> dict:
        return {
            "lemma": self.lemma,
            "q": self.q,
            "t": self.t,
            "m": self.m,
            "swept": self.swept,
            "status": self.status,
            "counterexamples": self.counterexamples,
            "info": self.info,
        }


def _half_bound(q: int, t: int) -> int:
    return (q - 1) // (2 * t)


def verify_lemma_3_1(q: int, t: int) -> LemmaReport:
    """-q C_{aq+b} = C_{-bq-a} for |a|, |b| <= floor((q-1)/(2t)), bar (-B, -B)."""
    n = family_length(q, t, "A")
    ctx = CosetContext(n, q)
    B = _half_bound(q, t)
    report = LemmaReport("3.1", q, t, None, 0, info={"bound": B})

    def holds(a, b):
        lhs = neg_q_image(cyclotomic_coset((a * q + b) % n, ctx))
        return lhs == cyclotomic_coset((-b * q - a) % n, ctx)

    for a in range(-B, B + 1):
        for b in range(-B, B + 1):
            if B >= 1 and (a, b) == (-B, -B):
                continue
            report.swept += 1
            if not holds(a, b):
                report.counterexamples.append({"a": a, "b": b})
    if B >= 1:
        report.info["excluded_pair"] = {"a": -B, "b": -B, "holds": holds(-B, -B)}
    return report


def lemma_3_2_set(q: int, t: int, m: int) -> DefiningSet:
    """T_0 as the union of the three-case blocks A_i, -m <= i <= m-1, i != 0."""
    n = family_length(q, t, "A")
    values = []
    for i in range(-m, m):
        if i == 0:
            continue
        if i == -m:
            values += [-m * q + j for j in range(m + 1, q - m + 1)]
        elif i == m - 1:
            values += [m * q + j for j in range(-q + m, -m)]
        else:
            values += [i * q + j for j in range(m, q - m + 1)]
    return DefiningSet.from_integers(CosetContext(n, q), values)


def verify_lemma_3_2(q: int, t: int, m: int) -> LemmaReport:
    inp = FamilyInput(q, t, m, "A")
    T0 = lemma_3_2_set(q, t, m)
    clash = neg_q_image(T0) & T0
    return LemmaReport(
        "3.2", q, t, m, len(T0), counterexamples=list(clash.residues), info={"n": inp.n, "T0": len(T0)}
    )


def verify_lemma_3_3(q: int, t: int) -> LemmaReport:
    """-q C_{cq+d} = C_{dq-c} for 1 <= c <= B, 0 <= d <= B."""
    n = family_length(q, t, "B")
    ctx = CosetContext(n, q)
    B = _half_bound(q, t)
    report = LemmaReport("3.3", q, t, None, 0, info={"bound": B, "n": n})
    for c in range(1, B + 1):
        for d in range(0, B + 1):
            report.swept += 1
            lhs = neg_q_image(cyclotomic_coset((c * q + d) % n, ctx))
            if lhs != cyclotomic_coset((d * q - c) % n, ctx):
                report.counterexamples.append({"c": c, "d": d})
    return report


def lemma_3_4_indices(q: int, t: int, m: int) -> list[int]:
    """Coset representatives cq+d (0<=c<=m-2, m<=d<=B) and eq-f (1<=e<=m-1, m-1<=f<=B)."""
    B = _half_bound(q, t)
    reps = [c * q + d for c in range(0, m - 1) for d in range(m, B + 1)]
    reps += [e * q - f for e in range(1, m) for f in range(m - 1, B + 1)]
    return reps


def verify_lemma_3_4(q: int, t: int, m: int) -> LemmaReport:
    inp = FamilyInput(q, t, m, "B")
    reps = lemma_3_4_indices(q, t, m)
    T1 = coset_union(inp.context, reps)
    clash = neg_q_image(T1) & T1
    return LemmaReport(
        "3.4", q, t, m, len(reps), counterexamples=list(clash.residues), info={"n": inp.n, "T1": len(T1)}
    )


def odd_prime_powers(lo: int, hi: int) -> list[int]:
    return [q for q in range(max(lo, 3), hi + 1) if is_odd_prime_power(q)]


def lemma_reports(q_max: int) -> list[LemmaReport]:
    """One report per (lemma, q, t, m) for all odd prime powers q <= q_max.

    A q with no valid (t, m) for a lemma gets a single vacuous report.
    """
    out: list[LemmaReport] = []
    qs = odd_prime_powers(3, q_max)
    for q in qs:
        ts = valid_divisors(q, "A")
        out += [verify_lemma_3_1(q, t) for t in ts] or [LemmaReport("3.1", q, None, None, 0)]
    for q in qs:
        reps = [verify_lemma_3_2(i.q, i.t, i.m) for i in admissible_inputs(q, "A")]
        out += reps or [LemmaReport("3.2", q, None, None, 0)]
    for q in qs:
        ts = valid_divisors(q, "B")
        out += [verify_lemma_3_3(q, t) for t in ts] or [LemmaReport("3.3", q, None, None, 0)]
    for q in qs:
        reps = [verify_lemma_3_4(i.q, i.t, i.m) for i in admissible_inputs(q, "B")]
        out += reps or [LemmaReport("3.4", q, None, None, 0)]
    return out
