"""EAQEC parameters from a defining set, EA-Singleton defect, certificates."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from eaqmds.cosets import DefiningSet, decompose_defining_set, max_consecutive_run

PASS, FAIL, ABSTAINED = "pass", "fail", "abstained"

PINNED_BY_BOUND = "pinned_by_bound"
BCH_LOWER_ONLY = "bch_lower_only"
VERIFIED_EXHAUSTIVELY = "verified_exhaustively"

DEFAULT_BUDGET = 2**24


@dataclass(frozen=True)
class EAParams:
    n: int
    k: int
    d: int
    c: int
    q: int

    def __str__(self) -> str:
        return f"[[{self.n},{self.k},{self.d};{self.c}]]_{self.q}"

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "d": self.d, "c": self.c, "q": self.q}

    @property
    def defect(self) -> int:
        return ea_singleton_defect(self)


@dataclass
class Check:
    name: str
    status: str
    detail: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "status": self.status, "detail": self.detail}


@dataclass
class Certificate:
    inputs: dict
    params: EAParams
    size_t: int
    size_t_ss: int
    run: int
    checks: list[Check] = field(default_factory=list)
    distance_exactness: str = BCH_LOWER_ONLY
    warnings: list[str] = field(default_factory=list)

    @property
    def defect(self) -> int:
        return ea_singleton_defect(self.params)

    @property
    def verdict(self) -> str:
        statuses = {c.status for c in self.checks}
        if FAIL in statuses:
            return FAIL
        if ABSTAINED in statuses:
            return ABSTAINED
        return PASS

    def check(self, name: str) -> Check | None:
        return next((c for c in self.checks if c.name == name), None)

    def as_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "params": self.params.as_dict(),
            "sizes": {"T": self.size_t, "T_ss": self.size_t_ss, "run": self.run},
            "defect": self.defect,
            "distance_exactness": self.distance_exactness,
            "checks": [c.as_dict() for c in self.checks],
            "warnings": list(self.warnings),
            "verdict": self.verdict,
        }

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps(self.as_dict(), indent=indent)


def eaqec_params(T: DefiningSet) -> EAParams:
    dec = decompose_defining_set(T)
    n = T.n
    c = len(dec.t_ss)
    return EAParams(n=n, k=n - 2 * len(T) + c, d=max_consecutive_run(T) + 1, c=c, q=T.q)


def ea_singleton_defect(p: EAParams) -> int:
    """(n - k + c) - 2(d - 1); zero for EAQMDS, negative means the bound is violated."""
    return (p.n - p.k + p.c) - 2 * (p.d - 1)


def compare_params(derived: EAParams, expected: EAParams, name: str = "expected_match") -> Check:
    deltas = {f: getattr(derived, f) - getattr(expected, f) for f in ("n", "k", "d", "c")}
    mismatched = [f for f in ("n", "k", "d", "c") if deltas[f]]
    if derived.q != expected.q:
        mismatched.append("q")
    detail = {
        "expected": expected.as_dict(),
        "derived": derived.as_dict(),
        "deltas": deltas,
        "expected_defect": ea_singleton_defect(expected),
    }
    if mismatched:
        detail["mismatch"] = ", ".join(
            f"{f}: derived {getattr(derived, f)} != expected {getattr(expected, f)}" for f in mismatched
        )
    return Check(name, FAIL if mismatched else PASS, detail)


def certify(
    T: DefiningSet,
    expected: EAParams | None = None,
    *,
    inputs: dict | None = None,
    desk_check: bool = False,
    budget: int = DEFAULT_BUDGET,
    extra_checks: list[Check] = (),
    warnings: list[str] = (),
    expected_name: str = "expected_match",
) -> Certificate:
    """Derive parameters for T and run the selected checks.

    ``desk_check`` adds the exhaustive classical-code checks from
    :mod:`eaqmds.codecheck`; those report ``abstained`` when ``budget`` or the
    field table cap is exceeded.
    """
    params = eaqec_params(T)
    dec = decompose_defining_set(T)
    run = params.d - 1
    if inputs is None:
        inputs = {"n": T.n, "q": T.q, "defining_set": list(T.residues)}
    cert = Certificate(
        inputs=inputs,
        params=params,
        size_t=len(T),
        size_t_ss=len(dec.t_ss),
        run=run,
        warnings=list(warnings),
    )
    cert.checks.extend(extra_checks)

    in_range = 0 <= params.c <= params.n and 0 <= params.k <= params.n
    cert.checks.append(
        Check("params_range", PASS if in_range else FAIL, {"k": params.k, "c": params.c, "n": params.n})
    )
    defect = ea_singleton_defect(params)
    cert.checks.append(
        Check("ea_singleton_bound", PASS if defect >= 0 else FAIL, {"defect": defect})
    )
    cert.checks.append(Check("eaqmds", PASS if defect == 0 else FAIL, {"defect": defect}))
    if expected is not None:
        cert.checks.append(compare_params(params, expected, expected_name))

    cert.distance_exactness = PINNED_BY_BOUND if defect == 0 else BCH_LOWER_ONLY
    if desk_check:
        from eaqmds.codecheck import desk_checks

        desk = desk_checks(T, dec, budget=budget)
        cert.checks.extend(desk)
        dist = next((c for c in desk if c.name == "true_min_distance"), None)
        if dist is not None and dist.status == PASS and dist.detail.get("d_exact") == params.d:
            cert.distance_exactness = VERIFIED_EXHAUSTIVELY
    return cert
