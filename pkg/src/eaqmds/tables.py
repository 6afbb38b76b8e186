"""Printed parameter tables, kept as data so discrepancies are reproducible.

Known issues in the printed values, surfaced by :func:`table_rows`:

* Table 2, q=47 t=6 m=2 prints k=9; the closed form gives k=11.
* Table 3, q=89 t=17 m=2 has m above floor((q+1)/(4t)) = 1, and prints
  c=9 where the closed form gives c=5.
"""

from __future__ import annotations

from eaqmds.constructions import FamilyInput, closed_form_params, defining_set
from eaqmds.engine import EAParams, ea_singleton_defect, eaqec_params

# (n, k, d, c, q), t, m
TABLE2 = [
    ((280, 171, 56, 1, 29), 3, 1),
    ((280, 67, 112, 9, 29), 3, 2),
    ((560, 403, 80, 1, 41), 3, 1),
    ((560, 251, 160, 9, 41), 3, 2),
    ((368, 187, 92, 1, 47), 6, 1),
    ((368, 9, 184, 9, 47), 6, 2),
]

TABLE3 = [
    ((370, 201, 88, 5, 43), 5, 2),
    ((466, 113, 180, 9, 89), 17, 2),
    ((898, 633, 136, 5, 67), 5, 2),
    ((898, 377, 270, 17, 67), 5, 3),
]

# Comparison dataset: earlier EAQMDS families, q an odd prime power.
TABLE1 = [
    {
        "parameters": "[[q^2+1, q^2-4(m-1)(q-m-1), 2(m-1)q+2; 4(m-1)^2+1]]_q",
        "constraints": "q >= 5, 2 <= m <= (q-1)/2",
        "source": "prior",
    },
    {
        "parameters": "[[q^2+1, q^2-2q-4m+5, 2m+q+1; 4]]_q",
        "constraints": "q >= 5, q = 4t+1, 2 <= m <= (q-1)/2",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2+1)/2, (q^2+1)/2-2q-4m+5, 2m+q+1; 5]]_q",
        "constraints": "q > 7, 2 <= m <= (q-1)/2",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2-1)/5, (q^2-5q-20m+4)/5, (4m+q+5)/2; 4]]_q",
        "constraints": "q = 20t+3 or q = 20t+7, t <= m <= (q-3)/4",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2+1)/10, (q^2+1)/10-2d+3, d; 1]]_q",
        "constraints": "q = 10m+3, d even, 2 <= d <= 6m+2",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2+1)/10, (q^2+1)/10-2d+3, d; 1]]_q",
        "constraints": "q = 10m+7, d even, 2 <= d <= 6m+4",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2-1)/h, (q^2-1)/h-2d+3, d; 1]]_q",
        "constraints": "h in {3,5,7} divides q+1, d even, (q+1)/h <= d <= (q+1)(h+3)/(2h)-1",
        "source": "prior",
    },
    {
        "parameters": "[[(q^2-1)/t, (q^2-1)/t-4qm+4m^2+3, 2m(q-1); (2m-1)^2]]_q",
        "constraints": "q >= 3, t | q^2-1, 1 <= m <= floor((q+1)/(4t))",
        "source": "family A",
    },
    {
        "parameters": "[[(q^2+1)/t, (q^2+1)/t-4qm+4q+4m^2-8m+3, 2q(m-1)+2; 4(m-1)^2+1]]_q",
        "constraints": "q >= 7, t | q^2+1, 2 <= m <= floor((q+1)/(4t))",
        "source": "family B",
    },
]

TABLES = {2: ("A", TABLE2), 3: ("B", TABLE3)}


def table_rows(which: int) -> list[dict]:
    """Regenerate a printed table from its (q, t, m) and annotate each row."""
    if which not in TABLES:
        raise ValueError(f"no parameter table {which}; choose 2 or 3")
    family, rows = TABLES[which]
    out = []
    for idx, (printed_tuple, t, m) in enumerate(rows, start=1):
        printed = EAParams(*printed_tuple)
        inp = FamilyInput(printed.q, t, m, family, force=True)
        derived = closed_form_params(inp)
        engine = eaqec_params(defining_set(inp))
        mismatched = [f for f in ("n", "k", "d", "c") if getattr(derived, f) != getattr(printed, f)]
        out.append(
            {
                "row": idx,
                "family": family,
                "q": printed.q,
                "t": t,
                "m": m,
                "printed": printed.as_dict(),
                "derived": derived.as_dict(),
                "status": "mismatch" if mismatched else "match",
                "mismatch": [
                    f"{f}: derived {getattr(derived, f)} != printed {getattr(printed, f)}" for f in mismatched
                ],
                "in_range": inp.in_range,
                "m_upper": inp.m_upper,
                "defect_derived": ea_singleton_defect(derived),
                "defect_printed": ea_singleton_defect(printed),
                "engine": engine.as_dict(),
                "engine_T_ss": engine.c,
                "engine_agrees": engine == derived,
            }
        )
    return out
