"""Exact linear algebra over a CoeffField on sparse column dictionaries."""

from __future__ import annotations


def solve(field, columns: list[dict], rhs: dict):
    """Find scalars ``a`` with ``sum a_j * columns[j] == rhs``, or ``None``.

    Vectors are dicts ``key -> coefficient``; missing keys are zero.
    Returns the solution with free variables set to zero.
    """
    n = len(columns)
    rows: dict = {}
    for j, col in enumerate(columns):
        for k, c in col.items():
            if c:
                rows.setdefault(k, {})[j] = c
    for k, c in rhs.items():
        if c:
            rows.setdefault(k, {})["rhs"] = c
    eqs = [rows[k] for k in sorted(rows, key=repr)]
    pivots: list[tuple[int, dict]] = []
    for j in range(n):
        piv = next((e for e in eqs if e.get(j)), None)
        if piv is None:
            continue
        eqs.remove(piv)
        inv = field.inv(piv[j])
        piv = {k: field.norm(v * inv) for k, v in piv.items() if field.norm(v * inv)}
        for e in eqs + [p for _, p in pivots]:
            c = e.get(j)
            if not c:
                continue
            for k, v in piv.items():
                nv = field.norm(e.get(k, 0) - c * v)
                if nv:
                    e[k] = nv
                else:
                    e.pop(k, None)
        pivots.append((j, piv))
    if any(e.get("rhs") for e in eqs):
        return None
    sol = [field.zero()] * n
    for j, piv in pivots:
        sol[j] = field.norm(piv.get("rhs", 0))
    return sol
