"""Exact sparse linear algebra over any of the scalar fields.

Vectors are dicts ``{int: scalar}`` with no stored zeros.  The pivot of a row
is always its *largest* index, so the reduced form of a vector modulo a row
space is unique and independent of insertion order.
"""

from __future__ import annotations

import heapq


def vadd(u: dict, v: dict, c=1) -> dict:
    """Return u + c*v as a new dict."""
    out = dict(u)
    vadd_into(out, v, c)
    return out


def vadd_into(u: dict, v: dict, c=1) -> None:
    for k, x in v.items():
        y = u.get(k)
        y = c * x if y is None else y + c * x
        if y:
            u[k] = y
        else:
            u.pop(k, None)


def vscale(v: dict, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


class Echelon:
    """Row space in echelon form, built one vector at a time.

    ``rows[p]`` has largest index ``p`` and entry one there.
    """

    def __init__(self):
        self.rows = {}

    def __len__(self):
        return len(self.rows)

    @property
    def rank(self):
        return len(self.rows)

    def reduce(self, v: dict) -> dict:
        """Unique representative of v modulo the row space with no pivot in its support."""
        v = dict(v)
        rows = self.rows
        if not rows:
            return v
        heap = [-k for k in v if k in rows]
        heapq.heapify(heap)
        while heap:
            k = -heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            for j, x in rows[k].items():
                y = v.get(j)
                if y is None:
                    v[j] = -c * x
                    if j in rows and j != k:
                        heapq.heappush(heap, -j)
                else:
                    y = y - c * x
                    if y:
                        v[j] = y
                    else:
                        del v[j]
        return v

    def add(self, v: dict):
        """Insert v; return the new pivot, or None if v was already in the span."""
        r = self.reduce(v)
        if not r:
            return None
        p = max(r)
        c = r[p]
        if c != 1:
            inv = 1 / c
            r = {k: x * inv for k, x in r.items()}
        self.rows[p] = r
        return p

    def contains(self, v: dict) -> bool:
        return not self.reduce(v)

    def reduced_rows(self) -> dict:
        """pivot -> (fully reduced row minus the pivot entry), ascending pivots."""
        full = {}
        for p in sorted(self.rows):
            tail = {}
            for j, x in self.rows[p].items():
                if j == p:
                    continue
                if j in full:
                    vadd_into(tail, full[j], -x)
                else:
                    vadd_into(tail, {j: -x})
            # tail expresses e_p modulo the row space, in non-pivot coordinates
            full[p] = tail
        return full


def rank(columns) -> int:
    """Rank of a matrix given as an iterable of sparse vectors."""
    ech = Echelon()
    for col in columns:
        if col:
            ech.add(col)
    return ech.rank


def nullspace(columns: list) -> list:
    """Basis of {x : sum_j x_j columns[j] = 0} as sparse dicts over column positions.

    Works on augmented vectors (col_j | e_j): tag index j, matrix row i at
    index ncols + i.  Matrix entries are therefore eliminated first and rows
    whose pivot is a tag carry kernel vectors.
    """
    n = len(columns)
    ech = Echelon()
    basis = []
    for j, col in enumerate(columns):
        v = {n + i: x for i, x in col.items()}
        v[j] = 1
        p = ech.add(v)
        if p is not None and p < n:
            basis.append(dict(ech.rows[p]))
    return basis
