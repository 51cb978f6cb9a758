#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact linear algebra over Q.
- EchelonSpace: incrementally grown reduced row-echelon basis of a span, each row
  remembering which inserted vectors it combines (used for saturation traces)
- solve_linear_system: fraction-free (Bareiss) elimination + back substitution
"""

from fractions import Fraction
from math import lcm
from typing import Dict, Hashable, List, Optional, Sequence, Tuple

from polyring import as_rational

Vector = Dict[Hashable, object]


def _sort_key(key):
    return repr(key)


class EchelonSpace:
    """Span of inserted vectors kept in reduced row-echelon form.

    Rows have leading coefficient 1 at their pivot key and no other row has a
    nonzero entry at that key. `combos[pivot]` expresses the row as a linear
    combination of insertion labels.
    """

    def __init__(self):
        self.rows: Dict[Hashable, Vector] = {}
        self.combos: Dict[Hashable, Dict[int, object]] = {}

    @property
    def dim(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Vector, label: Optional[int] = None) -> Tuple[Vector, Dict[int, object]]:
        """Return (remainder, combo) with vec = remainder + sum(combo)."""
        rem = {k: v for k, v in vec.items() if v != 0}
        combo: Dict[int, object] = {} if label is None else {label: 1}
        used: Dict[int, object] = {}
        for pivot in [k for k in rem if k in self.rows]:
            f = rem.get(pivot, 0)
            if f == 0:
                continue
            for k, v in self.rows[pivot].items():
                nv = rem.get(k, 0) - f * v
                if nv == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = nv
            for idx, c in self.combos[pivot].items():
                used[idx] = used.get(idx, 0) + f * c
                if label is not None:
                    combo[idx] = combo.get(idx, 0) - f * c
        if label is None:
            return rem, {k: v for k, v in used.items() if v != 0}
        return rem, {k: v for k, v in combo.items() if v != 0}

    def contains(self, vec: Vector) -> bool:
        rem, _ = self.reduce(vec)
        return not rem

    def express(self, vec: Vector) -> Optional[Dict[int, object]]:
        """Combination of insertion labels equal to vec, or None if vec is outside."""
        rem, used = self.reduce(vec)
        if rem:
            return None
        return used

    def insert(self, vec: Vector, label: int) -> bool:
        """Add vec (tagged `label`) to the span; False if it was already inside."""
        rem, combo = self.reduce(vec, label)
        if not rem:
            return False
        pivot = min(rem, key=_sort_key)
        inv = Fraction(1) / Fraction(rem[pivot])
        row = {k: as_rational(v * inv) for k, v in rem.items()}
        combo = {k: as_rational(v * inv) for k, v in combo.items()}
        for other, orow in self.rows.items():
            f = orow.get(pivot, 0)
            if f == 0:
                continue
            for k, v in row.items():
                nv = orow.get(k, 0) - f * v
                if nv == 0:
                    orow.pop(k, None)
                else:
                    orow[k] = nv
            ocombo = self.combos[other]
            for idx, c in combo.items():
                nc = ocombo.get(idx, 0) - f * c
                if nc == 0:
                    ocombo.pop(idx, None)
                else:
                    ocombo[idx] = nc
        self.rows[pivot] = row
        self.combos[pivot] = combo
        return True


def _integer_row(values: Sequence) -> List[int]:
    dens = [Fraction(v).denominator for v in values if v != 0]
    scale = lcm(*dens) if dens else 1
    return [int(Fraction(v) * scale) for v in values]


def solve_linear_system(columns: Sequence[Vector], target: Vector) -> Optional[List[object]]:
    """Find coefficients c with sum(c[j] * columns[j]) == target, or None.

    Equations are indexed by the union of keys; each equation row is scaled to
    integers and eliminated fraction-free. Free unknowns are set to zero.
    """
    keys = set(target)
    for col in columns:
        keys.update(col)
    keys = sorted(keys, key=_sort_key)
    n = len(columns)
    if n == 0:
        return [] if all(v == 0 for v in target.values()) else None
    m = [_integer_row([col.get(k, 0) for col in columns] + [target.get(k, 0)]) for k in keys]

    prev = 1
    r = 0
    pivots: List[int] = []
    rows = len(m)
    for c in range(n):
        p = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, rows):
            a = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, n + 1):
                row_i[j] = (row_i[j] * piv - a * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
        if r == rows:
            break

    for i in range(r, rows):
        if m[i][n] != 0:
            return None

    sol: List[object] = [0] * n
    for i in range(len(pivots) - 1, -1, -1):
        c = pivots[i]
        s = Fraction(m[i][n])
        for j in range(c + 1, n):
            if m[i][j] != 0 and sol[j] != 0:
                s -= m[i][j] * sol[j]
        sol[c] = as_rational(s / m[i][c])
    return sol
