"""Pure-Python persistence pairing kernel (fallback backend).

Mirrors the compiled kernel in hyperph._reduction exactly: same inputs,
same outputs, same pairing decisions.  Kept dependency-light so it always
imports.
"""

from __future__ import annotations

import numpy as np


def _xor_merge(a: list[int], b: list[int]) -> list[int]:
    """Symmetric difference of two sorted index lists, sorted."""
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        if a[i] < b[j]:
            out.append(a[i])
            i += 1
        elif a[i] > b[j]:
            out.append(b[j])
            j += 1
        else:
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return out


def pair_simplices(dims, faces, n: int) -> np.ndarray:
    """Creator/destroyer pairing of a sorted filtered complex.

    ``dims[i]`` is the dimension (0..2) of the i-th simplex in filtration
    order; ``faces[3*i:3*i+3]`` are the indices of its codimension-1
    faces (-1 padded).  Faces must precede cofaces.

    Returns ``pair_of`` with ``pair_of[creator] = destroyer`` and vice
    versa, -1 for unpaired (essential) simplices.  Components merge by
    the elder rule: the component whose creating vertex is earliest in
    filtration order survives.
    """
    pair_of = np.full(n, -1, dtype=np.int64)
    parent = list(range(n))
    size = [1] * n
    birth = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    low_col: dict[int, list[int]] = {}

    for i in range(n):
        d = dims[i]
        if d == 0:
            continue
        if d == 1:
            ru = find(faces[3 * i])
            rv = find(faces[3 * i + 1])
            if ru == rv:
                continue  # positive edge: creates a 1-cycle
            young = max(birth[ru], birth[rv])
            elder = min(birth[ru], birth[rv])
            if size[ru] < size[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            size[ru] += size[rv]
            birth[ru] = elder
            pair_of[young] = i
            pair_of[i] = young
        else:
            col = sorted(int(f) for f in faces[3 * i : 3 * i + 3])
            while col:
                low = col[-1]
                pinned = low_col.get(low)
                if pinned is None:
                    low_col[low] = col
                    pair_of[low] = i
                    pair_of[i] = low
                    break
                col = _xor_merge(col, pinned)
    return pair_of
