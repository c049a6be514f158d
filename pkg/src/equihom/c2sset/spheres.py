"""Reduced B-homology of the representation spheres S^{p + q sigma}."""
from __future__ import annotations

from typing import Iterable

from ..grfree import RORep, SphereTable
from ..mackey import norm_F2
from .bredon import bredon_homology_range
from .builtins import sphere

DEFAULT_TABLE = SphereTable()


def fill_sphere_table(shifts: Iterable[RORep], max_degree: int,
                      table: SphereTable | None = None) -> SphereTable:
    """Compute H~_n(S^alpha; B) for each shift and every n <= max_degree."""
    table = DEFAULT_TABLE if table is None else table
    b = norm_F2()
    for alpha in sorted(set(shifts)):
        if all((alpha, n) in table for n in range(max_degree + 1)):
            continue
        values = bredon_homology_range(sphere(alpha.p, alpha.q), b, max_degree, reduced=True)
        for n, h in enumerate(values):
            table.put(alpha, n, h)
    return table
