"""Standard Coxeter matrices by diagram name.

Names: A<n>, B<n>, D<n> (rank n), I2_<m> (dihedral with bond m), and the
exceptional H3, H4, F4.  All bonds not listed are 2 (commuting).
"""

from __future__ import annotations

import re

from .core import CoxeterMatrix, validate_matrix


def _from_bonds(rank: int, bonds: dict[tuple[int, int], int]) -> CoxeterMatrix:
    rows = [[1 if i == j else 2 for j in range(rank)] for i in range(rank)]
    for (i, j), m in bonds.items():
        rows[i][j] = m
        rows[j][i] = m
    return validate_matrix(rows)


def type_a(rank: int) -> CoxeterMatrix:
    """A(n): the symmetric group on n+1 points."""
    if rank < 0:
        raise ValueError("rank must be >= 0")
    return _from_bonds(rank, {(i, i + 1): 3 for i in range(rank - 1)})


def type_b(rank: int) -> CoxeterMatrix:
    """B(n): signed permutations; the bond of weight 4 sits at the start."""
    if rank < 2:
        raise ValueError("type B needs rank >= 2")
    bonds = {(i, i + 1): 3 for i in range(1, rank - 1)}
    bonds[(0, 1)] = 4
    return _from_bonds(rank, bonds)


def type_d(rank: int) -> CoxeterMatrix:
    """D(n): nodes 1 and 2 both bonded to node 3, then a chain."""
    if rank < 2:
        raise ValueError("type D needs rank >= 2")
    if rank == 2:
        return _from_bonds(2, {})
    bonds = {(0, 2): 3, (1, 2): 3}
    bonds.update({(i, i + 1): 3 for i in range(2, rank - 1)})
    return _from_bonds(rank, bonds)


def type_i2(m: int) -> CoxeterMatrix:
    """I2(m): the dihedral group of order 2m."""
    if m < 2:
        raise ValueError("I2 needs bond m >= 2")
    return _from_bonds(2, {(0, 1): m})


def type_h3() -> CoxeterMatrix:
    return _from_bonds(3, {(0, 1): 5, (1, 2): 3})


def type_h4() -> CoxeterMatrix:
    return _from_bonds(4, {(0, 1): 5, (1, 2): 3, (2, 3): 3})


def type_f4() -> CoxeterMatrix:
    return _from_bonds(4, {(0, 1): 3, (1, 2): 4, (2, 3): 3})


_SERIES = re.compile(r"^([ABD])(\d+)$")
_DIHEDRAL = re.compile(r"^I2_(\d+)$")


def catalog_matrix(name: str) -> CoxeterMatrix:
    """Matrix for a catalog name such as 'A3', 'B4', 'D5', 'I2_7', 'H3'."""
    cleaned = name.strip()
    match = _SERIES.match(cleaned)
    if match:
        family, rank = match.group(1), int(match.group(2))
        if family == "A":
            return type_a(rank)
        if family == "B":
            return type_b(rank)
        return type_d(rank)
    match = _DIHEDRAL.match(cleaned)
    if match:
        return type_i2(int(match.group(1)))
    if cleaned == "H3":
        return type_h3()
    if cleaned == "H4":
        return type_h4()
    if cleaned == "F4":
        return type_f4()
    raise ValueError(f"unknown catalog type {name!r}")
