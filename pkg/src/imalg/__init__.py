"""Exact verification engine for multiply-affinized B_r intersection data.

Builds affinized generalized intersection matrices, the presented
noncommutative coordinate algebra with involution, the matrix Lie algebra
so_{2r+1} over it, and machine-checks the defining relations, bracket
formulas, grading, and constructive generation witnesses.
"""

from __future__ import annotations

__version__ = "1.0.0"
