"""Exact, self-verifying constructions for bounded chain complexes of free modules."""
from __future__ import annotations

__version__ = "0.1.0"
