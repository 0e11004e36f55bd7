"""GF(2) linear algebra engine selection.

The compiled extension (:mod:`fsglab._gf2core`) is preferred when it was
built; otherwise the pure-Python int-bitset engine is used. Both expose the
same surface, and ``get_engine`` lets tests and benchmarks pin one explicitly.
"""

from __future__ import annotations

from . import _gf2py

try:  # pragma: no cover - depends on build environment
    from . import _gf2core

    _default = _gf2core
    HAVE_COMPILED = True
except ImportError:  # pragma: no cover
    _gf2core = None
    _default = _gf2py
    HAVE_COMPILED = False

ENGINE_NAME = _default.ENGINE_NAME
ADDED = _gf2py.ADDED
DEPENDENT = _gf2py.DEPENDENT
INCONSISTENT = _gf2py.INCONSISTENT

Eliminator = _default.Eliminator
solve_system = _default.solve_system
rank_of = _default.rank_of


def available_engines() -> list[str]:
    names = ["pure"]
    if HAVE_COMPILED:
        names.append("compiled")
    return names


def get_engine(name: str | None = None):
    """Return the engine module for ``name`` ('pure', 'compiled' or None)."""
    if name is None:
        return _default
    if name == "pure":
        return _gf2py
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled GF(2) engine is not available")
        return _gf2core
    raise ValueError(f"unknown engine {name!r}")
