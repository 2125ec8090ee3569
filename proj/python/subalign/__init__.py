"""Exact rational subspace arithmetic for vector-space interference alignment.

Everything exact crosses the boundary as ints or "p/q" strings; floats are
rejected so no rounding can contaminate a result.
"""

try:
    from ._core import *  # noqa: F401,F403  (installed package layout)
    from . import _core as _impl  # noqa: F401
except ImportError:  # pragma: no cover - build-tree layout used by the tests
    from _core import *  # noqa: F401,F403
    import _core as _impl  # noqa: F401

__version__ = "0.1.0"
