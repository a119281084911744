"""Type-II three-wave mixing in multimode quasi-phase-matched waveguides."""

try:
    from ._modemix import *  # noqa: F401,F403  (installed package layout)
except ImportError:  # pragma: no cover - in-tree builds put _modemix on sys.path
    from _modemix import *  # noqa: F401,F403
