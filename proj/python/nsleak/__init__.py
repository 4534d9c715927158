"""Non-stochastic information-leakage measures over finite data.

The compiled core exposes joint ranges of uncertain variables, order-0
entropies, brute-force guessing leakage and its maximal form with
exhaustive oracles, overlap partitions and maximin information,
identifiability bounds, and the empirical stochastic counterparts
(Sibson-infinity leakage, guessing entropy).
"""

import importlib

try:
    _core = importlib.import_module("._nsleak", __name__)
except ImportError:  # in-tree builds put the extension directly on sys.path
    _core = importlib.import_module("_nsleak")

__all__ = sorted(name for name in dir(_core) if not name.startswith("_"))
globals().update({name: getattr(_core, name) for name in __all__})

__version__ = "0.1.0"
