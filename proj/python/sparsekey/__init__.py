"""Secret-key generation from sparse reciprocal wireless channels.

Thin Python layer over the C++ core: channel/pattern statistics, mutual
information kernels and the log-determinant oracle, ergodic key rates with
on-off sounding, secrecy-outage tails and exponents, and exact leakage
checks for toy binning schemes.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc

__all__ = [name for name in dir() if not name.startswith("_")]
__doc__ = _core_doc
