"""Quantum circuit watermarking toolkit.

Thin wrapper over the compiled extension; everything lives in
``qcmark._core``.
"""

from qcmark._core import *  # noqa: F401,F403
from qcmark._core import __version__  # noqa: F401
