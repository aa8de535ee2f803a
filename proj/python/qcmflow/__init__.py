"""OpenFlow quantum-metadata channel toolkit.

Thin package around the compiled core: metadata records, the byte-exact
multipart codec, the QCM flow table, and the deterministic simulator.
"""

from qcmflow._core import *  # noqa: F401,F403
from qcmflow._core import __doc__ as _core_doc  # noqa: F401

__version__ = "0.1.0"
