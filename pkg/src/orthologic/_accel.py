"""Optional compiled helpers for the structural memo stores.

``ORTHOLOGIC_PURE=1`` disables them, like the search kernel.
"""

import os

from .terms import compare_sequents

try:
    if os.environ.get("ORTHOLOGIC_PURE"):
        raise ImportError("pure backend requested")
    from ._kernel import SeqKey, assoc_index  # type: ignore
    from ._kernel import compare_sequents as compare_sequents_fast  # type: ignore
    COMPILED = True
except ImportError:
    COMPILED = False
    assoc_index = None
    compare_sequents_fast = compare_sequents

    class SeqKey:
        """Sequent key ordered by ``compare_sequents``."""
        __slots__ = ("seq",)

        def __init__(self, seq):
            self.seq = seq

        def __lt__(self, other):
            return compare_sequents(self.seq, other.seq) < 0

        def __repr__(self):
            return f"SeqKey{self.seq!r}"
