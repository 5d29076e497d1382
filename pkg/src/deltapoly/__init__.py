"""Delta-side-length cones of polygons in rank-2 symmetric spaces (A2, B2, G2)."""
from __future__ import annotations

import hashlib
import json

__version__ = "0.1.0"


def data_checksum() -> str:
    """Short sha256 of the root-system and tabulated Chevalley rows."""
    from .coxeter import _TABLE
    from .schubert import TABULATED_CHEVALLEY

    payload = {
        "root_systems": {k: {f: str(v) for f, v in sorted(d.items())} for k, d in sorted(_TABLE.items())},
        "chevalley": {f"{k[0]}P{k[1]}": list(v) for k, v in sorted(TABULATED_CHEVALLEY.items())},
    }
    blob = json.dumps(payload, sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
