"""Hot-loop kernels with two interchangeable lanes: a compiled extension
and a pure-Python fallback. The compiled lane is used when importable
unless CONESPAN_PURE=1 forces the fallback. Both lanes evaluate the same
double-precision expressions, so their outputs are bit-identical."""

from __future__ import annotations

import os

from conespan._kernels import pure

if os.environ.get("CONESPAN_PURE") == "1":
    _impl = pure
    IMPL = "pure"
else:
    try:
        from conespan._kernels import _fast as _impl  # type: ignore[no-redef]

        IMPL = "compiled"
    except ImportError:
        _impl = pure
        IMPL = "pure"

cone_of = _impl.cone_of
pairs_in_range = _impl.pairs_in_range
yao_select = _impl.yao_select
floyd_warshall = _impl.floyd_warshall


def active_lane() -> str:
    return IMPL
