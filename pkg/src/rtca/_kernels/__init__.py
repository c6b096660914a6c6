"""Kernel lane selection: compiled extension if present, numpy fallback
otherwise.  ``rtca.engine`` only imports names from here."""

try:
    from . import _stepper as _impl
    HAVE_COMPILED = True
except ImportError:
    from . import pyfallback as _impl
    HAVE_COMPILED = False

run_1d_hash = _impl.run_1d_hash
run_1d_table = _impl.run_1d_table
run_2d_hash = _impl.run_2d_hash
ht_insert_1d = _impl.ht_insert_1d
ht_insert_2d = _impl.ht_insert_2d

# The fallback module is importable directly for benchmarking both lanes.
from . import pyfallback  # noqa: E402
