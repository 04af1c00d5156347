"""Exact calculator for cyclic Hodge algebra correlators.

The compiled core returns every number as a canonical "p/q" string; the
helpers here lift them to fractions.Fraction.
"""

import os
import sys
from fractions import Fraction

# Allow running against a build tree without installing: point
# HODGEFT_EXT_DIR at the directory containing the compiled _core module.
_ext_dir = os.environ.get("HODGEFT_EXT_DIR")
if _ext_dir and _ext_dir not in sys.path:
    sys.path.insert(0, _ext_dir)

try:
    from _core import *  # type: ignore  # noqa: F401,F403  (build-tree layout)
    from _core import psi_intersection as _psi_raw  # type: ignore
    from _core import (  # type: ignore # noqa: F401
        Algebra,
        CorrelatorEngine,
        block6_algebra,
        fixture_by_name,
        fixture_names,
        frobenius_algebra,
        grassmann_algebra,
        load_algebra,
        point_algebra,
        search_block_algebra,
        verify_relation_file,
    )
except ImportError:
    from hodgeft._core import *  # type: ignore # noqa: F401,F403  (installed layout)
    from hodgeft._core import psi_intersection as _psi_raw  # type: ignore
    from hodgeft._core import (  # type: ignore # noqa: F401
        Algebra,
        CorrelatorEngine,
        block6_algebra,
        fixture_by_name,
        fixture_names,
        frobenius_algebra,
        grassmann_algebra,
        load_algebra,
        point_algebra,
        search_block_algebra,
        verify_relation_file,
    )


def psi_intersection(genus, powers):
    """Exact psi intersection number as a Fraction."""
    return Fraction(_psi_raw(genus, list(powers)))


def correlator(algebra, genus, insertions):
    """Correlator of basis insertions [(psi, basis index), ...] as a Fraction."""
    eng = CorrelatorEngine(algebra)
    return Fraction(eng.correlator(genus, list(insertions)))
