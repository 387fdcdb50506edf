"""Backend selection for the hot loops.

The compiled extension is used when it was built; set ``PLANPRES_PURE=1`` to
force the pure-Python fallback.
"""
import os

BACKEND = "python"

if not os.environ.get("PLANPRES_PURE"):
    try:
        from ._ckernels import dot_profile, formula_width, thick_thin, uf_labels, word_width

        BACKEND = "cython"
    except ImportError:
        pass

if BACKEND == "python":
    from ._pykernels import dot_profile, formula_width, thick_thin, uf_labels, word_width

__all__ = ["BACKEND", "dot_profile", "word_width", "thick_thin", "formula_width", "uf_labels"]
