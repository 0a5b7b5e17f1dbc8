"""Enumeration kernels, compiled when the Cython extension is built.

``BACKEND`` is ``"cython"`` or ``"python"`` depending on what imported.
"""

try:
    from ._ckernels import compose_doubled, cyclic_chain_sums, digit_table

    BACKEND = "cython"
except ImportError:  # extension not built
    from ._pykernels import compose_doubled, cyclic_chain_sums, digit_table

    BACKEND = "python"

__all__ = ["BACKEND", "compose_doubled", "cyclic_chain_sums", "digit_table"]
