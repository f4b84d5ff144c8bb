"""Exact orbit classification on Lagrangian Grassmannians.

Modules:

- :mod:`~lagorbits.exactlin`: exact fields, matrices and canonical subspaces
- :mod:`~lagorbits.symplectic`: symplectic spaces, perps, reduction
- :mod:`~lagorbits.spsp_orbits`: the Sp(V1) × Sp(V2) action on L(V1 ⊕ V2)
- :mod:`~lagorbits.gl_orbits`: the GL(n) action on L(W1 ⊕ W2)
- :mod:`~lagorbits.ff_oracle`: exhaustive censuses over small prime fields
- :mod:`~lagorbits.cli`: JSON command-line front end
"""

from .exactlin import GF, QQ, Mat, Subspace

__all__ = ["GF", "QQ", "Mat", "Subspace"]
__version__ = "0.1.0"
