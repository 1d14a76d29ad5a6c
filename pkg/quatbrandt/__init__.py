"""quatbrandt: exact Brandt matrices and isogeny graphs for definite quaternion algebras.

The package is layered bottom-up:

- ``arith``: the algebra H_p, its maximal order and matrices over the order
- ``forms``: quaternionic hermitian forms and their Haupt norm
- ``enumeration``: short vectors, isometry backtracking and orbit splitting
- ``classes``: ideal classes (g=1) and hermitian classes (g>=2) with mass certificates
- ``brandt``: Brandt matrices and the identity suite
- ``graphs``: big / little / enhanced isogeny graphs
- ``spectral``: characteristic polynomials and exact Ramanujan verdicts
- ``runtime`` / ``cli``: settings, disk cache, orchestration and the command line
"""

__version__ = "0.1.0"
