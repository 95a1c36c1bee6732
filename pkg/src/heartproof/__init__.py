"""Finite, checkable criteria for endomorphism rings of superelliptic jacobians.

Subpackages: exact F_p linear algebra, permutation groups with stabilizer
chains, modular permutation-module hearts with a MeatAxe, cyclotomic weight
arithmetic, a Galois-group probe for integer polynomials, and the verdict
dispatcher that chains them into certified conclusions.
"""

__version__ = "0.1.0"
