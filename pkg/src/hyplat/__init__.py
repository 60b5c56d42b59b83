"""Exact-arithmetic toolkit for rank-3 hyperbolic lattices.

Submodules:
    intmath     integer utilities (Smith normal form, Kronecker symbol, divisors)
    lattice     the three standard lattice shapes, roots, genus invariants
    bounds      hyperbolic-plane bound functions and the narrow-part constants
    narrow      the nine narrow-part Gram-matrix enumerations
    mainfilter  refined enumeration of main-lattice invariant triplets
    vinberg     Vinberg's algorithm and fundamental-polygon verification
    tables      bundled classification tables and their batch verification
    cli         command-line front end
"""

__version__ = "0.1.0"
