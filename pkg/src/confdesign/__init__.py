"""Exact verification toolkit for conformal designs in vertex operator algebras.

Submodules:

- ``exact``: rationals, polynomials, rational functions, exact linear algebra
- ``virasoro``: vacuum Virasoro modules, Kac determinants, highest-weight vectors
- ``traces``: zero-mode traces as affine forms in the moments of a partial zero mode
- ``classify``: design systems, conditions on (c, h), scans and tables
- ``qforms``: q-series, modular forms, extremal characters
- ``rootsys``: root systems and zonal harmonic root sums
- ``lattice``: lattice shells and spherical design strength
- ``cli``: command-line front end
"""

__version__ = "0.1.0"
