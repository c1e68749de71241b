"""Computable moduli theory for taut contact circles on 3-manifolds.

Subpackage map:

- intlinalg: Smith normal form, abelianization (exact integers)
- groups: finite-group tables, automorphisms, outer classes
- numberfield / quaternions: exact arithmetic for SU(2) subgroups
- euclidean / halfplane / sl2tilde: the three model geometries
- coframes: model coframes and structure-equation verification
- seifert: normalized Seifert invariants and their identities
- e2moduli: torus bundles, standard forms, lattice symmetries
- su2moduli: finite SU(2) subgroups, Out0, lens-space descriptors
- weil: genus-2 octagon group and lifted Gauss-Bonnet checks
- godbillon: Godbillon-Vey quadrature on the 3-sphere
- cli: command-line front end
"""

__version__ = "0.1.0"
