"""Exact Tate cohomology of finite groups on integer lattices.

Submodules:

- zmodule: exact linear algebra over Z, group presentations, duals
- gaction: finite groups acting on finitely generated abelian groups
- cohomology: bar-resolution cohomology, Tate groups, transfer maps,
  group extensions and their first cohomology
- langlands: dual-torus diagrams built from the cohomology layer
- frobloop: fixed points and norm towers of an endomorphism, with the
  function-theoretic duality checks
- cli: the `tatecoh` command line tool
"""

__version__ = "0.1.0"
