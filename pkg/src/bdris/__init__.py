"""Power versus circuit complexity of beyond-diagonal RIS architectures.

Modules: ``archgraph`` (architecture graphs and partitions), ``channels``
(reproducible Rayleigh draws), ``power`` (per-draw bound and expectations),
``pareto`` (optimal partitions and the frontier), ``scattering`` (matrices
that reach the bound), ``montecarlo``, ``verify`` and ``cli``.
"""
__version__ = "0.1.0"
