"""Second-fundamental-form Beltrami operator on surfaces in E^3.

Numeric side: expression-defined surfaces, jets, fundamental forms, the
operators ``Delta^I`` and ``Delta^II``, and a least-squares test of
``Delta^II x = A x``.  Symbolic side (:mod:`secondform.elim`): an exact replay
of the case analysis showing that only spheres and catenoids pass that test
among surfaces of revolution.
"""
from .beltrami import laplacian1_position, laplacian2_general, laplacian2_position, laplacian2_revolution
from .finitetype import check_takahashi, classify, fit_matrix, sample_grid
from .geometry import curvature, forms, normal
from .surfaces import catalog, load_surface, parse_catalog_uri

__version__ = "0.1.0"
