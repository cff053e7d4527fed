"""Tools for planning closed 2-forms on 4-manifolds that are symplectic off
a collection of signed circles, together with a numerically verified local
model near those circles.

The package splits into an exact combinatorial side (integer linear algebra,
circle-sign planning, Legendrian stabilization arithmetic, extension
obstructions) and a numerical side (the explicit local 2-form, metric and
almost complex structure near a zero circle).  The ``certify`` pipeline glues
both into a machine-checkable certificate.
"""

from . import topo_core, spinc_planner, contact_kit, local_model

__all__ = ["topo_core", "spinc_planner", "contact_kit", "local_model"]
__version__ = "0.1.0"
