"""Exact higher Frobenius-Schur indicators for semisimple quasi-Hopf algebras."""

from .algebra import QuasiHopfAlgebra, gauge_twist, random_gauge_transform, validate
from .constructions import (
    build_group,
    builtin,
    central_twist,
    cyclic_cocycle,
    dual_group_algebra,
    group_algebra,
    h_u,
    kac_algebra,
    twisted_double,
)
from .indicators import indicator_table, mu_n, nu_n
from .reptheory import simple_characters, simple_representations
from .scalars import CycNumber, root_of_unity

__version__ = "0.1.0"

__all__ = [
    "CycNumber", "QuasiHopfAlgebra", "build_group", "builtin", "central_twist", "cyclic_cocycle",
    "dual_group_algebra", "gauge_twist", "group_algebra", "h_u", "indicator_table", "kac_algebra",
    "mu_n", "nu_n", "random_gauge_transform", "root_of_unity", "simple_characters",
    "simple_representations", "twisted_double", "validate",
]
