"""Pointwise linear algebra for almost hermitian geometry in dimension six."""

from .forms import (
    DIM,
    Form,
    J,
    OMEGA,
    SkewEndo,
    VOL,
    contract,
    endo_act_on_form,
    endo_of_form,
    form_of_endo,
    format_form,
    hodge,
    inner,
    monomials,
    norm_sq,
    parse_form,
    wedge,
)

from .unitary import (
    delta_class,
    isotropy_algebra,
    identify_algebra,
    project_l3,
    tau,
    torsion_type,
    torus_fixed_dims,
)
from .orbits import (
    TorsionFamily,
    bianchi_feasible,
    classify_form,
    d_parallel,
    invariant_poly_dims,
    lie_group_criterion,
    make_torsion,
    sigma,
)
from .clifford import is_scalar_square, parallel_spinors, \
    torsion_spinor_spectrum
from .liegeom import (
    CurvatureRecord,
    LieAlgebraData,
    ReductiveModel,
    algebra_fingerprint,
    canonical_data,
    jacobi_check,
    nomizu,
)
from .nil import StructureEquations, betti_vector, nil_family, nil_torsion, \
    verify_parallel
from . import catalog

__all__ = [
    "DIM", "Form", "J", "OMEGA", "SkewEndo", "VOL",
    "contract", "endo_act_on_form", "endo_of_form", "form_of_endo",
    "format_form", "hodge", "inner", "monomials", "norm_sq",
    "parse_form", "wedge",
    "delta_class", "isotropy_algebra", "identify_algebra", "project_l3",
    "tau", "torsion_type", "torus_fixed_dims",
    "TorsionFamily", "bianchi_feasible", "classify_form", "d_parallel",
    "invariant_poly_dims", "lie_group_criterion", "make_torsion", "sigma",
    "is_scalar_square", "parallel_spinors", "torsion_spinor_spectrum",
    "CurvatureRecord", "LieAlgebraData", "ReductiveModel",
    "algebra_fingerprint", "canonical_data", "jacobi_check", "nomizu",
    "StructureEquations", "betti_vector", "nil_family", "nil_torsion",
    "verify_parallel",
    "catalog",
]
