"""Step 1 of DiProPerm: a separating direction from a binary linear classifier."""

from typing import Optional, Union

from src.data.samples import SamplePair
from src.directions.base import (
    DirectionMethod,
    DirectionVector,
    ScatterMatrices,
    SolverOptions,
    scatter_matrices,
)
from src.directions.data_piling import mdp_direction
from src.directions.dwd import DwdSolver, default_dwd_penalty, dwd_direction, dwd_objective
from src.directions.fisher import fisher_raw_direction, fld_direction
from src.directions.mean_difference import md_direction
from src.directions.svm import SvmSolver, svm_direction


def compute_direction(
    sp: SamplePair,
    method: Union[DirectionMethod, str],
    options: Optional[SolverOptions] = None,
) -> DirectionVector:
    """
    Compute the unit, oriented direction of ``method`` on ``sp``.

    Args:
        sp: Two-sample data
        method: Classifier (enum member or its lower-case code)
        options: Solver options, used by SVM and DWD only

    Raises:
        DegenerateDirection: If the normal vector is zero
        SolverError: If an iterative solver fails to converge
    """
    method = DirectionMethod(method)
    if method is DirectionMethod.MD:
        return md_direction(sp)
    if method is DirectionMethod.FLD:
        return fld_direction(sp)
    if method is DirectionMethod.MDP:
        return mdp_direction(sp)
    if method is DirectionMethod.SVM:
        return svm_direction(sp, options)
    return dwd_direction(sp, options)


__all__ = [
    "DirectionMethod",
    "DirectionVector",
    "DwdSolver",
    "ScatterMatrices",
    "SolverOptions",
    "SvmSolver",
    "compute_direction",
    "default_dwd_penalty",
    "dwd_direction",
    "dwd_objective",
    "fisher_raw_direction",
    "fld_direction",
    "md_direction",
    "mdp_direction",
    "scatter_matrices",
    "svm_direction",
]
