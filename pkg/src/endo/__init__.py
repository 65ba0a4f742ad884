"""Exact ends, endomorphism monoids and (co)endomorphism operads of
functors from finite categories into finite sets or rational vector spaces."""

from .endcalc import (coendomorphism_operad, endomorphism_monoid, endomorphism_operad,
                      nat_object, whisker_map)
from .errors import (BaseMismatch, EndoError, GuardExceeded, Report, SchemaError, ShapeError,
                     VerificationError)
from .exactla import Matrix, Subspace, kernel, rank
from .fincat import CatFunctor, FinCategory, validate_category, validate_functor
from .repcat import (Representation, adjunction_backward, adjunction_forward,
                     faithfulness_probe, from_module_action, to_module_action)
from .vbase import FINSET, QVECT, BaseFunctor, FinSetMonoid, FinSetObj, VectMonoid, VectObj

__all__ = [
    "BaseFunctor", "BaseMismatch", "CatFunctor", "EndoError", "FINSET", "FinCategory",
    "FinSetMonoid", "FinSetObj", "GuardExceeded", "Matrix", "QVECT", "Report", "Representation",
    "SchemaError", "ShapeError", "Subspace", "VectMonoid", "VectObj", "VerificationError",
    "adjunction_backward", "adjunction_forward", "coendomorphism_operad", "endomorphism_monoid",
    "endomorphism_operad", "faithfulness_probe", "from_module_action", "kernel", "nat_object",
    "rank", "to_module_action", "validate_category", "validate_functor", "whisker_map",
]
