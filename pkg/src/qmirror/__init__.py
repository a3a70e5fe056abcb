"""Exact computer algebra for genus-one quasimap mirror series of CY complete intersections."""
from .exactnum import QQ, CyclotomicField, Poly, RatFunc, RationalFunctionField
from .hypergeom import ModelParams
from .qseries import QSeries

__all__ = ["QQ", "CyclotomicField", "Poly", "RatFunc", "RationalFunctionField",
           "ModelParams", "QSeries"]
__version__ = "0.1.0"
