"""Exact intersection theory on jet towers of hypersurface families."""

from .chow import BundleWeights, ChowClass, TowerContext
from .errors import DomainError, ParseError
from .scalars import ParamScalar

__all__ = ["BundleWeights", "ChowClass", "DomainError", "ParamScalar", "ParseError", "TowerContext"]
