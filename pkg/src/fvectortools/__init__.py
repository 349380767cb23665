# read version from installed package
from importlib.metadata import version

__version__ = version("fvectortools")


# populate package namespace
from fvectortools import io, bounds, properties, lprime, exterior, symmetric

from fvectortools.poset import FVector, PosetError, RankedPoset, Verdict
from fvectortools.monomial import Monomial
from fvectortools.lprime import FamilySpec, Multichain, build_lprime
from fvectortools.exterior import SimplicialFamily, shift_exterior
from fvectortools.symmetric import PPoset, shift_symmetric
from fvectortools.cli import main
