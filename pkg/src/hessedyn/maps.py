"""The maps of the Hesse pencil, written in the coordinate of the line of curves.

Coefficient index ``k`` multiplies ``l0^(d-k) * l1^k``.
"""

from .exactnum import EPS, BinaryForm
from .ratmap import RationalSelfMap

# l -> -(1 + 2 l^3) / (6 l^2)
HESSIAN = RationalSelfMap(BinaryForm((0, 0, -6, 0)), BinaryForm((1, 0, 0, 2)))
# l -> (1 - 4 l^3) / (6 l)
CAYLEYAN = RationalSelfMap(BinaryForm((0, 6, 0, 0)), BinaryForm((1, 0, 0, -4)))
# l -> -1 / (2 l)
IOTA = RationalSelfMap(BinaryForm((0, 2)), BinaryForm((-1, 0)))
# l -> (1 - l) / (2 l + 1)
PHI = RationalSelfMap(BinaryForm((1, 2)), BinaryForm((1, -1)))
# l -> eps * l
GAMMA = RationalSelfMap(BinaryForm((1, 0)), BinaryForm((0, EPS)))

BY_NAME = {"h": HESSIAN, "c": CAYLEYAN, "i": IOTA, "phi": PHI, "gamma": GAMMA}
