from typing import Any, Sequence

from ..Fields.FieldCtx import FieldCtx
from ..Fields.Scalar import Scalar
from ..Linalg.Matrix import Matrix


class IncidencePoint:
    """
    A point u of the pfaffian hypersurface Y together with the kernel of M(u), whose projectivization is the fiber of
    the incidence variety over u. For a point with corank exactly 2 that fiber is a line of the scroll X.

    :param Sequence u: The point of P^{m-1}, normalized so that its first nonzero coordinate is 1.
    :param Matrix kernel: A 2k x corank matrix whose columns span ker M(u).
    """

    @property
    def u(self) -> list[Scalar]:
        return self._u

    @property
    def kernel(self) -> Matrix:
        return self._kernel

    @property
    def ctx(self) -> FieldCtx:
        return self._kernel.ctx

    @property
    def corank(self) -> int:
        return self._kernel.cols

    def combination(self, coeffs: Sequence[Any]) -> list[Scalar]:
        """The kernel vector sum_i coeffs[i] * column_i.
        """
        return self._kernel.apply(coeffs)

    def __repr__(self):
        return f'IncidencePoint(u=[{", ".join(str(x) for x in self._u)}], corank={self.corank})'

    def __init__(self, u: Sequence[Scalar], kernel: Matrix):
        self._u = list(u)
        self._kernel = kernel
