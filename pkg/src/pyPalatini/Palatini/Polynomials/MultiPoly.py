import logging
from typing import Any, Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .MonomialBasis import Exponent, MonomialBasis, monomial_basis
from ..Fields.FieldCtx import FieldCtx, PrimeFieldCtx
from ..Fields.Scalar import Scalar
from ..Fields.UniPoly import UniPoly
from ..Linalg.modular import matmul_mod
from ..Palatini import ZERO_POLY_DEGREE
from ..PalatiniError import DependentBasePoints, DimensionMismatch, FieldMismatch, InstanceFormatError


logger = logging.getLogger(__name__)


def glex_key(exponent: Exponent) -> tuple:
    """Sort key putting higher total degree first, then higher exponents of earlier variables first.
    """
    return (-sum(exponent),) + tuple(-e for e in exponent)


def _lift_point(ctx: FieldCtx, point: Sequence[Any]) -> tuple[FieldCtx, list[Any]]:
    """The field a point lives in and its raw coordinates; plain ints are taken in ctx.
    """
    target = next((x.ctx for x in point if isinstance(x, Scalar)), ctx)
    return target, [target(x).raw for x in point]


class MultiPoly:
    """
    A sparse multivariate polynomial over an exact field, stored as a mapping from exponent tuples to nonzero raw
    coefficients.

    :param FieldCtx ctx: The coefficient field.
    :param int nvars: The number of variables.
    :param Mapping[tuple, Any] terms: Exponent tuple to coefficient (a Scalar of ctx or a value ctx can coerce).
    """

    @classmethod
    def from_raw(cls, ctx: FieldCtx, nvars: int, terms: dict[Exponent, Any]) -> 'MultiPoly':
        poly = cls.__new__(cls)
        poly._ctx = ctx
        poly._nvars = nvars
        poly._terms = {e: c for e, c in terms.items() if not ctx.r_is_zero(c)}
        return poly

    @classmethod
    def variable(cls, ctx: FieldCtx, nvars: int, i: int) -> 'MultiPoly':
        return cls.from_raw(ctx, nvars, {tuple(1 if j == i else 0 for j in range(nvars)): ctx.r_one()})

    @classmethod
    def constant(cls, ctx: FieldCtx, nvars: int, value: Any) -> 'MultiPoly':
        return cls.from_raw(ctx, nvars, {(0,) * nvars: ctx(value).raw})

    @classmethod
    def linear(cls, ctx: FieldCtx, coeffs: Sequence[Any]) -> 'MultiPoly':
        """The linear form sum_i coeffs[i] * x_i, with raw coefficients.
        """
        n = len(coeffs)
        return cls.from_raw(ctx, n, {tuple(1 if j == i else 0 for j in range(n)): c for i, c in enumerate(coeffs)})

    @classmethod
    def from_vector(cls, ctx: FieldCtx, basis: MonomialBasis, vector: Sequence[Any]) -> 'MultiPoly':
        """The form with the given raw coefficients on a monomial basis.
        """
        return cls.from_raw(ctx, basis.nvars, {e: ctx(c).raw for e, c in zip(basis.exponents, vector)})

    # Properties

    @property
    def ctx(self) -> FieldCtx:
        return self._ctx

    @property
    def nvars(self) -> int:
        return self._nvars

    @property
    def terms(self) -> dict[Exponent, Any]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def degree(self) -> Union[int, float]:
        """Total degree; :data:`~pyPalatini.Palatini.Palatini.ZERO_POLY_DEGREE` for the zero polynomial.
        """
        return max((sum(e) for e in self._terms), default=ZERO_POLY_DEGREE)

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self._terms}) <= 1

    def coefficient(self, exponent: Exponent) -> Scalar:
        return Scalar(self._ctx, self._terms.get(tuple(exponent), self._ctx.r_zero()))

    # Arithmetic

    def _check(self, other: 'MultiPoly'):
        if other._ctx != self._ctx:
            raise FieldMismatch(f'Cannot combine polynomials over {self._ctx} and {other._ctx}.')
        if other._nvars != self._nvars:
            raise DimensionMismatch(f'Cannot combine polynomials in {self._nvars} and {other._nvars} variables.')

    def __add__(self, other: 'MultiPoly') -> 'MultiPoly':
        self._check(other)
        ctx = self._ctx
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = ctx.r_add(out[e], c) if e in out else c
        return MultiPoly.from_raw(ctx, self._nvars, out)

    def __neg__(self) -> 'MultiPoly':
        return MultiPoly.from_raw(self._ctx, self._nvars, {e: self._ctx.r_neg(c) for e, c in self._terms.items()})

    def __sub__(self, other: 'MultiPoly') -> 'MultiPoly':
        return self + (-other)

    def scale(self, c: Any) -> 'MultiPoly':
        raw = self._ctx(c).raw
        return MultiPoly.from_raw(self._ctx, self._nvars, {e: self._ctx.r_mul(raw, v) for e, v in self._terms.items()})

    def __mul__(self, other: Union['MultiPoly', Scalar, int]) -> 'MultiPoly':
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        ctx = self._ctx
        out: dict[Exponent, Any] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = ctx.r_mul(c1, c2)
                out[e] = ctx.r_add(out[e], prod) if e in out else prod
        return MultiPoly.from_raw(ctx, self._nvars, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> 'MultiPoly':
        result = MultiPoly.constant(self._ctx, self._nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def derivative(self, i: int) -> 'MultiPoly':
        """The partial derivative with respect to x_i.
        """
        ctx = self._ctx
        out = {}
        for e, c in self._terms.items():
            if e[i]:
                d = list(e)
                d[i] -= 1
                out[tuple(d)] = ctx.r_mul(ctx.r_from_int(e[i]), c)
        return MultiPoly.from_raw(ctx, self._nvars, out)

    def gradient(self) -> list['MultiPoly']:
        return [self.derivative(i) for i in range(self._nvars)]

    # Evaluation

    def __call__(self, point: Sequence[Any]) -> Scalar:
        return poly_eval(self, point)

    def restrict_to_line(self, p0: Sequence[Any], p1: Sequence[Any]) -> UniPoly:
        """The univariate polynomial g(t) = f(p0 + t * p1).

        The points may lie in an extension of the coefficient field; the result is over the field of the points.

        :raises DimensionMismatch: If the points do not have nvars coordinates.
        :raises DependentBasePoints: If p0 and p1 are linearly dependent, so that they span no line.
        """
        if len(p0) != self._nvars or len(p1) != self._nvars:
            raise DimensionMismatch(f'Line base points must have {self._nvars} coordinates.')
        target, r0 = _lift_point(self._ctx, p0)
        target, r1 = _lift_point(target, p1)
        if _dependent(target, r0, r1):
            raise DependentBasePoints('The base points of the line are linearly dependent.')
        lines = [UniPoly.from_raw(target, [a, b]) for a, b in zip(r0, r1)]
        powers: dict[tuple[int, int], UniPoly] = {}

        def power(i: int, k: int) -> UniPoly:
            if (i, k) not in powers:
                powers[(i, k)] = UniPoly.from_raw(target, [target.r_one()]) if k == 0 else power(i, k - 1) * lines[i]
            return powers[(i, k)]

        out = UniPoly.from_raw(target, [])
        for e, c in self._terms.items():
            term = UniPoly.from_raw(target, [target.coerce_raw(self._ctx, c)])
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def to_vector(self, basis: MonomialBasis) -> list[Any]:
        """Raw coefficients on a monomial basis; the polynomial must be a form of the basis degree.
        """
        vec = [self._ctx.r_zero()] * len(basis)
        for e, c in self._terms.items():
            vec[basis.index(e)] = c
        return vec

    # Serialization

    def to_json(self) -> dict:
        """Terms in graded-lexicographic order, each as exponents and a serialized coefficient.
        """
        return {
            'nvars': self._nvars,
            'field': self._ctx.json,
            'terms': [
                {'exponents': list(e), 'coeff': self._ctx.r_to_json(self._terms[e])}
                for e in sorted(self._terms, key=glex_key)
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping, ctx: Optional[FieldCtx] = None) -> 'MultiPoly':
        try:
            ctx = ctx or FieldCtx.from_json(obj['field'])
            nvars = int(obj['nvars'])
            terms = {}
            for term in obj['terms']:
                e = tuple(int(x) for x in term['exponents'])
                if len(e) != nvars:
                    raise InstanceFormatError(f'Exponent {e} does not have {nvars} entries.')
                terms[e] = ctx.r_from_value(term['coeff'])
        except (KeyError, TypeError, ValueError) as ex:
            if isinstance(ex, InstanceFormatError):
                raise
            raise InstanceFormatError(f'Malformed polynomial: {ex}') from ex
        return cls.from_raw(ctx, nvars, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self._ctx == other._ctx and self._nvars == other._nvars and self._terms == other._terms

    def __hash__(self):
        return hash((self._ctx, self._nvars, frozenset(self._terms.items())))

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for e in sorted(self._terms, key=glex_key):
            mono = '*'.join(f'x{i}' if k == 1 else f'x{i}^{k}' for i, k in enumerate(e) if k)
            coeff = self._ctx.r_str(self._terms[e])
            parts.append(f'{coeff}*{mono}' if mono else coeff)
        return ' + '.join(parts)

    def __repr__(self):
        return f'MultiPoly({len(self._terms)} terms, degree {self.degree}, over {self._ctx})'

    def __init__(self, ctx: FieldCtx, nvars: int, terms: Optional[Mapping[Exponent, Any]] = None):
        self._ctx = ctx
        self._nvars = nvars
        self._terms = {}
        for e, c in (terms or {}).items():
            e = tuple(e)
            if len(e) != nvars:
                raise DimensionMismatch(f'Exponent {e} does not have {nvars} entries.')
            raw = ctx(c).raw
            if not ctx.r_is_zero(raw):
                self._terms[e] = raw


def _dependent(ctx: FieldCtx, a: list[Any], b: list[Any]) -> bool:
    """Whether two raw vectors are linearly dependent (including either being zero).
    """
    n = len(a)
    return all(
        ctx.r_is_zero(ctx.r_sub(ctx.r_mul(a[i], b[j]), ctx.r_mul(a[j], b[i])))
        for i in range(n) for j in range(i + 1, n)
    ) or all(ctx.r_is_zero(x) for x in a) or all(ctx.r_is_zero(x) for x in b)


def poly_eval(f: MultiPoly, point: Sequence[Any]) -> Scalar:
    """Evaluate a polynomial at a point whose coordinates lie in the coefficient field or an extension of it.

    :raises DimensionMismatch: If the point does not have nvars coordinates.
    """
    if len(point) != f.nvars:
        raise DimensionMismatch(f'Point has {len(point)} coordinates, expected {f.nvars}.')
    target, raw = _lift_point(f.ctx, point)
    acc = target.r_zero()
    for e, c in f.terms.items():
        term = target.coerce_raw(f.ctx, c)
        for x, k in zip(raw, e):
            if k:
                term = target.r_mul(term, target.r_pow(x, k))
        acc = target.r_add(acc, term)
    return Scalar(target, acc)


class FormSystem:
    """
    A list of forms of one degree, held as a coefficient matrix on the monomial basis, for evaluating all of them at
    many points. Over a prime field, evaluation at a point of that field is a single modular matrix-vector product.

    :param Sequence[MultiPoly] forms: Homogeneous polynomials of equal degree over one field.
    """

    @property
    def forms(self) -> list[MultiPoly]:
        return self._forms

    @property
    def basis(self) -> MonomialBasis:
        return self._basis

    @property
    def coefficients(self) -> np.ndarray:
        """The (len(forms) x len(basis)) coefficient array, over a prime field only.
        """
        return self._coeffs

    def monomial_values(self, point: Sequence[Any]) -> tuple[FieldCtx, list[Any]]:
        target, raw = _lift_point(self._ctx, point)
        vals = []
        for e in self._basis.exponents:
            v = target.r_one()
            for x, k in zip(raw, e):
                if k:
                    v = target.r_mul(v, target.r_pow(x, k))
            vals.append(v)
        return target, vals

    def evaluate(self, point: Sequence[Any]) -> list[Scalar]:
        target, vals = self.monomial_values(point)
        if self._coeffs is not None and target == self._ctx:
            out = matmul_mod(self._coeffs, np.array(vals, dtype=np.int64).reshape(-1, 1), target.p)
            return [Scalar(target, int(v)) for v in out[:, 0]]
        results = []
        for form in self._forms:
            acc = target.r_zero()
            for e, c in form.terms.items():
                acc = target.r_add(acc, target.r_mul(target.coerce_raw(self._ctx, c), vals[self._basis.index(e)]))
            results.append(Scalar(target, acc))
        return results

    def __len__(self):
        return len(self._forms)

    def __init__(self, forms: Sequence[MultiPoly], nvars: Optional[int] = None, degree: Optional[int] = None):
        forms = list(forms)
        nonzero = [f for f in forms if not f.is_zero]
        self._ctx = forms[0].ctx
        self._forms = forms
        nvars = forms[0].nvars if nvars is None else nvars
        degree = (int(nonzero[0].degree) if nonzero else 0) if degree is None else degree
        self._basis = monomial_basis(nvars, degree)
        self._coeffs = None
        if isinstance(self._ctx, PrimeFieldCtx):
            self._coeffs = np.array([f.to_vector(self._basis) for f in forms], dtype=np.int64).reshape(
                len(forms), len(self._basis))
