import hashlib
import json
import logging
from functools import cached_property
from typing import Any, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .SkewSystem import SkewSystem
from ..Fields.FieldCtx import FieldCtx
from ..Fields.Scalar import Scalar
from ..Linalg.Matrix import Matrix
from ..Palatini import FieldKind, TOOLKIT_VERSION
from ..PalatiniError import DimensionMismatch, InstanceFormatError, RangeError, ZeroVector
from ..Polynomials.LinFormMatrix import LinFormMatrix
from ..Polynomials.MultiPoly import FormSystem, MultiPoly, _lift_point


logger = logging.getLogger(__name__)


Membership = NamedTuple('Membership', [('member', bool), ('corank', int)])
"""Result of a membership test for the scroll X: whether the point lies on X, and the corank of the 2k x m matrix
N(v), i.e. m minus its rank.
"""


def field_json(ctx: FieldCtx) -> dict:
    """The field of an instance as stored in instance files: ``{p, e}``, with the modulus for e > 1, or
    ``{kind: rational}``.
    """
    if ctx.kind == FieldKind.RATIONAL:
        return {'kind': ctx.kind.value}
    obj = {'p': ctx.p, 'e': ctx.e}
    if ctx.e > 1:
        obj['modulus'] = list(ctx.modulus)
    return obj


def _is_nested(entries: list, ctx: FieldCtx) -> bool:
    """Whether stored matrix entries are given as rows. Elements of an extension field are themselves lists.
    """
    first = entries[0] if entries else None
    if ctx.e > 1:
        return isinstance(first, list) and bool(first) and isinstance(first[0], list)
    return isinstance(first, list)


class PalatiniInstance:
    """
    A Palatini scroll instance: a skew system together with everything derived from it.

    * The pencil matrix M, the 2k x 2k matrix of linear forms in u_1..u_m with entries sum_l a_{i,j}^l u_l. Its
      pfaffian hypersurface Y in P^{m-1} is the locus where M(u) drops rank.
    * The matrix F, the m x 2k matrix of linear forms in v_1..v_2k with entries F_{l,c} = sum_j a_{c,j}^l v_j. Its
      maximal minors cut out the scroll X in P^{2k-1}.
    * The pfaffian of M, a form of degree k, and the maximal minors of F, forms of degree m, computed on first use
      and cached.

    :param SkewSystem system: The skew system.
    :param Optional[int] seed: The seed the matrices were drawn from, if any.
    :param Optional[dict] provenance: Free-form provenance stored alongside the instance.
    """

    @property
    def system(self) -> SkewSystem:
        return self._system

    @property
    def ctx(self) -> FieldCtx:
        return self._system.ctx

    @property
    def m(self) -> int:
        return self._system.m

    @property
    def k(self) -> int:
        return self._system.k

    @property
    def n(self) -> int:
        return self._system.n

    @property
    def seed(self) -> Optional[int]:
        return self._seed

    @property
    def provenance(self) -> dict:
        return self._provenance

    @property
    def M(self) -> LinFormMatrix:
        return self._M

    @property
    def F(self) -> LinFormMatrix:
        return self._F

    @cached_property
    def pf(self) -> MultiPoly:
        """The pfaffian of M, a form of degree k in m variables.
        """
        logger.debug('Computing the pfaffian of the %dx%d pencil in %d variables', self.n, self.n, self.m)
        return self._M.symbolic_pfaffian()

    @cached_property
    def pf_gradient(self) -> FormSystem:
        return FormSystem(self.pf.gradient(), self.m, self.k - 1)

    @cached_property
    def minors(self) -> list[MultiPoly]:
        """The maximal minors of F, forms of degree m in 2k variables, in lexicographic order of column sets.
        """
        return self._F.minors_max()

    @cached_property
    def minor_system(self) -> FormSystem:
        return FormSystem(self.minors, self.n, self.m)

    # Evaluation

    def pencil(self, u: Sequence[Any]) -> Matrix:
        """The constant skew matrix M(u).
        """
        return self._M.evaluate(u)

    def phi_matrix(self, v: Sequence[Any]) -> Matrix:
        """The 2k x m matrix N(v) with entries N_{i,l} = sum_j a_{i,j}^l v_j, over the field of v. Its l-th column is
        A^l v, so that M(u) v == N(v) u.

        :raises DimensionMismatch: If v does not have 2k coordinates.
        """
        if len(v) != self.n:
            raise DimensionMismatch(f'Point has {len(v)} coordinates, expected {self.n}.')
        return self._F.evaluate(v).T

    def membership(self, v: Sequence[Any]) -> Membership:
        """Test whether v lies on X, i.e. whether N(v) has rank below m. Works over any extension of the field of
        the instance.

        :raises ZeroVector: If v is zero.
        """
        target, raw = _lift_point(self.ctx, v)
        if all(target.r_is_zero(x) for x in raw):
            raise ZeroVector('The zero vector is not a projective point.')
        corank = self.m - self.phi_matrix(v).rank()
        return Membership(corank > 0, corank)

    # Serialization

    def to_json(self) -> dict:
        """The instance as stored on disk. Each matrix is stored as its strict lower triangle in row-major order; the
        rest follows from skew-symmetry. Prime-field entries are written as integers, extension entries as coefficient
        lists and rationals as "num/den" strings.
        """
        ctx = self.ctx
        write = ctx.r_to_int if ctx.kind == FieldKind.PRIME else ctx.r_to_json
        matrices = [
            [write(a[i][j]) for i in range(self.n) for j in range(i)]
            for a in self._system.raw
        ]
        return {
            'm': self.m,
            'k': self.k,
            'field': field_json(ctx),
            'matrices': matrices,
            'seed': self._seed,
            'provenance': self._provenance,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    @cached_property
    def digest(self) -> str:
        """A SHA-256 of the canonical serialization of the field and matrices, stable across runs.
        """
        obj = self.to_json()
        canonical = json.dumps({key: obj[key] for key in ('m', 'k', 'field', 'matrices')}, sort_keys=True,
                               separators=(',', ':'))
        return hashlib.sha256(canonical.encode('utf-8')).hexdigest()

    @classmethod
    def from_json(cls, obj: Mapping) -> 'PalatiniInstance':
        """Load an instance. Matrices may be given as strict lower triangles or as full row-major n x n lists; full
        matrices are checked for skew-symmetry.

        :raises InstanceFormatError: If the document is malformed.
        :raises NotSkewSymmetric: If a full matrix is not skew-symmetric.
        """
        try:
            m, k = int(obj['m']), int(obj['k'])
            ctx = FieldCtx.from_json(obj['field'])
            stored = obj['matrices']
            seed = obj.get('seed')
            provenance = dict(obj.get('provenance') or {})
        except (KeyError, TypeError, ValueError) as ex:
            raise InstanceFormatError(f'Malformed instance: {ex}') from ex
        if not isinstance(stored, list) or len(stored) != m:
            raise InstanceFormatError(f'Expected {m} matrices.')
        n = 2 * k
        tri = n * (n - 1) // 2
        matrices = []
        for l, entries in enumerate(stored):
            if not isinstance(entries, list):
                raise InstanceFormatError(f'Matrix {l + 1} is not a list.')
            flat = [v for row in entries for v in row] if _is_nested(entries, ctx) else entries
            try:
                raw = [ctx.r_from_value(v) for v in flat]
            except (TypeError, ValueError) as ex:
                raise InstanceFormatError(f'Matrix {l + 1} has a malformed entry: {ex}') from ex
            if len(raw) == tri:
                data = [[ctx.r_zero()] * n for _ in range(n)]
                it = iter(raw)
                for i in range(n):
                    for j in range(i):
                        v = next(it)
                        data[i][j] = v
                        data[j][i] = ctx.r_neg(v)
            elif len(raw) == n * n:
                data = [raw[i * n:(i + 1) * n] for i in range(n)]
            else:
                raise InstanceFormatError(
                    f'Matrix {l + 1} has {len(raw)} entries; expected {tri} (lower triangle) or {n * n}.'
                )
            matrices.append(Matrix.from_raw(ctx, data, n))
        return cls(SkewSystem(ctx, matrices), seed=None if seed is None else int(seed), provenance=provenance)

    @classmethod
    def loads(cls, text: str) -> 'PalatiniInstance':
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as ex:
            raise InstanceFormatError(f'Instance is not valid JSON: {ex}') from ex
        return cls.from_json(obj)

    def __eq__(self, other) -> bool:
        return isinstance(other, PalatiniInstance) and self._system == other._system

    def __hash__(self):
        return hash(self.digest)

    def __repr__(self):
        return f'PalatiniInstance(m={self.m}, k={self.k}, over {self.ctx}, seed={self._seed})'

    def __init__(self, system: SkewSystem, seed: Optional[int] = None, provenance: Optional[dict] = None):
        self._system = system
        self._seed = seed
        self._provenance = provenance if provenance is not None else {'toolkit_version': TOOLKIT_VERSION}
        ctx, n, m = system.ctx, system.n, system.m
        raw = system.raw
        self._M = LinFormMatrix.from_raw(ctx, [[[raw[l][i][j] for l in range(m)] for j in range(n)]
                                               for i in range(n)], m)
        self._F = LinFormMatrix.from_raw(ctx, [[list(raw[l][c]) for c in range(n)] for l in range(m)], n)


def instance_random(m: int, k: int, ctx: FieldCtx, seed: int) -> PalatiniInstance:
    """Draw a random instance: m skew-symmetric 2k x 2k matrices with independent uniform entries below the diagonal,
    drawn in order from one seeded generator. The same (m, k, field, seed) always gives the same instance.

    :raises RangeError: Unless 2k >= m + 1 and m >= 1, or if the field has fewer than 5 elements.
    """
    if m < 1 or 2 * k < m + 1:
        raise RangeError(f'Need m >= 1 and 2k >= m + 1, got m={m}, k={k}.')
    if ctx.is_finite and ctx.order < 5:
        raise RangeError(f'Instances need a field with at least 5 elements, got {ctx}.')
    rng = np.random.default_rng(seed)
    matrices = [Matrix.random_skew(ctx, 2 * k, rng) for _ in range(m)]
    provenance = {'generator': 'instance_random', 'toolkit_version': TOOLKIT_VERSION}
    inst = PalatiniInstance(SkewSystem(ctx, matrices), seed=seed, provenance=provenance)
    logger.info('Generated instance m=%d k=%d over %s from seed %d', m, k, ctx, seed)
    return inst


def membership_X(inst: PalatiniInstance, v: Sequence[Any]) -> Membership:
    """See :meth:`PalatiniInstance.membership`.
    """
    return inst.membership(v)


def normalize_point(point: Sequence[Any], ctx: FieldCtx) -> list[Scalar]:
    """Scale a projective point so that its first nonzero coordinate is 1.

    :raises ZeroVector: If the point is zero.
    """
    target, raw = _lift_point(ctx, point)
    lead = next((x for x in raw if not target.r_is_zero(x)), None)
    if lead is None:
        raise ZeroVector('The zero vector is not a projective point.')
    inv = target.r_inv(lead)
    return [Scalar(target, target.r_mul(x, inv)) for x in raw]
