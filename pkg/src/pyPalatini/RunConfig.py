from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator
from sympy import isprime

from .Palatini.Palatini import (
    DEFAULT_CHECK_POINTS, DEFAULT_PRIME, DEFAULT_PROBE_TRIALS, MAX_PRIME, OutputFormat,
    TANGENT_MEMORY_BUDGET_BYTES,
)


Command = Literal['gen', 'degree', 'pfaffian', 'verify', 'sample', 'tangent', 'slice', 'invariants']


INSTANCE_COMMANDS = frozenset({'pfaffian', 'verify', 'sample', 'tangent', 'slice'})
"""Commands that read an instance file.
"""


def _parse_range(value) -> Optional[tuple[int, int]]:
    if value is None or isinstance(value, tuple):
        return value
    lo, sep, hi = str(value).partition(':')
    if not sep:
        raise ValueError(f'Expected a range A:B, got {value!r}.')
    return int(lo), int(hi)


class RunConfig(BaseModel):
    """
    The validated flags of one command-line run. Flags a command needs are checked together, before any
    computation; all randomness of the run derives from ``seed``.
    """
    command: Command
    instance: Optional[Path] = None
    m: Optional[int] = None
    k: Optional[int] = None
    p: int = DEFAULT_PRIME
    e: int = Field(default=1, ge=1)
    seed: int = Field(default=0, ge=0)
    trials: int = Field(default=DEFAULT_PROBE_TRIALS, ge=1)
    ext: int = Field(default=1, ge=1)
    count: int = Field(default=10, ge=1)
    check_points: int = Field(default=DEFAULT_CHECK_POINTS, ge=1)
    cap: Optional[int] = None
    budget: int = Field(default=TANGENT_MEMORY_BUDGET_BYTES, ge=1)
    max_ext: int = Field(default=6, ge=1)
    slices: int = Field(default=10, ge=1)
    m_range: Optional[tuple[int, int]] = None
    k_range: Optional[tuple[int, int]] = None
    format: OutputFormat = OutputFormat.JSON
    out: Optional[Path] = None
    verbosity: int = Field(default=0, ge=0)

    @field_validator('m_range', 'k_range', mode='before')
    @classmethod
    def _ranges(cls, value):
        return _parse_range(value)

    @model_validator(mode='after')
    def _flags_for_command(self) -> 'RunConfig':
        if self.command in INSTANCE_COMMANDS and self.instance is None:
            raise ValueError(f'{self.command} needs --instance.')
        if self.command in ('gen', 'invariants') and (self.m is None or self.k is None):
            raise ValueError(f'{self.command} needs --m and --k.')
        if self.command == 'gen':
            if self.m < 1 or 2 * self.k < self.m + 1:
                raise ValueError(f'Need m >= 1 and 2k >= m + 1, got m={self.m}, k={self.k}.')
            if self.m > self.k + 1:
                raise ValueError(f'Generic instances need m <= k + 1, got m={self.m}, k={self.k}.')
            if not (isprime(self.p) and self.p < MAX_PRIME):
                raise ValueError(f'--p must be a prime below {MAX_PRIME}, got {self.p}.')
            if self.p ** self.e < 5:
                raise ValueError(f'The field F_{self.p}^{self.e} has fewer than 5 elements.')
        if self.command == 'degree':
            if self.m_range is None or self.k_range is None:
                raise ValueError('degree needs --m-range and --k-range.')
            if self.m_range[0] > self.m_range[1] or self.k_range[0] > self.k_range[1]:
                raise ValueError('Degree ranges must be nonempty.')
        return self
