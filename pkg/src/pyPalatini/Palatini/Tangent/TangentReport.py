from typing import Optional

from pydantic import BaseModel, Field, model_validator

from ..Palatini import TangentStatus, TOOLKIT_VERSION


class StabilizationStep(BaseModel):
    max_syzygy_degree: int
    syzygies: int = Field(ge=0)
    dim: int = Field(ge=0)


class TangentReport(BaseModel):
    """
    The dimension of the degree-0 homomorphisms from the minor ideal I to S/I, computed with the relations among the
    minors up to a degree cap, together with the closed-form expectation for h^0 of the normal bundle.

    ``stabilization`` lists the dimension obtained with the relations of degree at most each cap from m + 1 on; it
    never increases. ``quotient_dims`` maps each degree used to dim (S/I)_d.
    """
    m: int
    k: int
    field: str
    generator_count: int
    syzygy_degrees: list[int]
    quotient_dims: dict[int, int]
    computed_dim: int = Field(ge=0)
    expected_dim: Optional[int] = None
    expected_h1: Optional[int] = None
    agree: bool
    status: TangentStatus
    stabilization: list[StabilizationStep]
    instance_hash: str
    toolkit_version: str = TOOLKIT_VERSION

    @model_validator(mode='after')
    def _weakly_decreasing(self) -> 'TangentReport':
        dims = [step.dim for step in self.stabilization]
        if any(b > a for a, b in zip(dims, dims[1:])):
            raise ValueError(f'Stabilization dimensions increase: {dims}.')
        return self

    @property
    def stabilized(self) -> bool:
        return len(self.stabilization) >= 2 and self.stabilization[-1].dim == self.stabilization[-2].dim
