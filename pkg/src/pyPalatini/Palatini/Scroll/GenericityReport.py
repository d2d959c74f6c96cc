from pydantic import BaseModel, Field, model_validator

from ..Palatini import EvidenceKind, TOOLKIT_VERSION


class StratumProbe(BaseModel):
    trials: int = Field(ge=0)
    hits: int = Field(ge=0)

    @model_validator(mode='after')
    def _hits_within_trials(self) -> 'StratumProbe':
        if self.hits > self.trials:
            raise ValueError(f'{self.hits} hits in {self.trials} trials.')
        return self


class SmoothnessProbe(BaseModel):
    sampled: int = Field(ge=0)
    singular_hits: int = Field(ge=0)


class CodimProbe(BaseModel):
    slice_dim: int = Field(ge=0)
    point_count: int = Field(ge=0)
    sampled: int = Field(ge=0)


class GenericityReport(BaseModel):
    """
    Evidence for the four genericity hypotheses on a skew system.

    * pf_nonzero, f_phi_injective, phi_injective and range_ok are verified exactly.
    * d_m2_probe counts sampled points of X at which N(v) has corank 2 or more (points of D_{m-2}); any hit
      refutes hypothesis (1).
    * y_smooth_probe counts sampled points of Y at which the gradient of pf vanishes.
    * codim_probe counts sampled points of X at which the Jacobian of the maximal minors has rank slice_dim, the
      codimension 2k - m of a smooth X.

    Probe counters are evidence only; ``evidence`` records which fields were verified and which probed.
    """
    m: int
    k: int
    field: str
    seed: int
    pf_nonzero: bool
    f_phi_injective: bool
    phi_injective: bool
    range_ok: bool
    d_m2_probe: StratumProbe
    y_smooth_probe: SmoothnessProbe
    codim_probe: CodimProbe
    evidence: dict[str, EvidenceKind]
    instance_hash: str
    toolkit_version: str = TOOLKIT_VERSION

    @property
    def verified_ok(self) -> bool:
        return self.pf_nonzero and self.f_phi_injective and self.phi_injective and self.range_ok

    @property
    def probes_clean(self) -> bool:
        return (
            self.d_m2_probe.hits == 0
            and self.y_smooth_probe.singular_hits == 0
            and self.codim_probe.point_count == self.codim_probe.sampled
        )

    @property
    def passed(self) -> bool:
        return self.verified_ok and self.probes_clean
