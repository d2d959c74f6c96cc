from pydantic import BaseModel, Field

from .GenericityReport import GenericityReport
from ..Palatini import ExitCode, TOOLKIT_VERSION


class PfaffianCheck(BaseModel):
    points: int = Field(ge=0)
    square_failures: int = Field(ge=0)
    symbolic_failures: int = Field(ge=0)

    @property
    def passed(self) -> bool:
        return self.square_failures == 0 and self.symbolic_failures == 0


class IncidenceCheck(BaseModel):
    ext_degree: int = Field(ge=1)
    sampled: int = Field(ge=0)
    corank_two: int = Field(ge=0)
    round_trips: int = Field(ge=0)
    minor_failures: int = Field(ge=0)
    lines_checked: int = Field(ge=0)
    line_failures: int = Field(ge=0)


class SampleRecord(BaseModel):
    u: list
    corank: int
    kernel: list[list]
    verified: bool


class VerificationReport(BaseModel):
    """
    Everything ``verify`` checks on one instance.

    The algebraic identities are Pf(M(u))^2 = det M(u) with the symbolic pfaffian agreeing with the numeric one, the
    vanishing of the maximal minors at sampled points of X, and the vanishing on whole fiber lines. These hold for
    every instance, so a failure is a defect. Fiber coranks other than 2, failed fiber round trips and the genericity
    probes depend on the instance being general, and are reported as probe anomalies.
    """
    m: int
    k: int
    field: str
    seed: int
    pfaffian: PfaffianCheck
    genericity: GenericityReport
    incidence: IncidenceCheck
    instance_hash: str
    toolkit_version: str = TOOLKIT_VERSION

    @property
    def identities_ok(self) -> bool:
        return (
            self.pfaffian.passed
            and self.incidence.minor_failures == 0
            and self.incidence.line_failures == 0
        )

    @property
    def probes_clean(self) -> bool:
        inc = self.incidence
        return self.genericity.passed and inc.corank_two == inc.sampled and inc.round_trips == inc.sampled

    @property
    def exit_code(self) -> ExitCode:
        if not self.identities_ok:
            return ExitCode.IDENTITY_FAILURE
        if not self.probes_clean:
            return ExitCode.PROBE_ANOMALY
        return ExitCode.OK
