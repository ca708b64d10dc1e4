# Copyright 2026 The hsdiv Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

from pydantic import BaseModel, ConfigDict, Field

import numpy as np

from hsdiv.core.divergence import DivergenceResult
from hsdiv.core.privacy import AuditReport, PairFailure
from hsdiv.core.schemas.enums import InputKind, MeasurementClass, Method
from hsdiv.core.schemas.matrix import MatrixSchema
from hsdiv.core.sdp import SdpStatus


class DivergenceResultSchema(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    value: float
    dual_value: float | None = None
    gap: float | None = None
    method: Method
    measurement_class: MeasurementClass = Field(alias='class')
    gamma: float
    status: SdpStatus | None = None
    witness: MatrixSchema | None = None
    notes: list[str] = Field(default_factory=list)

    @classmethod
    def from_result(cls, result: DivergenceResult, with_witness: bool = False):
        witness = None
        if with_witness and result.witness is not None:
            witness = MatrixSchema.from_operator(result.witness)
        return cls(
            value=result.value,
            dual_value=result.dual_value,
            gap=result.gap,
            method=result.method,
            measurement_class=result.measurement_class,
            gamma=result.gamma,
            status=result.status,
            witness=witness,
            notes=list(result.notes),
        )

    def to_result(self) -> DivergenceResult:
        return DivergenceResult(
            value=self.value,
            method=self.method,
            measurement_class=self.measurement_class,
            gamma=self.gamma,
            witness=self.witness.to_operator() if self.witness else None,
            dual_value=self.dual_value,
            gap=self.gap,
            status=self.status,
            notes=tuple(self.notes),
        )


class PairFailureSchema(BaseModel):
    i: int
    j: int
    code: str
    detail: str


def _nan_to_none(matrix: np.ndarray) -> list[list[float | None]]:
    return [[None if math.isnan(v) else float(v) for v in row] for row in matrix]


def _none_to_nan(rows: list[list[float | None]]) -> np.ndarray:
    return np.array([[np.nan if v is None else v for v in row] for row in rows], dtype=float)


class AuditReportSchema(BaseModel):
    """
    Audit report as written by the audit command. Entries of failed pairs (and the
    gaps of closed-form evaluations) are null.
    """

    model_config = ConfigDict(populate_by_name=True)

    epsilon: float
    measurement_class: MeasurementClass = Field(alias='class')
    achieved_delta: float
    witness: tuple[int, int] | None = None
    pairwise: list[list[float | None]]
    per_pair_gaps: list[list[float | None]]
    complete: bool
    contraction_bound: float
    failures: list[PairFailureSchema] = Field(default_factory=list)

    @classmethod
    def from_report(cls, report: AuditReport) -> 'AuditReportSchema':
        return cls(
            epsilon=report.epsilon,
            measurement_class=report.measurement_class,
            achieved_delta=report.achieved_delta,
            witness=report.witness_pair,
            pairwise=_nan_to_none(report.pairwise),
            per_pair_gaps=_nan_to_none(report.per_pair_gaps),
            complete=report.complete,
            contraction_bound=report.contraction_bound,
            failures=[PairFailureSchema(**vars(f)) for f in report.failures],
        )

    def to_report(self) -> AuditReport:
        return AuditReport(
            epsilon=self.epsilon,
            measurement_class=self.measurement_class,
            achieved_delta=self.achieved_delta,
            witness_pair=self.witness,
            pairwise=_none_to_nan(self.pairwise),
            per_pair_gaps=_none_to_nan(self.per_pair_gaps),
            failures=tuple(PairFailure(**f.model_dump()) for f in self.failures),
        )


class SweepRowSchema(BaseModel):
    epsilon: float
    achieved_delta: float
    complete: bool


class AuditSweepSchema(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    measurement_class: MeasurementClass = Field(alias='class')
    rows: list[SweepRowSchema]


class ValidationSummarySchema(BaseModel):
    """
    What ``validate`` found in an input file.
    """

    path: str
    kind: InputKind
    count: int = 1
    dim: int | None = None
    dims: tuple[int, int] | None = None
    dim_in: int | None = None
    dim_out: int | None = None
    min_eig: float | None = None
    trace: float | None = None
    trace_preservation_residual: float | None = None
