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

from collections.abc import Sequence
from typing import Any

from pydantic import BaseModel, ValidationError

from pydantic_core import to_jsonable_python


EXIT_OK = 0
EXIT_INPUT = 1
EXIT_SOLVER = 2
EXIT_INCOMPLETE = 3


class HsdError(Exception):
    """
    Base error of the package. Carries a stable code, a human title, the exit
    status the command line maps it to, and optional location/metadata that
    point at the offending input field.
    """

    code: str = 'ERR_HSD'
    title: str = 'hsdiv error'
    exit_code: int = EXIT_INPUT

    def __init__(
        self,
        detail: str,
        meta_data: dict | None = None,
        loc: tuple[int | str, ...] | None = None,
        *,
        code: str | None = None,
        title: str | None = None,
    ) -> None:
        self.detail = detail
        self.loc = loc
        self.code = code or self.code
        self.title = title or self.title
        self.meta = to_jsonable_python(meta_data, serialize_unknown=True) if meta_data else None
        super().__init__(detail)

    def to_schema(self) -> 'SchemaError':
        return SchemaError(
            code=self.code,
            title=self.title,
            detail=self.detail,
            loc='.'.join(str(p) for p in self.loc) if self.loc else None,
            meta=self.meta,
        )


class HsdInputError(HsdError):
    """
    Invalid user input: malformed data, violated preconditions, inconsistent shapes.
    """

    code = 'ERR_INPUT'
    title = 'Input error'


class NotHermitianError(HsdInputError):
    code = 'ERR_NOT_HERMITIAN'
    title = 'Operator is not Hermitian'


class DimensionMismatchError(HsdInputError):
    code = 'ERR_DIMENSION'
    title = 'Dimension mismatch'


class MissingShapeError(HsdInputError):
    code = 'ERR_MISSING_SHAPE'
    title = 'Operator has no bipartite shape'


class InvalidStateError(HsdInputError):
    code = 'ERR_STATE'
    title = 'Not a density matrix'


class InvalidChoiError(HsdInputError):
    code = 'ERR_CHOI'
    title = 'Not the Choi operator of a channel'


class InvalidMeasurementError(HsdInputError):
    code = 'ERR_MEASUREMENT'
    title = 'Not a measurement operator'


class SdpModelError(HsdInputError):
    code = 'ERR_SDP_MODEL'
    title = 'Inconsistent SDP description'


class CovarianceError(HsdInputError):
    code = 'ERR_COVARIANCE'
    title = 'Covariance declaration does not allow the reduction'


class HsdSolverError(HsdError):
    """
    Raised when an SDP could not be solved to the requested accuracy. The solver
    status is kept so callers can tell infeasibility from numerical trouble.
    """

    code = 'ERR_SOLVER'
    title = 'Solver failure'
    exit_code = EXIT_SOLVER

    def __init__(self, detail: str, status: str, **kwargs) -> None:
        self.status = status
        super().__init__(detail, **kwargs)


class HsdException(Exception):  # noqa: N818
    """
    Aggregates several HsdError instances, e.g. every field error found while
    validating one input file.
    """

    exit_code: int = EXIT_INPUT

    def __init__(self, errors: list[HsdError] | HsdError) -> None:
        self.errors = list(errors) if isinstance(errors, Sequence) else [errors]
        self.exit_code = max(err.exit_code for err in self.errors) if self.errors else EXIT_INPUT
        super().__init__('; '.join(err.detail for err in self.errors))

    @classmethod
    def from_validation_error(cls, exc: ValidationError, *, loc: tuple[int | str, ...] = None):
        """
        Converts each pydantic validation error into an HsdInputError, keeping the
        location of the offending field.
        """
        return cls(
            [
                HsdInputError(
                    title=err['type'],
                    detail=err['msg'],
                    loc=(loc or tuple()) + tuple(err.get('loc', ())),
                )
                for err in exc.errors()
            ]
        )

    def to_schema(self) -> 'SchemaErrors':
        return SchemaErrors(errors=[err.to_schema() for err in self.errors])


class SchemaError(BaseModel):
    """
    Wire representation of one error, printed by the command line.
    """

    code: str | None = None
    title: str | None = None
    detail: str | None = None
    loc: str | None = None
    meta: dict[str, Any] | None = None


class SchemaErrors(BaseModel):
    errors: list[SchemaError]
