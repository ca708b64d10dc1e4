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

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

import numpy as np

from hsdiv.core.schemas.enums import CommandName, Family, InputKind, MeasurementClass


class GridRange(BaseModel):
    """
    ``n`` evenly spaced points from ``start`` to ``stop``; written ``start:stop:n``
    on the command line.
    """

    model_config = ConfigDict(frozen=True)

    start: float = Field(0.0, ge=0.0, le=1.0)
    stop: float = Field(1.0, ge=0.0, le=1.0)
    n: int = Field(11, ge=1)

    @classmethod
    def parse(cls, text: str) -> 'GridRange':
        parts = text.split(':')
        if len(parts) != 3:
            raise ValueError(f'grid must look like p0:p1:n, got {text!r}')
        return cls(start=float(parts[0]), stop=float(parts[1]), n=int(parts[2]))

    def values(self) -> list[float]:
        return np.linspace(self.start, self.stop, self.n).tolist()


class GridSpec(BaseModel):
    p: GridRange = Field(default_factory=GridRange)
    q: GridRange = Field(default_factory=GridRange)


class RunConfig(BaseModel):
    """
    Everything a command needs. Loaded from a ``--config`` JSON file; explicit flags
    override the file.
    """

    model_config = ConfigDict(populate_by_name=True, extra='forbid')

    command: CommandName
    gamma: float = Field(1.0, ge=0.0)
    gammas: list[float] = Field(default_factory=lambda: [1.0])
    epsilon: float = Field(0.0, ge=0.0)
    epsilons: list[float] | None = None
    measurement_class: MeasurementClass = Field(MeasurementClass.all, alias='class')
    tol: float | None = Field(None, ge=1e-10, le=1e-4)
    inputs: list[str] = Field(default_factory=list)
    mechanism: str | None = None
    output_dims: tuple[int, int] | None = None
    out: str | None = None
    family: Family | None = None
    grid: GridSpec = Field(default_factory=GridSpec)
    dims: list[int] = Field(default_factory=lambda: [2])
    jobs: int | None = Field(None, gt=0)
    witness: bool = False
    covariant: bool = False
    kind: InputKind = InputKind.auto

    @field_validator('epsilons', 'gammas')
    @classmethod
    def non_negative(cls, values):
        if values is not None and any(v < 0 for v in values):
            raise ValueError('values must be non-negative')
        return values

    @field_validator('dims')
    @classmethod
    def dims_at_least_two(cls, values):
        if any(d < 2 for d in values):
            raise ValueError('dimensions must be at least 2')
        return values

    @model_validator(mode='after')
    def table_needs_family(self):
        if self.command is CommandName.table and self.family is None:
            raise ValueError('the table command needs a family')
        return self
