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

"""
JSON wire formats for matrices, states, channels and sets of them.

A matrix is ``{"rows": n, "cols": m, "re": [[...]], "im": [[...]]}`` with
optional ``"dims": [dim_a, dim_b]``; a Choi file adds ``dim_in``/``dim_out``; a
Kraus file lists ``kraus`` matrices of shape (dim_out, dim_in).
"""

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, model_validator

import numpy as np

from hsdiv.core.hermlin import HermitianOperator
from hsdiv.core.privacy import ChannelSet, StateSet
from hsdiv.core.qobjects import ChoiOperator, DensityMatrix, kraus_to_choi


class MatrixSchema(BaseModel):
    model_config = ConfigDict(extra='forbid')

    rows: int = Field(gt=0)
    cols: int = Field(gt=0)
    re: list[list[float]]
    im: list[list[float]] | None = None
    dims: tuple[int, int] | None = Field(None, title='Bipartite factor dimensions')

    @model_validator(mode='after')
    def check_entries(self):
        for part in ('re', 'im'):
            entries = getattr(self, part)
            if entries is None:
                continue
            if len(entries) != self.rows or any(len(row) != self.cols for row in entries):
                raise ValueError(f'{part} must be a {self.rows}x{self.cols} array')
        if self.dims is not None:
            if min(self.dims) < 1 or self.dims[0] * self.dims[1] != self.rows:
                raise ValueError(f'dims {list(self.dims)} do not factor {self.rows}')
        return self

    def to_array(self) -> np.ndarray:
        arr = np.array(self.re, dtype=np.complex128)
        if self.im is not None:
            arr += 1j * np.array(self.im, dtype=float)
        return arr

    def to_operator(self) -> HermitianOperator:
        return HermitianOperator(self.to_array(), self.dims)

    def to_state(self) -> DensityMatrix:
        return DensityMatrix(self.to_operator())

    @classmethod
    def from_array(cls, arr, dims: tuple[int, int] | None = None) -> 'MatrixSchema':
        arr = np.asarray(arr, dtype=np.complex128)
        return cls(
            rows=arr.shape[0],
            cols=arr.shape[1],
            re=arr.real.tolist(),
            im=arr.imag.tolist(),
            dims=dims,
        )

    @classmethod
    def from_operator(cls, op: HermitianOperator) -> 'MatrixSchema':
        return cls.from_array(op.matrix, op.shape.as_tuple() if op.shape else None)


class ChoiSchema(MatrixSchema):
    kind: Literal['choi'] = 'choi'
    dim_in: int = Field(gt=0)
    dim_out: int = Field(gt=0)

    @model_validator(mode='after')
    def check_channel_dims(self):
        if self.rows != self.dim_in * self.dim_out:
            raise ValueError(
                f'Choi side {self.rows} != dim_in * dim_out = {self.dim_in * self.dim_out}'
            )
        return self

    def to_choi(self) -> ChoiOperator:
        return ChoiOperator(self.to_array(), self.dim_in, self.dim_out)

    @classmethod
    def from_choi(cls, choi: ChoiOperator) -> 'ChoiSchema':
        base = MatrixSchema.from_array(choi.matrix).model_dump(exclude={'dims'})
        return cls(**base, dim_in=choi.input_dim, dim_out=choi.output_dim)


class KrausSchema(BaseModel):
    model_config = ConfigDict(extra='forbid')

    kind: Literal['kraus'] = 'kraus'
    kraus: list[MatrixSchema] = Field(min_length=1)
    dim_in: int = Field(gt=0)
    dim_out: int = Field(gt=0)

    def to_choi(self) -> ChoiOperator:
        return kraus_to_choi([k.to_array() for k in self.kraus], self.dim_in, self.dim_out)


ChannelSchema = ChoiSchema | KrausSchema


class StateSetSchema(BaseModel):
    label: str = 'states'
    states: list[MatrixSchema] = Field(min_length=1)

    def to_state_set(self) -> StateSet:
        return StateSet(self.label, tuple(s.to_state() for s in self.states))


class ChannelSetSchema(BaseModel):
    label: str = 'channels'
    channels: list[ChannelSchema] = Field(min_length=1)

    def to_channel_set(self) -> ChannelSet:
        return ChannelSet(self.label, tuple(c.to_choi() for c in self.channels))
