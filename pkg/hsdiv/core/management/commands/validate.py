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

from hsdiv.core.errors import EXIT_OK, HsdInputError
from hsdiv.core.management.base import BaseCommand
from hsdiv.core.qobjects import ChoiOperator, DensityMatrix
from hsdiv.core.schemas.config import RunConfig
from hsdiv.core.schemas.enums import InputKind
from hsdiv.core.schemas.matrix import (
    ChannelSetSchema,
    ChoiSchema,
    KrausSchema,
    MatrixSchema,
    StateSetSchema,
)
from hsdiv.core.schemas.results import ValidationSummarySchema


LOADERS = {
    InputKind.state: (MatrixSchema, MatrixSchema.to_state),
    InputKind.choi: (ChoiSchema, ChoiSchema.to_choi),
    InputKind.kraus: (KrausSchema, KrausSchema.to_choi),
    InputKind.states: (StateSetSchema, StateSetSchema.to_state_set),
    InputKind.channels: (ChannelSetSchema, ChannelSetSchema.to_channel_set),
}


def infer_kind(data) -> InputKind:
    if not isinstance(data, dict):
        raise HsdInputError('input must hold a JSON object', loc=('kind',))
    for key, kind in (
        ('states', InputKind.states),
        ('channels', InputKind.channels),
        ('kraus', InputKind.kraus),
        ('dim_in', InputKind.choi),
    ):
        if key in data:
            return kind
    return InputKind.state


def _state_fields(state: DensityMatrix) -> dict:
    return {
        'dim': state.dim,
        'dims': state.shape.as_tuple() if state.shape else None,
        'min_eig': state.op.min_eig(),
        'trace': state.op.trace(),
    }


def _choi_fields(choi: ChoiOperator) -> dict:
    return {
        'dim_in': choi.input_dim,
        'dim_out': choi.output_dim,
        'min_eig': choi.op.min_eig(),
        'trace_preservation_residual': choi.trace_preservation_residual(),
    }


class Command(BaseCommand):
    name = 'validate'
    help = 'Check that an input file holds a valid state, channel or set of them'

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='*', metavar='FILE', help='file to check')
        parser.add_argument(
            '--kind',
            choices=[k.value for k in InputKind],
            help='expected content (default: inferred from the keys)',
        )

    def handle(self, config: RunConfig) -> int:
        if len(config.inputs) != 1:
            raise HsdInputError(
                f'validate needs exactly one file, got {len(config.inputs)}', loc=('inputs',)
            )
        path = config.inputs[0]
        kind = config.kind
        if kind is InputKind.auto:
            kind = infer_kind(self.read_json(path))
        schema, convert = LOADERS[kind]
        loaded = self.load_input(path, schema, convert)

        match kind:
            case InputKind.state:
                fields = _state_fields(loaded)
            case InputKind.choi | InputKind.kraus:
                fields = _choi_fields(loaded)
            case InputKind.states:
                fields = {'count': len(loaded.states), **_state_fields(loaded.states[0])}
                fields['min_eig'] = min(s.op.min_eig() for s in loaded.states)
            case InputKind.channels:
                fields = {'count': len(loaded), **_choi_fields(loaded.channels[0])}
                fields['min_eig'] = min(c.op.min_eig() for c in loaded.channels)
                fields['trace_preservation_residual'] = max(
                    c.trace_preservation_residual() for c in loaded.channels
                )
        summary = ValidationSummarySchema(path=path, kind=kind, **fields)
        self.write_model(summary, config.out)
        return EXIT_OK
