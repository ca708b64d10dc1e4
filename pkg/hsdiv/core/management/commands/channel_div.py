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

from hsdiv.core.chandiv import (
    ChannelPair,
    CovarianceDeclaration,
    channel_hs,
    channel_hs_via_covariance,
)
from hsdiv.core.errors import EXIT_OK, HsdInputError
from hsdiv.core.management.base import BaseCommand
from hsdiv.core.schemas.config import RunConfig
from hsdiv.core.schemas.enums import MeasurementClass
from hsdiv.core.schemas.matrix import ChannelSchema
from hsdiv.core.schemas.results import DivergenceResultSchema


class Command(BaseCommand):
    """
    Channel divergence E_gamma(P || Q) from two Choi or Kraus JSON files.
    """

    name = 'channel-div'
    help = 'Hockey-stick divergence between two channels (Choi or Kraus JSON)'

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='*', metavar='CHANNEL', help='P and Q files')
        parser.add_argument('--gamma', type=float, help='gamma >= 1 (default 1)')
        parser.add_argument(
            '--class',
            dest='measurement_class',
            choices=[MeasurementClass.all.value, MeasurementClass.ppt.value],
            help='measurement class (default all)',
        )
        parser.add_argument(
            '--covariant',
            action='store_true',
            default=None,
            help='assert joint covariance with an irreducible input representation and '
            'evaluate at the maximally entangled input',
        )

    def handle(self, config: RunConfig) -> int:
        if len(config.inputs) != 2:
            raise HsdInputError(
                f'channel-div needs exactly two channel files, got {len(config.inputs)}',
                loc=('inputs',),
            )
        p, q = (
            self.load_input(path, ChannelSchema, lambda s: s.to_choi()) for path in config.inputs
        )
        pair = ChannelPair(p, q, config.gamma)
        if config.covariant:
            decl = CovarianceDeclaration(covariant=True, irreducible_input_rep=True)
            result = channel_hs_via_covariance(pair, decl, config.measurement_class, config.tol)
        else:
            result = channel_hs(pair, config.measurement_class, config.tol)
        self.write_model(DivergenceResultSchema.from_result(result), config.out)
        return EXIT_OK
