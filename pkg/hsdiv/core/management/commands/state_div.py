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

from hsdiv.core.divergence import DivergenceQuery, hs_measured
from hsdiv.core.errors import EXIT_OK, HsdInputError
from hsdiv.core.management.base import BaseCommand
from hsdiv.core.schemas.config import RunConfig
from hsdiv.core.schemas.enums import MeasurementClass
from hsdiv.core.schemas.matrix import MatrixSchema
from hsdiv.core.schemas.results import DivergenceResultSchema


class Command(BaseCommand):
    """
    Divergence E_gamma(rho || sigma) between two states given as matrix JSON files.
    """

    name = 'state-div'
    help = 'Hockey-stick divergence between two states under a measurement class'

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='*', metavar='STATE', help='rho and sigma files')
        parser.add_argument('--gamma', type=float, help='gamma >= 0 (default 1)')
        parser.add_argument(
            '--class',
            dest='measurement_class',
            choices=[c.value for c in MeasurementClass],
            help='measurement class (default all)',
        )
        parser.add_argument(
            '--witness', action='store_true', default=None, help='include the optimal effect'
        )

    def handle(self, config: RunConfig) -> int:
        if len(config.inputs) != 2:
            raise HsdInputError(
                f'state-div needs exactly two state files, got {len(config.inputs)}',
                loc=('inputs',),
            )
        rho, sigma = (
            self.load_input(path, MatrixSchema, MatrixSchema.to_state) for path in config.inputs
        )
        query = DivergenceQuery(rho, sigma, config.gamma, config.measurement_class)
        result = hs_measured(query, config.tol)
        self.write_model(DivergenceResultSchema.from_result(result, config.witness), config.out)
        return EXIT_OK
