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

import csv
import io
import itertools
import logging

from hsdiv.core.chandiv import (
    ChannelPair,
    channel_hs,
    depolarizing_channel_all_analytic,
    depolarizing_channel_ppt_analytic,
)
from hsdiv.core.divergence import (
    DivergenceQuery,
    hs_measured,
    isotropic_hs_analytic,
    isotropic_measured_analytic,
    werner_hs_analytic,
    werner_measured_analytic,
)
from hsdiv.core.errors import EXIT_OK, HsdInputError
from hsdiv.core.management.base import BaseCommand, float_list, int_list
from hsdiv.core.qobjects import (
    IsotropicParams,
    WernerParams,
    depolarizing_choi,
    isotropic_state,
    werner_state,
)
from hsdiv.core.schemas.config import GridRange, RunConfig
from hsdiv.core.schemas.enums import Family, MeasurementClass
from hsdiv.core.utils.pool import run_parallel


logger = logging.getLogger(__name__)

HEADER = ('p', 'q', 'd', 'gamma', 'analytic', 'numeric', 'abs_diff')


def _werner(p, q, d, gamma, measurement_class, tol):
    rho = werner_state(WernerParams(p=q, d=d))
    sigma = werner_state(WernerParams(p=p, d=d))
    numeric = hs_measured(DivergenceQuery(rho, sigma, gamma, measurement_class), tol).value
    if measurement_class is MeasurementClass.ppt:
        return werner_measured_analytic(p, q, d, gamma), numeric
    return werner_hs_analytic(p, q, gamma), numeric


def _isotropic(p, q, d, gamma, measurement_class, tol):
    rho = isotropic_state(IsotropicParams(p=q, d=d))
    sigma = isotropic_state(IsotropicParams(p=p, d=d))
    numeric = hs_measured(DivergenceQuery(rho, sigma, gamma, measurement_class), tol).value
    if measurement_class is MeasurementClass.ppt:
        return isotropic_measured_analytic(p, q, d, gamma), numeric
    return isotropic_hs_analytic(p, q, gamma), numeric


def _depolarizing(p, q, d, gamma, measurement_class, tol):
    pair = ChannelPair(depolarizing_choi(q, d), depolarizing_choi(p, d), gamma)
    numeric = channel_hs(pair, measurement_class, tol).value
    if measurement_class is MeasurementClass.ppt:
        return depolarizing_channel_ppt_analytic(q, p, d, gamma), numeric
    return depolarizing_channel_all_analytic(q, p, d, gamma), numeric


EVALUATORS = {
    Family.werner: _werner,
    Family.isotropic: _isotropic,
    Family.depolarizing: _depolarizing,
}


class Command(BaseCommand):
    """
    Closed form against numerical value over a (p, q) grid for one family. Rows
    compare E_gamma(X^q || X^p) for Werner, isotropic and depolarizing X.
    """

    name = 'table'
    help = 'Compare closed forms with numerical values over a parameter grid (CSV)'

    def add_arguments(self, parser):
        parser.add_argument('family', nargs='?', choices=[f.value for f in Family])
        parser.add_argument('--grid', type=GridRange.parse, help='p0:p1:n, used for p and q')
        parser.add_argument('--dims', type=int_list, help='local dimensions, e.g. 2,3,4')
        parser.add_argument('--gamma', type=float, help='single gamma >= 1')
        parser.add_argument('--gammas', type=float_list, help='several gammas, e.g. 1,1.5,2')
        parser.add_argument(
            '--class',
            dest='measurement_class',
            choices=[MeasurementClass.all.value, MeasurementClass.ppt.value],
            help='measurement class (default all)',
        )

    def config_overrides(self, options):
        overrides = super().config_overrides(options)
        if options.grid is not None:
            overrides['grid'] = {'p': options.grid, 'q': options.grid}
        if options.gamma is not None and options.gammas is None:
            overrides['gammas'] = [options.gamma]
        return overrides

    def handle(self, config: RunConfig) -> int:
        if config.measurement_class is MeasurementClass.lo_star_lower:
            raise HsdInputError('tables support classes all and ppt', loc=('class',))
        if any(g < 1.0 for g in config.gammas):
            raise HsdInputError('closed forms need gamma >= 1', loc=('gammas',))
        evaluate = EVALUATORS[config.family]
        points = list(
            itertools.product(
                config.dims, config.gammas, config.grid.p.values(), config.grid.q.values()
            )
        )
        logger.info(
            f'{config.family} table: {len(points)} points, class {config.measurement_class}'
        )

        def row(point):
            d, gamma, p, q = point
            return evaluate(p, q, d, gamma, config.measurement_class, config.tol)

        values = run_parallel(row, points, config.jobs)

        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(HEADER)
        max_diff = 0.0
        for (d, gamma, p, q), (analytic, numeric) in zip(points, values, strict=True):
            diff = abs(analytic - numeric)
            max_diff = max(max_diff, diff)
            writer.writerow((p, q, d, gamma, float(analytic), float(numeric), float(diff)))
        self.write_text(buffer.getvalue(), config.out)
        self.stderr.write(f'max |diff| = {max_diff:.3e}\n')
        return EXIT_OK
