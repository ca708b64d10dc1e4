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

from hsdiv.core.errors import EXIT_INCOMPLETE, EXIT_OK, HsdInputError
from hsdiv.core.management.base import BaseCommand, float_list, int_list
from hsdiv.core.privacy import audit_sweep
from hsdiv.core.schemas.config import RunConfig
from hsdiv.core.schemas.enums import MeasurementClass
from hsdiv.core.schemas.matrix import ChannelSchema, ChannelSetSchema, StateSetSchema
from hsdiv.core.schemas.results import AuditReportSchema, AuditSweepSchema, SweepRowSchema


class Command(BaseCommand):
    """
    Restricted QLDP audit. With ``--mechanism`` the input file is a state set and
    the mechanism is audited on it; without, the input is the channel set a
    superchannel produces. ``--epsilons`` turns the audit into an epsilon sweep.
    """

    name = 'audit'
    help = 'Audit (epsilon, delta)-QLDP of a mechanism on a state set or of a channel set'

    def add_arguments(self, parser):
        parser.add_argument('inputs', nargs='*', metavar='SET', help='state or channel set file')
        parser.add_argument('--mechanism', help='Choi or Kraus file of the audited mechanism')
        parser.add_argument('--epsilon', type=float, help='epsilon >= 0 (default 0)')
        parser.add_argument('--epsilons', type=float_list, help='sweep, e.g. 0,0.5,1')
        parser.add_argument(
            '--class',
            dest='measurement_class',
            choices=[MeasurementClass.all.value, MeasurementClass.ppt.value],
            help='measurement class (default all)',
        )
        parser.add_argument(
            '--output-dims',
            dest='output_dims',
            type=int_list,
            help='bipartite shape of the mechanism outputs, e.g. 2,2',
        )

    def handle(self, config: RunConfig) -> int:
        if len(config.inputs) != 1:
            raise HsdInputError(
                f'audit needs exactly one set file, got {len(config.inputs)}', loc=('inputs',)
            )
        path = config.inputs[0]
        kwargs = {'tol': config.tol, 'jobs': config.jobs}
        if config.mechanism:
            mechanism = self.load_input(config.mechanism, ChannelSchema, lambda s: s.to_choi())
            states = self.load_input(path, StateSetSchema, StateSetSchema.to_state_set)
            targets = {'mechanism': mechanism, 'states': states}
            kwargs['output_shape'] = config.output_dims
        else:
            channels = self.load_input(path, ChannelSetSchema, ChannelSetSchema.to_channel_set)
            targets = {'channels': channels}

        epsilons = config.epsilons if config.epsilons is not None else [config.epsilon]
        reports = audit_sweep(epsilons, config.measurement_class, **targets, **kwargs)
        if config.epsilons is not None:
            rows = [
                SweepRowSchema(
                    epsilon=r.epsilon, achieved_delta=r.achieved_delta, complete=r.complete
                )
                for r in reports
            ]
            self.write_model(
                AuditSweepSchema(measurement_class=config.measurement_class, rows=rows), config.out
            )
        else:
            self.write_model(AuditReportSchema.from_report(reports[0]), config.out)
        return EXIT_OK if all(r.complete for r in reports) else EXIT_INCOMPLETE
