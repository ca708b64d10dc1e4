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

import logging

from hsdiv.core.configure import configure
from hsdiv.core.management.base import BaseCommand, CommandParser
from hsdiv.core.utils.imp import get_modules_with_attr


logger = logging.getLogger(__name__)


def get_commands() -> dict[str, type[BaseCommand]]:
    """
    Command classes of every module in ``hsdiv.core.management.commands``, keyed
    by command name.
    """
    from hsdiv.core.management import commands

    return {
        module.Command.name: module.Command
        for module in get_modules_with_attr(commands, 'Command')
    }


def create_parser(stdout=None, stderr=None) -> CommandParser:
    from hsdiv import __version__

    parser = CommandParser(
        prog='hsdiv',
        description='Hockey-stick divergences of quantum states and channels under '
        'restricted measurements, and privacy audits built on them.',
    )
    parser.add_argument('--version', action='version', version=f'%(prog)s {__version__}')
    parser.add_argument('--log-level', help='logging level (env: HSD_LOG_LEVEL)')
    subparsers = parser.add_subparsers(
        dest='command', required=True, metavar='COMMAND', parser_class=CommandParser
    )
    for command_cls in get_commands().values():
        command_cls(stdout=stdout, stderr=stderr).create_parser(subparsers)
    return parser


def main(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    parser = create_parser(stdout, stderr)
    options = parser.parse_args(argv)
    configure(options.log_level)
    return options.command_obj.execute(options)
