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
Command base class. A command class declares ``help``, registers its flags in
``add_arguments`` and does its work in ``handle``. ``execute`` merges the
``--config`` file with the flags into a RunConfig and maps errors to the
exit-code contract

    0 success, 1 input error, 2 solver failure, 3 incomplete audit.
"""

import argparse
import json
import logging
import sys
from collections.abc import Callable
from pathlib import Path
from typing import Any, ClassVar, TextIO, TypeVar

from pydantic import BaseModel, TypeAdapter, ValidationError

from hsdiv.core.errors import (
    EXIT_INPUT,
    HsdError,
    HsdException,
    HsdInputError,
    SchemaErrors,
)
from hsdiv.core.schemas.config import RunConfig


logger = logging.getLogger(__name__)

T = TypeVar('T')


class CommandParser(argparse.ArgumentParser):
    """
    ArgumentParser that exits with the input-error status instead of argparse's 2,
    which is reserved for solver failures.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f'{self.prog}: error: {message}\n')


def float_list(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f'expected comma-separated numbers, got {text!r}') from e


def int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {text!r}') from e


class BaseCommand:
    name: ClassVar[str]
    help: ClassVar[str] = ''

    def __init__(self, stdout: TextIO | None = None, stderr: TextIO | None = None):
        self.stdout = stdout or sys.stdout
        self.stderr = stderr or sys.stderr

    def add_arguments(self, parser: argparse.ArgumentParser) -> None:
        pass

    def handle(self, config: RunConfig) -> int:
        raise NotImplementedError('subclasses of BaseCommand must provide a handle() method')

    def create_parser(self, subparsers) -> argparse.ArgumentParser:
        parser = subparsers.add_parser(self.name, help=self.help, description=self.help)
        parser.add_argument('--config', help='RunConfig JSON file; flags override its values')
        parser.add_argument(
            '--tol', type=float, help='solver tolerance in [1e-10, 1e-4] (env: HSD_TOL)'
        )
        parser.add_argument('--out', help='write the result here instead of standard output')
        parser.add_argument('--jobs', type=int, help='worker threads (default: logical cores)')
        self.add_arguments(parser)
        parser.set_defaults(command_obj=self)
        return parser

    def config_overrides(self, options: argparse.Namespace) -> dict[str, Any]:
        """
        Flag values that override the config file: every parsed option named like
        a RunConfig field that was actually given (not None, not an empty list).
        """
        overrides = {}
        for name in RunConfig.model_fields:
            value = getattr(options, name, None)
            if value is not None and value != []:
                overrides[name] = value
        return overrides

    def build_config(self, options: argparse.Namespace) -> RunConfig:
        data: dict[str, Any] = {}
        if getattr(options, 'config', None):
            data = self.read_json(options.config)
            if not isinstance(data, dict):
                raise HsdInputError('config file must hold a JSON object', loc=(options.config,))
            if 'class' in data:
                data['measurement_class'] = data.pop('class')
        data.update(self.config_overrides(options))
        data['command'] = self.name
        try:
            return RunConfig.model_validate(data)
        except ValidationError as e:
            raise HsdException.from_validation_error(e, loc=('config',)) from e

    def execute(self, options: argparse.Namespace) -> int:
        try:
            return self.handle(self.build_config(options))
        except HsdException as e:
            self.report_errors(e.to_schema())
            return e.exit_code
        except HsdError as e:
            self.report_errors(SchemaErrors(errors=[e.to_schema()]))
            return e.exit_code

    def report_errors(self, errors: SchemaErrors) -> None:
        self.stderr.write(errors.model_dump_json(indent=2, exclude_none=True) + '\n')

    @staticmethod
    def read_json(path: str) -> Any:
        try:
            return json.loads(Path(path).read_text())
        except OSError as e:
            raise HsdInputError(f'cannot read {path}: {e.strerror}', loc=(path,)) from e
        except json.JSONDecodeError as e:
            raise HsdInputError(f'malformed JSON: {e.msg} at line {e.lineno}', loc=(path,)) from e

    def load_input(self, path: str, schema: Any, convert: Callable[[Any], T]) -> T:
        """
        Reads ``path``, validates it against ``schema`` (a model class or any type
        pydantic can adapt) and converts the result with ``convert``. Every error
        names the file and the offending field.
        """
        data = self.read_json(path)
        try:
            parsed = TypeAdapter(schema).validate_python(data)
        except ValidationError as e:
            raise HsdException.from_validation_error(e, loc=(path,)) from e
        try:
            return convert(parsed)
        except HsdError as e:
            e.loc = (path, *(e.loc or ()))
            raise

    def write_text(self, text: str, out: str | None) -> None:
        if out:
            Path(out).write_text(text)
            logger.info(f'wrote {out}')
        else:
            self.stdout.write(text)

    def write_model(self, model: BaseModel, out: str | None) -> None:
        self.write_text(model.model_dump_json(indent=2, by_alias=True) + '\n', out)
