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
Process configuration: environment files and logging.
"""

import logging
import os
from copy import deepcopy

from dotenv import load_dotenv

from hsdiv.core.conf import get_settings, reset_settings
from hsdiv.core.utils.logging_level import force_logging_level
from hsdiv.core.utils.schemas import HsdSettings


logger = logging.getLogger(__name__)

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'
LOG_DATEFMT = '%Y-%m-%d %H:%M:%S'


def load_env_files() -> None:
    """
    Loads the settings' .env files in order. Variables already present in the
    process environment keep priority over file contents.
    """
    env_files = HsdSettings.model_config['env_file']
    if isinstance(env_files, str):
        env_files = [env_files]

    sys_envs = deepcopy(os.environ)

    for env_file in env_files:
        if env_file and os.path.exists(env_file):
            load_dotenv(dotenv_path=env_file, override=True)

    for k, v in sys_envs.items():
        if v is not None:
            os.environ[k] = v

    reset_settings()


def configure_logging(level: str | int | None = None) -> int:
    """
    Configures root logging with the package format and applies the level to all
    hsdiv loggers. Unknown level names fall back to INFO with a warning.
    """
    if level is None:
        level = get_settings().LOG_LEVEL

    log_level = logging.INFO
    levels = logging.getLevelNamesMapping()
    if isinstance(level, int):
        log_level = level
    elif level.upper() in levels:
        log_level = levels[level.upper()]
    else:
        logger.warning(f'Invalid log level: {level}. Using default level: INFO.')

    logging.basicConfig(level=log_level, format=LOG_FORMAT, datefmt=LOG_DATEFMT)
    force_logging_level(log_level)
    return log_level


def configure(level: str | int | None = None) -> None:
    load_env_files()
    configure_logging(level)
