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


logger = logging.getLogger(__name__)


def force_logging_level(target_level=logging.INFO, prefix: str = 'hsdiv'):
    """
    Sets the logging level for every existing logger under ``prefix`` and for the
    prefix logger itself, so module loggers created later inherit it.

    Args:
        target_level: Target level (logging.DEBUG, INFO, WARNING, ERROR, CRITICAL or string)
        prefix: Logger namespace to adjust

    Returns the number of loggers touched.
    """
    if isinstance(target_level, str):
        target_level = getattr(logging, target_level.upper(), logging.INFO)

    logging.getLogger(prefix).setLevel(target_level)
    count = 1
    for name in list(logging.Logger.manager.loggerDict.keys()):
        if name.startswith(prefix + '.'):
            logging.getLogger(name).setLevel(target_level)
            count += 1

    logger.debug(f'SET {logging.getLevelName(target_level)} for {count} loggers under {prefix}')
    return count
