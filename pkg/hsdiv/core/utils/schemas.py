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

import os

from pydantic_settings import BaseSettings, SettingsConfigDict


class HsdSettings(BaseSettings):
    """
    Core settings class for hsdiv configuration.
    Loads from environment variables with 'HSD_' prefix and .env files.

    Key features:
    - Prefix: HSD_ for all env vars (e.g., HSD_TOL)
    - Nested vars: Use __ delimiter
    - Files: Loads from project.env and custom file via HSD_ENV_FILE
    - Case-sensitive variable names
    - Extra fields ignored
    """

    model_config = SettingsConfigDict(
        extra='ignore',
        env_prefix='HSD_',
        env_nested_delimiter='__',
        case_sensitive=True,
        env_file=('project.env', os.getenv('HSD_ENV_FILE', '.env')),
    )
