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

from functools import lru_cache

from pydantic import Field, field_validator

from hsdiv.core.utils.schemas import HsdSettings


class Settings(HsdSettings):
    """
    Numerical and runtime settings for hsdiv.

    Key sections:
    - Solver: TOL, MAX_ITERS
    - Validation tolerances: HERMITIAN_TOL, PSD_TOL, TRACE_TOL, TP_TOL, MEASUREMENT_TOL
    - Spectral cut-off: ZERO_EIG_TOL
    - Runtime: JOBS, LOG_LEVEL

    Every field can be overridden by an ``HSD_<NAME>`` environment variable.
    """

    TOL: float = Field(1e-7, ge=1e-10, le=1e-4, title='Solver tolerance')
    MAX_ITERS: int = Field(200, gt=0, title='Maximum interior-point iterations')
    HERMITIAN_TOL: float = Field(1e-8, gt=0, title='Hermiticity rejection threshold')
    PSD_TOL: float = Field(1e-9, ge=0, title='Eigenvalue slack for states and Choi operators')
    TRACE_TOL: float = Field(1e-9, ge=0, title='Unit-trace slack for states')
    TP_TOL: float = Field(1e-8, ge=0, title='Trace-preservation slack for Choi operators')
    MEASUREMENT_TOL: float = Field(1e-8, ge=0, title='Operator-interval slack for measurements')
    ZERO_EIG_TOL: float = Field(1e-12, ge=0, title='Eigenvalues below this are treated as zero')
    JOBS: int | None = Field(None, gt=0, title='Worker count (default: logical cores)')
    LOG_LEVEL: str = Field('INFO', title='Logging level')

    @field_validator('LOG_LEVEL')
    @classmethod
    def upper_level(cls, v: str) -> str:
        return v.upper()


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    """
    Returns the process-wide settings instance, built on first use.
    """
    return Settings()


def reset_settings() -> None:
    get_settings.cache_clear()
