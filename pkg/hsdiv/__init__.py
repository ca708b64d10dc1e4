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
Measured hockey-stick divergences between quantum states and channels, and the
privacy audits built on top of them.

Structure of **hsdiv**:

- **core**: the numerical kernel, the divergence engines and the command line

==============================

Approximate structure of **core** (one module per concern):

- **hermlin.py**: Hermitian linear algebra (tensor structure, partial trace/transpose, spectra)
- **qobjects.py**: states, Choi operators and channel application
- **sdp/**: a small modeling layer for Hermitian SDPs and the interior-point driver
- **divergence.py**: state divergences for all, PPT and LO* measurement classes
- **chandiv.py**: channel divergences
- **privacy.py**: restricted QLDP audits for states and channels
- **schemas/**: pydantic wire models (matrix JSON, results, reports, run configuration)
- **management/**: the ``hsdiv`` command and its subcommands
"""

try:
    from importlib.metadata import PackageNotFoundError, version

    __version__ = version('hsdiv')
except PackageNotFoundError:
    __version__ = 'dev'
