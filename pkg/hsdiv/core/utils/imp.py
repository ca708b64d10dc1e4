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

import pkgutil
from collections.abc import Generator
from importlib import import_module
from types import ModuleType


def pkg_modules(pkg: ModuleType) -> Generator[tuple[ModuleType, bool], None, None]:
    """
    Yields every immediate child module of ``pkg`` with its package flag, in name order.
    """
    children = sorted(
        pkgutil.iter_modules(pkg.__path__, prefix=pkg.__name__ + '.'), key=lambda info: info.name
    )
    for _finder, name, is_pkg in children:
        yield import_module(name), is_pkg


def get_modules_with_attr(pkg: ModuleType, attr: str) -> Generator[ModuleType, None, None]:
    """
    Yields the non-package children of ``pkg`` that define ``attr``. Command
    discovery uses it with ``attr='Command'``.
    """
    for module, is_pkg in pkg_modules(pkg):
        if not is_pkg and hasattr(module, attr):
            yield module
