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

from hsdiv.core.sdp.model import (
    AffineExpression,
    Cone,
    Constraint,
    Relation,
    SdpProblem,
    SuperopKind,
    SuperopTerm,
    Variable,
    VariableTerm,
    adjoint_of,
    apply_chain,
    build,
    conditioning_scale,
    expression,
    term,
)
from hsdiv.core.sdp.solver import SdpSolution, SdpStatus, normalized_gap, solve


__all__ = [
    'AffineExpression',
    'Cone',
    'Constraint',
    'Relation',
    'SdpProblem',
    'SdpSolution',
    'SdpStatus',
    'SuperopKind',
    'SuperopTerm',
    'Variable',
    'VariableTerm',
    'adjoint_of',
    'apply_chain',
    'build',
    'conditioning_scale',
    'expression',
    'normalized_gap',
    'solve',
    'term',
]
