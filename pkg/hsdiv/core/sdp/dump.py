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
Plain-text dump of an SdpProblem, meant for diffing against hand transcriptions.
"""

from pathlib import Path

import numpy as np

from hsdiv.core.hermlin import HermitianOperator
from hsdiv.core.sdp.model import Relation, SdpProblem


def _format_block(label: str, op: HermitianOperator) -> list[str]:
    body = np.array2string(
        op.matrix, precision=6, suppress_small=True, max_line_width=120, threshold=10_000
    )
    return [f'  {label} =', *(f'    {line}' for line in body.splitlines())]


def dump_problem(problem: SdpProblem) -> str:
    lines = [f'problem {problem.name} ({problem.sense})', 'variables:']
    for var in problem.variables:
        shape = f' shape={var.shape.as_tuple()}' if var.shape else ''
        lines.append(f'  {var.id}: side={var.side} cone={var.cone}{shape}')

    blocks = []
    lines.append('objective:')
    for i, obj in enumerate(problem.objective):
        lines.append(f'  + Tr[C{i} {obj.variable_id}]')
        blocks += _format_block(f'C{i}', obj.coefficient)
    if problem.objective_offset:
        lines.append(f'  + {problem.objective_offset!r}')
    if problem.objective_scale != 1.0:
        lines.append(f'  (divided by {problem.objective_scale:g})')

    lines.append('constraints:')
    for i, con in enumerate(problem.constraints):
        parts = [str(t) for t in con.expression.terms]
        if con.expression.constant is not None:
            parts.append(f'K{i}')
            blocks += _format_block(f'K{i}', con.expression.constant)
        relation = '>= 0' if con.relation is Relation.psd else '= 0'
        lines.append(f'  {con.name}: {" + ".join(parts)} {relation}  [side {con.side}]')

    if blocks:
        lines.append('blocks:')
        lines += blocks
    return '\n'.join(lines) + '\n'


def write_problem(problem: SdpProblem, path: str | Path) -> None:
    Path(path).write_text(dump_problem(problem))
