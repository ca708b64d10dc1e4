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

import enum


class MeasurementClass(enum.StrEnum):
    """
    Set of allowed measurement effects M.

    ``all``: 0 <= M <= I. ``ppt``: additionally 0 <= T_B(M) <= I.
    ``lo_star_lower``: local product measurements with classical post-processing;
    only lower bounds are ever reported for this class.
    """

    all = 'all'
    ppt = 'ppt'
    lo_star_lower = 'lo_star_lower'


class Method(enum.StrEnum):
    """
    How a reported divergence value was obtained.
    """

    closed_form = 'closed_form'
    sdp_primal_dual = 'sdp_primal_dual'
    lower_bound = 'lower_bound'
    covariance_reduction = 'covariance_reduction'


class Family(enum.StrEnum):
    werner = 'werner'
    isotropic = 'isotropic'
    depolarizing = 'depolarizing'


class CommandName(enum.StrEnum):
    state_div = 'state-div'
    channel_div = 'channel-div'
    audit = 'audit'
    table = 'table'
    validate = 'validate'


class InputKind(enum.StrEnum):
    auto = 'auto'
    state = 'state'
    choi = 'choi'
    kraus = 'kraus'
    states = 'states'
    channels = 'channels'
