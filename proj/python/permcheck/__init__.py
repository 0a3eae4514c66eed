# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Explicit-state checker for permission-system models."""

from ._core import (
    CheckReport,
    DocumentError,
    ModelIntegrityError,
    Verdict,
    check,
    list_models,
    parse_scenario,
    render_scenario,
    replay,
)

__all__ = [
    "CheckReport",
    "DocumentError",
    "ModelIntegrityError",
    "Verdict",
    "check",
    "list_models",
    "parse_scenario",
    "render_scenario",
    "replay",
]
