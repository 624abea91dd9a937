/*
 * Copyright 2026 The FormForge Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include "formforge/forms.hpp"
#include "formforge/record.hpp"

namespace formforge {

/// Deterministic offline suggestion generator, keyed by input type and the
/// declared constraint attributes. Examples are drawn from per-type tables
/// (or sampled from a supported pattern), adjusted to the length bounds
/// and kept only if the local validator accepts them. Bad examples each
/// break one declared constraint where possible, then fall back to generic
/// negative inputs; an unconstrained field's list starts with "".
SuggestionRecord rule_based_generate(const FieldDescriptor& field);

/// English sentences describing the declared constraints.
std::string describe_constraints(const FieldDescriptor& field);

}  // namespace formforge
