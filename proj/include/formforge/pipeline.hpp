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

// The per-field kernel: extract_context -> render prompt -> generate.

#include <functional>
#include <memory>
#include <vector>

#include "formforge/context.hpp"
#include "formforge/forms.hpp"
#include "formforge/gateway.hpp"
#include "formforge/html.hpp"
#include "formforge/planner.hpp"
#include "formforge/prompt.hpp"

namespace formforge {

struct PipelineConfig {
  TokenBudget budget;
  std::shared_ptr<const Tokenizer> tokenizer = std::make_shared<HeuristicTokenizer>();
  PromptTemplate prompt_template = PromptTemplate::standard();
  /// Worker count for the per-field loop; 1 runs the serial reference.
  int parallel = 1;
};

/// Called after each field finishes with (field index, outcome). May be
/// invoked from worker threads, in completion order.
using FieldCallback = std::function<void(std::size_t, const FieldOutcome&)>;

/// Never throws for per-field failures: formforge::Error becomes a
/// FieldError carrying its code.
FieldOutcome process_field(const html::Document& doc, const FieldDescriptor& field, const PipelineConfig& config,
                           Gateway& gateway);

/// Reference implementation: one field at a time, in document order.
std::vector<FieldOutcome> process_fields_serial(const html::Document& doc, const std::vector<FieldDescriptor>& fields,
                                                const PipelineConfig& config, Gateway& gateway,
                                                const FieldCallback& on_done = {});

/// OpenMP version with `config.parallel` threads. Results are stored by
/// field index, so the output order is document order whatever the
/// completion order.
std::vector<FieldOutcome> process_fields_parallel(const html::Document& doc,
                                                  const std::vector<FieldDescriptor>& fields,
                                                  const PipelineConfig& config, Gateway& gateway,
                                                  const FieldCallback& on_done = {});

/// Dispatches on `config.parallel`.
std::vector<FieldOutcome> process_fields(const html::Document& doc, const std::vector<FieldDescriptor>& fields,
                                         const PipelineConfig& config, Gateway& gateway,
                                         const FieldCallback& on_done = {});

}  // namespace formforge
