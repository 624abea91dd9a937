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

#include "formforge/pipeline.hpp"

#include <omp.h>

#include "formforge/errors.hpp"

namespace formforge {

FieldOutcome process_field(const html::Document& doc, const FieldDescriptor& field, const PipelineConfig& config,
                           Gateway& gateway) {
  try {
    const ContextWindow window = extract_context(doc, field, config.budget, *config.tokenizer);
    const PromptSpec prompt = config.prompt_template.render(field, window, *config.tokenizer);
    return gateway.generate_suggestion(field, prompt);
  } catch (const MalformedOutput& e) {
    return FieldError{e.code(), e.reason()};
  } catch (const Error& e) {
    return FieldError{e.code(), e.what()};
  } catch (const std::exception& e) {
    // Nothing may escape an OpenMP worker.
    return FieldError{"internal", e.what()};
  }
}

std::vector<FieldOutcome> process_fields_serial(const html::Document& doc, const std::vector<FieldDescriptor>& fields,
                                                const PipelineConfig& config, Gateway& gateway,
                                                const FieldCallback& on_done) {
  std::vector<FieldOutcome> out;
  out.reserve(fields.size());
  for (std::size_t i = 0; i < fields.size(); ++i) {
    out.push_back(process_field(doc, fields[i], config, gateway));
    if (on_done) on_done(i, out.back());
  }
  return out;
}

std::vector<FieldOutcome> process_fields_parallel(const html::Document& doc,
                                                  const std::vector<FieldDescriptor>& fields,
                                                  const PipelineConfig& config, Gateway& gateway,
                                                  const FieldCallback& on_done) {
  std::vector<FieldOutcome> out(fields.size(), FieldOutcome{FieldError{"internal", "not processed"}});
  const auto n = static_cast<std::ptrdiff_t>(fields.size());
  const int threads = config.parallel > 0 ? config.parallel : omp_get_max_threads();
  // Backend latency dominates and varies per field, hence dynamic scheduling.
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto index = static_cast<std::size_t>(i);
    out[index] = process_field(doc, fields[index], config, gateway);
    if (on_done) on_done(index, out[index]);
  }
  return out;
}

std::vector<FieldOutcome> process_fields(const html::Document& doc, const std::vector<FieldDescriptor>& fields,
                                         const PipelineConfig& config, Gateway& gateway,
                                         const FieldCallback& on_done) {
  if (config.parallel == 1) return process_fields_serial(doc, fields, config, gateway, on_done);
  return process_fields_parallel(doc, fields, config, gateway, on_done);
}

}  // namespace formforge
