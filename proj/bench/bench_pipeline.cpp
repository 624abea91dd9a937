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

// Serial reference vs. OpenMP per-field kernel.

#include <chrono>
#include <string>
#include <thread>

#include <benchmark/benchmark.h>

#include "formforge/forms.hpp"
#include "formforge/gateway.hpp"
#include "formforge/html.hpp"
#include "formforge/pipeline.hpp"

namespace {

using namespace formforge;

/// Rules output after a fixed delay, standing in for model latency.
class SlowBackend final : public Backend {
 public:
  explicit SlowBackend(std::chrono::microseconds delay) : delay_(delay) {}
  std::string complete(const FieldDescriptor& field, const PromptSpec& prompt) override {
    std::this_thread::sleep_for(delay_);
    return rules_.complete(field, prompt);
  }
  std::string name() const override { return "slow"; }

 private:
  std::chrono::microseconds delay_;
  RulesBackend rules_;
};

std::string document(std::size_t fields) {
  std::string s = "<html><body><form>";
  for (std::size_t i = 0; i < fields; ++i) {
    s += "<div class=\"row\"><label for=\"f" + std::to_string(i) + "\">Field " + std::to_string(i) +
         "</label><input id=\"f" + std::to_string(i) + "\" " +
         (i % 2 == 0 ? "type=\"email\" required" : "minlength=\"8\" pattern=\"[a-z0-9]+\"") + "></div>";
  }
  return s + "</form></body></html>";
}

struct Setup {
  html::Document doc = html::Document::parse(document(64));
  std::vector<FieldDescriptor> fields = detect_fields(doc);
};

const Setup& setup() {
  static const Setup s;
  return s;
}

void run(benchmark::State& state, std::shared_ptr<Backend> backend, bool parallel) {
  const auto& s = setup();
  Gateway gateway(std::move(backend), BackendConfig{});
  PipelineConfig config;
  config.parallel = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto out = parallel ? process_fields_parallel(s.doc, s.fields, config, gateway)
                        : process_fields_serial(s.doc, s.fields, config, gateway);
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(s.fields.size()));
}

void BM_SerialRules(benchmark::State& state) { run(state, std::make_shared<RulesBackend>(), false); }
void BM_ParallelRules(benchmark::State& state) { run(state, std::make_shared<RulesBackend>(), true); }
void BM_SerialLatency(benchmark::State& state) {
  run(state, std::make_shared<SlowBackend>(std::chrono::milliseconds(2)), false);
}
void BM_ParallelLatency(benchmark::State& state) {
  run(state, std::make_shared<SlowBackend>(std::chrono::milliseconds(2)), true);
}

BENCHMARK(BM_SerialRules)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ParallelRules)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_SerialLatency)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_ParallelLatency)->Arg(2)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace

BENCHMARK_MAIN();
