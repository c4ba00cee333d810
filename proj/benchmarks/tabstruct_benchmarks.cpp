// Copyright 2026 The tabstruct Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "tabstruct/pipeline.hpp"
#include "tabstruct/synthgen.hpp"
#include "tabstruct/transforms.hpp"

namespace tabstruct {
namespace {

const SynthDocument& sample_page() {
  static const SynthDocument doc = generate_page(SynthSpec{}, 0);
  return doc;
}

void BM_Binarize(benchmark::State& state) {
  const auto& img = sample_page().image;
  for (auto _ : state) benchmark::DoNotOptimize(binarize(img));
  state.SetItemsProcessed(state.iterations() * img.width() * img.height());
}
BENCHMARK(BM_Binarize)->Unit(benchmark::kMillisecond);

void BM_DistanceTransform(benchmark::State& state) {
  const auto ink = binarize(sample_page().image);
  const auto metric = static_cast<DistanceMetric>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(distance_transform(ink, metric));
  state.SetItemsProcessed(state.iterations() * ink.width() * ink.height());
}
BENCHMARK(BM_DistanceTransform)
    ->Arg(static_cast<int>(DistanceMetric::euclidean))
    ->Arg(static_cast<int>(DistanceMetric::cityblock))
    ->Arg(static_cast<int>(DistanceMetric::chessboard))
    ->Unit(benchmark::kMillisecond);

void BM_Dilation(benchmark::State& state) {
  const auto& img = sample_page().image;
  for (auto _ : state) benchmark::DoNotOptimize(dilation_transform(img));
}
BENCHMARK(BM_Dilation)->Unit(benchmark::kMillisecond);

void BM_Smudge(benchmark::State& state) {
  const auto& img = sample_page().image;
  for (auto _ : state) benchmark::DoNotOptimize(smudge_transform(img));
}
BENCHMARK(BM_Smudge)->Unit(benchmark::kMillisecond);

void BM_RecognizePage(benchmark::State& state) {
  const auto& doc = sample_page();
  for (auto _ : state) benchmark::DoNotOptimize(recognize_page(doc.image, doc.perfect_detections));
}
BENCHMARK(BM_RecognizePage)->Unit(benchmark::kMillisecond);

void BM_GeneratePage(benchmark::State& state) {
  const SynthSpec spec;
  int i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(generate_page(spec, i++));
}
BENCHMARK(BM_GeneratePage)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace tabstruct

BENCHMARK_MAIN();
