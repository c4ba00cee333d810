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

#include "tabstruct/synthgen.hpp"

#include <gtest/gtest.h>

#include <nlohmann/json.hpp>

#include "fixtures.hpp"

namespace tabstruct {
namespace {

// Reference values from an independent implementation of the documented
// seeding and generator.
TEST(Prng, KnownSequence) {
  Xorshift64Star a(1);
  EXPECT_EQ(a.next(), 0x4b46a55df3611b9bULL);
  EXPECT_EQ(a.next(), 0xd7e1f1410e763ef4ULL);
  EXPECT_EQ(a.next(), 0x5f14ec66975f9b06ULL);
  Xorshift64Star zero(0);
  EXPECT_EQ(zero.next(), 0x7bbcb40d550682d0ULL);
  Xorshift64Star b(42);
  std::vector<int> draws;
  for (int i = 0; i < 5; ++i) draws.push_back(b.uniform_int(10, 20));
  EXPECT_EQ(draws, (std::vector<int>{19, 11, 17, 15, 12}));
  Xorshift64Star c(7);
  EXPECT_DOUBLE_EQ(c.uniform01(), 0.08170555950360558);
}

TEST(Prng, RangesHold) {
  Xorshift64Star r(99);
  for (int i = 0; i < 10000; ++i) {
    const int v = r.uniform_int(-3, 4);
    ASSERT_GE(v, -3);
    ASSERT_LE(v, 4);
    const double u = r.uniform01();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Synth, ZeroPages) { EXPECT_TRUE(generate(SynthSpec{}, 0).empty()); }

TEST(Synth, PageIsDeterministic) {
  SynthSpec spec;
  spec.seed = 17;
  const auto a = generate_page(spec, 3);
  const auto b = generate_page(spec, 3);
  EXPECT_EQ(a.image, b.image);
  EXPECT_EQ(a.gt, b.gt);
  EXPECT_EQ(a.perfect_detections, b.perfect_detections);
  EXPECT_EQ(a.gt.image_id, "page_0003");
  EXPECT_NE(generate_page(spec, 4).image, a.image);
}

TEST(Synth, SeedShiftsPages) {
  SynthSpec s1, s2;
  s1.seed = 5;
  s2.seed = 6;
  EXPECT_EQ(generate_page(s1, 1).image, generate_page(s2, 0).image);
}

TEST(Synth, WorkerCountDoesNotMatter) {
  SynthSpec spec;
  const auto a = generate(spec, 6, 1);
  const auto b = generate(spec, 6, 3);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].image, b[i].image);
    EXPECT_EQ(a[i].gt, b[i].gt);
  }
}

TEST(Synth, GroundTruthInvariants) {
  SynthSpec spec;
  spec.seed = 3;
  for (const auto& doc : generate(spec, 30)) {
    EXPECT_NO_THROW(validate(doc.gt));
    EXPECT_NO_THROW(validate(doc.perfect_detections));
    ASSERT_EQ(doc.tables.size(), doc.gt.tables.size());
    for (std::size_t k = 0; k < doc.gt.tables.size(); ++k) {
      const auto& t = doc.gt.tables[k];
      const auto& info = doc.tables[k];
      ASSERT_TRUE(t.cells.has_value());
      EXPECT_EQ(t.cls, info.type == SynthTableType::bordered ? DetectionClass::bordered_table
                                                              : DetectionClass::borderless_table);
      EXPECT_EQ(info.cell_blobs.size(), t.cells->size());
      int slots = 0;
      for (const auto& c : *t.cells) {
        slots += (c.r1 - c.r0) * (c.c1 - c.c0);
        EXPECT_TRUE(t.bbox.contains(c.bbox));
        if (info.type == SynthTableType::bordered) EXPECT_EQ((c.r1 - c.r0) * (c.c1 - c.c0), 1);
      }
      EXPECT_EQ(slots, t.n_rows() * t.n_cols());  // spans tile the grid
      EXPECT_GE(t.n_rows(), spec.rows.min);
      EXPECT_LE(t.n_rows(), spec.rows.max);
      EXPECT_GE(t.n_cols(), spec.cols.min);
      EXPECT_LE(t.n_cols(), spec.cols.max);
    }
    // Bordered tables carry no cell detections.
    std::size_t cells = 0;
    for (const auto& d : doc.perfect_detections.instances) cells += d.cls == DetectionClass::cell;
    std::size_t expected = 0;
    for (const auto& t : doc.gt.tables) {
      if (t.cls == DetectionClass::borderless_table) expected += t.cells->size();
    }
    EXPECT_EQ(cells, expected);
  }
}

TEST(Synth, NoSpansWhenProbabilityZero) {
  SynthSpec spec;
  spec.span_prob = 0.0;
  for (const auto& doc : generate(spec, 10)) {
    for (const auto& t : doc.gt.tables) {
      for (const auto& c : *t.cells) {
        EXPECT_EQ(c.r1 - c.r0, 1);
        EXPECT_EQ(c.c1 - c.c0, 1);
      }
    }
  }
}

TEST(Synth, SemiBorderedIsClassedBorderless) {
  SynthSpec spec;
  spec.types = {SynthTableType::semi_bordered};
  const auto doc = generate_page(spec, 0);
  for (const auto& t : doc.gt.tables) EXPECT_EQ(t.cls, DetectionClass::borderless_table);
}

TEST(Synth, CorruptionDropsAndJitters) {
  SynthSpec spec;
  spec.types = {SynthTableType::borderless};
  spec.tables_per_page = {1, 1};
  spec.rows = {2, 2};
  spec.cols = {4, 4};
  spec.span_prob = 0.0;
  spec.jitter = 0;
  const auto doc = generate_page(spec, 0);
  ASSERT_EQ(doc.perfect_detections.instances.size(), 9u);
  const auto c = corrupt_detections(doc, 0.25, 3, 11);
  ASSERT_EQ(c.instances.size(), 7u);
  EXPECT_TRUE(is_table(c.instances[0].cls));
  for (const auto& d : c.instances) {
    // Each kept box is within 3 px of some original box.
    bool near = false;
    for (const auto& o : doc.perfect_detections.instances) {
      near |= o.cls == d.cls && std::abs(o.bbox.x0() - d.bbox.x0()) <= 3 && std::abs(o.bbox.y0() - d.bbox.y0()) <= 3 &&
              std::abs(o.bbox.x1() - d.bbox.x1()) <= 3 && std::abs(o.bbox.y1() - d.bbox.y1()) <= 3;
    }
    EXPECT_TRUE(near);
  }
  EXPECT_EQ(corrupt_detections(doc, 0.25, 3, 11), c);
  EXPECT_EQ(corrupt_detections(doc, 0.0, 0, 11), doc.perfect_detections);
  EXPECT_THROW(corrupt_detections(doc, 1.0, 0, 11), std::invalid_argument);
}

TEST(SynthSpec, InfeasibleSpecsThrow) {
  SynthSpec narrow;
  narrow.col_width = {20, 30};
  EXPECT_THROW(narrow.validate(), SpecError);
  EXPECT_THROW(generate_page(narrow, 0), SpecError);
  SynthSpec wide;
  wide.cols = {12, 12};
  EXPECT_THROW(wide.validate(), SpecError);
  SynthSpec no_types;
  no_types.types.clear();
  EXPECT_THROW(no_types.validate(), SpecError);
  SynthSpec prob;
  prob.span_prob = 1.5;
  EXPECT_THROW(prob.validate(), SpecError);
  EXPECT_NO_THROW(SynthSpec{}.validate());
}

TEST(SynthSpec, JsonRoundTrip) {
  SynthSpec spec;
  spec.seed = 123456789012345ULL;
  spec.rows = {3, 4};
  spec.types = {SynthTableType::semi_bordered, SynthTableType::bordered};
  spec.span_prob = 0.25;
  EXPECT_EQ(SynthSpec::from_json(spec.to_json()).to_json(), spec.to_json());
  const auto partial = SynthSpec::from_json(R"({"seed": 9, "rows": [3, 3]})");
  EXPECT_EQ(partial.seed, 9u);
  EXPECT_EQ(partial.rows.min, 3);
  EXPECT_EQ(partial.cols.max, SynthSpec{}.cols.max);
  EXPECT_THROW(SynthSpec::from_json(R"({"colour": 1})"), SpecError);
  EXPECT_THROW(SynthSpec::from_json(R"({"types": ["dotted"]})"), SpecError);
}

TEST(SynthCorpus, WritesArtifactsWithDigests) {
  testing::TempDir dir;
  SynthSpec spec;
  const auto docs = generate(spec, 2);
  write_corpus(docs, spec, dir.path());
  for (const char* name : {"page_0000.png", "page_0001.png", "gt.json", "detections.json", "annotations.json",
                           "manifest.json"}) {
    EXPECT_TRUE(std::filesystem::exists(dir / name)) << name;
  }
  const auto manifest = nlohmann::json::parse(testing::read_text(dir / "manifest.json"));
  EXPECT_EQ(manifest["pages"].size(), 2u);
  EXPECT_EQ(manifest["spec"]["seed"], 1);
  EXPECT_EQ(parse_ground_truth(testing::read_text(dir / "gt.json")).size(), 2u);
  EXPECT_EQ(parse_detections(testing::read_text(dir / "detections.json")).size(), 2u);
}

TEST(SynthCorpus, CustomRendererIsUsed) {
  SynthSpec spec;
  int calls = 0;
  const auto doc = generate_page(spec, 0, [&](GrayImage& page, const BBox& box) {
    ++calls;
    page.fill_rect(box, 40);
  });
  EXPECT_GT(calls, 0);
}

}  // namespace
}  // namespace tabstruct
