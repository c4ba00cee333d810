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

#include "commands.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "tabstruct/detections.hpp"
#include "tabstruct/eval.hpp"
#include "tabstruct/image_io.hpp"
#include "tabstruct/parallel.hpp"
#include "tabstruct/pipeline.hpp"
#include "tabstruct/structure.hpp"
#include "tabstruct/synthgen.hpp"
#include "tabstruct/transforms.hpp"

namespace tabstruct::cli {

namespace fs = std::filesystem;
using json = nlohmann::json;
using ojson = nlohmann::ordered_json;

namespace {

std::string read_text(const fs::path& path) {
  const auto bytes = read_file(path);
  return {bytes.begin(), bytes.end()};
}

// Error text for the JSON contract errors, including where they happened.
std::string describe(const std::exception& e) {
  if (const auto* pe = dynamic_cast<const ParseError*>(&e)) {
    return std::string(pe->what()) + " (byte " + std::to_string(pe->byte_offset()) + ")";
  }
  return e.what();
}

// image_ids become file names in corpus mode.
void check_file_stem(const std::string& id) {
  if (id.empty() || id == "." || id == ".." || id.find_first_of("/\\") != std::string::npos) {
    throw std::runtime_error("image_id '" + id + "' cannot be used as a file name");
  }
}

}  // namespace

PipelineConfig resolve_config(const ConfigSource& source) {
  PipelineConfig config;
  auto file = source.config_file;
  if (!file) {
    if (const char* env = std::getenv("TABSTRUCT_CONFIG"); env != nullptr && *env != '\0') file = fs::path(env);
  }
  if (file) {
    std::string text;
    try {
      text = read_text(*file);
    } catch (const ImageIoError& e) {
      throw ConfigError(std::string("cannot read config: ") + e.what());
    }
    config.merge_json(text);
  }
  for (const auto& kv : source.overrides) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like KEY=VALUE: " + kv);
    const json value = json::parse(kv.substr(eq + 1), nullptr, false);
    if (value.is_discarded()) throw ConfigError("override value is not a JSON number: " + kv);
    config.merge_json(json{{kv.substr(0, eq), value}}.dump());
  }
  config.validate();
  return config;
}

// ---------------------------------------------------------------------------
// augment

int cmd_augment(const AugmentArgs& args, std::ostream& out, std::ostream& err) {
  try {
    const auto config = resolve_config(args.config);
    const auto mode = parse_augment_mode(args.mode);
    if (!fs::is_directory(args.input_dir)) {
      err << "augment: input directory not found: " << args.input_dir.string() << "\n";
      return kExitError;
    }
    AugmentOptions options{config.dilation_params(), config.smudge_params(), args.workers};
    const auto manifest = augment_corpus(args.input_dir, args.output_dir, mode, options);
    for (const auto& e : manifest.entries) {
      if (e.mode == "skipped") err << "augment: skipped " << e.original << ": " << e.error << "\n";
    }
    out << "augment: " << manifest.outputs() << " outputs, " << manifest.skipped() << " skipped -> "
        << (args.output_dir / "manifest.json").string() << "\n";
    return manifest.skipped() > 0 ? kExitSkipped : kExitOk;
  } catch (const std::exception& e) {
    err << "augment: " << e.what() << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------
// recognize

namespace {

const PageDetections& select_page(const std::vector<PageDetections>& pages, const RecognizeArgs& args) {
  if (args.image_id) {
    for (const auto& p : pages) {
      if (p.image_id == *args.image_id) return p;
    }
    throw std::runtime_error("no detections for image_id '" + *args.image_id + "'");
  }
  if (pages.size() == 1) return pages.front();
  const auto stem = args.image->stem().string();
  for (const auto& p : pages) {
    if (p.image_id == stem) return p;
  }
  throw std::runtime_error("detections hold " + std::to_string(pages.size()) +
                           " pages; pass --image-id to pick one");
}

fs::path find_page_image(const fs::path& dir, const std::string& id) {
  for (const char* ext : {".png", ".pgm"}) {
    auto candidate = dir / (id + ext);
    if (fs::is_regular_file(candidate)) return candidate;
  }
  throw std::runtime_error("no image for image_id '" + id + "' in " + dir.string());
}

}  // namespace

int cmd_recognize(const RecognizeArgs& args, std::ostream& out, std::ostream& err) {
  const bool single = args.image.has_value();
  const bool corpus = args.images_dir.has_value();
  if (single == corpus) {
    err << "recognize: pass exactly one of --image or --images-dir\n";
    return kExitError;
  }
  if (single && !args.out) {
    err << "recognize: --image requires --out\n";
    return kExitError;
  }
  if (corpus && (!args.out_dir || args.image_id)) {
    err << "recognize: --images-dir requires --out-dir and does not take --image-id\n";
    return kExitError;
  }
  try {
    const auto config = resolve_config(args.config);
    const auto pages = parse_detections(read_text(args.detections));

    if (single) {
      const auto& page = select_page(pages, args);
      const auto structure = recognize_page(read_gray(*args.image), page, config);
      write_file(*args.out, serialize_structure(structure));
      out << "recognize: " << structure.tables.size() << " tables -> " << args.out->string() << "\n";
      return kExitOk;
    }

    for (const auto& p : pages) check_file_stem(p.image_id);
    std::vector<std::string> results(pages.size());
    std::vector<std::string> errors(pages.size());
    parallel_for(pages.size(), args.workers, [&](std::size_t i) {
      try {
        const auto image = read_gray(find_page_image(*args.images_dir, pages[i].image_id));
        results[i] = serialize_structure(recognize_page(image, pages[i], config));
      } catch (const std::exception& e) {
        errors[i] = pages[i].image_id + ": " + describe(e);
      }
    });
    bool failed = false;
    for (const auto& e : errors) {
      if (!e.empty()) {
        err << "recognize: " << e << "\n";
        failed = true;
      }
    }
    if (failed) return kExitError;
    fs::create_directories(*args.out_dir);
    for (std::size_t i = 0; i < pages.size(); ++i) {
      write_file(*args.out_dir / (pages[i].image_id + ".structure.json"), results[i]);
    }
    out << "recognize: " << pages.size() << " pages -> " << args.out_dir->string() << "\n";
    return kExitOk;
  } catch (const std::exception& e) {
    err << "recognize: " << describe(e) << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------
// evaluate

namespace {

struct PredictionSet {
  std::string kind;  // "structure" | "detections" | "ground_truth"
  std::map<std::string, std::vector<BBox>> tables;
  std::map<std::string, PageStructure> structures;
};

void add_structure(PredictionSet& set, PageStructure page) {
  if (set.tables.count(page.image_id)) throw std::runtime_error("duplicate image_id '" + page.image_id + "'");
  auto& boxes = set.tables[page.image_id];
  for (const auto& t : page.tables) boxes.push_back(t.table_bbox);
  set.structures.emplace(page.image_id, std::move(page));
}

PredictionSet load_predictions(const fs::path& path, const PipelineConfig& config) {
  PredictionSet set;
  if (fs::is_directory(path)) {
    set.kind = "structure";
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(path)) {
      const auto name = entry.path().filename().string();
      if (entry.is_regular_file() && name.size() > 15 && name.ends_with(".structure.json")) {
        files.push_back(entry.path());
      }
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      try {
        add_structure(set, parse_structure(read_text(f)));
      } catch (const std::exception& e) {
        throw std::runtime_error(f.filename().string() + ": " + describe(e));
      }
    }
    return set;
  }

  const auto text = read_text(path);
  const json root = json::parse(text, nullptr, false);
  if (root.is_object() && root.contains("image_id") && root.contains("tables")) {
    set.kind = "structure";
    add_structure(set, parse_structure(text));
    return set;
  }
  // Detection instances always carry a score; ground-truth instances never do.
  bool gt_shaped = false;
  if (root.is_object() && root.contains("pages") && root["pages"].is_array()) {
    for (const auto& p : root["pages"]) {
      if (!p.is_object() || !p.contains("instances") || !p["instances"].is_array()) continue;
      for (const auto& inst : p["instances"]) {
        if (inst.is_object() && !inst.contains("score")) gt_shaped = true;
      }
    }
  }
  if (gt_shaped) {
    set.kind = "ground_truth";
    for (const auto& page : parse_ground_truth(text)) {
      auto& boxes = set.tables[page.image_id];
      for (const auto& t : page.tables) boxes.push_back(t.bbox);
    }
    return set;
  }
  set.kind = "detections";
  for (const auto& raw : parse_detections(text)) {
    const auto page = filter_by_score(raw, config.score_threshold);
    auto& boxes = set.tables[page.image_id];
    for (const auto& inst : page.instances) {
      if (is_table(inst.cls)) boxes.push_back(inst.region());
    }
  }
  return set;
}

std::vector<F1Row> load_fixture(const fs::path& path) {
  const json root = json::parse(read_text(path), nullptr, false);
  if (!root.is_object() || !root.contains("rows") || !root["rows"].is_array()) {
    throw std::runtime_error("fixture must be an object with a \"rows\" array");
  }
  std::vector<F1Row> rows;
  for (const auto& r : root["rows"]) {
    if (!r.is_object() || !r.contains("name") || !r["name"].is_string() || !r.contains("f1") ||
        !r["f1"].is_object()) {
      throw std::runtime_error("fixture rows need a \"name\" string and an \"f1\" object");
    }
    F1Row row{r["name"].get<std::string>(), {}};
    for (const auto& [threshold, f1] : r["f1"].items()) {
      if (!f1.is_number()) throw std::runtime_error("fixture F1 values must be numbers");
      std::size_t used = 0;
      const double t = std::stod(threshold, &used);
      if (used != threshold.size()) throw std::runtime_error("bad fixture threshold '" + threshold + "'");
      row.f1_by_threshold[t] = f1.get<double>();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson scores_json(const AreaScores& s) {
  return {{"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

ojson threshold_json(const ThresholdScores& s) {
  return {{"iou_threshold", s.iou_threshold}, {"tp", s.tp}, {"fp", s.fp}, {"fn", s.fn},
          {"precision", s.precision}, {"recall", s.recall}, {"f1", s.f1}};
}

// Structure exact match over gt tables that carry cells. Each such table is
// paired with a predicted table by greedy IoU >= 0.5 matching.
ojson structure_section(const std::vector<GroundTruthPage>& gts, const PredictionSet& preds) {
  std::size_t total = 0, exact = 0;
  auto mismatched = ojson::array();
  for (const auto& page : gts) {
    const auto& pred = preds.structures.at(page.image_id);
    std::vector<BBox> pred_boxes, gt_boxes;
    std::vector<std::size_t> gt_index;
    for (const auto& t : pred.tables) pred_boxes.push_back(t.table_bbox);
    for (std::size_t i = 0; i < page.tables.size(); ++i) {
      if (!page.tables[i].cells) continue;
      gt_boxes.push_back(page.tables[i].bbox);
      gt_index.push_back(i);
    }
    total += gt_boxes.size();
    const auto matching = match_boxes(pred_boxes, gt_boxes, 0.5);
    std::set<std::size_t> ok;
    for (const auto& m : matching.matches) {
      if (structure_matches(pred.tables[m.pred], page.tables[gt_index[m.gt]])) ok.insert(m.gt);
    }
    exact += ok.size();
    for (std::size_t g = 0; g < gt_boxes.size(); ++g) {
      if (!ok.count(g)) mismatched.push_back({{"image_id", page.image_id}, {"table", gt_index[g]}});
    }
  }
  ojson s;
  s["iou_threshold"] = 0.5;
  s["tables"] = total;
  s["exact_matches"] = exact;
  s["exact_match_rate"] = total ? ojson(static_cast<double>(exact) / static_cast<double>(total)) : ojson(nullptr);
  s["mismatched"] = std::move(mismatched);
  return s;
}

std::string fmt(double v) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

int cmd_evaluate(const EvaluateArgs& args, std::ostream& out, std::ostream& err) {
  if (args.pred.has_value() != args.gt.has_value()) {
    err << "evaluate: --pred and --gt go together\n";
    return kExitError;
  }
  if (!args.pred && !args.f1_fixture) {
    err << "evaluate: nothing to evaluate; pass --pred/--gt or --f1-fixture\n";
    return kExitError;
  }
  if (args.protocol != "icdar19" && args.protocol != "tablebank" && args.protocol != "icdar13") {
    err << "evaluate: unknown protocol '" << args.protocol << "' (icdar19, tablebank, icdar13)\n";
    return kExitError;
  }
  try {
    const auto config = resolve_config(args.config);
    ojson report;
    report["format_version"] = std::string(kFormatVersion);
    report["protocol"] = args.protocol;
    report["config"] = ojson::parse(config.to_json());

    if (args.pred) {
      const auto gts = parse_ground_truth(read_text(*args.gt));
      const auto preds = load_predictions(*args.pred, config);

      std::set<std::string> gt_ids, pred_ids;
      for (const auto& g : gts) gt_ids.insert(g.image_id);
      for (const auto& [id, _] : preds.tables) pred_ids.insert(id);
      if (gt_ids != pred_ids) {
        err << "evaluate: image_id sets differ\n";
        for (const auto& id : pred_ids) {
          if (!gt_ids.count(id)) err << "  only in predictions: " << id << "\n";
        }
        for (const auto& id : gt_ids) {
          if (!pred_ids.count(id)) err << "  only in ground truth: " << id << "\n";
        }
        return kExitError;
      }

      std::vector<EvalPage> pages;
      for (const auto& g : gts) {
        EvalPage p{g.image_id, preds.tables.at(g.image_id), {}};
        for (const auto& t : g.tables) p.gts.push_back(t.bbox);
        pages.push_back(std::move(p));
      }
      std::sort(pages.begin(), pages.end(),
                [](const EvalPage& a, const EvalPage& b) { return a.image_id < b.image_id; });
      report["prediction_format"] = preds.kind;
      report["pages"] = pages.size();

      if (args.protocol == "icdar19") {
        const auto r = evaluate_icdar19(pages);
        auto per = ojson::array();
        F1Row row{"Predictions", {}};
        for (const auto& s : r.per_threshold) {
          per.push_back(threshold_json(s));
          row.f1_by_threshold[s.iou_threshold] = s.f1;
        }
        report["per_threshold"] = std::move(per);
        report["weighted_avg_f1"] = r.weighted_avg_f1;
        auto per_page = ojson::array();
        for (const auto& pm : r.pages) {
          ojson p;
          p["image_id"] = pm.image_id;
          auto counts = ojson::array();
          for (std::size_t i = 0; i < pm.per_threshold.size(); ++i) {
            const auto& m = pm.per_threshold[i];
            counts.push_back({{"iou_threshold", r.per_threshold[i].iou_threshold},
                              {"tp", m.tp}, {"fp", m.fp}, {"fn", m.fn}});
          }
          p["per_threshold"] = std::move(counts);
          per_page.push_back(std::move(p));
        }
        report["per_page"] = std::move(per_page);
        out << format_f1_table(std::span<const F1Row>(&row, 1));
      } else if (args.protocol == "tablebank") {
        const auto s = tablebank_metrics(pages);
        report["scores"] = scores_json(s);
        out << "tablebank: precision " << fmt(s.precision) << "  recall " << fmt(s.recall) << "  f1 "
            << fmt(s.f1) << "\n";
      } else {
        const auto s = icdar13_metrics(pages);
        report["granularity"] = "region-area approximation of completeness/purity";
        report["scores"] = scores_json(s);
        out << "icdar13 (region-area): precision " << fmt(s.precision) << "  recall " << fmt(s.recall)
            << "  f1 " << fmt(s.f1) << "\n";
      }

      if (preds.kind == "structure") {
        report["structure"] = structure_section(gts, preds);
        const auto& s = report["structure"];
        out << "structure exact match: " << s["exact_matches"].get<std::size_t>() << "/"
            << s["tables"].get<std::size_t>() << "\n";
      }
    }

    if (args.f1_fixture) {
      const auto rows = load_fixture(*args.f1_fixture);
      auto fixture = ojson::array();
      for (const auto& r : rows) {
        ojson f1;
        for (const auto& [t, v] : r.f1_by_threshold) f1[fmt(t)] = v;
        fixture.push_back({{"name", r.name}, {"f1", std::move(f1)}, {"weighted_avg_f1", weighted_avg_f1(r.f1_by_threshold)}});
      }
      report["fixture"] = std::move(fixture);
      out << format_f1_table(rows);
    }

    if (args.report) write_file(*args.report, report.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    err << "evaluate: " << describe(e) << "\n";
    return kExitError;
  }
}

// ---------------------------------------------------------------------------
// synth

int cmd_synth(const SynthArgs& args, std::ostream& out, std::ostream& err) {
  if (args.pages < 0) {
    err << "synth: --pages must be non-negative\n";
    return kExitError;
  }
  try {
    SynthSpec spec;
    if (args.spec) spec = SynthSpec::from_json(read_text(*args.spec));
    if (args.seed) spec.seed = *args.seed;
    spec.validate();
    const auto docs = generate(spec, args.pages, args.workers);
    write_corpus(docs, spec, args.out);
    std::size_t tables = 0;
    for (const auto& d : docs) tables += d.gt.tables.size();
    out << "synth: " << docs.size() << " pages, " << tables << " tables -> " << args.out.string() << "\n";
    return kExitOk;
  } catch (const SpecError& e) {
    err << "synth: infeasible spec: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "synth: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace tabstruct::cli
