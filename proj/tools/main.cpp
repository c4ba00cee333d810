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

// tabstruct: table-recognition post-processing toolkit.
//
//   tabstruct augment   --in DIR --out DIR [--mode dilate|smudge|both]
//   tabstruct recognize --image PAGE --detections DET.json --out STRUCT.json
//   tabstruct recognize --images-dir DIR --detections DET.json --out-dir DIR
//   tabstruct evaluate  --pred P --gt GT.json [--protocol icdar19|tablebank|icdar13] [--report R.json]
//   tabstruct synth     --pages N --out DIR [--spec SPEC.json]

#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

namespace {

void add_config_flags(CLI::App* cmd, tabstruct::cli::ConfigSource& source) {
  cmd->add_option("--config", source.config_file, "PipelineConfig JSON (default: $TABSTRUCT_CONFIG)");
  cmd->add_option("--set", source.overrides, "Override one config value, KEY=VALUE (repeatable)");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = tabstruct::cli;
  CLI::App app{"Table-recognition post-processing toolkit"};
  app.require_subcommand(1);

  cli::AugmentArgs augment;
  auto* aug = app.add_subcommand("augment", "Add dilation/smudge variants of a page corpus");
  aug->add_option("--in", augment.input_dir, "Input image directory")->required();
  aug->add_option("--out", augment.output_dir, "Output directory")->required();
  aug->add_option("--mode", augment.mode, "dilate, smudge or both")
      ->check(CLI::IsMember({"dilate", "smudge", "both"}));
  aug->add_option("--workers", augment.workers, "Worker threads (0 = all cores)");
  add_config_flags(aug, augment.config);

  cli::RecognizeArgs recognize;
  auto* rec = app.add_subcommand("recognize", "Turn table/cell detections into table structures");
  rec->add_option("--detections", recognize.detections, "Detections JSON")->required();
  rec->add_option("--image", recognize.image, "Page image (PNG or PGM)");
  rec->add_option("--out", recognize.out, "Structure JSON to write");
  rec->add_option("--image-id", recognize.image_id, "Page of the detections file to use");
  rec->add_option("--images-dir", recognize.images_dir, "Directory of <image_id>.png pages");
  rec->add_option("--out-dir", recognize.out_dir, "Directory for <image_id>.structure.json files");
  rec->add_option("--workers", recognize.workers, "Worker threads (0 = all cores)");
  add_config_flags(rec, recognize.config);

  cli::EvaluateArgs evaluate;
  auto* ev = app.add_subcommand("evaluate", "Score predictions against ground truth");
  ev->add_option("--pred", evaluate.pred, "Structure file/dir, detections or gt-format JSON");
  ev->add_option("--gt", evaluate.gt, "Ground-truth JSON");
  ev->add_option("--protocol", evaluate.protocol, "icdar19, tablebank or icdar13")
      ->check(CLI::IsMember({"icdar19", "tablebank", "icdar13"}));
  ev->add_option("--report", evaluate.report, "Report JSON to write");
  ev->add_option("--f1-fixture", evaluate.f1_fixture, "Stored per-threshold F1 rows to tabulate");
  add_config_flags(ev, evaluate.config);

  cli::SynthArgs synth;
  auto* syn = app.add_subcommand("synth", "Generate a synthetic corpus with exact ground truth");
  syn->add_option("--spec", synth.spec, "SynthSpec JSON (default spec when absent)");
  syn->add_option("--pages", synth.pages, "Number of pages")->required();
  syn->add_option("--out", synth.out, "Output directory")->required();
  syn->add_option("--seed", synth.seed, "Override the spec seed");
  syn->add_option("--workers", synth.workers, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitError;
  }

  if (aug->parsed()) return cli::cmd_augment(augment, std::cout, std::cerr);
  if (rec->parsed()) return cli::cmd_recognize(recognize, std::cout, std::cerr);
  if (ev->parsed()) return cli::cmd_evaluate(evaluate, std::cout, std::cerr);
  return cli::cmd_synth(synth, std::cout, std::cerr);
}
