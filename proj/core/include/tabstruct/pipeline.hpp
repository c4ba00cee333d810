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

#pragma once

#include "tabstruct/config.hpp"
#include "tabstruct/detections.hpp"
#include "tabstruct/raster.hpp"
#include "tabstruct/structure.hpp"

namespace tabstruct {

/// Full post-processing of one page: score filter, cell-to-table
/// assignment, then the bordered or borderless branch per table class.
/// Tables come out ordered by (y0, x0) of their boxes.
PageStructure recognize_page(const BinaryImage& ink, const PageDetections& detections,
                             const PipelineConfig& config = {});

/// Binarizes the page (Otsu) first.
PageStructure recognize_page(const GrayImage& page, const PageDetections& detections,
                             const PipelineConfig& config = {});

}  // namespace tabstruct
