// Copyright 2026 The Nimfasele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "nimfasele/align.hpp"
#include "nimfasele/charset.hpp"
#include "nimfasele/corpus.hpp"
#include "nimfasele/crf_features.hpp"
#include "nimfasele/crf_inference.hpp"
#include "nimfasele/crf_io.hpp"
#include "nimfasele/crf_model.hpp"
#include "nimfasele/crf_predict.hpp"
#include "nimfasele/crf_train.hpp"
#include "nimfasele/error.hpp"
#include "nimfasele/eval.hpp"
#include "nimfasele/labeling.hpp"
#include "nimfasele/noise.hpp"
#include "nimfasele/owlqn.hpp"
#include "nimfasele/rng.hpp"
#include "nimfasele/utf8.hpp"

namespace nimfasele {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace nimfasele
