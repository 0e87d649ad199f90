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

// Text model format:
//
//   CRFSEG1
//   version 1
//   mode stripped|retained
//   labels 0 1 2
//   offsets -5 -4 ... 5
//   booleans is_first is_last is_joiner is_digit
//   transitions <9 weights, row = previous tag>
//   features <count>
//   <feature><TAB><w0> <w1> <w2>      (one line per feature)
//   end
//
// Weights are C99 hexadecimal floats, so a save/load round trip is
// bit-exact.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "nimfasele/crf_model.hpp"
#include "nimfasele/error.hpp"

namespace nimfasele::crf {

inline constexpr std::string_view kModelMagic = "CRFSEG1";
inline constexpr int kModelVersion = 1;

namespace detail {

inline std::string HexDouble(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
  return std::string(buf, res.ptr);
}

inline double ParseHexDouble(std::string_view s) {
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v, std::chars_format::hex);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::kModelFormat, "bad weight '" + std::string(s) + "'");
  }
  return v;
}

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  std::string Next() {
    std::string line;
    if (!std::getline(in_, line)) {
      throw Error(ErrorCode::kModelFormat, "truncated model file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
  }

  // Reads a `key values...` line and returns the values part.
  std::string Expect(std::string_view key) {
    std::string line = Next();
    if (line == key) return {};
    if (line.size() <= key.size() || line.compare(0, key.size(), key) != 0 ||
        line[key.size()] != ' ') {
      throw Error(ErrorCode::kModelFormat, "expected '" + std::string(key) + "' line");
    }
    return line.substr(key.size() + 1);
  }

 private:
  std::istream& in_;
};

inline std::vector<std::string> Words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string w;
  while (is >> w) out.push_back(w);
  return out;
}

}  // namespace detail

inline void SaveModel(const CrfModel& model, std::ostream& out) {
  const FeatureTemplate& tmpl = model.feature_template();
  const ParamLayout layout = model.layout();
  const auto w = model.params();
  out << kModelMagic << '\n';
  out << "version " << kModelVersion << '\n';
  out << "mode " << (model.input_mode() == InputMode::kStripped ? "stripped" : "retained")
      << '\n';
  out << "labels 0 1 2\n";
  out << "offsets";
  for (int o : tmpl.offsets) out << ' ' << o;
  out << "\nbooleans";
  if (tmpl.is_first) out << " is_first";
  if (tmpl.is_last) out << " is_last";
  if (tmpl.is_joiner) out << " is_joiner";
  if (tmpl.is_digit) out << " is_digit";
  out << "\ntransitions";
  for (int a = 0; a < kNumTags; ++a) {
    for (int b = 0; b < kNumTags; ++b) out << ' ' << detail::HexDouble(w[layout.transition(a, b)]);
  }
  out << "\nfeatures " << layout.num_features << '\n';
  for (std::size_t f = 0; f < layout.num_features; ++f) {
    out << model.vocab().Name(static_cast<std::uint32_t>(f)) << '\t';
    for (int y = 0; y < kNumTags; ++y) {
      if (y > 0) out << ' ';
      out << detail::HexDouble(w[layout.state(f, y)]);
    }
    out << '\n';
  }
  out << "end\n";
  if (!out) throw Error(ErrorCode::kIo, "failed to write model");
}

inline CrfModel LoadModel(std::istream& in) {
  detail::LineReader reader(in);
  std::string first;
  try {
    first = reader.Next();
  } catch (const Error&) {
    throw Error(ErrorCode::kModelFormat, "empty model file");
  }
  if (first != kModelMagic) throw Error(ErrorCode::kModelFormat, "bad magic header");
  if (reader.Expect("version") != std::to_string(kModelVersion)) {
    throw Error(ErrorCode::kModelFormat, "unsupported model version");
  }
  const std::string mode_str = reader.Expect("mode");
  InputMode mode;
  if (mode_str == "stripped") mode = InputMode::kStripped;
  else if (mode_str == "retained") mode = InputMode::kRetained;
  else throw Error(ErrorCode::kModelFormat, "unknown input mode");
  if (reader.Expect("labels") != "0 1 2") {
    throw Error(ErrorCode::kModelFormat, "unexpected label set");
  }

  FeatureTemplate tmpl;
  tmpl.offsets.clear();
  for (const std::string& o : detail::Words(reader.Expect("offsets"))) {
    int v = 0;
    const auto res = std::from_chars(o.data(), o.data() + o.size(), v);
    if (res.ec != std::errc() || res.ptr != o.data() + o.size()) {
      throw Error(ErrorCode::kModelFormat, "bad window offset");
    }
    tmpl.offsets.push_back(v);
  }
  tmpl.is_first = tmpl.is_last = tmpl.is_joiner = tmpl.is_digit = false;
  for (const std::string& b : detail::Words(reader.Expect("booleans"))) {
    if (b == "is_first") tmpl.is_first = true;
    else if (b == "is_last") tmpl.is_last = true;
    else if (b == "is_joiner") tmpl.is_joiner = true;
    else if (b == "is_digit") tmpl.is_digit = true;
    else throw Error(ErrorCode::kModelFormat, "unknown Boolean feature " + b);
  }
  try {
    tmpl.Validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::kModelFormat, e.what());
  }

  const std::vector<std::string> trans = detail::Words(reader.Expect("transitions"));
  if (trans.size() != kNumTransitions) {
    throw Error(ErrorCode::kModelFormat, "expected 9 transition weights");
  }
  const std::string count_str = reader.Expect("features");
  std::size_t count = 0;
  {
    const auto res = std::from_chars(count_str.data(), count_str.data() + count_str.size(), count);
    if (res.ec != std::errc() || res.ptr != count_str.data() + count_str.size()) {
      throw Error(ErrorCode::kModelFormat, "bad feature count");
    }
  }

  FeatureVocab vocab;
  std::vector<double> state;
  for (std::size_t f = 0; f < count; ++f) {
    const std::string line = reader.Next();
    const std::size_t tab = line.find('\t');
    if (tab == std::string::npos) throw Error(ErrorCode::kModelFormat, "bad feature line");
    const std::vector<std::string> ws = detail::Words(line.substr(tab + 1));
    if (ws.size() != kNumTags) throw Error(ErrorCode::kModelFormat, "bad feature line");
    if (vocab.Add(line.substr(0, tab)) != f) {
      throw Error(ErrorCode::kModelFormat, "duplicate feature " + line.substr(0, tab));
    }
    for (const std::string& w : ws) state.push_back(detail::ParseHexDouble(w));
  }
  if (reader.Next() != "end") throw Error(ErrorCode::kModelFormat, "missing end marker");

  for (const std::string& t : trans) state.push_back(detail::ParseHexDouble(t));
  return CrfModel(std::move(tmpl), mode, std::move(vocab), std::move(state));
}

}  // namespace nimfasele::crf
