/*
 * Copyright 2026 The Trellis Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#include "trellis/score.hpp"

#include <algorithm>

#include "trellis/text.hpp"

namespace trellis {

double matching_score(const std::vector<double>& keyword_similarities) {
  if (keyword_similarities.empty()) return 0.0;
  double sum = 0.0;
  for (double s : keyword_similarities) sum += s;
  return sum / static_cast<double>(keyword_similarities.size());
}

double keyword_label_similarity(const std::string& folded_keyword,
                                const std::string& norm_label) {
  double best = text::edit_similarity(folded_keyword, norm_label);
  for (const std::string& token : text::tokenize(norm_label))
    best = std::max(best, text::edit_similarity(folded_keyword, token));
  return best;
}

ScoreBreakdown WeightedScore::score(
    double ms,
    const std::vector<std::pair<double, double>>& edge_conf_spec) const {
  ScoreBreakdown b;
  b.ms = ms;
  for (const auto& [conf, spec] : edge_conf_spec) {
    b.cs_confidence *= conf;
    b.cs_specificity *= spec;
  }
  b.total = cfg_.alpha * b.ms + cfg_.beta * b.cs_confidence +
            (1.0 - cfg_.alpha - cfg_.beta) * b.cs_specificity;
  return b;
}

}  // namespace trellis
