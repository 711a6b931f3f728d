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
#ifndef TRELLIS_SCORE_HPP
#define TRELLIS_SCORE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trellis/types.hpp"

namespace trellis {

struct ScoreConfig {
  double alpha = 1.0 / 3.0;
  double beta = 1.0 / 3.0;

  void validate() const {
    if (!(alpha >= 0.0 && alpha < 1.0) || !(beta >= 0.0 && beta < 1.0) ||
        alpha + beta > 1.0)
      throw TrellisError("score weights need 0 <= alpha, beta < 1 and "
                         "alpha + beta <= 1");
  }
};

struct ScoreBreakdown {
  double ms = 0.0;
  double cs_confidence = 1.0;
  double cs_specificity = 1.0;
  double total = 0.0;
};

/// Mean over query keywords of the per-keyword match similarity.
double matching_score(const std::vector<double>& keyword_similarities);

/// Similarity between a keyword and a node label: edit similarity of the
/// keyword against the best-scoring token of the normalized label.
double keyword_label_similarity(const std::string& folded_keyword,
                                const std::string& norm_label);

/// Answer scores are computed from the matching score and each tree edge's
/// (confidence, specificity) pair; the search is orthogonal to the choice.
class ScoreFunction {
 public:
  virtual ~ScoreFunction() = default;
  virtual ScoreBreakdown score(
      double ms,
      const std::vector<std::pair<double, double>>& edge_conf_spec) const = 0;
};

/// alpha*ms + beta*prod(confidence) + (1-alpha-beta)*prod(specificity);
/// empty products are 1.
class WeightedScore : public ScoreFunction {
 public:
  explicit WeightedScore(ScoreConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }
  ScoreBreakdown score(double ms,
                       const std::vector<std::pair<double, double>>&
                           edge_conf_spec) const override;
  const ScoreConfig& config() const { return cfg_; }

 private:
  ScoreConfig cfg_;
};

}  // namespace trellis

#endif  // TRELLIS_SCORE_HPP
