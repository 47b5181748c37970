#include "emojirec/eval/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "emojirec/error.hpp"

namespace emojirec::eval {

namespace {

void check_prediction(const Prediction& p) {
  require(p.gold >= 0 && static_cast<std::size_t>(p.gold) < p.probs.size(), ErrorKind::label,
          "prediction: gold label " + std::to_string(p.gold) + " out of range");
  double total = 0.0;
  for (double v : p.probs) {
    require(std::isfinite(v) && v >= 0.0, ErrorKind::numeric, "prediction: invalid probability");
    total += v;
  }
  require(std::abs(total - 1.0) <= 1e-9, ErrorKind::numeric, "prediction: probabilities do not sum to 1");
}

}  // namespace

std::size_t rank_of_gold(const Prediction& p) {
  check_prediction(p);
  const auto g = static_cast<std::size_t>(p.gold);
  const double pg = p.probs[g];
  std::size_t rank = 1;
  for (std::size_t j = 0; j < p.probs.size(); ++j) {
    if (p.probs[j] > pg || (j < g && p.probs[j] == pg)) ++rank;
  }
  return rank;
}

std::size_t argmax(std::span<const double> probs) {
  require(!probs.empty(), ErrorKind::empty_input, "argmax: empty vector");
  return static_cast<std::size_t>(std::max_element(probs.begin(), probs.end()) - probs.begin());
}

double precision_at_k(std::span<const Prediction> preds, std::size_t k) {
  require(!preds.empty(), ErrorKind::data, "precision_at_k: no predictions");
  std::size_t hits = 0;
  for (const auto& p : preds) {
    require(k >= 1 && k <= p.probs.size(), ErrorKind::config,
            "precision_at_k: k must lie in [1, n_e]");
    hits += rank_of_gold(p) <= k ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(preds.size());
}

double mean_reciprocal_rank(std::span<const Prediction> preds) {
  require(!preds.empty(), ErrorKind::data, "mean_reciprocal_rank: no predictions");
  double sum = 0.0;
  for (const auto& p : preds) sum += 1.0 / static_cast<double>(rank_of_gold(p));
  return sum / static_cast<double>(preds.size());
}

EvalReport build_report(std::span<const Prediction> preds, std::size_t n_e) {
  require(!preds.empty(), ErrorKind::data, "evaluate: empty split");
  EvalReport r;
  r.n = preds.size();
  r.confusion.assign(n_e, std::vector<std::size_t>(n_e, 0));
  std::vector<std::size_t> hits(n_e, 0);
  std::vector<std::size_t> totals(n_e, 0);
  std::size_t top1 = 0;
  std::size_t top3 = 0;
  double rr = 0.0;
  const std::size_t k3 = std::min<std::size_t>(3, n_e);
  for (const auto& p : preds) {
    require(p.probs.size() == n_e, ErrorKind::shape, "evaluate: prediction has wrong class count");
    const std::size_t rank = rank_of_gold(p);
    const auto g = static_cast<std::size_t>(p.gold);
    top1 += rank == 1 ? 1 : 0;
    top3 += rank <= k3 ? 1 : 0;
    rr += 1.0 / static_cast<double>(rank);
    ++totals[g];
    hits[g] += rank == 1 ? 1 : 0;
    ++r.confusion[g][argmax(p.probs)];
  }
  const double n = static_cast<double>(r.n);
  r.p_at_1 = static_cast<double>(top1) / n;
  r.p_at_3 = static_cast<double>(top3) / n;
  r.mrr = rr / n;
  for (std::size_t c = 0; c < n_e; ++c) {
    if (totals[c] == 0) {
      r.per_class_p1.push_back(std::nullopt);
    } else {
      r.per_class_p1.push_back(static_cast<double>(hits[c]) / static_cast<double>(totals[c]));
    }
  }
  return r;
}

}  // namespace emojirec::eval
