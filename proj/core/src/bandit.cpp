#include "seqelim/bandit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "seqelim/errors.hpp"

namespace seqelim {

namespace {

void index_best(BanditInstance& b) {
  const auto it = std::max_element(b.means.begin(), b.means.end());
  b.best_index = static_cast<int>(it - b.means.begin());
  b.degenerate = std::count(b.means.begin(), b.means.end(), *it) > 1;
}

}  // namespace

BanditInstance BanditInstance::bernoulli(std::vector<double> means) {
  std::vector<std::string> errors;
  if (means.size() < 2) errors.push_back("means: need at least 2 arms");
  for (std::size_t i = 0; i < means.size(); ++i)
    if (!(means[i] > 0.0 && means[i] < 1.0))
      errors.push_back("means[" + std::to_string(i) + "]: Bernoulli mean must lie in (0, 1)");
  if (!errors.empty()) throw ValidationError(std::move(errors));
  BanditInstance b;
  b.means = std::move(means);
  b.reward = RewardKind::Bernoulli;
  index_best(b);
  return b;
}

BanditInstance BanditInstance::normal(std::vector<double> means, double sigma) {
  std::vector<std::string> errors;
  if (means.size() < 2) errors.push_back("means: need at least 2 arms");
  for (std::size_t i = 0; i < means.size(); ++i)
    if (!std::isfinite(means[i])) errors.push_back("means[" + std::to_string(i) + "]: must be finite");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) errors.push_back("sigma: must be positive");
  if (!errors.empty()) throw ValidationError(std::move(errors));
  BanditInstance b;
  b.means = std::move(means);
  b.reward = RewardKind::Normal;
  b.sigma = sigma;
  index_best(b);
  return b;
}

ScoreBoard::ScoreBoard(int arms)
    : scores_(static_cast<std::size_t>(arms), 0.0),
      alive_(static_cast<std::size_t>(arms), 1),
      failed_(static_cast<std::size_t>(arms), 0),
      alive_count_(arms) {}

void ScoreBoard::eliminate(int i) noexcept {
  auto& a = alive_[static_cast<std::size_t>(i)];
  if (a) {
    a = 0;
    --alive_count_;
  }
  failed_[static_cast<std::size_t>(i)] = 1;
}

void ScoreBoard::start_round() noexcept {
  for (std::size_t i = 0; i < alive_.size(); ++i) failed_[i] = alive_[i] ? 0 : 1;
}

double ScoreBoard::max_score() const noexcept { return *std::max_element(scores_.begin(), scores_.end()); }

double ScoreBoard::max_alive_score() const noexcept {
  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < scores_.size(); ++i)
    if (alive_[i]) best = std::max(best, scores_[i]);
  return best;
}

double ScoreBoard::max_score_excluding(int j) const noexcept {
  double best = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < arms(); ++i)
    if (i != j) best = std::max(best, score(i));
  return best;
}

int ScoreBoard::leader() const noexcept {
  int best = -1;
  for (int i = 0; i < arms(); ++i)
    if (alive(i) && (best < 0 || score(i) > score(best))) best = i;
  return best;
}

int ScoreBoard::first_alive() const noexcept {
  for (int i = 0; i < arms(); ++i)
    if (alive(i)) return i;
  return -1;
}

int ScoreBoard::failure_free_count() const noexcept {
  int count = 0;
  for (std::size_t i = 0; i < alive_.size(); ++i) count += (alive_[i] && !failed_[i]) ? 1 : 0;
  return count;
}

int ScoreBoard::eliminate_trailing(double gap, bool inclusive, Reference reference) noexcept {
  const double ref = reference == Reference::AllArms ? max_score() : max_alive_score();
  const double cut = ref - gap;
  int removed = 0;
  for (int i = 0; i < arms(); ++i) {
    if (!alive(i)) continue;
    const double s = score(i);
    if (inclusive ? s <= cut : s < cut) {
      eliminate(i);
      ++removed;
    }
  }
  return removed;
}

}  // namespace seqelim
