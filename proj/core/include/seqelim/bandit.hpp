#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "seqelim/prior.hpp"

namespace seqelim {

// Arm reward model with the true means theta_1..theta_n.
struct BanditInstance {
  std::vector<double> means;
  RewardKind reward = RewardKind::Bernoulli;
  double sigma = 1.0;  // Normal rewards only
  int best_index = 0;  // lowest-index argmax
  bool degenerate = false;  // maximal mean is tied

  // Validate and index the best arm. Throws ValidationError.
  static BanditInstance bernoulli(std::vector<double> means);
  static BanditInstance normal(std::vector<double> means, double sigma);

  int size() const noexcept { return static_cast<int>(means.size()); }
};

inline constexpr std::int64_t kDefaultMaxSubrounds = 10'000'000;

// Stopping thresholds: k (Bernoulli) or c (Normal), plus the optional
// early-elimination horizon j and a safety cap on (sub)rounds.
struct ElimConfig {
  std::optional<int> k;
  std::optional<double> c;
  std::optional<int> j;
  std::int64_t max_subrounds = kDefaultMaxSubrounds;

  static ElimConfig with_k(int k, std::optional<int> j = std::nullopt) { return {k, std::nullopt, j}; }
  static ElimConfig with_c(double c) { return {std::nullopt, c, std::nullopt}; }
};

struct RunOutcome {
  int chosen = -1;
  std::int64_t total_samples = 0;  // N
  std::int64_t rounds = 0;
  bool correct = false;
  bool best_eliminated_early = false;
  int nonbest_eliminated_early = 0;
  bool terminated_by_cap = false;

  friend bool operator==(const RunOutcome&, const RunOutcome&) = default;
};

// Scores s_i (successes, or cumulative reward sums), alive flags a_i and
// in-round failure flags l_i. Eliminated arms keep their frozen scores.
class ScoreBoard {
 public:
  explicit ScoreBoard(int arms);

  int arms() const noexcept { return static_cast<int>(scores_.size()); }
  int alive_count() const noexcept { return alive_count_; }
  bool alive(int i) const noexcept { return alive_[static_cast<std::size_t>(i)] != 0; }
  bool failed(int i) const noexcept { return failed_[static_cast<std::size_t>(i)] != 0; }
  double score(int i) const noexcept { return scores_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& scores() const noexcept { return scores_; }
  std::int64_t round() const noexcept { return round_; }

  void add(int i, double reward) noexcept { scores_[static_cast<std::size_t>(i)] += reward; }
  void eliminate(int i) noexcept;
  void mark_failed(int i) noexcept { failed_[static_cast<std::size_t>(i)] = 1; }
  // l_i = 0 for alive arms, 1 for eliminated ones.
  void start_round() noexcept;
  void advance_round() noexcept { ++round_; }

  double max_score() const noexcept;        // over every arm
  double max_alive_score() const noexcept;  // over alive arms
  // max_{i != j} s_i over every arm; -inf if there is no other arm.
  double max_score_excluding(int j) const noexcept;
  // Lowest-index alive arm with the maximal alive score.
  int leader() const noexcept;
  // Lowest-index alive arm.
  int first_alive() const noexcept;
  // Alive arms with l_i == 0.
  int failure_free_count() const noexcept;

  // Eliminate alive arms with score <= reference - gap (inclusive) or
  // < reference - gap (strict). The reference is the maximum over every
  // arm or over alive arms only. Returns the number eliminated.
  enum class Reference { AllArms, AliveArms };
  int eliminate_trailing(double gap, bool inclusive, Reference reference) noexcept;

 private:
  std::vector<double> scores_;
  std::vector<char> alive_;
  std::vector<char> failed_;
  int alive_count_;
  std::int64_t round_ = 0;
};

}  // namespace seqelim
